//! Sampled squeezing-error profiles `δr(s)` along a loop's displacement side.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{finite, Error, Result};
use crate::quadrature::trapezoid_mean;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Distribution {
    /// Uniform on `[−ε, ε]`.
    Uniform,
    /// Normal with standard deviation `ε`.
    Gaussian,
}

/// How a profile's samples were produced, kept for provenance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ProfileGenerator {
    Constant { eps: f64 },
    Sinusoid { amplitude: f64, periods: u32, phase: f64 },
    Random { distribution: Distribution, scale: f64, seed: u64, stream: u64 },
    Custom,
}

/// Squeezing error `δr` sampled on a uniform grid over `[a, b]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorProfile {
    a: f64,
    b: f64,
    samples: Vec<f64>,
    generator: ProfileGenerator,
    zero_mean: bool,
}

impl ErrorProfile {
    fn build(a: f64, b: f64, samples: Vec<f64>, generator: ProfileGenerator) -> Result<Self> {
        let a = finite("profile start", a)?;
        let b = finite("profile end", b)?;
        if b <= a {
            return Err(Error::Domain(format!("profile interval needs b > a, got [{a}, {b}]")));
        }
        if samples.len() < 2 {
            return Err(Error::Grid(samples.len()));
        }
        for &v in &samples {
            finite("profile sample", v)?;
        }
        Ok(Self { a, b, samples, generator, zero_mean: false })
    }

    fn positions(a: f64, b: f64, grid: usize) -> impl Iterator<Item = f64> {
        let h = (b - a) / (grid.max(2) - 1) as f64;
        (0..grid).map(move |k| k as f64 * h / (b - a))
    }

    pub fn constant(a: f64, b: f64, grid: usize, eps: f64) -> Result<Self> {
        let eps = finite("eps", eps)?;
        Self::build(a, b, vec![eps; grid], ProfileGenerator::Constant { eps })
    }

    /// `A sin(2π k (s − a)/(b − a) + φ)`; zero grid mean for integer `k ≥ 1`.
    pub fn sinusoid(a: f64, b: f64, grid: usize, amplitude: f64, periods: u32, phase: f64) -> Result<Self> {
        let amplitude = finite("amplitude", amplitude)?;
        let phase = finite("phase", phase)?;
        let samples =
            Self::positions(a, b, grid).map(|t| amplitude * (TAU * periods as f64 * t + phase).sin()).collect();
        Self::build(a, b, samples, ProfileGenerator::Sinusoid { amplitude, periods, phase })
    }

    /// Independent draws from `distribution` with scale `ε`, reproducible from
    /// `(seed, stream)`. Draws do not depend on `[a, b]`, only on the grid size.
    pub fn random(
        a: f64,
        b: f64,
        grid: usize,
        distribution: Distribution,
        scale: f64,
        seed: u64,
        stream: u64,
    ) -> Result<Self> {
        let scale = finite("noise scale", scale)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        let samples = (0..grid)
            .map(|_| match distribution {
                Distribution::Uniform => scale * (2.0 * rng.random::<f64>() - 1.0),
                Distribution::Gaussian => scale * rng.sample::<f64, _>(StandardNormal),
            })
            .collect();
        Self::build(a, b, samples, ProfileGenerator::Random { distribution, scale, seed, stream })
    }

    pub fn custom(a: f64, b: f64, samples: Vec<f64>) -> Result<Self> {
        Self::build(a, b, samples, ProfileGenerator::Custom)
    }

    /// Subtracts the trapezoid-weighted grid mean, so the quadrature of `δr`
    /// over `[a, b]` vanishes to rounding.
    pub fn with_zero_mean(mut self) -> Self {
        let mean = trapezoid_mean(&self.samples);
        self.samples.iter_mut().for_each(|v| *v -= mean);
        self.zero_mean = true;
        self
    }

    /// Same samples over a different interval.
    pub fn rescaled(&self, a: f64, b: f64) -> Result<Self> {
        let mut out = Self::build(a, b, self.samples.clone(), self.generator)?;
        out.zero_mean = self.zero_mean;
        Ok(out)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn grid_size(&self) -> usize {
        self.samples.len()
    }

    pub fn spacing(&self) -> f64 {
        self.length() / (self.samples.len() - 1) as f64
    }

    pub fn generator(&self) -> ProfileGenerator {
        self.generator
    }

    pub fn is_zero_mean(&self) -> bool {
        self.zero_mean
    }

    /// Trapezoid-weighted mean of the samples.
    pub fn mean(&self) -> f64 {
        trapezoid_mean(&self.samples)
    }

    /// Grid position of sample `k`.
    pub fn position(&self, k: usize) -> f64 {
        if k + 1 >= self.samples.len() {
            self.b
        } else {
            self.a + k as f64 * self.spacing()
        }
    }

    /// Linear interpolation of the samples, clamped to the end values
    /// outside `[a, b]`.
    pub fn value_at(&self, s: f64) -> f64 {
        let n = self.samples.len();
        let t = ((s - self.a) / self.spacing()).clamp(0.0, (n - 1) as f64);
        let k = (t.floor() as usize).min(n - 2);
        let frac = t - k as f64;
        self.samples[k] + frac * (self.samples[k + 1] - self.samples[k])
    }

    pub(crate) fn check_domain(&self, a: f64, b: f64) -> Result<()> {
        let tol = 1e-12 * (1.0 + a.abs().max(b.abs()));
        if (self.a - a).abs() > tol || (self.b - b).abs() > tol {
            return Err(Error::DomainMismatch { profile_a: self.a, profile_b: self.b, loop_a: a, loop_b: b });
        }
        Ok(())
    }
}
