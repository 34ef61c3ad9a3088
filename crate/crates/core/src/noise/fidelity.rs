//! Perturbed holonomy angles and Hadamard gate under squeezing errors, and the
//! exact, analytic and small-error fidelities.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{finite, Error, Result};
use crate::loops::{hadamard_loops, plane_holonomy, surface_sigma, ControlPlane, RectLoop};
use crate::quadrature::trapezoid;
use crate::su2::{basis_fidelity, basis_infidelity, compose, hadamard_minus_i, pauli, PauliAxis, QubitGate};

use super::profile::{ErrorProfile, ProfileGenerator};

/// Trapezoid mean of `δr²` over the profile's interval.
pub fn mean_square(profile: &ErrorProfile) -> f64 {
    let squares: Vec<f64> = profile.samples().iter().map(|v| v * v).collect();
    trapezoid(&squares, profile.spacing()) / profile.length()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerturbedSigma {
    pub sigma_prime: f64,
    pub delta_sigma: f64,
}

/// Holonomy angle of `lp` with its top edge moved to `r1 = d + δr(s)`.
///
/// The shift is `e^{−2d} ∫(1 − e^{−2δr})` in `XR1` and `e^{2d} ∫(e^{2δr} − 1)`
/// in `YR1`, integrated by the trapezoid rule on the profile grid without
/// linearizing in `δr`.
pub fn perturbed_sigma(lp: &RectLoop, profile: &ErrorProfile) -> Result<PerturbedSigma> {
    profile.check_domain(lp.a(), lp.b())?;
    let (factor, integrand): (f64, Vec<f64>) = match lp.plane() {
        ControlPlane::XR1 => ((-2.0 * lp.d()).exp(), profile.samples().iter().map(|v| -(-2.0 * v).exp_m1()).collect()),
        ControlPlane::YR1 => ((2.0 * lp.d()).exp(), profile.samples().iter().map(|v| (2.0 * v).exp_m1()).collect()),
    };
    let delta_sigma = factor * trapezoid(&integrand, profile.spacing());
    Ok(PerturbedSigma { sigma_prime: surface_sigma(lp) + delta_sigma, delta_sigma })
}

/// `Γ(C_II)|Σ_II' · Γ(C_I)|Σ_I'` for the ideal angles `π/4`, `π/2` shifted by
/// the given deltas.
pub fn perturbed_hadamard_from_deltas(delta_sigma_i: f64, delta_sigma_ii: f64) -> Result<QubitGate> {
    let g1 = plane_holonomy(ControlPlane::XR1, FRAC_PI_4 + finite("δΣ_I", delta_sigma_i)?)?;
    let g2 = plane_holonomy(ControlPlane::YR1, FRAC_PI_2 + finite("δΣ_II", delta_sigma_ii)?)?;
    Ok(compose(&g2, &g1))
}

/// Closed-form expansion of the perturbed gate:
///
/// `−iH = −(c₁ − s₁)/√2 · (I s₂ + iσ_x c₂) − i(c₁ + s₁)/√2 · (σ_z c₂ − σ_y s₂)`
///
/// with `c₁, s₁ = cos, sin δΣ_I` and `c₂, s₂ = cos, sin δΣ_II`.
pub fn expanded_perturbed_hadamard(delta_sigma_i: f64, delta_sigma_ii: f64) -> QubitGate {
    let (s1, c1) = delta_sigma_i.sin_cos();
    let (s2, c2) = delta_sigma_ii.sin_cos();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let re = |v: f64| Complex64::new(v, 0.0);
    let im = |v: f64| Complex64::new(0.0, v);

    let first = QubitGate::identity().scale(re(s2)).add(&pauli(PauliAxis::X).scale(im(c2))).scale(re(-(c1 - s1) * r));
    let second = pauli(PauliAxis::Z).scale(re(c2)).sub(&pauli(PauliAxis::Y).scale(re(s2))).scale(im(-(c1 + s1) * r));
    first.add(&second)
}

fn loops_for(l_x: f64, l_y: f64, px: &ErrorProfile, py: &ErrorProfile) -> Result<(RectLoop, RectLoop)> {
    let (c1, c2) = hadamard_loops(l_x, l_y, px.a(), py.a())?;
    px.check_domain(c1.a(), c1.b())?;
    py.check_domain(c2.a(), c2.b())?;
    Ok((c1, c2))
}

/// Perturbed Hadamard gate in `−i·H` form for the Hadamard loops of widths
/// `l_x`, `l_y` placed on the profiles' intervals.
pub fn perturbed_hadamard(l_x: f64, l_y: f64, profile_x: &ErrorProfile, profile_y: &ErrorProfile) -> Result<QubitGate> {
    let (c1, c2) = loops_for(l_x, l_y, profile_x, profile_y)?;
    let s1 = perturbed_sigma(&c1, profile_x)?;
    let s2 = perturbed_sigma(&c2, profile_y)?;
    Ok(compose(
        &plane_holonomy(ControlPlane::YR1, s2.sigma_prime)?,
        &plane_holonomy(ControlPlane::XR1, s1.sigma_prime)?,
    ))
}

/// `|cos δΣ_I|`.
pub fn analytic_fidelity(delta_sigma_i: f64) -> f64 {
    delta_sigma_i.cos().abs()
}

/// `1 − |cos x|` without cancellation near the maxima of `|cos|`.
pub fn cos_deficit(x: f64) -> f64 {
    let reduced = x - PI * (x / PI).round();
    2.0 * (0.5 * reduced).sin().powi(2)
}

/// `[l_x √2 − π/(2√2)]²`, the coefficient of `⟨δr²⟩²` in the quartic law.
pub fn quartic_coefficient(l_x: f64) -> f64 {
    (l_x * SQRT_2 - PI / (2.0 * SQRT_2)).powi(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ApproxFidelity {
    /// `|cos[⟨δr²⟩(2 l_x − π/2)]|`
    pub f_cos: f64,
    /// `1 − ⟨δr²⟩² [l_x √2 − π/(2√2)]²`
    pub f_quartic: f64,
    pub cos_deficit: f64,
    pub quartic_deficit: f64,
}

/// Small-error fidelity for a zero-mean profile of mean square `msq`.
///
/// `l_x = π/4` is accepted as the limiting point where both forms equal one.
pub fn approx_fidelity(l_x: f64, msq: f64) -> Result<ApproxFidelity> {
    let l_x = finite("l_x", l_x)?;
    let msq = finite("mean square error", msq)?;
    if l_x < FRAC_PI_4 {
        return Err(Error::LxTooShort(l_x));
    }
    if msq < 0.0 {
        return Err(Error::Domain(format!("mean square error must be non-negative, got {msq}")));
    }
    let arg = msq * (2.0 * l_x - FRAC_PI_2);
    let quartic_deficit = msq * msq * quartic_coefficient(l_x);
    Ok(ApproxFidelity {
        f_cos: arg.cos().abs(),
        f_quartic: 1.0 - quartic_deficit,
        cos_deficit: cos_deficit(arg),
        quartic_deficit,
    })
}

/// Width `π/4 + πn/(2⟨δr²⟩)` at which the small-error fidelity returns to one.
pub fn revival_length(n: u32, msq: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("revival index n must be at least 1".into()));
    }
    let msq = finite("mean square error", msq)?;
    if msq <= 0.0 {
        return Err(Error::Domain(format!("revival lengths need a positive mean square error, got {msq}")));
    }
    Ok(FRAC_PI_4 + PI * n as f64 / (2.0 * msq))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub l_x: f64,
    pub l_y: f64,
    pub seed: Option<u64>,
    pub grid_size: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FidelityReport {
    pub delta_sigma_i: f64,
    pub delta_sigma_ii: f64,
    pub f_exact_j0: f64,
    pub f_exact_j1: f64,
    /// `1 − f_exact_j0` evaluated from the off-diagonal overlap.
    pub one_minus_f_exact: f64,
    pub f_analytic: f64,
    pub f_approx_cos: f64,
    pub f_approx_quartic: f64,
    pub mean_square_error: f64,
    pub metadata: RunMetadata,
}

/// Full pipeline for one pair of error profiles.
pub fn fidelity_report(
    l_x: f64,
    l_y: f64,
    profile_x: &ErrorProfile,
    profile_y: &ErrorProfile,
) -> Result<FidelityReport> {
    let (c1, c2) = loops_for(l_x, l_y, profile_x, profile_y)?;
    let s1 = perturbed_sigma(&c1, profile_x)?;
    let s2 = perturbed_sigma(&c2, profile_y)?;
    let gate = compose(
        &plane_holonomy(ControlPlane::YR1, s2.sigma_prime)?,
        &plane_holonomy(ControlPlane::XR1, s1.sigma_prime)?,
    );
    let target = hadamard_minus_i();
    let msq = mean_square(profile_x);
    let approx = approx_fidelity(l_x, msq)?;
    let seed = match profile_x.generator() {
        ProfileGenerator::Random { seed, .. } => Some(seed),
        _ => None,
    };
    Ok(FidelityReport {
        delta_sigma_i: s1.delta_sigma,
        delta_sigma_ii: s2.delta_sigma,
        f_exact_j0: basis_fidelity(&target, &gate, 0)?,
        f_exact_j1: basis_fidelity(&target, &gate, 1)?,
        one_minus_f_exact: basis_infidelity(&target, &gate, 0)?,
        f_analytic: analytic_fidelity(s1.delta_sigma),
        f_approx_cos: approx.f_cos,
        f_approx_quartic: approx.f_quartic,
        mean_square_error: msq,
        metadata: RunMetadata { l_x, l_y, seed, grid_size: profile_x.grid_size() },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::hadamard_dx;
    use crate::noise::profile::Distribution;
    use crate::su2::{axis_rotation, GATE_TOL};
    use proptest::prelude::*;

    fn xloop(l: f64) -> RectLoop {
        hadamard_loops(l, 1.0, 0.0, 0.0).unwrap().0
    }

    #[test]
    fn mean_square_examples() {
        let c = ErrorProfile::constant(0.0, 1.0, 64, 0.03).unwrap();
        assert!((mean_square(&c) - 9e-4).abs() < 1e-17);
        let s = ErrorProfile::sinusoid(0.0, 2.0, 4096, 0.05, 3, 0.2).unwrap();
        assert!((mean_square(&s) - 0.05 * 0.05 / 2.0).abs() < 1e-6);
        let z = ErrorProfile::constant(0.0, 1.0, 16, 0.0).unwrap();
        assert_eq!(mean_square(&z), 0.0);
    }

    #[test]
    fn perturbed_sigma_examples() {
        let lp = xloop(1.0);
        let zero = ErrorProfile::constant(0.0, 1.0, 128, 0.0).unwrap();
        let p = perturbed_sigma(&lp, &zero).unwrap();
        assert_eq!(p.delta_sigma, 0.0);
        assert_eq!(p.sigma_prime, surface_sigma(&lp));

        // (1 − π/4)(1 − e^{−0.02}), frozen with mpmath.
        let c = ErrorProfile::constant(0.0, 1.0, 4096, 0.01).unwrap();
        let p = perturbed_sigma(&lp, &c).unwrap();
        assert!((p.delta_sigma - 0.004_249_401_075_537_444).abs() < 1e-15);

        let bad = ErrorProfile::constant(0.0, 2.0, 8, 0.01).unwrap();
        assert!(matches!(perturbed_sigma(&lp, &bad), Err(Error::DomainMismatch { .. })));
    }

    #[test]
    fn perturbed_sigma_matches_perturbed_top_edge_quadrature() {
        let lp = xloop(1.3);
        let p = ErrorProfile::random(0.0, 1.3, 2049, Distribution::Uniform, 0.05, 3, 0).unwrap();
        let direct = perturbed_sigma(&lp, &p).unwrap().sigma_prime;
        let quad = crate::loops::surface_sigma_quadrature(&lp, Some(&p), 2049).unwrap();
        assert!((direct - quad).abs() < 1e-12);

        let (_, y) = hadamard_loops(1.3, 0.8, 0.0, -1.0).unwrap();
        let py = ErrorProfile::sinusoid(-1.0, -0.2, 513, 0.02, 2, 0.0).unwrap();
        let direct = perturbed_sigma(&y, &py).unwrap().sigma_prime;
        let quad = crate::loops::surface_sigma_quadrature(&y, Some(&py), 513).unwrap();
        assert!((direct - quad).abs() < 1e-12);
    }

    #[test]
    fn perturbed_hadamard_reduces_to_ideal_gate() {
        let zx = ErrorProfile::constant(0.0, 1.0, 32, 0.0).unwrap();
        let zy = ErrorProfile::constant(0.0, 2.0, 32, 0.0).unwrap();
        let g = perturbed_hadamard(1.0, 2.0, &zx, &zy).unwrap();
        assert!(g.max_diff(&hadamard_minus_i()) < GATE_TOL);
    }

    #[test]
    fn synthetic_delta_in_x_only() {
        let (s, c) = 0.1f64.sin_cos();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let mi = Complex64::new(0.0, -1.0);
        let expected = pauli(PauliAxis::X)
            .scale(mi * (c - s))
            .add(&pauli(PauliAxis::Z).scale(mi * (c + s)))
            .scale(Complex64::new(r, 0.0));
        let g = perturbed_hadamard_from_deltas(0.1, 0.0).unwrap();
        assert!(g.max_diff(&expected) < GATE_TOL);
        assert!(expanded_perturbed_hadamard(0.1, 0.0).max_diff(&expected) < GATE_TOL);
    }

    #[test]
    fn analytic_fidelity_examples() {
        assert_eq!(analytic_fidelity(0.0), 1.0);
        assert!(analytic_fidelity(FRAC_PI_2) < 1e-15);
        assert!((analytic_fidelity(0.004_249_401_075_537_444) - 0.999_990_971_308_835_9).abs() < 1e-15);
    }

    #[test]
    fn approx_fidelity_examples() {
        let a = approx_fidelity(1.0, 0.0).unwrap();
        assert_eq!((a.f_cos, a.f_quartic), (1.0, 1.0));
        let a = approx_fidelity(FRAC_PI_4, 0.3).unwrap();
        assert_eq!((a.f_cos, a.f_quartic), (1.0, 1.0));
        // 1 − cos(1e-4 (2 − π/2)) = 9.21078965e-10, from mpmath.
        let a = approx_fidelity(1.0, 1e-4).unwrap();
        assert!((a.cos_deficit - 9.210_789_653_223_68e-10).abs() < 1e-22);
        assert!((1.0 - a.f_cos - 9.210_789_653e-10).abs() < 1e-15);
        assert!((a.quartic_deficit - a.cos_deficit).abs() < 1e-15);
        assert!(approx_fidelity(0.5, 1e-4).is_err());
        assert!(approx_fidelity(1.0, -1e-4).is_err());
    }

    #[test]
    fn revival_examples() {
        let l = revival_length(1, 1e-2).unwrap();
        assert!((l - 157.865_030_842_887_1).abs() < 1e-10);
        let msq = 3.7e-4;
        let step = revival_length(2, msq).unwrap() - revival_length(1, msq).unwrap();
        assert!((step - PI / (2.0 * msq)).abs() < 1e-9);
        let a = approx_fidelity(l, 1e-2).unwrap();
        assert!((a.f_cos - 1.0).abs() < 1e-12);
        assert!(revival_length(1, 0.0).is_err());
        assert!(revival_length(0, 1e-2).is_err());
    }

    #[test]
    fn cos_deficit_is_accurate() {
        for x in [1e-9, 1e-4, 0.3, 1.5, PI - 1e-7, 2.0 * PI + 1e-6, -7.0] {
            let naive = 1.0 - x.cos().abs();
            assert!((cos_deficit(x) - naive).abs() < 1e-15, "{x}");
        }
        assert!((cos_deficit(1e-9) - 5e-19).abs() < 1e-30);
    }

    #[test]
    fn report_with_zero_profiles() {
        let zx = ErrorProfile::constant(0.0, 1.0, 32, 0.0).unwrap();
        let zy = ErrorProfile::constant(0.0, 1.0, 32, 0.0).unwrap();
        let r = fidelity_report(1.0, 1.0, &zx, &zy).unwrap();
        for f in [r.f_exact_j0, r.f_exact_j1, r.f_analytic, r.f_approx_cos, r.f_approx_quartic] {
            assert!((f - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn report_is_independent_of_y_profile() {
        let px = ErrorProfile::random(0.0, 1.0, 1024, Distribution::Uniform, 0.05, 9, 0).unwrap().with_zero_mean();
        let py1 = ErrorProfile::random(0.0, 1.0, 1024, Distribution::Gaussian, 0.08, 9, 1).unwrap();
        let py2 = ErrorProfile::constant(0.0, 1.0, 64, -0.07).unwrap();
        let r1 = fidelity_report(1.0, 1.0, &px, &py1).unwrap();
        let r2 = fidelity_report(1.0, 1.0, &px, &py2).unwrap();
        assert!((r1.f_exact_j0 - r2.f_exact_j0).abs() < 1e-15);
        assert!((r1.f_exact_j0 - r1.f_analytic).abs() < 1e-12);
        assert!((r1.f_exact_j1 - r1.f_analytic).abs() < 1e-12);
        assert_eq!(r1.metadata.seed, Some(9));
        assert_ne!(r1.delta_sigma_ii, r2.delta_sigma_ii);
    }

    #[test]
    fn boundary_width_suppresses_error() {
        let l_x = FRAC_PI_4 + 1e-6;
        assert!(hadamard_dx(l_x).unwrap() > 6.0);
        let px = ErrorProfile::constant(0.0, l_x, 256, 0.01).unwrap();
        let py = ErrorProfile::constant(0.0, 1.0, 256, 0.01).unwrap();
        let r = fidelity_report(l_x, 1.0, &px, &py).unwrap();
        assert!(r.one_minus_f_exact < 1e-12);
        assert!(1.0 - r.f_exact_j0 < 1e-12);
    }

    proptest! {
        #[test]
        fn product_equals_expansion(d1 in -3.2f64..3.2, d2 in -3.2f64..3.2) {
            let product = perturbed_hadamard_from_deltas(d1, d2).unwrap();
            prop_assert!(product.max_diff(&expanded_perturbed_hadamard(d1, d2)) < GATE_TOL);
            prop_assert!(product.unitarity_defect() < GATE_TOL);
        }

        #[test]
        fn fidelity_law_for_synthetic_deltas(d1 in -3.2f64..3.2, d2 in -3.2f64..3.2) {
            let g = perturbed_hadamard_from_deltas(d1, d2).unwrap();
            let t = hadamard_minus_i();
            for j in 0..2 {
                prop_assert!((basis_fidelity(&t, &g, j).unwrap() - analytic_fidelity(d1)).abs() < GATE_TOL);
            }
        }

        #[test]
        fn rotation_form_is_consistent(d1 in -1.0f64..1.0) {
            let g1 = plane_holonomy(ControlPlane::XR1, FRAC_PI_4 + d1).unwrap();
            prop_assert!(g1.max_diff(&axis_rotation(PauliAxis::Y, FRAC_PI_4 + d1).unwrap()) < GATE_TOL);
        }
    }
}
