//! Exact 2×2 complex algebra for single-qubit gates.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{finite, Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Tolerance for unitarity and equality checks of chained 2×2 products.
pub const GATE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

/// A 2×2 complex matrix acting on the qubit code space.
///
/// Row-major: `entries[row][col]`. Values are immutable; every operation
/// returns a fresh gate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitGate {
    entries: [[Complex64; 2]; 2],
}

impl QubitGate {
    pub const fn from_entries(entries: [[Complex64; 2]; 2]) -> Self {
        Self { entries }
    }

    pub const fn identity() -> Self {
        Self::from_entries([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn zero() -> Self {
        Self::from_entries([[ZERO; 2]; 2])
    }

    pub fn entries(&self) -> [[Complex64; 2]; 2] {
        self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row][col]
    }

    /// Entries in row-major order: `[u00, u01, u10, u11]`.
    pub fn flat(&self) -> [Complex64; 4] {
        let [[a, b], [c, d]] = self.entries;
        [a, b, c, d]
    }

    pub fn dagger(&self) -> Self {
        let [[a, b], [c, d]] = self.entries;
        Self::from_entries([[a.conj(), c.conj()], [b.conj(), d.conj()]])
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        self.map(|z| z * factor)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.entries;
        for (r, row) in out.iter_mut().enumerate() {
            for (c, z) in row.iter_mut().enumerate() {
                *z += other.entries[r][c];
            }
        }
        Self::from_entries(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-ONE))
    }

    pub fn trace(&self) -> Complex64 {
        self.entries[0][0] + self.entries[1][1]
    }

    pub fn det(&self) -> Complex64 {
        let [[a, b], [c, d]] = self.entries;
        a * d - b * c
    }

    /// Largest entry magnitude.
    pub fn max_norm(&self) -> f64 {
        self.flat().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        self.sub(other).max_norm()
    }

    /// `‖U†U − I‖_max`.
    pub fn unitarity_defect(&self) -> f64 {
        (self.dagger() * *self).max_diff(&Self::identity())
    }

    /// `‖A + A†‖_max`, zero for anti-Hermitian matrices.
    pub fn skew_defect(&self) -> f64 {
        self.add(&self.dagger()).max_norm()
    }

    pub fn is_unitary(&self) -> bool {
        self.unitarity_defect() < GATE_TOL
    }

    pub fn commutator(&self, other: &Self) -> Self {
        (*self * *other).sub(&(*other * *self))
    }

    fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        let [[a, b], [c, d]] = self.entries;
        Self::from_entries([[f(a), f(b)], [f(c), f(d)]])
    }
}

impl Mul for QubitGate {
    type Output = QubitGate;

    fn mul(self, rhs: QubitGate) -> QubitGate {
        let a = &self.entries;
        let b = &rhs.entries;
        let mut out = [[ZERO; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, z) in row.iter_mut().enumerate() {
                *z = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        QubitGate::from_entries(out)
    }
}

impl fmt::Display for QubitGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = self.entries;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

pub fn pauli(axis: PauliAxis) -> QubitGate {
    match axis {
        PauliAxis::X => QubitGate::from_entries([[ZERO, ONE], [ONE, ZERO]]),
        PauliAxis::Y => QubitGate::from_entries([[ZERO, -I], [I, ZERO]]),
        PauliAxis::Z => QubitGate::from_entries([[ONE, ZERO], [ZERO, -ONE]]),
    }
}

/// `exp(−i·angle·σ_axis) = cos(angle)·I − i·sin(angle)·σ_axis`.
pub fn axis_rotation(axis: PauliAxis, angle: f64) -> Result<QubitGate> {
    let angle = finite("rotation angle", angle)?;
    let (s, c) = angle.sin_cos();
    Ok(QubitGate::identity().scale(Complex64::new(c, 0.0)).add(&pauli(axis).scale(Complex64::new(0.0, -s))))
}

/// Product `second · first`: `first` acts on the state before `second`.
pub fn compose(second: &QubitGate, first: &QubitGate) -> QubitGate {
    *second * *first
}

/// `(1/√2)[[1, 1], [1, −1]]`.
pub fn hadamard_target() -> QubitGate {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    QubitGate::from_entries([[h, h], [h, -h]])
}

/// `−i·H₀`, the form in which the loop holonomies realize the Hadamard gate.
pub fn hadamard_minus_i() -> QubitGate {
    hadamard_target().scale(-I)
}

fn overlap(target: &QubitGate, actual: &QubitGate, j: usize) -> Result<QubitGate> {
    if j > 1 {
        return Err(Error::BasisIndex(j));
    }
    Ok(target.dagger() * *actual)
}

/// `|⟨j| target† · actual |j⟩|`.
///
/// Both arguments are expected in the `−i·gate` normalization produced by
/// composing loop holonomies, so `target† · actual = iH₀†·(−iH)`. Only the
/// modulus is returned, which makes the value independent of the global
/// phase of either argument.
pub fn basis_fidelity(target: &QubitGate, actual: &QubitGate, j: usize) -> Result<f64> {
    let w = overlap(target, actual, j)?;
    Ok(w.get(j, j).norm().min(1.0))
}

/// `1 − basis_fidelity`, evaluated without cancellation.
///
/// For unitary inputs column `j` of `target†·actual` has unit norm, so
/// `1 − |w_jj| = |w_kj|² / (1 + |w_jj|)` with `k ≠ j`. This keeps full
/// relative precision when the deficit is far below machine epsilon
/// relative to one. Non-unitary inputs should use `1 − basis_fidelity`.
pub fn basis_infidelity(target: &QubitGate, actual: &QubitGate, j: usize) -> Result<f64> {
    let w = overlap(target, actual, j)?;
    let diag = w.get(j, j).norm();
    let off = w.get(1 - j, j).norm_sqr();
    Ok(off / (1.0 + diag))
}

/// Exponential of an arbitrary 2×2 complex matrix in closed form.
///
/// With `M = t·I + N`, `tr N = 0` and `q² = −det N`:
/// `exp(M) = e^t (cosh q · I + sinh(q)/q · N)`.
pub fn expm2(m: &QubitGate) -> QubitGate {
    let t = m.trace() * 0.5;
    let n = m.sub(&QubitGate::identity().scale(t));
    let q = (-n.det()).sqrt();
    let (cosh_q, sinhc_q) = if q.norm() < 1e-4 {
        // Taylor tails; the next omitted terms are O(q^6).
        let q2 = q * q;
        (ONE + q2 / 2.0 + q2 * q2 / 24.0, ONE + q2 / 6.0 + q2 * q2 / 120.0)
    } else {
        (q.cosh(), q.sinh() / q)
    };
    QubitGate::identity().scale(cosh_q).add(&n.scale(sinhc_q)).scale(t.exp())
}
