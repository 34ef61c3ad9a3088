use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{finite, Error, Result};
use crate::loops::ControlPlane;

use super::expm::{expm, expm_apply, BandedGenerator, CMatrix, CVector};

/// Truncated single-mode Fock space `span{|0⟩, …, |N−1⟩}` with cached
/// ladder operators. Immutable after construction.
#[derive(Debug, Clone)]
pub struct FockSpace {
    dim: usize,
    annihilation: CMatrix,
    creation: CMatrix,
}

/// Smallest truncation for which the code basis and `a†²|1⟩` fit.
pub const MIN_DIM: usize = 4;

impl FockSpace {
    pub fn new(dim: usize) -> Result<Self> {
        if dim < MIN_DIM {
            return Err(Error::Domain(format!("Fock truncation must be at least {MIN_DIM}, got {dim}")));
        }
        let mut a = CMatrix::zeros(dim, dim);
        for n in 1..dim {
            a[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
        }
        let creation = a.adjoint();
        Ok(Self { dim, annihilation: a, creation })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn annihilation(&self) -> &CMatrix {
        &self.annihilation
    }

    pub fn creation(&self) -> &CMatrix {
        &self.creation
    }

    pub fn basis(&self, n: usize) -> CVector {
        let mut v = CVector::zeros(self.dim);
        v[n] = Complex64::new(1.0, 0.0);
        v
    }

    /// `ν a†a† − ν̄ a a` as a banded generator.
    pub fn squeeze_generator(&self, nu: Complex64) -> BandedGenerator {
        BandedGenerator::new(self.dim).with_diagonal(-2, nu, |i| ((i * (i - 1)) as f64).sqrt()).with_diagonal(
            2,
            -nu.conj(),
            |i| (((i + 1) * (i + 2)) as f64).sqrt(),
        )
    }

    /// `η a† − η̄ a` as a banded generator.
    pub fn displace_generator(&self, eta: Complex64) -> BandedGenerator {
        BandedGenerator::new(self.dim).with_diagonal(-1, eta, |i| (i as f64).sqrt()).with_diagonal(
            1,
            -eta.conj(),
            |i| ((i + 1) as f64).sqrt(),
        )
    }
}

/// `S(ν) = exp(ν a†a† − ν̄ a a)`.
pub fn squeeze(nu: Complex64, space: &FockSpace) -> CMatrix {
    let (a, ad) = (space.annihilation(), space.creation());
    let g = ad * ad * nu - a * a * nu.conj();
    expm(&g)
}

/// `D(η) = exp(η a† − η̄ a)`.
pub fn displace(eta: Complex64, space: &FockSpace) -> CMatrix {
    let g = space.creation() * eta - space.annihilation() * eta.conj();
    expm(&g)
}

/// A point of the control manifold `(x, y, r1)` at squeezing phase `θ1 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ControlPoint {
    pub x: f64,
    pub y: f64,
    pub r1: f64,
}

impl ControlPoint {
    pub fn new(x: f64, y: f64, r1: f64) -> Result<Self> {
        Ok(Self { x: finite("x", x)?, y: finite("y", y)?, r1: finite("r1", r1)? })
    }

    pub const fn origin() -> Self {
        Self { x: 0.0, y: 0.0, r1: 0.0 }
    }

    /// Maps in-plane coordinates `(s, r1)` onto the manifold; the other
    /// displacement coordinate is zero.
    pub fn in_plane(plane: ControlPlane, s: f64, r1: f64) -> Self {
        match plane {
            ControlPlane::XR1 => Self { x: s, y: 0.0, r1 },
            ControlPlane::YR1 => Self { x: 0.0, y: s, r1 },
        }
    }

    pub fn theta1(&self) -> f64 {
        0.0
    }

    pub fn eta(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub fn nu(&self) -> Complex64 {
        Complex64::new(self.r1, 0.0)
    }

    pub fn shifted(&self, dir: Direction, by: f64) -> Self {
        let mut p = *self;
        match dir {
            Direction::X => p.x += by,
            Direction::Y => p.y += by,
            Direction::R1 => p.r1 += by,
        }
        p
    }
}

/// Control direction `μ` of a connection component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    X,
    Y,
    R1,
}

impl Direction {
    pub fn along(plane: ControlPlane) -> Self {
        match plane {
            ControlPlane::XR1 => Direction::X,
            ControlPlane::YR1 => Direction::Y,
        }
    }
}

/// `U = D(x + iy) S(r1 e^{iθ1})`.
pub fn control_unitary(p: &ControlPoint, space: &FockSpace) -> CMatrix {
    displace(p.eta(), space) * squeeze(p.nu(), space)
}

/// `S(ν)|0⟩, S(ν)|1⟩`.
pub(crate) fn squeezed_code_states(r1: f64, space: &FockSpace) -> [CVector; 2] {
    let g = space.squeeze_generator(Complex64::new(r1, 0.0));
    [expm_apply(&g, &space.basis(0)), expm_apply(&g, &space.basis(1))]
}

/// `D(η)` applied to both squeezed code states.
pub(crate) fn displaced(eta: Complex64, states: &[CVector; 2], space: &FockSpace) -> [CVector; 2] {
    let g = space.displace_generator(eta);
    [expm_apply(&g, &states[0]), expm_apply(&g, &states[1])]
}

/// `U(p)|0⟩, U(p)|1⟩`.
pub fn code_states(p: &ControlPoint, space: &FockSpace) -> [CVector; 2] {
    displaced(p.eta(), &squeezed_code_states(p.r1, space), space)
}
