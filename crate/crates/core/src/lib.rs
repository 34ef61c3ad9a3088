//! Holonomic one-qubit gates from squeezing and displacement control loops.
//!
//! Two rectangular loops, one in the `(x, r1)` plane and one in the
//! `(y, r1)` plane, compose to `−i·H₀`. The crate provides the gate algebra
//! ([`su2`]), loop geometry ([`loops`]), squeezing-error fidelity and its
//! Monte Carlo studies ([`noise`]), and a truncated Fock-space oracle that
//! rebuilds the holonomies from first principles ([`fock`]).

pub mod error;
pub mod fock;
pub mod loops;
pub mod noise;
pub mod quadrature;
pub mod su2;

pub use error::{Error, Result};
pub use loops::{
    hadamard_dx, hadamard_dy, hadamard_gate, hadamard_loops, holonomy, side_length, surface_sigma,
    surface_sigma_quadrature, ControlPlane, RectLoop,
};
pub use noise::{ErrorProfile, FidelityReport, NoiseFamily, NoiseSpec};
pub use su2::{axis_rotation, basis_fidelity, compose, hadamard_minus_i, hadamard_target, pauli, PauliAxis, QubitGate};

/// Version string embedded in every emitted artifact.
pub const ARTIFACT_VERSION: &str = concat!("hadamard-core ", env!("CARGO_PKG_VERSION"));
