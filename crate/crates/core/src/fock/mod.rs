//! Brute-force oracle in a truncated bosonic Fock space.
//!
//! Builds the squeeze and displacement operators, evaluates the adiabatic
//! connection on the code basis `{|0⟩, |1⟩}` and its curvature by finite
//! differences, and path-orders closed loops for comparison with the
//! closed-form holonomies.

pub mod connection;
pub mod convergence;
pub mod expm;
pub mod path;
pub mod space;
pub mod verify;

pub use connection::{connection, field_strength, richardson_check, ConnectionMatrix, RichardsonReport, DEFAULT_STEP};
pub use convergence::{convergence_check, rung_error, ConvergenceRow, ConvergenceTable, ConvergenceTarget, Rung};
pub use path::{path_ordered_holonomy, ControlPath, PathHolonomy};
pub use space::{code_states, control_unitary, displace, squeeze, ControlPoint, Direction, FockSpace};
pub use verify::{verify_oracle, OracleCheck, VerificationTable, VerifySettings};

/// Default truncation of the oracle.
pub const DEFAULT_DIM: usize = 64;
