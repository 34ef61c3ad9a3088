use thiserror::Error;

/// Failures raised by the core routines. Every variant is a domain or
/// precondition violation; none of them indicate an internal fault.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("l_x = {0} is too short: the x-loop height d_x = -ln(1 - π/(4 l_x))/2 requires l_x > π/4 ≈ 0.7853981634")]
    LxTooShort(f64),

    #[error("l_y = {0} must be positive for the y-loop height d_y = ln(1 + π/(2 l_y))/2")]
    LyNonPositive(f64),

    #[error("invalid rectangular loop: {0}")]
    InvalidLoop(String),

    #[error("basis index {0} is out of range, expected 0 or 1")]
    BasisIndex(usize),

    #[error("grid must contain at least 2 points, got {0}")]
    Grid(usize),

    #[error("profile domain [{profile_a}, {profile_b}] does not match loop interval [{loop_a}, {loop_b}]")]
    DomainMismatch { profile_a: f64, profile_b: f64, loop_a: f64, loop_b: f64 },

    #[error("path is not closed: first vertex {first:?}, last vertex {last:?}")]
    OpenPath { first: (f64, f64), last: (f64, f64) },

    #[error("all fidelity deficits are below 1e-15; the log-log fit underflows")]
    Underflow,

    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { name, value })
    }
}
