//! Squeezing-control error models and the resulting gate fidelity.

pub mod fidelity;
pub mod profile;
pub mod study;

pub use fidelity::*;
pub use profile::{Distribution, ErrorProfile, ProfileGenerator};
pub use study::*;
