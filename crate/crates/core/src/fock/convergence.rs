//! Error tables over refinement ladders of truncation and step counts.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::loops::{analytic_field_strength, holonomy, ControlPlane, RectLoop};

use super::connection::field_strength;
use super::path::{path_ordered_holonomy, ControlPath};
use super::space::{ControlPoint, Direction, FockSpace};

/// Allowed relative growth between consecutive rungs.
pub const NOISE_ALLOWANCE: f64 = 0.10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConvergenceTarget {
    /// `F_{s r1}` of the plane at the point, against the closed form.
    FieldStrength { plane: ControlPlane, point: ControlPoint },
    /// Oracle holonomy of the loop, against `exp(−iσΣ)`.
    Holonomy { lp: RectLoop },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rung {
    pub dim: usize,
    pub steps_per_edge: usize,
    pub fd_step: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub rung: Rung,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTable {
    pub target: ConvergenceTarget,
    pub rows: Vec<ConvergenceRow>,
    /// Errors never grow by more than the noise allowance along the ladder.
    pub non_increasing: bool,
}

/// Target error for one rung: relative max-norm for field strengths, max-norm
/// for holonomies.
pub fn rung_error(target: &ConvergenceTarget, rung: &Rung) -> Result<f64> {
    let space = FockSpace::new(rung.dim)?;
    match *target {
        ConvergenceTarget::FieldStrength { plane, point } => {
            let f = field_strength(&point, Direction::along(plane), Direction::R1, rung.fd_step, &space)?;
            let exact = analytic_field_strength(plane, point.r1);
            Ok(f.max_diff(&exact) / exact.max_norm())
        }
        ConvergenceTarget::Holonomy { lp } => {
            let h = path_ordered_holonomy(&ControlPath::from_rect(&lp), rung.steps_per_edge, &space, rung.fd_step)?;
            Ok(h.gate.max_diff(&holonomy(&lp)))
        }
    }
}

pub fn convergence_check(target: ConvergenceTarget, ladder: &[Rung]) -> Result<ConvergenceTable> {
    if ladder.len() < 3 {
        return Err(Error::Domain(format!("a convergence ladder needs at least 3 rungs, got {}", ladder.len())));
    }
    let rows = ladder
        .iter()
        .map(|rung| Ok(ConvergenceRow { rung: *rung, error: rung_error(&target, rung)? }))
        .collect::<Result<Vec<_>>>()?;
    let non_increasing = rows.windows(2).all(|w| w[1].error <= w[0].error * (1.0 + NOISE_ALLOWANCE) + 1e-12);
    Ok(ConvergenceTable { target, rows, non_increasing })
}
