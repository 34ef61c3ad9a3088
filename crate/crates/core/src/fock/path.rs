//! Holonomy of a closed polyline as an ordered product of per-step 2×2
//! exponentials of the numerical connection.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{finite, Error, Result};
use crate::loops::{ControlPlane, RectLoop};
use crate::noise::ErrorProfile;
use crate::su2::{expm2, QubitGate};

use super::connection::{check_step, connections};
use super::space::{ControlPoint, Direction, FockSpace};

pub const MIN_STEPS_PER_EDGE: usize = 10;

/// Closed polyline in one control plane, vertices as `(displacement, r1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ControlPath {
    plane: ControlPlane,
    vertices: Vec<(f64, f64)>,
}

impl ControlPath {
    pub fn new(plane: ControlPlane, vertices: Vec<(f64, f64)>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::Domain("a control path needs at least two vertices".into()));
        }
        for &(s, r) in &vertices {
            finite("path displacement", s)?;
            finite("path squeezing", r)?;
        }
        Ok(Self { plane, vertices })
    }

    pub fn from_rect(lp: &RectLoop) -> Self {
        Self { plane: lp.plane(), vertices: lp.vertices().to_vec() }
    }

    /// Rectangle whose top edge is the jagged line `r1 = d + δr(s_k)`
    /// through every profile sample, traversed from `b` back to `a`.
    pub fn perturbed_rect(lp: &RectLoop, profile: &ErrorProfile) -> Result<Self> {
        profile.check_domain(lp.a(), lp.b())?;
        let mut vertices = vec![(lp.a(), 0.0), (lp.b(), 0.0)];
        vertices.extend((0..profile.grid_size()).rev().map(|k| (profile.position(k), lp.d() + profile.samples()[k])));
        vertices.push((lp.a(), 0.0));
        Ok(Self { plane: lp.plane(), vertices })
    }

    pub fn plane(&self) -> ControlPlane {
        self.plane
    }

    pub fn vertices(&self) -> &[(f64, f64)] {
        &self.vertices
    }

    pub fn is_closed(&self) -> bool {
        self.vertices.first() == self.vertices.last()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathHolonomy {
    /// Ordered product, not re-unitarized.
    pub gate: QubitGate,
    pub unitarity_defect: f64,
    /// Largest `‖A + A†‖_max` met along the path.
    pub max_skew_defect: f64,
    pub steps: usize,
}

struct Step {
    mid: ControlPoint,
    ds: f64,
    dr: f64,
}

/// `P exp ∮ A_μ dλ_μ`, later steps multiplying from the left. Each edge is
/// split into `steps_per_edge` steps; each step contributes the exact 2×2
/// exponential of `A_s Δs + A_r1 Δr1` evaluated at the step midpoint.
pub fn path_ordered_holonomy(
    path: &ControlPath,
    steps_per_edge: usize,
    space: &FockSpace,
    fd_step: f64,
) -> Result<PathHolonomy> {
    if !path.is_closed() {
        return Err(Error::OpenPath { first: path.vertices[0], last: *path.vertices.last().unwrap() });
    }
    if steps_per_edge < MIN_STEPS_PER_EDGE {
        return Err(Error::Domain(format!(
            "path ordering needs at least {MIN_STEPS_PER_EDGE} steps per edge, got {steps_per_edge}"
        )));
    }
    let fd_step = check_step(fd_step)?;
    let along = Direction::along(path.plane);

    let steps: Vec<Step> = path
        .vertices
        .windows(2)
        .filter(|w| w[0] != w[1])
        .flat_map(|w| {
            let ((s0, r0), (s1, r1)) = (w[0], w[1]);
            let m = steps_per_edge as f64;
            (0..steps_per_edge).map(move |k| {
                let t = (k as f64 + 0.5) / m;
                Step {
                    mid: ControlPoint::in_plane(path.plane, s0 + t * (s1 - s0), r0 + t * (r1 - r0)),
                    ds: (s1 - s0) / m,
                    dr: (r1 - r0) / m,
                }
            })
        })
        .collect();

    let factors: Vec<(QubitGate, f64)> = steps
        .par_iter()
        .map(|st| {
            let mut dirs = Vec::with_capacity(2);
            let mut deltas = Vec::with_capacity(2);
            if st.ds != 0.0 {
                dirs.push(along);
                deltas.push(st.ds);
            }
            if st.dr != 0.0 {
                dirs.push(Direction::R1);
                deltas.push(st.dr);
            }
            let comps = connections(&st.mid, &dirs, fd_step, space);
            let skew = comps.iter().map(|a| a.skew_defect()).fold(0.0, f64::max);
            let exponent = comps
                .iter()
                .zip(&deltas)
                .fold(QubitGate::zero(), |acc, (a, &d)| acc.add(&a.scale(Complex64::new(d, 0.0))));
            (expm2(&exponent), skew)
        })
        .collect();

    let gate = factors.iter().fold(QubitGate::identity(), |acc, (f, _)| *f * acc);
    Ok(PathHolonomy {
        gate,
        unitarity_defect: gate.unitarity_defect(),
        max_skew_defect: factors.iter().map(|(_, s)| *s).fold(0.0, f64::max),
        steps: steps.len(),
    })
}
