//! The oracle check suite: field strengths at seeded points, Hadamard loop
//! holonomies, a truncation ladder and a perturbed-loop fidelity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{finite, Error, Result};
use crate::loops::{analytic_field_strength, hadamard_loops, holonomy, ControlPlane};
use crate::noise::{perturbed_sigma, ErrorProfile};
use crate::su2::{basis_fidelity, compose, hadamard_minus_i};

use super::connection::{check_step, field_strength, DEFAULT_STEP};
use super::convergence::{convergence_check, ConvergenceTable, ConvergenceTarget, Rung};
use super::path::{path_ordered_holonomy, ControlPath, MIN_STEPS_PER_EDGE};
use super::space::{ControlPoint, Direction, FockSpace, MIN_DIM};

pub const FIELD_TOL: f64 = 1e-3;
pub const HOLONOMY_TOL: f64 = 2e-3;
pub const PERTURBED_TOL: f64 = 5e-3;
pub const MAX_DIM: usize = 1024;
/// Samples of the constant profile used as the perturbed top edge.
pub const PERTURBED_GRID: usize = 9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifySettings {
    pub dim: usize,
    pub steps_per_edge: usize,
    pub fd_step: f64,
    pub ladder: Vec<usize>,
    pub points: usize,
    pub seed: u64,
    pub l_x: f64,
    pub l_y: f64,
    pub eps: f64,
}

impl Default for VerifySettings {
    fn default() -> Self {
        Self {
            dim: super::DEFAULT_DIM,
            steps_per_edge: 400,
            fd_step: DEFAULT_STEP,
            ladder: vec![32, 48, 64, 96],
            points: 10,
            seed: 1,
            l_x: 1.0,
            l_y: 1.0,
            eps: 0.05,
        }
    }
}

impl VerifySettings {
    pub fn validate(&self) -> Result<()> {
        let dim_ok = |n: usize| (MIN_DIM..=MAX_DIM).contains(&n);
        if !dim_ok(self.dim) {
            return Err(Error::Domain(format!("Fock truncation must lie in [{MIN_DIM}, {MAX_DIM}], got {}", self.dim)));
        }
        if self.ladder.len() < 3 || !self.ladder.iter().all(|&n| dim_ok(n)) {
            return Err(Error::Domain(format!(
                "the ladder needs at least 3 truncations in [{MIN_DIM}, {MAX_DIM}], got {:?}",
                self.ladder
            )));
        }
        if self.steps_per_edge < MIN_STEPS_PER_EDGE {
            return Err(Error::Domain(format!(
                "at least {MIN_STEPS_PER_EDGE} steps per edge are needed, got {}",
                self.steps_per_edge
            )));
        }
        check_step(self.fd_step)?;
        if self.points == 0 {
            return Err(Error::Domain("at least one field-strength point is needed".into()));
        }
        if finite("eps", self.eps)?.abs() > 0.2 {
            return Err(Error::Domain(format!("perturbation must satisfy |eps| <= 0.2, got {}", self.eps)));
        }
        hadamard_loops(self.l_x, self.l_y, 0.0, 0.0)?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub name: String,
    pub error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl OracleCheck {
    fn new(name: impl Into<String>, error: f64, tolerance: f64) -> Self {
        Self { name: name.into(), error, tolerance, passed: error <= tolerance }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationTable {
    pub checks: Vec<OracleCheck>,
    pub ladder: ConvergenceTable,
    pub max_unitarity_defect: f64,
    pub max_skew_defect: f64,
    pub passed: bool,
}

/// Points with `r1 ∈ [0, 1]` and in-plane displacement in `[−1, 1]`,
/// alternating between the two planes.
pub fn field_points(count: usize, seed: u64) -> Vec<(ControlPlane, ControlPoint)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let plane = if i % 2 == 0 { ControlPlane::XR1 } else { ControlPlane::YR1 };
            let s = rng.random_range(-1.0..=1.0);
            let r1 = rng.random_range(0.0..=1.0);
            (plane, ControlPoint::in_plane(plane, s, r1))
        })
        .collect()
}

pub fn field_strength_error(plane: ControlPlane, point: &ControlPoint, step: f64, space: &FockSpace) -> Result<f64> {
    let f = field_strength(point, Direction::along(plane), Direction::R1, step, space)?;
    let exact = analytic_field_strength(plane, point.r1);
    Ok(f.max_diff(&exact) / exact.max_norm())
}

pub fn verify_oracle(settings: &VerifySettings) -> Result<VerificationTable> {
    settings.validate()?;
    let space = FockSpace::new(settings.dim)?;
    let mut checks = Vec::new();

    for (i, (plane, p)) in field_points(settings.points, settings.seed).iter().enumerate() {
        let err = field_strength_error(*plane, p, settings.fd_step, &space)?;
        let name = format!("field_strength[{i}] {plane:?} s={:.4} r1={:.4}", p.x + p.y, p.r1);
        checks.push(OracleCheck::new(name, err, FIELD_TOL));
    }

    let (c1, c2) = hadamard_loops(settings.l_x, settings.l_y, 0.0, 0.0)?;
    let run = |path: &ControlPath| path_ordered_holonomy(path, settings.steps_per_edge, &space, settings.fd_step);
    let h1 = run(&ControlPath::from_rect(&c1))?;
    let h2 = run(&ControlPath::from_rect(&c2))?;
    checks.push(OracleCheck::new("holonomy C_I", h1.gate.max_diff(&holonomy(&c1)), HOLONOMY_TOL));
    checks.push(OracleCheck::new("holonomy C_II", h2.gate.max_diff(&holonomy(&c2)), HOLONOMY_TOL));
    let composed = compose(&h2.gate, &h1.gate);
    checks.push(OracleCheck::new("hadamard -iH0", composed.max_diff(&hadamard_minus_i()), HOLONOMY_TOL));

    let profile = ErrorProfile::constant(c1.a(), c1.b(), PERTURBED_GRID, settings.eps)?;
    let hp = run(&ControlPath::perturbed_rect(&c1, &profile)?)?;
    let f_oracle = basis_fidelity(&hadamard_minus_i(), &compose(&h2.gate, &hp.gate), 0)?;
    let f_law = perturbed_sigma(&c1, &profile)?.delta_sigma.cos().abs();
    checks.push(OracleCheck::new("perturbed fidelity", (f_oracle - f_law).abs(), PERTURBED_TOL));

    let target =
        ConvergenceTarget::FieldStrength { plane: ControlPlane::XR1, point: ControlPoint::new(0.0, 0.0, 0.5)? };
    let rungs: Vec<Rung> = settings
        .ladder
        .iter()
        .map(|&dim| Rung { dim, steps_per_edge: settings.steps_per_edge, fd_step: settings.fd_step })
        .collect();
    let ladder = convergence_check(target, &rungs)?;

    let holonomies = [&h1, &h2, &hp];
    let passed = ladder.non_increasing && checks.iter().all(|c| c.passed);
    Ok(VerificationTable {
        checks,
        ladder,
        max_unitarity_defect: holonomies.iter().map(|h| h.unitarity_defect).fold(0.0, f64::max),
        max_skew_defect: holonomies.iter().map(|h| h.max_skew_defect).fold(0.0, f64::max),
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_points_are_seeded_and_in_range() {
        let a = field_points(10, 7);
        assert_eq!(a, field_points(10, 7));
        assert_ne!(a, field_points(10, 8));
        for (plane, p) in &a {
            assert!((0.0..=1.0).contains(&p.r1));
            let (s, other) = match plane {
                ControlPlane::XR1 => (p.x, p.y),
                ControlPlane::YR1 => (p.y, p.x),
            };
            assert!((-1.0..=1.0).contains(&s) && other == 0.0);
        }
    }

    #[test]
    fn envelope_is_enforced() {
        let ok = VerifySettings::default();
        assert!(ok.validate().is_ok());
        for bad in [
            VerifySettings { dim: 2, ..ok.clone() },
            VerifySettings { dim: 5000, ..ok.clone() },
            VerifySettings { ladder: vec![32, 64], ..ok.clone() },
            VerifySettings { steps_per_edge: 5, ..ok.clone() },
            VerifySettings { fd_step: 0.5, ..ok.clone() },
            VerifySettings { eps: f64::NAN, ..ok.clone() },
            VerifySettings { l_x: 0.5, ..ok.clone() },
        ] {
            assert!(verify_oracle(&bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn under_truncation_fails() {
        let s = VerifySettings { dim: 8, steps_per_edge: 10, ladder: vec![8, 12, 16], points: 2, ..Default::default() };
        let table = verify_oracle(&s).unwrap();
        assert!(!table.passed);
        assert!(table.checks.iter().any(|c| !c.passed));
    }
}
