//! Adiabatic connection `(A_μ)_{mn} = ⟨φ_m|U† ∂_μ U|φ_n⟩` on the code basis
//! `{|0⟩, |1⟩}` and its curvature, both by central finite differences.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::su2::QubitGate;

use super::expm::CVector;
use super::space::{displaced, squeezed_code_states, ControlPoint, Direction, FockSpace};

pub const MIN_STEP: f64 = 1e-6;
pub const MAX_STEP: f64 = 1e-2;
pub const DEFAULT_STEP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionMatrix {
    pub direction: Direction,
    pub matrix: QubitGate,
}

impl ConnectionMatrix {
    /// `‖A + A†‖_max`; nonzero only through truncation and rounding.
    pub fn skew_defect(&self) -> f64 {
        self.matrix.skew_defect()
    }
}

pub(crate) fn check_step(step: f64) -> Result<f64> {
    if (MIN_STEP..=MAX_STEP).contains(&step) {
        Ok(step)
    } else {
        Err(Error::Domain(format!("finite-difference step must lie in [{MIN_STEP:e}, {MAX_STEP:e}], got {step}")))
    }
}

fn overlap(bra: &[CVector; 2], ket: &[CVector; 2]) -> QubitGate {
    let e = |m: usize, n: usize| bra[m].dotc(&ket[n]);
    QubitGate::from_entries([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
}

/// Connection components at `p` for each of `dirs`, sharing the code states
/// at `p` and the squeezed states whenever `r1` is unchanged.
pub(crate) fn connections(p: &ControlPoint, dirs: &[Direction], step: f64, space: &FockSpace) -> Vec<QubitGate> {
    let squeezed = squeezed_code_states(p.r1, space);
    let center = displaced(p.eta(), &squeezed, space);
    let scale = Complex64::new(0.5 / step, 0.0);
    dirs.iter()
        .map(|&dir| {
            let states_at = |by: f64| {
                let q = p.shifted(dir, by);
                if dir == Direction::R1 {
                    displaced(q.eta(), &squeezed_code_states(q.r1, space), space)
                } else {
                    displaced(q.eta(), &squeezed, space)
                }
            };
            let plus = states_at(step);
            let minus = states_at(-step);
            let diff = [&plus[0] - &minus[0], &plus[1] - &minus[1]];
            overlap(&center, &diff).scale(scale)
        })
        .collect()
}

pub fn connection(p: &ControlPoint, mu: Direction, step: f64, space: &FockSpace) -> Result<ConnectionMatrix> {
    let step = check_step(step)?;
    let matrix = connections(p, &[mu], step, space)[0];
    Ok(ConnectionMatrix { direction: mu, matrix })
}

/// `F_{μν} = ∂_μ A_ν − ∂_ν A_μ + [A_μ, A_ν]`.
pub fn field_strength(
    p: &ControlPoint,
    mu: Direction,
    nu: Direction,
    step: f64,
    space: &FockSpace,
) -> Result<QubitGate> {
    let step = check_step(step)?;
    let a = |q: &ControlPoint, d: Direction| connections(q, &[d], step, space)[0];
    let derivative = |along: Direction, of: Direction| {
        a(&p.shifted(along, step), of).sub(&a(&p.shifted(along, -step), of)).scale(Complex64::new(0.5 / step, 0.0))
    };
    let at_p = connections(p, &[mu, nu], step, space);
    Ok(derivative(mu, nu).sub(&derivative(nu, mu)).add(&at_p[0].commutator(&at_p[1])))
}

/// Difference between connection estimates at `step` and `step / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RichardsonReport {
    pub step: f64,
    pub defect: f64,
    pub half_step_defect: f64,
    /// `log2(defect / half_step_defect)`, close to 2 for central differences.
    pub observed_order: f64,
}

pub fn richardson_check(p: &ControlPoint, mu: Direction, step: f64, space: &FockSpace) -> Result<RichardsonReport> {
    check_step(step)?;
    check_step(step / 4.0)?;
    let a = |h: f64| connection(p, mu, h, space).map(|c| c.matrix);
    let (a1, a2, a4) = (a(step)?, a(step / 2.0)?, a(step / 4.0)?);
    let defect = a1.max_diff(&a2);
    let half_step_defect = a2.max_diff(&a4);
    Ok(RichardsonReport { step, defect, half_step_defect, observed_order: (defect / half_step_defect).log2() })
}
