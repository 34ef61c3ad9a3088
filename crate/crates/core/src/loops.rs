//! Rectangular control loops in the `(x, r1)` and `(y, r1)` planes at `θ1 = 0`,
//! their surface-integral holonomy angles, and the Hadamard construction.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{finite, Error, Result};
use crate::noise::ErrorProfile;
use crate::quadrature::trapezoid;
use crate::su2::{axis_rotation, compose, pauli, PauliAxis, QubitGate};

/// Smallest admissible margin above `π/4` for the x-loop width.
pub const LX_MARGIN: f64 = 1e-9;

/// Control plane of a loop. The squeezing phase `θ1` is zero in both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ControlPlane {
    /// Displacement `x` against squeezing magnitude `r1`.
    XR1,
    /// Displacement `y` against squeezing magnitude `r1`.
    YR1,
}

impl ControlPlane {
    /// Column integral `∫_0^h 2 e^{∓2 r1} dr1` of the field-strength density.
    pub(crate) fn column(self, height: f64) -> f64 {
        match self {
            ControlPlane::XR1 => -(-2.0 * height).exp_m1(),
            ControlPlane::YR1 => (2.0 * height).exp_m1(),
        }
    }

    /// Axis of the holonomy generated by loops in this plane.
    pub fn rotation_axis(self) -> PauliAxis {
        match self {
            ControlPlane::XR1 => PauliAxis::Y,
            ControlPlane::YR1 => PauliAxis::X,
        }
    }
}

/// Axis-aligned rectangle `[a, b] × [0, d]` with its base on `r1 = 0`.
///
/// Traversal is `(a,0) → (b,0) → (b,d) → (a,d) → (a,0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RectLoop {
    plane: ControlPlane,
    a: f64,
    b: f64,
    d: f64,
}

impl RectLoop {
    pub fn new(plane: ControlPlane, a: f64, b: f64, d: f64) -> Result<Self> {
        let a = finite("loop start a", a)?;
        let b = finite("loop end b", b)?;
        let d = finite("loop height d", d)?;
        if b <= a {
            return Err(Error::InvalidLoop(format!("need b > a, got a = {a}, b = {b}")));
        }
        if d <= 0.0 {
            return Err(Error::InvalidLoop(format!("need d > 0, got d = {d}")));
        }
        Ok(Self { plane, a, b, d })
    }

    pub fn plane(&self) -> ControlPlane {
        self.plane
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn side_length(&self) -> f64 {
        self.b - self.a
    }

    /// Corner vertices in traversal order, closed (first == last),
    /// as `(displacement, r1)` pairs.
    pub fn vertices(&self) -> [(f64, f64); 5] {
        let (a, b, d) = (self.a, self.b, self.d);
        [(a, 0.0), (b, 0.0), (b, d), (a, d), (a, 0.0)]
    }
}

pub fn side_length(lp: &RectLoop) -> f64 {
    lp.side_length()
}

/// Closed-form `∬ 2 e^{∓2 r1}` over the rectangle:
/// `l (1 − e^{−2d})` in `XR1`, `l (e^{2d} − 1)` in `YR1`.
pub fn surface_sigma(lp: &RectLoop) -> f64 {
    lp.side_length() * lp.plane.column(lp.d)
}

/// Trapezoid quadrature of the same surface integral on `grid` points along
/// the displacement axis, the `r1` column being integrated exactly. With
/// `top_edge` the region is bounded above by `r1 = d + δr(s)`, the profile
/// being linearly interpolated between its samples.
pub fn surface_sigma_quadrature(lp: &RectLoop, top_edge: Option<&ErrorProfile>, grid: usize) -> Result<f64> {
    if grid < 2 {
        return Err(Error::Grid(grid));
    }
    if let Some(profile) = top_edge {
        profile.check_domain(lp.a, lp.b)?;
    }
    let h = lp.side_length() / (grid - 1) as f64;
    let columns: Vec<f64> = (0..grid)
        .map(|k| {
            let s = if k + 1 == grid { lp.b } else { lp.a + k as f64 * h };
            let dr = top_edge.map_or(0.0, |p| p.value_at(s));
            lp.plane.column(lp.d + dr)
        })
        .collect();
    Ok(trapezoid(&columns, h))
}

/// Height of the x-loop giving `Σ_I = π/4`: `d_x = −½ ln(1 − π/(4 l_x))`.
pub fn hadamard_dx(l_x: f64) -> Result<f64> {
    let l_x = finite("l_x", l_x)?;
    if l_x <= FRAC_PI_4 + LX_MARGIN {
        return Err(Error::LxTooShort(l_x));
    }
    Ok(-0.5 * (-FRAC_PI_4 / l_x).ln_1p())
}

/// Height of the y-loop giving `Σ_II = π/2`: `d_y = ½ ln(1 + π/(2 l_y))`.
pub fn hadamard_dy(l_y: f64) -> Result<f64> {
    let l_y = finite("l_y", l_y)?;
    if l_y <= 0.0 {
        return Err(Error::LyNonPositive(l_y));
    }
    Ok(0.5 * (FRAC_PI_2 / l_y).ln_1p())
}

/// Field-strength component of the plane at `θ1 = 0`:
/// `F_{x r1} = −2iσ_y e^{−2 r1}` and `F_{y r1} = −2iσ_x e^{2 r1}`.
pub fn analytic_field_strength(plane: ControlPlane, r1: f64) -> QubitGate {
    let (axis, weight) = match plane {
        ControlPlane::XR1 => (PauliAxis::Y, (-2.0 * r1).exp()),
        ControlPlane::YR1 => (PauliAxis::X, (2.0 * r1).exp()),
    };
    pauli(axis).scale(Complex64::new(0.0, -2.0 * weight))
}

/// The pair `(C_I, C_II)` whose holonomies compose to `−i·H₀`.
pub fn hadamard_loops(l_x: f64, l_y: f64, a_x: f64, a_y: f64) -> Result<(RectLoop, RectLoop)> {
    let d_x = hadamard_dx(l_x)?;
    let d_y = hadamard_dy(l_y)?;
    let a_x = finite("a_x", a_x)?;
    let a_y = finite("a_y", a_y)?;
    Ok((RectLoop::new(ControlPlane::XR1, a_x, a_x + l_x, d_x)?, RectLoop::new(ControlPlane::YR1, a_y, a_y + l_y, d_y)?))
}

/// Rotation by `Σ` about the plane's axis: `exp(−iσ_y Σ)` for `XR1`,
/// `exp(−iσ_x Σ)` for `YR1`.
pub fn plane_holonomy(plane: ControlPlane, sigma: f64) -> Result<QubitGate> {
    axis_rotation(plane.rotation_axis(), sigma)
}

pub fn holonomy(lp: &RectLoop) -> QubitGate {
    plane_holonomy(lp.plane, surface_sigma(lp)).expect("valid loops have finite area")
}

/// `Γ(C_II) · Γ(C_I)` for the Hadamard loops of widths `l_x`, `l_y`.
pub fn hadamard_gate(l_x: f64, l_y: f64) -> Result<QubitGate> {
    let (c1, c2) = hadamard_loops(l_x, l_y, 0.0, 0.0)?;
    Ok(compose(&holonomy(&c2), &holonomy(&c1)))
}
