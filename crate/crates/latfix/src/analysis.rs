//! Semicontinuity certificates and p-integrals of grid maps.
//!
//! The USC reports here are structural certificates, not a general
//! upper-semicontinuity decision procedure:
//!
//! * an interpolated [`GridMap`] is continuous on the box, hence USC in
//!   every component;
//! * a 1D [`GridEndo`] induces a step function under the *upper-step
//!   convention* (at each node the function takes the larger of the two
//!   adjacent step values), and `limsup ≤ value` is checked at the
//!   finitely many jump nodes.

use alloc::vec;
use alloc::vec::Vec;

use crate::endo::GridEndo;
use crate::grid::{GridError, GridMap};

/// Upper-semicontinuity certificate. `usc_per_component[c]` answers
/// `limsup_{x→x₀} f_c(x) ≤ f_c(x₀)` for all `x₀` in the box.
#[derive(Debug, Clone, PartialEq)]
pub struct UscReport {
    /// Whether the certified function is continuous on the whole box.
    pub continuous: bool,
    /// Componentwise monotonicity of the node data.
    pub monotone: bool,
    /// First offending axis-adjacent node pair when not monotone.
    pub monotone_witness: Option<(usize, usize)>,
    /// Per-component USC verdict.
    pub usc_per_component: Vec<bool>,
}

impl UscReport {
    pub fn is_usc(&self) -> bool {
        self.usc_per_component.iter().all(|&b| b)
    }
}

/// Certificate for an interpolated map: multilinear interpolants are
/// continuous, hence USC per component. Monotonicity of the node data is
/// reported alongside.
pub fn usc_report(f: &GridMap) -> UscReport {
    let witness = f.monotone_witness();
    UscReport {
        continuous: true,
        monotone: witness.is_none(),
        monotone_witness: witness,
        usc_per_component: vec![true; f.grid().dim()],
    }
}

/// Value at `x` of the step function induced by a 1D endomorphism: the
/// image coordinate of the node whose cell contains `x`, with the
/// upper-step convention at the nodes themselves.
pub fn step_eval(e: &GridEndo, x: f64) -> Result<f64, GridError> {
    let g = e.grid();
    if g.dim() != 1 {
        return Err(GridError::NotOneDimensional { dim: g.dim() });
    }
    let coords = g.axis_nodes(0);
    let n = coords.len();
    if !(x >= coords[0] && x <= coords[n - 1]) {
        return Err(GridError::PointOutsideBox { axis: 0, value: x });
    }
    let y = |node: usize| coords[e.image(node)];
    // Cell value: constant y(i) on the open interval (coords[i], coords[i+1]).
    let i = coords.partition_point(|&v| v <= x) - 1;
    if x == coords[i] {
        // At a node: the larger of the adjacent step values.
        let left = if i == 0 { y(0) } else { y(i - 1) };
        let right = if i == n - 1 { y(n - 2) } else { y(i) };
        return Ok(left.max(right));
    }
    Ok(y(i))
}

/// Certificate for the step function induced by a 1D endomorphism under
/// the upper-step convention. At each node the one-sided step values give
/// `limsup = max(left, right)`, which the convention makes equal to the
/// node value — the report computes both sides rather than assuming them.
pub fn usc_step_report(e: &GridEndo) -> Result<UscReport, GridError> {
    let g = e.grid();
    if g.dim() != 1 {
        return Err(GridError::NotOneDimensional { dim: g.dim() });
    }
    let coords = g.axis_nodes(0);
    let n = coords.len();
    let y = |node: usize| coords[e.image(node)];
    let mut usc = true;
    let mut jumps = 0usize;
    for (i, &coord) in coords.iter().enumerate() {
        let left = if i == 0 { y(0) } else { y(i - 1) };
        let right = if i == n - 1 { y(n - 2) } else { y(i) };
        if left != right {
            jumps += 1;
        }
        let limsup = left.max(right);
        let value = step_eval(e, coord)?;
        if limsup > value {
            usc = false;
        }
    }
    let witness = e.monotone_witness();
    Ok(UscReport {
        continuous: jumps == 0,
        monotone: witness.is_none(),
        monotone_witness: witness,
        usc_per_component: vec![usc],
    })
}

/// Composite trapezoidal approximation of `∫ |f|ᵖ` over a 1D grid's
/// interval. Always finite for stored (bounded) node data.
pub fn p_integral(f: &GridMap, p: f64) -> Result<f64, GridError> {
    let g = f.grid();
    if g.dim() != 1 {
        return Err(GridError::NotOneDimensional { dim: g.dim() });
    }
    if !p.is_finite() || p < 1.0 {
        return Err(GridError::BadIntegralExponent { p });
    }
    let coords = g.axis_nodes(0);
    let pow_p = |v: f64| libm::pow(v.abs(), p);
    let mut acc = 0.0f64;
    for i in 0..coords.len() - 1 {
        let h = coords[i + 1] - coords[i];
        acc += 0.5 * h * (pow_p(f.value(i)[0]) + pow_p(f.value(i + 1)[0]));
    }
    Ok(acc)
}
