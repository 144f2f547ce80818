//! Extremal order-preserving solutions of λ₁f + λ₂f² + ⋯ + λₘfᵐ = F.
//!
//! The equation is solved on a box lattice by rewriting it as a fixed-point
//! problem for the operator
//!
//! ```text
//! Tf = α₁f + α₂f² + ⋯ + αₘfᵐ + αG,   α = λ := Σλₖ,  α₁ = 1−λ₁,  αₖ = −λₖ (k ≥ 2),
//! G = (1/λ)F,
//! ```
//!
//! whose fixed points are exactly the solutions (pointwise, `Tf − f =
//! F − Σλₖfᵏ` up to the sign, so the fixed-point defect *is* the equation
//! residual). Under the existence regime — λ > 0, λ₁ ≤ 1, λₖ ≤ 0 for
//! k ≥ 2 — every αₖ and α is nonnegative and they sum to one, making `T`
//! an order-preserving self-map of the monotone self-maps of the box.
//! Tarski's theorem then yields a minimal solution `f_*` and a maximal
//! one `f^*`; we compute them by Kleene iteration from the constant
//! bottom/top maps and *verify* them by residual, never by appeal to the
//! theorem alone.
//!
//! Two floating-point guards run inside the iteration, both expected to
//! stay at zero (the interpolation layer keeps monotone data monotone and
//! iterates ordered): a join-guard that replaces `f_{i+1}` by
//! `f_{i+1} ∨ f_i` so the ascent is ⊴-monotone by construction, and a
//! renormalization pass that repairs sub-1e-12 monotonicity drift by a
//! running componentwise max along each axis. Adjustments beyond 1e-12
//! abort the solve — that would mean real numerical trouble, not noise.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use crate::grid::{GridError, GridMap};

/// Drift threshold for the two floating-point guards: anything this small
/// is absorbed (and reported), anything larger aborts.
pub const GUARD_TOL: f64 = 1e-12;

/// Tolerance on the coefficient identity Σαₖ + α = 1.
pub const ALPHA_IDENTITY_TOL: f64 = 1e-12;

// ---------------------------------------------------------------------------
// Coefficients and regimes
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub enum CoefficientsError {
    Empty,
    NotFinite { index: usize, value: f64 },
}

impl fmt::Display for CoefficientsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientsError::Empty => write!(f, "at least one coefficient required"),
            CoefficientsError::NotFinite { index, value } => {
                write!(f, "coefficient λ{index} = {value} is not finite")
            }
        }
    }
}

impl core::error::Error for CoefficientsError {}

/// The left-hand-side coefficients λ₁…λₘ of the equation, with their sum
/// λ cached.
#[derive(Debug, Clone, PartialEq)]
pub struct Coefficients {
    lambdas: Vec<f64>,
    lambda_sum: f64,
}

impl Coefficients {
    pub fn new(lambdas: Vec<f64>) -> Result<Self, CoefficientsError> {
        if lambdas.is_empty() {
            return Err(CoefficientsError::Empty);
        }
        for (i, &l) in lambdas.iter().enumerate() {
            if !l.is_finite() {
                return Err(CoefficientsError::NotFinite { index: i + 1, value: l });
            }
        }
        let lambda_sum = lambdas.iter().sum();
        Ok(Coefficients { lambdas, lambda_sum })
    }

    /// Degree m of the equation.
    pub fn m(&self) -> usize {
        self.lambdas.len()
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    /// λ = Σλₖ.
    pub fn lambda(&self) -> f64 {
        self.lambda_sum
    }

    /// Index of the last nonzero coefficient (1-based); 0 if all vanish.
    /// Iterate chains stop here — zero terms contribute nothing.
    pub fn effective_degree(&self) -> usize {
        self.lambdas.iter().rposition(|&l| l != 0.0).map_or(0, |i| i + 1)
    }
}

/// Why a coefficient vector falls outside the existence regime
/// (λ > 0, λ₁ ≤ 1, λₖ ≤ 0 for k ≥ 2). Checked in that order.
#[derive(Debug, Clone, PartialEq)]
pub enum RegimeViolation {
    SumNotPositive { lambda: f64 },
    FirstAboveOne { lambda1: f64 },
    TailPositive { index: usize, lambda: f64 },
}

impl fmt::Display for RegimeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegimeViolation::SumNotPositive { lambda } => {
                write!(f, "coefficient sum λ = {lambda} must be positive")
            }
            RegimeViolation::FirstAboveOne { lambda1 } => {
                write!(f, "leading coefficient λ1 = {lambda1} must not exceed 1")
            }
            RegimeViolation::TailPositive { index, lambda } => {
                write!(f, "coefficient λ{index} = {lambda} must not be positive")
            }
        }
    }
}

impl core::error::Error for RegimeViolation {}

/// Why a coefficient vector falls outside the uniqueness regime
/// (λ₁ > 0, λₖ ≥ 0 for k ≥ 2).
#[derive(Debug, Clone, PartialEq)]
pub enum UniquenessViolation {
    FirstNotPositive { lambda1: f64 },
    TailNegative { index: usize, lambda: f64 },
}

impl fmt::Display for UniquenessViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UniquenessViolation::FirstNotPositive { lambda1 } => {
                write!(f, "leading coefficient λ1 = {lambda1} must be positive")
            }
            UniquenessViolation::TailNegative { index, lambda } => {
                write!(f, "coefficient λ{index} = {lambda} must not be negative")
            }
        }
    }
}

impl core::error::Error for UniquenessViolation {}

/// The derived operator coefficients: α = λ, α₁ = 1 − λ₁, αₖ = −λₖ.
/// In the existence regime all are nonnegative and Σαₖ + α = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaCoefficients {
    alpha: f64,
    alphas: Vec<f64>,
}

impl AlphaCoefficients {
    /// α, the weight on G.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// α₁…αₘ, the weights on f, f², …, fᵐ.
    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    /// Σαₖ + α − 1: zero in exact arithmetic, tiny rounding residue here.
    pub fn identity_defect(&self) -> f64 {
        self.alphas.iter().sum::<f64>() + self.alpha - 1.0
    }

    /// Σαₖ = 1 − λ: nominal geometric contraction factor per sweep.
    /// Diagnostics only — correctness rests on the residual check.
    pub fn contraction_hint(&self) -> f64 {
        self.alphas.iter().sum()
    }
}

/// Checks the existence regime and derives the operator coefficients.
/// Violations are reported in a fixed order: sum, leading, tail (ascending).
pub fn validate_coefficients(c: &Coefficients) -> Result<AlphaCoefficients, RegimeViolation> {
    let lambda: f64 = c.lambdas.iter().sum();
    debug_assert_eq!(lambda, c.lambda_sum);
    if lambda <= 0.0 {
        return Err(RegimeViolation::SumNotPositive { lambda });
    }
    if c.lambdas[0] > 1.0 {
        return Err(RegimeViolation::FirstAboveOne { lambda1: c.lambdas[0] });
    }
    for (i, &l) in c.lambdas.iter().enumerate().skip(1) {
        if l > 0.0 {
            return Err(RegimeViolation::TailPositive { index: i + 1, lambda: l });
        }
    }
    let mut alphas = Vec::with_capacity(c.lambdas.len());
    alphas.push(1.0 - c.lambdas[0]);
    for &l in &c.lambdas[1..] {
        alphas.push(-l);
    }
    let a = AlphaCoefficients { alpha: lambda, alphas };
    debug_assert!(a.identity_defect().abs() <= ALPHA_IDENTITY_TOL);
    Ok(a)
}

fn uniqueness_violation(c: &Coefficients) -> Option<UniquenessViolation> {
    if c.lambdas[0] <= 0.0 {
        return Some(UniquenessViolation::FirstNotPositive { lambda1: c.lambdas[0] });
    }
    for (i, &l) in c.lambdas.iter().enumerate().skip(1) {
        if l < 0.0 {
            return Some(UniquenessViolation::TailNegative { index: i + 1, lambda: l });
        }
    }
    None
}

/// Which of the two hypothesis regimes a coefficient vector satisfies.
/// They overlap exactly when 0 < λ₁ ≤ 1 and every tail coefficient is
/// zero — otherwise a vector solvable by this module's iteration is not
/// covered by the uniqueness clauses, and vice versa.
#[derive(Debug, Clone, PartialEq)]
pub struct RegimeReport {
    pub existence: bool,
    pub existence_violation: Option<RegimeViolation>,
    pub uniqueness: bool,
    pub uniqueness_violation: Option<UniquenessViolation>,
    /// Both regimes at once (forces λ₂ = ⋯ = λₘ = 0).
    pub both: bool,
}

pub fn check_uniqueness_conditions(c: &Coefficients) -> RegimeReport {
    let existence_violation = validate_coefficients(c).err();
    let uniqueness_violation = uniqueness_violation(c);
    let existence = existence_violation.is_none();
    let uniqueness = uniqueness_violation.is_none();
    RegimeReport {
        existence,
        existence_violation,
        uniqueness,
        uniqueness_violation,
        both: existence && uniqueness,
    }
}

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Which extremal solution an iteration was after.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveSide {
    /// Ascent from the constant bottom map toward the minimal solution.
    Min,
    /// Descent from the constant top map toward the maximal solution.
    Max,
}

impl fmt::Display for SolveSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveSide::Min => write!(f, "minimal"),
            SolveSide::Max => write!(f, "maximal"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SolverError {
    Grid(GridError),
    Coefficients(CoefficientsError),
    Regime(RegimeViolation),
    UniquenessRegime(UniquenessViolation),
    /// (1/λ)·sup F (or, on boxes with negative coordinates, (1/λ)·inf F)
    /// leaves the box: the scaled target G is not a self-map.
    RangeEscape { component: usize, value: f64, lower: f64, upper: f64 },
    NotMonotone { role: &'static str, witness: (usize, usize) },
    /// The Kleene sequence moved against its direction by more than
    /// [`GUARD_TOL`].
    AscentViolated { side: SolveSide, iteration: usize, dip: f64 },
    /// An iterate drifted non-monotone by more than [`GUARD_TOL`].
    MonotoneDrift { side: SolveSide, iteration: usize, drift: f64 },
    /// Iteration budget exhausted; the best iterate and its diagnostics
    /// are returned for inspection.
    MaxIterExceeded { best: Box<SideSolution> },
    /// A candidate handed to `compare_solutions` does not solve the
    /// equation to the requested tolerance.
    NotASolution { role: &'static str, residual: f64, tol: f64 },
}

impl fmt::Display for SolverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolverError::Grid(e) => e.fmt(f),
            SolverError::Coefficients(e) => e.fmt(f),
            SolverError::Regime(v) => write!(f, "existence regime violated: {v}"),
            SolverError::UniquenessRegime(v) => write!(f, "uniqueness regime violated: {v}"),
            SolverError::RangeEscape { component, value, lower, upper } => write!(
                f,
                "scaled target escapes the box on component {component}: {value} outside [{lower}, {upper}]"
            ),
            SolverError::NotMonotone { role, witness } => write!(
                f,
                "{role} is not order-preserving: values decrease from node {} to node {}",
                witness.0, witness.1
            ),
            SolverError::AscentViolated { side, iteration, dip } => write!(
                f,
                "{side} iteration moved against its direction by {dip} at sweep {iteration}"
            ),
            SolverError::MonotoneDrift { side, iteration, drift } => write!(
                f,
                "{side} iterate lost monotonicity by {drift} at sweep {iteration}"
            ),
            SolverError::MaxIterExceeded { best } => write!(
                f,
                "no convergence within {} sweeps ({} side): residual {}, last change {}",
                best.report.iterations, best.report.side, best.report.residual, best.report.last_change
            ),
            SolverError::NotASolution { role, residual, tol } => write!(
                f,
                "{role} candidate has residual {residual}, above the solution tolerance {tol}"
            ),
        }
    }
}

impl core::error::Error for SolverError {}

impl From<GridError> for SolverError {
    fn from(e: GridError) -> Self {
        SolverError::Grid(e)
    }
}

impl From<CoefficientsError> for SolverError {
    fn from(e: CoefficientsError) -> Self {
        SolverError::Coefficients(e)
    }
}

impl From<RegimeViolation> for SolverError {
    fn from(e: RegimeViolation) -> Self {
        SolverError::Regime(e)
    }
}

// ---------------------------------------------------------------------------
// The operator and the residual
// ---------------------------------------------------------------------------

/// `[f¹, f², …, f^deg]` computed by the one composition chain
/// `fᵏ = f ∘ fᵏ⁻¹` per sweep.
fn power_chain(f: &GridMap, deg: usize) -> Result<Vec<GridMap>, GridError> {
    let mut chain: Vec<GridMap> = Vec::with_capacity(deg);
    for k in 1..=deg {
        let next = if k == 1 { f.clone() } else { f.compose(&chain[k - 2])? };
        chain.push(next);
    }
    Ok(chain)
}

/// Node values of Σₖ λₖ·fᵏ, node-major, zero coefficients skipped.
/// This is the exact arithmetic path shared by the residual and by
/// manufactured-solution tests, so both see bitwise-identical sums.
pub fn equation_lhs(f: &GridMap, c: &Coefficients) -> Result<Vec<f64>, SolverError> {
    let deg = c.effective_degree();
    let chain = power_chain(f, deg)?;
    let n = f.values().len();
    let mut acc = alloc::vec![0.0f64; n];
    for (k, power) in chain.iter().enumerate() {
        let l = c.lambdas[k];
        if l == 0.0 {
            continue;
        }
        for (a, &v) in acc.iter_mut().zip(power.values().iter()) {
            *a += l * v;
        }
    }
    Ok(acc)
}

/// Per-component sup over nodes of |Σλₖfᵏ − F|.
pub fn residual_components(f: &GridMap, target: &GridMap, c: &Coefficients) -> Result<Vec<f64>, SolverError> {
    if f.grid() != target.grid() {
        return Err(GridError::GridMismatch.into());
    }
    let lhs = equation_lhs(f, c)?;
    let d = f.grid().dim();
    let mut out = alloc::vec![0.0f64; d];
    for (i, (&a, &b)) in lhs.iter().zip(target.values().iter()).enumerate() {
        let r = (a - b).abs();
        let comp = &mut out[i % d];
        if r > *comp {
            *comp = r;
        }
    }
    Ok(out)
}

/// Sup-norm equation defect: max over nodes and components of |Σλₖfᵏ − F|.
/// Zero exactly when f solves the equation exactly at every node.
pub fn residual(f: &GridMap, target: &GridMap, c: &Coefficients) -> Result<f64, SolverError> {
    Ok(residual_components(f, target, c)?.iter().fold(0.0f64, |m, &r| m.max(r)))
}

/// The scaled target G = (1/λ)F, after verifying the range hypothesis:
/// (1/λ)·sup F must stay inside the box (and, when the box reaches below
/// zero, (1/λ)·inf F must too — scaling by 1/λ ≥ 1 pushes values away
/// from zero on both sides).
pub fn build_g(target: &GridMap, c: &Coefficients) -> Result<GridMap, SolverError> {
    let a = validate_coefficients(c)?;
    let lambda = a.alpha();
    if let Some(witness) = target.monotone_witness() {
        return Err(SolverError::NotMonotone { role: "target map", witness });
    }
    let grid = target.grid().clone();
    let d = grid.dim();
    let (lower, upper) = (grid.bounds().lower().to_vec(), grid.bounds().upper().to_vec());
    for component in 0..d {
        let mut sup = f64::NEG_INFINITY;
        let mut inf = f64::INFINITY;
        for node in 0..grid.node_count() {
            let v = target.value(node)[component];
            sup = sup.max(v);
            inf = inf.min(v);
        }
        for extreme in [sup, inf] {
            let scaled = extreme / lambda;
            if scaled < lower[component] || scaled > upper[component] {
                return Err(SolverError::RangeEscape {
                    component,
                    value: scaled,
                    lower: lower[component],
                    upper: upper[component],
                });
            }
        }
    }
    let values = target.values().iter().map(|&v| v / lambda).collect();
    Ok(GridMap::new(grid, values)?)
}

/// Core of the operator: Σαₖfᵏ(n) + αG(n) per node, clamped into the box
/// (the exact value is a convex combination of box points; the clamp only
/// removes final-rounding spill and never moves an exactly-representable
/// in-box result). Monotonicity of the inputs is the caller's business.
fn t_step(f: &GridMap, a: &AlphaCoefficients, g: &GridMap) -> Result<Vec<f64>, GridError> {
    let deg = a
        .alphas
        .iter()
        .rposition(|&w| w != 0.0)
        .map_or(0, |i| i + 1);
    let chain = power_chain(f, deg)?;
    let grid = f.grid();
    let d = grid.dim();
    let mut acc = alloc::vec![0.0f64; f.values().len()];
    for (k, power) in chain.iter().enumerate() {
        let w = a.alphas[k];
        if w == 0.0 {
            continue;
        }
        for (s, &v) in acc.iter_mut().zip(power.values().iter()) {
            *s += w * v;
        }
    }
    let (lower, upper) = (grid.bounds().lower(), grid.bounds().upper());
    for (i, (s, &gv)) in acc.iter_mut().zip(g.values().iter()).enumerate() {
        *s += a.alpha * gv;
        let c = i % d;
        *s = s.max(lower[c]).min(upper[c]);
    }
    Ok(acc)
}

/// One application of the operator T to a monotone map. The result is a
/// monotone self-map of the box, and T preserves the pointwise order.
pub fn apply_t(f: &GridMap, a: &AlphaCoefficients, g: &GridMap) -> Result<GridMap, SolverError> {
    if f.grid() != g.grid() {
        return Err(GridError::GridMismatch.into());
    }
    if let Some(witness) = f.monotone_witness() {
        return Err(SolverError::NotMonotone { role: "operand", witness });
    }
    if let Some(witness) = g.monotone_witness() {
        return Err(SolverError::NotMonotone { role: "scaled target", witness });
    }
    let values = t_step(f, a, g)?;
    Ok(GridMap::new(f.grid().clone(), values)?)
}

// ---------------------------------------------------------------------------
// The Kleene iteration
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Stop when the sup-norm change between sweeps falls below this…
    pub tol: f64,
    /// …and the equation residual falls below this.
    pub tol_res: f64,
    pub max_iter: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { tol: 1e-9, tol_res: 1e-6, max_iter: 10_000 }
    }
}

/// Per-side iteration diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct SideReport {
    pub side: SolveSide,
    pub iterations: usize,
    /// Final equation residual (sup-norm over nodes).
    pub residual: f64,
    /// Sup-norm change of the last sweep.
    pub last_change: f64,
    /// Largest movement against the iteration direction absorbed by the
    /// join/meet guard; expected to stay exactly 0.
    pub guard_adjust: f64,
    /// Largest monotonicity repair applied to an iterate; expected 0.
    pub renorm_adjust: f64,
    pub converged: bool,
}

/// One extremal solution plus how it was reached.
#[derive(Debug, Clone, PartialEq)]
pub struct SideSolution {
    pub map: GridMap,
    pub report: SideReport,
}

/// Repairs sub-[`GUARD_TOL`] monotonicity drift by a running componentwise
/// max along every axis (in ascending node order, so each pass sees
/// already-repaired predecessors). Returns the largest lift applied.
fn renormalize_monotone(grid: &crate::grid::BoxGrid, values: &mut [f64]) -> f64 {
    let d = grid.dim();
    let mut adjust = 0.0f64;
    for axis in 0..grid.dim() {
        let stride = grid.stride(axis);
        for node in 0..grid.node_count() {
            if grid.axis_index(node, axis) == 0 {
                continue;
            }
            let prev = node - stride;
            for c in 0..d {
                let lo = values[prev * d + c];
                let v = &mut values[node * d + c];
                if *v < lo {
                    adjust = adjust.max(lo - *v);
                    *v = lo;
                }
            }
        }
    }
    adjust
}

fn solve_side(
    target: &GridMap,
    c: &Coefficients,
    opts: &SolveOptions,
    side: SolveSide,
) -> Result<SideSolution, SolverError> {
    let a = validate_coefficients(c)?;
    let g = build_g(target, c)?;
    let grid = target.grid().clone();
    let mut cur = match side {
        SolveSide::Min => GridMap::bottom(grid.clone()),
        SolveSide::Max => GridMap::top(grid.clone()),
    };
    let mut guard_adjust = 0.0f64;
    let mut renorm_adjust = 0.0f64;
    let mut report = SideReport {
        side,
        iterations: 0,
        residual: residual(&cur, target, c)?,
        last_change: f64::INFINITY,
        guard_adjust,
        renorm_adjust,
        converged: false,
    };
    for sweep in 1..=opts.max_iter {
        let mut next = t_step(&cur, &a, &g)?;

        // Guard 1: iterates must stay monotone (they do, up to final
        // rounding; repair anything at noise scale, refuse anything real).
        let drift = renormalize_monotone(&grid, &mut next);
        if drift > GUARD_TOL {
            return Err(SolverError::MonotoneDrift { side, iteration: sweep, drift });
        }
        renorm_adjust = renorm_adjust.max(drift);

        // Guard 2: the sweep must not move against the iteration
        // direction; joining (resp. meeting) with the previous iterate
        // makes the ascent/descent exact by construction.
        let mut dip = 0.0f64;
        for (n, &old) in next.iter_mut().zip(cur.values().iter()) {
            let against = match side {
                SolveSide::Min => old - *n,
                SolveSide::Max => *n - old,
            };
            if against > 0.0 {
                dip = dip.max(against);
                *n = old;
            }
        }
        if dip > GUARD_TOL {
            return Err(SolverError::AscentViolated { side, iteration: sweep, dip });
        }
        guard_adjust = guard_adjust.max(dip);

        let next = GridMap::new(grid.clone(), next)?;
        let change = cur.sup_distance(&next)?;
        cur = next;
        report = SideReport {
            side,
            iterations: sweep,
            residual: residual(&cur, target, c)?,
            last_change: change,
            guard_adjust,
            renorm_adjust,
            converged: false,
        };
        if change < opts.tol && report.residual <= opts.tol_res {
            report.converged = true;
            return Ok(SideSolution { map: cur, report });
        }
    }
    Err(SolverError::MaxIterExceeded { best: Box::new(SideSolution { map: cur, report }) })
}

/// Kleene ascent from the constant bottom map toward the minimal solution.
pub fn solve_min(target: &GridMap, c: &Coefficients, opts: &SolveOptions) -> Result<SideSolution, SolverError> {
    solve_side(target, c, opts, SolveSide::Min)
}

/// Kleene descent from the constant top map toward the maximal solution.
pub fn solve_max(target: &GridMap, c: &Coefficients, opts: &SolveOptions) -> Result<SideSolution, SolverError> {
    solve_side(target, c, opts, SolveSide::Max)
}

/// Both extremal solutions and their relationship.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub f_min: GridMap,
    pub f_max: GridMap,
    pub min_report: SideReport,
    pub max_report: SideReport,
    pub monotone_min: bool,
    pub monotone_max: bool,
    /// f_* ⊴ f^* at every node.
    pub comparable: bool,
    /// Sup distance between the two solutions; the equation's solution is
    /// unique on this grid (to tolerance) iff this is tiny. No uniqueness
    /// is claimed either way.
    pub gap: f64,
    pub tol: f64,
    pub tol_res: f64,
    /// Nominal per-sweep contraction factor Σαₖ = 1 − λ (diagnostics).
    pub contraction_hint: f64,
    /// Seconds spent in both iterations, when timing is available.
    pub wall_time: Option<f64>,
}

/// Runs both sides and cross-checks them.
pub fn solve(target: &GridMap, c: &Coefficients, opts: &SolveOptions) -> Result<SolveReport, SolverError> {
    let a = validate_coefficients(c)?;
    #[cfg(feature = "std")]
    let started = std::time::Instant::now();
    let min = solve_min(target, c, opts)?;
    let max = solve_max(target, c, opts)?;
    #[cfg(feature = "std")]
    let wall_time = Some(started.elapsed().as_secs_f64());
    #[cfg(not(feature = "std"))]
    let wall_time: Option<f64> = None;
    let comparable = min.map.leq(&max.map)?;
    let gap = min.map.sup_distance(&max.map)?;
    Ok(SolveReport {
        monotone_min: min.map.is_monotone(),
        monotone_max: max.map.is_monotone(),
        comparable,
        gap,
        tol: opts.tol,
        tol_res: opts.tol_res,
        contraction_hint: a.contraction_hint(),
        wall_time,
        min_report: min.report,
        max_report: max.report,
        f_min: min.map,
        f_max: max.map,
    })
}

// ---------------------------------------------------------------------------
// Uniqueness-clause comparison
// ---------------------------------------------------------------------------

/// Which uniqueness clause applied to a pair of verified solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UniquenessClause {
    /// The solutions are pointwise comparable.
    Comparable,
    /// One subcommutes with the other and is strictly below it somewhere.
    Subcommuting,
    /// The box is a chain (1D) and the solutions commute.
    ChainCommuting,
}

impl fmt::Display for UniquenessClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UniquenessClause::Comparable => write!(f, "comparable"),
            UniquenessClause::Subcommuting => write!(f, "subcommuting with a strict point"),
            UniquenessClause::ChainCommuting => write!(f, "commuting on a chain"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CompareVerdict {
    /// A clause applies and the solutions agree to tolerance, as the
    /// uniqueness theorem demands.
    Equal { clause: UniquenessClause, distance: f64 },
    /// A clause applies but the solutions differ beyond tolerance — a
    /// finding to investigate, not a routine outcome.
    ClauseViolated { clause: UniquenessClause, distance: f64 },
    /// No clause applies (incomparable, non-subcommuting, and the box is
    /// not a chain): the theorem is silent on such pairs.
    TheoremSilent { distance: f64 },
}

/// Is f(n) ≺ g(n) (componentwise ≤ with at least one strict) at some node?
fn strictly_below_somewhere(f: &GridMap, g: &GridMap) -> bool {
    let d = f.grid().dim();
    let (fv, gv) = (f.values(), g.values());
    for node in 0..f.grid().node_count() {
        let mut leq = true;
        let mut strict = false;
        for c in 0..d {
            let (a, b) = (fv[node * d + c], gv[node * d + c]);
            if a > b {
                leq = false;
                break;
            }
            if a < b {
                strict = true;
            }
        }
        if leq && strict {
            return true;
        }
    }
    false
}

/// Compares two residual-verified solutions against the uniqueness
/// clauses. `tol_solution` gates what counts as a solution;
/// `tol_equal` is both the comparison slack for composed maps (where
/// interpolation error enters) and the agreement threshold.
pub fn compare_solutions(
    f: &GridMap,
    g: &GridMap,
    target: &GridMap,
    c: &Coefficients,
    tol_solution: f64,
    tol_equal: f64,
) -> Result<CompareVerdict, SolverError> {
    if f.grid() != g.grid() || f.grid() != target.grid() {
        return Err(GridError::GridMismatch.into());
    }
    if let Some(v) = uniqueness_violation(c) {
        return Err(SolverError::UniquenessRegime(v));
    }
    for (role, cand) in [("first", f), ("second", g)] {
        let r = residual(cand, target, c)?;
        if r > tol_solution {
            return Err(SolverError::NotASolution { role, residual: r, tol: tol_solution });
        }
    }
    let distance = f.sup_distance(g)?;
    let clause = if f.leq(g)? || g.leq(f)? {
        Some(UniquenessClause::Comparable)
    } else if (crate::grid::check_subcommutes(f, g, tol_equal)? && strictly_below_somewhere(f, g))
        || (crate::grid::check_subcommutes(g, f, tol_equal)? && strictly_below_somewhere(g, f))
    {
        Some(UniquenessClause::Subcommuting)
    } else if f.grid().dim() == 1
        && crate::grid::check_subcommutes(f, g, tol_equal)?
        && crate::grid::check_subcommutes(g, f, tol_equal)?
    {
        Some(UniquenessClause::ChainCommuting)
    } else {
        None
    };
    Ok(match clause {
        Some(clause) if distance <= tol_equal => CompareVerdict::Equal { clause, distance },
        Some(clause) => CompareVerdict::ClauseViolated { clause, distance },
        None => CompareVerdict::TheoremSilent { distance },
    })
}
