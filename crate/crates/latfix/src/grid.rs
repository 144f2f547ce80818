//! Uniform grids over a box and interpolated self-maps.
//!
//! A [`BoxGrid`] subdivides each axis of a [`BoxLattice`] into a fixed
//! number of nodes; the node set is itself a finite lattice under the
//! product order (bottom = lower corner, top = upper corner). A
//! [`GridMap`] stores one image vector per node, in row-major node order
//! (last axis fastest), and evaluates anywhere in the box by componentwise
//! multilinear interpolation.
//!
//! Interpolation details that the rest of the crate leans on:
//!
//! * evaluation at a node returns the stored value bitwise — each axis
//!   weight degenerates to 0 or 1 and short-circuits;
//! * each 1D reduction step computes `v0 + t·(v1 − v0)` and clamps the
//!   result into `[min(v0,v1), max(v0,v1)]`. The clamp never moves an
//!   exactly-interpolated value (the real lerp lies in that interval); it
//!   only shaves off sub-ulp rounding spill. This makes evaluation of
//!   monotone node data exactly monotone in the argument, including across
//!   cell boundaries, and keeps every output inside the box with no
//!   separate projection step;
//! * cell location is a binary search over precomputed axis coordinates,
//!   so order decisions are exact float comparisons throughout.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::box_lattice::{BoxError, BoxLattice};

/// Hard cap on total node count (and, in [`crate::engine`], on enumeration
/// candidates). Requests above this are refused rather than attempted.
pub const NODE_BUDGET: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub enum GridError {
    Box(BoxError),
    ResolutionTooSmall { axis: usize, res: usize },
    ResolutionCount { expected: usize, got: usize },
    NodeBudget { requested: u128 },
    /// Adjacent node coordinates collided in floating point (box too thin).
    DegenerateAxis { axis: usize },
    ValueCount { expected: usize, got: usize },
    NotFiniteValue { node: usize, component: usize, value: f64 },
    ValueOutsideBox { node: usize, component: usize, value: f64 },
    PointDim { expected: usize, got: usize },
    PointOutsideBox { axis: usize, value: f64 },
    GridMismatch,
    /// Witness pair of axis-adjacent nodes with decreasing values.
    NotMonotone { node: usize, neighbor: usize },
    BadNodeIndex { node: usize, image: usize },
    NotOneDimensional { dim: usize },
    BadIntegralExponent { p: f64 },
}

impl fmt::Display for GridError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridError::Box(e) => e.fmt(f),
            GridError::ResolutionTooSmall { axis, res } => {
                write!(f, "axis {axis} has resolution {res}; at least 2 nodes per axis required")
            }
            GridError::ResolutionCount { expected, got } => {
                write!(f, "expected {expected} per-axis resolutions, got {got}")
            }
            GridError::NodeBudget { requested } => {
                write!(f, "grid would have {requested} nodes, above the {NODE_BUDGET} budget")
            }
            GridError::DegenerateAxis { axis } => {
                write!(f, "axis {axis} is too thin for its resolution: node coordinates collide")
            }
            GridError::ValueCount { expected, got } => {
                write!(f, "expected {expected} stored reals, got {got}")
            }
            GridError::NotFiniteValue { node, component, value } => {
                write!(f, "non-finite value {value} at node {node}, component {component}")
            }
            GridError::ValueOutsideBox { node, component, value } => {
                write!(f, "value {value} at node {node}, component {component} lies outside the box")
            }
            GridError::PointDim { expected, got } => {
                write!(f, "expected a point with {expected} components, got {got}")
            }
            GridError::PointOutsideBox { axis, value } => {
                write!(f, "coordinate {value} on axis {axis} lies outside the box")
            }
            GridError::GridMismatch => write!(f, "maps live on different grids"),
            GridError::NotMonotone { node, neighbor } => {
                write!(f, "values decrease from node {node} to adjacent node {neighbor}")
            }
            GridError::BadNodeIndex { node, image } => {
                write!(f, "node {node} maps to {image}, which is not a node index")
            }
            GridError::NotOneDimensional { dim } => {
                write!(f, "operation requires a 1D grid, got dimension {dim}")
            }
            GridError::BadIntegralExponent { p } => {
                write!(f, "integral exponent must satisfy p >= 1, got {p}")
            }
        }
    }
}

impl core::error::Error for GridError {}

impl From<BoxError> for GridError {
    fn from(e: BoxError) -> Self {
        GridError::Box(e)
    }
}

/// A uniform grid over a box: `res[a] ≥ 2` nodes on axis `a`, corner nodes
/// equal to the box bounds exactly.
#[derive(Clone, PartialEq)]
pub struct BoxGrid {
    bounds: BoxLattice,
    res: Vec<usize>,
    axes: Vec<Vec<f64>>,
    strides: Vec<usize>,
    nodes: usize,
}

impl fmt::Debug for BoxGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoxGrid {{ dim: {}, res: {:?} }}", self.dim(), self.res)
    }
}

impl BoxGrid {
    pub fn new(bounds: BoxLattice, res: Vec<usize>) -> Result<Self, GridError> {
        if res.len() != bounds.dim() {
            return Err(GridError::ResolutionCount { expected: bounds.dim(), got: res.len() });
        }
        let mut nodes: u128 = 1;
        for (axis, &r) in res.iter().enumerate() {
            if r < 2 {
                return Err(GridError::ResolutionTooSmall { axis, res: r });
            }
            // Saturate: beyond u128 the count is over any budget anyway.
            nodes = nodes.saturating_mul(r as u128);
        }
        if nodes > NODE_BUDGET as u128 {
            return Err(GridError::NodeBudget { requested: nodes });
        }
        let nodes = nodes as usize;
        let mut axes = Vec::with_capacity(res.len());
        for (axis, &r) in res.iter().enumerate() {
            let lo = bounds.lower()[axis];
            let up = bounds.upper()[axis];
            let mut coords = Vec::with_capacity(r);
            for t in 0..r {
                // Endpoint-exact linear blend: s=0 gives lo, s=1 gives up.
                let s = t as f64 / (r - 1) as f64;
                coords.push((1.0 - s) * lo + s * up);
            }
            if coords.windows(2).any(|w| w[0] >= w[1]) {
                return Err(GridError::DegenerateAxis { axis });
            }
            axes.push(coords);
        }
        let mut strides = vec![0usize; res.len()];
        let mut acc = 1usize;
        for a in (0..res.len()).rev() {
            strides[a] = acc;
            acc *= res[a];
        }
        Ok(BoxGrid { bounds, res, axes, strides, nodes })
    }

    /// `[0,1]ⁿ` with the same resolution on every axis.
    pub fn unit(dim: usize, res: usize) -> Result<Self, GridError> {
        BoxGrid::new(BoxLattice::unit(dim)?, vec![res; dim])
    }

    pub fn dim(&self) -> usize {
        self.res.len()
    }

    pub fn bounds(&self) -> &BoxLattice {
        &self.bounds
    }

    pub fn res(&self) -> &[usize] {
        &self.res
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn axis_nodes(&self, axis: usize) -> &[f64] {
        &self.axes[axis]
    }

    /// Row-major stride of `axis` (last axis has stride 1).
    pub fn stride(&self, axis: usize) -> usize {
        self.strides[axis]
    }

    /// Multi-index coordinate of `node` along `axis`.
    pub fn axis_index(&self, node: usize, axis: usize) -> usize {
        node / self.strides[axis] % self.res[axis]
    }

    pub fn flat_index(&self, multi: &[usize]) -> usize {
        multi.iter().zip(self.strides.iter()).map(|(&m, &s)| m * s).sum()
    }

    pub fn node_coord(&self, node: usize) -> Vec<f64> {
        (0..self.dim()).map(|a| self.axes[a][self.axis_index(node, a)]).collect()
    }

    /// Bottom of the node lattice (the lower corner).
    pub fn bottom_node(&self) -> usize {
        0
    }

    /// Top of the node lattice (the upper corner).
    pub fn top_node(&self) -> usize {
        self.nodes - 1
    }

    /// Product order on the node lattice.
    pub fn node_leq(&self, i: usize, j: usize) -> bool {
        (0..self.dim()).all(|a| self.axis_index(i, a) <= self.axis_index(j, a))
    }

    /// Join in the node lattice: componentwise max of multi-indices.
    pub fn node_join(&self, i: usize, j: usize) -> usize {
        (0..self.dim())
            .map(|a| self.axis_index(i, a).max(self.axis_index(j, a)) * self.strides[a])
            .sum()
    }

    /// Meet in the node lattice: componentwise min of multi-indices.
    pub fn node_meet(&self, i: usize, j: usize) -> usize {
        (0..self.dim())
            .map(|a| self.axis_index(i, a).min(self.axis_index(j, a)) * self.strides[a])
            .sum()
    }

    /// Locate `x` on `axis`: cell index `c` (so `x` lies in
    /// `[axes[c], axes[c+1]]`) plus interpolation weight `t ∈ [0,1]`.
    fn locate(&self, axis: usize, x: f64) -> Result<(usize, f64), GridError> {
        let col = &self.axes[axis];
        let n = col.len();
        if !(x >= col[0] && x <= col[n - 1]) {
            return Err(GridError::PointOutsideBox { axis, value: x });
        }
        // Largest node index with coordinate ≤ x.
        let c = col.partition_point(|&v| v <= x) - 1;
        if c == n - 1 {
            return Ok((n - 2, 1.0));
        }
        if x == col[c] {
            return Ok((c, 0.0));
        }
        Ok((c, (x - col[c]) / (col[c + 1] - col[c])))
    }
}

/// One linear-reduction step of multilinear interpolation. See the module
/// docs for why the endpoint clamp matters.
#[inline]
fn lerp(v0: f64, v1: f64, t: f64) -> f64 {
    if t == 0.0 {
        return v0;
    }
    if t == 1.0 {
        return v1;
    }
    let r = v0 + t * (v1 - v0);
    if v0 <= v1 {
        r.max(v0).min(v1)
    } else {
        r.max(v1).min(v0)
    }
}

/// A self-map of the box, stored as one image vector per grid node
/// (row-major node order) and interpolated multilinearly in between.
///
/// Every stored value lies inside the box; monotonicity is *not* an
/// invariant of the type (order-reversing data is representable so that
/// checks can reject it) — see [`GridMap::monotone_witness`].
#[derive(Clone, PartialEq)]
pub struct GridMap {
    grid: BoxGrid,
    values: Vec<f64>,
}

impl fmt::Debug for GridMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GridMap {{ dim: {}, res: {:?} }}", self.grid.dim(), self.grid.res())
    }
}

impl GridMap {
    /// `values` holds `node_count · dim` reals, node-major.
    pub fn new(grid: BoxGrid, values: Vec<f64>) -> Result<Self, GridError> {
        let d = grid.dim();
        let expected = grid.node_count() * d;
        if values.len() != expected {
            return Err(GridError::ValueCount { expected, got: values.len() });
        }
        for (i, &v) in values.iter().enumerate() {
            let (node, component) = (i / d, i % d);
            if !v.is_finite() {
                return Err(GridError::NotFiniteValue { node, component, value: v });
            }
            if v < grid.bounds().lower()[component] || v > grid.bounds().upper()[component] {
                return Err(GridError::ValueOutsideBox { node, component, value: v });
            }
        }
        Ok(GridMap { grid, values })
    }

    /// Sample `f` at every node.
    pub fn from_fn<F>(grid: BoxGrid, mut f: F) -> Result<Self, GridError>
    where
        F: FnMut(&[f64]) -> Vec<f64>,
    {
        let d = grid.dim();
        let mut values = Vec::with_capacity(grid.node_count() * d);
        for node in 0..grid.node_count() {
            let y = f(&grid.node_coord(node));
            if y.len() != d {
                return Err(GridError::ValueCount { expected: d, got: y.len() });
            }
            values.extend_from_slice(&y);
        }
        GridMap::new(grid, values)
    }

    pub fn constant(grid: BoxGrid, c: &[f64]) -> Result<Self, GridError> {
        if c.len() != grid.dim() {
            return Err(GridError::PointDim { expected: grid.dim(), got: c.len() });
        }
        let mut values = Vec::with_capacity(grid.node_count() * grid.dim());
        for _ in 0..grid.node_count() {
            values.extend_from_slice(c);
        }
        GridMap::new(grid, values)
    }

    /// The constant map onto the lower corner.
    pub fn bottom(grid: BoxGrid) -> Self {
        let c = grid.bounds().lower().to_vec();
        GridMap::constant(grid, &c).expect("corner is in the box")
    }

    /// The constant map onto the upper corner.
    pub fn top(grid: BoxGrid) -> Self {
        let c = grid.bounds().upper().to_vec();
        GridMap::constant(grid, &c).expect("corner is in the box")
    }

    /// Node values equal to the node coordinates.
    pub fn identity(grid: BoxGrid) -> Self {
        let mut values = Vec::with_capacity(grid.node_count() * grid.dim());
        for node in 0..grid.node_count() {
            values.extend_from_slice(&grid.node_coord(node));
        }
        GridMap::new(grid, values).expect("node coordinates are in the box")
    }

    pub fn grid(&self) -> &BoxGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, node: usize) -> &[f64] {
        let d = self.grid.dim();
        &self.values[node * d..(node + 1) * d]
    }

    /// Multilinear interpolation of the node data at `x`.
    pub fn eval(&self, x: &[f64]) -> Result<Vec<f64>, GridError> {
        let d = self.grid.dim();
        if x.len() != d {
            return Err(GridError::PointDim { expected: d, got: x.len() });
        }
        let mut cells = Vec::with_capacity(d);
        for (axis, &xi) in x.iter().enumerate() {
            cells.push(self.grid.locate(axis, xi)?);
        }
        let corners = 1usize << d;
        let mut out = Vec::with_capacity(d);
        let mut buf = vec![0.0f64; corners];
        for component in 0..d {
            for (mask, slot) in buf.iter_mut().enumerate() {
                let mut node = 0usize;
                for (axis, &(c, _)) in cells.iter().enumerate() {
                    node += (c + ((mask >> axis) & 1)) * self.grid.strides[axis];
                }
                *slot = self.values[node * d + component];
            }
            // Fold axis 0 first (mask bit 0 varies fastest), then axis 1, …
            let mut len = corners;
            for &(_, t) in &cells {
                len /= 2;
                for i in 0..len {
                    buf[i] = lerp(buf[2 * i], buf[2 * i + 1], t);
                }
            }
            out.push(buf[0]);
        }
        Ok(out)
    }

    /// `self ∘ inner`: node `n ↦ eval(self, inner(n))`.
    pub fn compose(&self, inner: &GridMap) -> Result<GridMap, GridError> {
        if self.grid != inner.grid {
            return Err(GridError::GridMismatch);
        }
        let mut values = Vec::with_capacity(self.values.len());
        for node in 0..self.grid.node_count() {
            values.extend_from_slice(&self.eval(inner.value(node))?);
        }
        GridMap::new(self.grid.clone(), values)
    }

    /// `k`-th iterate; `iterate(0)` is the identity samples.
    pub fn iterate(&self, k: usize) -> Result<GridMap, GridError> {
        if k == 0 {
            return Ok(GridMap::identity(self.grid.clone()));
        }
        let mut power = self.clone();
        for _ in 1..k {
            power = self.compose(&power)?;
        }
        Ok(power)
    }

    /// Pointwise order: `self(n) ⪯ other(n)` at every node.
    pub fn leq(&self, other: &GridMap) -> Result<bool, GridError> {
        if self.grid != other.grid {
            return Err(GridError::GridMismatch);
        }
        Ok(self.values.iter().zip(other.values.iter()).all(|(a, b)| a <= b))
    }

    /// `None` if values are componentwise nondecreasing along every axis
    /// direction (equivalent to product-order monotonicity on the node
    /// lattice); otherwise the first offending axis-adjacent node pair.
    pub fn monotone_witness(&self) -> Option<(usize, usize)> {
        let d = self.grid.dim();
        for node in 0..self.grid.node_count() {
            for axis in 0..d {
                if self.grid.axis_index(node, axis) + 1 == self.grid.res[axis] {
                    continue;
                }
                let neighbor = node + self.grid.strides[axis];
                let a = self.value(node);
                let b = self.value(neighbor);
                if a.iter().zip(b.iter()).any(|(x, y)| x > y) {
                    return Some((node, neighbor));
                }
            }
        }
        None
    }

    pub fn is_monotone(&self) -> bool {
        self.monotone_witness().is_none()
    }

    /// `max_n ‖self(n) − other(n)‖∞` over nodes.
    pub fn sup_distance(&self, other: &GridMap) -> Result<f64, GridError> {
        if self.grid != other.grid {
            return Err(GridError::GridMismatch);
        }
        Ok(self
            .values
            .iter()
            .zip(other.values.iter())
            .fold(0.0f64, |acc, (a, b)| acc.max((a - b).abs())))
    }
}

/// Nodewise componentwise max of the family; the empty family yields the
/// constant-bottom map. This is the least upper bound in the pointwise
/// order: any `h` above every member is above the result.
pub fn pointwise_sup(grid: &BoxGrid, family: &[GridMap]) -> Result<GridMap, GridError> {
    let mut acc = GridMap::bottom(grid.clone());
    for f in family {
        if f.grid != *grid {
            return Err(GridError::GridMismatch);
        }
        for (a, b) in acc.values.iter_mut().zip(f.values.iter()) {
            *a = a.max(*b);
        }
    }
    Ok(acc)
}

/// Nodewise componentwise min; the empty family yields the constant-top map.
pub fn pointwise_inf(grid: &BoxGrid, family: &[GridMap]) -> Result<GridMap, GridError> {
    let mut acc = GridMap::top(grid.clone());
    for f in family {
        if f.grid != *grid {
            return Err(GridError::GridMismatch);
        }
        for (a, b) in acc.values.iter_mut().zip(f.values.iter()) {
            *a = a.min(*b);
        }
    }
    Ok(acc)
}

/// Largest componentwise excess of `f∘g` over `g∘f` at the nodes. Negative
/// or zero means `f∘g ⊴ g∘f` holds exactly on the node data.
pub fn subcommute_defect(f: &GridMap, g: &GridMap) -> Result<f64, GridError> {
    let fg = f.compose(g)?;
    let gf = g.compose(f)?;
    Ok(fg
        .values
        .iter()
        .zip(gf.values.iter())
        .fold(f64::NEG_INFINITY, |acc, (a, b)| acc.max(a - b)))
}

/// Does `f` subcommute with `g` up to `tol`: `f∘g ⪯ g∘f + tol`
/// componentwise at every node? `tol` absorbs interpolation error; use 0
/// for exact node data.
pub fn check_subcommutes(f: &GridMap, g: &GridMap, tol: f64) -> Result<bool, GridError> {
    Ok(subcommute_defect(f, g)? <= tol)
}
