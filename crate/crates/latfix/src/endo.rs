//! Exact endomorphisms of a grid's node lattice.
//!
//! A [`GridEndo`] maps nodes to nodes by index, so composition, iteration,
//! order comparison, and the subcommutation test are all exact integer
//! work — no interpolation, no rounding. These are the discrete
//! counterparts of [`GridMap`]s and convert losslessly via
//! [`GridEndo::to_grid_map`] (node ↦ coordinates of its image node).

use alloc::vec::Vec;
use core::fmt;

use crate::grid::{BoxGrid, GridError, GridMap};

/// A self-map of the node lattice: `image[n]` is the node index `n` maps to.
#[derive(Clone, PartialEq)]
pub struct GridEndo {
    grid: BoxGrid,
    image: Vec<usize>,
}

impl fmt::Debug for GridEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GridEndo {{ nodes: {}, image: {:?} }}", self.image.len(), self.image)
    }
}

impl GridEndo {
    pub fn new(grid: BoxGrid, image: Vec<usize>) -> Result<Self, GridError> {
        if image.len() != grid.node_count() {
            return Err(GridError::ValueCount { expected: grid.node_count(), got: image.len() });
        }
        for (node, &im) in image.iter().enumerate() {
            if im >= grid.node_count() {
                return Err(GridError::BadNodeIndex { node, image: im });
            }
        }
        Ok(GridEndo { grid, image })
    }

    pub fn identity(grid: BoxGrid) -> Self {
        let image = (0..grid.node_count()).collect();
        GridEndo { grid, image }
    }

    pub fn constant(grid: BoxGrid, target: usize) -> Result<Self, GridError> {
        if target >= grid.node_count() {
            return Err(GridError::BadNodeIndex { node: 0, image: target });
        }
        let image = alloc::vec![target; grid.node_count()];
        Ok(GridEndo { grid, image })
    }

    pub fn grid(&self) -> &BoxGrid {
        &self.grid
    }

    pub fn image(&self, node: usize) -> usize {
        self.image[node]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GridEndo) -> Result<GridEndo, GridError> {
        if self.grid != inner.grid {
            return Err(GridError::GridMismatch);
        }
        let image = inner.image.iter().map(|&n| self.image[n]).collect();
        Ok(GridEndo { grid: self.grid.clone(), image })
    }

    /// Exact `k`-th iterate; `iterate(0)` is the identity.
    pub fn iterate(&self, k: usize) -> GridEndo {
        let mut power = GridEndo::identity(self.grid.clone());
        for _ in 0..k {
            power = self.compose(&power).expect("same grid");
        }
        power
    }

    /// Pointwise product order on images.
    pub fn leq(&self, other: &GridEndo) -> Result<bool, GridError> {
        if self.grid != other.grid {
            return Err(GridError::GridMismatch);
        }
        Ok(self
            .image
            .iter()
            .zip(other.image.iter())
            .all(|(&a, &b)| self.grid.node_leq(a, b)))
    }

    /// First axis-adjacent node pair whose images are not ordered, if any.
    pub fn monotone_witness(&self) -> Option<(usize, usize)> {
        let g = &self.grid;
        for node in 0..g.node_count() {
            for axis in 0..g.dim() {
                if g.axis_index(node, axis) + 1 == g.res()[axis] {
                    continue;
                }
                let neighbor = node + g.stride(axis);
                if !g.node_leq(self.image[node], self.image[neighbor]) {
                    return Some((node, neighbor));
                }
            }
        }
        None
    }

    pub fn is_monotone(&self) -> bool {
        self.monotone_witness().is_none()
    }

    /// Pointwise join: `n ↦ self(n) ∨ other(n)`.
    pub fn join(&self, other: &GridEndo) -> Result<GridEndo, GridError> {
        if self.grid != other.grid {
            return Err(GridError::GridMismatch);
        }
        let image = self
            .image
            .iter()
            .zip(other.image.iter())
            .map(|(&a, &b)| self.grid.node_join(a, b))
            .collect();
        Ok(GridEndo { grid: self.grid.clone(), image })
    }

    /// Pointwise meet: `n ↦ self(n) ∧ other(n)`.
    pub fn meet(&self, other: &GridEndo) -> Result<GridEndo, GridError> {
        if self.grid != other.grid {
            return Err(GridError::GridMismatch);
        }
        let image = self
            .image
            .iter()
            .zip(other.image.iter())
            .map(|(&a, &b)| self.grid.node_meet(a, b))
            .collect();
        Ok(GridEndo { grid: self.grid.clone(), image })
    }

    /// Exact subcommutation: `self∘other ⪯ other∘self` pointwise.
    pub fn subcommutes(&self, other: &GridEndo) -> Result<bool, GridError> {
        let fg = self.compose(other)?;
        let gf = other.compose(self)?;
        fg.leq(&gf)
    }

    /// The interpolated map sending each node to the coordinates of its
    /// image node. Exact at nodes; between nodes it interpolates.
    pub fn to_grid_map(&self) -> GridMap {
        let d = self.grid.dim();
        let mut values = Vec::with_capacity(self.grid.node_count() * d);
        for &im in &self.image {
            values.extend_from_slice(&self.grid.node_coord(im));
        }
        GridMap::new(self.grid.clone(), values).expect("image coordinates are nodes")
    }
}
