//! Axis-aligned boxes `[lo, up] ⊂ ℝⁿ` as complete lattices under the
//! product order. Joins and meets are componentwise max/min and never
//! leave the box.

use alloc::vec::Vec;
use core::fmt;

/// A nonempty box `[lower[0], upper[0]] × … × [lower[n-1], upper[n-1]]`.
///
/// The lower corner is the bottom element of the lattice and the upper
/// corner the top element.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxLattice {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum BoxError {
    ZeroDimension,
    DimMismatch { expected: usize, got: usize },
    NotFinite { axis: usize, value: f64 },
    ReversedBounds { axis: usize, lower: f64, upper: f64 },
    OutsideBox { axis: usize, value: f64 },
}

impl fmt::Display for BoxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoxError::ZeroDimension => write!(f, "a box needs at least one axis"),
            BoxError::DimMismatch { expected, got } => {
                write!(f, "expected a point with {expected} components, got {got}")
            }
            BoxError::NotFinite { axis, value } => {
                write!(f, "non-finite bound {value} on axis {axis}")
            }
            BoxError::ReversedBounds { axis, lower, upper } => {
                write!(f, "axis {axis} has lower bound {lower} above upper bound {upper}")
            }
            BoxError::OutsideBox { axis, value } => {
                write!(f, "coordinate {value} on axis {axis} lies outside the box")
            }
        }
    }
}

impl core::error::Error for BoxError {}

impl BoxLattice {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self, BoxError> {
        if lower.is_empty() {
            return Err(BoxError::ZeroDimension);
        }
        if lower.len() != upper.len() {
            return Err(BoxError::DimMismatch { expected: lower.len(), got: upper.len() });
        }
        for (axis, (&lo, &up)) in lower.iter().zip(upper.iter()).enumerate() {
            if !lo.is_finite() {
                return Err(BoxError::NotFinite { axis, value: lo });
            }
            if !up.is_finite() {
                return Err(BoxError::NotFinite { axis, value: up });
            }
            if lo > up {
                return Err(BoxError::ReversedBounds { axis, lower: lo, upper: up });
            }
        }
        Ok(BoxLattice { lower, upper })
    }

    /// The unit box `[0,1]ⁿ`.
    pub fn unit(dim: usize) -> Result<Self, BoxError> {
        BoxLattice::new(alloc::vec![0.0; dim], alloc::vec![1.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    /// Bottom element of the lattice.
    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    /// Top element of the lattice.
    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.check_contains(x).is_ok()
    }

    /// Like [`contains`](Self::contains) but reports the offending axis.
    pub fn check_contains(&self, x: &[f64]) -> Result<(), BoxError> {
        if x.len() != self.dim() {
            return Err(BoxError::DimMismatch { expected: self.dim(), got: x.len() });
        }
        for (axis, &v) in x.iter().enumerate() {
            // NaN fails both comparisons and is caught here as well.
            if !(v >= self.lower[axis] && v <= self.upper[axis]) {
                return Err(BoxError::OutsideBox { axis, value: v });
            }
        }
        Ok(())
    }

    /// Componentwise max of two points of the box.
    pub fn join(&self, x: &[f64], y: &[f64]) -> Result<Vec<f64>, BoxError> {
        self.check_contains(x)?;
        self.check_contains(y)?;
        Ok(x.iter().zip(y.iter()).map(|(&a, &b)| a.max(b)).collect())
    }

    /// Componentwise min of two points of the box.
    pub fn meet(&self, x: &[f64], y: &[f64]) -> Result<Vec<f64>, BoxError> {
        self.check_contains(x)?;
        self.check_contains(y)?;
        Ok(x.iter().zip(y.iter()).map(|(&a, &b)| a.min(b)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn unit2() -> BoxLattice {
        BoxLattice::unit(2).unwrap()
    }

    #[test]
    fn join_is_componentwise_max() {
        assert_eq!(unit2().join(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), vec![1.0, 1.0]);
    }

    #[test]
    fn meet_is_componentwise_min() {
        assert_eq!(unit2().meet(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn join_idempotent() {
        let x = [0.25, 0.75];
        assert_eq!(unit2().join(&x, &x).unwrap(), vec![0.25, 0.75]);
    }

    #[test]
    fn outside_point_rejected() {
        let err = unit2().join(&[1.5, 0.0], &[0.0, 0.0]).unwrap_err();
        assert_eq!(err, BoxError::OutsideBox { axis: 0, value: 1.5 });
    }

    #[test]
    fn reversed_bounds_rejected() {
        let err = BoxLattice::new(vec![1.0], vec![0.0]).unwrap_err();
        assert!(matches!(err, BoxError::ReversedBounds { axis: 0, .. }));
    }

    #[test]
    fn absorption_law_spot_check() {
        let b = unit2();
        let x = [0.3, 0.8];
        let y = [0.6, 0.1];
        let joined = b.join(&x, &y).unwrap();
        assert_eq!(b.meet(&x, &joined).unwrap(), vec![0.3, 0.8]);
    }
}
