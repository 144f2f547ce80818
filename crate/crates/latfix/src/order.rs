//! Comparison of real vectors under the product order and the
//! lexicographic order.
//!
//! Comparisons are exact floating-point comparisons: no epsilon enters an
//! order decision. Tolerances belong to convergence and residual checks,
//! never to the order axioms themselves.

use core::fmt;

/// Outcome of comparing two elements of a poset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderRel {
    Less,
    Equal,
    Greater,
    /// Neither `x ⪯ y` nor `y ⪯ x` (product order only; never returned by
    /// a total order).
    Incomparable,
}

impl OrderRel {
    /// `x ⪯ y` in the weak sense (`Less` or `Equal`).
    pub fn is_leq(self) -> bool {
        matches!(self, OrderRel::Less | OrderRel::Equal)
    }
}

/// Two vectors of different dimension were compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimMismatch {
    pub left: usize,
    pub right: usize,
}

impl fmt::Display for DimMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dimension mismatch: left operand has {} components, right has {}",
            self.left, self.right
        )
    }
}

impl core::error::Error for DimMismatch {}

/// Compare `x` and `y` componentwise: `x ⪯ y` iff `x[k] ≤ y[k]` for all `k`.
pub fn compare_product(x: &[f64], y: &[f64]) -> Result<OrderRel, DimMismatch> {
    if x.len() != y.len() {
        return Err(DimMismatch { left: x.len(), right: y.len() });
    }
    let mut leq = true;
    let mut geq = true;
    for (a, b) in x.iter().zip(y.iter()) {
        if a > b {
            leq = false;
        }
        if a < b {
            geq = false;
        }
    }
    Ok(match (leq, geq) {
        (true, true) => OrderRel::Equal,
        (true, false) => OrderRel::Less,
        (false, true) => OrderRel::Greater,
        (false, false) => OrderRel::Incomparable,
    })
}

/// `x ⪯ y` in the product order.
pub fn product_leq(x: &[f64], y: &[f64]) -> Result<bool, DimMismatch> {
    compare_product(x, y).map(OrderRel::is_leq)
}

/// Compare `x` and `y` lexicographically: the first differing coordinate
/// decides. Total: never returns [`OrderRel::Incomparable`].
pub fn compare_lex(x: &[f64], y: &[f64]) -> Result<OrderRel, DimMismatch> {
    if x.len() != y.len() {
        return Err(DimMismatch { left: x.len(), right: y.len() });
    }
    for (a, b) in x.iter().zip(y.iter()) {
        if a < b {
            return Ok(OrderRel::Less);
        }
        if a > b {
            return Ok(OrderRel::Greater);
        }
    }
    Ok(OrderRel::Equal)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_dominance() {
        assert_eq!(compare_product(&[0.0, 0.0], &[1.0, 1.0]).unwrap(), OrderRel::Less);
        assert_eq!(compare_product(&[1.0, 1.0], &[0.0, 0.0]).unwrap(), OrderRel::Greater);
    }

    #[test]
    fn product_incomparable_pair() {
        assert_eq!(
            compare_product(&[1.0, 0.0], &[0.0, 1.0]).unwrap(),
            OrderRel::Incomparable
        );
    }

    #[test]
    fn product_reflexive() {
        assert_eq!(
            compare_product(&[0.5, 0.5], &[0.5, 0.5]).unwrap(),
            OrderRel::Equal
        );
    }

    #[test]
    fn product_dim_mismatch() {
        let err = compare_product(&[0.0], &[0.0, 1.0]).unwrap_err();
        assert_eq!(err, DimMismatch { left: 1, right: 2 });
    }

    #[test]
    fn lex_first_coordinate_decides() {
        assert_eq!(compare_lex(&[0.0, 9.0], &[1.0, 0.0]).unwrap(), OrderRel::Less);
    }

    #[test]
    fn lex_tie_then_second() {
        assert_eq!(compare_lex(&[1.0, 0.0], &[1.0, 1.0]).unwrap(), OrderRel::Less);
    }

    #[test]
    fn lex_reflexive() {
        assert_eq!(compare_lex(&[2.0, 3.0], &[2.0, 3.0]).unwrap(), OrderRel::Equal);
    }
}
