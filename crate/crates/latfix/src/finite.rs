//! Finite lattices built from cover relations (Hasse diagrams).
//!
//! Input is the list of element labels plus the covers `a ⋖ b`; the order
//! is the reflexive-transitive closure of the covers. Construction fails
//! with a diagnostic if the covers contain a cycle or some pair lacks a
//! join or meet — i.e. the poset described is not a lattice.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::order::OrderRel;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiniteLatticeError {
    NoElements,
    DuplicateLabel(String),
    UnknownLabel(String),
    /// Two distinct elements are each below the other: the covers cycle.
    Cycle { a: String, b: String },
    NoJoin { a: String, b: String },
    NoMeet { a: String, b: String },
}

impl fmt::Display for FiniteLatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteLatticeError::NoElements => write!(f, "a lattice needs at least one element"),
            FiniteLatticeError::DuplicateLabel(l) => write!(f, "duplicate element label {l:?}"),
            FiniteLatticeError::UnknownLabel(l) => write!(f, "unknown element label {l:?}"),
            FiniteLatticeError::Cycle { a, b } => {
                write!(f, "covers contain a cycle through {a:?} and {b:?}")
            }
            FiniteLatticeError::NoJoin { a, b } => {
                write!(f, "not a lattice: {a:?} and {b:?} have no least upper bound")
            }
            FiniteLatticeError::NoMeet { a, b } => {
                write!(f, "not a lattice: {a:?} and {b:?} have no greatest lower bound")
            }
        }
    }
}

impl core::error::Error for FiniteLatticeError {}

/// A validated finite lattice.
///
/// Elements are addressed by index into the label list; `leq`, `join` and
/// `meet` are precomputed tables. Every value of this type has total
/// join/meet tables and hence a unique bottom and top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    labels: Vec<String>,
    covers: Vec<(usize, usize)>,
    leq: Vec<bool>,
    join: Vec<usize>,
    meet: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl FiniteLattice {
    /// Build from labels and cover pairs `(lower, upper)`.
    pub fn from_covers(labels: &[&str], covers: &[(&str, &str)]) -> Result<Self, FiniteLatticeError> {
        if labels.is_empty() {
            return Err(FiniteLatticeError::NoElements);
        }
        let owned: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
        for (i, l) in owned.iter().enumerate() {
            if owned[..i].contains(l) {
                return Err(FiniteLatticeError::DuplicateLabel(l.clone()));
            }
        }
        let index_of = |l: &str| -> Result<usize, FiniteLatticeError> {
            owned
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| FiniteLatticeError::UnknownLabel(l.to_string()))
        };
        let n = owned.len();
        let mut cover_ix = Vec::with_capacity(covers.len());
        let mut leq = alloc::vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(lo, up) in covers {
            let (i, j) = (index_of(lo)?, index_of(up)?);
            cover_ix.push((i, j));
            leq[i * n + j] = true;
        }
        // Reflexive-transitive closure (Warshall); n is small.
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(FiniteLatticeError::Cycle {
                        a: owned[i].clone(),
                        b: owned[j].clone(),
                    });
                }
            }
        }
        // Join = unique least upper bound; meet dually.
        let mut join = alloc::vec![0usize; n * n];
        let mut meet = alloc::vec![0usize; n * n];
        for i in 0..n {
            for j in 0..n {
                let ub: Vec<usize> =
                    (0..n).filter(|&k| leq[i * n + k] && leq[j * n + k]).collect();
                match ub.iter().find(|&&c| ub.iter().all(|&k| leq[c * n + k])) {
                    Some(&c) => join[i * n + j] = c,
                    None => {
                        return Err(FiniteLatticeError::NoJoin {
                            a: owned[i].clone(),
                            b: owned[j].clone(),
                        })
                    }
                }
                let lb: Vec<usize> =
                    (0..n).filter(|&k| leq[k * n + i] && leq[k * n + j]).collect();
                match lb.iter().find(|&&c| lb.iter().all(|&k| leq[k * n + c])) {
                    Some(&c) => meet[i * n + j] = c,
                    None => {
                        return Err(FiniteLatticeError::NoMeet {
                            a: owned[i].clone(),
                            b: owned[j].clone(),
                        })
                    }
                }
            }
        }
        let bottom = (0..n).fold(0, |acc, i| meet[acc * n + i]);
        let top = (0..n).fold(0, |acc, i| join[acc * n + i]);
        Ok(FiniteLattice { labels: owned, covers: cover_ix, leq, join, meet, bottom, top })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty element lists
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, FiniteLatticeError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| FiniteLatticeError::UnknownLabel(label.to_string()))
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.len() + j]
    }

    pub fn compare(&self, i: usize, j: usize) -> OrderRel {
        match (self.leq(i, j), self.leq(j, i)) {
            (true, true) => OrderRel::Equal,
            (true, false) => OrderRel::Less,
            (false, true) => OrderRel::Greater,
            (false, false) => OrderRel::Incomparable,
        }
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i * self.len() + j]
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.len() + j]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Supremum of a finite element set; `sup ∅ = bottom`.
    pub fn sup(&self, subset: &[usize]) -> usize {
        subset.iter().fold(self.bottom, |acc, &i| self.join(acc, i))
    }

    /// Infimum of a finite element set; `inf ∅ = top`.
    pub fn inf(&self, subset: &[usize]) -> usize {
        subset.iter().fold(self.top, |acc, &i| self.meet(acc, i))
    }

    /// All pairs of the subset comparable?
    pub fn is_chain(&self, subset: &[usize]) -> bool {
        subset
            .iter()
            .all(|&i| subset.iter().all(|&j| self.leq(i, j) || self.leq(j, i)))
    }

    /// Does the subset contain every element lying between two of its members?
    pub fn is_convex(&self, subset: &[usize]) -> bool {
        for &i in subset {
            for &j in subset {
                if !self.leq(i, j) {
                    continue;
                }
                for z in 0..self.len() {
                    if self.leq(i, z) && self.leq(z, j) && !subset.contains(&z) {
                        return false;
                    }
                }
            }
        }
        true
    }
}
