//! Order-theoretic solver core for polynomial-like iterative functional
//! equations
//!
//! ```text
//!     c1·f + c2·f² + … + cm·fᵐ = F        (fᵏ = f ∘ fᵏ⁻¹, f⁰ = id)
//! ```
//!
//! where the unknown `f` ranges over order-preserving self-maps of a box
//! `[lo, up] ⊂ ℝⁿ` under the product order. The crate provides:
//!
//! * [`order`], [`box_lattice`], [`finite`] — partial-order comparisons,
//!   boxes as complete lattices, and finite lattices built from cover
//!   relations (Hasse diagrams);
//! * [`grid`], [`endo`] — two representations of monotone self-maps of a
//!   box: interpolated node data for solving, and exact node→node
//!   endomorphisms for order-theoretic law checking;
//! * [`analysis`] — semi-continuity certificates and p-integrals;
//! * [`solver`] — coefficient regimes, the associated monotone operator,
//!   and ascent/descent iteration to the minimal and maximal solutions;
//! * [`engine`] — exhaustive verification of the fixed-point theorems on
//!   small finite lattices.
//!
//! The crate is `no_std`-compatible (requires `alloc`); the `std` feature
//! (default) only enables `std::error::Error` interop via `core::error`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod analysis;
pub mod box_lattice;
pub mod endo;
pub mod engine;
pub mod finite;
pub mod grid;
pub mod order;
pub mod solver;
