//! Quaternionic numerical ranges of nilpotent and diagonal-plus-nilpotent
//! matrices.
//!
//! The crate computes the numerical range `W(A) = { x* A x : |x| = 1 }` of a
//! quaternionic matrix in three independent ways and compares them:
//!
//! * closed forms: a centred disk for nilpotent tree and cycle-free matrices,
//!   and a union of real-centred disks for `D + N` with `D` real diagonal and
//!   `N` a nilpotent tree;
//! * Monte Carlo sampling of `x* A x` projected to the upper half plane;
//! * support-function boundaries of complex matrices (used for real inputs and
//!   for the complex adjoint).
//!
//! It also carries the 3×3 decision procedures relating circularity and
//! convexity of `W(A)` to the graph of `A` and to the product `a13* a12 a23`.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod error;
pub mod graph;
pub mod linalg;
pub mod permutation;
pub mod predicates;
pub mod qmatrix;
pub mod quaternion;
pub mod range;
pub mod sampling;

pub use error::{Error, Predicate, Result};
pub use graph::AdjGraph;
pub use permutation::Permutation;
pub use qmatrix::{CMatrix, QMatrix};
pub use quaternion::{Quaternion, UpperBildPoint, EPS};

/// Default tolerance for structural predicates (nilpotency, reality tests).
pub const DEFAULT_TOL: f64 = 1e-10;
