//! Majorization orders on nonnegative finite sequences.
//!
//! The crate decides majorization (`f ≺ g`), weak majorization (`f ≺_w g`)
//! and submajorization (`f ≺_s g`) between truncated sequences and backs
//! every positive answer with an explicit matrix witness:
//!
//! * [`seq`] holds the sequence primitives (rearrangements, partial sums,
//!   level sets, p-norms).
//! * [`matrix`] classifies square nonnegative matrices and builds the
//!   doubly stochastic completion that certifies a doubly substochastic
//!   matrix as increasable.
//! * [`relations`] contains the decision procedures, the T-transform
//!   witness construction and a brute-force oracle for small dimensions.
//! * [`preservers`] builds and classifies the structured linear preservers
//!   `Σ λ_k P_θk (+ T_h)` and the intertwining operator `S`.
//! * [`demos`] reproduces the worked constructions (shift forcing, the two
//!   injection families, the `1/i²` sequence).
//!
//! All indices are 0-based in the API. External formats (see the
//! `majorize` crate) use 1-based indices.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod demos;
mod error;
pub mod matrix;
pub mod preservers;
pub mod relations;
pub mod sample;
pub mod seq;

pub use error::{Error, Result};
pub use matrix::{
    IncreasabilityCertificate, Decomposition, MatrixClass, ShiftDirection, StochMatrix,
};
pub use relations::{RelationKind, RelationVerdict, TTransform, TTransformChain};
pub use seq::{LevelSet, LevelSetDecomposition, NonNegVector, Rearrangement};

/// Default tolerance for class membership and relation checks.
pub const CLASS_TOL: f64 = 1e-9;

/// Default tolerance for algebraic identities.
pub const EXACT_TOL: f64 = 1e-12;
