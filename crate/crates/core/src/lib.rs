//! Harmonic and biharmonic homomorphisms between Riemannian Lie groups.
//!
//! Everything here works at the Lie algebra level: a left-invariant metric is
//! a positive-definite Gram matrix on a basis of the Lie algebra, and a
//! homomorphism is the matrix of its differential at the identity. From that
//! data the crate computes Levi-Civita products, curvature, tension and
//! bitension fields, harmonic cones, and builds submersions from semidirect
//! data.
//!
//! The crate is `no_std` (it needs `alloc`). Numbers are generic over
//! [`Scalar`], implemented for `f64` and for the exact [`Rational`] type.
//!
//! Module map:
//! - [`linalg`]: dense matrices, nullspaces, solves, eigen/SVD, matrix exponential
//! - [`algebra`]: structure constants, metrics, Euclidean Lie algebras, subalgebras
//! - [`maps`]: homomorphisms, tension/bitension, classification, submersions, Kähler checks
//! - [`cone`]: inner automorphisms and the harmonic cone
//! - [`construct`]: semidirect data, submersion recipes
//! - [`catalog`]: named algebras from the worked examples and the example suite
//! - [`sample`]: random metrics, algebras and homomorphisms for sweeps
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod catalog;
pub mod cone;
pub mod construct;
mod error;
pub mod linalg;
pub mod maps;
pub mod sample;
mod scalar;

pub use algebra::{EuclideanLieAlgebra, InnerProduct, LeviCivitaProduct, LieAlgebra, Subalgebra};
pub use error::Error;
pub use linalg::{Matrix, Tolerance};
pub use maps::{LieAlgebraMap, MapClassification};
pub use scalar::{Rational, Scalar};

/// Crate-wide result alias.
pub type Result<T, E = Error> = core::result::Result<T, E>;
