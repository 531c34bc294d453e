//! Exact symbolic verification of q-deformed algebra structures.
//!
//! Everything is computed over the rational function field Q(z), where the
//! single symbolic variable z plays the role of q, hbar or t depending on
//! context. The crate provides:
//!
//! - [`scalar`]: arbitrary-precision rationals, univariate polynomials and
//!   rational functions, plus the two q-integer conventions.
//! - [`linalg`]: sparse free-tensor-algebra vectors, reduced echelon
//!   subspaces, intersections, dual pairings and orthogonal complements.
//! - [`presentation`]: quadratic-linear-constant algebra presentations, a
//!   scalar expression parser and a JSON file format.
//! - [`rewrite`]: bounded-degree noncommutative rewriting (diamond lemma),
//!   graded dimension counting and PBW comparison.
//! - [`jacobi`]: bracket-condition checkers (two-term Jacobi conditions,
//!   quadratic-linear-constant compatibility, strong Jacobi,
//!   Chevalley-Eilenberg differential, almost-Lie representation checks).
//! - [`weyl`]: permutation-relation engines, normal ordering, counit
//!   actions, the u(2)/su(2) apparatus and gl(m) derivative variants.
//! - [`braided`]: braidings and Hecke symmetries, skew inverses, the
//!   (modified) Reflection Equation algebra, braided Weyl algebra, exterior
//!   algebra of differentials and the de Rham operator.
//! - [`witt`]: Jackson-type derivatives, Witt operators, the q-Witt bracket
//!   and its failure of the PBW property, and the Jackson sl(2) subalgebra.
//! - [`families`]: three-generator parametric families and End(V)-type data
//!   with their bracket-condition verdicts.
//! - [`catalog`]: named builtin presentations.
//! - [`suites`]: the named check suites driven by the CLI.

pub mod braided;
pub mod catalog;
pub mod error;
pub mod families;
pub mod jacobi;
pub mod linalg;
pub mod presentation;
pub mod report;
pub mod rewrite;
pub mod scalar;
pub mod suites;
pub mod weyl;
pub mod witt;

pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};
