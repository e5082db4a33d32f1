//! Verification kernels for 3-dimensional Bol loops realized as sharply
//! transitive sections in non-solvable Lie groups.
//!
//! The crate is split into an exact layer and a floating-point layer:
//!
//! * [`lie`] and [`catalog`] work over arbitrary-precision rationals, so
//!   closure checks (Jacobi, triple-system closure, Bol complement scans,
//!   gradings, intersection tables) have zero tolerance.
//! * [`groups`] and [`loops`] evaluate the concrete groups PSL2(R),
//!   PSL2(C), PSL2(R) x SO2(R) and PSL2(R) ⋉ R^3 in double precision:
//!   closed-form exponentials, Iwasawa/polar factorizations, the quaternion
//!   Moebius action, and the loop contexts built from them.
//! * [`classify`] holds the isomorphism machinery: Bruck gradings,
//!   reductivity, compactness criteria, Killing-angle invariants, the two
//!   explicit isomorphism solvers and the conjugacy-type obstructions.
//!
//! Exact kernels are generic over the scalar via `num-traits`; the concrete
//! instantiations used throughout are the aliases below.

#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod catalog;
pub mod classify;
pub mod groups;
pub mod lie;
pub mod linalg;
pub mod loops;
pub mod report;
pub mod rng;
pub mod scalar;
pub mod tol;

/// Exact scalar used by the catalog and all closure checks.
pub type Rat = num_rational::BigRational;
/// Floating-point scalar used by the matrix-group kernels.
pub type F = f64;

pub use report::VerificationReport;
pub use scalar::{parse_rational, rat, Scalar};

use thiserror::Error;

/// Error type shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("inputs belong to different algebras: {0} vs {1}")]
    MixedAlgebras(String, String),
    #[error("unknown catalog id: {0}")]
    UnknownId(String),
    #[error("parameter outside family domain: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("matrix span is not closed under commutators: {0}")]
    Representation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("numerical solve failed: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
