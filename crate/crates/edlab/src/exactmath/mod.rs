//! Exact arbitrary-precision arithmetic: rationals, univariate and truncated
//! multivariate polynomials, resultants, square-free factorization, Sturm
//! sequences, and exact symmetric-matrix utilities.
//!
//! Everything in this module is immutable after construction and computes
//! without rounding; the numeric escape hatches live on [`SymMat`] and are
//! clearly marked.

mod rational;
mod resultant;
mod symmat;
mod truncpoly;
mod unipoly;

pub use rational::{format_rat, parse_rat, rat, rat_int, rat_to_f64, BigRational};
pub use resultant::{resultant, PolyInX};
pub use symmat::{PdFailure, SymMat, NUMERIC_PD_TOL};
pub use truncpoly::{ChowCoeff, TruncPoly, TruncPolyOf};
pub use unipoly::{SquareFree, UniPoly};

use thiserror::Error;

/// Errors raised by the exact-arithmetic layer. These are usage errors:
/// callers violated a documented precondition.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not square-free; decompose it first")]
    NotSquareFree,
    #[error("truncated polynomials have mismatched variables or caps")]
    CapsMismatch,
    #[error("exponent {0:?} lies outside the degree caps")]
    ExponentOutOfCaps(Vec<u32>),
    #[error("matrix dimensions do not match: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("operation requires exact (rational) entries")]
    NotExact,
    #[error("operation requires numeric (floating) entries")]
    NotNumeric,
    #[error("cannot parse rational from {0:?}")]
    BadRational(String),
}
