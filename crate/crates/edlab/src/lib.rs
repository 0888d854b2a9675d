//! Euclidean distance degrees of rank-one tensor varieties and friends.
//!
//! The crate computes, exactly where the mathematics is exact and numerically
//! where it is not:
//!
//! - closed-form generic and Frobenius ED degrees of Segre-Veronese
//!   varieties, with polar/Chern degree bookkeeping ([`formulas`]);
//! - ED degrees and defects of smooth quadrics from symmetric-pencil normal
//!   forms ([`pencils`]);
//! - ED defects of rational normal curves from exact multiplicity analysis
//!   of a restricted binary form ([`rnc`]);
//! - real critical rank-one approximations of matrices and symmetric
//!   matrices under arbitrary inner products, with a Morse-index census
//!   ([`critpoints`]);
//! - elimination-based ED polynomials of rational normal curves
//!   ([`edpoly`]).
//!
//! The [`verify`] module packages the whole reproduction suite behind one
//! entry point; the `edlab` binary exposes everything on the command line.

pub mod exactmath;
pub mod formulas;
pub mod pencils;
pub mod rnc;
pub mod edpoly;
pub mod critpoints;
pub mod report;
pub mod verify;
mod linalg;
pub mod workers;

pub use exactmath::ExactError;
