//! Exact computational Lie theory for stratified nilpotent Lie algebras.
//!
//! The crate works entirely over the rationals. Algebras are given by
//! structure constants ([`liealg::LieAlgebra`]); from there it computes lower
//! central series, derivations, stratifications and dilations
//! ([`grading`]), associated graded algebras of filtrations, a decision
//! procedure for stratifiability, and the Tanaka prolongation of a
//! stratified algebra together with the ultrarigidity test built on it
//! ([`tanaka`]). [`catalog`] holds the built-in algebras, [`format`] the
//! text file format and [`report`] the canonical report.
//!
//! With the default `parallel` feature the inner loops (equation assembly,
//! Jacobi triples, row elimination) run on rayon; without it the same code
//! runs sequentially and produces identical output.

pub mod catalog;
pub mod error;
pub mod exactlin;
pub mod format;
pub mod grading;
pub mod liealg;
mod par;
pub mod report;
pub mod tanaka;

pub use error::{Error, Result};
pub use exactlin::{Matrix, Rational, Subspace};
pub use grading::Stratification;
pub use liealg::{LieAlgebra, LinearEndo};
