use thiserror::Error;

use crate::grading::StratificationError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("subspace is not contained in the enclosing subspace")]
    NotContained,

    #[error("matrix is singular")]
    Singular,

    #[error("basis index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("bracket [e{a}, e{b}] must be stored with a < b")]
    UnorderedPair { a: usize, b: usize },

    #[error("bracket [e{a}, e{b}] given more than once")]
    DuplicatePair { a: usize, b: usize },

    #[error("not a Lie algebra: Jacobi identity fails on {violations} basis triple(s)")]
    NotLieAlgebra { violations: usize },

    #[error("Lie algebra is not nilpotent")]
    NotNilpotent,

    #[error("endomorphism is not a derivation")]
    NotDerivation,

    #[error("subspace is not bracket-generating: filtration stops at dimension {reached} of {dim}")]
    NotBracketGenerating { reached: usize, dim: usize },

    #[error("dilation factor must be nonzero")]
    ZeroDilation,

    #[error("invalid stratification: {0}")]
    Stratification(#[from] StratificationError),

    #[error("prolongation component g_{0} has not been computed")]
    ComponentMissing(usize),

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
