use thiserror::Error;

use crate::simplicial::Simplex;

/// Errors raised by the combinatorial layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no facets given")]
    EmptyInput,

    #[error("complex is empty")]
    EmptyComplex,

    #[error("facet {facet:?} repeats vertex {vertex}")]
    MalformedFacet { facet: Vec<u32>, vertex: u32 },

    #[error("dimension {dim} out of range 0..={max}")]
    DimensionOutOfRange { dim: usize, max: usize },

    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("simplex {0} is not in the complex")]
    SimplexNotInComplex(Simplex),

    #[error("complex is not a closed pseudomanifold: {0}")]
    NotPseudomanifold(String),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{which} is not a cycle: boundary is nonzero on {witness}")]
    NotACycle { which: String, witness: Simplex },

    #[error("{which} is not a cocycle: coboundary is nonzero on {witness}")]
    NotACocycle { which: String, witness: Simplex },

    #[error("product degree {degree} exceeds complex dimension {dim}")]
    DegreeOverflow { degree: usize, dim: usize },

    #[error("cup-i index {index} exceeds min degree {max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("Poincare pairing in degree {degree} is degenerate (rank {rank} of {size})")]
    PairingDegenerate { degree: usize, rank: usize, size: usize },

    #[error("flag {0} is not a dual cell of positive degree")]
    NotAFlagCell(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    ParseError { line: usize, column: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("unknown corpus entry `{0}`")]
    UnknownCorpusEntry(String),

    #[error("corpus entry `{name}` failed validation: {reason}")]
    CorpusValidationFailed { name: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
