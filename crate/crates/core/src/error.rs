use thiserror::Error;

/// Errors raised by the ideal, complex and graph operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} exponents, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ideals live in different rings")]
    AmbientMismatch,

    #[error("ideal is not squarefree")]
    NotSquarefree,

    #[error("operation undefined on the void complex")]
    VoidComplex,

    #[error("vertex {0} is not a vertex of the complex")]
    NotAVertex(usize),

    #[error("colon by zero ideal undefined")]
    ColonByZero,

    #[error("operation requires a nonzero proper ideal")]
    ZeroOrUnit,

    #[error("ideal is not Artinian: variable {0} has no pure power in the ideal")]
    NotArtinian(String),

    #[error("ideal is not generated in a single degree")]
    NotEquigenerated,

    #[error("invalid colouring: {0}")]
    InvalidColouring(String),

    #[error("invalid variable order: {0}")]
    InvalidOrder(String),

    #[error("too many variables: {found} exceeds the limit of {limit}")]
    TooManyVariables { found: usize, limit: usize },

    #[error("resource limit exceeded: {needed} lattice points requested, limit is {limit}")]
    ResourceLimit { needed: u128, limit: u128 },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
