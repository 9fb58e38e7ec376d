use alloc::string::String;

use crate::arith::Rational;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("unknown operation `{0}`")]
    UnknownOp(String),
    #[error("operation `{0}` already exists")]
    DuplicateOp(String),
    #[error("invalid basis: {0}")]
    InvalidBasis(String),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("invalid rational `{0}`")]
    InvalidRational(String),
    #[error("unknown structure `{0}`")]
    UnknownStructure(String),
    #[error("slot `{0}` is not bound to an operation")]
    IncompleteBinding(String),
    #[error("structure has no slot `{0}`")]
    UnknownSlot(String),
    #[error("structure `{0}` needs a q parameter")]
    MissingQ(String),
    #[error("structure `{0}` takes no q parameter")]
    UnexpectedQ(String),
    #[error("q = {0} is not allowed (q must avoid 0, 1, -1)")]
    ForbiddenQ(Rational),
    #[error("algebra fails `{0}`")]
    NotStructure(String),
    #[error("operation `{0}` is not associative")]
    NotAssociative(String),
    #[error("not a bimodule: {0}")]
    InvalidBimodule(String),
    #[error("map is not an anti-O-operator: {0}")]
    NotAnOperator(String),
    #[error("bilinear form is degenerate")]
    DegenerateForm,
    #[error("bilinear form fails the cocycle conditions: {0}")]
    NotCocycle(String),
    #[error("postcondition failed: {0}")]
    Postcondition(String),
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("monomial orders differ")]
    OrderMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("dimension {dim} exceeds the solver cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
}
