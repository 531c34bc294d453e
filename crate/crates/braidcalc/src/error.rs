use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at evaluation point {0}")]
    Pole(String),
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("mixed degrees in homogeneous input")]
    MixedDegrees,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unbound identifier `{0}`")]
    UnboundIdentifier(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("relation {index} degenerates at the current specialization")]
    DegenerateRelation { index: usize },
    #[error("braiding is not skew-invertible")]
    NotSkewInvertible,
    #[error("subspaces are not complementary: dims {dim_i} + {dim_plus} with joint span {dim_joint} in ambient {ambient}")]
    NotComplementary {
        dim_i: usize,
        dim_plus: usize,
        dim_joint: usize,
        ambient: usize,
    },
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error("missing parameter `{0}`")]
    MissingParameter(String),
    #[error("invalid parameter `{name}`: {msg}")]
    InvalidParameter { name: String, msg: String },
    #[error("nonzero imaginary residue in shift-operator result")]
    ImaginaryResidue,
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
