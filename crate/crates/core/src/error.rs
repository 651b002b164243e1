use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),

    #[error("operands live over different fields")]
    FieldMismatch,

    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("expected a square matrix, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("subspaces have ambient dimensions {left} and {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("consecutive maps do not compose to zero")]
    NotAComplex,

    #[error("vector is not a cycle")]
    NotACycle,

    #[error("closed forms of the cyclic polynomial disagree in degree {degree}")]
    PolyInconsistent { degree: usize },

    #[error("no polynomial supplied for degree {degree}")]
    MissingPolynomial { degree: usize },

    #[error("invalid mixed complex: {0}")]
    InvalidComplex(String),

    #[error("subspace family is not stable under {map} in degree {degree}")]
    NotInvariant { degree: usize, map: &'static str },

    #[error("operator does not commute with {map} in degree {degree}")]
    NotCommuting { degree: usize, map: &'static str },

    #[error("operator is not invertible in degree {degree}")]
    NotInvertible { degree: usize },

    #[error("the two evaluation orders of the deformed coboundary disagree in degree {degree}")]
    UpsilonOrderMismatch { degree: usize },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("associativity fails on basis triple ({0}, {1}, {2})")]
    Associativity(usize, usize, usize),

    #[error("basis vector 0 is not a two-sided unit (fails on e_{0})")]
    Unit(usize),

    #[error("twist is not a unital algebra endomorphism: {0}")]
    Twist(String),

    #[error("unknown builtin example `{0}`")]
    UnknownBuiltin(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
