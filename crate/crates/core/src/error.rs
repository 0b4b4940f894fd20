use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("generator is not strictly increasing: phi({x1}) = {v1} >= phi({x2}) = {v2}")]
    NonMonotoneGenerator { x1: f64, x2: f64, v1: f64, v2: f64 },

    #[error("generator must vanish at zero, got phi(0) = {0}")]
    GeneratorNotZeroAtOrigin(f64),

    #[error("search bracket for y = {y} exceeded the cap x = {cap}")]
    BracketOverflow { y: f64, cap: f64 },

    #[error("Young function vanishes at nonzero point x = {x}")]
    ZeroAtNonzero { x: f64 },

    #[error("grid must span at least {required} decades, got {found}")]
    GridTooNarrow { required: f64, found: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("coordinate arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("element {element} does not belong to {group}")]
    ForeignElement { element: String, group: String },

    #[error("element {element} lies beyond the word-length search cap of {cap} enumerated elements")]
    WordLengthCap { element: String, cap: usize },

    #[error("ball enumeration exceeded the cap of {cap} elements ({partial} enumerated)")]
    BallTooLarge { cap: usize, partial: usize },

    #[error("invalid generating set: {0}")]
    InvalidGenerators(String),

    #[error("bilinear phase requires a free abelian group, got {0}")]
    NotFreeAbelian(String),

    #[error("matrix must be {expected}x{expected}")]
    MatrixShape { expected: usize },

    #[error("cocycle vanishes at ({s}, {t})")]
    ZeroCocycleValue { s: String, t: String },

    #[error("no decomposition witness passes on radius {radius}; worst pair ({s}, {t}) violates by {violation}")]
    NoWitness {
        radius: u32,
        s: String,
        t: String,
        violation: f64,
    },

    #[error("Luxemburg bracket not found within {0} doublings")]
    LuxemburgBracket(usize),

    #[error("Orlicz norm methods disagree: stationarity {stationarity}, one-dimensional {one_dimensional}, relative gap {gap}")]
    MethodDisagreement {
        stationarity: f64,
        one_dimensional: f64,
        gap: f64,
    },

    #[error("Young function {0} has no derivative available")]
    MissingDerivative(String),

    #[error("split factors violate the factorization at ({s}, {t}): residual {residual}")]
    SplitPrecondition { s: String, t: String, residual: f64 },

    #[error("operands live on different groups: {left} and {right}")]
    GroupMismatch { left: String, right: String },

    #[error("parse error: {0}")]
    Parse(String),
}
