use thiserror::Error;

/// Errors raised by the dynamics library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("singular matrix (|ad-bc| = {det:e})")]
    SingularMatrix { det: f64 },

    #[error("real map has negative determinant {det}; cannot normalize over the reals")]
    NegativeDeterminant { det: f64 },

    #[error("not parabolic (trace {trace})")]
    NotParabolic { trace: String },

    #[error("map fixes infinity (c = 0); use the translation path")]
    FixesInfinity,

    #[error("input is the fixed point; no unique answer")]
    FixedPointInput,

    #[error("epsilon must be positive and finite, got {0}")]
    InvalidEpsilon(f64),

    #[error("horizon {actual} too short; need at least {required}")]
    HorizonTooShort { required: usize, actual: usize },

    #[error("starting point {x} outside the basin {basin}")]
    OutOfBasin { x: f64, basin: String },

    #[error("no escape to {target} within {cap} iterations")]
    NoEscape { target: String, cap: usize },

    #[error("interval lemma violated: {from} -> {to} at x = {x}")]
    LemmaViolation { x: f64, from: String, to: String },

    #[error("seed point {q} is not strictly inside {interval}")]
    SeedOutsideInterval { q: f64, interval: String },

    #[error("seed point {q} never lands far enough from the fixed point")]
    SeedDoesNotEscape { q: f64 },

    #[error("circle equation needs |A| != |B|")]
    EqualModuli,

    #[error("invalid pseudo-orbit: {0}")]
    InvalidPseudoOrbit(String),

    #[error("point is not finite")]
    NonFinite,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
