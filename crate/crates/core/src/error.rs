use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("bit count {n} is outside the supported range {min}..={max}")]
    BitCount { n: u32, min: u32, max: u32 },

    #[error("expected {expected} items, got {actual}")]
    Length { expected: usize, actual: usize },

    #[error("transition index {index} at position {position} is outside 1..={n}")]
    TransitionIndex { position: usize, index: u32, n: u32 },

    #[error("word {word} at position {position} does not fit in {n} bits")]
    WordRange { position: usize, word: u64, n: u32 },

    #[error("word {word} repeats at position {position} (first seen at {first})")]
    RepeatedWord { position: usize, first: usize, word: u32 },

    #[error("words at positions {position} and {next} ({from} -> {to}) are not adjacent in the cube")]
    NotAdjacent { position: usize, next: usize, from: u32, to: u32 },

    #[error("sequence does not close: after all flips the walk ends at {end}, not at {start}")]
    NotCyclic { start: u32, end: u32 },

    #[error("component index {index} is outside 1..={n}")]
    ComponentIndex { index: u32, n: u32 },

    #[error("l = {l} is infeasible for a base of length {base_len}: {reason}")]
    InfeasibleL { l: usize, base_len: usize, reason: &'static str },

    #[error("malformed decomposition: {0}")]
    Decomposition(String),

    #[error("construction produced an invalid sequence: {0}")]
    Construction(String),

    #[error("vertex {vertex}: {reason}")]
    NotCycleRemoval { vertex: u32, reason: String },

    #[error("parse error: {reason}")]
    Parse { reason: String },

    #[error("not a probability distribution: {0}")]
    Distribution(String),

    #[error("epsilon {0} must lie strictly between 0 and 1")]
    Epsilon(f64),

    #[error("exact and floating total variation disagree at t={t}: exact {exact}, float {float}")]
    ExactMismatch { t: u64, exact: f64, float: f64 },

    #[error("insufficient data for {test}: need at least {required} bits, got {actual}")]
    InsufficientData { test: &'static str, required: usize, actual: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("unknown profile {0:?}; expected one of a, b, c, d, e")]
    UnknownProfile(String),

    #[error("theorem check failed for cycle {cycle:?}: {reason}")]
    TheoremViolation { cycle: Vec<u32>, reason: String },
}
