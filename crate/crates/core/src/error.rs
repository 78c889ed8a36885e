use thiserror::Error;

/// Errors surfaced by the hash library and its harnesses.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("key must be {expected} bytes ({} hex characters), got {got} bytes", expected * 2)]
    KeyLength { expected: usize, got: usize },

    #[error("invalid hex: {0}")]
    Hex(String),

    #[error("remainder length must be in 1..=31, got {0}")]
    RemainderLength(usize),

    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),

    #[error("avalanche input size must be in 4..=32 bytes, got {0}")]
    AvalancheSize(usize),

    #[error("iteration count must be at least 1")]
    NoIterations,

    #[error("{requested} draws exceed the generator budget of {budget} (cube root of its period)")]
    GeneratorBudget { requested: u128, budget: u128 },

    #[error("median needs an odd number of at least 3 samples, got {0}")]
    SampleCount(usize),

    #[error("bias samples cover different input sizes ({0} and {1})")]
    MixedSizes(usize, usize),

    #[error("robust estimate needs at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed test vector on line {line}: {reason}")]
    Vector { line: usize, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn decode_hex(s: &str) -> Result<Vec<u8>> {
    hex::decode(s.trim()).map_err(|e| Error::Hex(e.to_string()))
}
