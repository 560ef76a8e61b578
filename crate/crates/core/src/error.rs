use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("level {level} exceeds the configured maximum {max}")]
    LevelTooLarge { level: u32, max: u32 },
    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("box corner contains a non-finite value")]
    NonFinite,
    #[error("diagonal ladder has no level {level} (it holds {available} levels)")]
    MissingLadderLevel { level: u32, available: u32 },
    #[error("scale must be a positive finite number, got {0}")]
    InvalidScale(f64),
    #[error("random shift out of range: u must lie in [1/2, 3/2]^d and v in [0, 1]^d")]
    InvalidShift,
    #[error("node {value} on axis {axis} lies outside [-1/2, 1/2]")]
    NodeOutsideCube { axis: usize, value: f64 },
    #[error("brute-force oracle refused: {0}")]
    OracleTooCostly(&'static str),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("boundary epsilon must be a finite non-negative number")]
    InvalidEpsilon,
}
