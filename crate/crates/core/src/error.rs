use thiserror::Error;

/// Errors produced by the invariant construction and evaluation layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("partition exceeds dimension: {parts} parts do not fit in n = {n}")]
    PartitionExceedsDimension { parts: usize, n: usize },

    #[error("subset size k = {k} exceeds n = {n}")]
    SubsetTooLarge { k: usize, n: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: u32, right: u32 },

    #[error("matrix size mismatch: expected {expected}x{expected}, got {rows}x{cols}")]
    MatrixSizeMismatch {
        expected: usize,
        rows: usize,
        cols: usize,
    },

    #[error("invalid fermion index {index:?} for n = {n}, k = {k}")]
    InvalidIndex { index: Vec<u8>, n: u8, k: u8 },

    #[error("transvection indices must differ, got i = j = {0}")]
    EqualTransvectionIndices(u8),

    #[error("cannot canonicalize the zero vector")]
    ZeroVector,

    #[error(
        "closure did not certify: reached dimension {reached} of {target} after {rounds} rounds"
    )]
    ClosureNotCertified {
        reached: u64,
        target: u64,
        rounds: u32,
    },

    #[error("generator is not a weight vector")]
    NotAWeightVector,

    #[error("particle number mismatch: state has k = {state_k}, expected k = {expected_k}")]
    ParticleNumberMismatch { state_k: u8, expected_k: u8 },

    #[error("invariant requires k = {expected}, state has k = {got}")]
    WrongParticleNumber { expected: u8, got: u8 },

    #[error("subsystem dimensions {dims:?} do not match the required {expected:?}")]
    DimsMismatch { dims: Vec<u8>, expected: Vec<u8> },

    #[error("k = {k} does not divide base_n = {base_n}")]
    IndivisibleBase { k: u8, base_n: u8 },

    #[error("{file}:{line}: {message}")]
    Parse {
        file: String,
        line: usize,
        message: String,
    },

    #[error("basis file inconsistent: {0}")]
    BasisFile(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
