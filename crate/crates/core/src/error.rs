use thiserror::Error;

/// Errors raised by state construction and the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("data length {len} does not match a {rows}x{cols} matrix")]
    Shape { rows: usize, cols: usize, len: usize },

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("trace is {trace}, expected 1")]
    TraceNotUnit { trace: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("subsystem selection is empty")]
    EmptySelection,

    #[error("subsystem index {index} out of range for {count} subsystems")]
    SubsystemOutOfRange { index: usize, count: usize },

    #[error("state cannot be split into the requested bipartition")]
    NotBipartite,

    #[error("fidelity {0} outside [0, 1]")]
    FidelityOutOfRange(f64),

    #[error("c-vector does not describe a state (min Bell weight {min_weight:e})")]
    UnphysicalCVector { min_weight: f64 },

    #[error("state is not Bell-diagonal (max off-diagonal magnitude {max_off_diagonal:e})")]
    NotBellDiagonal { max_off_diagonal: f64 },

    #[error("unsupported subsystem dimension {0}")]
    UnsupportedDimension(usize),

    #[error("post-selection on an event of probability {probability:e}")]
    NullEvent { probability: f64 },

    #[error("vector norm {norm} differs from 1")]
    NotNormalized { norm: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
