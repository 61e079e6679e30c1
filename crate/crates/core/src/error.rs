use thiserror::Error;

/// Errors raised by the linear-algebra substrate, the state constructors and
/// the analytic layer.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max asymmetry {0:e})")]
    NotHermitian(f64),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal residual {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("vector is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("zero-probability outcome (probability {0:e})")]
    ZeroProbability(f64),

    #[error("fidelity {0} outside [0, 1]")]
    FidelityOutOfRange(f64),

    #[error("local dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),

    #[error("Schmidt rank {rank} exceeds local dimension {d}")]
    RankExceedsDimension { rank: usize, d: usize },

    #[error("invalid Schmidt vector: {0}")]
    InvalidSchmidt(String),

    #[error("measurement ensemble is incomplete (max deviation from identity {0:e})")]
    IncompleteEnsemble(f64),

    #[error("oracle scale exceeded: d = {0} (limit 5)")]
    OracleScaleExceeded(usize),

    #[error("negative negativity {0:e} beyond roundoff")]
    NegativeNegativity(f64),

    #[error("bracket invalid: no sign change on [{left}, {right}]")]
    BracketInvalid { left: f64, right: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
