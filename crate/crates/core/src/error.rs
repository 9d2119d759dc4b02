//! Error and signal types shared by every module.
//!
//! Payloads are carried as `f64` diagnostics regardless of the working scalar;
//! they are for reporting and flow control, not further arithmetic.

use thiserror::Error;

/// Growth model attached to divergence evidence and probe fits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthModel {
    /// Tail grows like a + b·log(1/r) (or a + b·log n for exhaustions).
    Log,
    /// Tail grows like a power of 1/r (or of n).
    Power,
    /// Bounded: increments contract geometrically.
    Bounded,
}

impl std::fmt::Display for GrowthModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GrowthModel::Log => write!(f, "log"),
            GrowthModel::Power => write!(f, "power"),
            GrowthModel::Bounded => write!(f, "bounded"),
        }
    }
}

/// Evidence attached to a detected divergence: the model that fits the tail
/// growth and its rate coefficient (slope in log variables).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivergenceEvidence {
    pub model: GrowthModel,
    pub rate: f64,
    /// Last partial value reached before the divergence call.
    pub partial: f64,
}

#[derive(Debug, Error)]
pub enum HardyError {
    #[error("invalid dimension {0}: need N >= 2")]
    InvalidDimension(u32),

    #[error("operation undefined in the sub-Hardy regime (mu < mu0)")]
    UnsupportedRegime,

    #[error("mu = {mu} is not below the threshold mu0 = {mu0}")]
    WrongRegime { mu: f64, mu0: f64 },

    #[error("radius {0} outside the admissible domain")]
    DomainError(f64),

    #[error("unknown test-function kind `{0}`")]
    UnknownKind(String),

    #[error("quadrature did not reach tolerance: estimate {estimate}, error bound {error}")]
    ToleranceNotMet { estimate: f64, error: f64 },

    #[error("integral diverges ({} rate {:.3e})", .0.model, .0.rate)]
    Divergence(DivergenceEvidence),

    #[error("no solution: source fails weighted integrability ({} rate {:.3e})", .0.model, .0.rate)]
    NoSolution(DivergenceEvidence),

    #[error("limit extraction failed: sequence oscillates (last delta {0:.3e})")]
    NoLimit(f64),

    #[error("kernel evaluation on the diagonal x = y")]
    SingularDiagonal,

    #[error("mode series truncated before tolerance: tail bound {tail_bound:.3e} > {tol:.3e}")]
    TruncationError { tail_bound: f64, tol: f64 },

    #[error("numeric failure: {0}")]
    NumericFailure(String),

    #[error("probe failure: {0}")]
    ProbeFailure(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

pub type Result<T> = std::result::Result<T, HardyError>;
