use thiserror::Error;

/// Errors raised by the precision, oracle, and optimization routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("transmissivity must satisfy 0 < eta <= 1, got {0}")]
    InvalidTransmissivity(f64),
    #[error("eta must lie strictly inside (0, 1) for an interior optimum, got {0}")]
    InvalidEta(f64),
    #[error("loss must satisfy 0 < L < 1, got {0}")]
    InvalidLoss(f64),
    #[error("transmission phase must be finite, got {0}")]
    InvalidPhase(f64),
    #[error("a NOON probe needs at least one photon")]
    ZeroPhotons,
    #[error("photon budget must be at least 1, got {0}")]
    EmptyBudget(u64),
    #[error("kappa must be positive and finite, got {0}")]
    InvalidKappa(f64),
    #[error("{n} photons per state exceeds the budget of {n_total}")]
    ExceedsBudget { n: u64, n_total: u64 },
    #[error("oracle supports at most {cap} photons, got {n}")]
    OracleCapExceeded { n: u64, cap: u64 },
    #[error("ket holds {found} photons in one component but the detector was built for {n}")]
    PhotonContentMismatch { n: u64, found: u64 },
    #[error("parameter must be positive, got {0}")]
    NonPositive(f64),
    #[error("no sign change on [{lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
