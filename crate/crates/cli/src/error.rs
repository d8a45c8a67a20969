use thiserror::Error;

/// Process exit status for a successful run.
pub const EXIT_OK: i32 = 0;
/// Oracle and closed forms disagree.
pub const EXIT_VERIFY_FAILED: i32 = 1;
/// Bad flags or out-of-domain values.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{err} ({reminder})")]
    Domain { err: noonloss::Error, reminder: &'static str },
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Domain { .. } | CliError::Io(_) => EXIT_USAGE,
        }
    }
}

fn reminder(err: &noonloss::Error) -> &'static str {
    use noonloss::Error::*;
    match err {
        InvalidTransmissivity(_) | InvalidLoss(_) => "domain: 0 < eta <= 1, i.e. 0 <= L < 1",
        InvalidEta(_) => "domain: 0 < eta < 1; the lossless case has no interior optimum",
        ZeroPhotons => "domain: N >= 1",
        EmptyBudget(_) | ExceedsBudget { .. } => "domain: 1 <= N <= budget",
        InvalidKappa(_) => "domain: kappa > 0",
        OracleCapExceeded { .. } => "domain: max-n <= 64",
        InvalidPhase(_) => "domain: phases must be finite",
        NonPositive(_) => "domain: value must be positive",
        PhotonContentMismatch { .. } | NoBracket { .. } => "internal",
    }
}

impl From<noonloss::Error> for CliError {
    fn from(err: noonloss::Error) -> Self {
        CliError::Domain { reminder: reminder(&err), err }
    }
}
