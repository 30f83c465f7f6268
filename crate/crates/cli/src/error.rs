use alcore::AlError;
use modcurve::CurveError;
use newforms::NewformError;
use sl2::Sl2Error;

/// A failed job, classified by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Exit code 2.
    #[error("verification failed: {0}")]
    Verification(String),
    /// Exit code 3.
    #[error("{0}")]
    Input(String),
    /// Exit code 4.
    #[error("{0}")]
    Precision(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 2,
            CliError::Input(_) => 3,
            CliError::Precision(_) => 4,
        }
    }
}

impl From<NewformError> for CliError {
    fn from(e: NewformError) -> Self {
        match e {
            NewformError::InsufficientCoefficients { .. } => CliError::Precision(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<AlError> for CliError {
    fn from(e: AlError) -> Self {
        match e {
            AlError::Newform(e) => e.into(),
            AlError::PrecisionExhausted { .. } | AlError::Precision { .. } | AlError::InsufficientCoefficients { .. } => {
                CliError::Precision(e.to_string())
            }
            AlError::NotInSpace(_) => CliError::Input(e.to_string()),
            _ => CliError::Verification(e.to_string()),
        }
    }
}

impl From<Sl2Error> for CliError {
    fn from(e: Sl2Error) -> Self {
        match e {
            Sl2Error::Al(e) => e.into(),
            Sl2Error::Relation(_) => CliError::Verification(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<CurveError> for CliError {
    fn from(e: CurveError) -> Self {
        match e {
            CurveError::Sl2(e) => e.into(),
            CurveError::InsufficientPrecision { .. } => CliError::Precision(e.to_string()),
            CurveError::Inconsistent(_) | CurveError::QExp(_) => CliError::Verification(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.to_string())
    }
}
