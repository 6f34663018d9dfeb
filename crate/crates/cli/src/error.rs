use nondiss::Error;

/// Failure of a command, split by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags, config or input data (exit 2).
    #[error("{0}")]
    Input(String),
    /// A numerical routine did not succeed (exit 1).
    #[error("{0}")]
    Numeric(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        Self::Input(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Input(_) => 2,
            Self::Numeric(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotHermitian { .. }
            | Error::NonFinite { .. }
            | Error::BadShape { .. }
            | Error::DimensionMismatch { .. }
            | Error::NotDensityMatrix(_)
            | Error::InvalidParameter(_) => Self::Input(e.to_string()),
            Error::EigenNotConverged { .. }
            | Error::StepUnderflow(_)
            | Error::NoOscillation
            | Error::FitNotConverged { .. }
            | Error::NoRoot { .. }
            | Error::Quadrature { .. } => Self::Numeric(e.to_string()),
        }
    }
}
