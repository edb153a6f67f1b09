use farey_mmd::{AnalysisError, FareyError, KernelError, MmdError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments or unusable input data.
    #[error("{0}")]
    Input(String),
    /// A Farey order beyond the range where the integer recurrence is safe.
    #[error("{0}")]
    Overflow(String),
    #[error("cannot write output: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Output(_) => 2,
            CliError::Overflow(_) => 3,
        }
    }
}

impl From<FareyError> for CliError {
    fn from(e: FareyError) -> Self {
        match e {
            FareyError::OrderTooLarge { .. } => CliError::Overflow(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::Farey(f) => f.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<MmdError> for CliError {
    fn from(e: MmdError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<KernelError> for CliError {
    fn from(e: KernelError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Output(e.to_string())
    }
}
