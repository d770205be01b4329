use std::fmt;

use ratmap::Error;

/// Process exit statuses; math failures and plumbing failures stay distinct.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    VerifyFailed = 1,
    Usage = 2,
    Unsupported = 3,
    ValidityGate = 4,
    OracleMismatch = 5,
    Io = 6,
    Budget = 7,
}

#[derive(Debug)]
pub struct CliError {
    pub code: ExitCode,
    pub message: String,
}

impl CliError {
    pub fn new(code: ExitCode, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new(ExitCode::Usage, message)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Unsupported { .. } => ExitCode::Unsupported,
            Error::ValidityGate { .. } => ExitCode::ValidityGate,
            Error::NoConvergence { .. } => ExitCode::OracleMismatch,
            Error::Io(_) => ExitCode::Io,
            Error::BudgetExceeded { .. } => ExitCode::Budget,
            Error::NonFinite(_)
            | Error::InvalidArgument(_)
            | Error::Pole(_)
            | Error::ZeroParameter(_)
            | Error::OutsideDomain
            | Error::AllSamplesFailed(_) => ExitCode::Usage,
        };
        Self::new(code, e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::new(ExitCode::Io, e.to_string())
    }
}
