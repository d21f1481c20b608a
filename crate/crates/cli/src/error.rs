use nilrigid::Error;
use thiserror::Error as ThisError;

/// Failures mapped to the documented exit codes.
#[derive(Debug, Clone, PartialEq, ThisError)]
pub enum CliError {
    /// Malformed input or arguments.
    #[error("parse error: {0}")]
    Parse(String),
    /// The input parses but is not a valid algebra, automorphism or lattice
    /// map, or does not meet an analysis precondition.
    #[error("invalid input: {0}")]
    Invalid(String),
    /// Certification could not separate a tie.
    #[error("undecided: {0}")]
    Undecided(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Undecided(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => CliError::Parse(e.to_string()),
            Error::ModulusTie(..) | Error::HyperbolicityUndecided(_) | Error::Certification(_) => {
                CliError::Undecided(e.to_string())
            }
            _ => CliError::Invalid(e.to_string()),
        }
    }
}
