use thiserror::Error;
use weylkit_core::AlgebraError;

use crate::expr::ParseError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("file not found: {0}")]
    FileNotFound(String),
    #[error("invalid spec: {0}")]
    SpecInvalid(String),
    #[error("unknown command or preset: {0}")]
    CommandUnknown(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl CliError {
    /// Stable identifier used in error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::FileNotFound(_) => "FileNotFound",
            CliError::SpecInvalid(_) => "SpecInvalid",
            CliError::CommandUnknown(_) => "CommandUnknown",
            CliError::Parse(ParseError::Syntax { .. }) => "SyntaxError",
            CliError::Parse(ParseError::UnknownVariable { .. }) => "UnknownVariable",
            CliError::Parse(ParseError::NegativeExponentOutsideLaurent { .. }) => "NegativeExponentOutsideLaurent",
            CliError::Parse(ParseError::Algebra { .. }) | CliError::Algebra(_) => "AlgebraError",
        }
    }
}
