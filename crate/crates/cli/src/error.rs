use std::fmt;

use ore_curvature::format::ParseError;
use ore_curvature::Error;

pub const EXIT_INVARIANT: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_PRECONDITION: u8 = 3;
pub const EXIT_RESOURCE: u8 = 4;
pub const EXIT_INTERNAL: u8 = 5;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        CliError { code, message: message.into() }
    }

    pub fn precondition(message: impl Into<String>) -> Self {
        Self::new(EXIT_PRECONDITION, message)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::PrimeTooLarge { .. } => EXIT_RESOURCE,
        Error::NotCentral | Error::Internal(_) | Error::Reconstruction(_) | Error::PrecisionContract(_) => EXIT_INTERNAL,
        _ => EXIT_PRECONDITION,
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::new(exit_code(&e), e.to_string())
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::new(EXIT_PARSE, format!("parse error at {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
