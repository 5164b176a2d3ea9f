use std::io;

use rnc_core::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("invalid input at {location}: {source}")]
    Invalid { location: String, source: CoreError },
    #[error(transparent)]
    Core(#[from] CoreError),
}

pub mod exit {
    pub const OK: u8 = 0;
    pub const FAILURE: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const PARSE: u8 = 3;
    pub const NOT_GENERIC: u8 = 4;
    pub const OBSTRUCTED: u8 = 5;
    pub const UNSUPPORTED: u8 = 6;
    pub const VERIFY_FAILED: u8 = 7;
}

fn core_kind(e: &CoreError) -> (&'static str, u8) {
    use CoreError::*;
    match e {
        NotGeneric { .. } | NotGenericMatrix { .. } | FundamentalLocus | ObstructionFails { .. } | RepeatedParameter(_) | Singular => {
            ("not_generic", exit::NOT_GENERIC)
        }
        Unsupported(_) => ("unsupported", exit::UNSUPPORTED),
        BadShape { .. } => ("bad_shape", exit::PARSE),
        BadDimension(_) | DimensionMismatch { .. } => ("bad_dimension", exit::PARSE),
        ZeroVector | DegenerateSpan | DegeneratePencil | ZeroForm | BothZero | ZeroParameter | InvalidCurve { .. } => {
            ("invalid_input", exit::PARSE)
        }
    }
}

impl CliError {
    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Parse { location: location.into(), message: message.into() }
    }

    pub fn invalid(location: impl Into<String>, source: CoreError) -> Self {
        CliError::Invalid { location: location.into(), source }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
            CliError::Parse { .. } => "parse",
            CliError::Invalid { source, .. } | CliError::Core(source) => core_kind(source).0,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Io { .. } => exit::FAILURE,
            CliError::Parse { .. } => exit::PARSE,
            CliError::Invalid { source, .. } | CliError::Core(source) => core_kind(source).1,
        }
    }

    pub fn location(&self) -> Option<&str> {
        match self {
            CliError::Parse { location, .. } | CliError::Invalid { location, .. } => Some(location),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn core_errors_map_to_distinct_codes() {
        let cases = [
            (CoreError::NotGeneric { stage: "s".into(), witness: "w".into() }, exit::NOT_GENERIC),
            (CoreError::Unsupported("x".into()), exit::UNSUPPORTED),
            (CoreError::ZeroVector, exit::PARSE),
            (CoreError::BadDimension(2), exit::PARSE),
        ];
        for (e, code) in cases {
            assert_eq!(CliError::from(e).exit_code(), code);
        }
        assert_eq!(CliError::Usage("u".into()).exit_code(), exit::USAGE);
    }
}
