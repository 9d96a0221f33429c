//! Failure classes and their exit codes.

use std::fmt::Display;
use std::path::Path;

use dgl_core::argue::ArgError;
use dgl_core::chargen::{GenError, ValidateError};
use dgl_core::check::{CheckError, EnvError};
use dgl_core::graph::GraphError;
use dgl_core::ground::GroundError;
use dgl_core::syntax::ParseError;

/// Some validation case disagreed with the semantics.
pub const VALIDATION_FAILED: u8 = 1;
/// Unreadable or malformed input.
pub const PARSE: u8 = 2;
/// Well-formed input that does not make sense (unknown symbols, arity errors).
pub const SEMANTIC: u8 = 3;
/// A graph that is not a valid argumentation model.
pub const INVARIANT: u8 = 4;
/// A size bound was exceeded.
pub const BOUND: u8 = 5;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, message: impl Display) -> Self {
        CliError {
            code,
            message: message.to_string(),
        }
    }

    pub fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::new(PARSE, format!("{}: {e}", path.display()))
    }

    pub fn in_file(path: &Path, e: impl Display, code: u8) -> Self {
        CliError::new(code, format!("{}: {e}", path.display()))
    }
}

impl From<CheckError> for CliError {
    fn from(e: CheckError) -> Self {
        CliError::new(SEMANTIC, e)
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::new(PARSE, e)
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::new(PARSE, e)
    }
}

impl From<EnvError> for CliError {
    fn from(e: EnvError) -> Self {
        let code = match e {
            EnvError::Json(_) | EnvError::Graph(..) | EnvError::Literal(..) => PARSE,
            EnvError::Term(..) | EnvError::Interp(_) | EnvError::Duplicate(_) => SEMANTIC,
        };
        CliError::new(code, e)
    }
}

impl From<ArgError> for CliError {
    fn from(e: ArgError) -> Self {
        let code = match e {
            ArgError::Invalid(_) => INVARIANT,
            ArgError::UnknownNode(_) => SEMANTIC,
            ArgError::BoundExceeded { .. } => BOUND,
        };
        CliError::new(code, e)
    }
}

impl From<GenError> for CliError {
    fn from(e: GenError) -> Self {
        let code = match e {
            GenError::TooLarge(_) => BOUND,
            _ => SEMANTIC,
        };
        CliError::new(code, e)
    }
}

impl From<GroundError> for CliError {
    fn from(e: GroundError) -> Self {
        match e {
            GroundError::Check(e) => e.into(),
            GroundError::TooLarge(_) => CliError::new(BOUND, e),
        }
    }
}

impl From<ValidateError> for CliError {
    fn from(e: ValidateError) -> Self {
        match e {
            ValidateError::Arg(e) => e.into(),
            ValidateError::Gen(e) => e.into(),
            ValidateError::Check(e) => e.into(),
        }
    }
}
