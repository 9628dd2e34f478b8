use thiserror::Error;

use crate::program::ProgramError;

/// Failures of the reasoning engines on a well-formed program.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("argument budget exceeded: more than {0} arguments")]
    ArgumentBudget(usize),
    #[error("framework too large: {size} arguments, enumeration limit is {limit}")]
    FrameworkTooLarge { size: usize, limit: usize },
    #[error("priority missing for rule `{0}` under last-link ordering")]
    PriorityMissing(String),
    #[error("theory not simplified: {0}")]
    NotSimplified(String),
    #[error("unknown argument `{0}`")]
    UnknownArgument(String),
}

/// Either a load-time or an engine failure.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Program(#[from] ProgramError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}
