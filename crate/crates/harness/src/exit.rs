//! Process exit codes.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExitCode {
    Valid = 0,
    InvalidWorld = 1,
    InvalidConfiguration = 2,
    PlannerError = 3,
    ValidationFailure = 4,
    /// Unreadable files, malformed JSON, bad flags.
    Usage = 5,
}

impl ExitCode {
    pub fn code(self) -> i32 {
        self as i32
    }

    pub fn label(self) -> &'static str {
        match self {
            ExitCode::Valid => "valid",
            ExitCode::InvalidWorld => "invalid_world",
            ExitCode::InvalidConfiguration => "invalid_configuration",
            ExitCode::PlannerError => "planner_error",
            ExitCode::ValidationFailure => "validation_failure",
            ExitCode::Usage => "usage_error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub code: ExitCode,
    pub message: String,
}

impl Failure {
    pub fn new(code: ExitCode, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code.label(), self.message)
    }
}

impl std::error::Error for Failure {}
