// SPDX-License-Identifier: MIT OR Apache-2.0

use thiserror::Error;

/// Errors raised by the detectors, mechanisms and bound evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("observation {value} at index {index} is outside the model support")]
    InvalidObservation { index: usize, value: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("log-likelihood ratio has unbounded sensitivity; use delta > 0")]
    InfiniteSensitivity,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("window not ready: {consumed} of {needed} points consumed")]
    NotReady { needed: usize, consumed: usize },

    #[error("stream ended after {got} points, need at least {needed}")]
    InsufficientData { needed: usize, got: usize },

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("trial {trial} (epsilon index {epsilon_index}) failed: {source}")]
    Trial {
        epsilon_index: usize,
        trial: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Stable kebab-case name, used in CLI error lines.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidObservation { .. } => "invalid-observation",
            Error::InvalidParameter(_) => "invalid-parameter",
            Error::InvalidInput(_) => "invalid-input",
            Error::InfiniteSensitivity => "infinite-sensitivity",
            Error::Precondition(_) => "precondition",
            Error::NotReady { .. } => "not-ready",
            Error::InsufficientData { .. } => "insufficient-data",
            Error::Numeric(_) => "numeric-error",
            Error::Trial { source, .. } => source.name(),
        }
    }

    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
