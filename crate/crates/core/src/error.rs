//! Error taxonomy shared by all modules.

use alloc::string::String;

/// Errors produced by generators, the dynamics engine, strategies, the
/// oracle and the matching verifier.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A family parameter is outside its validity range.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// The graph does not have the structure an operation requires
    /// (e.g. disconnected input to a distance computation).
    #[error("structural error: {0}")]
    Structure(String),

    /// An operation contract was violated (illegal move, bad placement, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    /// A strategy was asked to run on a topology it does not cover.
    #[error("strategy not applicable: {0}")]
    Applicability(String),

    /// A configurable resource bound would be exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

impl Error {
    pub(crate) fn parameter(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
    pub(crate) fn structure(msg: impl Into<String>) -> Self {
        Error::Structure(msg.into())
    }
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
    pub(crate) fn applicability(msg: impl Into<String>) -> Self {
        Error::Applicability(msg.into())
    }
    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
}
