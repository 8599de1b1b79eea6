use thiserror::Error;

/// Failures raised by the exact routes and the brute-force oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An enumeration exceeded its configured budget. The partial count is
    /// discarded; callers must treat the case as skipped, never as a result.
    #[error("resource limit exceeded: {what} (limit {limit})")]
    Resource { what: String, limit: u64 },

    /// A non-terminating series did not reach the requested tolerance.
    #[error("series did not converge after {terms} terms")]
    Convergence { terms: u64 },

    /// A quantity that must be integral (or otherwise constrained) was not.
    /// This always signals an arithmetic bug.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
