//! Error type shared across the library.

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Unified error type for the library.
///
/// Variants are grouped by what the caller can do about them: fix the
/// arguments (`Domain`, `Parse`), relax the budget (`Infeasible`), raise a
/// work cap or switch to sampling (`WorkCap`), or treat the failure as a
/// negative result that still carries data (`SamplerExhausted`,
/// `ConstructionFailure`, `VerificationFailed`).
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Arguments outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A text artifact (design file, code file, config file) did not conform
    /// to its format. `line` is 1-based.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// The requested budget cannot be met by any strategy.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// The operation would exceed a work cap and sampling was not requested.
    #[error("work cap exceeded: {0}")]
    WorkCap(String),

    /// The randomized design sampler used up its attempt budget without
    /// producing a design that passed verification.
    #[error("sampler exhausted after {attempts} attempts: {last_failure}")]
    SamplerExhausted { attempts: u32, last_failure: String },

    /// A deterministic construction could not reach its target; the message
    /// reports the best candidate found.
    #[error("construction failure: {0}")]
    ConstructionFailure(String),

    /// A design failed a property check that the caller required to hold.
    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Shorthand for a `Domain` error from format arguments.
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Shorthand for a `Parse` error with a 1-based line number.
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
