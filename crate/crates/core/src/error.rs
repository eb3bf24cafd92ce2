//! Error type shared by the fallible entry points of the crate.
//!
//! Most of the library works on data it constructed itself and upholds its
//! invariants with plain assertions.  `Error` is reserved for the boundaries:
//! parsing user input, deserializing vectors, and the handful of operations
//! whose preconditions reflect mathematical facts that callers might get wrong
//! (bar-antisymmetry of a Gaussian-split argument, exact divisibility).

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input failed to parse (CLI syntax, JSON payloads).
    Parse(String),
    /// A precondition on the arguments does not hold.
    Domain(String),
    /// An internal consistency check failed.  Seeing this means a bug, not bad input.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
