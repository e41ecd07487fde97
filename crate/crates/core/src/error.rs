//! Error types shared by every module.

use alloc::string::String;
use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Errors raised by the toolkit.
///
/// The variants map one-to-one onto the error classes of the command line
/// front end (parse, precondition, capability, tolerance-unmet, internal).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Vectors/matrices of incompatible dimensions.
    DimensionMismatch { expected: usize, got: usize },
    /// An element whose parts do not fit together (e.g. re/im length mismatch).
    MalformedElement(String),
    /// Invalid input data (bad scalar literal, inconsistent mode, NaN, ...).
    Parse(String),
    /// A documented precondition of an operation does not hold.
    Precondition(String),
    /// The request is outside what this implementation supports
    /// (enumeration caps, matrix cones where polyhedral data is required, ...).
    Capability(String),
    /// A certified interval could not be tightened to the requested tolerance
    /// within the refinement budget. The partial result is still valid.
    ToleranceUnmet(String),
    /// An internal invariant failed; indicates a bug, never bad input.
    Internal(String),
}

impl Error {
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
    pub fn capability(msg: impl Into<String>) -> Self {
        Error::Capability(msg.into())
    }
    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
    pub fn malformed(msg: impl Into<String>) -> Self {
        Error::MalformedElement(msg.into())
    }

    /// Dimension check helper used all over the crate.
    pub fn check_dim(expected: usize, got: usize) -> Result<()> {
        if expected == got {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected, got })
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::MalformedElement(m) => write!(f, "malformed element: {m}"),
            Error::Parse(m) => write!(f, "parse error: {m}"),
            Error::Precondition(m) => write!(f, "precondition violated: {m}"),
            Error::Capability(m) => write!(f, "unsupported: {m}"),
            Error::ToleranceUnmet(m) => write!(f, "tolerance not met: {m}"),
            Error::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
