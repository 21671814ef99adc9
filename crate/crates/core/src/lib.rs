//! Simulation library for Schensted insertion, the RSK correspondence, and the
//! Plancherel growth process, with the statistical machinery needed to check
//! the Poisson-type limit laws of bumping routes by Monte Carlo.
//!
//! Conventions used throughout: French convention, zero-based box coordinates
//! `(x, y)` = (column, row), row 0 at the bottom. A Young diagram is stored as
//! its weakly decreasing row lengths.

pub mod augmented;
pub mod bumping;
pub mod experiments;
pub mod parallel;
pub mod plancherel;
pub mod stats;
pub mod tableau;

use std::fmt;

/// Crate-wide error type. Invalid inputs are rejected, never panicked on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Row lengths not weakly decreasing, or rows/columns not increasing.
    InvalidShape(String),
    /// Exact duplicate entry fed to an insertion.
    DuplicateEntry,
    /// A box that is not an outer corner of the given diagram.
    NotAnOuterCorner { x: usize, y: usize },
    /// Tableau does not contain exactly one +infinity entry.
    InfinityCount(usize),
    /// Catch-all for out-of-domain arguments.
    InvalidArgument(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidShape(s) => write!(f, "invalid shape: {s}"),
            Error::DuplicateEntry => write!(f, "duplicate entry"),
            Error::NotAnOuterCorner { x, y } => {
                write!(f, "({x}, {y}) is not an outer corner")
            }
            Error::InfinityCount(n) => {
                write!(f, "expected exactly one +infinity entry, found {n}")
            }
            Error::InvalidArgument(s) => write!(f, "invalid argument: {s}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
