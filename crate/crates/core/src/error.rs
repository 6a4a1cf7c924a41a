use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::complex::Simplex;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input that does not describe a simplex (empty, repeated vertex, ...).
    Malformed(String),
    /// Parameters outside the domain of an operation.
    Domain(String),
    /// Simplices that were expected to belong to a complex but do not.
    NotInComplex(Vec<Simplex>),
    /// A function on simplices that violates the Forman conditions.
    NotForman { simplex: Simplex, reason: String },
    /// An exponential construction hit its configured cap.
    Budget {
        resource: &'static str,
        limit: usize,
        reached: usize,
    },
}

impl Error {
    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Malformed(_) => "malformed",
            Error::Domain(_) => "domain",
            Error::NotInComplex(_) => "not_in_complex",
            Error::NotForman { .. } => "not_forman",
            Error::Budget { .. } => "budget",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Malformed(msg) => write!(f, "malformed input: {msg}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::NotInComplex(offenders) => {
                write!(f, "simplices not in the complex:")?;
                for s in offenders {
                    write!(f, " {s}")?;
                }
                Ok(())
            }
            Error::NotForman { simplex, reason } => {
                write!(f, "not a Forman discrete Morse function at {simplex}: {reason}")
            }
            Error::Budget {
                resource,
                limit,
                reached,
            } => write!(f, "{resource} budget of {limit} exceeded (reached {reached})"),
        }
    }
}

impl core::error::Error for Error {}
