use std::fmt;

use thiserror::Error;

/// Resource bounds that abort a computation instead of letting it hang.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    MaxOrder,
    MaxIdeals,
    MaxNorm,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bound::MaxOrder => "max-order",
            Bound::MaxIdeals => "max-ideals",
            Bound::MaxNorm => "max-norm",
        })
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("subset is not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("factor {index} is not a radical ideal")]
    NotRadical { index: usize },
    #[error("the unit ideal has no radical chain")]
    UnitIdeal,
    #[error("the zero ideal is not supported here")]
    ZeroIdeal,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("resource bound {bound} = {limit} exceeded")]
    Resource { bound: Bound, limit: u64 },
    #[error("norm {0} cannot be factored within the trial-division bound")]
    Unfactorable(u128),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Resource { .. } | Error::Unfactorable(_) | Error::Overflow(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Resource limits shared by the enumeration and factorization engines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_order: usize,
    pub max_ideals: usize,
    pub max_norm: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 4096,
            max_ideals: 1 << 20,
            max_norm: 1_000_000_000_000,
        }
    }
}

impl Limits {
    pub fn check_order(&self, order: usize) -> Result<()> {
        if order > self.max_order {
            return Err(Error::Resource {
                bound: Bound::MaxOrder,
                limit: self.max_order as u64,
            });
        }
        Ok(())
    }

    pub fn check_norm(&self, norm: u128) -> Result<()> {
        if norm > self.max_norm {
            return Err(Error::Resource {
                bound: Bound::MaxNorm,
                limit: self.max_norm as u64,
            });
        }
        Ok(())
    }
}
