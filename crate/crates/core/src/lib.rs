//! Radical factorization of ideals and SSP decisions for finite commutative rings.

pub mod catalog;
pub mod cli;
pub mod desc;
pub mod elements;
pub mod error;
pub mod finideal;
pub mod finring;
pub mod polychain;
pub mod quadring;
pub mod sspengine;
pub mod zpicompose;

pub use elements::ElementSet;
pub use error::{Bound, Error, Limits, Result};
pub use finideal::FinIdeal;
pub use finring::{FinModule, FinRing, LocalFactor, SpecialPrimary};
