//! Prime splitting in number fields, Dedekind zeta evaluation, and
//! empirical verification of completely-split-prime densities.

pub mod arith;
pub mod error;
pub mod characters;
pub mod config;
pub mod density;
pub mod ffpoly;
pub mod numfield;
pub mod sieve;
pub mod splitting;
pub mod verify;
pub mod zetaseries;

pub use error::{Error, Result};
