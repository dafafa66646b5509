//! Singular braid monoids and their desingularization into braid group rings.
//!
//! The crate decides equality in `B_n` (Garside normal form) and in `SB_n`
//! (decomposition into a trace over the vertices `α σ_i² α^{-1}` times a braid),
//! computes the desingularization map into `Z[B_n]` exactly, and ships
//! verification suites that check the underlying identities at small scale.

pub mod braid;
pub mod cli;
pub mod error;
pub mod free;
pub mod parse;
pub mod pure;
pub mod ring;
pub mod singular;
pub mod trace;
pub mod verify;

pub use error::{Error, Result};
