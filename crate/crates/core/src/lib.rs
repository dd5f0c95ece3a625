//! Exact-arithmetic geometry of numbers.
//!
//! Every strict inequality in this crate is decided with exact rationals or
//! certified enclosures ([`exact::certified_compare`]); nothing is decided by
//! floating point. See the `examples/` directory for one runnable program per
//! capability.

pub mod body;
pub mod budget;
pub mod cli;
pub mod counting;
pub mod error;
pub mod exact;
pub mod figurate;
pub mod lattice;
pub(crate) mod linalg;
pub mod packing;
pub mod theorems;

pub use error::{Error, Result};
