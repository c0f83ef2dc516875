//! q-analogs of multiple harmonic sums and multiple zeta star values.
//!
//! The crate builds mollifier-triple expansions of `H*_n[s]` for any
//! composition `s`, evaluates both sides exactly at rational `q`, and checks
//! the infinite-sum limits numerically with explicit truncation bounds.

pub mod error;
pub mod eval;
pub mod expansion;
pub mod index;
pub mod qarith;
pub mod rules;
pub(crate) mod serde_rational;
pub mod triple;
pub mod verify;

pub use error::{Error, Result};
pub use index::{boxplus, delta, oplus, q_exponent, Shift, SignedIndex, SignedString};
pub use qarith::QContext;
pub use rug::Rational;
pub use triple::{MollifierTriple, PatternTriple};
