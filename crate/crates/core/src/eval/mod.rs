//! Evaluators for finite and infinite sums.

pub mod classical;
pub mod finite;
pub mod series;

pub use classical::{classical_zeta, ClassicalValue, Neumaier};
pub use finite::{mhs, mhs_upto, mollified_mhs, mollified_mhs_upto};
pub use series::{frakz, q_zeta, Approx, SeriesConfig, SeriesValue, Truncation};
