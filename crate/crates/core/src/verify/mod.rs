//! Verification harness: exact finite-n suites, numeric q-series and
//! classical suites, and the kernel lemma suite.

use std::collections::BTreeMap;
use std::time::Instant;

use rug::Rational;
use serde::{Deserialize, Serialize};

pub mod classical;
pub mod exact;
pub mod lemmas;
pub mod qseries;

pub use classical::{verify_classical, verify_classical_identity, ClassicalIdentity, ClassicalSum};
pub use exact::{random_compositions, random_suite, structured_suite, verify_family, verify_mhs};
pub use lemmas::lemma_suite;
pub use qseries::{composed_identity, verify_q_identity, verify_qmzsv, QIdentity, QSeries, QTerm};

/// Default seed for randomized suites.
pub const DEFAULT_SEED: u64 = 0x5eed_2c21;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    ExactPass,
    NumericPass,
    Fail,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailKind {
    Rigorous,
    Heuristic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub case: String,
    pub family: Option<String>,
    pub params: BTreeMap<String, i64>,
    pub q: Vec<String>,
    pub n_range: Option<[u64; 2]>,
    pub status: Status,
    pub residuals: Vec<String>,
    pub discrepancy: Option<f64>,
    pub tail_bound: Option<f64>,
    pub tail_kind: Option<TailKind>,
    pub seed: Option<u64>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub(crate) fn new(case: impl Into<String>) -> Self {
        Self {
            case: case.into(),
            family: None,
            params: BTreeMap::new(),
            q: Vec::new(),
            n_range: None,
            status: Status::Fail,
            residuals: Vec::new(),
            discrepancy: None,
            tail_bound: None,
            tail_kind: None,
            seed: None,
            elapsed_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    /// Marks exact pass iff every residual is `"0"`.
    pub(crate) fn finish_exact(mut self, start: Instant) -> Self {
        self.status = if self.residuals.iter().all(|r| r == "0") {
            Status::ExactPass
        } else {
            Status::Fail
        };
        self.elapsed_ms = start.elapsed().as_millis() as u64;
        self
    }

    pub(crate) fn with_params<I, K>(mut self, params: I) -> Self
    where
        I: IntoIterator<Item = (K, i64)>,
        K: Into<String>,
    {
        self.params.extend(params.into_iter().map(|(k, v)| (k.into(), v)));
        self
    }
}

/// Runs `f` on a rayon pool capped by `QZETA_THREADS` when set.
pub fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    let threads = std::env::var("QZETA_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0);
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(|p| p.install(f))
            .unwrap_or_else(|_| panic!("cannot build a pool of {n} threads")),
        None => f(),
    }
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64()
}
