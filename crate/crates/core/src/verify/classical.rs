//! Floating-point checks of classical Euler-sum identities at a fixed cutoff.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;

use super::{Status, TailKind, VerificationReport};
use crate::error::{Error, Result};
use crate::eval::{classical_zeta, Neumaier, SeriesConfig};
use crate::index::SignedString;
use crate::rules::{classical_expand, Composition};

/// `coeff · ζ(index)` or `coeff · ζ*(index)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalSum {
    pub coeff: f64,
    pub index: SignedString,
    pub star: bool,
}

/// `Σ lhs = Σ rhs` over classical sums.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalIdentity {
    pub name: String,
    pub params: BTreeMap<String, i64>,
    pub lhs: Vec<ClassicalSum>,
    pub rhs: Vec<ClassicalSum>,
}

impl ClassicalIdentity {
    /// `ζ*(s) = δ Σ 2^{ℓ(p)} ζ(p)`.
    pub fn expansion(s: &Composition) -> Result<Self> {
        let rhs = classical_expand(s)?
            .into_iter()
            .map(|t| ClassicalSum {
                coeff: f64::from(t.sign) * t.coefficient as f64,
                index: t.index,
                star: false,
            })
            .collect();
        Ok(Self {
            name: s.to_string(),
            params: BTreeMap::new(),
            lhs: vec![ClassicalSum {
                coeff: 1.0,
                index: s.to_signed(),
                star: true,
            }],
            rhs,
        })
    }
}

/// Sums every series at cutoff `k` and compares the two sides. The reported
/// tail is the coefficient-weighted heuristic estimate, not a bound.
pub fn verify_classical_identity(id: &ClassicalIdentity, k: u64, tol: f64) -> Result<VerificationReport> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("tol must be positive".into()));
    }
    let start = Instant::now();
    let cfg = SeriesConfig::fixed(k)?;
    let eval = |terms: &[ClassicalSum]| -> Result<Vec<(f64, f64)>> {
        terms
            .par_iter()
            .map(|t| {
                let v = classical_zeta(&t.index, &cfg, t.star)?;
                Ok((t.coeff * v.value, t.coeff.abs() * v.tail_estimate.unwrap_or(0.0)))
            })
            .collect()
    };
    let (lhs, rhs) = (eval(&id.lhs)?, eval(&id.rhs)?);
    let mut diff = Neumaier::default();
    let mut tail = 0.0;
    for &(v, e) in &lhs {
        diff.add(v);
        tail += e;
    }
    for &(v, e) in &rhs {
        diff.add(-v);
        tail += e;
    }
    let d = diff.value();
    let mut r = VerificationReport::new(id.name.clone());
    r.family = Some("classical".into());
    r.params = id.params.clone();
    r.params.insert("K".into(), k as i64);
    r.residuals = vec![format!("{d:e}")];
    r.discrepancy = Some(d.abs());
    r.tail_bound = Some(tail);
    r.tail_kind = Some(TailKind::Heuristic);
    r.status = if d.abs() <= tol { Status::NumericPass } else { Status::Fail };
    r.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(r)
}

pub fn verify_classical(s: &Composition, k: u64, tol: f64) -> Result<VerificationReport> {
    verify_classical_identity(&ClassicalIdentity::expansion(s)?, k, tol)
}
