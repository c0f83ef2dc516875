//! Exact finite-n checks of `H*_n[s] = δ Σ 𝓗_n[T]`.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rug::Rational;

use super::{VerificationReport, DEFAULT_SEED};
use crate::error::{Error, Result};
use crate::eval::{mhs_upto, mollified_mhs_upto};
use crate::expansion::expand;
use crate::qarith::QContext;
use crate::rules::{closed_pattern, compose, Composition, Family};
use crate::triple::PatternTriple;

/// `δ Σ_{T ∈ expand(P)} 𝓗_n[T]` for `n = 0..=n_max`.
pub fn expansion_upto(delta: i32, pattern: &PatternTriple, n_max: u64, ctx: &QContext) -> Vec<Rational> {
    let zero = || vec![Rational::new(); n_max as usize + 1];
    let mut total = expand(pattern)
        .par_iter()
        .map(|t| mollified_mhs_upto(t, n_max, ctx))
        .reduce(zero, |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        });
    if delta < 0 {
        for x in &mut total {
            *x = -std::mem::take(x);
        }
    }
    total
}

fn check_n_max(n_max: u64) -> Result<()> {
    if n_max == 0 {
        return Err(Error::InvalidParameter("n_max must be at least 1".into()));
    }
    Ok(())
}

fn residuals(s: &Composition, delta: i32, pattern: &PatternTriple, n_max: u64, q_list: &[Rational]) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for q in q_list {
        let ctx = QContext::new(q.clone())?;
        let lhs = mhs_upto(&s.to_signed(), n_max, &ctx, true);
        let rhs = expansion_upto(delta, pattern, n_max, &ctx);
        for n in 1..=n_max as usize {
            out.push(Rational::from(&lhs[n] - &rhs[n]).to_string());
        }
    }
    Ok(out)
}

fn base_report(case: String, n_max: u64, q_list: &[Rational]) -> VerificationReport {
    let mut r = VerificationReport::new(case);
    r.q = q_list.iter().map(|q| q.to_string()).collect();
    r.n_range = Some([1, n_max]);
    r
}

/// Checks the composed expansion of `s` exactly for `1 <= n <= n_max` at every `q`.
pub fn verify_mhs(s: &Composition, n_max: u64, q_list: &[Rational]) -> Result<VerificationReport> {
    check_n_max(n_max)?;
    let start = Instant::now();
    let (delta, pattern) = compose(s)?;
    let mut report = base_report(s.to_string(), n_max, q_list);
    report.family = Some("compose".into());
    report.residuals = residuals(s, delta, &pattern, n_max, q_list)?;
    Ok(report.finish_exact(start))
}

/// Checks a closed-form family pattern exactly against `H*_n` of its composition.
pub fn verify_family(family: &Family, n_max: u64, q_list: &[Rational]) -> Result<VerificationReport> {
    check_n_max(n_max)?;
    let start = Instant::now();
    let s = family.composition()?;
    let (delta, pattern) = closed_pattern(family)?;
    let mut report = base_report(s.to_string(), n_max, q_list);
    report.family = Some(family.name().into());
    report.residuals = residuals(&s, delta, &pattern, n_max, q_list)?;
    Ok(report.finish_exact(start))
}

/// `count` compositions with depth in `1..=max_depth` and weight at most
/// `max_weight`, drawn from a seeded ChaCha stream.
pub fn random_compositions(seed: u64, count: usize, max_depth: usize, max_weight: u64) -> Vec<Composition> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let depth = rng.gen_range(1..=max_depth);
        let entries: Vec<u32> = (0..depth).map(|_| rng.gen_range(1..=5)).collect();
        if entries.iter().map(|&x| u64::from(x)).sum::<u64>() <= max_weight {
            out.push(Composition::new(entries).unwrap());
        }
    }
    out
}

/// [`verify_mhs`] over randomly drawn compositions (depth <= 6, weight <= 12).
pub fn random_suite(seed: Option<u64>, count: usize, n_max: u64, q_list: &[Rational]) -> Result<Vec<VerificationReport>> {
    let seed = seed.unwrap_or(DEFAULT_SEED);
    random_compositions(seed, count, 6, 12)
        .par_iter()
        .map(|s| {
            let mut r = verify_mhs(s, n_max, q_list)?;
            r.family = Some("random".into());
            r.seed = Some(seed);
            Ok(r)
        })
        .collect()
}

/// [`verify_family`] over every family instance of weight at most `max_weight`.
pub fn structured_suite(max_weight: u32, n_max: u64, q_list: &[Rational]) -> Result<Vec<VerificationReport>> {
    Family::enumerate(max_weight)
        .par_iter()
        .map(|f| verify_family(f, n_max, q_list))
        .collect()
}
