//! Truncated infinite q-series with rigorous tail bounds.

use std::ops::{Add, Mul, Neg, Sub};

use rug::Rational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::finite::{cumulative, mollified_factor, plain_factor};
use crate::index::{Shift, SignedString};
use crate::qarith::QContext;
use crate::triple::MollifierTriple;

/// How far to sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Truncation {
    /// Sum the outer index up to a fixed `K`.
    Fixed(u64),
    /// Choose the smallest `K` whose tail bound is at most `epsilon`.
    Epsilon(Rational),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesConfig {
    pub truncation: Truncation,
    /// Classical sums only: attach the heuristic tail estimate.
    pub tail_estimate: bool,
}

impl SeriesConfig {
    pub fn fixed(k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("cutoff K must be at least 1".into()));
        }
        Ok(Self {
            truncation: Truncation::Fixed(k),
            tail_estimate: true,
        })
    }

    pub fn epsilon(eps: Rational) -> Result<Self> {
        if eps <= 0 {
            return Err(Error::InvalidParameter(format!("epsilon must be positive, got {eps}")));
        }
        Ok(Self {
            truncation: Truncation::Epsilon(eps),
            tail_estimate: true,
        })
    }
}

/// A partial sum together with a bound on `|true value - value|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesValue {
    pub value: Rational,
    pub tail_bound: Rational,
    pub cutoff: u64,
}

/// An exact rational with an error radius, closed under ring operations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Approx {
    #[serde(with = "crate::serde_rational")]
    pub value: Rational,
    #[serde(with = "crate::serde_rational")]
    pub bound: Rational,
}

impl Approx {
    pub fn exact(value: Rational) -> Self {
        Self {
            value,
            bound: Rational::new(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            value: Rational::from(&self.value * c),
            bound: Rational::from(&self.bound * c).abs(),
        }
    }
}

impl From<SeriesValue> for Approx {
    fn from(v: SeriesValue) -> Self {
        Self {
            value: v.value,
            bound: v.tail_bound,
        }
    }
}

impl Add for Approx {
    type Output = Approx;
    fn add(self, o: Approx) -> Approx {
        Approx {
            value: self.value + o.value,
            bound: self.bound + o.bound,
        }
    }
}

impl Sub for Approx {
    type Output = Approx;
    fn sub(self, o: Approx) -> Approx {
        Approx {
            value: self.value - o.value,
            bound: self.bound + o.bound,
        }
    }
}

impl Neg for Approx {
    type Output = Approx;
    fn neg(self) -> Approx {
        Approx {
            value: -self.value,
            bound: self.bound,
        }
    }
}

impl Mul for Approx {
    type Output = Approx;
    fn mul(self, o: Approx) -> Approx {
        let bound = Rational::from(self.value.abs_ref()) * &o.bound
            + Rational::from(o.value.abs_ref()) * &self.bound
            + Rational::from(&self.bound * &o.bound);
        Approx {
            value: self.value * o.value,
            bound,
        }
    }
}

/// Tail of a depth-`m` q-zeta (plain or star) beyond outer index `K`:
/// `(q/(1-q))^{m-1} q^{K+1}/(1-q)`.
pub fn q_zeta_tail_bound(depth: usize, cutoff: u64, ctx: &QContext) -> Rational {
    if depth == 0 {
        return Rational::new();
    }
    let one_minus_q = Rational::from(1) - ctx.q();
    let inner = Rational::from(ctx.q() / &one_minus_q);
    let mut b = ctx.pow(cutoff as i64 + 1) / &one_minus_q;
    for _ in 1..depth {
        b *= &inner;
    }
    b
}

/// Tail of `𝔷[T]` beyond outer index `K`, or `None` if the geometric ratio
/// used by the bound is not yet below one at this `K`.
///
/// Each term with outer index `k` has modulus at most
/// `2^m q^{k(k-1)/2 + (t1 - e) k}` where `e` counts integer `r_j <= 0`, and
/// there are at most `k^{m-1}` inner tuples.
pub fn frakz_tail_bound(triple: &MollifierTriple, cutoff: u64, ctx: &QContext) -> Option<Rational> {
    let m = triple.len();
    if m == 0 {
        return Some(Rational::new());
    }
    let e = triple
        .r()
        .iter()
        .filter(|r| matches!(r, Shift::Int(v) if *v <= 0))
        .count() as i64;
    let lin = i64::from(triple.t()[0]) - e;
    let k = cutoff as i64 + 1;
    let ratio_exp = k + lin;
    if ratio_exp < 1 {
        return None;
    }
    let growth = Rational::from((k + 1, k));
    let mut rho = ctx.pow(ratio_exp);
    let mut b = Rational::from(1u32) << (m as u32);
    b *= ctx.pow(k * (k - 1) / 2 + lin * k);
    for _ in 1..m {
        rho *= &growth;
        b *= k;
    }
    if rho >= 1 {
        return None;
    }
    Some(b / (Rational::from(1) - rho))
}

fn choose_cutoff<F>(cfg: &SeriesConfig, start: u64, bound: F) -> Result<(u64, Rational)>
where
    F: Fn(u64) -> Option<Rational>,
{
    match &cfg.truncation {
        Truncation::Fixed(k) => {
            let b = bound(*k).ok_or_else(|| {
                Error::InvalidParameter(format!("cutoff K = {k} too small for a rigorous tail bound"))
            })?;
            Ok((*k, b))
        }
        Truncation::Epsilon(eps) => {
            let mut k = start.max(1);
            loop {
                if let Some(b) = bound(k) {
                    if b <= *eps {
                        return Ok((k, b));
                    }
                }
                k += 1;
            }
        }
    }
}

/// `ζ[s]` or `ζ*[s]` at rational `q`, truncated with a rigorous bound.
pub fn q_zeta(s: &SignedString, ctx: &QContext, cfg: &SeriesConfig, star: bool) -> Result<SeriesValue> {
    let m = s.depth();
    let (cutoff, tail_bound) = choose_cutoff(cfg, m as u64, |k| Some(q_zeta_tail_bound(m, k, ctx)))?;
    let e = s.entries();
    let value = cumulative(m, cutoff, star, |j, k| plain_factor(ctx, e[j], k))
        .pop()
        .unwrap();
    Ok(SeriesValue {
        value,
        tail_bound,
        cutoff,
    })
}

/// `𝔷[s; t; r]`, the mollified companion of `ζ[s]`.
pub fn frakz(triple: &MollifierTriple, ctx: &QContext, cfg: &SeriesConfig) -> Result<SeriesValue> {
    if !triple.is_admissible() {
        let r: Vec<String> = triple.r().iter().map(|x| x.to_string()).collect();
        return Err(Error::DivergentMollified(format!("({})", r.join(","))));
    }
    let m = triple.len();
    let (cutoff, tail_bound) = choose_cutoff(cfg, m as u64, |k| frakz_tail_bound(triple, k, ctx))?;
    let slots: Vec<_> = triple.slots().collect();
    let value = cumulative(m, cutoff, false, |j, k| {
        let (s, t, r) = slots[j];
        mollified_factor(ctx, s, t, r, k)
    })
    .pop()
    .unwrap();
    Ok(SeriesValue {
        value,
        tail_bound,
        cutoff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::parse_tolerance;

    fn half() -> QContext {
        QContext::from_ratio(1, 2).unwrap()
    }

    fn eps(s: &str) -> SeriesConfig {
        SeriesConfig::epsilon(parse_tolerance(s).unwrap()).unwrap()
    }

    #[test]
    fn empty_values_are_one() {
        let ctx = half();
        let v = q_zeta(&SignedString::empty(), &ctx, &eps("1e-10"), true).unwrap();
        assert_eq!(v.value, 1);
        assert_eq!(v.tail_bound, 0);
        let z = frakz(&MollifierTriple::empty(), &ctx, &eps("1e-10")).unwrap();
        assert_eq!(z.value, 1);
    }

    #[test]
    fn epsilon_meets_bound_and_doubling_stays_inside() {
        let ctx = half();
        let s = SignedString::from_magnitudes(&[2]);
        let v = q_zeta(&s, &ctx, &eps("1e-30"), true).unwrap();
        assert!(v.tail_bound <= parse_tolerance("1e-30").unwrap());
        let w = q_zeta(&s, &ctx, &SeriesConfig::fixed(2 * v.cutoff).unwrap(), true).unwrap();
        assert!(Rational::from(&w.value - &v.value).abs() <= v.tail_bound);
    }

    #[test]
    fn inadmissible_triple_is_rejected() {
        let ctx = half();
        let t: MollifierTriple = "[2; 0; theta]".parse().unwrap();
        assert!(matches!(frakz(&t, &ctx, &eps("1e-5")), Err(Error::DivergentMollified(_))));
    }

    #[test]
    fn star_twos_equal_negated_mollified_single() {
        // ζ*[{2}^2] = -𝔷[-4; 2; 1]
        let ctx = half();
        let lhs = q_zeta(&SignedString::from_magnitudes(&[2, 2]), &ctx, &eps("1e-25"), true).unwrap();
        let t: MollifierTriple = "[-4; 2; 1]".parse().unwrap();
        let rhs = frakz(&t, &ctx, &eps("1e-25")).unwrap();
        let diff = Rational::from(&lhs.value + &rhs.value).abs();
        assert!(diff <= lhs.tail_bound + rhs.tail_bound);
    }

    #[test]
    fn approx_product_bound_covers_truth() {
        let a = Approx {
            value: Rational::from((1, 2)),
            bound: Rational::from((1, 100)),
        };
        let b = Approx {
            value: Rational::from((-3, 1)),
            bound: Rational::from((1, 10)),
        };
        let p = a.clone() * b.clone();
        let worst = Rational::from((51, 100)) * Rational::from((-31, 10));
        assert!(Rational::from(&worst - &p.value).abs() <= p.bound);
    }
}
