//! Numeric checks of q-series identities with rigorous truncation bounds.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use rug::Rational;

use super::{rational_to_f64, Status, TailKind, VerificationReport};
use crate::error::{Error, Result};
use crate::eval::{frakz, q_zeta, Approx, SeriesConfig};
use crate::expansion::expand;
use crate::index::SignedString;
use crate::qarith::QContext;
use crate::rules::{compose, Composition};
use crate::triple::MollifierTriple;

/// An infinite q-series appearing in an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QSeries {
    Zeta(SignedString),
    ZetaStar(SignedString),
    Frakz(MollifierTriple),
}

impl QSeries {
    pub fn evaluate(&self, ctx: &QContext, cfg: &SeriesConfig) -> Result<Approx> {
        Ok(match self {
            QSeries::Zeta(s) => q_zeta(s, ctx, cfg, false)?.into(),
            QSeries::ZetaStar(s) => q_zeta(s, ctx, cfg, true)?.into(),
            QSeries::Frakz(t) => frakz(t, ctx, cfg)?.into(),
        })
    }
}

/// `coeff · Π factors`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QTerm {
    pub coeff: Rational,
    pub factors: Vec<QSeries>,
}

impl QTerm {
    pub fn single(coeff: i64, series: QSeries) -> Self {
        Self {
            coeff: Rational::from(coeff),
            factors: vec![series],
        }
    }
}

/// `Σ lhs = Σ rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QIdentity {
    pub name: String,
    pub params: BTreeMap<String, i64>,
    pub lhs: Vec<QTerm>,
    pub rhs: Vec<QTerm>,
}

impl QIdentity {
    fn new(name: &str, params: &[(&str, u32)], lhs: Vec<QTerm>, rhs: Vec<QTerm>) -> Self {
        Self {
            name: name.into(),
            params: params.iter().map(|&(k, v)| (k.to_string(), i64::from(v))).collect(),
            lhs,
            rhs,
        }
    }

    fn series_count(&self) -> usize {
        self.lhs.iter().chain(&self.rhs).map(|t| t.factors.len()).sum()
    }

    /// `Σ lhs - Σ rhs` with every series truncated at bound `eps_each`.
    pub fn difference(&self, ctx: &QContext, eps_each: &Rational) -> Result<Approx> {
        let cfg = SeriesConfig::epsilon(eps_each.clone())?;
        let side = |terms: &[QTerm]| -> Result<Approx> {
            let vals: Vec<Approx> = terms
                .par_iter()
                .map(|t| {
                    let mut acc = Approx::exact(t.coeff.clone());
                    for f in &t.factors {
                        acc = acc * f.evaluate(ctx, &cfg)?;
                    }
                    Ok(acc)
                })
                .collect::<Result<_>>()?;
            Ok(vals.into_iter().fold(Approx::exact(Rational::new()), |a, b| a + b))
        };
        Ok(side(&self.lhs)? - side(&self.rhs)?)
    }
}

fn frakz_term(coeff: i64, triple: &str) -> QTerm {
    QTerm::single(coeff, QSeries::Frakz(triple.parse().expect("well-formed triple")))
}

fn zeta_star(s: &Composition) -> QSeries {
    QSeries::ZetaStar(s.to_signed())
}

fn comp(s: String) -> Composition {
    s.parse().expect("well-formed composition")
}

/// Checks `identity` to within `eps`: every series is truncated so that the
/// combined rigorous bound is at most `eps/2`, and the identity passes iff the
/// truncated sides differ by at most `eps`.
pub fn verify_q_identity(identity: &QIdentity, ctx: &QContext, eps: &Rational) -> Result<VerificationReport> {
    if *eps <= 0 {
        return Err(Error::InvalidParameter("eps must be positive".into()));
    }
    let start = Instant::now();
    let half = Rational::from(eps / 2u32);
    let mut eps_each = Rational::from(&half / identity.series_count().max(1) as u64);
    let diff = loop {
        let d = identity.difference(ctx, &eps_each)?;
        if d.bound <= half {
            break d;
        }
        eps_each /= 16u32;
    };
    let mut r = VerificationReport::new(identity.name.clone());
    r.params = identity.params.clone();
    r.q = vec![ctx.q().to_string()];
    let abs = Rational::from(diff.value.abs_ref());
    r.discrepancy = Some(rational_to_f64(&abs));
    r.residuals = vec![format!("{:e}", rational_to_f64(&diff.value))];
    r.tail_bound = Some(rational_to_f64(&diff.bound));
    r.tail_kind = Some(TailKind::Rigorous);
    r.status = if abs <= *eps {
        Status::NumericPass
    } else {
        Status::Fail
    };
    r.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(r)
}

/// `ζ*[s] = δ Σ_{T ∈ expand(P)} 𝔷[T]` for `(δ, P) = compose(s)`.
pub fn composed_identity(s: &Composition) -> Result<QIdentity> {
    if !s.is_zeta_admissible() {
        return Err(Error::NotZetaAdmissible(s.to_string()));
    }
    let (delta, pattern) = compose(s)?;
    let rhs = expand(&pattern)
        .into_iter()
        .map(|t| QTerm::single(i64::from(delta), QSeries::Frakz(t)))
        .collect();
    Ok(QIdentity {
        name: s.to_string(),
        params: BTreeMap::new(),
        lhs: vec![QTerm::single(1, zeta_star(s))],
        rhs,
    })
}

pub fn verify_qmzsv(s: &Composition, ctx: &QContext, eps: &Rational) -> Result<VerificationReport> {
    let mut r = verify_q_identity(&composed_identity(s)?, ctx, eps)?;
    r.family = Some("compose".into());
    Ok(r)
}

/// `ζ*[{2}^b,3,{2}^a,1] = 𝔷[2a+2b+4; a+b+2; 2] + 𝔷[-(2b+2),-(2a+2); b+1,a+1; 1,1]`.
pub fn two_term_identity(a: u32, b: u32) -> QIdentity {
    let s = comp(format!("2^{b},3,2^{a},1"));
    QIdentity::new(
        "two-term",
        &[("a", a), ("b", b)],
        vec![QTerm::single(1, zeta_star(&s))],
        vec![
            frakz_term(1, &format!("[{}; {}; 2]", 2 * a + 2 * b + 4, a + b + 2)),
            frakz_term(1, &format!("[-{},-{}; {},{}; 1,1]", 2 * b + 2, 2 * a + 2, b + 1, a + 1)),
        ],
    )
}

/// `ζ*[{2}^{a0},1,{2}^b,3,{2}^{a1},1]` as four mollified terms.
pub fn four_term_identity(a0: u32, b: u32, a1: u32) -> QIdentity {
    let s = comp(format!("2^{a0},1,2^{b},3,2^{a1},1"));
    let rhs = [
        format!("[{}; {}; 2]", 2 * (a0 + b + a1) + 5, a0 + b + a1 + 3),
        format!("[{},{}; {},{}; 2,0]", 2 * a0 + 1, 2 * a1 + 2 * b + 4, a0 + 1, a1 + b + 2),
        format!("[-{},-{}; {},{}; 1,1]", 2 * a0 + 2 * b + 3, 2 * a1 + 2, a0 + b + 2, a1 + 1),
        format!(
            "[{},-{},-{}; {},{},{}; 2,-1,1]",
            2 * a0 + 1,
            2 * b + 2,
            2 * a1 + 2,
            a0 + 1,
            b + 1,
            a1 + 1
        ),
    ];
    QIdentity::new(
        "four-term",
        &[("a0", a0), ("b", b), ("a1", a1)],
        vec![QTerm::single(1, zeta_star(&s))],
        rhs.iter().map(|t| frakz_term(1, t)).collect(),
    )
}

/// `ζ*[{2}^b,3,{2}^{a1},1,{2}^{a2}]`, `a2 >= 1`, as minus four mollified terms.
pub fn trailing_twos_identity(b: u32, a1: u32, a2: u32) -> QIdentity {
    let s = comp(format!("2^{b},3,2^{a1},1,2^{a2}"));
    let rhs = [
        format!("[-{}; {}; 1]", 2 * a1 + 2 * b + 2 * a2 + 4, a1 + b + a2 + 2),
        format!("[-{},{}; {},{}; 1,theta]", 2 * b + 2, 2 * a1 + 2 * a2 + 2, b + 1, a1 + a2 + 1),
        format!("[{},-{}; {},{}; 2,-1]", 2 * a1 + 2 * b + 4, 2 * a2, a1 + b + 2, a2),
        format!(
            "[-{},-{},-{}; {},{},{}; 1,1,-1]",
            2 * b + 2,
            2 * a1 + 2,
            2 * a2,
            b + 1,
            a1 + 1,
            a2
        ),
    ];
    QIdentity::new(
        "trailing-twos",
        &[("b", b), ("a1", a1), ("a2", a2)],
        vec![QTerm::single(1, zeta_star(&s))],
        rhs.iter().map(|t| frakz_term(-1, t)).collect(),
    )
}

/// `ζ*[{2}^a,3,{2}^b,1] + ζ*[{2}^b,3,{2}^a,1]
///  = ζ*[{2}^{a+1}] ζ*[{2}^{b+1}] + (1-q) 𝔷[2a+2b+3; a+b+2; 2]`.
pub fn symmetric_identity(a: u32, b: u32, ctx: &QContext) -> QIdentity {
    let one_minus_q = Rational::from(1) - ctx.q();
    let mut frak = frakz_term(1, &format!("[{}; {}; 2]", 2 * a + 2 * b + 3, a + b + 2));
    frak.coeff = one_minus_q;
    QIdentity::new(
        "symmetric",
        &[("a", a), ("b", b)],
        vec![
            QTerm::single(1, zeta_star(&comp(format!("2^{a},3,2^{b},1")))),
            QTerm::single(1, zeta_star(&comp(format!("2^{b},3,2^{a},1")))),
        ],
        vec![
            QTerm {
                coeff: Rational::from(1),
                factors: vec![
                    zeta_star(&comp(format!("2^{}", a + 1))),
                    zeta_star(&comp(format!("2^{}", b + 1))),
                ],
            },
            frak,
        ],
    )
}

/// `ζ*[{2}^a,1,{2}^b,1,{2}^c,3,{2}^d,1]` as eight mollified terms.
pub fn eight_term_identity(a: u32, b: u32, c: u32, d: u32) -> QIdentity {
    let s = comp(format!("2^{a},1,2^{b},1,2^{c},3,2^{d},1"));
    let rhs = [
        format!("[{}; {}; 2]", 2 * (a + b + c + d) + 6, a + b + c + d + 4),
        format!("[{},{}; {},{}; 2,0]", 2 * a + 1, 2 * (b + c + d) + 5, a + 1, b + c + d + 3),
        format!("[{},{}; {},{}; 2,0]", 2 * (a + b) + 2, 2 * (c + d) + 4, a + b + 2, c + d + 2),
        format!("[-{},-{}; {},{}; 1,1]", 2 * (a + b + c) + 4, 2 * d + 2, a + b + c + 3, d + 1),
        format!(
            "[{},{},{}; {},{},{}; 2,0,0]",
            2 * a + 1,
            2 * b + 1,
            2 * (c + d) + 4,
            a + 1,
            b + 1,
            c + d + 2
        ),
        format!(
            "[{},-{},-{}; {},{},{}; 2,-1,1]",
            2 * a + 1,
            2 * (b + c) + 3,
            2 * d + 2,
            a + 1,
            b + c + 2,
            d + 1
        ),
        format!(
            "[{},-{},-{}; {},{},{}; 2,-1,1]",
            2 * (a + b) + 2,
            2 * c + 2,
            2 * d + 2,
            a + b + 2,
            c + 1,
            d + 1
        ),
        format!(
            "[{},{},-{},-{}; {},{},{},{}; 2,0,-1,1]",
            2 * a + 1,
            2 * b + 1,
            2 * c + 2,
            2 * d + 2,
            a + 1,
            b + 1,
            c + 1,
            d + 1
        ),
    ];
    QIdentity::new(
        "eight-term",
        &[("a", a), ("b", b), ("c", c), ("d", d)],
        vec![QTerm::single(1, zeta_star(&s))],
        rhs.iter().map(|t| frakz_term(1, t)).collect(),
    )
}
