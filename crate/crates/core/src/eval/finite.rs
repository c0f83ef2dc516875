//! Exact finite q-multiple harmonic sums: plain, star and mollified.
//!
//! All three share one suffix recurrence. Writing `f_j(k)` for the factor
//! contributed by slot `j` at summation index `k`, the cumulative sums
//!
//! ```text
//! C_{m+1}(k) = 1
//! C_j(k)     = C_j(k-1) + f_j(k) · C_{j+1}(k-1)   (strict)
//! C_j(k)     = C_j(k-1) + f_j(k) · C_{j+1}(k)     (weak)
//! ```
//!
//! give `H_n = C_1(n)`, so one pass produces the value at every `n <= N` in
//! `O(N · depth)` exact operations. The mollified sum applies the binomial
//! ratio at the outermost layer only.

use rug::Rational;

use crate::index::{q_exponent, Shift, SignedIndex, SignedString};
use crate::qarith::QContext;
use crate::triple::MollifierTriple;

/// `sgn(s)^k q^k / [k]^{|s|}`.
pub fn plain_factor(ctx: &QContext, s: SignedIndex, k: u64) -> Rational {
    let mut v = ctx.pow(k as i64) * ctx.inv_q_int_pow(k, s.magnitude());
    if s.is_barred() && k % 2 == 1 {
        v = -v;
    }
    v
}

/// `sgn(s)^k q^{t k + Q(r, k)} (1 + q^k) / [k]^{|s|}`.
pub fn mollified_factor(ctx: &QContext, s: SignedIndex, t: u32, r: Shift, k: u64) -> Rational {
    let ki = k as i64;
    let e = i64::from(t) * ki + q_exponent(r, ki);
    let mut v = ctx.pow(e) * (Rational::from(1) + ctx.pow(ki));
    v *= ctx.inv_q_int_pow(k, s.magnitude());
    if s.is_barred() && k % 2 == 1 {
        v = -v;
    }
    v
}

/// Runs the suffix recurrence over `depth` layers and returns `C_1(k)` for
/// `k = 0..=n`. `factor(j, k)` is the factor of layer `j` (0-based).
pub(crate) fn cumulative<F>(depth: usize, n: u64, star: bool, factor: F) -> Vec<Rational>
where
    F: Fn(usize, u64) -> Rational,
{
    let len = n as usize + 1;
    let mut inner = vec![Rational::from(1); len];
    for j in (0..depth).rev() {
        let mut cur = Vec::with_capacity(len);
        cur.push(Rational::new());
        for k in 1..len {
            let below = if star { &inner[k] } else { &inner[k - 1] };
            let term = if *below == 0 {
                Rational::new()
            } else {
                factor(j, k as u64) * below
            };
            let next = Rational::from(&cur[k - 1] + &term);
            cur.push(next);
        }
        inner = cur;
    }
    inner
}

/// `H_n[s]` (or `H*_n[s]` when `star`) for every `n = 0..=n_max`.
pub fn mhs_upto(s: &SignedString, n_max: u64, ctx: &QContext, star: bool) -> Vec<Rational> {
    let e = s.entries();
    cumulative(e.len(), n_max, star, |j, k| plain_factor(ctx, e[j], k))
}

/// `H_n[s]` or `H*_n[s]`. Zero if `n < depth` (strict), one for the empty string.
pub fn mhs(s: &SignedString, n: u64, ctx: &QContext, star: bool) -> Rational {
    mhs_upto(s, n, ctx, star).pop().unwrap()
}

/// The outer-layer terms `X(k) = f_1(k) · C_2(k-1)` for `k = 1..=n`
/// (index 0 unused).
pub(crate) fn mollified_outer_terms(triple: &MollifierTriple, n: u64, ctx: &QContext) -> Vec<Rational> {
    let slots: Vec<_> = triple.slots().collect();
    let inner = cumulative(slots.len() - 1, n, false, |j, k| {
        let (s, t, r) = slots[j + 1];
        mollified_factor(ctx, s, t, r, k)
    });
    let (s1, t1, r1) = slots[0];
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(Rational::new());
    for k in 1..=n {
        let below = &inner[k as usize - 1];
        out.push(if *below == 0 {
            Rational::new()
        } else {
            mollified_factor(ctx, s1, t1, r1, k) * below
        });
    }
    out
}

/// `𝓗_n[s; t; r]` for every `n = 0..=n_max`.
pub fn mollified_mhs_upto(triple: &MollifierTriple, n_max: u64, ctx: &QContext) -> Vec<Rational> {
    if triple.is_empty() {
        return vec![Rational::from(1); n_max as usize + 1];
    }
    let outer = mollified_outer_terms(triple, n_max, ctx);
    (0..=n_max)
        .map(|n| {
            let mut acc = Rational::new();
            for k in 1..=n {
                let x = &outer[k as usize];
                if *x != 0 {
                    acc += ctx.binom_ratio(n, k) * x;
                }
            }
            acc
        })
        .collect()
}

/// `𝓗_n[s; t; r] = Σ_{n ≥ k1 > … > km ≥ 1} ⟨n,k1⟩/⟨n+k1,k1⟩ Π_j f_j(k_j)`.
pub fn mollified_mhs(triple: &MollifierTriple, n: u64, ctx: &QContext) -> Rational {
    mollified_mhs_upto(triple, n, ctx).pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> QContext {
        QContext::from_ratio(1, 2).unwrap()
    }

    fn ss(v: &[u32]) -> SignedString {
        SignedString::from_magnitudes(v)
    }

    #[test]
    fn star_value_at_n_one() {
        // H*_1[{2}^2, 3] = q^3
        let ctx = half();
        assert_eq!(mhs(&ss(&[2, 2, 3]), 1, &ctx, true), Rational::from((1, 8)));
    }

    #[test]
    fn empty_string_is_one() {
        let ctx = half();
        for n in 0..5 {
            assert_eq!(mhs(&SignedString::empty(), n, &ctx, false), 1);
            assert_eq!(mhs(&SignedString::empty(), n, &ctx, true), 1);
            assert_eq!(mollified_mhs(&MollifierTriple::empty(), n, &ctx), 1);
        }
    }

    #[test]
    fn strict_sum_vanishes_below_depth() {
        let ctx = half();
        assert_eq!(mhs(&ss(&[1, 1]), 1, &ctx, false), 0);
        assert_eq!(mhs(&ss(&[1, 1]), 0, &ctx, true), 0);
        let t: MollifierTriple = "[1,1; 0,0; theta,theta]".parse().unwrap();
        assert_eq!(mollified_mhs(&t, 1, &ctx), 0);
    }

    #[test]
    fn depth_one_by_hand() {
        // q/[1] + q^2/[2] = 1/2 + 1/6
        let ctx = half();
        assert_eq!(mhs(&ss(&[1]), 2, &ctx, false), Rational::from((2, 3)));
    }

    #[test]
    fn mollified_at_n_one() {
        // 𝓗_1[bar(2a+c); a+1; 1] = -q^{a+1} at a = 1, c = 3
        let ctx = half();
        let t: MollifierTriple = "[-5; 2; 1]".parse().unwrap();
        assert_eq!(mollified_mhs(&t, 1, &ctx), Rational::from((-1, 4)));
    }

    #[test]
    fn upto_agrees_with_pointwise() {
        let ctx = QContext::from_ratio(2, 3).unwrap();
        let t: MollifierTriple = "[3,-2,1; 1,0,2; 2,-1,1]".parse().unwrap();
        let all = mollified_mhs_upto(&t, 8, &ctx);
        for n in 0..=8 {
            assert_eq!(all[n as usize], mollified_mhs(&t, n, &ctx));
        }
    }

    #[test]
    fn quasi_stuffle_and_star_relation() {
        for (p, q) in [(1, 2), (1, 3)] {
            let ctx = QContext::from_ratio(p, q).unwrap();
            let one_minus_q = Rational::from(1) - ctx.q().clone();
            for a in 1..=5u32 {
                for b in 1..=5u32 {
                    let ha = mhs_upto(&ss(&[a]), 20, &ctx, false);
                    let hb = mhs_upto(&ss(&[b]), 20, &ctx, false);
                    let hab = mhs_upto(&ss(&[a, b]), 20, &ctx, false);
                    let hba = mhs_upto(&ss(&[b, a]), 20, &ctx, false);
                    let hsum = mhs_upto(&ss(&[a + b]), 20, &ctx, false);
                    let hsum1 = mhs_upto(&ss(&[a + b - 1]), 20, &ctx, false);
                    let hstar = mhs_upto(&ss(&[a, b]), 20, &ctx, true);
                    for n in 0..=20 {
                        let correction = Rational::from(&one_minus_q * &hsum1[n]);
                        let lhs = Rational::from(&ha[n] * &hb[n]);
                        let rhs = hab[n].clone() + &hba[n] + &hsum[n] - &correction;
                        assert_eq!(lhs, rhs, "stuffle a={a} b={b} n={n}");
                        let star_rhs = hab[n].clone() + &hsum[n] - &correction;
                        assert_eq!(hstar[n], star_rhs, "star a={a} b={b} n={n}");
                    }
                }
            }
        }
    }
}
