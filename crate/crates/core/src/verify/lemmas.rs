//! Exact checks of the binomial-ratio kernel identities that drive the
//! expansions.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::ops::Pow;
use rug::Rational;

use super::{VerificationReport, DEFAULT_SEED};
use crate::error::{Error, Result};
use crate::eval::{mollified_mhs, mollified_mhs_upto};
use crate::expansion::expand;
use crate::index::{boxplus, oplus, Shift, SignedIndex};
use crate::qarith::QContext;
use crate::triple::{MollifierTriple, PatternTriple, Slot};

fn report(case: &str, n_max: u64, q_list: &[Rational]) -> VerificationReport {
    let mut r = VerificationReport::new(case);
    r.family = Some("lemma".into());
    r.q = q_list.iter().map(|q| q.to_string()).collect();
    r.n_range = Some([1, n_max]);
    r
}

/// `Σ_{k=l+1}^n A_{n,k} = ([l]-[n])/[n] · A_{n,l}/(1+q^l)` for `0 <= l < n`.
pub fn alternating_kernel_sums(n_max: u64, q_list: &[Rational]) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut r = report("kernel-alternating-sum", n_max, q_list);
    for q in q_list {
        let ctx = QContext::new(q.clone())?;
        for n in 1..=n_max {
            let mut suffix = Rational::new();
            for l in (0..n).rev() {
                suffix += ctx.a_kernel(n, l + 1);
                let li = l as i64;
                let mut rhs = (ctx.q_int(l) - ctx.q_int(n)) / ctx.q_int(n);
                rhs *= ctx.binom_ratio(n, l) * ctx.pow(li * (li - 1) / 2);
                if l % 2 == 1 {
                    rhs = -rhs;
                }
                r.residuals.push(Rational::from(&suffix - &rhs).to_string());
            }
        }
    }
    Ok(r.finish_exact(start))
}

/// `Σ_{k=l+1}^n (1+q^k)[k] ratio(n,k) q^{k(k-1)} = ([n]-[l]) ratio(n,l) q^{l^2}` for `0 <= l < n`.
pub fn weighted_kernel_sums(n_max: u64, q_list: &[Rational]) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut r = report("kernel-weighted-sum", n_max, q_list);
    for q in q_list {
        let ctx = QContext::new(q.clone())?;
        for n in 1..=n_max {
            let mut suffix = Rational::new();
            for l in (0..n).rev() {
                let k = l + 1;
                let ki = k as i64;
                suffix += (Rational::from(1) + ctx.pow(ki)) * ctx.q_int(k) * ctx.binom_ratio(n, k) * ctx.pow(ki * (ki - 1));
                let li = l as i64;
                let rhs = (ctx.q_int(n) - ctx.q_int(l)) * ctx.binom_ratio(n, l) * ctx.pow(li * li);
                r.residuals.push(Rational::from(&suffix - &rhs).to_string());
            }
        }
    }
    Ok(r.finish_exact(start))
}

fn ones(n: u32) -> impl Iterator<Item = Slot> {
    std::iter::repeat((SignedIndex::plain(1), 0, Shift::Theta)).take(n as usize)
}

/// The pattern `{0̄ ∘ 1^{∘c}; 0^{∘(c+1)}; 1 ∘ θ^{∘c}}`.
pub fn inverse_power_pattern(c: u32) -> PatternTriple {
    PatternTriple::from_slots(std::iter::once((SignedIndex::bar(0), 0, Shift::Int(1))).chain(ones(c)))
}

/// `1/[n]^c = -Σ_{T ∈ expand(Π(c))} 𝓗_n[T]`.
pub fn inverse_powers(c_max: u32, n_max: u64, q_list: &[Rational]) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut r = report("inverse-power-expansion", n_max, q_list).with_params([("c_max", i64::from(c_max))]);
    for q in q_list {
        let ctx = QContext::new(q.clone())?;
        for c in 0..=c_max {
            let mut rhs = vec![Rational::new(); n_max as usize + 1];
            for t in expand(&inverse_power_pattern(c)) {
                for (acc, v) in rhs.iter_mut().zip(mollified_mhs_upto(&t, n_max, &ctx)) {
                    *acc -= v;
                }
            }
            for n in 1..=n_max {
                let lhs = ctx.q_int(n).recip().pow(c);
                r.residuals.push(Rational::from(&lhs - &rhs[n as usize]).to_string());
            }
        }
    }
    Ok(r.finish_exact(start))
}

/// One instance of the shifted-mollifier identity
/// `𝓗_n[a,x; b,y; r⊞1,z]/[n]^c = Σ_{T ∈ expand(P)} 𝓗_n[T, x; ·, y; ·, z]`
/// with `P = {0̄ ∘ 1^{∘(c-1)} ∘ (a ⊕ 1̄); 0^{∘c} ∘ b; 1 ∘ θ^{∘(c-1)} ∘ r}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedInstance {
    pub a: SignedIndex,
    pub b: u32,
    pub c: u32,
    pub r: Shift,
    pub tail: MollifierTriple,
}

impl ShiftedInstance {
    /// Residuals `lhs - rhs` for `n = 1..=n_max`.
    pub fn residuals(&self, n_max: u64, ctx: &QContext) -> Vec<Rational> {
        let head = MollifierTriple::from_slots([(self.a, self.b, boxplus(self.r, Shift::Int(1)))]);
        let lhs = mollified_mhs_upto(&head.concat(&self.tail), n_max, ctx);
        let pattern = PatternTriple::from_slots(
            std::iter::once((SignedIndex::bar(0), 0, Shift::Int(1)))
                .chain(ones(self.c - 1))
                .chain([(oplus(self.a, SignedIndex::bar(1)), self.b, self.r)]),
        );
        let mut rhs = vec![Rational::new(); n_max as usize + 1];
        for t in expand(&pattern) {
            for (acc, v) in rhs.iter_mut().zip(mollified_mhs_upto(&t.concat(&self.tail), n_max, ctx)) {
                *acc += v;
            }
        }
        (1..=n_max as usize)
            .map(|n| lhs[n].clone() / ctx.q_int(n as u64).pow(self.c) - &rhs[n])
            .collect()
    }
}

/// `count` random instances with `c <= c_max`, depth-one tails and
/// `r ∈ {θ, -2, 1, 2}`. At `r = -1` the pattern merges `1 ⊞ (-1) = θ` while
/// the left side carries `(-1) ⊞ 1 = 0`, and the identity fails.
pub fn random_shifted_instances(seed: u64, count: usize, c_max: u32) -> Vec<ShiftedInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shifts = [Shift::Theta, Shift::Int(-2), Shift::Int(1), Shift::Int(2)];
    let tail_shifts = [Shift::Theta, Shift::Int(0), Shift::Int(1), Shift::Int(2)];
    (0..count)
        .map(|_| {
            let a = SignedIndex::new(rng.gen_range(0..=3), rng.gen_bool(0.5));
            let tail = MollifierTriple::from_slots([(
                SignedIndex::new(rng.gen_range(0..=3), rng.gen_bool(0.5)),
                rng.gen_range(0..=2),
                tail_shifts[rng.gen_range(0..tail_shifts.len())],
            )]);
            ShiftedInstance {
                a,
                b: rng.gen_range(0..=3),
                c: rng.gen_range(1..=c_max),
                r: shifts[rng.gen_range(0..shifts.len())],
                tail,
            }
        })
        .collect()
}

pub fn shifted_mollifier(seed: u64, count: usize, c_max: u32, n_max: u64, q_list: &[Rational]) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut r = report("shifted-mollifier-expansion", n_max, q_list).with_params([
        ("count", count as i64),
        ("c_max", i64::from(c_max)),
    ]);
    r.seed = Some(seed);
    for q in q_list {
        let ctx = QContext::new(q.clone())?;
        for inst in random_shifted_instances(seed, count, c_max) {
            r.residuals.extend(inst.residuals(n_max, &ctx).iter().map(|x| x.to_string()));
        }
    }
    Ok(r.finish_exact(start))
}

/// `A_{n-1,k} Σ_{i=0}^{a} ([n]/[k])^{2i} q^{(k-n)i}
///  = A_{n,k} (([n]/[k])^{2a} q^{(k-n)a} - ([k]/[n])^2 q^{n-k})` for `1 <= k <= n`.
pub fn geometric_kernel(a_max: u32, n_max: u64, q_list: &[Rational]) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut r = report("geometric-kernel-sum", n_max, q_list).with_params([("a_max", i64::from(a_max))]);
    for q in q_list {
        let ctx = QContext::new(q.clone())?;
        for n in 2..=n_max {
            for k in 1..=n {
                let x = (ctx.q_int(n) / ctx.q_int(k)).pow(2u32) * ctx.pow(k as i64 - n as i64);
                let tail = (ctx.q_int(k) / ctx.q_int(n)).pow(2u32) * ctx.pow(n as i64 - k as i64);
                let (a_prev, a_cur) = (ctx.a_kernel(n - 1, k), ctx.a_kernel(n, k));
                let mut geo = Rational::new();
                let mut xi = Rational::from(1);
                for _ in 0..=a_max {
                    geo += &xi;
                    let lhs = Rational::from(&a_prev * &geo);
                    let rhs = Rational::from(&a_cur * &(Rational::from(&xi - &tail)));
                    r.residuals.push(Rational::from(&lhs - &rhs).to_string());
                    xi *= &x;
                }
            }
        }
    }
    Ok(r.finish_exact(start))
}

/// The whole lemma suite, one report per identity.
pub fn lemma_suite(n_max: u64, q_list: &[Rational]) -> Result<Vec<VerificationReport>> {
    if n_max == 0 {
        return Err(Error::InvalidParameter("n_max must be at least 1".into()));
    }
    Ok(vec![
        alternating_kernel_sums(n_max, q_list)?,
        weighted_kernel_sums(n_max, q_list)?,
        inverse_powers(4, n_max, q_list)?,
        shifted_mollifier(DEFAULT_SEED, 10, 3, n_max.min(20), q_list)?,
        geometric_kernel(3, n_max, q_list)?,
    ])
}

/// `𝓗_n[0̄; 0; 1] = -1` for every `n >= 1`.
pub fn degenerate_mollifier(n: u64, ctx: &QContext) -> Rational {
    mollified_mhs(&"[-0; 0; 1]".parse().unwrap(), n, ctx)
}
