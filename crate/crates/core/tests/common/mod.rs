//! Independent reference implementations shared by the integration suites.
#![allow(dead_code)]

use qzeta::{MollifierTriple, Rational, Shift, SignedIndex, SignedString};

pub fn qpow(q: &Rational, e: i64) -> Rational {
    let mut v = Rational::from(1);
    for _ in 0..e.unsigned_abs() {
        v *= q;
    }
    if e < 0 {
        v.recip_mut();
    }
    v
}

/// `[k] = 1 + q + … + q^{k-1}`.
pub fn q_int(q: &Rational, k: u64) -> Rational {
    (0..k as i64).map(|i| qpow(q, i)).fold(Rational::new(), |a, b| a + b)
}

/// Gaussian binomial from its product formula.
pub fn gauss(q: &Rational, n: u64, k: u64) -> Rational {
    if k > n {
        return Rational::new();
    }
    let mut v = Rational::from(1);
    for i in 0..k {
        let num = Rational::from(1) - qpow(q, (n - i) as i64);
        let den = Rational::from(1) - qpow(q, (i + 1) as i64);
        v *= num / den;
    }
    v
}

/// `Q(r, k)` straight from its case definition.
pub fn q_shift(r: Shift, k: i64) -> i64 {
    match r {
        Shift::Theta => 0,
        Shift::Int(r) if r > 0 => r * k * (k - 1) / 2,
        Shift::Int(r) => r * k * (k - 1) / 2 - k,
    }
}

fn sign(s: SignedIndex, k: u64) -> i32 {
    if s.is_barred() && k % 2 == 1 {
        -1
    } else {
        1
    }
}

fn plain_term(q: &Rational, s: SignedIndex, k: u64) -> Rational {
    let mut d = Rational::from(1);
    let qk = q_int(q, k);
    for _ in 0..s.magnitude() {
        d *= &qk;
    }
    qpow(q, k as i64) / d * sign(s, k)
}

/// Walks every tuple `n >= k_1 > … > k_m >= 1` (or `>=` when `star`) and
/// accumulates the product of the per-index factors into a bucket per `k_1`.
fn walk(fac: &[Vec<Rational>], j: usize, upper: u64, star: bool, prod: &Rational, acc: &mut Rational) {
    if j == fac.len() {
        *acc += prod;
        return;
    }
    let top = if star { upper } else { upper - 1 };
    for k in 1..=top {
        let p = Rational::from(prod * &fac[j][k as usize]);
        walk(fac, j + 1, k, star, &p, acc);
    }
}

/// `H_n[s]` or `H*_n[s]` for every `n = 0..=n_max`, by enumeration.
pub fn naive_mhs(s: &SignedString, n_max: u64, q: &Rational, star: bool) -> Vec<Rational> {
    let e = s.entries();
    let fac: Vec<Vec<Rational>> = e
        .iter()
        .map(|&x| (0..=n_max).map(|k| if k == 0 { Rational::new() } else { plain_term(q, x, k) }).collect())
        .collect();
    let mut out = vec![Rational::new(); n_max as usize + 1];
    if e.is_empty() {
        return vec![Rational::from(1); n_max as usize + 1];
    }
    let mut running = Rational::new();
    for k1 in 1..=n_max {
        let mut bucket = Rational::new();
        walk(&fac[1..], 0, k1, star, &fac[0][k1 as usize], &mut bucket);
        running += bucket;
        out[k1 as usize] = running.clone();
    }
    out
}

/// `𝓗_n[s; t; r]` by enumeration.
pub fn naive_mollified(triple: &MollifierTriple, n: u64, q: &Rational) -> Rational {
    let slots: Vec<_> = triple.slots().collect();
    if slots.is_empty() {
        return Rational::from(1);
    }
    let fac: Vec<Vec<Rational>> = slots
        .iter()
        .map(|&(s, t, r)| {
            (0..=n)
                .map(|k| {
                    if k == 0 {
                        return Rational::new();
                    }
                    let ki = k as i64;
                    let mut d = Rational::from(1);
                    let qk = q_int(q, k);
                    for _ in 0..s.magnitude() {
                        d *= &qk;
                    }
                    qpow(q, i64::from(t) * ki + q_shift(r, ki)) * (Rational::from(1) + qpow(q, ki)) / d * sign(s, k)
                })
                .collect()
        })
        .collect();
    let mut total = Rational::new();
    for k1 in 1..=n {
        let ratio = gauss(q, n, k1) / gauss(q, n + k1, k1);
        let mut bucket = Rational::new();
        walk(&fac[1..], 0, k1, false, &fac[0][k1 as usize], &mut bucket);
        total += ratio * bucket;
    }
    total
}

/// Every signed string of depth `1..=max_depth` with entries in `0`, `0̄`,
/// `k`, `k̄` and total weight at most `max_weight`.
pub fn signed_strings(max_depth: usize, max_weight: u32) -> Vec<SignedString> {
    let mut out = Vec::new();
    let mut layer: Vec<(Vec<SignedIndex>, u32)> = vec![(Vec::new(), 0)];
    for _ in 0..max_depth {
        let mut next = Vec::new();
        for (cur, w) in &layer {
            for m in 0..=max_weight - w {
                for barred in [false, true] {
                    let mut v = cur.clone();
                    v.push(SignedIndex::new(m, barred));
                    next.push((v, w + m));
                }
            }
        }
        out.extend(next.iter().map(|(v, _)| SignedString::new(v.clone())));
        layer = next;
    }
    out
}

/// Small mollifier triples: depth 1 and 2 exhaustively over a grid.
pub fn small_triples() -> Vec<MollifierTriple> {
    let shifts = [Shift::Theta, Shift::Int(-1), Shift::Int(0), Shift::Int(1), Shift::Int(2)];
    let mut slots = Vec::new();
    for m in 0..=2 {
        for barred in [false, true] {
            for t in 0..=1 {
                for &r in &shifts {
                    slots.push((SignedIndex::new(m, barred), t, r));
                }
            }
        }
    }
    let mut out: Vec<MollifierTriple> = slots.iter().map(|&x| MollifierTriple::from_slots([x])).collect();
    for (i, &x) in slots.iter().enumerate() {
        for &y in slots.iter().skip(i % 7).step_by(7) {
            out.push(MollifierTriple::from_slots([x, y]));
        }
    }
    out
}

/// Strings whose DP values (plain and star) differ from enumeration at some `n <= n_max`.
pub fn mhs_mismatches(max_depth: usize, max_weight: u32, n_max: u64, q: &Rational) -> Vec<String> {
    let ctx = qzeta::QContext::new(q.clone()).unwrap();
    let mut bad = Vec::new();
    for s in signed_strings(max_depth, max_weight) {
        for star in [false, true] {
            if qzeta::eval::mhs_upto(&s, n_max, &ctx, star) != naive_mhs(&s, n_max, q, star) {
                bad.push(format!("{}{s}", if star { "*" } else { "" }));
            }
        }
    }
    bad
}

/// Triples from [`small_triples`] whose DP mollified value differs from enumeration.
pub fn mollified_mismatches(n_max: u64, q: &Rational) -> Vec<String> {
    let ctx = qzeta::QContext::new(q.clone()).unwrap();
    let mut bad = Vec::new();
    for t in small_triples() {
        let dp = qzeta::eval::mollified_mhs_upto(&t, n_max, &ctx);
        for n in 1..=n_max {
            if dp[n as usize] != naive_mollified(&t, n, q) {
                bad.push(format!("{t} at n = {n}"));
                break;
            }
        }
    }
    bad
}

pub mod props;
