//! Property checks returning the list of violations, so both the test
//! suites and the acceptance runner can drive them.

use proptest::prelude::*;
use qzeta::expansion::expand;
use qzeta::rules::{closed_pattern, compose, compose_segmentation, segmentations, Composition, Family};
use qzeta::verify::random_compositions;
use qzeta::{boxplus, oplus, q_exponent, MollifierTriple, PatternTriple, Shift, SignedIndex};

fn shifts(range: i64) -> Vec<Shift> {
    std::iter::once(Shift::Theta).chain((-range..=range).map(Shift::Int)).collect()
}

fn project(r: Shift) -> i64 {
    match r {
        Shift::Theta => 0,
        Shift::Int(v) => v,
    }
}

/// ⊕, ⊞ and `Q` laws, exhaustively for `|k| <= k_max`.
pub fn algebra_violations(k_max: i64) -> Vec<String> {
    let mut bad = Vec::new();
    let sh = shifts(20);
    for k in -k_max..=k_max {
        for &r in sh.iter().filter(|&&r| r != Shift::Int(0)) {
            if q_exponent(r, k) + q_exponent(Shift::Int(1), k) != q_exponent(boxplus(r, Shift::Int(1)), k) {
                bad.push(format!("Q({r},{k}) + Q(1,{k})"));
            }
        }
        for d in [0, -1] {
            if k * k + q_exponent(Shift::Int(d), k) != q_exponent(boxplus(Shift::Int(2), Shift::Int(d)), k) {
                bad.push(format!("k^2 + Q({d},{k})"));
            }
        }
    }
    for &a in &sh {
        for &b in &sh {
            if project(boxplus(a, b)) != project(a) + project(b) {
                bad.push(format!("pi({a} [+] {b})"));
            }
        }
    }
    let idx: Vec<SignedIndex> = (0..=6).flat_map(|m| [SignedIndex::plain(m), SignedIndex::bar(m)]).collect();
    for &a in &idx {
        for &b in &idx {
            let ab = oplus(a, b);
            if ab != oplus(b, a) || ab.magnitude() != a.magnitude() + b.magnitude() || ab.sign() != a.sign() * b.sign() {
                bad.push(format!("{a} (+) {b}"));
            }
            for &c in &idx {
                if oplus(ab, c) != oplus(a, oplus(b, c)) {
                    bad.push(format!("({a} (+) {b}) (+) {c}"));
                }
            }
        }
    }
    bad
}

fn sums(t: &MollifierTriple) -> (u64, u64, i64) {
    (
        t.s().weight(),
        t.t().iter().map(|&x| u64::from(x)).sum(),
        t.r().iter().map(|&r| project(r)).sum(),
    )
}

/// Cardinality, conservation, admissibility closure and the classical
/// coefficient count for one pattern.
pub fn expansion_violations(p: &PatternTriple) -> Vec<String> {
    let mut bad = Vec::new();
    let m = p.len() as u32;
    let terms = expand(p);
    if terms.len() != 1usize << (m - 1) {
        bad.push(format!("{p}: {} terms", terms.len()));
    }
    let want = sums(p.slots());
    if let Some(t) = terms.iter().find(|t| sums(t) != want) {
        bad.push(format!("{p}: {t} breaks conservation"));
    }
    if p.is_admissible() {
        if let Some(t) = terms.iter().find(|t| !t.is_admissible()) {
            bad.push(format!("{p}: {t} not admissible"));
        }
    }
    let coeff: u64 = terms.iter().map(|t| 1u64 << t.len()).sum();
    if coeff != 2 * 3u64.pow(m - 1) {
        bad.push(format!("{p}: classical coefficients sum to {coeff}"));
    }
    bad
}

pub fn slot() -> impl Strategy<Value = (SignedIndex, u32, Shift)> {
    let shift = prop_oneof![Just(Shift::Theta), (-3i64..=3).prop_map(Shift::Int)];
    ((0u32..6, any::<bool>()).prop_map(|(m, b)| SignedIndex::new(m, b)), 0u32..4, shift)
}

pub fn pattern(max_len: usize) -> impl Strategy<Value = PatternTriple> {
    prop::collection::vec(slot(), 1..=max_len).prop_map(PatternTriple::from_slots)
}

/// Patterns whose r-string is admissible by construction: partial folds
/// steered into `{1, 2}`.
pub fn admissible_pattern(max_len: usize) -> impl Strategy<Value = PatternTriple> {
    prop::collection::vec((slot(), prop::sample::select(vec![-1i64, 0, 1])), 1..=max_len).prop_map(|v| {
        let mut acc = Shift::Int(0);
        let mut slots = Vec::with_capacity(v.len());
        for (i, ((s, t, _), step)) in v.into_iter().enumerate() {
            let r = if i == 0 {
                Shift::Int(if step > 0 { 2 } else { 1 })
            } else {
                let cur = project(acc);
                let target = (cur + step).clamp(1, 2);
                match target - cur {
                    0 => Shift::Theta,
                    d => Shift::Int(d),
                }
            };
            acc = if i == 0 { r } else { boxplus(acc, r) };
            slots.push((s, t, r));
        }
        PatternTriple::from_slots(slots)
    })
}

/// Weight, admissibility and δ of `compose(s)` for every composition of
/// weight at most `max_weight`.
pub fn compose_violations(max_weight: u32) -> Vec<String> {
    let mut bad = Vec::new();
    for w in 1..=max_weight {
        for s in Composition::all_of_weight(w) {
            let (d, p) = match compose(&s) {
                Ok(x) => x,
                Err(e) => {
                    bad.push(format!("{s}: {e}"));
                    continue;
                }
            };
            if p.slots().s().weight() != s.weight() {
                bad.push(format!("{s}: weight of {p}"));
            }
            if !p.is_admissible() {
                bad.push(format!("{s}: {p} not admissible"));
            }
            if d != s.delta() {
                bad.push(format!("{s}: delta {d}"));
            }
        }
    }
    bad
}

/// Family instances whose closed pattern differs from the composed one.
pub fn closed_pattern_mismatches(max_weight: u32) -> (usize, Vec<String>) {
    let fams = Family::enumerate(max_weight);
    let bad = fams
        .iter()
        .filter_map(|f| {
            let s = f.composition().ok()?;
            let closed = closed_pattern(f).ok();
            let composed = compose(&s).ok();
            (closed.is_none() || closed != composed).then(|| format!("{} {s}", f.name()))
        })
        .collect();
    (fams.len(), bad)
}

/// Compositions on which some block segmentation composes to a different pattern.
pub fn segmentation_mismatches(seed: u64, count: usize, max_weight: u64) -> Vec<String> {
    random_compositions(seed, count, 12, max_weight)
        .into_iter()
        .filter(|s| {
            let canon = compose(s).unwrap();
            segmentations(s).iter().any(|seg| compose_segmentation(seg).ok().as_ref() != Some(&canon))
        })
        .map(|s| s.to_string())
        .collect()
}

/// `H_n[a] H_n[b] = H_n[a,b] + H_n[b,a] + H_n[a+b] - (1-q) H_n[a+b-1]` and
/// `H*_n[a,b] = H_n[a,b] + H_n[a+b] - (1-q) H_n[a+b-1]` for `1 <= a, b <= ab_max`.
pub fn stuffle_violations(ab_max: u32, n_max: u64, qs: &[qzeta::Rational]) -> Vec<String> {
    use qzeta::eval::mhs_upto;
    use qzeta::{QContext, Rational, SignedString};
    let mut bad = Vec::new();
    for q in qs {
        let ctx = QContext::new(q.clone()).unwrap();
        let h = |m: &[u32], star: bool| mhs_upto(&SignedString::from_magnitudes(m), n_max, &ctx, star);
        let one_minus_q = Rational::from(1) - q;
        for a in 1..=ab_max {
            for b in 1..=ab_max {
                let (ha, hb, hab, hba, hs, hs1, star) = (
                    h(&[a], false),
                    h(&[b], false),
                    h(&[a, b], false),
                    h(&[b, a], false),
                    h(&[a + b], false),
                    h(&[a + b - 1], false),
                    h(&[a, b], true),
                );
                for n in 0..=n_max as usize {
                    let corr = Rational::from(&hs[n] - &one_minus_q * hs1[n].clone());
                    if Rational::from(&ha[n] * &hb[n]) != Rational::from(&hab[n] + &hba[n]) + &corr {
                        bad.push(format!("stuffle a={a} b={b} n={n} q={q}"));
                    }
                    if star[n] != Rational::from(&hab[n] + &corr) {
                        bad.push(format!("star a={a} b={b} n={n} q={q}"));
                    }
                }
            }
        }
    }
    bad
}
