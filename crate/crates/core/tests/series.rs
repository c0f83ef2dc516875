mod common;

use qzeta::eval::{frakz, mollified_mhs, q_zeta, SeriesConfig};
use qzeta::qarith::parse_tolerance;
use qzeta::verify::qseries::{two_term_identity, verify_q_identity};
use qzeta::{MollifierTriple, QContext, Rational, SignedString};

fn ctx(p: i64, q: i64) -> QContext {
    QContext::from_ratio(p, q).unwrap()
}

fn eps(s: &str) -> SeriesConfig {
    SeriesConfig::epsilon(parse_tolerance(s).unwrap()).unwrap()
}

fn triples() -> Vec<MollifierTriple> {
    ["[-2; 1; 1]", "[-4; 2; 1]", "[-6; 3; 1]", "[3; 2; 2]", "[5; 3; 2]", "[-5; 2; 1]", "[-4,1; 2,0; 1,theta]", "[3,5; 2,3; 2,0]"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

#[test]
fn doubling_the_cutoff_stays_inside_the_bound() {
    for c in [ctx(1, 2), ctx(2, 3), ctx(9, 10)] {
        for t in triples() {
            let v = frakz(&t, &c, &eps("1e-20")).unwrap();
            let w = frakz(&t, &c, &SeriesConfig::fixed(2 * v.cutoff).unwrap()).unwrap();
            assert!(Rational::from(&w.value - &v.value).abs() < v.tail_bound, "{t}");
        }
        if *c.q() > Rational::from((2, 3)) {
            continue;
        }
        for s in ["2", "2,1", "3,-1,2", "-1"] {
            let s: SignedString = s.parse().unwrap();
            for star in [false, true] {
                let v = q_zeta(&s, &c, &eps("1e-20"), star).unwrap();
                let w = q_zeta(&s, &c, &SeriesConfig::fixed(2 * v.cutoff).unwrap(), star).unwrap();
                assert!(Rational::from(&w.value - &v.value).abs() < v.tail_bound, "{s}");
            }
        }
    }
}

#[test]
fn finite_mollified_sums_approach_the_limit() {
    for c in [ctx(1, 2), ctx(2, 3)] {
        for t in triples() {
            let limit = frakz(&t, &c, &eps("1e-60")).unwrap().value;
            let d: Vec<Rational> = [10u64, 20, 40]
                .iter()
                .map(|&n| Rational::from(&mollified_mhs(&t, n, &c) - &limit).abs())
                .collect();
            assert!(d[0] > d[1] && d[1] > d[2], "{t}: {:?}", d.iter().map(|x| x.to_f64()).collect::<Vec<_>>());
        }
    }
}

#[test]
fn alternating_one_matches_direct_summation() {
    let c = ctx(1, 2);
    let q = Rational::from((1, 2));
    let s: SignedString = "-1".parse().unwrap();
    let v = q_zeta(&s, &c, &SeriesConfig::fixed(60).unwrap(), false).unwrap();
    let mut direct = Rational::new();
    for k in 1..=60u64 {
        let term = common::qpow(&q, k as i64) / common::q_int(&q, k);
        direct += if k % 2 == 1 { -term } else { term };
    }
    assert_eq!(v.value, direct);
}

#[test]
fn barred_three_matches_two_cutoffs() {
    let c = ctx(1, 2);
    let q = Rational::from((1, 2));
    let t: MollifierTriple = "[-3; 2; 1]".parse().unwrap();
    let v = frakz(&t, &c, &eps("1e-25")).unwrap();
    assert!(v.tail_bound <= parse_tolerance("1e-25").unwrap());
    let direct = |kmax: u64| {
        let mut acc = Rational::new();
        for k in 1..=kmax {
            let ki = k as i64;
            let e = 2 * ki + common::q_shift(qzeta::Shift::Int(1), ki);
            let mut term = common::qpow(&q, e) * (Rational::from(1) + common::qpow(&q, ki));
            for _ in 0..3 {
                term /= common::q_int(&q, k);
            }
            acc += if k % 2 == 1 { -term } else { term };
        }
        acc
    };
    assert_eq!(direct(v.cutoff), v.value);
    assert!(Rational::from(&direct(3 * v.cutoff) - &v.value).abs() <= v.tail_bound);
}

#[test]
fn tightening_eps_keeps_discrepancy_within_previous_bound() {
    let c = ctx(1, 2);
    let id = two_term_identity(1, 2);
    let mut prev: Option<f64> = None;
    for e in ["1e-10", "5e-11", "1e-15", "1e-25"] {
        let eps = parse_tolerance(e).unwrap();
        let r = verify_q_identity(&id, &c, &eps).unwrap();
        assert!(r.passed(), "{e}");
        if let Some(p) = prev {
            assert!(r.discrepancy.unwrap() <= p);
        }
        prev = Some(eps.to_f64());
    }
}
