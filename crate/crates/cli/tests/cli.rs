use std::process::{Command, Output};

use qzeta::verify::{Status, VerificationReport};

fn qzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qzeta"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn two_one_classical_expansion() {
    let o = qzeta(&["expand", "2,1", "--classical"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "+2*z(3)\n");
}

#[test]
fn star_mhs_at_n_one() {
    let o = qzeta(&["eval", "mhs-star", "--s", "2^1,3", "--n", "1", "--q", "1/2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1/4");
}

#[test]
fn verify_composition_exits_zero_with_exact_pass() {
    let o = qzeta(&["verify", "2,1,2,1,3,1", "--n-max", "8", "--q", "1/2"]);
    assert_eq!(o.status.code(), Some(0));
    let r: VerificationReport = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(r.status, Status::ExactPass);
    assert_eq!(r.residuals.len(), 8);
}

#[test]
fn report_json_round_trips_byte_identically() {
    let runs = [
        qzeta(&["verify", "2,3,1", "--n-max", "5", "--q", "1/2", "--q", "2/3"]),
        qzeta(&["verify", "symmetric", "--param", "a=0", "--param", "b=1"]),
        qzeta(&["verify", "2,2", "--classical", "--k", "10000", "--tol", "1e-3"]),
        qzeta(&["lemmas", "--n-max", "5"]),
    ];
    for o in runs {
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        for line in stdout(&o).lines() {
            let r: VerificationReport = serde_json::from_str(line).unwrap();
            assert_eq!(serde_json::to_string(&r).unwrap(), line);
        }
    }
}

fn terms(latex: &str) -> Vec<String> {
    let rhs = latex.split_once('=').unwrap().1;
    let mut v: Vec<String> = rhs
        .split('+')
        .map(|t| t.chars().filter(|c| !c.is_whitespace()).collect())
        .collect();
    v.sort();
    v
}

#[test]
fn key_example_latex_has_the_eight_term_structure() {
    let ob = |x: u32| format!("\\overline{{{x}}}");
    for (a, b, c, d) in [(1, 0, 0, 0), (2, 1, 0, 2), (1, 2, 2, 1)] {
        let s = format!("2^{a},1,2^{b},1,2^{c},3,2^{d},1");
        let o = qzeta(&["expand", &s, "--classical", "--format", "latex"]);
        assert!(o.status.success());
        let got = stdout(&o);
        assert!(got.starts_with("\\zeta^{\\star}("));
        let expected = [
            format!("2\\zeta({})", 2 * a + 2 * b + 2 * c + 2 * d + 6),
            format!("4\\zeta({},{})", 2 * a + 1, 2 * b + 2 * c + 2 * d + 5),
            format!("4\\zeta({},{})", 2 * a + 2 * b + 2, 2 * c + 2 * d + 4),
            format!("4\\zeta({},{})", ob(2 * a + 2 * b + 2 * c + 4), ob(2 * d + 2)),
            format!("8\\zeta({},{},{})", 2 * a + 1, 2 * b + 1, 2 * c + 2 * d + 4),
            format!("8\\zeta({},{},{})", 2 * a + 1, ob(2 * b + 2 * c + 3), ob(2 * d + 2)),
            format!("8\\zeta({},{},{})", 2 * a + 2 * b + 2, ob(2 * c + 2), ob(2 * d + 2)),
            format!("16\\zeta({},{},{},{})", 2 * a + 1, 2 * b + 1, ob(2 * c + 2), ob(2 * d + 2)),
        ];
        let mut expected: Vec<String> = expected.into_iter().collect();
        expected.sort();
        assert_eq!(terms(&got), expected, "{s}");
    }
}

#[test]
fn parse_errors_exit_with_two() {
    assert_eq!(qzeta(&["expand", "2,x"]).status.code(), Some(2));
    assert_eq!(qzeta(&["eval", "mhs", "--s", "2", "--n", "3", "--q", "3/2"]).status.code(), Some(2));
    assert_eq!(qzeta(&["verify", "1,2", "--qzeta"]).status.code(), Some(2));
    assert_eq!(qzeta(&["bogus"]).status.code(), Some(2));
}

#[test]
fn failed_check_exits_with_one() {
    let o = qzeta(&["verify", "2,1", "--classical", "--k", "1000", "--tol", "1e-12"]);
    assert_eq!(o.status.code(), Some(1));
    let r: VerificationReport = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(r.status, Status::Fail);
}

#[test]
fn frakz_and_star_value_agree() {
    let a = qzeta(&["eval", "qzeta-star", "2,1", "--format", "json"]);
    let b = qzeta(&["eval", "frakz", "[3; 2; 2]", "--format", "json"]);
    let va: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    let vb: serde_json::Value = serde_json::from_str(&stdout(&b)).unwrap();
    let (x, y) = (va["approx"].as_f64().unwrap(), vb["approx"].as_f64().unwrap());
    assert!((x - y).abs() < 1e-15);
}
