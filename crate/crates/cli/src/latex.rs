use qzeta::rules::{ClassicalTerm, Composition};
use qzeta::{MollifierTriple, Shift, SignedIndex, SignedString};

fn entry(x: SignedIndex) -> String {
    if x.is_barred() {
        format!("\\overline{{{}}}", x.magnitude())
    } else {
        x.magnitude().to_string()
    }
}

fn args(s: &SignedString) -> String {
    s.entries().iter().map(|&x| entry(x)).collect::<Vec<_>>().join(",")
}

fn shift(r: Shift) -> String {
    match r {
        Shift::Theta => "\\theta".into(),
        Shift::Int(v) => v.to_string(),
    }
}

fn join<T: ToString>(v: impl IntoIterator<Item = T>) -> String {
    v.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn signed_sum(terms: impl IntoIterator<Item = (bool, String)>) -> String {
    let mut out = String::new();
    for (i, (neg, body)) in terms.into_iter().enumerate() {
        match (i, neg) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    out
}

pub fn classical_identity(s: &Composition, terms: &[ClassicalTerm]) -> String {
    let rhs = signed_sum(
        terms
            .iter()
            .map(|t| (t.sign < 0, format!("{}\\zeta({})", t.coefficient, args(&t.index)))),
    );
    format!("\\zeta^{{\\star}}({}) = {rhs}", s)
}

pub fn q_identity(s: &Composition, delta: i32, terms: &[MollifierTriple]) -> String {
    let rhs = signed_sum(terms.iter().map(|t| {
        (
            delta < 0,
            format!(
                "\\mathfrak{{z}}[{}; {}; {}]",
                args(t.s()),
                join(t.t()),
                t.r().iter().map(|&r| shift(r)).collect::<Vec<_>>().join(",")
            ),
        )
    }));
    format!("\\zeta^{{\\star}}[{}] = {rhs}", s)
}
