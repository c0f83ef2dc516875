//! Comma/merge resolution of ∘-patterns.
//!
//! A pattern of length `m` has `m - 1` connectors and therefore `2^{m-1}`
//! resolutions. Resolutions are produced in a fixed order: by number of
//! commas, then lexicographically by comma positions. For the two-one
//! pattern `A1 ∘ A2 ∘ A3` that is `(A1+A2+A3)`, `(A1, A2+A3)`, `(A1+A2, A3)`,
//! `(A1, A2, A3)`.

use itertools::Itertools;

use crate::index::{boxplus, oplus, SignedIndex, SignedString};
use crate::triple::{MollifierTriple, PatternTriple, Slot};

/// Merges a run of slots: ⊕ on `s`, `+` on `t`, ⊞ on `r`, all left folds.
fn merge_run(run: &[Slot]) -> Slot {
    let mut acc = run[0];
    for &(s, t, r) in &run[1..] {
        acc = (oplus(acc.0, s), acc.1 + t, boxplus(acc.2, r));
    }
    acc
}

/// The resolution with commas after the (0-based) slot positions in `commas`.
/// Positions must be increasing and `< len - 1`.
pub fn resolve(pattern: &PatternTriple, commas: &[usize]) -> MollifierTriple {
    let slots: Vec<Slot> = pattern.slots().slots().collect();
    let mut out = Vec::with_capacity(commas.len() + 1);
    let mut start = 0;
    for &c in commas.iter().chain(std::iter::once(&(slots.len() - 1))) {
        out.push(merge_run(&slots[start..=c]));
        start = c + 1;
    }
    MollifierTriple::from_slots(out)
}

/// Lazy iterator over all resolutions of a pattern.
pub struct Expansion<'a> {
    pattern: &'a PatternTriple,
    subsets: Box<dyn Iterator<Item = Vec<usize>> + 'a>,
}

impl Iterator for Expansion<'_> {
    type Item = MollifierTriple;

    fn next(&mut self) -> Option<MollifierTriple> {
        let commas = self.subsets.next()?;
        Some(resolve(self.pattern, &commas))
    }
}

/// Iterates every resolution of `pattern`. An empty pattern yields the single
/// empty triple.
pub fn expand_iter(pattern: &PatternTriple) -> Expansion<'_> {
    let gaps = pattern.len().saturating_sub(1);
    let subsets: Box<dyn Iterator<Item = Vec<usize>>> = if pattern.is_empty() {
        Box::new(std::iter::once(Vec::new()))
    } else {
        Box::new((0..=gaps).flat_map(move |c| (0..gaps).combinations(c)))
    };
    Expansion { pattern, subsets }
}

/// All `2^{m-1}` resolutions, materialized.
pub fn expand(pattern: &PatternTriple) -> Vec<MollifierTriple> {
    if pattern.is_empty() {
        return vec![MollifierTriple::empty()];
    }
    expand_iter(pattern).collect()
}

/// All ⊕-resolutions of a signed ∘-string, in the same order as [`expand`].
pub fn expand_string(lambda: &SignedString) -> Vec<SignedString> {
    let m = lambda.depth();
    if m == 0 {
        return vec![SignedString::empty()];
    }
    let e = lambda.entries();
    (0..m)
        .flat_map(|c| (0..m - 1).combinations(c))
        .map(|commas| {
            let mut out: Vec<SignedIndex> = Vec::with_capacity(commas.len() + 1);
            let mut start = 0;
            for &c in commas.iter().chain(std::iter::once(&(m - 1))) {
                out.push(e[start + 1..=c].iter().fold(e[start], |a, &b| oplus(a, b)));
                start = c + 1;
            }
            SignedString(out)
        })
        .collect()
}

/// Whether every left-to-right partial ⊞-fold of the pattern's `r` lies in `{1, 2}`.
pub fn is_admissible(pattern: &PatternTriple) -> bool {
    pattern.is_admissible()
}
