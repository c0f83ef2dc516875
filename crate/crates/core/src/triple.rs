//! Mollifier triples `[s; t; r]` and their unresolved ∘-patterns.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{fold_shifts, Shift, SignedIndex, SignedString};

/// One position of a triple: an index, a linear shift and a quadratic shift.
pub type Slot = (SignedIndex, u32, Shift);

/// Three equal-length strings defining a mollified sum.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MollifierTriple {
    s: SignedString,
    t: Vec<u32>,
    r: Vec<Shift>,
}

impl MollifierTriple {
    pub fn new(s: SignedString, t: Vec<u32>, r: Vec<Shift>) -> Result<Self> {
        if s.depth() != t.len() || t.len() != r.len() {
            return Err(Error::LengthMismatch {
                s: s.depth(),
                t: t.len(),
                r: r.len(),
            });
        }
        Ok(Self { s, t, r })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_slots<I: IntoIterator<Item = Slot>>(slots: I) -> Self {
        let mut out = Self::empty();
        for (s, t, r) in slots {
            out.s.0.push(s);
            out.t.push(t);
            out.r.push(r);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn s(&self) -> &SignedString {
        &self.s
    }

    pub fn t(&self) -> &[u32] {
        &self.t
    }

    pub fn r(&self) -> &[Shift] {
        &self.r
    }

    pub fn slot(&self, i: usize) -> Slot {
        (self.s.0[i], self.t[i], self.r[i])
    }

    pub fn slots(&self) -> impl ExactSizeIterator<Item = Slot> + '_ {
        (0..self.len()).map(|i| self.slot(i))
    }

    /// True iff every left-to-right partial ⊞-fold of `r` lies in `{1, 2}`.
    pub fn is_admissible(&self) -> bool {
        shifts_admissible(&self.r)
    }

    /// Concatenation `[self, other]` (comma between the two parts).
    pub fn concat(&self, other: &MollifierTriple) -> MollifierTriple {
        MollifierTriple::from_slots(self.slots().chain(other.slots()))
    }
}

/// True iff every partial left fold of `r` equals the integer 1 or 2.
pub fn shifts_admissible(r: &[Shift]) -> bool {
    let mut acc: Option<Shift> = None;
    for &x in r {
        let next = match acc {
            None => x,
            Some(a) => fold_shifts([a, x]).unwrap(),
        };
        if !matches!(next, Shift::Int(1) | Shift::Int(2)) {
            return false;
        }
        acc = Some(next);
    }
    true
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T], sep: &str) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl fmt::Display for MollifierTriple {
    /// `[s; t; r]` with comma-separated entries, e.g. `[-4,1; 2,0; 1,theta]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        write_list(f, &self.s.0, ",")?;
        f.write_str("; ")?;
        write_list(f, &self.t, ",")?;
        f.write_str("; ")?;
        write_list(f, &self.r, ",")?;
        f.write_str("]")
    }
}

fn parse_parts(src: &str, sep: char) -> Result<(Vec<SignedIndex>, Vec<u32>, Vec<Shift>)> {
    let body = src
        .trim()
        .trim_start_matches(['[', '{'])
        .trim_end_matches([']', '}']);
    let parts: Vec<&str> = body.split(';').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!("expected `s; t; r`, got `{src}`")));
    }
    let items = |p: &str| -> Vec<String> {
        if p.trim().is_empty() {
            Vec::new()
        } else {
            p.split(sep).map(|x| x.trim().to_string()).collect()
        }
    };
    let s = items(parts[0])
        .iter()
        .map(|x| x.parse())
        .collect::<Result<Vec<SignedIndex>>>()?;
    let t = items(parts[1])
        .iter()
        .map(|x| {
            x.parse::<u32>()
                .map_err(|_| Error::Parse(format!("invalid t entry `{x}`")))
        })
        .collect::<Result<Vec<u32>>>()?;
    let r = items(parts[2])
        .iter()
        .map(|x| x.parse())
        .collect::<Result<Vec<Shift>>>()?;
    Ok((s, t, r))
}

impl FromStr for MollifierTriple {
    type Err = Error;

    fn from_str(src: &str) -> Result<Self> {
        let (s, t, r) = parse_parts(src, ',')?;
        MollifierTriple::new(SignedString(s), t, r)
    }
}

/// A triple whose consecutive positions are joined by unresolved connectors ∘.
///
/// Each connector independently becomes a comma or a merge (⊕ on `s`, `+` on
/// `t`, ⊞ on `r`), with commas at the same positions in all three strings.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PatternTriple(MollifierTriple);

impl PatternTriple {
    pub fn new(slots: MollifierTriple) -> Self {
        Self(slots)
    }

    pub fn from_slots<I: IntoIterator<Item = Slot>>(slots: I) -> Self {
        Self(MollifierTriple::from_slots(slots))
    }

    /// The resolution with every connector a comma.
    pub fn slots(&self) -> &MollifierTriple {
        &self.0
    }

    pub fn into_slots(self) -> MollifierTriple {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_admissible(&self) -> bool {
        self.0.is_admissible()
    }
}

impl fmt::Display for PatternTriple {
    /// `{s1 o s2; t1 o t2; r1 o r2}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.0;
        f.write_str("{")?;
        write_list(f, &m.s.0, " o ")?;
        f.write_str("; ")?;
        write_list(f, &m.t, " o ")?;
        f.write_str("; ")?;
        write_list(f, &m.r, " o ")?;
        f.write_str("}")
    }
}

impl FromStr for PatternTriple {
    type Err = Error;

    fn from_str(src: &str) -> Result<Self> {
        let (s, t, r) = parse_parts(&src.replace(" o ", ","), ',')?;
        Ok(Self(MollifierTriple::new(SignedString(s), t, r)?))
    }
}
