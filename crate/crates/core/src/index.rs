//! Signed indices, extended shifts and the exponent function `Q`.
//!
//! A [`SignedIndex`] is a nonnegative integer that may carry a bar (written
//! `-k` in text). Barred entries contribute an alternating factor `(-1)^k` to
//! every sum they index. O-plus ([`oplus`]) adds magnitudes and multiplies
//! signs. A [`Shift`] is an integer or the neutral symbol θ, combined with
//! square-plus ([`boxplus`]).

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element of the signed nonnegative numbers: `k` or `k̄`.
///
/// Magnitude 0 is allowed with either sign (`0` and `-0` are distinct).
///
/// JSON form: a signed integer, negative for barred entries, and the string
/// `"-0"` for the barred zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedIndex {
    magnitude: u32,
    barred: bool,
}

impl SignedIndex {
    pub const fn new(magnitude: u32, barred: bool) -> Self {
        Self { magnitude, barred }
    }

    pub const fn plain(magnitude: u32) -> Self {
        Self::new(magnitude, false)
    }

    pub const fn bar(magnitude: u32) -> Self {
        Self::new(magnitude, true)
    }

    pub const fn magnitude(self) -> u32 {
        self.magnitude
    }

    pub const fn is_barred(self) -> bool {
        self.barred
    }

    /// `+1` for plain entries, `-1` for barred ones.
    pub const fn sign(self) -> i32 {
        if self.barred {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for SignedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.barred {
            write!(f, "-{}", self.magnitude)
        } else {
            write!(f, "{}", self.magnitude)
        }
    }
}

impl FromStr for SignedIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (barred, digits) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("invalid signed index `{s}`")));
        }
        let magnitude = digits
            .parse()
            .map_err(|_| Error::Parse(format!("signed index `{s}` out of range")))?;
        Ok(Self::new(magnitude, barred))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonAtom {
    Int(i64),
    Str(String),
}

impl Serialize for SignedIndex {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match (self.magnitude, self.barred) {
            (0, true) => JsonAtom::Str("-0".into()),
            (m, b) => JsonAtom::Int(if b { -i64::from(m) } else { i64::from(m) }),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for SignedIndex {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        match JsonAtom::deserialize(de)? {
            JsonAtom::Int(v) => u32::try_from(v.unsigned_abs())
                .map(|m| Self::new(m, v < 0))
                .map_err(|_| D::Error::custom(format!("signed index {v} out of range"))),
            JsonAtom::Str(s) => s.parse().map_err(D::Error::custom),
        }
    }
}

/// O-plus: magnitudes add, signs multiply. Commutative and associative.
pub fn oplus(a: SignedIndex, b: SignedIndex) -> SignedIndex {
    SignedIndex::new(a.magnitude + b.magnitude, a.barred != b.barred)
}

/// The third component of a mollifier triple: an integer or θ.
/// JSON form: an integer, or the string `"theta"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shift {
    Theta,
    Int(i64),
}

impl Shift {
    /// Projection onto the integers, θ ↦ 0. A semigroup homomorphism for ⊞.
    pub const fn project(self) -> i64 {
        match self {
            Shift::Theta => 0,
            Shift::Int(v) => v,
        }
    }
}

impl From<i64> for Shift {
    fn from(v: i64) -> Self {
        Shift::Int(v)
    }
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shift::Theta => f.write_str("theta"),
            Shift::Int(v) => write!(f, "{v}"),
        }
    }
}

impl FromStr for Shift {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("theta") || s == "θ" {
            return Ok(Shift::Theta);
        }
        s.parse()
            .map(Shift::Int)
            .map_err(|_| Error::Parse(format!("invalid shift `{s}`")))
    }
}

impl Serialize for Shift {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            Shift::Theta => JsonAtom::Str("theta".into()),
            Shift::Int(v) => JsonAtom::Int(v),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Shift {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        match JsonAtom::deserialize(de)? {
            JsonAtom::Int(v) => Ok(Shift::Int(v)),
            JsonAtom::Str(s) => s.parse().map_err(D::Error::custom),
        }
    }
}

/// Square-plus. θ is neutral, `1 ⊞ -1 = θ`, `-1 ⊞ 1 = 0`, otherwise integer
/// addition. Not associative, so multi-way merges always fold left to right
/// (see [`fold_shifts`]).
pub fn boxplus(a: Shift, b: Shift) -> Shift {
    match (a, b) {
        (Shift::Theta, x) | (x, Shift::Theta) => x,
        (Shift::Int(1), Shift::Int(-1)) => Shift::Theta,
        (Shift::Int(-1), Shift::Int(1)) => Shift::Int(0),
        (Shift::Int(x), Shift::Int(y)) => Shift::Int(x + y),
    }
}

/// Left fold of ⊞ over a nonempty run. Returns `None` for an empty run.
pub fn fold_shifts<I: IntoIterator<Item = Shift>>(run: I) -> Option<Shift> {
    run.into_iter().reduce(boxplus)
}

/// The exponent function `Q(r, k)` attached to a shift.
///
/// `r k(k-1)/2` for `r > 0`, `r k(k-1)/2 - k` for integer `r <= 0`, and 0 for θ.
pub fn q_exponent(r: Shift, k: i64) -> i64 {
    let tri = k * (k - 1) / 2;
    match r {
        Shift::Theta => 0,
        Shift::Int(v) if v > 0 => v * tri,
        Shift::Int(v) => v * tri - k,
    }
}

/// Sign of a composition's expansion: `+1` if it ends in 1, `-1` otherwise.
pub fn delta(s: &[u32]) -> Result<i32> {
    match s.last() {
        None => Err(Error::EmptyComposition),
        Some(1) => Ok(1),
        Some(_) => Ok(-1),
    }
}

/// Ordered list of signed indices; may be empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedString(pub Vec<SignedIndex>);

impl SignedString {
    pub fn new(entries: Vec<SignedIndex>) -> Self {
        Self(entries)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Unsigned string from plain magnitudes.
    pub fn from_magnitudes(m: &[u32]) -> Self {
        Self(m.iter().map(|&v| SignedIndex::plain(v)).collect())
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u64 {
        self.0.iter().map(|e| u64::from(e.magnitude())).sum()
    }

    pub fn entries(&self) -> &[SignedIndex] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for SignedString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for SignedString {
    type Err = Error;

    /// Comma-separated entries, `-k` for a barred `k`; the empty string is allowed.
    fn from_str(src: &str) -> Result<Self> {
        let src = src.trim();
        if src.is_empty() {
            return Ok(Self::empty());
        }
        src.split(',').map(|x| x.trim().parse()).collect()
    }
}

impl FromIterator<SignedIndex> for SignedString {
    fn from_iter<I: IntoIterator<Item = SignedIndex>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}
