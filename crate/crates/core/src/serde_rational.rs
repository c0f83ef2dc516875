//! Serializes exact rationals as `"p/q"` strings.

use rug::Rational;
use serde::{Deserialize, Deserializer, Serializer};

pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
    let text = String::deserialize(d)?;
    crate::qarith::parse_rational(&text).map_err(serde::de::Error::custom)
}
