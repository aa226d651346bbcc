//! Serde adapters: big integers as decimal strings, rationals as `"n/d"`.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serializer};

use crate::{format_rational, parse_rational, Rational};

pub mod decimal {
    use super::*;
    use num_bigint::BigInt;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(|_| D::Error::custom(format!("bad integer {s:?}")))
    }
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

/// An interval `[lo, hi]` as a pair of rational strings.
pub mod interval {
    use super::*;
    use crate::algebra::Interval;
    use serde::Serialize;

    pub fn serialize<S: Serializer>(iv: &Interval, s: S) -> Result<S::Ok, S::Error> {
        [format_rational(&iv.lo), format_rational(&iv.hi)].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Interval, D::Error> {
        let [lo, hi] = <[String; 2]>::deserialize(d)?;
        let lo = parse_rational(&lo).map_err(D::Error::custom)?;
        let hi = parse_rational(&hi).map_err(D::Error::custom)?;
        if lo > hi {
            return Err(D::Error::custom("interval with lo > hi"));
        }
        Ok(Interval::new(lo, hi))
    }
}
