use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::Poly;
use crate::{parse_rational, Rational};

/// A Laurent polynomial in one variable `t` with rational coefficients.
///
/// Only nonzero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, Rational::one())
    }

    pub fn t() -> Self {
        LaurentPoly::monomial(1, Rational::one())
    }

    pub fn monomial(exp: i64, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    pub fn constant(c: Rational) -> Self {
        LaurentPoly::monomial(0, c)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(it: I) -> Self {
        let mut terms: BTreeMap<i64, Rational> = BTreeMap::new();
        for (e, c) in it {
            *terms.entry(e).or_insert_with(Rational::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPoly { terms }
    }

    /// Coefficients listed from `t^0` upwards.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        LaurentPoly::from_poly(&Poly::from_ints(coeffs), 0)
    }

    /// `t^shift · p(t)`.
    pub fn from_poly(p: &Poly, shift: i64) -> Self {
        LaurentPoly::from_terms(
            p.coeffs().iter().enumerate().map(|(i, c)| (i as i64 + shift, c.clone())),
        )
    }

    /// Splits `self` as `t^shift · p(t)` with `p(0) != 0`.
    pub fn to_poly(&self) -> (i64, Poly) {
        let Some(lo) = self.min_exp() else {
            return (0, Poly::zero());
        };
        let hi = self.max_exp().unwrap();
        let mut coeffs = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            coeffs[(e - lo) as usize] = c.clone();
        }
        (lo, Poly::new(coeffs))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for `±c·t^k`, the units of the Laurent ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Span `max_exp - min_exp`; zero for units and the zero polynomial.
    pub fn degree(&self) -> usize {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => (hi - lo) as usize,
            _ => 0,
        }
    }

    /// Coefficient of the highest power.
    pub fn top_coeff(&self) -> Rational {
        self.terms.values().next_back().cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of the lowest power.
    pub fn bottom_coeff(&self) -> Rational {
        self.terms.values().next().cloned().unwrap_or_else(Rational::zero)
    }

    /// Shift so the minimum exponent is 0 and the leading coefficient is positive.
    pub fn canonical(&self) -> LaurentPoly {
        let (_, p) = self.to_poly();
        let p = if p.lc().is_negative() { -&p } else { p };
        LaurentPoly::from_poly(&p, 0)
    }

    /// Canonical associate up to all units of the rational Laurent ring:
    /// primitive integer coefficients, minimum exponent 0, positive leading coefficient.
    pub fn normalized(&self) -> LaurentPoly {
        let (_, p) = self.to_poly();
        LaurentPoly::from_poly(&p.primitive(), 0)
    }

    /// Normalized form as a dense polynomial.
    pub fn normalized_poly(&self) -> Poly {
        self.to_poly().1.primitive()
    }

    /// `f(1/t)`.
    pub fn conj(&self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect() }
    }

    pub fn pow(&self, e: u64) -> LaurentPoly {
        let (shift, p) = self.to_poly();
        LaurentPoly::from_poly(&p.pow(e), shift * e as i64)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        assert!(!x.is_zero() || self.min_exp().is_none_or(|e| e >= 0), "evaluation at 0 of a negative power");
        self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            let xe = if *e >= 0 {
                num_traits::pow(x.clone(), *e as usize)
            } else {
                num_traits::pow(x.recip(), (-*e) as usize)
            };
            acc + c * xe
        })
    }

    /// Equality up to a unit `c·t^k` of the Laurent ring.
    pub fn associated(&self, other: &LaurentPoly) -> bool {
        self.normalized() == other.normalized()
    }

    /// Reciprocal up to units: `f(1/t) ≐ f(t)`.
    pub fn is_reciprocal(&self) -> bool {
        self.associated(&self.conj())
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> LaurentPoly {
        LaurentPoly::from_poly(&Poly::from_bigints(coeffs), 0)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::format_terms(self.terms(), "t"))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().chain(rhs.terms()).map(|(e, c)| (e, c.clone())))
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let (sa, a) = self.to_poly();
        let (sb, b) = rhs.to_poly();
        LaurentPoly::from_poly(&(&a * &b), sa + sb)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[derive(Serialize, Deserialize)]
struct LaurentJson {
    terms: Vec<(i64, String)>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LaurentJson {
            terms: self.terms.iter().map(|(e, c)| (*e, crate::format_rational(c))).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = LaurentJson::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for (e, c) in raw.terms {
            terms.push((e, parse_rational(&c).map_err(D::Error::custom)?));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_shifts_and_fixes_sign() {
        let f = LaurentPoly::from_terms([(-1, Rational::from_integer((-1).into())), (0, Rational::one())]);
        assert_eq!(f.canonical(), LaurentPoly::from_ints(&[-1, 1]));
    }

    #[test]
    fn display_descending() {
        assert_eq!(LaurentPoly::from_ints(&[1, -1, 1]).to_string(), "t^2-t+1");
        assert_eq!(LaurentPoly::from_ints(&[2, -5, 2]).to_string(), "2t^2-5t+2");
        assert_eq!(LaurentPoly::one().to_string(), "1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn json_shape() {
        let f = LaurentPoly::from_terms([(-1, Rational::new(1.into(), 2.into())), (2, Rational::from_integer(3.into()))]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"terms":[[-1,"1/2"],[2,"3"]]}"#);
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn conj_and_reciprocity() {
        let d = LaurentPoly::from_ints(&[2, -5, 2]);
        assert!(d.is_reciprocal());
        assert!(!LaurentPoly::from_ints(&[-1, 2]).is_reciprocal());
    }
}
