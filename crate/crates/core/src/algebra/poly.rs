//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored in ascending order with no trailing zeros, so
//! the zero polynomial is the empty vector.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Poly::monomial(1, Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    pub fn monomial(degree: usize, c: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Poly::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Poly::new(coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Multiplicity of `x` as a factor (0 for the zero polynomial).
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = self.lc().recip();
        self.scale(&inv)
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Divide by `x^k`, dropping any lower terms.
    pub fn unshift(&self, k: usize) -> Poly {
        Poly::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// `x^deg f(1/x)`.
    pub fn reversed(&self) -> Poly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Poly::new(coeffs)
    }

    /// `f(-x)`.
    pub fn negate_variable(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `self(other(x))`.
    pub fn compose(&self, other: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &Poly::constant(c.clone());
        }
        acc
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.deg();
        if self.degree().is_none_or(|d| d < dd) {
            return (Poly::zero(), self.clone());
        }
        let inv_lc = divisor.lc().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &inv_lc;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    /// Quotient of an exact division; panics if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Inverse of `self` modulo `modulus`, if it exists.
    pub fn inverse_mod(&self, modulus: &Poly) -> Option<Poly> {
        let (g, s, _) = self.rem(modulus).xgcd(modulus);
        if g.is_one() {
            Some(s.rem(modulus))
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Least common multiple of the coefficient denominators.
    fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Primitive integer polynomial associated to `self` with positive leading
    /// coefficient, i.e. `self = c · result` for a rational `c`.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let den = self.denominator_lcm();
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        ints.into_iter().map(|c| c / &content * &sign).collect()
    }

    /// `self` rescaled to a primitive integer polynomial with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        Poly::from_bigints(&self.primitive_integer())
    }

    /// Squarefree part, monic.
    pub fn squarefree_part(&self) -> Poly {
        if self.is_constant() {
            return if self.is_zero() { Poly::zero() } else { Poly::one() };
        }
        self.exact_div(&self.gcd(&self.derivative())).monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).is_constant()
    }

    /// Largest absolute value of a coefficient, useful for root bounds.
    pub fn max_abs_coeff(&self) -> Rational {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_else(Rational::zero)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", crate::algebra::format_terms(self.coeffs.iter().enumerate().map(|(i, c)| (i as i64, c)), "x"))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::algebra::format_terms(
            self.coeffs.iter().enumerate().map(|(i, c)| (i as i64, c)),
            "x",
        ))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Resultant of two polynomials over the rationals (Euclidean remainder sequence).
pub fn resultant(f: &Poly, g: &Poly) -> Rational {
    if f.is_zero() || g.is_zero() {
        return Rational::zero();
    }
    let mut a = f.clone();
    let mut b = g.clone();
    let mut acc = Rational::one();
    loop {
        let (da, db) = (a.deg(), b.deg());
        if db == 0 {
            return acc * pow_rat(&b.lc(), da);
        }
        let r = a.rem(&b);
        if r.is_zero() {
            return Rational::zero();
        }
        let dr = r.deg();
        // res(a, b) = (-1)^(da·db) · lc(b)^(da - dr) · res(b, r)
        if (da * db) % 2 == 1 {
            acc = -acc;
        }
        acc *= pow_rat(&b.lc(), da - dr);
        a = b;
        b = r;
    }
}

pub(crate) fn pow_rat(x: &Rational, e: usize) -> Rational {
    num_traits::pow(x.clone(), e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn division_identity() {
        let f = p(&[2, -5, 2, 7, 1]);
        let g = p(&[1, -1, 3]);
        let (q, r) = f.div_rem(&g);
        assert_eq!(&(&q * &g) + &r, f);
        assert!(r.deg() < g.deg());
    }

    #[test]
    fn gcd_of_coprime_quadratics_is_one() {
        assert!(p(&[1, -1, 1]).gcd(&p(&[2, -5, 2])).is_one());
        let f = p(&[1, -1, 1]);
        assert_eq!(f.gcd(&f.pow(3)), f);
    }

    #[test]
    fn resultant_matches_root_product() {
        // res(x - 2, x^2 - 3) = (2^2 - 3) = 1
        assert_eq!(resultant(&p(&[-2, 1]), &p(&[-3, 0, 1])), Rational::one());
        // common root gives zero
        assert!(resultant(&p(&[-1, 1]), &p(&[-1, 0, 1])).is_zero());
        // res(x^2+1, x^2-2) = prod over roots ±i of (i^2 - 2) = 9
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[-2, 0, 1])), Rational::from_integer(9.into()));
    }

    #[test]
    fn xgcd_bezout() {
        let f = p(&[2, -5, 2]);
        let g = p(&[1, -1, 1]);
        let (d, s, t) = f.xgcd(&g);
        assert!(d.is_one());
        assert_eq!(&(&s * &f) + &(&t * &g), d);
    }

    #[test]
    fn primitive_integer_normalizes_sign_and_content() {
        let f = Poly::new(vec![Rational::new(1.into(), 2.into()), Rational::from_integer((-1).into())]);
        assert_eq!(f.primitive_integer(), vec![BigInt::from(-1), BigInt::from(2)]);
    }
}
