//! Exact evaluation at roots of unity in `Q(ζ_d) = Q[x]/(Φ_d)`.

use num_traits::{One, Zero};

use super::laurent::LaurentPoly;
use super::poly::Poly;
use crate::Rational;

/// The `n`-th cyclotomic polynomial, `Φ_n = ∏_{d | n} (x^d - 1)^{μ(n/d)}`.
pub fn cyclotomic_poly(n: u64) -> Poly {
    assert!(n >= 1);
    let mut num = Poly::one();
    let mut den = Poly::one();
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        let xd = &Poly::monomial(d as usize, Rational::one()) - &Poly::one();
        match mobius(n / d) {
            1 => num = &num * &xd,
            -1 => den = &den * &xd,
            _ => {}
        }
    }
    num.exact_div(&den)
}

fn mobius(mut n: u64) -> i8 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// An element of the cyclotomic field of order `d`, kept in normal form
/// (reduced modulo `Φ_d`), so equality and zero tests are exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicElement {
    order: u64,
    value: Poly,
}

impl CyclotomicElement {
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Normal form as a polynomial in `ζ_d` of degree below `φ(d)`.
    pub fn value(&self) -> &Poly {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Complex value, for diagnostics only.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let theta = 2.0 * std::f64::consts::PI / self.order as f64;
        self.value.coeffs().iter().enumerate().fold((0.0, 0.0), |(re, im), (k, c)| {
            let c = super::interval::to_f64(c);
            (re + c * (theta * k as f64).cos(), im + c * (theta * k as f64).sin())
        })
    }
}

/// Exact value of `f(ζ_d^r)` with `ζ_d = exp(2πi/d)`.
pub fn eval_root_of_unity(f: &LaurentPoly, d: u64, r: u64) -> CyclotomicElement {
    assert!(d >= 1, "root of unity order must be positive");
    let mut coeffs = vec![Rational::zero(); d as usize];
    for (e, c) in f.terms() {
        let k = (e as i128 * r as i128).rem_euclid(d as i128) as usize;
        coeffs[k] += c;
    }
    let value = Poly::new(coeffs).rem(&cyclotomic_poly(d));
    CyclotomicElement { order: d, value }
}
