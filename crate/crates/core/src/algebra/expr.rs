//! Certified sign determination for real algebraic expressions built from
//! rationals and `cos`/`sin` of algebraic angles.
//!
//! Nonzero values are certified by interval evaluation at doubling precision.
//! Zero is certified symbolically: an annihilating polynomial is built by
//! resultants, and a value whose enclosure sits below the root-separation
//! bound of that polynomial's nonzero roots must be zero.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::interval::Interval;
use super::poly::{resultant, Poly};
use super::roots::AlgebraicAngle;
use crate::error::{Error, Result};
use crate::Rational;

#[derive(Clone, Debug)]
pub enum Expr {
    Rat(Rational),
    Cos(AlgebraicAngle),
    Sin(AlgebraicAngle),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
}

impl Expr {
    pub fn rat(q: Rational) -> Expr {
        Expr::Rat(q)
    }

    pub fn int(n: i64) -> Expr {
        Expr::Rat(Rational::from_integer(n.into()))
    }

    pub fn frac(n: i64, d: i64) -> Expr {
        Expr::Rat(Rational::new(n.into(), d.into()))
    }

    pub fn cos(a: &AlgebraicAngle) -> Expr {
        Expr::Cos(a.clone())
    }

    pub fn sin(a: &AlgebraicAngle) -> Expr {
        Expr::Sin(a.clone())
    }

    /// Interval enclosure at working precision `prec` bits.
    pub fn enclose(&self, prec: u32) -> Option<Interval> {
        let w = Rational::new(BigInt::one(), BigInt::one() << prec as usize);
        Some(match self {
            Expr::Rat(q) => Interval::point(q.clone()),
            Expr::Cos(a) => a.clone().cos_enclosure(&w),
            Expr::Sin(a) => a.clone().sin_enclosure(&w, prec),
            Expr::Add(a, b) => (&a.enclose(prec)? + &b.enclose(prec)?).round_out(prec + 8),
            Expr::Sub(a, b) => (&a.enclose(prec)? - &b.enclose(prec)?).round_out(prec + 8),
            Expr::Mul(a, b) => (&a.enclose(prec)? * &b.enclose(prec)?).round_out(prec + 8),
            Expr::Div(a, b) => a.enclose(prec)?.div(&b.enclose(prec)?)?.round_out(prec + 8),
            Expr::Neg(a) => -&a.enclose(prec)?,
        })
    }

    /// A nonzero squarefree polynomial vanishing at the value of `self`.
    pub fn annihilator(&self) -> Poly {
        let p = match self {
            Expr::Rat(q) => Poly::new(vec![-q.clone(), Rational::one()]),
            Expr::Cos(a) => a.minpoly().compose(&Poly::from_ints(&[0, 2])),
            Expr::Sin(a) => {
                let m = a.minpoly().compose(&Poly::from_ints(&[0, 2]));
                let d = 2 * m.deg();
                interpolate_resultant(d, |x| {
                    // c^2 + x^2 - 1 as a polynomial in c
                    let b = Poly::new(vec![x * x - Rational::one(), Rational::zero(), Rational::one()]);
                    resultant(&m, &b)
                })
            }
            Expr::Add(a, b) => sum_annihilator(&a.annihilator(), &b.annihilator()),
            Expr::Sub(a, b) => sum_annihilator(&a.annihilator(), &b.annihilator().negate_variable()),
            Expr::Mul(a, b) => product_annihilator(&a.annihilator(), &b.annihilator()),
            Expr::Div(a, b) => product_annihilator(&a.annihilator(), &b.annihilator().reversed()),
            Expr::Neg(a) => a.annihilator().negate_variable(),
        };
        debug_assert!(!p.is_zero());
        p.squarefree_part()
    }

    /// Float evaluation, diagnostics and oracle tests only.
    pub fn to_f64(&self) -> f64 {
        match self {
            Expr::Rat(q) => super::interval::to_f64(q),
            Expr::Cos(a) => a.to_f64().cos(),
            Expr::Sin(a) => a.to_f64().sin(),
            Expr::Add(a, b) => a.to_f64() + b.to_f64(),
            Expr::Sub(a, b) => a.to_f64() - b.to_f64(),
            Expr::Mul(a, b) => a.to_f64() * b.to_f64(),
            Expr::Div(a, b) => a.to_f64() / b.to_f64(),
            Expr::Neg(a) => -a.to_f64(),
        }
    }

    fn check_divisors(&self) -> Result<()> {
        match self {
            Expr::Rat(_) | Expr::Cos(_) | Expr::Sin(_) => Ok(()),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.check_divisors()?;
                b.check_divisors()
            }
            Expr::Div(a, b) => {
                a.check_divisors()?;
                if certified_sign(b)? == 0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(())
            }
            Expr::Neg(a) => a.check_divisors(),
        }
    }
}

/// Builds `R(x)` of degree at most `d` from its values at `x = 0..=d`.
fn interpolate_resultant<F: Fn(&Rational) -> Rational>(d: usize, eval: F) -> Poly {
    let xs: Vec<Rational> = (0..=d as i64).map(|i| Rational::from_integer(i.into())).collect();
    let ys: Vec<Rational> = xs.iter().map(&eval).collect();
    // Newton divided differences.
    let mut coef = ys.clone();
    for j in 1..coef.len() {
        for i in (j..coef.len()).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut p = Poly::zero();
    for i in (0..coef.len()).rev() {
        p = &(&p * &Poly::new(vec![-xs[i].clone(), Rational::one()])) + &Poly::constant(coef[i].clone());
    }
    p
}

/// Annihilator of `α + β` given annihilators of `α` and `β`: `Res_y(P(y), Q(x - y))`.
fn sum_annihilator(p: &Poly, q: &Poly) -> Poly {
    let d = p.deg() * q.deg();
    interpolate_resultant(d, |x| {
        let shifted = q.compose(&Poly::new(vec![x.clone(), -Rational::one()]));
        resultant(p, &shifted)
    })
}

/// Annihilator of `α·β`: `Res_y(P(y), y^deg Q · Q(x / y))`.
fn product_annihilator(p: &Poly, q: &Poly) -> Poly {
    let d = p.deg() * q.deg();
    let dq = q.deg();
    interpolate_resultant(d, |x| {
        let mut coeffs = vec![Rational::zero(); dq + 1];
        let mut xk = Rational::one();
        for k in 0..=dq {
            coeffs[dq - k] = q.coeff(k) * &xk;
            xk *= x;
        }
        resultant(p, &Poly::new(coeffs))
    })
}

/// Lower bound on the absolute value of any nonzero root of `p`.
fn nonzero_root_bound(p: &Poly) -> Rational {
    let v = p.valuation();
    let q = p.unshift(v);
    let c0 = q.coeff(0).abs();
    let m = q.max_abs_coeff();
    &c0 / (&c0 + m)
}

/// Exact sign of a real algebraic expression: `-1`, `0` or `1`.
pub fn certified_sign(x: &Expr) -> Result<i8> {
    x.check_divisors()?;
    let mut zero_bound: Option<Option<Rational>> = None;
    let mut prec = 32u32;
    while prec <= 1 << 16 {
        if let Some(iv) = x.enclose(prec) {
            if let Some(s) = iv.sign() {
                return Ok(s);
            }
            let bound = zero_bound.get_or_insert_with(|| {
                let p = x.annihilator();
                // `None` when 0 is not a root: the value is certainly nonzero.
                p.eval(&Rational::zero()).is_zero().then(|| nonzero_root_bound(&p))
            });
            if let Some(b) = bound {
                if -&*b < iv.lo && iv.hi < *b {
                    return Ok(0);
                }
            }
        }
        prec *= 2;
    }
    Err(Error::Undecided(16))
}

macro_rules! bin_op {
    ($tr:ident, $m:ident, $v:ident) => {
        impl $tr for Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                Expr::$v(Box::new(self), Box::new(rhs))
            }
        }
    };
}
bin_op!(Add, add, Add);
bin_op!(Sub, sub, Sub);
bin_op!(Mul, mul, Mul);
bin_op!(Div, div, Div);

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}
