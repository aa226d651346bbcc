//! Closed rational intervals with outward dyadic rounding, and certified
//! enclosures of `π`, `cos`, `atan`, `arccos` and square roots.
//!
//! Every function taking a `prec` argument returns an interval guaranteed to
//! contain the true value, of width roughly `2^-prec` (a few bits of slack).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", to_f64(&self.lo), to_f64(&self.hi))
    }
}

pub fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn floor_dyadic(q: &Rational, prec: u32) -> Rational {
    let n = (q.numer() << prec as usize).div_floor(q.denom());
    Rational::new(n, BigInt::one() << prec as usize)
}

fn ceil_dyadic(q: &Rational, prec: u32) -> Rational {
    let n = (q.numer() << prec as usize).div_ceil(q.denom());
    Rational::new(n, BigInt::one() << prec as usize)
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "inverted interval");
        Interval { lo, hi }
    }

    pub fn point(q: Rational) -> Self {
        Interval { lo: q.clone(), hi: q }
    }

    pub fn zero() -> Self {
        Interval::point(Rational::zero())
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / r(2)
    }

    pub fn contains(&self, q: &Rational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Rational::zero())
    }

    /// `Some(sign)` when the interval excludes zero or is exactly zero.
    pub fn sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    /// Certified comparison; `None` when the intervals overlap.
    pub fn compare(&self, other: &Interval) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.lo == self.hi && other.lo == other.hi && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn round_out(&self, prec: u32) -> Interval {
        Interval { lo: floor_dyadic(&self.lo, prec), hi: ceil_dyadic(&self.hi, prec) }
    }

    pub fn scale(&self, c: &Rational) -> Interval {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn recip(&self) -> Option<Interval> {
        if self.contains_zero() {
            return None;
        }
        Some(Interval { lo: self.hi.recip(), hi: self.lo.recip() })
    }

    pub fn div(&self, other: &Interval) -> Option<Interval> {
        Some(self * &other.recip()?)
    }

    pub fn abs_max(&self) -> Rational {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    /// Square root of a nonnegative interval (negative parts clamp to 0).
    pub fn sqrt(&self, prec: u32) -> Interval {
        let lo = if self.lo.is_positive() { sqrt_down(&self.lo, prec) } else { Rational::zero() };
        let hi = if self.hi.is_positive() { sqrt_up(&self.hi, prec) } else { Rational::zero() };
        Interval { lo, hi }
    }
}

fn sqrt_down(q: &Rational, prec: u32) -> Rational {
    let scaled = (q.numer() << (2 * prec as usize)).div_floor(q.denom());
    Rational::new(scaled.sqrt(), BigInt::one() << prec as usize)
}

fn sqrt_up(q: &Rational, prec: u32) -> Rational {
    let scaled = (q.numer() << (2 * prec as usize)).div_ceil(q.denom());
    let s = scaled.sqrt();
    let s = if &s * &s == scaled { s } else { s + 1 };
    Rational::new(s, BigInt::one() << prec as usize)
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, o: &Interval) -> Interval {
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }
}

/// `atan(y)` for a rational `|y| <= 1/2` by the alternating Taylor series.
fn atan_small(y: &Rational, prec: u32) -> Interval {
    debug_assert!(y.abs() <= Rational::new(1.into(), 2.into()));
    let wp = prec + 8;
    let y2 = Interval::point(y * y).round_out(wp);
    let mut pow = Interval::point(y.clone());
    let mut sum = Interval::zero();
    let eps = Rational::new(BigInt::one(), BigInt::one() << (prec as usize + 2));
    let mut k: i64 = 0;
    loop {
        let term = pow.scale(&Rational::new(1.into(), (2 * k + 1).into()));
        if term.abs_max() < eps {
            // Alternating, decreasing series: the tail is bounded by this term.
            let tail = term.abs_max();
            sum = Interval { lo: sum.lo - &tail, hi: sum.hi + tail };
            break;
        }
        sum = if k % 2 == 0 { &sum + &term } else { &sum - &term };
        sum = sum.round_out(wp);
        pow = (&pow * &y2).round_out(wp);
        k += 1;
    }
    sum
}

fn atan_half(prec: u32) -> Interval {
    atan_small(&Rational::new(1.into(), 2.into()), prec)
}

/// Enclosure of `π` via Machin's formula.
pub fn pi(prec: u32) -> Interval {
    let wp = prec + 8;
    let a = atan_small(&Rational::new(1.into(), 5.into()), wp).scale(&r(16));
    let b = atan_small(&Rational::new(1.into(), 239.into()), wp).scale(&r(4));
    (&a - &b).round_out(prec + 4)
}

/// Enclosure of `atan(x)` for a rational `x`.
pub fn atan(x: &Rational, prec: u32) -> Interval {
    let wp = prec + 8;
    if x.is_negative() {
        return -&atan(&-x, prec);
    }
    if x > &Rational::one() {
        let half_pi = pi(wp).scale(&Rational::new(1.into(), 2.into()));
        return (&half_pi - &atan(&x.recip(), wp)).round_out(prec + 4);
    }
    let half = Rational::new(1.into(), 2.into());
    if x <= &half {
        return atan_small(x, prec);
    }
    // atan(x) = atan(1/2) + atan((x - 1/2) / (1 + x/2)), the latter argument <= 2/5.
    let y = (x - &half) / (Rational::one() + x / r(2));
    (&atan_half(wp) + &atan_small(&y, wp)).round_out(prec + 4)
}

/// Enclosure of `atan` over an interval (monotone).
pub fn atan_interval(x: &Interval, prec: u32) -> Interval {
    Interval { lo: atan(&x.lo, prec).lo, hi: atan(&x.hi, prec).hi }
}

/// Enclosure of `arccos(c)` for a rational `c ∈ [-1, 1]`.
pub fn arccos(c: &Rational, prec: u32) -> Interval {
    assert!(c.abs() <= Rational::one(), "arccos argument outside [-1, 1]");
    if c.is_one() {
        return Interval::zero();
    }
    if *c == -Rational::one() {
        return pi(prec);
    }
    let wp = prec + 8;
    // arccos(c) = 2·atan(sqrt((1 - c) / (1 + c)))
    let ratio = (Rational::one() - c) / (Rational::one() + c);
    let s = Interval::point(ratio).sqrt(wp);
    atan_interval(&s, wp).scale(&r(2)).round_out(prec + 4)
}

/// Enclosure of `arccos` over an interval inside `[-1, 1]` (decreasing).
pub fn arccos_interval(c: &Interval, prec: u32) -> Interval {
    let one = Rational::one();
    let hi_arg = c.lo.clone().max(-one.clone());
    let lo_arg = c.hi.clone().min(one);
    Interval { lo: arccos(&lo_arg, prec).lo, hi: arccos(&hi_arg, prec).hi }
}

/// `cos(m)` for rational `|m| <= 4` by Taylor series with Lagrange remainder.
fn cos_rational(m: &Rational, prec: u32) -> Interval {
    let wp = prec + 8;
    let m2 = Interval::point(m * m).round_out(wp);
    let mut term = Interval::point(Rational::one());
    let mut sum = Interval::zero();
    let eps = Rational::new(BigInt::one(), BigInt::one() << (prec as usize + 2));
    let mut k: i64 = 0;
    loop {
        sum = if k % 2 == 0 { &sum + &term } else { &sum - &term };
        sum = sum.round_out(wp);
        let next = (&term * &m2).scale(&Rational::new(1.into(), ((2 * k + 1) * (2 * k + 2)).into())).round_out(wp);
        if 2 * k + 2 > 8 && next.abs_max() < eps {
            let tail = next.abs_max();
            sum = Interval { lo: sum.lo - &tail, hi: sum.hi + tail };
            break;
        }
        term = next;
        k += 1;
    }
    let one = Rational::one();
    Interval { lo: sum.lo.max(-one.clone()), hi: sum.hi.min(one) }
}

/// Enclosure of `cos` over an interval of width small relative to `2^-prec`.
/// Uses the midpoint value widened by the radius (cos is 1-Lipschitz).
pub fn cos_interval(x: &Interval, prec: u32) -> Interval {
    let m = x.mid();
    let rad = x.width() / r(2);
    assert!(m.abs() <= r(4), "cos_interval expects arguments in [-4, 4]");
    let c = cos_rational(&m, prec);
    let one = Rational::one();
    Interval { lo: (c.lo - &rad).max(-one.clone()), hi: (c.hi + rad).min(one) }
}

/// Enclosure of `cos(2π·r/d)`.
pub fn cos_two_pi_fraction(r_num: i64, d: i64, prec: u32) -> Interval {
    assert!(d > 0);
    let mut num = r_num.rem_euclid(d);
    // cos(2π f) = cos(2π (1 - f))
    if 2 * num > d {
        num = d - num;
    }
    if num == 0 {
        return Interval::point(Rational::one());
    }
    if 2 * num == d {
        return Interval::point(-Rational::one());
    }
    if 4 * num == d {
        return Interval::zero();
    }
    let wp = prec + 8;
    let angle = pi(wp + 4).scale(&Rational::new((2 * num).into(), d.into()));
    cos_interval(&angle, wp).round_out(prec + 4)
}

/// Enclosure of `sin(2π·r/d)`.
pub fn sin_two_pi_fraction(r_num: i64, d: i64, prec: u32) -> Interval {
    // sin(2π f) = cos(2π f - π/2) = cos(2π (4f - 1)/4)
    cos_two_pi_fraction(4 * r_num - d, 4 * d, prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn contains_f64(i: &Interval, x: f64, slack: f64) -> bool {
        to_f64(&i.lo) - slack <= x && x <= to_f64(&i.hi) + slack
    }

    #[test]
    fn pi_is_tight_and_correct() {
        let p = pi(200);
        assert!(p.width() < q(1, 1) / Rational::from_integer(BigInt::one() << 190));
        assert!(contains_f64(&p, std::f64::consts::PI, 1e-15));
        // 355/113 is above π
        assert!(p.hi < q(355, 113));
    }

    #[test]
    fn arccos_half_is_third_of_pi() {
        let a = arccos(&q(1, 2), 80);
        let third = pi(80).scale(&q(1, 3));
        assert!(a.lo <= third.hi && third.lo <= a.hi);
        assert!(a.width() < q(1, 1_000_000_000_000));
    }

    #[test]
    fn cos_of_root_angles() {
        let c = cos_two_pi_fraction(1, 7, 60);
        assert!(contains_f64(&c, (2.0 * std::f64::consts::PI / 7.0).cos(), 1e-15));
        let s = sin_two_pi_fraction(1, 7, 60);
        assert!(contains_f64(&s, (2.0 * std::f64::consts::PI / 7.0).sin(), 1e-15));
        let c3 = cos_two_pi_fraction(1, 3, 60);
        assert!(c3.contains(&q(-1, 2)));
    }

    #[test]
    fn atan_branches() {
        for x in [q(-3, 1), q(-1, 3), q(3, 5), q(9, 10), q(17, 2)] {
            let i = atan(&x, 64);
            assert!(contains_f64(&i, to_f64(&x).atan(), 1e-15), "{x}");
            assert!(i.width() < q(1, 1 << 50));
        }
    }

    #[test]
    fn sqrt_brackets() {
        let s = Interval::point(r(2)).sqrt(40);
        assert!(&s.lo * &s.lo <= r(2) && r(2) <= &s.hi * &s.hi);
    }
}
