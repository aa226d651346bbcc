//! Real-root isolation by Sturm sequences, exact real algebraic numbers, and
//! unimodular roots of Laurent polynomials.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::cyclotomic::cyclotomic_poly;
use super::factor::irreducible_factors;
use super::interval::{self, Interval};
use super::laurent::LaurentPoly;
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::Rational;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn sign_of(x: &Rational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub fn sturm_sequence(f: &Poly) -> Vec<Poly> {
    let mut seq = vec![f.clone(), f.derivative()];
    while !seq.last().unwrap().is_zero() {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    if seq.last().unwrap().is_zero() {
        seq.pop();
    }
    seq
}

fn variations(seq: &[Poly], x: &Rational) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in seq {
        let s = sign_of(&p.eval(x));
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Number of distinct real roots of squarefree `f` in the half-open interval `(a, b]`.
pub fn count_roots(seq: &[Poly], a: &Rational, b: &Rational) -> usize {
    variations(seq, a) - variations(seq, b)
}

/// Isolating intervals `(lo, hi)` for the real roots of squarefree `f` in the open
/// interval `(a, b)`, sorted ascending. Endpoints of proper intervals are never
/// roots; a root met exactly by bisection is reported as a degenerate interval.
pub fn isolate_real_roots(f: &Poly, a: &Rational, b: &Rational) -> Vec<(Rational, Rational)> {
    let f = f.squarefree_part();
    if f.is_constant() {
        return Vec::new();
    }
    let seq = sturm_sequence(&f);
    let mut out = Vec::new();
    let mut stack = vec![(a.clone(), b.clone())];
    // Roots at the outer endpoints are excluded from the open interval.
    while let Some((lo, hi)) = stack.pop() {
        let mut n = count_roots(&seq, &lo, &hi);
        if f.eval(&hi).is_zero() {
            n -= 1;
        }
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push((lo, hi));
            continue;
        }
        let mid = (&lo + &hi) / q(2);
        if f.eval(&mid).is_zero() {
            out.push((mid.clone(), mid.clone()));
        }
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    // Move endpoints that happen to be roots strictly inside.
    let mut fixed = Vec::new();
    for (lo, hi) in out {
        if lo == hi {
            fixed.push((lo, hi));
            continue;
        }
        let open_count = |a: &Rational, b: &Rational| {
            count_roots(&seq, a, b) - usize::from(f.eval(b).is_zero())
        };
        let mut lo = lo;
        let mut hi = hi;
        if f.eval(&lo).is_zero() {
            let mut step = (&hi - &lo) / q(2);
            loop {
                let cand = &lo + &step;
                if !f.eval(&cand).is_zero() && open_count(&cand, &hi) == 1 {
                    lo = cand;
                    break;
                }
                step /= q(2);
            }
        }
        if f.eval(&hi).is_zero() {
            let mut step = (&hi - &lo) / q(2);
            loop {
                let cand = &hi - &step;
                if !f.eval(&cand).is_zero() && open_count(&lo, &cand) == 1 {
                    hi = cand;
                    break;
                }
                step /= q(2);
            }
        }
        fixed.push((lo, hi));
    }
    fixed.sort();
    fixed
}

/// A real algebraic number: a root of an irreducible primitive integer
/// polynomial inside an isolating interval with non-root rational endpoints.
/// Degree-one numbers are stored exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealRoot {
    minpoly: Poly,
    lo: Rational,
    hi: Rational,
}

impl RealRoot {
    pub fn rational(x: Rational) -> Self {
        let minpoly = Poly::new(vec![-x.clone(), Rational::one()]).primitive();
        RealRoot { minpoly, lo: x.clone(), hi: x }
    }

    /// Builds from an irreducible polynomial and an interval containing exactly
    /// one of its roots in the open interval (or a degenerate interval at a rational root).
    pub fn new(minpoly: Poly, lo: Rational, hi: Rational) -> Self {
        let minpoly = minpoly.primitive();
        if minpoly.deg() == 1 {
            let root = -minpoly.coeff(0) / minpoly.coeff(1);
            return RealRoot::rational(root);
        }
        debug_assert!(lo < hi);
        RealRoot { minpoly, lo, hi }
    }

    pub fn minpoly(&self) -> &Poly {
        &self.minpoly
    }

    pub fn interval(&self) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn bounds(&self) -> (&Rational, &Rational) {
        (&self.lo, &self.hi)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        (self.lo == self.hi).then_some(&self.lo)
    }

    /// Halve the isolating interval.
    pub fn refine(&mut self) {
        if self.lo == self.hi {
            return;
        }
        let mid = (&self.lo + &self.hi) / q(2);
        let sm = sign_of(&self.minpoly.eval(&mid));
        debug_assert!(sm != 0);
        let sl = sign_of(&self.minpoly.eval(&self.lo));
        if sm == sl {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    /// Refine until the interval width is at most `w`.
    pub fn refine_to(&mut self, w: &Rational) {
        while &(&self.hi - &self.lo) > w {
            self.refine();
        }
    }

    pub fn cmp_rational(&self, x: &Rational) -> Ordering {
        if let Some(r) = self.as_rational() {
            return r.cmp(x);
        }
        if x <= &self.lo {
            return Ordering::Greater;
        }
        if x >= &self.hi {
            return Ordering::Less;
        }
        let sx = sign_of(&self.minpoly.eval(x));
        debug_assert!(sx != 0, "rational root of an irreducible polynomial of degree > 1");
        let sl = sign_of(&self.minpoly.eval(&self.lo));
        if sx == sl {
            // root lies in (x, hi)
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    /// Exact comparison.
    pub fn cmp_exact(&self, other: &RealRoot) -> Ordering {
        if let Some(r) = other.as_rational() {
            return self.cmp_rational(r);
        }
        if let Some(r) = self.as_rational() {
            return other.cmp_rational(r).reverse();
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        if a.minpoly == b.minpoly {
            let lo = a.lo.clone().max(b.lo.clone());
            let hi = a.hi.clone().min(b.hi.clone());
            if lo < hi {
                let sl = sign_of(&a.minpoly.eval(&lo));
                let sh = sign_of(&a.minpoly.eval(&hi));
                if sl != sh {
                    return Ordering::Equal;
                }
            }
        }
        loop {
            if a.hi <= b.lo {
                return Ordering::Less;
            }
            if b.hi <= a.lo {
                return Ordering::Greater;
            }
            a.refine();
            b.refine();
        }
    }

    pub fn to_f64(&self) -> f64 {
        let mut r = self.clone();
        r.refine_to(&Rational::new(BigInt::one(), BigInt::one() << 64));
        interval::to_f64(&r.interval().mid())
    }
}

/// An angle `θ ∈ (0, π)` given exactly by `s₀ = 2 cos θ`, a root of an
/// irreducible polynomial in `s = t + t⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicAngle {
    s: RealRoot,
}

impl AlgebraicAngle {
    pub fn from_twice_cos(s: RealRoot) -> Result<Self> {
        let two = q(2);
        if s.cmp_rational(&two) != Ordering::Less || s.cmp_rational(&-two) != Ordering::Greater {
            return Err(Error::InvalidArgument("2cos(theta) must lie in (-2, 2)".into()));
        }
        let mut s = s;
        // keep the isolating interval inside (-2, 2)
        while s.as_rational().is_none() && (s.lo <= q(-2) || s.hi >= q(2)) {
            s.refine();
        }
        Ok(AlgebraicAngle { s })
    }

    /// The angle with rational cosine `c ∈ (-1, 1)`.
    pub fn from_cos(c: Rational) -> Result<Self> {
        AlgebraicAngle::from_twice_cos(RealRoot::rational(c * q(2)))
    }

    /// The angle `2πk/d` folded into `(0, π)`; requires `d / gcd(k, d) >= 3`.
    pub fn root_of_unity(d: u64, k: u64) -> Result<Self> {
        let g = d.gcd(&k);
        let (order, mut j) = (d / g, (k % d) / g);
        if order < 3 {
            return Err(Error::InvalidArgument(format!("angle 2*pi*{k}/{d} is 0 or pi")));
        }
        if 2 * j > order {
            j = order - j;
        }
        let h = palindromic_to_s(&cyclotomic_poly(order))
            .expect("cyclotomic polynomials of order >= 3 are palindromic");
        // Roots of h are 2cos(2πi/order) for i coprime to order, i < order/2,
        // decreasing in i.
        let mut roots = isolate_real_roots(&h, &q(-2), &q(2));
        roots.reverse();
        let rank = (1..j).filter(|i| i.gcd(&order) == 1).count();
        let (lo, hi) = roots[rank].clone();
        AlgebraicAngle::from_twice_cos(RealRoot::new(h, lo, hi))
    }

    pub fn twice_cos(&self) -> &RealRoot {
        &self.s
    }

    pub fn minpoly(&self) -> &Poly {
        self.s.minpoly()
    }

    /// Enclosure of `cos θ` of width at most `w`.
    pub fn cos_enclosure(&mut self, w: &Rational) -> Interval {
        self.s.refine_to(&(w * q(2)));
        self.s.interval().scale(&Rational::new(1.into(), 2.into()))
    }

    /// Enclosure of `sin θ` (positive) of width about `w`.
    pub fn sin_enclosure(&mut self, w: &Rational, prec: u32) -> Interval {
        let c = self.cos_enclosure(w);
        let one = Interval::point(Rational::one());
        let sq = &one - &(&c * &c);
        let sq = Interval { lo: sq.lo.max(Rational::zero()), hi: sq.hi };
        sq.sqrt(prec)
    }

    /// Enclosure of `θ / π`... rather of `θ` itself, to about `2^-prec`.
    pub fn angle_enclosure(&self, prec: u32) -> Interval {
        let mut s = self.s.clone();
        let target = Rational::new(BigInt::one(), BigInt::one() << (prec as usize + 2));
        s.refine_to(&target);
        let c = s.interval().scale(&Rational::new(1.into(), 2.into()));
        interval::arccos_interval(&c, prec + 4)
    }

    /// Exact angle comparison (angles grow as `2cos θ` shrinks).
    pub fn cmp_angle(&self, other: &AlgebraicAngle) -> Ordering {
        other.s.cmp_exact(&self.s)
    }

    pub fn to_f64(&self) -> f64 {
        (self.s.to_f64() / 2.0).acos()
    }
}

impl Serialize for AlgebraicAngle {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            minpoly_in_s: LaurentPoly,
            isolating_interval: (String, String),
            approx_radians: f64,
        }
        Repr {
            minpoly_in_s: LaurentPoly::from_poly(&self.s.minpoly, 0),
            isolating_interval: (crate::format_rational(&self.s.lo), crate::format_rational(&self.s.hi)),
            approx_radians: self.to_f64(),
        }
        .serialize(ser)
    }
}

/// A point on the unit circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnitPoint {
    /// `exp(2πi·index/order)`.
    RootOfUnity { order: u64, index: u64 },
    /// `exp(±iθ)`, the minus sign when `conjugate` is set.
    Angle { angle: AlgebraicAngle, conjugate: bool },
}

impl UnitPoint {
    pub fn root_of_unity(order: u64, index: u64) -> Result<Self> {
        if order == 0 || index >= order {
            return Err(Error::InvalidArgument(format!("root of unity needs 0 <= r < d, got r={index}, d={order}")));
        }
        Ok(UnitPoint::RootOfUnity { order, index })
    }

    pub fn minus_one() -> Self {
        UnitPoint::RootOfUnity { order: 2, index: 1 }
    }

    pub fn one() -> Self {
        UnitPoint::RootOfUnity { order: 1, index: 0 }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, UnitPoint::RootOfUnity { index: 0, .. })
    }

    /// Reduced form `(d, r)` with `gcd(r, d) = 1` for roots of unity.
    pub fn reduced(&self) -> Option<(u64, u64)> {
        match self {
            UnitPoint::RootOfUnity { order, index } => {
                let g = order.gcd(index);
                Some((order / g, index / g))
            }
            UnitPoint::Angle { .. } => None,
        }
    }

    /// Folded position on the upper half circle: `None` for 1, `Some(None)`
    /// for −1, otherwise the angle in `(0, π)`.
    pub fn folded(&self) -> Option<Option<AlgebraicAngle>> {
        match self {
            UnitPoint::RootOfUnity { order, index } => {
                let (d, r) = (order / order.gcd(index), index / order.gcd(index));
                match d {
                    1 => None,
                    2 => Some(None),
                    _ => Some(Some(AlgebraicAngle::root_of_unity(d, r).expect("order >= 3"))),
                }
            }
            UnitPoint::Angle { angle, .. } => Some(Some(angle.clone())),
        }
    }
}

/// Unimodular roots of a Laurent polynomial, one entry per conjugate pair.
#[derive(Clone, Debug, Default)]
pub struct UnitCircleRoots {
    /// Angles in `(0, π)`, ascending.
    pub angles: Vec<AlgebraicAngle>,
    pub at_one: bool,
    pub at_minus_one: bool,
}

/// Converts a palindromic polynomial `g` of even degree `2n` into `h` of degree
/// `n` with `g(t) = t^n h(t + 1/t)`. Returns `None` if `g` is not palindromic.
pub fn palindromic_to_s(g: &Poly) -> Option<Poly> {
    let d = g.deg();
    if d % 2 == 1 || g.reversed() != *g || g.valuation() != 0 {
        return None;
    }
    let n = d / 2;
    // Dickson polynomials D_k(s) = t^k + t^-k.
    let mut dickson = vec![Poly::constant(q(2)), Poly::x()];
    for k in 2..=n {
        let next = &(&Poly::x() * &dickson[k - 1]) - &dickson[k - 2];
        dickson.push(next);
    }
    let mut h = Poly::constant(g.coeff(n));
    for k in 1..=n {
        h = &h + &dickson[k].scale(&g.coeff(n + k));
    }
    Some(h)
}

/// Unimodular roots of `f`: substitution `s = t + 1/t` and Sturm isolation in `(-2, 2)`.
pub fn unit_circle_roots(f: &LaurentPoly) -> Result<UnitCircleRoots> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("unit_circle_roots"));
    }
    let (_, p) = f.to_poly();
    let mut g = p.gcd(&p.reversed());
    let mut out = UnitCircleRoots::default();
    if g.is_constant() {
        return Ok(out);
    }
    let t_minus_one = Poly::from_ints(&[-1, 1]);
    let t_plus_one = Poly::from_ints(&[1, 1]);
    while t_minus_one.divides(&g) {
        out.at_one = true;
        g = g.exact_div(&t_minus_one);
    }
    while t_plus_one.divides(&g) {
        out.at_minus_one = true;
        g = g.exact_div(&t_plus_one);
    }
    let g = g.squarefree_part();
    if g.is_constant() {
        return Ok(out);
    }
    let h = palindromic_to_s(&g).expect("gcd(f, f*) without ±1 roots is palindromic");
    for factor in irreducible_factors(&h) {
        for (lo, hi) in isolate_real_roots(&factor, &q(-2), &q(2)) {
            let root = if lo == hi { RealRoot::rational(lo) } else { RealRoot::new(factor.clone(), lo, hi) };
            out.angles.push(AlgebraicAngle::from_twice_cos(root)?);
        }
    }
    out.angles.sort_by(|a, b| a.cmp_angle(b));
    Ok(out)
}
