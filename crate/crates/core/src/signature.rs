//! Levine-Tristram signatures, computed exactly.
//!
//! The signature is locally constant away from the unimodular roots of `Δ`.
//! Each arc of the upper half circle is evaluated once, at a point
//! `ω = ((1 − u²) + 2ui)/(1 + u²)` with rational `u`, where the Hermitian form
//! has rational real and imaginary parts and its inertia follows from a
//! rational symmetric elimination of the realified form.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::interval::{self, Interval};
use crate::algebra::roots::palindromic_to_s;
use crate::algebra::{eval_root_of_unity, unit_circle_roots, AlgebraicAngle, Poly, RealRoot, UnitPoint};
use crate::error::{Error, Result};
use crate::matrix::{smith_normal_form, symmetric_inertia, Matrix};
use crate::seifert::SeifertMatrix;
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub signature: i64,
    pub nullity: usize,
}

/// The signature function on the upper half circle. `arc_values[j]` is the
/// value on the open arc between consecutive entries of `0, jump_angles…, π`;
/// the lower half circle mirrors it.
#[derive(Clone, Debug, Serialize)]
pub struct SignatureProfile {
    pub jump_angles: Vec<AlgebraicAngle>,
    pub arc_values: Vec<i64>,
    pub value_at_one: i64,
}

impl SignatureProfile {
    pub fn is_zero(&self) -> bool {
        self.arc_values.iter().all(|v| *v == 0)
    }

    /// Index of the arc containing `angle`, or `Err(j)` when `angle` is the jump `j`.
    pub fn locate(&self, angle: &AlgebraicAngle) -> std::result::Result<usize, usize> {
        for (j, jump) in self.jump_angles.iter().enumerate() {
            match angle.cmp_angle(jump) {
                Ordering::Less => return Ok(j),
                Ordering::Equal => return Err(j),
                Ordering::Greater => {}
            }
        }
        Ok(self.jump_angles.len())
    }

    /// Value at a nonsingular point, or the two-sided average at a jump.
    pub fn value_at(&self, w: &UnitPoint) -> i64 {
        match w.folded() {
            None => self.value_at_one,
            Some(None) => *self.arc_values.last().unwrap_or(&0),
            Some(Some(angle)) => match self.locate(&angle) {
                Ok(j) => self.arc_values[j],
                Err(j) => (self.arc_values[j] + self.arc_values[j + 1]) / 2,
            },
        }
    }

    pub fn negated(&self) -> SignatureProfile {
        SignatureProfile {
            jump_angles: self.jump_angles.clone(),
            arc_values: self.arc_values.iter().map(|v| -v).collect(),
            value_at_one: 0,
        }
    }
}

pub fn sig_profile(v: &SeifertMatrix) -> SignatureProfile {
    if v.dim() == 0 {
        return SignatureProfile { jump_angles: Vec::new(), arc_values: vec![0], value_at_one: 0 };
    }
    let delta = v.alexander().delta;
    let jumps = unit_circle_roots(&delta).expect("Alexander polynomial is nonzero").angles;
    let two = Rational::from_integer(2.into());
    let mut ends: Vec<RealRoot> = vec![RealRoot::rational(two.clone())];
    ends.extend(jumps.iter().map(|a| a.twice_cos().clone()));
    ends.push(RealRoot::rational(-two));
    let arc_values = ends
        .windows(2)
        .map(|w| {
            let (c, s) = pythagorean_point_between(&w[1], &w[0]);
            hermitian_inertia(v, &c, &s).0
        })
        .collect();
    SignatureProfile { jump_angles: jumps, arc_values, value_at_one: 0 }
}

/// Signature and nullity of `(1 − ω)V + (1 − ω̄)Vᵀ`.
pub fn lt_signature(v: &SeifertMatrix, w: &UnitPoint) -> Signature {
    let n = v.dim();
    match w.folded() {
        None => Signature { signature: 0, nullity: n },
        Some(None) => {
            let (p, m, z) = symmetric_inertia(&symmetrized(v, &Rational::from_integer(2.into())));
            Signature { signature: p as i64 - m as i64, nullity: z }
        }
        Some(Some(angle)) => {
            let profile = sig_profile(v);
            match profile.locate(&angle) {
                Ok(j) => Signature { signature: profile.arc_values[j], nullity: 0 },
                Err(j) => Signature {
                    signature: (profile.arc_values[j] + profile.arc_values[j + 1]) / 2,
                    nullity: nullity_at(v, &angle),
                },
            }
        }
    }
}

/// `Σ_{r=0}^{p−1} σ(ζ_p^r)` for a prime `p`.
pub fn sig_sum(v: &SeifertMatrix, p: u64) -> Result<i64> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let delta = v.alexander().delta;
    for r in 1..p {
        if eval_root_of_unity(&delta, p, r).is_zero() {
            return Err(Error::SingularPoint { order: p, index: r });
        }
    }
    let profile = sig_profile(v);
    Ok(sum_over_roots(&profile, p))
}

/// `Σ_r σ(ζ_p^r)` read off a profile; the caller guarantees no `ζ_p^r` is a jump.
pub fn sum_over_roots(profile: &SignatureProfile, p: u64) -> i64 {
    if profile.is_zero() {
        return 0;
    }
    (1..p)
        .map(|r| profile.value_at(&UnitPoint::RootOfUnity { order: p, index: r }))
        .sum()
}

/// Enclosure of `∫σ` over the circle with total mass 1, of width at most `tol`.
pub fn sig_integral(v: &SeifertMatrix, tol: &Rational) -> Interval {
    integral_of_profile(&sig_profile(v), tol)
}

pub fn integral_of_profile(profile: &SignatureProfile, tol: &Rational) -> Interval {
    if profile.is_zero() {
        return Interval::zero();
    }
    let mut prec = 32u32;
    loop {
        let pi = interval::pi(prec + 8);
        let mut ends = vec![Interval::zero()];
        ends.extend(profile.jump_angles.iter().map(|a| a.angle_enclosure(prec)));
        ends.push(pi.clone());
        let mut total = Interval::zero();
        for (j, value) in profile.arc_values.iter().enumerate() {
            let len = &ends[j + 1] - &ends[j];
            total = &total + &len.scale(&Rational::from_integer((*value).into()));
        }
        let result = total.div(&pi).expect("pi enclosure excludes zero");
        if &result.width() <= tol {
            return result;
        }
        prec *= 2;
    }
}

/// `c ± i·s` on the unit circle with `lo < 2c < hi` and rational `c`, `s > 0`.
fn pythagorean_point_between(lo: &RealRoot, hi: &RealRoot) -> (Rational, Rational) {
    let (mut a, mut b) = (lo.clone(), hi.clone());
    while a.bounds().1 >= b.bounds().0 {
        a.refine();
        b.refine();
    }
    let (gap_lo, gap_hi) = (a.bounds().1.clone(), b.bounds().0.clone());
    let third = (&gap_hi - &gap_lo) / Rational::from_integer(3.into());
    let two = Rational::from_integer(2.into());
    let c_lo = (&gap_lo + &third) / &two;
    let c_hi = (&gap_hi - &third) / &two;
    // c(u) = (1 − u²)/(1 + u²) is decreasing in u ≥ 0.
    let one = Rational::one();
    let u2_lo = (&one - &c_hi) / (&one + &c_hi);
    let u2_hi = (&one - &c_lo) / (&one + &c_lo);
    let (mut u_lo, mut u_hi) = (Rational::zero(), &u2_hi + &one);
    let u = loop {
        let mid = (&u_lo + &u_hi) / &two;
        let sq = &mid * &mid;
        if sq <= u2_lo {
            u_lo = mid;
        } else if sq >= u2_hi {
            u_hi = mid;
        } else {
            break mid;
        }
    };
    let d = &one + &u * &u;
    ((&one - &u * &u) / &d, (&two * &u) / &d)
}

/// `k·(V + Vᵀ)`.
fn symmetrized(v: &SeifertMatrix, k: &Rational) -> Matrix<Rational> {
    let n = v.dim();
    (0..n)
        .map(|i| (0..n).map(|j| k * Rational::from_integer((v.get(i, j) + v.get(j, i)).into())).collect())
        .collect()
}

/// Inertia of `H = (1 − c)(V + Vᵀ) − i·s(V − Vᵀ)` via `[[A, −B], [B, A]]`.
fn hermitian_inertia(v: &SeifertMatrix, c: &Rational, s: &Rational) -> (i64, usize) {
    let n = v.dim();
    let a = symmetrized(v, &(Rational::one() - c));
    let b: Matrix<Rational> = (0..n)
        .map(|i| (0..n).map(|j| -s * Rational::from_integer((v.get(i, j) - v.get(j, i)).into())).collect())
        .collect();
    let mut real = vec![vec![Rational::zero(); 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            real[i][j] = a[i][j].clone();
            real[n + i][n + j] = a[i][j].clone();
            real[i][n + j] = -b[i][j].clone();
            real[n + i][j] = b[i][j].clone();
        }
    }
    let (p, m, z) = symmetric_inertia(&real);
    ((p as i64 - m as i64) / 2, z / 2)
}

/// Number of invariant factors of `tV − Vᵀ` vanishing at `e^{iθ}`.
fn nullity_at(v: &SeifertMatrix, angle: &AlgebraicAngle) -> usize {
    let n = v.dim();
    let m: Matrix<Poly> = (0..n)
        .map(|i| (0..n).map(|j| Poly::from_ints(&[-v.get(j, i), v.get(i, j)])).collect())
        .collect();
    let h = angle.minpoly();
    let palindrome = palindromic_lift(h);
    smith_normal_form(&m)
        .diagonal
        .iter()
        .filter(|f| {
            let g = f.gcd(&palindrome);
            if g.is_constant() {
                return false;
            }
            // g(ω) = 0 iff g(t)·g(1/t) vanishes there, a palindrome in s = t + 1/t.
            let gg = &g * &g.reversed();
            let k = palindromic_to_s(&gg).expect("g·g* is palindromic");
            h.divides(&k)
        })
        .count()
}

/// `t^n·h(t + 1/t)` for `h` of degree `n`.
fn palindromic_lift(h: &Poly) -> Poly {
    let n = h.deg();
    let s = Poly::from_ints(&[1, 0, 1]);
    let mut acc = Poly::zero();
    for (k, c) in h.coeffs().iter().enumerate() {
        let term = &s.pow(k as u64) * &Poly::monomial(n - k, Rational::one());
        acc = &acc + &term.scale(c);
    }
    acc
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Exact signature of the realified form for a point given by rational `u`; exposed for tests.
pub fn signature_at_rational_tangent(v: &SeifertMatrix, u: &Rational) -> Signature {
    let one = Rational::one();
    let d = &one + u * u;
    let c = (&one - u * u) / &d;
    let s = (Rational::from_integer(BigInt::from(2)) * u) / &d;
    let (sig, z) = hermitian_inertia(v, &c, &s.abs());
    Signature { signature: sig, nullity: z }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: Vec<Vec<i64>>) -> SeifertMatrix {
        SeifertMatrix::validate(e).unwrap()
    }

    fn trefoil() -> SeifertMatrix {
        m(vec![vec![-1, 1], vec![0, -1]])
    }

    fn v6() -> SeifertMatrix {
        m(vec![vec![0, 2], vec![1, 0]])
    }

    #[test]
    fn trefoil_values() {
        assert_eq!(lt_signature(&trefoil(), &UnitPoint::minus_one()), Signature { signature: -2, nullity: 0 });
        assert_eq!(lt_signature(&trefoil(), &UnitPoint::one()), Signature { signature: 0, nullity: 2 });
        assert_eq!(sig_sum(&trefoil(), 3).unwrap(), -4);
        assert_eq!(sig_sum(&trefoil().mirror(), 3).unwrap(), 4);
        let prof = sig_profile(&trefoil());
        assert_eq!(prof.jump_angles.len(), 1);
        assert_eq!(prof.arc_values, vec![0, -2]);
    }

    #[test]
    fn trefoil_at_its_root_is_singular() {
        let s = lt_signature(&trefoil(), &UnitPoint::RootOfUnity { order: 6, index: 1 });
        assert_eq!(s, Signature { signature: -1, nullity: 1 });
        let two = trefoil().block_sum(&trefoil());
        let s2 = lt_signature(&two, &UnitPoint::RootOfUnity { order: 6, index: 5 });
        assert_eq!(s2, Signature { signature: -2, nullity: 2 });
    }

    #[test]
    fn algebraically_slice_example_is_zero() {
        assert_eq!(lt_signature(&v6(), &UnitPoint::RootOfUnity { order: 4, index: 1 }).signature, 0);
        let prof = sig_profile(&v6());
        assert!(prof.jump_angles.is_empty());
        assert!(prof.is_zero());
        assert!(sig_integral(&v6(), &Rational::new(1.into(), 1000.into())).width().is_zero());
    }

    #[test]
    fn trefoil_integral() {
        let tol = Rational::new(1.into(), BigInt::from(10).pow(9));
        let iv = sig_integral(&trefoil(), &tol);
        assert!(iv.width() <= tol);
        assert!(iv.contains(&Rational::new((-4).into(), 3.into())));
    }

    #[test]
    fn unknot_is_empty() {
        let u = SeifertMatrix::empty();
        assert_eq!(sig_sum(&u, 5).unwrap(), 0);
        assert!(sig_integral(&u, &Rational::one()).width().is_zero());
        assert!(sig_profile(&u).is_zero());
    }

    #[test]
    fn non_prime_rejected() {
        assert!(sig_sum(&trefoil(), 9).is_err());
    }

    #[test]
    fn direct_point_evaluation_matches_arcs() {
        // u = 1 is ω = i, inside the trefoil's jump arc.
        assert_eq!(signature_at_rational_tangent(&trefoil(), &Rational::one()).signature, -2);
        assert_eq!(signature_at_rational_tangent(&trefoil(), &Rational::new(1.into(), 10.into())).signature, 0);
    }
}
