//! Factorization over the rationals.
//!
//! Squarefree decomposition (Yun), then Zassenhaus on each squarefree part:
//! Cantor-Zassenhaus modulo a small prime, linear Hensel lifting, and
//! exhaustive recombination of the lifted factors.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::laurent::LaurentPoly;
use super::poly::Poly;
use crate::error::Error;

/// Factors a nonzero Laurent polynomial into irreducible normalized factors
/// with multiplicities. Units `c·t^k` are dropped.
pub fn factor_rational(f: &LaurentPoly) -> Result<Vec<(LaurentPoly, u32)>, Error> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("factor_rational"));
    }
    let (_, p) = f.to_poly();
    Ok(factor_poly(&p)
        .into_iter()
        .map(|(g, m)| (LaurentPoly::from_poly(&g, 0), m))
        .collect())
}

/// Factors a nonzero polynomial into primitive integer irreducibles with positive
/// leading coefficient, sorted by degree then coefficients. Powers of `x` are
/// reported like any other factor.
pub fn factor_poly(f: &Poly) -> Vec<(Poly, u32)> {
    assert!(!f.is_zero(), "factor of zero polynomial");
    let mut out = Vec::new();
    let v = f.valuation();
    if v > 0 {
        out.push((Poly::x(), v as u32));
    }
    let f = f.unshift(v);
    for (part, mult) in squarefree_decomposition(&f) {
        for g in factor_squarefree(&part) {
            out.push((g, mult));
        }
    }
    out.sort_by(|a, b| cmp_poly(&a.0, &b.0));
    out
}

/// Irreducible factors of a squarefree polynomial, without multiplicities.
pub fn irreducible_factors(f: &Poly) -> Vec<Poly> {
    factor_poly(&f.squarefree_part()).into_iter().map(|(g, _)| g).collect()
}

pub fn is_irreducible(f: &Poly) -> bool {
    let fs = factor_poly(f);
    fs.len() == 1 && fs[0].1 == 1
}

fn cmp_poly(a: &Poly, b: &Poly) -> std::cmp::Ordering {
    a.deg()
        .cmp(&b.deg())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

/// Yun's algorithm. Returns primitive integer parts with their multiplicity.
pub fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let f = f.monic();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.exact_div(&a0);
    let c = df.exact_div(&a0);
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let a = b.gcd(&d);
        let nb = b.exact_div(&a);
        let nc = d.exact_div(&a);
        d = &nc - &nb.derivative();
        b = nb;
        if !a.is_constant() {
            out.push((a.primitive(), i));
        }
        i += 1;
    }
    out
}

fn factor_squarefree(f: &Poly) -> Vec<Poly> {
    let ints = f.primitive_integer();
    let n = ints.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![Poly::from_bigints(&ints)];
    }
    // Monic transform F(y) = a^(n-1) f(y/a).
    let a = ints[n].clone();
    let monic: Vec<BigInt> = (0..=n)
        .map(|i| if i == n { BigInt::one() } else { &ints[i] * num_traits::pow(a.clone(), n - 1 - i) })
        .collect();
    zassenhaus_monic(&monic)
        .into_iter()
        .map(|g| {
            // g(a·x), made primitive
            let scaled: Vec<BigInt> =
                g.iter().enumerate().map(|(i, c)| c * num_traits::pow(a.clone(), i)).collect();
            Poly::from_bigints(&scaled).primitive()
        })
        .collect()
}

fn zassenhaus_monic(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let (p, modular) = choose_prime(f);
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    // Mignotte-style bound on coefficients of any monic factor.
    let norm: BigInt = f.iter().map(|c| c.abs()).sum();
    let bound = (BigInt::one() << n) * norm * 2;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        k += 1;
    }
    let lifted = hensel_lift_all(f, &modular, p, k);
    recombine(f, lifted, &pk)
}

fn choose_prime(f: &[BigInt]) -> (u64, Vec<Vec<u64>>) {
    let mut p = 3u64;
    loop {
        if is_small_prime(p) {
            let fp = modp::reduce(f, p);
            let dfp = modp::derivative(&fp, p);
            if fp.len() == f.len() && modp::gcd(&fp, &dfp, p).len() == 1 {
                return (p, modp::factor_squarefree_monic(&fp, p));
            }
        }
        p += 2;
    }
}

pub(crate) fn is_small_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn hensel_lift_all(f: &[BigInt], factors: &[Vec<u64>], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        let m = BigInt::from(p).pow(k);
        return vec![f.iter().map(|c| c.mod_floor(&m)).collect()];
    }
    let g = &factors[0];
    let h = factors[1..].iter().fold(vec![1u64], |acc, u| modp::mul(&acc, u, p));
    let (lg, lh) = hensel_lift_pair(f, g, &h, p, k);
    let mut out = vec![lg];
    out.extend(hensel_lift_all(&lh, &factors[1..], p, k));
    out
}

/// Lifts `f ≡ g·h (mod p)` to `f ≡ G·H (mod p^k)`, with `G`, `H` monic.
fn hensel_lift_pair(f: &[BigInt], g: &[u64], h: &[u64], p: u64, k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let (d, _s, t) = modp::xgcd(g, h, p);
    debug_assert_eq!(d, vec![1]);
    let pb = BigInt::from(p);
    let mut big_g: Vec<BigInt> = g.iter().map(|&c| BigInt::from(c)).collect();
    let mut big_h: Vec<BigInt> = h.iter().map(|&c| BigInt::from(c)).collect();
    let mut q = pb.clone();
    for _ in 1..k {
        let gh = int_mul(&big_g, &big_h);
        let e: Vec<BigInt> = (0..f.len().max(gh.len()))
            .map(|i| {
                let diff = f.get(i).cloned().unwrap_or_default() - gh.get(i).cloned().unwrap_or_default();
                debug_assert!((&diff % &q).is_zero());
                diff / &q
            })
            .collect();
        let e_bar = modp::reduce(&e, p);
        let dg = modp::rem(&modp::mul(&t, &e_bar, p), g, p);
        let num = modp::sub(&e_bar, &modp::mul(&dg, h, p), p);
        let (dh, r) = modp::divrem(&num, g, p);
        debug_assert!(r.is_empty());
        let next = &q * &pb;
        big_g = add_scaled(&big_g, &dg, &q, &next);
        big_h = add_scaled(&big_h, &dh, &q, &next);
        q = next;
    }
    (big_g, big_h)
}

fn add_scaled(a: &[BigInt], d: &[u64], q: &BigInt, m: &BigInt) -> Vec<BigInt> {
    (0..a.len().max(d.len()))
        .map(|i| {
            let v = a.get(i).cloned().unwrap_or_default() + q * BigInt::from(d.get(i).copied().unwrap_or(0));
            v.mod_floor(m)
        })
        .collect()
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn symmetric(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m / 2;
    v.iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect()
}

/// Exact division of integer polynomials with a monic divisor.
fn int_divide_monic(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    let dg = g.len() - 1;
    if f.len() < g.len() {
        return None;
    }
    let mut rem = f.to_vec();
    let mut quot = vec![BigInt::zero(); f.len() - dg];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dg].clone();
        if !c.is_zero() {
            for (j, gj) in g.iter().enumerate() {
                rem[i + j] -= &c * gj;
            }
        }
        quot[i] = c;
    }
    if rem.iter().all(|c| c.is_zero()) {
        Some(quot)
    } else {
        None
    }
}

fn recombine(f: &[BigInt], lifted: Vec<Vec<BigInt>>, pk: &BigInt) -> Vec<Vec<BigInt>> {
    let mut remaining = lifted;
    let mut target = f.to_vec();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut hit = None;
        for subset in Subsets::new(remaining.len(), size) {
            let prod = subset
                .iter()
                .fold(vec![BigInt::one()], |acc, &i| {
                    int_mul(&acc, &remaining[i]).iter().map(|c| c.mod_floor(pk)).collect()
                });
            let cand = symmetric(&prod, pk);
            if let Some(q) = int_divide_monic(&target, &cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                target = q;
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, v)| v)
                    .collect();
            }
            None => size += 1,
        }
    }
    if target.len() > 1 {
        found.push(target);
    }
    found
}

/// Lexicographic k-subsets of `0..n`.
struct Subsets {
    n: usize,
    cur: Option<Vec<usize>>,
}

impl Subsets {
    fn new(n: usize, k: usize) -> Self {
        Subsets { n, cur: if k <= n { Some((0..k).collect()) } else { None } }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.cur.take()?;
        let out = cur.clone();
        let k = cur.len();
        let mut nxt = cur;
        let mut i = k;
        while i > 0 {
            i -= 1;
            if nxt[i] < self.n - k + i {
                nxt[i] += 1;
                for j in i + 1..k {
                    nxt[j] = nxt[j - 1] + 1;
                }
                self.cur = Some(nxt);
                break;
            }
        }
        Some(out)
    }
}

/// Polynomial arithmetic over a prime field `F_p`, `p` odd and below 2^31.
/// Polynomials are ascending coefficient vectors with no trailing zeros.
pub(crate) mod modp {
    use super::*;

    pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn reduce(f: &[BigInt], p: u64) -> Vec<u64> {
        let pb = BigInt::from(p);
        trim(f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
    }

    fn inv(a: u64, p: u64) -> u64 {
        pow_u(a, p - 2, p)
    }

    fn pow_u(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1u64;
        a %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * a % p;
            }
            a = a * a % p;
            e >>= 1;
        }
        r
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        trim((0..n).map(|i| (a.get(i).unwrap_or(&0) + p - b.get(i).unwrap_or(&0)) % p).collect())
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    pub fn scale(a: &[u64], c: u64, p: u64) -> Vec<u64> {
        trim(a.iter().map(|&x| x * c % p).collect())
    }

    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        assert!(!b.is_empty());
        if a.len() < b.len() {
            return (Vec::new(), a.to_vec());
        }
        let db = b.len() - 1;
        let il = inv(*b.last().unwrap(), p);
        let mut rem = a.to_vec();
        let mut quot = vec![0u64; a.len() - db];
        for i in (0..quot.len()).rev() {
            let c = rem[i + db] * il % p;
            if c != 0 {
                for (j, &bj) in b.iter().enumerate() {
                    rem[i + j] = (rem[i + j] + p - c * bj % p) % p;
                }
            }
            quot[i] = c;
        }
        rem.truncate(db);
        (trim(quot), trim(rem))
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        divrem(a, b, p).1
    }

    pub fn monic(a: &[u64], p: u64) -> Vec<u64> {
        match a.last() {
            None => Vec::new(),
            Some(&l) => scale(a, inv(l, p), p),
        }
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        monic(&a, p)
    }

    pub fn xgcd(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1, p);
            let s = sub(&s0, &mul(&q, &s1, p), p);
            let t = sub(&t0, &mul(&q, &t1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let il = inv(*r0.last().unwrap(), p);
        (scale(&r0, il, p), scale(&s0, il, p), scale(&t0, il, p))
    }

    pub fn derivative(a: &[u64], p: u64) -> Vec<u64> {
        trim(a.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % p) * c % p).collect())
    }

    fn powmod(base: &[u64], e: &BigUint, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let base = rem(base, m, p);
        for i in (0..e.bits()).rev() {
            acc = rem(&mul(&acc, &acc, p), m, p);
            if e.bit(i) {
                acc = rem(&mul(&acc, &base, p), m, p);
            }
        }
        acc
    }

    /// Distinct-degree then equal-degree factorization of a monic squarefree polynomial.
    pub fn factor_squarefree_monic(f: &[u64], p: u64) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        let mut rest = f.to_vec();
        let x = vec![0u64, 1];
        let mut h = x.clone();
        let mut d = 1usize;
        while rest.len() > 1 && 2 * d < rest.len() {
            h = powmod(&h, &BigUint::from(p), &rest, p);
            let g = gcd(&rest, &sub(&h, &x, p), p);
            if g.len() > 1 {
                out.extend(equal_degree(&g, d, p));
                rest = divrem(&rest, &g, p).0;
                h = rem(&h, &rest, p);
            }
            d += 1;
        }
        if rest.len() > 1 {
            out.push(monic(&rest, p));
        }
        out.sort();
        out
    }

    fn equal_degree(f: &[u64], d: usize, p: u64) -> Vec<Vec<u64>> {
        let n = f.len() - 1;
        if n == d {
            return vec![monic(f, p)];
        }
        let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
        // Deterministic enumeration of trial polynomials: base-p digits of a counter.
        let mut counter = p as u128;
        loop {
            let mut a = Vec::new();
            let mut c = counter;
            while c > 0 {
                a.push((c % p as u128) as u64);
                c /= p as u128;
            }
            counter += 1;
            let a = trim(a);
            if a.len() < 2 || a.len() > n {
                continue;
            }
            let b = sub(&powmod(&a, &e, f, p), &[1], p);
            let g = gcd(f, &b, p);
            if g.len() > 1 && g.len() < f.len() {
                let other = divrem(f, &g, p).0;
                let mut out = equal_degree(&g, d, p);
                out.extend(equal_degree(&other, d, p));
                return out;
            }
        }
    }
}
