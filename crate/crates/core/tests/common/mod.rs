#![allow(dead_code)]

use concordance::algebra::LaurentPoly;
use concordance::seifert::SeifertMatrix;
use concordance::Rational;
use nalgebra::DMatrix;
use num_bigint::BigInt;
use rand::Rng;

pub type IntMatrix = Vec<Vec<i64>>;

/// Upper-triangular part whose skew-symmetrization is the standard symplectic form.
fn symplectic_seed(g: usize) -> IntMatrix {
    let n = 2 * g;
    let mut v = vec![vec![0i64; n]; n];
    for i in 0..g {
        v[2 * i][2 * i + 1] = 1;
    }
    v
}

pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> IntMatrix {
    let mut p: IntMatrix = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            if rng.gen_bool(0.3) {
                for r in p.iter_mut() {
                    r[i] = -r[i];
                }
            }
            continue;
        }
        let c = if rng.gen_bool(0.5) { 1 } else { -1 };
        for r in p.iter_mut() {
            r[j] += c * r[i];
        }
    }
    p
}

fn max_abs(m: &IntMatrix) -> i64 {
    m.iter().flatten().map(|x| x.abs()).max().unwrap_or(0)
}

/// Symplectic seed plus a random symmetric part, scrambled by a random
/// unimodular congruence; entries stay within `entry_bound`.
pub fn random_seifert<R: Rng>(rng: &mut R, max_genus: usize, entry_bound: i64) -> SeifertMatrix {
    loop {
        let g = rng.gen_range(1..=max_genus);
        let n = 2 * g;
        let mut v = symplectic_seed(g);
        for i in 0..n {
            for j in i..n {
                let s = rng.gen_range(-2..=2);
                v[i][j] += s;
                if i != j {
                    v[j][i] += s;
                }
            }
        }
        let steps = rng.gen_range(0..=3);
        let p = random_unimodular(rng, n, steps);
        let base = SeifertMatrix::validate(v).expect("seed is a Seifert matrix");
        let w = base.congruence(&p).expect("unimodular congruence");
        if max_abs(w.entries()) <= entry_bound {
            return w;
        }
    }
}

/// `[[0, A], [B, C]]` with `A − Bᵀ` unimodular, then scrambled.
pub fn planted_metabolizer<R: Rng>(rng: &mut R, g: usize, entry_bound: i64) -> (SeifertMatrix, IntMatrix) {
    loop {
        let steps = rng.gen_range(0..=2 * g);
        let u = random_unimodular(rng, g, steps);
        let b: IntMatrix = (0..g).map(|_| (0..g).map(|_| rng.gen_range(-2..=2)).collect()).collect();
        let c: IntMatrix = (0..g).map(|_| (0..g).map(|_| rng.gen_range(-2..=2)).collect()).collect();
        let n = 2 * g;
        let mut v = vec![vec![0i64; n]; n];
        for i in 0..g {
            for j in 0..g {
                v[i][g + j] = b[j][i] + u[i][j];
                v[g + i][j] = b[i][j];
                v[g + i][g + j] = c[i][j];
            }
        }
        let Ok(base) = SeifertMatrix::validate(v) else {
            continue;
        };
        let steps = rng.gen_range(0..=2);
        let p = random_unimodular(rng, n, steps);
        let w = base.congruence(&p).expect("unimodular congruence");
        if max_abs(w.entries()) <= entry_bound {
            return (w, p);
        }
    }
}

/// Float signature of `(1−ω)V + (1−ω̄)Vᵀ` at `ω = exp(2πi r/p)`, via the
/// realified symmetric matrix. `None` when an eigenvalue sits in the gray zone.
pub fn float_signature(v: &SeifertMatrix, p: u64, r: u64, threshold: f64) -> Option<(i64, usize)> {
    let n = v.dim();
    let theta = 2.0 * std::f64::consts::PI * r as f64 / p as f64;
    let (c, s) = (theta.cos(), theta.sin());
    let mut real = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let a = v.get(i, j) as f64;
            let at = v.get(j, i) as f64;
            // (1 − ω)a + (1 − ω̄)aᵀ = (1 − c)(a + aᵀ) − i·s(a − aᵀ)
            let re = (1.0 - c) * (a + at);
            let im = -s * (a - at);
            real[(i, j)] = re;
            real[(n + i, n + j)] = re;
            real[(i, n + j)] = -im;
            real[(n + i, j)] = im;
        }
    }
    let eig = real.symmetric_eigen().eigenvalues;
    let mut pos = 0;
    let mut neg = 0;
    let mut zero = 0;
    for &e in eig.iter() {
        if e > threshold {
            pos += 1;
        } else if e < -threshold {
            neg += 1;
        } else if e.abs() < 1e-9 {
            zero += 1;
        } else {
            return None;
        }
    }
    Some(((pos - neg) / 2, zero / 2))
}

/// `det(V − tVᵀ)` by exact fraction-free elimination at integer points and
/// Lagrange interpolation, normalized to lowest exponent 0 and positive top.
pub fn alexander_by_interpolation(v: &SeifertMatrix) -> LaurentPoly {
    let n = v.dim();
    let points: Vec<i64> = (0..=n as i64).collect();
    let values: Vec<BigInt> = points
        .iter()
        .map(|&t| {
            let m: Vec<Vec<BigInt>> = (0..n)
                .map(|i| (0..n).map(|j| BigInt::from(v.get(i, j) - t * v.get(j, i))).collect())
                .collect();
            bareiss(m)
        })
        .collect();
    let mut coeffs = vec![Rational::from_integer(0.into()); n + 1];
    for (k, &xk) in points.iter().enumerate() {
        let mut basis = vec![Rational::from_integer(1.into())];
        let mut denom = Rational::from_integer(1.into());
        for (m, &xm) in points.iter().enumerate() {
            if m == k {
                continue;
            }
            let mut next = vec![Rational::from_integer(0.into()); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * Rational::from_integer(xm.into());
            }
            basis = next;
            denom *= Rational::from_integer((xk - xm).into());
        }
        for (d, c) in basis.iter().enumerate() {
            coeffs[d] += c * Rational::from_integer(values[k].clone()) / &denom;
        }
    }
    let mut terms: Vec<(i64, Rational)> = coeffs.into_iter().enumerate().map(|(d, c)| (d as i64, c)).collect();
    terms.retain(|(_, c)| *c != Rational::from_integer(0.into()));
    let low = terms.first().map_or(0, |(e, _)| *e);
    let negate = terms.last().is_some_and(|(_, c)| *c < Rational::from_integer(0.into()));
    LaurentPoly::from_terms(terms.into_iter().map(|(e, c)| (e - low, if negate { -c } else { c })))
}

fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if m[k][k] == BigInt::from(0) {
            let Some(swap) = (k + 1..n).find(|&i| m[i][k] != BigInt::from(0)) else {
                return BigInt::from(0);
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    &m[n - 1][n - 1] * sign
}
