//! Dense matrices over exact rings: determinants, inertia of rational
//! symmetric matrices, ranks, and Smith normal form over Euclidean domains.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::Poly;
use crate::Rational;

pub type Matrix<T> = Vec<Vec<T>>;

/// The operations Smith normal form needs from a Euclidean domain.
pub trait EuclideanRing: Clone + PartialEq + std::fmt::Debug {
    fn r_zero() -> Self;
    fn r_one() -> Self;
    fn r_is_zero(&self) -> bool;
    fn r_add(&self, o: &Self) -> Self;
    fn r_sub(&self, o: &Self) -> Self;
    fn r_mul(&self, o: &Self) -> Self;
    fn r_div_rem(&self, o: &Self) -> (Self, Self);
    /// Euclidean size: absolute value or degree.
    fn size(&self) -> u64;
    /// Unit `u` such that `u·self` is the canonical associate.
    fn normalizing_unit(&self) -> Self;
}

impl EuclideanRing for BigInt {
    fn r_zero() -> Self {
        Zero::zero()
    }
    fn r_one() -> Self {
        One::one()
    }
    fn r_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn r_add(&self, o: &Self) -> Self {
        self + o
    }
    fn r_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn r_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn r_div_rem(&self, o: &Self) -> (Self, Self) {
        self.div_mod_floor(o)
    }
    fn size(&self) -> u64 {
        u64::try_from(self.abs()).unwrap_or(u64::MAX)
    }
    fn normalizing_unit(&self) -> Self {
        if self.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }
}

impl EuclideanRing for Poly {
    fn r_zero() -> Self {
        Poly::zero()
    }
    fn r_one() -> Self {
        Poly::one()
    }
    fn r_is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn r_add(&self, o: &Self) -> Self {
        self + o
    }
    fn r_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn r_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn r_div_rem(&self, o: &Self) -> (Self, Self) {
        Poly::div_rem(self, o)
    }
    fn size(&self) -> u64 {
        self.deg() as u64
    }
    fn normalizing_unit(&self) -> Self {
        if Poly::is_zero(self) {
            Poly::one()
        } else {
            Poly::constant(self.lc().recip())
        }
    }
}

pub fn identity<T: EuclideanRing>(n: usize) -> Matrix<T> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::r_one() } else { T::r_zero() }).collect())
        .collect()
}

pub fn transpose<T: Clone>(m: &Matrix<T>) -> Matrix<T> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_mul<T: EuclideanRing>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(T::r_zero(), |acc, k| acc.r_add(&row[k].r_mul(&b[k][j]))))
                .collect()
        })
        .collect()
}

/// Smith normal form `U·A·W = D` with `D` diagonal, each diagonal entry dividing
/// the next, nonzero entries canonical (positive / monic).
#[derive(Clone, Debug)]
pub struct Smith<T> {
    pub diagonal: Vec<T>,
    pub left: Matrix<T>,
    pub right: Matrix<T>,
}

pub fn smith_normal_form<T: EuclideanRing>(a: &Matrix<T>) -> Smith<T> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m = a.clone();
    let mut u: Matrix<T> = identity(rows);
    let mut w: Matrix<T> = identity(cols);
    let n = rows.min(cols);
    for k in 0..n {
        loop {
            // Pivot: smallest nonzero entry of the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if !m[i][j].r_is_zero() && best.is_none_or(|(bi, bj)| m[i][j].size() < m[bi][bj].size()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(m, u, w, n);
            };
            m.swap(k, pi);
            u.swap(k, pi);
            for row in m.iter_mut() {
                row.swap(k, pj);
            }
            for row in w.iter_mut() {
                row.swap(k, pj);
            }
            let mut clean = true;
            for i in k + 1..rows {
                if m[i][k].r_is_zero() {
                    continue;
                }
                let (q, r) = m[i][k].r_div_rem(&m[k][k]);
                row_axpy(&mut m, i, k, &q);
                row_axpy(&mut u, i, k, &q);
                if !r.r_is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..cols {
                if m[k][j].r_is_zero() {
                    continue;
                }
                let (q, r) = m[k][j].r_div_rem(&m[k][k]);
                col_axpy(&mut m, j, k, &q);
                col_axpy(&mut w, j, k, &q);
                if !r.r_is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility of the trailing block by the pivot.
            let mut bad = None;
            'outer: for i in k + 1..rows {
                for j in k + 1..cols {
                    if !m[i][j].r_div_rem(&m[k][k]).1.r_is_zero() {
                        bad = Some(i);
                        break 'outer;
                    }
                }
            }
            match bad {
                Some(i) => {
                    // row_k += row_i
                    let neg_one = T::r_zero().r_sub(&T::r_one());
                    row_axpy(&mut m, k, i, &neg_one);
                    row_axpy(&mut u, k, i, &neg_one);
                }
                None => break,
            }
        }
    }
    finish(m, u, w, n)
}

/// `row_target -= q · row_src`
fn row_axpy<T: EuclideanRing>(m: &mut Matrix<T>, target: usize, src: usize, q: &T) {
    let src_row = m[src].clone();
    for (x, s) in m[target].iter_mut().zip(src_row.iter()) {
        *x = x.r_sub(&q.r_mul(s));
    }
}

/// `col_target -= q · col_src`
fn col_axpy<T: EuclideanRing>(m: &mut Matrix<T>, target: usize, src: usize, q: &T) {
    for row in m.iter_mut() {
        let s = row[src].clone();
        row[target] = row[target].r_sub(&q.r_mul(&s));
    }
}

fn finish<T: EuclideanRing>(m: Matrix<T>, mut u: Matrix<T>, w: Matrix<T>, n: usize) -> Smith<T> {
    let mut diagonal = Vec::with_capacity(n);
    for k in 0..n {
        let unit = m[k][k].normalizing_unit();
        diagonal.push(m[k][k].r_mul(&unit));
        for x in u[k].iter_mut() {
            *x = x.r_mul(&unit);
        }
    }
    Smith { diagonal, left: u, right: w }
}

/// Determinant of an integer matrix (Bareiss fraction-free elimination).
pub fn det_int(a: &Matrix<BigInt>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Determinant of a matrix over `Q[t]` (Bareiss with exact polynomial division).
pub fn det_poly(a: &Matrix<Poly>) -> Poly {
    let n = a.len();
    if n == 0 {
        return Poly::one();
    }
    let mut m = a.clone();
    let mut negate = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = v.exact_div(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

/// Inertia `(positive, negative, zero)` of a rational symmetric matrix, by
/// congruence diagonalization.
pub fn symmetric_inertia(a: &Matrix<Rational>) -> (usize, usize, usize) {
    let mut m = a.clone();
    let n = m.len();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        // Prefer a nonzero diagonal pivot.
        let pivot = active.iter().copied().find(|&i| !m[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                // All diagonal entries zero: find an off-diagonal entry and
                // replace row/col i by i + j to create a nonzero diagonal.
                let found = active.iter().flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !m[i][j].is_zero());
                match found {
                    None => {
                        zero += active.len();
                        break;
                    }
                    Some((i, j)) => {
                        for k in 0..n {
                            let v = m[j][k].clone();
                            m[i][k] += v;
                        }
                        for k in 0..n {
                            let v = m[k][j].clone();
                            m[k][i] += v;
                        }
                        i
                    }
                }
            }
        };
        let d = m[p][p].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&i| i != p);
        for &i in &active {
            if m[i][p].is_zero() {
                continue;
            }
            let f = &m[i][p] / &d;
            for &j in &active {
                let v = &f * &m[p][j];
                m[i][j] -= v;
            }
        }
        for &i in &active {
            m[i][p] = Rational::zero();
            m[p][i] = Rational::zero();
        }
    }
    (pos, neg, zero)
}

/// Rank of a rational matrix.
pub fn rank_rational(a: &Matrix<Rational>) -> usize {
    let mut m = a.clone();
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][c].recip();
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] * &inv;
                for k in c..cols {
                    let v = &f * &m[rank][k];
                    m[r][k] -= v;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

pub fn to_bigint(m: &Matrix<i64>) -> Matrix<BigInt> {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn to_rational(m: &Matrix<i64>) -> Matrix<Rational> {
    m.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect()
}
