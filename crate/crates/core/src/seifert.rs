//! Seifert matrices and their abelian invariants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{LaurentPoly, Poly};
use crate::error::{Error, Result};
use crate::matrix::{det_int, det_poly, Matrix};
use crate::Rational;

/// A `2g × 2g` integer matrix `V` with `det(V − Vᵀ) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix", into = "RawMatrix")]
pub struct SeifertMatrix {
    entries: Matrix<i64>,
}

#[derive(Serialize, Deserialize)]
struct RawMatrix {
    matrix: Matrix<i64>,
}

impl TryFrom<RawMatrix> for SeifertMatrix {
    type Error = Error;
    fn try_from(raw: RawMatrix) -> Result<Self> {
        SeifertMatrix::validate(raw.matrix)
    }
}

impl From<SeifertMatrix> for RawMatrix {
    fn from(v: SeifertMatrix) -> Self {
        RawMatrix { matrix: v.entries }
    }
}

/// Alexander polynomial data: canonical `Δ`, its top coefficient `a_K`, and degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderData {
    pub delta: LaurentPoly,
    pub top_coeff: BigInt,
    pub degree: usize,
}

impl SeifertMatrix {
    pub fn validate(entries: Matrix<i64>) -> Result<Self> {
        let n = entries.len();
        if let Some(row) = entries.iter().find(|r| r.len() != n) {
            return Err(Error::NotSquare { rows: n, cols: row.len() });
        }
        if n % 2 == 1 {
            return Err(Error::OddDimension(n));
        }
        let skew: Matrix<BigInt> = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from(entries[i][j]) - entries[j][i]).collect())
            .collect();
        let d = det_int(&skew);
        if !d.is_one() {
            return Err(Error::SkewNotUnimodular(d));
        }
        Ok(SeifertMatrix { entries })
    }

    /// The unknot, `0 × 0`.
    pub fn empty() -> Self {
        SeifertMatrix { entries: Vec::new() }
    }

    pub fn entries(&self) -> &Matrix<i64> {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn genus(&self) -> usize {
        self.dim() / 2
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn rational(&self) -> Matrix<Rational> {
        crate::matrix::to_rational(&self.entries)
    }

    /// `Δ(t) = det(V − tVᵀ)`, canonicalized.
    pub fn alexander(&self) -> AlexanderData {
        let n = self.dim();
        let m: Matrix<Poly> = (0..n)
            .map(|i| (0..n).map(|j| Poly::from_ints(&[self.entries[i][j], -self.entries[j][i]])).collect())
            .collect();
        let delta = LaurentPoly::from_poly(&det_poly(&m), 0).canonical();
        assert!(
            delta.eval(&Rational::one()).abs().is_one(),
            "|Δ(1)| != 1 for a validated Seifert matrix"
        );
        let top_coeff = delta.top_coeff().to_integer();
        let degree = delta.degree();
        AlexanderData { delta, top_coeff, degree }
    }

    /// `0` when `|Δ(−1)| ≡ ±1 (mod 8)`, else `1`.
    pub fn arf(&self) -> u8 {
        arf_from_delta(&self.alexander().delta)
    }

    pub fn block_sum(&self, other: &SeifertMatrix) -> SeifertMatrix {
        let (a, b) = (self.dim(), other.dim());
        let mut entries = vec![vec![0i64; a + b]; a + b];
        for i in 0..a {
            entries[i][..a].copy_from_slice(&self.entries[i]);
        }
        for i in 0..b {
            entries[a + i][a..].copy_from_slice(&other.entries[i]);
        }
        SeifertMatrix { entries }
    }

    /// `−Vᵀ`.
    pub fn mirror(&self) -> SeifertMatrix {
        let n = self.dim();
        SeifertMatrix { entries: (0..n).map(|i| (0..n).map(|j| -self.entries[j][i]).collect()).collect() }
    }

    /// Concordance inverse `−V`.
    pub fn inverse_knot(&self) -> SeifertMatrix {
        SeifertMatrix { entries: self.entries.iter().map(|r| r.iter().map(|x| -x).collect()).collect() }
    }

    /// `PᵀVP` for a unimodular integer matrix `P`.
    pub fn congruence(&self, p: &Matrix<i64>) -> Result<SeifertMatrix> {
        let n = self.dim();
        if p.len() != n || p.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("congruence by a non-{n}x{n} matrix")));
        }
        let pb = crate::matrix::to_bigint(p);
        if !det_int(&pb).abs().is_one() {
            return Err(Error::InvalidArgument("congruence matrix is not unimodular".into()));
        }
        let v = crate::matrix::to_bigint(&self.entries);
        let mut entries = vec![vec![0i64; n]; n];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, out) in row.iter_mut().enumerate() {
                let mut acc = BigInt::zero();
                for k in 0..n {
                    for l in 0..n {
                        acc += &pb[k][i] * &v[k][l] * &pb[l][j];
                    }
                }
                *out = i64::try_from(acc)
                    .map_err(|_| Error::InvalidArgument("congruence overflows 64-bit entries".into()))?;
            }
        }
        Ok(SeifertMatrix { entries })
    }
}

pub(crate) fn arf_from_delta(delta: &LaurentPoly) -> u8 {
    let v = delta.eval(&-Rational::one()).abs().to_integer();
    let r = v.mod_floor(&BigInt::from(8));
    if r == BigInt::from(1) || r == BigInt::from(7) {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn trefoil() -> SeifertMatrix {
        SeifertMatrix::validate(vec![vec![-1, 1], vec![0, -1]]).unwrap()
    }

    fn v6() -> SeifertMatrix {
        SeifertMatrix::validate(vec![vec![0, 2], vec![1, 0]]).unwrap()
    }

    #[test]
    fn validation() {
        assert!(SeifertMatrix::validate(vec![vec![0, 1], vec![1, 0]]).is_err());
        assert!(matches!(SeifertMatrix::validate(vec![vec![1]]), Err(Error::OddDimension(1))));
        assert_eq!(SeifertMatrix::validate(Vec::new()).unwrap().genus(), 0);
    }

    #[test]
    fn alexander_polynomials() {
        assert_eq!(trefoil().alexander().delta, LaurentPoly::from_ints(&[1, -1, 1]));
        let a = v6().alexander();
        assert_eq!(a.delta, LaurentPoly::from_ints(&[2, -5, 2]));
        assert_eq!(a.top_coeff, BigInt::from(2));
        assert_eq!(a.degree, 2);
        assert_eq!(SeifertMatrix::empty().alexander().delta, LaurentPoly::one());
    }

    #[test]
    fn arf_examples() {
        assert_eq!(trefoil().arf(), 1);
        assert_eq!(v6().arf(), 0);
        assert_eq!(SeifertMatrix::empty().arf(), 0);
        assert_eq!(trefoil().block_sum(&trefoil()).arf(), 0);
    }

    #[test]
    fn block_sum_and_mirror() {
        let t2 = trefoil().block_sum(&trefoil());
        assert_eq!(t2.alexander().delta, LaurentPoly::from_ints(&[1, -1, 1]).pow(2));
        assert_eq!(trefoil().block_sum(&SeifertMatrix::empty()), trefoil());
        assert_eq!(trefoil().mirror().entries(), &vec![vec![1, 0], vec![-1, 1]]);
        assert_eq!(trefoil().mirror().mirror(), trefoil());
        assert_eq!(SeifertMatrix::empty().inverse_knot(), SeifertMatrix::empty());
    }

    #[test]
    fn json_round_trip_validates() {
        let s = serde_json::to_string(&trefoil()).unwrap();
        assert_eq!(s, r#"{"matrix":[[-1,1],[0,-1]]}"#);
        assert_eq!(serde_json::from_str::<SeifertMatrix>(&s).unwrap(), trefoil());
        assert!(serde_json::from_str::<SeifertMatrix>(r#"{"matrix":[[0,1],[1,0]]}"#).is_err());
    }
}
