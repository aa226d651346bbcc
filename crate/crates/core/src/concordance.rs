//! Algebraic concordance: Fox-Milnor test, metabolizers, coprimality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{factor_rational, gcd_poly, LaurentPoly};
use crate::error::{Error, Result};
use crate::matrix::{smith_normal_form, Matrix};
use crate::seifert::SeifertMatrix;

/// Columns of a `2g × g` integer matrix spanning a candidate metabolizer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metabolizer {
    pub basis: Matrix<i64>,
}

impl Metabolizer {
    pub fn from_columns(columns: &[Vec<i64>], rows: usize) -> Metabolizer {
        Metabolizer { basis: (0..rows).map(|i| columns.iter().map(|c| c[i]).collect()).collect() }
    }

    pub fn columns(&self) -> Vec<Vec<i64>> {
        let cols = self.basis.first().map_or(0, |r| r.len());
        (0..cols).map(|j| self.basis.iter().map(|r| r[j]).collect()).collect()
    }
}

/// `Δ ≐ f(t)·f(1/t)`: conjugate irreducible factors pair up, and
/// self-conjugate ones occur with even multiplicity.
pub fn fox_milnor(delta: &LaurentPoly) -> bool {
    let Ok(factors) = factor_rational(delta) else {
        return false;
    };
    factors.iter().all(|(f, mult)| {
        let star = f.conj().normalized();
        if star == f.normalized() {
            mult % 2 == 0
        } else {
            factors.iter().find(|(g, _)| g.normalized() == star).is_some_and(|(_, m)| m == mult)
        }
    })
}

fn form(v: &SeifertMatrix, x: &[i64], y: &[i64]) -> BigInt {
    let n = v.dim();
    let mut acc = BigInt::zero();
    for i in 0..n {
        if x[i] == 0 {
            continue;
        }
        for j in 0..n {
            acc += BigInt::from(x[i]) * v.get(i, j) * y[j];
        }
    }
    acc
}

fn is_primitive(columns: &[Vec<i64>]) -> bool {
    if columns.is_empty() {
        return true;
    }
    let m: Matrix<BigInt> = columns.iter().map(|c| c.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let d = smith_normal_form(&m).diagonal;
    d.len() == columns.len() && d.iter().all(|x| x.is_one())
}

pub fn verify_metabolizer(v: &SeifertMatrix, h: &Metabolizer) -> Result<bool> {
    let n = v.dim();
    let g = v.genus();
    if h.basis.len() != n || h.basis.iter().any(|r| r.len() != g) {
        return Err(Error::DimensionMismatch(format!("metabolizer must be {n}x{g}")));
    }
    let cols = h.columns();
    if !is_primitive(&cols) {
        return Ok(false);
    }
    Ok(cols.iter().all(|x| cols.iter().all(|y| form(v, x, y).is_zero())))
}

/// Bounded search over primitive isotropic vectors with entries in `[-bound, bound]`.
/// A `None` result does not mean no metabolizer exists.
pub fn search_metabolizer(v: &SeifertMatrix, bound: u32) -> Option<Metabolizer> {
    let n = v.dim();
    let g = v.genus();
    if g == 0 {
        return Some(Metabolizer { basis: Vec::new() });
    }
    let b = bound as i64;
    let mut candidates = Vec::new();
    let mut x = vec![-b; n];
    loop {
        let lead = x.iter().find(|&&c| c != 0).copied();
        if lead.is_some_and(|c| c > 0)
            && x.iter().fold(0i64, |acc, &c| acc.gcd(&c)) == 1
            && form(v, &x, &x).is_zero()
        {
            candidates.push(x.clone());
        }
        if !advance(&mut x, b) {
            break;
        }
    }
    // Height shells first, then earlier leading position, then lexicographic.
    candidates.sort_by_key(|x| {
        let height = x.iter().map(|c| c.abs()).max().unwrap_or(0);
        let lead = x.iter().position(|&c| c != 0).unwrap_or(n);
        (height, lead, x.clone())
    });
    let mut chosen: Vec<Vec<i64>> = Vec::new();
    if extend(v, &candidates, 0, g, &mut chosen) {
        Some(Metabolizer::from_columns(&chosen, n))
    } else {
        None
    }
}

/// Odometer step over `[-b, b]^n`; false after the last vector.
fn advance(x: &mut [i64], b: i64) -> bool {
    for c in x.iter_mut().rev() {
        if *c < b {
            *c += 1;
            return true;
        }
        *c = -b;
    }
    false
}

fn extend(v: &SeifertMatrix, cands: &[Vec<i64>], start: usize, g: usize, chosen: &mut Vec<Vec<i64>>) -> bool {
    if chosen.len() == g {
        return true;
    }
    for i in start..cands.len() {
        let c = &cands[i];
        if chosen.iter().all(|x| form(v, x, c).is_zero() && form(v, c, x).is_zero()) {
            chosen.push(c.clone());
            if is_primitive(chosen) && extend(v, cands, i + 1, g, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

pub fn coprime(a: &LaurentPoly, b: &LaurentPoly) -> Result<bool> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial("coprime"));
    }
    Ok(gcd_poly(a, b).degree() == 0)
}

/// Evidence accepted for the algebraic sliceness hypothesis.
#[derive(Clone, Debug)]
pub enum SlicenessEvidence {
    Certificate(Metabolizer),
    Search { bound: u32 },
    Override,
}

/// How the hypothesis was established.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SlicenessWitness {
    Certificate(Metabolizer),
    Search(Metabolizer),
    Override,
}

/// Fox-Milnor and a metabolizer (given, found, or explicitly waived).
pub fn validate_algebraically_slice(v: &SeifertMatrix, evidence: &SlicenessEvidence) -> Result<SlicenessWitness> {
    if !fox_milnor(&v.alexander().delta) {
        return Err(Error::Hypothesis("Alexander polynomial fails the Fox-Milnor condition".into()));
    }
    match evidence {
        SlicenessEvidence::Certificate(h) => {
            if verify_metabolizer(v, h)? {
                Ok(SlicenessWitness::Certificate(h.clone()))
            } else {
                Err(Error::Hypothesis("supplied metabolizer does not verify".into()))
            }
        }
        SlicenessEvidence::Search { bound } => search_metabolizer(v, *bound)
            .map(SlicenessWitness::Search)
            .ok_or_else(|| Error::Hypothesis(format!("no metabolizer found with entries bounded by {bound}"))),
        SlicenessEvidence::Override => Ok(SlicenessWitness::Override),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v6() -> SeifertMatrix {
        SeifertMatrix::validate(vec![vec![0, 2], vec![1, 0]]).unwrap()
    }

    fn trefoil() -> SeifertMatrix {
        SeifertMatrix::validate(vec![vec![-1, 1], vec![0, -1]]).unwrap()
    }

    #[test]
    fn fox_milnor_examples() {
        assert!(fox_milnor(&LaurentPoly::from_ints(&[2, -5, 2])));
        assert!(!fox_milnor(&LaurentPoly::from_ints(&[1, -1, 1])));
        assert!(fox_milnor(&LaurentPoly::one()));
        assert!(fox_milnor(&LaurentPoly::from_ints(&[1, -1, 1]).pow(2)));
    }

    #[test]
    fn metabolizer_checks() {
        let e1 = Metabolizer { basis: vec![vec![1], vec![0]] };
        assert!(verify_metabolizer(&v6(), &e1).unwrap());
        assert!(!verify_metabolizer(&trefoil(), &e1).unwrap());
        assert!(!verify_metabolizer(&v6(), &Metabolizer { basis: vec![vec![2], vec![0]] }).unwrap());
        assert!(verify_metabolizer(&v6(), &Metabolizer { basis: vec![vec![1, 0], vec![0, 1]] }).is_err());
    }

    #[test]
    fn search_examples() {
        assert_eq!(search_metabolizer(&v6(), 1), Some(Metabolizer { basis: vec![vec![1], vec![0]] }));
        assert_eq!(search_metabolizer(&trefoil(), 3), None);
        assert_eq!(search_metabolizer(&SeifertMatrix::empty(), 1), Some(Metabolizer { basis: Vec::new() }));
    }

    #[test]
    fn coprime_examples() {
        let d = LaurentPoly::from_ints(&[2, -5, 2]);
        assert!(coprime(&d, &LaurentPoly::from_ints(&[1, -1, 1])).unwrap());
        assert!(!coprime(&d, &d).unwrap());
        assert!(!coprime(&d, &d.pow(3)).unwrap());
        assert!(coprime(&d, &LaurentPoly::zero()).is_err());
    }

    #[test]
    fn sliceness_policy() {
        assert!(validate_algebraically_slice(&v6(), &SlicenessEvidence::Search { bound: 1 }).is_ok());
        assert!(validate_algebraically_slice(&trefoil(), &SlicenessEvidence::Override).is_err());
    }
}
