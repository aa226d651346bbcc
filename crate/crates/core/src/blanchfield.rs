//! The rational Alexander module and its Blanchfield form
//! `bl(x, y) = (1 − t)·xᵀ(V − tVᵀ)⁻¹·ȳ` with values in `Q(t)/Q[t^±1]`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::algebra::factor::irreducible_factors;
use crate::algebra::{factor_poly, LaurentPoly, Poly};
use crate::error::{Error, Result};
use crate::matrix::{det_poly, rank_rational, smith_normal_form, Matrix};
use crate::seifert::SeifertMatrix;
use crate::Rational;

/// A module element: a vector of Laurent polynomials modulo the columns of `tV − Vᵀ`.
pub type Element = Vec<LaurentPoly>;

/// The class of `numerator/denominator` modulo `Q[t^±1]`, normalized so the
/// denominator is monic with nonzero constant term, coprime to the numerator,
/// and of larger degree. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq)]
pub struct BlanchfieldValue {
    numerator: Poly,
    denominator: Poly,
}

impl BlanchfieldValue {
    pub fn zero() -> Self {
        BlanchfieldValue { numerator: Poly::zero(), denominator: Poly::one() }
    }

    /// Class of `num / den` for a Laurent numerator and nonzero polynomial denominator.
    pub fn from_fraction(num: &LaurentPoly, den: &Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let v = den.valuation();
        let den = den.unshift(v);
        let (shift, num) = num.to_poly();
        let shift = shift - v as i64;
        if num.is_zero() {
            return BlanchfieldValue::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = (num.exact_div(&g), den.exact_div(&g));
        if den.is_constant() {
            return BlanchfieldValue::zero();
        }
        let lc = den.lc();
        let den = den.monic();
        let num = num.scale(&lc.recip());
        let unit = t_power_mod(shift, &den);
        BlanchfieldValue { numerator: (&num * &unit).rem(&den), denominator: den }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn denominator(&self) -> &Poly {
        &self.denominator
    }

    /// The class of `f(1/t)`.
    pub fn conj(&self) -> Self {
        let d = self.denominator.deg() as i64;
        let num = LaurentPoly::from_poly(&self.numerator, 0).conj().shift(d);
        BlanchfieldValue::from_fraction(&num, &self.denominator.reversed())
    }
}

fn pow_mod(base: &Poly, mut e: u64, m: &Poly) -> Poly {
    let mut result = Poly::one().rem(m);
    let mut b = base.rem(m);
    while e > 0 {
        if e & 1 == 1 {
            result = (&result * &b).rem(m);
        }
        b = (&b * &b).rem(m);
        e >>= 1;
    }
    result
}

/// `t^k` modulo `m`, for `m(0) ≠ 0`.
fn t_power_mod(k: i64, m: &Poly) -> Poly {
    if k >= 0 {
        pow_mod(&Poly::x(), k as u64, m)
    } else {
        let inv = Poly::x().inverse_mod(m).expect("t is a unit modulo a polynomial with nonzero constant term");
        pow_mod(&inv, (-k) as u64, m)
    }
}

fn poly_string(p: &Poly) -> String {
    LaurentPoly::from_poly(p, 0).to_string()
}

impl fmt::Display for BlanchfieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        write!(f, "({})/({})", poly_string(&self.numerator), poly_string(&self.denominator))
    }
}

impl fmt::Debug for BlanchfieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for BlanchfieldValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            numerator: String,
            denominator: String,
        }
        Repr { numerator: poly_string(&self.numerator), denominator: poly_string(&self.denominator) }.serialize(s)
    }
}

/// `Q[t^±1]^{2g} / (tV − Vᵀ)`, with its cyclic decompositions.
#[derive(Clone, Debug, Serialize)]
pub struct AlexanderModule {
    /// Nonunit invariant factors `f₁ | f₂ | …`, normalized.
    pub invariant_factors: Vec<LaurentPoly>,
    /// Primary cyclic summands `Q[t^±1]/(π^e)`, as `(π, e)`.
    pub primary_components: Vec<(LaurentPoly, u32)>,
    /// Rational dimension, `deg Δ`.
    pub dimension: usize,
    #[serde(skip)]
    left: Matrix<Poly>,
    /// Invariant factors with powers of `t` removed, units included.
    #[serde(skip)]
    moduli: Vec<Poly>,
}

impl AlexanderModule {
    /// Coordinates of `x` in `⊕ Q[t]/(f_i)` over Q, one block per nonunit factor.
    pub fn coordinates(&self, x: &Element) -> Vec<Rational> {
        let shift = x.iter().filter_map(|c| c.min_exp()).min().unwrap_or(0);
        let polys: Vec<Poly> = x
            .iter()
            .map(|c| {
                if c.is_zero() {
                    Poly::zero()
                } else {
                    let (s, p) = c.to_poly();
                    p.shift((s - shift) as usize)
                }
            })
            .collect();
        let mut out = Vec::with_capacity(self.dimension);
        for (row, m) in self.left.iter().zip(&self.moduli) {
            if m.is_constant() {
                continue;
            }
            let y = row.iter().zip(&polys).fold(Poly::zero(), |acc, (u, p)| &acc + &(u * p));
            let r = (&y * &t_power_mod(shift, m)).rem(m);
            out.extend((0..m.deg()).map(|k| r.coeff(k)));
        }
        out
    }

    pub fn is_zero_element(&self, x: &Element) -> bool {
        self.coordinates(x).iter().all(|c| c.is_zero())
    }

    /// Rational rank of the submodule generated by `gens`.
    pub fn span_rank(&self, gens: &[Element]) -> usize {
        if self.dimension == 0 {
            return 0;
        }
        let mut rows = Vec::new();
        for g in gens {
            for k in 0..self.dimension as i64 {
                let shifted: Element = g.iter().map(|c| c.shift(k)).collect();
                rows.push(self.coordinates(&shifted));
            }
        }
        rank_rational(&rows)
    }
}

/// Presentation data and the inverse of `V − tVᵀ` needed by the pairing.
#[derive(Clone, Debug)]
pub struct BlanchfieldForm {
    pub module: AlexanderModule,
    adjugate: Matrix<Poly>,
    det: Poly,
    n: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Submodule {
    #[serde(serialize_with = "serialize_elements")]
    pub generators: Vec<Element>,
    pub primes: Vec<LaurentPoly>,
    pub rank: usize,
}

fn serialize_elements<S: Serializer>(gens: &[Element], s: S) -> std::result::Result<S::Ok, S::Error> {
    let strings: Vec<Vec<String>> = gens.iter().map(|g| g.iter().map(|c| c.to_string()).collect()).collect();
    strings.serialize(s)
}

impl BlanchfieldForm {
    pub fn new(v: &SeifertMatrix) -> Self {
        let n = v.dim();
        let presentation: Matrix<Poly> = (0..n)
            .map(|i| (0..n).map(|j| Poly::from_ints(&[-v.get(j, i), v.get(i, j)])).collect())
            .collect();
        let smith = smith_normal_form(&presentation);
        let moduli: Vec<Poly> = smith.diagonal.iter().map(|d| d.unshift(d.valuation())).collect();
        let invariant_factors: Vec<LaurentPoly> = moduli
            .iter()
            .filter(|m| !m.is_constant())
            .map(|m| LaurentPoly::from_poly(&m.primitive(), 0))
            .collect();
        let mut primary_components = Vec::new();
        for m in moduli.iter().filter(|m| !m.is_constant()) {
            for (p, e) in factor_poly(m) {
                primary_components.push((LaurentPoly::from_poly(&p, 0), e));
            }
        }
        let dimension = moduli.iter().map(|m| m.deg()).sum();
        let module = AlexanderModule { invariant_factors, primary_components, dimension, left: smith.left, moduli };

        let m: Matrix<Poly> = (0..n)
            .map(|i| (0..n).map(|j| Poly::from_ints(&[v.get(i, j), -v.get(j, i)])).collect())
            .collect();
        let det = det_poly(&m);
        let adjugate = adjugate(&m);
        BlanchfieldForm { module, adjugate, det, n }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn pair(&self, x: &Element, y: &Element) -> Result<BlanchfieldValue> {
        if x.len() != self.n || y.len() != self.n {
            return Err(Error::DimensionMismatch(format!("module elements must have {} entries", self.n)));
        }
        if self.n == 0 {
            return Ok(BlanchfieldValue::zero());
        }
        let adj: Vec<Vec<LaurentPoly>> = self
            .adjugate
            .iter()
            .map(|r| r.iter().map(|p| LaurentPoly::from_poly(p, 0)).collect())
            .collect();
        let mut acc = LaurentPoly::zero();
        for i in 0..self.n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.n {
                if y[j].is_zero() {
                    continue;
                }
                acc = &acc + &(&(&x[i] * &adj[i][j]) * &y[j].conj());
            }
        }
        let num = &LaurentPoly::from_ints(&[1, -1]) * &acc;
        Ok(BlanchfieldValue::from_fraction(&num, &self.det))
    }

    pub fn basis_vector(&self, i: usize) -> Element {
        (0..self.n).map(|j| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() }).collect()
    }

    /// Every `P = P^⊥`, for squarefree `Δ`: sums of primary components taking
    /// exactly one factor from each conjugate pair.
    pub fn self_annihilating_submodules(&self, delta: &LaurentPoly) -> Result<Vec<Submodule>> {
        let (_, d) = delta.to_poly();
        if !d.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let primes = irreducible_factors(&d);
        let mut pairs: Vec<(Poly, Poly)> = Vec::new();
        for p in &primes {
            let star = p.reversed().primitive();
            if star == *p {
                return Ok(Vec::new());
            }
            if !pairs.iter().any(|(a, b)| a == p || b == p) {
                pairs.push((p.clone(), star));
            }
        }
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << pairs.len()) {
            let chosen: Vec<Poly> =
                pairs.iter().enumerate().map(|(k, (a, b))| if mask >> k & 1 == 0 { a.clone() } else { b.clone() }).collect();
            let mut generators = Vec::new();
            for q in &chosen {
                let cofactor = LaurentPoly::from_poly(&d.exact_div(q), 0);
                for i in 0..self.n {
                    let g: Element = self.basis_vector(i).iter().map(|c| c * &cofactor).collect();
                    if !self.module.is_zero_element(&g) {
                        generators.push(g);
                    }
                }
            }
            let rank = self.module.span_rank(&generators);
            out.push(Submodule {
                generators,
                primes: chosen.iter().map(|q| LaurentPoly::from_poly(q, 0)).collect(),
                rank,
            });
        }
        Ok(out)
    }

    /// `P` is self-annihilating iff it is isotropic and has rank `½ dim`.
    pub fn verify_self_annihilating(&self, gens: &[Element]) -> Result<bool> {
        for x in gens {
            for y in gens {
                if !self.pair(x, y)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(2 * self.module.span_rank(gens) == self.module.dimension)
    }

    /// For each basis vector nonzero in the module, some basis vector pairs nontrivially with it.
    pub fn nonsingular_on_generators(&self) -> Result<bool> {
        for i in 0..self.n {
            let x = self.basis_vector(i);
            if self.module.is_zero_element(&x) {
                continue;
            }
            let mut found = false;
            for j in 0..self.n {
                if !self.pair(&x, &self.basis_vector(j))?.is_zero() {
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `bl(x, y) = conj(bl(y, x))` on all pairs of basis vectors.
    pub fn hermitian_on_generators(&self) -> Result<bool> {
        for i in 0..self.n {
            for j in 0..self.n {
                let a = self.pair(&self.basis_vector(i), &self.basis_vector(j))?;
                let b = self.pair(&self.basis_vector(j), &self.basis_vector(i))?;
                if a != b.conj() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn adjugate(m: &Matrix<Poly>) -> Matrix<Poly> {
    let n = m.len();
    if n == 1 {
        return vec![vec![Poly::one()]];
    }
    let mut adj = vec![vec![Poly::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Matrix<Poly> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c].clone()).collect())
                .collect();
            let d = det_poly(&minor);
            adj[i][j] = if (i + j) % 2 == 0 { d } else { -&d };
        }
    }
    adj
}

pub fn present_module(v: &SeifertMatrix) -> AlexanderModule {
    BlanchfieldForm::new(v).module
}

pub fn bl_pair(v: &SeifertMatrix, x: &Element, y: &Element) -> Result<BlanchfieldValue> {
    BlanchfieldForm::new(v).pair(x, y)
}

pub fn self_annihilating_submodules(v: &SeifertMatrix) -> Result<Vec<Submodule>> {
    BlanchfieldForm::new(v).self_annihilating_submodules(&v.alexander().delta)
}

/// Rational case (`None`): true for nonzero `Δ`. Mod `p`: true iff `p ∤ a_K`.
pub fn eta_generation_check(v: &SeifertMatrix, p: Option<u64>) -> bool {
    let a = v.alexander();
    match p {
        None => !a.delta.is_zero(),
        Some(p) => !a.top_coeff.is_multiple_of(&BigInt::from(p)),
    }
}
