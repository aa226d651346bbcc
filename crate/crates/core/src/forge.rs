//! Companion-family synthesis.
//!
//! Companions are formal connected sums of twist knots. The first is a stack
//! of mirror trefoils; each later one is a signature bump supported on an arc
//! `(θ_{m+1}, θ_m)` that contains `2π/p` and lies below every earlier prime's
//! first root angle, so it is invisible at the earlier primes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::algebra::{AlgebraicAngle, Interval, LaurentPoly, UnitPoint};
use crate::concordance::{validate_algebraically_slice, SlicenessEvidence, SlicenessWitness};
use crate::error::{Error, Result};
use crate::seifert::{arf_from_delta, SeifertMatrix};
use crate::signature::{integral_of_profile, is_prime, sig_profile, sig_sum, SignatureProfile};
use crate::{format_rational, json, Rational};

pub const CHEEGER_GROMOV_FACTOR: u64 = 69_713_280;
pub const DEFAULT_PRIME_CAP: u64 = 100_000;

/// Twist knot `T_m` with Seifert matrix `[[−1, 1], [0, −m]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRef {
    pub kind: String,
    pub m: u64,
}

impl CatalogRef {
    pub fn matrix(&self) -> SeifertMatrix {
        let m = i64::try_from(self.m).expect("twist parameter fits in i64");
        SeifertMatrix::validate(vec![vec![-1, 1], vec![0, -m]]).expect("twist matrices are valid")
    }

    /// `cos θ_m = (2m − 1)/(2m)`.
    pub fn jump_cos(&self) -> Rational {
        Rational::new(BigInt::from(2 * self.m - 1), BigInt::from(2 * self.m))
    }

    pub fn jump_angle(&self) -> AlgebraicAngle {
        AlgebraicAngle::from_cos(self.jump_cos()).expect("cosine in (0, 1)")
    }

    pub fn crossing_bound(&self) -> u64 {
        2 * self.m + 1
    }
}

pub fn twist_matrix(m: u64) -> Result<CatalogRef> {
    if m < 1 || m > i64::MAX as u64 / 2 {
        return Err(Error::InvalidArgument(format!("twist parameter must be >= 1, got {m}")));
    }
    Ok(CatalogRef { kind: "twist".into(), m })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Base {
    Catalog(CatalogRef),
    Matrix(SeifertMatrix),
}

impl Base {
    fn matrix(&self) -> SeifertMatrix {
        match self {
            Base::Catalog(c) => c.matrix(),
            Base::Matrix(v) => v.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub base: Base,
    pub mirrored: bool,
    #[serde(with = "json::decimal")]
    pub multiplicity: BigInt,
}

impl Summand {
    pub fn matrix(&self) -> SeifertMatrix {
        let v = self.base.matrix();
        if self.mirrored {
            v.mirror()
        } else {
            v
        }
    }
}

/// A formal connected sum `#ᵢ nᵢ·Kᵢ`. Invariants combine per summand; the
/// block matrix is never built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotExpr {
    pub summands: Vec<Summand>,
}

impl KnotExpr {
    pub fn single(base: Base, mirrored: bool, multiplicity: BigInt) -> Self {
        KnotExpr { summands: vec![Summand { base, mirrored, multiplicity }] }
    }

    pub fn validate(&self) -> Result<()> {
        if self.summands.iter().any(|s| s.multiplicity.is_negative()) {
            return Err(Error::InvalidArgument("negative multiplicity".into()));
        }
        for s in &self.summands {
            if let Base::Catalog(c) = &s.base {
                if c.kind != "twist" {
                    return Err(Error::InvalidArgument(format!("unknown catalog kind {:?}", c.kind)));
                }
                twist_matrix(c.m)?;
            }
        }
        Ok(())
    }

    pub fn with_multiplicity(&self, n: &BigInt) -> KnotExpr {
        KnotExpr {
            summands: self
                .summands
                .iter()
                .map(|s| Summand { multiplicity: &s.multiplicity * n, ..s.clone() })
                .collect(),
        }
    }

    pub fn mirror(&self) -> KnotExpr {
        KnotExpr {
            summands: self.summands.iter().map(|s| Summand { mirrored: !s.mirrored, ..s.clone() }).collect(),
        }
    }

    /// `Δ` as a product of canonical per-summand polynomials with big exponents.
    pub fn alexander_factors(&self) -> Vec<(LaurentPoly, BigInt)> {
        let mut acc: BTreeMap<String, (LaurentPoly, BigInt)> = BTreeMap::new();
        for s in &self.summands {
            let d = s.matrix().alexander().delta;
            if s.multiplicity.is_zero() || d.is_unit() {
                continue;
            }
            let e = acc.entry(d.to_string()).or_insert_with(|| (d.clone(), BigInt::zero()));
            e.1 += &s.multiplicity;
        }
        acc.into_values().collect()
    }

    /// `Σ nᵢ·Arf(Kᵢ)`; the Arf invariant is its parity.
    pub fn arf_weight(&self) -> BigInt {
        self.summands
            .iter()
            .map(|s| &s.multiplicity * BigInt::from(arf_from_delta(&s.matrix().alexander().delta)))
            .sum()
    }

    pub fn arf(&self) -> u8 {
        if self.arf_weight().is_even() {
            0
        } else {
            1
        }
    }

    pub fn sig_sum(&self, p: u64) -> Result<BigInt> {
        let mut total = BigInt::zero();
        for s in &self.summands {
            if s.multiplicity.is_zero() {
                continue;
            }
            total += &s.multiplicity * BigInt::from(sig_sum(&s.matrix(), p)?);
        }
        Ok(total)
    }

    pub fn profiles(&self) -> Vec<(SignatureProfile, BigInt)> {
        self.summands.iter().map(|s| (sig_profile(&s.matrix()), s.multiplicity.clone())).collect()
    }

    /// Value of `σ` at `ω` (two-sided averages at jumps).
    pub fn signature_at(&self, w: &UnitPoint) -> BigInt {
        self.profiles().iter().map(|(p, n)| n * BigInt::from(p.value_at(w))).sum()
    }

    /// Enclosure of `∫σ` of width at most `tol`.
    pub fn sig_integral(&self, tol: &Rational) -> Interval {
        let weight: BigInt = self.summands.iter().map(|s| s.multiplicity.clone()).sum::<BigInt>().max(BigInt::one());
        let each = tol / Rational::from_integer(weight);
        let mut total = Interval::zero();
        for (profile, n) in self.profiles() {
            if n.is_zero() {
                continue;
            }
            let part = integral_of_profile(&profile, &each).scale(&Rational::from_integer(n));
            total = &total + &part;
        }
        total
    }

    /// Block sum of all copies, when the total multiplicity is at most `limit`.
    pub fn materialize(&self, limit: u64) -> Option<SeifertMatrix> {
        let total: BigInt = self.summands.iter().map(|s| s.multiplicity.clone()).sum();
        if total > BigInt::from(limit) {
            return None;
        }
        let mut v = SeifertMatrix::empty();
        for s in &self.summands {
            let m = s.matrix();
            for _ in 0..s.multiplicity.to_u64()? {
                v = v.block_sum(&m);
            }
        }
        Some(v)
    }
}

/// `mirror(T_{m_hi}) # T_{m_lo}` (σ = +2 on `(θ_{m_hi}, θ_{m_lo})`) or its mirror.
pub fn bump_expr(m_lo: u64, m_hi: u64, positive: bool) -> Result<KnotExpr> {
    if m_lo < 1 || m_hi <= m_lo {
        return Err(Error::InvalidArgument(format!("bump needs m_hi > m_lo >= 1, got ({m_lo}, {m_hi})")));
    }
    let hi = Base::Catalog(twist_matrix(m_hi)?);
    let lo = Base::Catalog(twist_matrix(m_lo)?);
    Ok(KnotExpr {
        summands: vec![
            Summand { base: hi, mirrored: positive, multiplicity: BigInt::one() },
            Summand { base: lo, mirrored: !positive, multiplicity: BigInt::one() },
        ],
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundProvenance {
    CrossingNumber(u64),
    Direct,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CGBound {
    #[serde(with = "json::decimal")]
    pub c_k: BigInt,
    pub provenance: BoundProvenance,
}

impl CGBound {
    pub fn from_crossing_number(c: u64) -> Result<Self> {
        if c == 0 {
            return Err(Error::InvalidArgument("crossing number must be positive".into()));
        }
        Ok(CGBound { c_k: BigInt::from(CHEEGER_GROMOV_FACTOR) * c, provenance: BoundProvenance::CrossingNumber(c) })
    }

    pub fn direct(c_k: BigInt) -> Result<Self> {
        if !c_k.is_positive() {
            return Err(Error::InvalidArgument("C_K must be positive".into()));
        }
        Ok(CGBound { c_k, provenance: BoundProvenance::Direct })
    }

    pub fn is_consistent(&self) -> bool {
        match self.provenance {
            BoundProvenance::CrossingNumber(c) => self.c_k == BigInt::from(CHEEGER_GROMOV_FACTOR) * c,
            BoundProvenance::Direct => self.c_k.is_positive(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CompanionShape {
    MirrorTrefoil,
    /// Support `(θ_{m_hi}, θ_{m_lo})` and its conjugate.
    Bump { m_lo: u64, m_hi: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompanionWitness {
    pub shape: CompanionShape,
    /// Number of `r ∈ [1, p)` with `σ(ζ_p^r) ≠ 0` for one copy.
    pub root_count: u64,
    pub per_copy_sig_sum: i64,
    #[serde(with = "json::interval")]
    pub per_copy_integral: Interval,
    #[serde(with = "json::decimal")]
    pub multiplicity: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Companion {
    pub prime: u64,
    pub expr: KnotExpr,
    pub witness: CompanionWitness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDescriptor {
    pub seifert: SeifertMatrix,
    pub genus: usize,
    pub alexander: LaurentPoly,
    #[serde(with = "json::decimal")]
    pub top_coeff: BigInt,
    pub bound: CGBound,
    /// Indices `ℓ` of the band-dual curves `η_ℓ` used for infection.
    pub band_dual_curves: Vec<usize>,
    pub sliceness: SlicenessWitness,
    pub companions: Vec<Companion>,
}

fn smallest_even_above(x: &Rational) -> BigInt {
    let n: BigInt = x.floor().to_integer() + 1;
    if n.is_even() {
        n
    } else {
        n + 1
    }
}

fn two_pow_neg(k: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << k as usize)
}

/// `m = ⌊1/(2(1 − cos(2π/p)))⌋`, so that `θ_{m+1} < 2π/p < θ_m` when `m ≥ 1`.
fn bracketing_twist(p: u64) -> u64 {
    let mut angle = AlgebraicAngle::root_of_unity(p, 1).expect("p >= 3");
    let one = Rational::one();
    let two = Rational::from_integer(2.into());
    for k in (16..).step_by(16) {
        let c = angle.cos_enclosure(&two_pow_neg(k));
        // 1/(2(1 − c)) is increasing in c.
        let lo = (&one / (&two * (&one - &c.lo))).floor();
        let hi = (&one / (&two * (&one - &c.hi))).floor();
        if lo == hi {
            return lo.to_integer().to_u64().expect("small twist parameter");
        }
    }
    unreachable!()
}

/// Smallest even `N` with `N·I > C` certified from enclosures of `I`.
fn multiplicity_for_integral(unit: &KnotExpr, c: &Rational) -> Option<BigInt> {
    let mut best = None;
    for k in [64u32, 128, 256] {
        let iv = unit.sig_integral(&two_pow_neg(k));
        if !iv.lo.is_positive() {
            continue;
        }
        let cautious = smallest_even_above(&(c / &iv.lo));
        let hopeful = smallest_even_above(&(c / &iv.hi));
        if cautious == hopeful {
            return Some(cautious);
        }
        best = Some(cautious);
    }
    best
}

/// One companion for `p_new`, or `None` when no admissible bump exists.
pub fn forge_companion(p_new: u64, earlier: &[u64], bound: &CGBound) -> Result<Option<(KnotExpr, CompanionWitness)>> {
    if !is_prime(p_new) {
        return Err(Error::InvalidArgument(format!("{p_new} is not prime")));
    }
    if earlier.iter().any(|&q| q >= p_new) {
        return Err(Error::InvalidArgument("new prime must exceed all earlier primes".into()));
    }
    let (unit, shape) = match earlier.iter().max() {
        None => (
            KnotExpr::single(Base::Catalog(twist_matrix(1)?), true, BigInt::one()),
            CompanionShape::MirrorTrefoil,
        ),
        Some(&q_max) => {
            if p_new < 5 {
                return Ok(None);
            }
            let m = bracketing_twist(p_new);
            if m == 0 {
                return Ok(None);
            }
            let p_angle = AlgebraicAngle::root_of_unity(p_new, 1)?;
            let upper = twist_matrix(m)?.jump_angle();
            let lower = twist_matrix(m + 1)?.jump_angle();
            debug_assert!(lower.cmp_angle(&p_angle).is_lt() && p_angle.cmp_angle(&upper).is_lt());
            let ceiling = if q_max >= 3 { Some(AlgebraicAngle::root_of_unity(q_max, 1)?) } else { None };
            if ceiling.is_some_and(|c| !upper.cmp_angle(&c).is_lt()) {
                return Ok(None);
            }
            (bump_expr(m, m + 1, true)?, CompanionShape::Bump { m_lo: m, m_hi: m + 1 })
        }
    };
    for &q in earlier {
        if !unit.sig_sum(q)?.is_zero() {
            return Ok(None);
        }
    }
    let s = unit.sig_sum(p_new)?;
    if !s.is_positive() {
        return Ok(None);
    }
    let root_count = (1..p_new)
        .filter(|&r| !unit.signature_at(&UnitPoint::RootOfUnity { order: p_new, index: r }).is_zero())
        .count() as u64;
    let c = Rational::from_integer(bound.c_k.clone());
    let n2 = smallest_even_above(&(Rational::from_integer(BigInt::from(p_new) * &bound.c_k) / Rational::from_integer(s.clone())));
    let Some(n4) = multiplicity_for_integral(&unit, &c) else {
        return Ok(None);
    };
    let n = n2.max(n4);
    let witness = CompanionWitness {
        shape,
        root_count,
        per_copy_sig_sum: s.to_i64().expect("per-copy sum is small"),
        per_copy_integral: unit.sig_integral(&two_pow_neg(64)),
        multiplicity: n.clone(),
    };
    Ok(Some((unit.with_multiplicity(&n), witness)))
}

pub fn forge_family(
    v: &SeifertMatrix,
    bound: &CGBound,
    count: usize,
    prime_floor: Option<u64>,
    evidence: &SlicenessEvidence,
) -> Result<FamilyDescriptor> {
    forge_family_with_cap(v, bound, count, prime_floor, evidence, DEFAULT_PRIME_CAP)
}

pub fn forge_family_with_cap(
    v: &SeifertMatrix,
    bound: &CGBound,
    count: usize,
    prime_floor: Option<u64>,
    evidence: &SlicenessEvidence,
    prime_cap: u64,
) -> Result<FamilyDescriptor> {
    if count == 0 {
        return Err(Error::InvalidArgument("family size must be positive".into()));
    }
    let alex = v.alexander();
    if alex.degree == 0 {
        return Err(Error::TrivialAlexander);
    }
    let sliceness = validate_algebraically_slice(v, evidence)?;
    assert!(alex.degree >= 2, "nontrivial reciprocal Alexander polynomial has degree >= 2");
    let floor = BigInt::from(prime_floor.unwrap_or(2)).max(&alex.top_coeff + 1);
    let start = floor.to_u64().ok_or(Error::PrimeSearchExhausted { cap: prime_cap })?;
    let mut companions: Vec<Companion> = Vec::new();
    let mut primes: Vec<u64> = Vec::new();
    for p in start..=prime_cap {
        if companions.len() == count {
            break;
        }
        if !is_prime(p) {
            continue;
        }
        if let Some((expr, witness)) = forge_companion(p, &primes, bound)? {
            primes.push(p);
            companions.push(Companion { prime: p, expr, witness });
        }
    }
    if companions.len() < count {
        return Err(Error::PrimeSearchExhausted { cap: prime_cap });
    }
    Ok(FamilyDescriptor {
        seifert: v.clone(),
        genus: v.genus(),
        alexander: alex.delta,
        top_coeff: alex.top_coeff,
        bound: bound.clone(),
        band_dual_curves: (1..=v.dim()).collect(),
        sliceness,
        companions,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub condition: u8,
    pub name: String,
    /// 1-based companion index; 0 for family-level checks.
    pub companion: usize,
    pub witness: serde_json::Value,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub checks: Vec<ConditionCheck>,
    pub all_pass: bool,
}

impl LemmaReport {
    pub fn failing(&self) -> Vec<&ConditionCheck> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

/// Certified comparison `∫σ_J > C`; `None` when undecided at every tolerance tried.
pub fn integral_exceeds(expr: &KnotExpr, c: &BigInt) -> (Option<bool>, Interval) {
    let c = Rational::from_integer(c.clone());
    let mut iv = Interval::zero();
    for k in [32u32, 64, 128, 256, 512, 1024] {
        iv = expr.sig_integral(&two_pow_neg(k));
        if iv.lo > c {
            return (Some(true), iv);
        }
        if iv.hi <= c {
            return (Some(false), iv);
        }
    }
    (None, iv)
}

fn check(condition: u8, name: &str, companion: usize, witness: serde_json::Value, pass: bool) -> ConditionCheck {
    ConditionCheck { condition, name: name.into(), companion, witness, pass }
}

/// Re-derives every lemma condition from the descriptor's Seifert data and expressions.
pub fn verify_lemma_conditions(f: &FamilyDescriptor) -> LemmaReport {
    let mut checks = Vec::new();
    let alex = f.seifert.alexander();
    let primes: Vec<u64> = f.companions.iter().map(|c| c.prime).collect();
    let increasing = primes.windows(2).all(|w| w[0] < w[1]);
    let all_prime = primes.iter().all(|&p| is_prime(p));
    let above_top = primes.iter().all(|&p| BigInt::from(p) > alex.top_coeff);
    checks.push(check(
        0,
        "primes",
        0,
        json!({"primes": primes, "top_coeff": alex.top_coeff.to_string()}),
        increasing && all_prime && above_top && !primes.is_empty(),
    ));
    checks.push(check(
        0,
        "bound",
        0,
        json!({"c_k": f.bound.c_k.to_string()}),
        f.bound.is_consistent(),
    ));
    let c_k = &f.bound.c_k;
    for (i, comp) in f.companions.iter().enumerate() {
        let idx = i + 1;
        let p = comp.prime;
        let valid = comp.expr.validate();
        if let Err(e) = valid {
            checks.push(check(1, "Arf", idx, json!({"error": e.to_string()}), false));
            continue;
        }
        let weight = comp.expr.arf_weight();
        checks.push(check(1, "Arf", idx, json!({"arf_weight": weight.to_string()}), weight.is_even()));

        let bound = BigInt::from(p) * c_k;
        match comp.expr.sig_sum(p) {
            Ok(s) => checks.push(check(
                2,
                "signature sum",
                idx,
                json!({"prime": p, "sig_sum": s.to_string(), "p_times_c_k": bound.to_string()}),
                s > bound,
            )),
            Err(e) => checks.push(check(2, "signature sum", idx, json!({"error": e.to_string()}), false)),
        }

        for (j, later) in f.companions.iter().enumerate().skip(i + 1) {
            match later.expr.sig_sum(p) {
                Ok(s) => checks.push(check(
                    3,
                    "vanishing at earlier prime",
                    j + 1,
                    json!({"prime": p, "sig_sum": s.to_string()}),
                    s.is_zero(),
                )),
                Err(e) => checks.push(check(3, "vanishing at earlier prime", j + 1, json!({"error": e.to_string()}), false)),
            }
        }

        let (verdict, iv) = integral_exceeds(&comp.expr, c_k);
        checks.push(check(
            4,
            "signature integral",
            idx,
            json!({
                "integral_lo": format_rational(&iv.lo),
                "integral_hi": format_rational(&iv.hi),
                "c_k": c_k.to_string(),
            }),
            verdict == Some(true),
        ));
    }
    let all_pass = checks.iter().all(|c| c.pass);
    LemmaReport { checks, all_pass }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v6() -> SeifertMatrix {
        SeifertMatrix::validate(vec![vec![0, 2], vec![1, 0]]).unwrap()
    }

    fn c6() -> CGBound {
        CGBound::from_crossing_number(6).unwrap()
    }

    #[test]
    fn twist_catalog() {
        let t1 = twist_matrix(1).unwrap();
        assert_eq!(t1.matrix().alexander().delta, LaurentPoly::from_ints(&[1, -1, 1]));
        assert_eq!(t1.jump_cos(), Rational::new(1.into(), 2.into()));
        let t2 = twist_matrix(2).unwrap();
        assert_eq!(t2.matrix().alexander().delta, LaurentPoly::from_ints(&[2, -3, 2]));
        assert!(twist_matrix(0).is_err());
    }

    #[test]
    fn bump_sums() {
        let b = bump_expr(1, 2, true).unwrap();
        assert_eq!(b.sig_sum(7).unwrap(), BigInt::from(4));
        assert_eq!(b.sig_sum(3).unwrap(), BigInt::zero());
        assert_eq!(b.arf(), 1);
        assert_eq!(b.with_multiplicity(&BigInt::from(2)).arf(), 0);
        assert_eq!(bump_expr(1, 2, false).unwrap().sig_sum(7).unwrap(), BigInt::from(-4));
        assert!(bump_expr(2, 2, true).is_err());
    }

    #[test]
    fn first_companion_multiplicity() {
        let (expr, w) = forge_companion(3, &[], &c6()).unwrap().unwrap();
        assert_eq!(w.per_copy_sig_sum, 4);
        assert_eq!(w.multiplicity, BigInt::from(313_709_762u64));
        assert_eq!(w.shape, CompanionShape::MirrorTrefoil);
        assert_eq!(expr.sig_sum(3).unwrap(), BigInt::from(4 * 313_709_762u64));
    }

    #[test]
    fn feasibility_after_three() {
        assert!(forge_companion(5, &[3], &c6()).unwrap().is_none());
        let (_, w) = forge_companion(7, &[3], &c6()).unwrap().unwrap();
        assert_eq!(w.shape, CompanionShape::Bump { m_lo: 1, m_hi: 2 });
        assert_eq!(w.per_copy_sig_sum, 4);
        assert_eq!(w.root_count, 2);
    }

    #[test]
    fn bracketing() {
        assert_eq!(bracketing_twist(7), 1);
        assert_eq!(bracketing_twist(11), 3);
        assert_eq!(bracketing_twist(5), 0);
    }

    #[test]
    fn small_family() {
        let fam = forge_family(&v6(), &c6(), 3, None, &SlicenessEvidence::Search { bound: 1 }).unwrap();
        let primes: Vec<u64> = fam.companions.iter().map(|c| c.prime).collect();
        assert_eq!(primes, vec![3, 7, 11]);
        assert_eq!(fam.companions[2].witness.shape, CompanionShape::Bump { m_lo: 3, m_hi: 4 });
        let report = verify_lemma_conditions(&fam);
        assert!(report.all_pass, "{:?}", report.failing());
    }

    #[test]
    fn rejections() {
        let trefoil = twist_matrix(1).unwrap().matrix();
        assert!(forge_family(&trefoil, &c6(), 3, None, &SlicenessEvidence::Override).is_err());
        assert!(matches!(
            forge_family(&SeifertMatrix::empty(), &c6(), 3, None, &SlicenessEvidence::Override),
            Err(Error::TrivialAlexander)
        ));
        assert!(forge_family(&v6(), &c6(), 0, None, &SlicenessEvidence::Override).is_err());
    }

    #[test]
    fn sabotaged_families_fail() {
        let fam = forge_family(&v6(), &c6(), 2, None, &SlicenessEvidence::Override).unwrap();
        let mut odd = fam.clone();
        for s in &mut odd.companions[0].expr.summands {
            s.multiplicity += 1;
        }
        let r = verify_lemma_conditions(&odd);
        assert!(r.failing().iter().any(|c| c.condition == 1));
        let mut halved = fam.clone();
        for s in &mut halved.companions[0].expr.summands {
            s.multiplicity /= 2;
        }
        let r = verify_lemma_conditions(&halved);
        assert!(r.failing().iter().any(|c| c.condition == 2 && c.companion == 1));
    }

    #[test]
    fn materialized_sums_agree() {
        let b = bump_expr(1, 3, true).unwrap().with_multiplicity(&BigInt::from(2));
        let m = b.materialize(4).unwrap();
        for p in [5u64, 7, 11, 13] {
            assert_eq!(b.sig_sum(p).unwrap(), BigInt::from(sig_sum(&m, p).unwrap()));
        }
    }
}
