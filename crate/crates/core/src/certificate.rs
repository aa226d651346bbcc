//! Machine-checkable certificates for the obstruction arithmetic.
//!
//! A certificate lists named checks, each carrying exact witness values
//! (big integers and rationals as strings). [`reverify`] recomputes every
//! pass flag and the verdict from those witnesses alone.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::algebra::{gcd_poly, LaurentPoly};
use crate::blanchfield::{eta_generation_check, BlanchfieldForm};
use crate::error::{Error, Result};
use crate::forge::{integral_exceeds, verify_lemma_conditions, BoundProvenance, FamilyDescriptor, LemmaReport, CHEEGER_GROMOV_FACTOR};
use crate::signature::{is_prime, sig_integral};
use crate::{format_rational, parse_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertificateKind {
    LinearCombination,
    CoprimeSplit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Obstructed,
    NotConcordantBySplitting,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub claim: String,
    pub witness: Value,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub family_sha256: String,
    pub inputs: Value,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
}

impl Certificate {
    pub fn failing(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    fn is_positive(&self) -> bool {
        self.verdict != Verdict::Inconclusive
    }
}

pub fn family_sha256(f: &FamilyDescriptor) -> String {
    let bytes = serde_json::to_vec(f).expect("family serializes");
    hex::encode(Sha256::digest(bytes))
}

fn verdict_for(kind: CertificateKind, checks: &[Check]) -> Verdict {
    if checks.is_empty() || checks.iter().any(|c| !c.pass) {
        Verdict::Inconclusive
    } else {
        match kind {
            CertificateKind::LinearCombination => Verdict::Obstructed,
            CertificateKind::CoprimeSplit => Verdict::NotConcordantBySplitting,
        }
    }
}

fn finish(kind: CertificateKind, f: &FamilyDescriptor, inputs: Value, checks: Vec<Check>) -> Certificate {
    let verdict = verdict_for(kind, &checks);
    Certificate { kind, family_sha256: family_sha256(f), inputs, checks, verdict }
}

/// One top-level check per lemma condition, witnesses listed per companion.
fn lemma_checks(report: &LemmaReport) -> Vec<Check> {
    let groups: [(u8, &str, &str); 6] = [
        (0, "primes", "primes are prime, strictly increasing and exceed a_K"),
        (0, "bound", "C_K = 69713280 * crossing number"),
        (1, "Arf", "every companion has even Arf weight"),
        (2, "signature sum", "sig_sum(J_i, p_i) > p_i * C_K"),
        (3, "vanishing at earlier prime", "sig_sum(J_j, p_i) = 0 for j > i"),
        (4, "signature integral", "certified integral of sigma_{J_i} exceeds C_K"),
    ];
    groups
        .iter()
        .map(|&(cond, name, claim)| {
            let items: Vec<Value> = report
                .checks
                .iter()
                .filter(|c| c.condition == cond && c.name == name)
                .map(|c| {
                    let mut w = c.witness.clone();
                    if let Value::Object(m) = &mut w {
                        m.insert("companion".into(), json!(c.companion));
                    }
                    w
                })
                .collect();
            let pass = !items.is_empty() && items.iter().all(|w| lemma_item_passes(name, w));
            Check { name: name.into(), claim: claim.into(), witness: Value::Array(items), pass }
        })
        .collect()
}

fn big(w: &Value, key: &str) -> Option<BigInt> {
    w.get(key)?.as_str()?.parse().ok()
}

fn rat(w: &Value, key: &str) -> Option<Rational> {
    parse_rational(w.get(key)?.as_str()?).ok()
}

fn lemma_item_passes(name: &str, w: &Value) -> bool {
    let ok = || -> Option<bool> {
        Some(match name {
            "primes" => {
                let primes: Vec<u64> = w.get("primes")?.as_array()?.iter().map(|p| p.as_u64()).collect::<Option<_>>()?;
                let top = big(w, "top_coeff")?;
                !primes.is_empty()
                    && primes.windows(2).all(|p| p[0] < p[1])
                    && primes.iter().all(|&p| is_prime(p) && BigInt::from(p) > top)
            }
            "bound" => {
                let c_k = big(w, "c_k")?;
                match w.get("crossing_number").and_then(Value::as_u64) {
                    Some(c) => c_k == BigInt::from(CHEEGER_GROMOV_FACTOR) * c,
                    None => c_k.is_positive(),
                }
            }
            "Arf" => big(w, "arf_weight")?.is_even(),
            "signature sum" => {
                let p = w.get("prime")?.as_u64()?;
                let s = big(w, "sig_sum")?;
                let bound = big(w, "p_times_c_k")?;
                bound == BigInt::from(p) * big(w, "c_k")? && s > bound
            }
            "vanishing at earlier prime" => big(w, "sig_sum")?.is_zero(),
            "signature integral" => {
                let lo = rat(w, "integral_lo")?;
                let hi = rat(w, "integral_hi")?;
                lo <= hi && lo > Rational::from_integer(big(w, "c_k")?)
            }
            _ => false,
        })
    };
    ok().unwrap_or(false)
}

fn with_c_k(report: &LemmaReport, f: &FamilyDescriptor) -> LemmaReport {
    let mut r = report.clone();
    for c in &mut r.checks {
        if let Value::Object(m) = &mut c.witness {
            if c.condition == 2 {
                m.insert("c_k".into(), json!(f.bound.c_k.to_string()));
            }
            if c.name == "bound" {
                if let BoundProvenance::CrossingNumber(n) = f.bound.provenance {
                    m.insert("crossing_number".into(), json!(n));
                }
            }
        }
    }
    r
}

fn reindex_passes(w: &Value) -> Option<bool> {
    let orig: Vec<i64> = w.get("combination")?.as_array()?.iter().map(Value::as_i64).collect::<Option<_>>()?;
    let norm: Vec<i64> = w.get("normalized")?.as_array()?.iter().map(Value::as_i64).collect::<Option<_>>()?;
    let pivot = w.get("pivot")?.as_u64()? as usize;
    let first = orig.iter().position(|&x| x != 0)?;
    let sign = orig[first].signum();
    Some(
        pivot == first + 1
            && norm.len() == orig.len()
            && norm.iter().zip(&orig).all(|(n, o)| *n == sign * o)
            && norm[first] > 0,
    )
}

fn generation_passes(w: &Value) -> Option<bool> {
    let degree = w.get("degree")?.as_u64()?;
    let p = BigInt::from(w.get("prime")?.as_u64()?);
    let top = big(w, "top_coeff")?;
    Some(degree >= 2 && p > top && !top.is_multiple_of(&p))
}

fn rho_passes(w: &Value) -> Option<bool> {
    let p = w.get("prime")?.as_u64()?;
    let s = big(w, "sig_sum")?;
    let c_k = big(w, "c_k")?;
    Some(p > 0 && s > BigInt::from(p) * c_k)
}

/// Obstruction certificate for `Σ aᵢ·Kᵢ`.
pub fn certify_linear_combination(f: &FamilyDescriptor, a: &[i64]) -> Result<Certificate> {
    let report = verify_lemma_conditions(f);
    certify_linear_combination_with(f, &report, a)
}

/// As [`certify_linear_combination`], reusing a precomputed lemma report.
pub fn certify_linear_combination_with(f: &FamilyDescriptor, report: &LemmaReport, a: &[i64]) -> Result<Certificate> {
    if a.len() != f.companions.len() {
        return Err(Error::DimensionMismatch(format!(
            "combination has {} entries, family has {} companions",
            a.len(),
            f.companions.len()
        )));
    }
    let Some(first) = a.iter().position(|&x| x != 0) else {
        return Err(Error::InvalidArgument("combination must be nonzero".into()));
    };
    let sign = a[first].signum();
    let normalized: Vec<i64> = a.iter().map(|x| sign * x).collect();
    let mut checks = Vec::new();

    let w = json!({"combination": a, "normalized": normalized, "pivot": first + 1});
    let pass = reindex_passes(&w) == Some(true);
    checks.push(Check {
        name: "reindex".into(),
        claim: "first nonzero coefficient made positive; its companion plays the role of J_1".into(),
        witness: w,
        pass,
    });

    checks.extend(lemma_checks(&with_c_k(report, f)));

    let comp = &f.companions[first];
    let p = comp.prime;
    let alex = f.seifert.alexander();
    let gen_ok = eta_generation_check(&f.seifert, Some(p));
    let w = json!({
        "degree": alex.degree,
        "prime": p,
        "top_coeff": alex.top_coeff.to_string(),
        "eta_generation_mod_p": gen_ok,
    });
    let pass = generation_passes(&w) == Some(true) && gen_ok;
    checks.push(Check {
        name: "generation".into(),
        claim: "deg Delta >= 2 and p_1 > a_K, so the eta curves generate mod p_1".into(),
        witness: w,
        pass,
    });

    let s = comp.expr.sig_sum(p)?;
    let w = json!({"prime": p, "sig_sum": s.to_string(), "c_k": f.bound.c_k.to_string()});
    let pass = rho_passes(&w) == Some(true);
    checks.push(Check {
        name: "rho bound".into(),
        claim: "(1/p_1) * sig_sum(J_1, p_1) > C_K".into(),
        witness: w,
        pass,
    });

    let inputs = json!({"combination": a});
    Ok(finish(CertificateKind::LinearCombination, f, inputs, checks))
}

fn coprime_passes(w: &Value) -> Option<bool> {
    let a: LaurentPoly = serde_json::from_value(w.get("delta_other")?.clone()).ok()?;
    let b: LaurentPoly = serde_json::from_value(w.get("delta_k")?.clone()).ok()?;
    if a.is_zero() || b.is_zero() {
        return Some(false);
    }
    Some(gcd_poly(&a, &b).degree() == 0)
}

fn nontrivial_passes(w: &Value) -> Option<bool> {
    let degree = w.get("degree")?.as_u64()?;
    let n = w.get("n")?.as_i64()?;
    let deg_nk = w.get("degree_nk")?.as_u64()?;
    let rank = w.get("half_rank")?.as_u64()?;
    Some(n != 0 && degree >= 2 && deg_nk == n.unsigned_abs() * degree && rank * 2 == deg_nk && rank > 0)
}

fn nonsingular_passes(w: &Value) -> Option<bool> {
    let dim = w.get("dimension")?.as_u64()? as usize;
    let torsion_zero = w.get("zero_generators")?.as_array()?.len();
    let partners = w.get("partners")?.as_array()?;
    Some(
        torsion_zero + partners.len() == dim
            && partners.iter().all(|p| p.get("value").and_then(Value::as_str).is_some_and(|v| v != "0")),
    )
}

fn zero_integral_passes(w: &Value) -> Option<bool> {
    Some(rat(w, "integral_lo")?.is_zero() && rat(w, "integral_hi")?.is_zero())
}

/// Splitting certificate that `n·K_i` is not concordant to any knot with
/// Alexander polynomial `Δ_other`.
pub fn certify_coprime_nonconcordance(f: &FamilyDescriptor, i: usize, n: i64, delta_other: &LaurentPoly) -> Result<Certificate> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be nonzero".into()));
    }
    if i == 0 || i > f.companions.len() {
        return Err(Error::InvalidArgument(format!("index {i} out of range 1..={}", f.companions.len())));
    }
    if delta_other.is_zero() {
        return Err(Error::ZeroPolynomial("split"));
    }
    let alex = f.seifert.alexander();
    let mut checks = Vec::new();

    let w = json!({
        "delta_other": delta_other.canonical(),
        "delta_k": alex.delta,
        "gcd": gcd_poly(delta_other, &alex.delta).canonical().to_string(),
    });
    let pass = coprime_passes(&w) == Some(true);
    checks.push(Check { name: "coprime".into(), claim: "gcd(Delta_other, Delta_K) = 1".into(), witness: w, pass });

    let deg_nk = n.unsigned_abs() as usize * alex.degree;
    let w = json!({"degree": alex.degree, "n": n, "degree_nk": deg_nk, "half_rank": deg_nk / 2});
    let pass = nontrivial_passes(&w) == Some(true);
    checks.push(Check {
        name: "nontrivial Alexander".into(),
        claim: "Delta_{nK} = Delta_K^|n| is nontrivial and P has rank deg/2 > 0".into(),
        witness: w,
        pass,
    });

    let comp = &f.companions[i - 1];
    let (verdict, iv) = integral_exceeds(&comp.expr, &f.bound.c_k);
    let w = json!({
        "companion": i,
        "prime": comp.prime,
        "integral_lo": format_rational(&iv.lo),
        "integral_hi": format_rational(&iv.hi),
        "c_k": f.bound.c_k.to_string(),
    });
    let pass = verdict == Some(true) && lemma_item_passes("signature integral", &w);
    checks.push(Check {
        name: "signature integral".into(),
        claim: "certified integral of sigma_{J_i} exceeds C_K".into(),
        witness: w,
        pass,
    });

    let form = BlanchfieldForm::new(&f.seifert);
    let mut zero_generators = Vec::new();
    let mut partners = Vec::new();
    for g in 0..form.dim() {
        let x = form.basis_vector(g);
        if form.module.is_zero_element(&x) {
            zero_generators.push(g + 1);
            continue;
        }
        for h in 0..form.dim() {
            let v = form.pair(&x, &form.basis_vector(h))?;
            if !v.is_zero() {
                partners.push(json!({"generator": g + 1, "partner": h + 1, "value": v.to_string()}));
                break;
            }
        }
    }
    let w = json!({"dimension": form.dim(), "zero_generators": zero_generators, "partners": partners});
    let pass = nonsingular_passes(&w) == Some(true) && form.nonsingular_on_generators()?;
    checks.push(Check {
        name: "Blanchfield nonsingular".into(),
        claim: "every generator nonzero in the module pairs nontrivially with some generator".into(),
        witness: w,
        pass,
    });

    let iv = sig_integral(&f.seifert, &Rational::new(1.into(), BigInt::from(1u64) << 64));
    let w = json!({"integral_lo": format_rational(&iv.lo), "integral_hi": format_rational(&iv.hi)});
    let pass = zero_integral_passes(&w) == Some(true);
    checks.push(Check {
        name: "Seifert integral zero".into(),
        claim: "integral of sigma_V over the circle is exactly 0".into(),
        witness: w,
        pass,
    });

    let inputs = json!({"index": i, "n": n, "delta_other": delta_other.canonical()});
    Ok(finish(CertificateKind::CoprimeSplit, f, inputs, checks))
}

/// Recomputes every pass flag and the verdict from the witnesses alone.
pub fn reverify(cert: &Certificate) -> Certificate {
    let mut out = cert.clone();
    for c in &mut out.checks {
        c.pass = match c.name.as_str() {
            "reindex" => reindex_passes(&c.witness) == Some(true),
            "generation" => {
                generation_passes(&c.witness) == Some(true)
                    && c.witness.get("eta_generation_mod_p").and_then(Value::as_bool) == Some(true)
            }
            "rho bound" => rho_passes(&c.witness) == Some(true),
            "coprime" => coprime_passes(&c.witness) == Some(true),
            "nontrivial Alexander" => nontrivial_passes(&c.witness) == Some(true),
            "Blanchfield nonsingular" => nonsingular_passes(&c.witness) == Some(true),
            "Seifert integral zero" => zero_integral_passes(&c.witness) == Some(true),
            "signature integral" if cert.kind == CertificateKind::CoprimeSplit => {
                lemma_item_passes("signature integral", &c.witness)
            }
            name => c
                .witness
                .as_array()
                .is_some_and(|items| !items.is_empty() && items.iter().all(|w| lemma_item_passes(name, w))),
        };
    }
    out.verdict = verdict_for(out.kind, &out.checks);
    out
}

/// True when re-verification reproduces the certificate byte for byte.
pub fn reverifies_identically(cert: &Certificate) -> bool {
    reverify(cert).to_json() == cert.to_json()
}

/// All nonzero combinations in `{-box..=box}^n`, in lexicographic order.
pub fn combinations_in_box(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut a = vec![-bound; n];
    loop {
        if a.iter().any(|&x| x != 0) {
            out.push(a.clone());
        }
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if a[k] < bound {
                a[k] += 1;
                break;
            }
            a[k] = -bound;
        }
    }
}

/// Certificates for every nonzero combination in the box, sharing one lemma report.
pub fn certify_box(f: &FamilyDescriptor, bound: i64) -> Result<Vec<(Vec<i64>, Certificate)>> {
    let report = verify_lemma_conditions(f);
    combinations_in_box(f.companions.len(), bound)
        .into_iter()
        .map(|a| certify_linear_combination_with(f, &report, &a).map(|c| (a, c)))
        .collect()
}

pub fn all_positive(certs: &[(Vec<i64>, Certificate)]) -> bool {
    certs.iter().all(|(_, c)| c.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concordance::SlicenessEvidence;
    use crate::forge::{forge_family, CGBound};
    use crate::seifert::SeifertMatrix;
    use std::sync::OnceLock;

    fn family() -> &'static FamilyDescriptor {
        static F: OnceLock<FamilyDescriptor> = OnceLock::new();
        F.get_or_init(|| {
            let v = SeifertMatrix::validate(vec![vec![0, 2], vec![1, 0]]).unwrap();
            forge_family(&v, &CGBound::from_crossing_number(6).unwrap(), 3, None, &SlicenessEvidence::Search { bound: 1 })
                .unwrap()
        })
    }

    #[test]
    fn single_companion_obstructed() {
        let c = certify_linear_combination(family(), &[1, 0, 0]).unwrap();
        assert_eq!(c.verdict, Verdict::Obstructed, "{:?}", c.failing());
        let rho = c.checks.iter().find(|c| c.name == "rho bound").unwrap();
        assert_eq!(rho.witness["sig_sum"], json!((4u64 * 313_709_762).to_string()));
        assert!(reverifies_identically(&c));
    }

    #[test]
    fn bad_inputs() {
        assert!(certify_linear_combination(family(), &[0, 0, 0]).is_err());
        assert!(certify_linear_combination(family(), &[1, 0]).is_err());
        let d = LaurentPoly::from_ints(&[1, -1, 1]);
        assert!(certify_coprime_nonconcordance(family(), 1, 0, &d).is_err());
        assert!(certify_coprime_nonconcordance(family(), 4, 1, &d).is_err());
    }

    #[test]
    fn sign_and_scale() {
        let f = family();
        let report = verify_lemma_conditions(f);
        let a = certify_linear_combination_with(f, &report, &[0, -1, 1]).unwrap();
        let b = certify_linear_combination_with(f, &report, &[0, -2, 2]).unwrap();
        assert_eq!(a.verdict, Verdict::Obstructed);
        assert_eq!(a.verdict, b.verdict);
        assert_eq!(a.checks[0].witness["normalized"], json!([0, 1, -1]));
    }

    #[test]
    fn sabotaged_arf_names_check() {
        let mut f = family().clone();
        for s in &mut f.companions[0].expr.summands {
            s.multiplicity += 1;
        }
        let c = certify_linear_combination(&f, &[1, 0, 0]).unwrap();
        assert_eq!(c.verdict, Verdict::Inconclusive);
        assert!(c.failing().contains(&"Arf"));
        assert!(reverifies_identically(&c));
    }

    #[test]
    fn splitting() {
        let f = family();
        let ok = certify_coprime_nonconcordance(f, 1, 1, &LaurentPoly::from_ints(&[1, -1, 1])).unwrap();
        assert_eq!(ok.verdict, Verdict::NotConcordantBySplitting, "{:?}", ok.failing());
        assert!(reverifies_identically(&ok));
        let bad = certify_coprime_nonconcordance(f, 1, 1, &LaurentPoly::from_ints(&[2, -5, 2])).unwrap();
        assert_eq!(bad.verdict, Verdict::Inconclusive);
        assert_eq!(bad.failing(), vec!["coprime"]);
    }

    #[test]
    fn tampered_witness_is_caught() {
        let mut c = certify_linear_combination(family(), &[1, 0, 0]).unwrap();
        let rho = c.checks.iter_mut().find(|c| c.name == "rho bound").unwrap();
        rho.witness["sig_sum"] = json!("4");
        assert!(!reverifies_identically(&c));
        assert_eq!(reverify(&c).verdict, Verdict::Inconclusive);
    }

    #[test]
    fn box_enumeration() {
        let combos = combinations_in_box(3, 1);
        assert_eq!(combos.len(), 26);
        assert_eq!(combos[0], vec![-1, -1, -1]);
    }
}
