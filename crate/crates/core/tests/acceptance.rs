//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use concordance::algebra::{AlgebraicAngle, LaurentPoly, UnitPoint};
use concordance::blanchfield::{present_module, self_annihilating_submodules, BlanchfieldForm};
use concordance::certificate::{certify_box, certify_coprime_nonconcordance, reverifies_identically, Verdict};
use concordance::concordance::{fox_milnor, search_metabolizer, Metabolizer, SlicenessEvidence};
use concordance::forge::{forge_family, verify_lemma_conditions, CGBound, FamilyDescriptor, CHEEGER_GROMOV_FACTOR};
use concordance::seifert::SeifertMatrix;
use concordance::signature::{lt_signature, sig_integral, sig_profile, sig_sum, Signature, SignatureProfile};
use concordance::Rational;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn trefoil() -> SeifertMatrix {
    SeifertMatrix::validate(vec![vec![-1, 1], vec![0, -1]]).unwrap()
}

fn v6() -> SeifertMatrix {
    SeifertMatrix::validate(vec![vec![0, 2], vec![1, 0]]).unwrap()
}

fn root(order: u64, index: u64) -> UnitPoint {
    UnitPoint::RootOfUnity { order, index }
}

fn same_profile(a: &SignatureProfile, b: &SignatureProfile) -> bool {
    a.arc_values == b.arc_values
        && a.value_at_one == b.value_at_one
        && a.jump_angles.len() == b.jump_angles.len()
        && a.jump_angles.iter().zip(&b.jump_angles).all(|(x, y)| x.cmp_angle(y).is_eq())
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut compared, mut gray) = (0, 0);
    for case in 0..500 {
        let v = common::random_seifert(&mut rng, 3, 5);
        let p = rng.gen_range(2..=13u64);
        let r = rng.gen_range(0..p);
        let exact = lt_signature(&v, &root(p, r));
        match common::float_signature(&v, p, r, 1e-6) {
            None => gray += 1,
            Some((sig, nullity)) => {
                compared += 1;
                ensure(exact == Signature { signature: sig, nullity }, || {
                    format!("case {case}: V={:?} at {r}/{p}: exact {exact:?}, float ({sig}, {nullity})", v.entries())
                })?;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{compared}/{compared} agree, {gray} gray-zone skipped, {:.1}s", elapsed.as_secs_f64()))
}

fn trefoil_suite() -> Outcome {
    let v = trefoil();
    let a = v.alexander();
    ensure(a.delta.to_string() == "t^2-t+1", || format!("Delta = {}", a.delta))?;
    ensure(v.arf() == 1, || "Arf != 1".into())?;
    let s = lt_signature(&v, &root(2, 1));
    ensure(s == Signature { signature: -2, nullity: 0 }, || format!("sigma(-1) = {s:?}"))?;
    let prof = sig_profile(&v);
    let third = AlgebraicAngle::root_of_unity(6, 1).unwrap();
    ensure(prof.jump_angles.len() == 1 && prof.jump_angles[0].cmp_angle(&third).is_eq(), || {
        format!("jumps {:?}", prof.jump_angles)
    })?;
    let ss = sig_sum(&v, 3).unwrap();
    ensure(ss == -4, || format!("sig_sum(3) = {ss}"))?;
    let tol = Rational::new(1.into(), 1_000_000_000.into());
    let iv = sig_integral(&v, &tol);
    let target = Rational::new((-4).into(), 3.into());
    ensure(iv.contains(&target) && iv.width() <= tol, || format!("integral enclosure [{}, {}]", iv.lo, iv.hi))?;
    Ok("Delta, Arf, sigma(-1), jump at pi/3, sig_sum(3), integral -4/3".into())
}

fn slice_suite() -> Outcome {
    let v = v6();
    let a = v.alexander();
    ensure(a.delta == LaurentPoly::from_ints(&[2, -5, 2]), || format!("Delta = {}", a.delta))?;
    ensure(v.arf() == 0, || "Arf != 0".into())?;
    for p in 1..=23u64 {
        for r in 0..p {
            let s = lt_signature(&v, &root(p, r));
            ensure(s.signature == 0, || format!("sigma at {r}/{p} = {s:?}"))?;
        }
    }
    ensure(fox_milnor(&a.delta), || "Fox-Milnor false".into())?;
    let h = search_metabolizer(&v, 1);
    ensure(h == Some(Metabolizer { basis: vec![vec![1], vec![0]] }), || format!("metabolizer {h:?}"))?;
    let module = present_module(&v);
    ensure(module.primary_components.len() == 2, || format!("components {:?}", module.primary_components))?;
    let subs = self_annihilating_submodules(&v).unwrap();
    ensure(subs.len() == 2 && subs.iter().all(|s| 2 * s.rank == a.degree && s.rank == 1), || {
        format!("submodules {subs:?}")
    })?;
    Ok("Delta, Arf, sigma = 0 for p <= 23, Fox-Milnor, e1, 2 pieces, 2 submodules of rank 1".into())
}

fn invariance_battery() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let primes = [3u64, 5, 7, 11, 13];
    let mut parity_checked = 0;
    for case in 0..200 {
        let v = common::random_seifert(&mut rng, 3, 5);
        let g = v.genus();
        let at_one = lt_signature(&v, &root(1, 0));
        ensure(at_one == Signature { signature: 0, nullity: 2 * g }, || format!("case {case}: sigma(1) = {at_one:?}"))?;

        let steps = rng.gen_range(1..=6);
        let p = common::random_unimodular(&mut rng, v.dim(), steps);
        let w = v.congruence(&p).unwrap();
        let (pv, pw) = (sig_profile(&v), sig_profile(&w));
        ensure(v.alexander().delta == w.alexander().delta, || format!("case {case}: Delta changed under congruence"))?;
        ensure(same_profile(&pv, &pw), || format!("case {case}: profile changed under congruence"))?;

        let pm = sig_profile(&v.mirror());
        ensure(same_profile(&pm, &pv.negated()), || format!("case {case}: mirror does not negate"))?;

        let u = common::random_seifert(&mut rng, 2, 5);
        let sum = v.block_sum(&u);
        let expected = (v.alexander().delta * u.alexander().delta).canonical();
        ensure(sum.alexander().delta == expected, || format!("case {case}: Delta not multiplicative"))?;
        let pu = sig_profile(&u);
        let ps = sig_profile(&sum);
        for &q in &primes {
            for r in 1..q {
                let x = root(q, r);
                ensure(ps.value_at(&x) == pv.value_at(&x) + pu.value_at(&x), || {
                    format!("case {case}: sigma not additive at {r}/{q}")
                })?;
            }
        }
        for &q in &primes {
            if let Ok(s) = sig_sum(&v, q) {
                parity_checked += 1;
                ensure(s % 2 == 0, || format!("case {case}: sig_sum({q}) = {s} is odd"))?;
            }
        }
    }
    Ok(format!("200 cases, {parity_checked} parity checks, zero failures"))
}

fn forged_family() -> (FamilyDescriptor, Duration) {
    let start = Instant::now();
    let bound = CGBound::from_crossing_number(6).unwrap();
    let f = forge_family(&v6(), &bound, 3, None, &SlicenessEvidence::Search { bound: 1 }).unwrap();
    (f, start.elapsed())
}

fn lemma_reproduction() -> Outcome {
    let start = Instant::now();
    let (f, _) = forged_family();
    let primes: Vec<u64> = f.companions.iter().map(|c| c.prime).collect();
    ensure(primes == [3, 7, 11], || format!("primes {primes:?}"))?;
    ensure(f.bound.c_k == BigInt::from(CHEEGER_GROMOV_FACTOR * 6), || format!("C_K = {}", f.bound.c_k))?;
    ensure(f.bound.c_k == BigInt::from(418_279_680u64), || "C_K != 418279680".into())?;
    ensure(f.companions[0].witness.multiplicity == BigInt::from(313_709_762u64), || {
        format!("N_1 = {}", f.companions[0].witness.multiplicity)
    })?;
    let report = verify_lemma_conditions(&f);
    ensure(report.all_pass, || format!("failing {:?}", report.failing()))?;
    for cond in 1..=4u8 {
        ensure(report.checks.iter().any(|c| c.condition == cond), || format!("condition {cond} not checked"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("primes (3, 7, 11), conditions (1)-(4) pass, {:.1}s", elapsed.as_secs_f64()))
}

fn certificate_coverage() -> Outcome {
    let (f, _) = forged_family();
    let certs = certify_box(&f, 1).unwrap();
    ensure(certs.len() == 26, || format!("{} combinations", certs.len()))?;
    for (a, c) in &certs {
        ensure(c.verdict == Verdict::Obstructed, || format!("{a:?}: {:?} failing {:?}", c.verdict, c.failing()))?;
        ensure(reverifies_identically(c), || format!("{a:?} does not re-verify"))?;
    }
    let again = certify_box(&f, 1).unwrap();
    ensure(
        certs.iter().zip(&again).all(|((_, x), (_, y))| x.to_json() == y.to_json()),
        || "certifying twice differs".into(),
    )?;
    for coeffs in [[1, -1, 1], [1, -3, 1]] {
        let d = LaurentPoly::from_ints(&coeffs);
        let c = certify_coprime_nonconcordance(&f, 1, 1, &d).unwrap();
        ensure(c.verdict == Verdict::NotConcordantBySplitting, || format!("{d}: failing {:?}", c.failing()))?;
        ensure(reverifies_identically(&c), || format!("{d} split does not re-verify"))?;
    }
    let c = certify_coprime_nonconcordance(&f, 1, 1, &f.alexander).unwrap();
    ensure(c.verdict == Verdict::Inconclusive, || "Delta_K split was not inconclusive".into())?;
    ensure(reverifies_identically(&c), || "Delta_K split does not re-verify".into())?;
    Ok("26 OBSTRUCTED, splits for t^2-t+1 and t^2-3t+1, Delta_K inconclusive, byte-identical re-verification".into())
}

fn blanchfield_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..100 {
        let v = common::random_seifert(&mut rng, 3, 5);
        let form = BlanchfieldForm::new(&v);
        ensure(form.hermitian_on_generators().unwrap(), || format!("case {case}: not Hermitian, V={:?}", v.entries()))?;
        ensure(form.nonsingular_on_generators().unwrap(), || format!("case {case}: singular, V={:?}", v.entries()))?;
        let product = form.module.invariant_factors.iter().fold(LaurentPoly::one(), |acc, f| acc * f.clone());
        ensure(product.associated(&v.alexander().delta), || {
            format!("case {case}: product {product} vs Delta {}", v.alexander().delta)
        })?;
    }
    Ok("100 random matrices: Hermitian, nonsingular, invariant factors multiply to Delta".into())
}

fn planted_metabolizers() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for case in 0..100 {
        let g = rng.gen_range(1..=3);
        let (v, _) = common::planted_metabolizer(&mut rng, g, 6);
        ensure(fox_milnor(&v.alexander().delta), || format!("case {case}: Fox-Milnor false, V={:?}", v.entries()))?;
        let prof = sig_profile(&v);
        ensure(prof.is_zero(), || format!("case {case}: nonzero signature arc, V={:?}", v.entries()))?;
        for p in [3u64, 5, 7, 11] {
            for r in 1..p {
                let s = lt_signature(&v, &root(p, r));
                ensure(s.nullity > 0 || s.signature == 0, || format!("case {case}: sigma({r}/{p}) = {s:?}"))?;
            }
        }
    }
    Ok("100 scrambled planted metabolizers: Fox-Milnor and sigma = 0 off jumps".into())
}

fn secs(start: Instant) -> f64 {
    start.elapsed().as_secs_f64()
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("oracle equivalence", oracle_equivalence),
        ("trefoil suite", trefoil_suite),
        ("algebraically slice suite", slice_suite),
        ("invariance battery", invariance_battery),
        ("lemma conditions", lemma_reproduction),
        ("certificate coverage", certificate_coverage),
        ("Blanchfield properties", blanchfield_properties),
        ("planted metabolizers", planted_metabolizers),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail}) [{:.1}s]", k + 1, secs(start)),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({detail}) [{:.1}s]", k + 1, secs(start));
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
