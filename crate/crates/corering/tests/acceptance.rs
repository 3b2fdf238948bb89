//! Acceptance suite: nine end-to-end criteria, each printing one
//! PASS/FAIL line (run with `--nocapture` to see them all). Expected
//! values come from independent oracles written here in terms of raw
//! ring operations, never from the computation paths under test.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_rational::BigRational;

use corering::carrier::{CarrierSpec, RingElement};
use corering::error::Error;
use corering::geninv::{
    characterize_core, compute_core, compute_core_dual_route, compute_drazin, compute_group,
    compute_mp, compute_weighted_core, is_unit, verify_inverse, InverseKind,
};
use corering::laws::{check_law, CheckMode, DirectProvider, LawId, LawStatus};
use corering::rng::SplitMix64;
use corering::scalar::Scalar;
use corering::search::{mine, report_to_json, JobTask, MiningJob, MiningMode, MiningOutput};
use corering::Limits;

fn finite_carriers() -> Vec<CarrierSpec> {
    vec![
        CarrierSpec::zn(2, 2).unwrap(), // M_2(Z_2)
        CarrierSpec::zn(4, 1).unwrap(),
        CarrierSpec::zn(6, 1).unwrap(),
        CarrierSpec::zn(8, 1).unwrap(),
        CarrierSpec::zn(9, 1).unwrap(),
        CarrierSpec::zn(12, 1).unwrap(),
    ]
}

fn elements_of(spec: &CarrierSpec) -> Vec<RingElement> {
    let n = spec.element_count().unwrap();
    (0..n).map(|i| spec.element_at(i).unwrap()).collect()
}

/// Oracle: solutions of the three core equations by raw arithmetic.
fn scan_core_solutions(a: &RingElement, elements: &[RingElement]) -> Vec<RingElement> {
    elements
        .iter()
        .filter(|x| {
            let ax = a.mul(x);
            ax.star() == ax && a.mul(&x.mul(x)) == **x && x.mul(&a.mul(a)) == *a
        })
        .cloned()
        .collect()
}

/// Oracle: solutions of the four Penrose equations by raw arithmetic.
fn scan_mp_solutions(a: &RingElement, elements: &[RingElement]) -> Vec<RingElement> {
    elements
        .iter()
        .filter(|x| {
            let ax = a.mul(x);
            let xa = x.mul(a);
            ax.mul(a) == *a && xa.mul(x) == **x && ax.star() == ax && xa.star() == xa
        })
        .cloned()
        .collect()
}

/// Oracle: solutions of the three weighted core equations.
fn scan_weighted_solutions(
    a: &RingElement,
    e: &RingElement,
    elements: &[RingElement],
) -> Vec<RingElement> {
    elements
        .iter()
        .filter(|x| {
            let eax = e.mul(&a.mul(x));
            a.mul(&x.mul(x)) == **x && x.mul(&a.mul(a)) == *a && eax.star() == eax
        })
        .cloned()
        .collect()
}

fn assert_within(elapsed: Duration, budget: Duration, label: &str) {
    assert!(
        elapsed <= budget,
        "{label}: took {elapsed:?}, budget {budget:?}"
    );
}

#[test]
fn criterion_1_characterization_equivalence() {
    let start = Instant::now();
    let limits = Limits::default();
    for spec in finite_carriers() {
        let elements = elements_of(&spec);
        for a in &elements {
            let rep = characterize_core(a, &limits).unwrap();
            assert!(rep.all_agree, "clause disagreement for {a} in {spec}");
            assert!(
                rep.witnesses_consistent,
                "witness mismatch for {a} in {spec}"
            );
            // Against the independent oracle: the scan solution set of
            // the three core equations.
            let oracle = scan_core_solutions(a, &elements);
            assert!(oracle.len() <= 1, "oracle uniqueness broken for {a}");
            match oracle.first() {
                Some(x) => {
                    assert!(rep.core_invertible);
                    for clause in &rep.clauses {
                        assert_eq!(clause.witnesses, vec![x.clone()], "clause {}", clause.label);
                    }
                }
                None => assert!(!rep.core_invertible),
            }
        }
    }
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(10), "criterion 1");
    println!("criterion 1: PASS - eight-way characterization agrees on all six carriers ({elapsed:?})");
}

#[test]
fn criterion_2_uniqueness() {
    let start = Instant::now();
    for spec in finite_carriers() {
        let elements = elements_of(&spec);
        let hermitian_units: Vec<RingElement> = elements
            .iter()
            .filter(|e| e.is_hermitian() && is_unit(e))
            .cloned()
            .collect();
        for a in &elements {
            assert!(
                scan_core_solutions(a, &elements).len() <= 1,
                "multiple core inverses for {a} in {spec}"
            );
            assert!(
                scan_mp_solutions(a, &elements).len() <= 1,
                "multiple Moore-Penrose inverses for {a} in {spec}"
            );
            for e in &hermitian_units {
                assert!(
                    scan_weighted_solutions(a, e, &elements).len() <= 1,
                    "multiple {e}-weighted core inverses for {a} in {spec}"
                );
            }
        }
    }
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(30), "criterion 2");
    println!("criterion 2: PASS - core/MP/weighted-core inverses unique on all six carriers ({elapsed:?})");
}

#[test]
fn criterion_3_annihilator_lemma_suite() {
    let start = Instant::now();
    let limits = Limits::default();
    let mut checked = 0u64;
    for spec in finite_carriers() {
        let elements = elements_of(&spec);
        for a in &elements {
            match corering::annihil::check_lemma31(a, &limits) {
                Ok(verdict) => {
                    assert_eq!(
                        verdict.status,
                        LawStatus::ImplicationHolds,
                        "lemma item failed for {a} in {spec}: {verdict:?}"
                    );
                    checked += 1;
                }
                Err(Error::NotCoreInvertible(_)) => {}
                Err(other) => panic!("unexpected error for {a}: {other}"),
            }
        }
    }
    assert!(checked > 0);
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(60), "criterion 3");
    println!("criterion 3: PASS - all five annihilator identities hold for {checked} core-invertible elements ({elapsed:?})");
}

#[test]
fn criterion_4_forward_law_soundness() {
    let start = Instant::now();
    let laws = [
        LawId::Thm32,
        LawId::Thm33,
        LawId::Thm35,
        LawId::Remark36,
        LawId::Thm310Weighted,
    ];
    for spec in finite_carriers() {
        let commutative = spec.dim == 1;
        for law in laws {
            let job = MiningJob::exhaustive(spec.clone(), law);
            let MiningOutput::Law(rep) = mine(&job).unwrap() else {
                panic!("law job yields a law report");
            };
            assert_eq!(
                rep.totals.counterexamples,
                0,
                "counterexample for {} on {spec}: {:?}",
                law.name(),
                rep.counterexamples.first()
            );
            assert!(!rep.partial);
            if commutative {
                assert!(
                    rep.totals.hypothesis_satisfying >= 1,
                    "law {} exercised only vacuously on {spec}",
                    law.name()
                );
            }
        }
    }
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(300), "criterion 4");
    println!("criterion 4: PASS - zero counterexamples for five implication laws over six carriers, non-vacuous on all commutative ones ({elapsed:?})");
}

#[test]
fn criterion_5_equivalence_soundness() {
    let start = Instant::now();
    let carriers = [CarrierSpec::zn(2, 2).unwrap(), CarrierSpec::zn(6, 1).unwrap()];
    for spec in carriers {
        for law in [LawId::Thm34Equiv, LawId::Thm39IffStar, LawId::Thm311Hybrid] {
            let job = MiningJob::exhaustive(spec.clone(), law);
            let MiningOutput::Law(rep) = mine(&job).unwrap() else {
                panic!();
            };
            assert_eq!(
                rep.totals.counterexamples,
                0,
                "equivalence failure for {} on {spec}: {:?}",
                law.name(),
                rep.counterexamples.first()
            );
            assert!(
                rep.totals.hypothesis_satisfying >= 1,
                "no admissible pair for {} on {spec}",
                law.name()
            );
        }
    }
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(120), "criterion 5");
    println!("criterion 5: PASS - three equivalence laws hold on every admissible pair of M_2(Z_2) and Z_6 ({elapsed:?})");
}

#[test]
fn criterion_6_known_forward_law_failure() {
    let start = Instant::now();
    let limits = Limits::default();
    let spec = CarrierSpec::zn(2, 2).unwrap();
    let a = RingElement::from_i64s(&spec, &[1, 1, 0, 1]).unwrap();
    let b = RingElement::from_i64s(&spec, &[1, 0, 1, 1]).unwrap();
    let ab = a.mul(&b);

    // Frozen expected values, verified by direct mod-2 arithmetic.
    let core_ab = compute_core(&ab, &limits).unwrap().value;
    assert_eq!(core_ab, RingElement::from_i64s(&spec, &[1, 1, 1, 0]).unwrap());
    let prod = compute_core(&a, &limits)
        .unwrap()
        .value
        .mul(&compute_core(&b, &limits).unwrap().value);
    assert_eq!(prod, RingElement::from_i64s(&spec, &[0, 1, 1, 1]).unwrap());
    assert_ne!(core_ab, prod, "the forward-order law must fail here");

    // The star-characterization checker reports both sides false,
    // hence the equivalence holds.
    let verdict = corering::laws::law_thm39_iff_star(&a, &b, &limits).unwrap();
    assert_eq!(verdict.status, LawStatus::EquivalenceHolds);
    assert!(verdict.conclusion_rows.iter().all(|r| !r.satisfied));

    // A mining-style scan confirms at least one pair with both sides
    // false exists in M_2(Z_2).
    let elements = elements_of(&spec);
    let provider = DirectProvider { limits: &limits };
    let mut both_false = 0u32;
    for x in &elements {
        for y in &elements {
            let v = check_law(
                LawId::Thm39IffStar,
                &[x.clone(), y.clone()],
                CheckMode::Scan,
                &provider,
                &limits,
            )
            .unwrap();
            if v.status == LawStatus::EquivalenceHolds
                && v.conclusion_rows.len() == 2
                && v.conclusion_rows.iter().all(|r| !r.satisfied)
            {
                both_false += 1;
            }
        }
    }
    assert!(both_false >= 1);
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(1), "criterion 6");
    println!("criterion 6: PASS - known failing pair has (ab)^co != a^co b^co with both biconditional sides false; {both_false} such pairs in M_2(Z_2) ({elapsed:?})");
}

/// Deterministic random 3x3 rational matrix of exactly the given rank.
fn random_rank_matrix(rank: usize, rng: &mut SplitMix64) -> RingElement {
    let spec = CarrierSpec::rational(3);
    loop {
        // Product of a 3 x rank and a rank x 3 with small entries.
        let rand_rat = |rng: &mut SplitMix64| {
            BigRational::new(rng.next_in_range(-5, 5).into(), rng.next_in_range(1, 4).into())
        };
        let f: Vec<BigRational> = (0..3 * rank).map(|_| rand_rat(rng)).collect();
        let g: Vec<BigRational> = (0..rank * 3).map(|_| rand_rat(rng)).collect();
        let mut entries = Vec::with_capacity(9);
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = BigRational::new(0.into(), 1.into());
                for k in 0..rank {
                    acc += &f[i * rank + k] * &g[k * 3 + j];
                }
                entries.push(Scalar::Rational(acc));
            }
        }
        let a = RingElement::make(&spec, entries).unwrap();
        // Exact rank via the elimination kernel.
        let m = corering::linalg::Mat::from_fn(3, 3, |r, c| match a.entry(r, c) {
            Scalar::Rational(x) => x.clone(),
            _ => unreachable!(),
        });
        if m.rank() == rank {
            return a;
        }
    }
}

#[test]
fn criterion_7_rational_matrix_oracle_agreement() {
    let start = Instant::now();
    let limits = Limits::default();
    let mut rng = SplitMix64::new(0xACCE_0007);
    let mut core_successes = 0u32;
    let mut core_failures = 0u32;
    for rank in 0..=3usize {
        for _ in 0..100 {
            let a = random_rank_matrix(rank, &mut rng);
            // Four Penrose equations, exactly.
            let mp = compute_mp(&a, &limits).unwrap();
            let trace = verify_inverse(&a, &mp.value, &InverseKind::MoorePenrose).unwrap();
            assert!(trace.passed(), "Penrose equations failed for {a}");

            let index = compute_drazin(&a, &limits).unwrap().index.unwrap();
            match compute_core(&a, &limits) {
                Ok(core) => {
                    assert!(index <= 1, "core inverse exists but index is {index}");
                    let xu = verify_inverse(&a, &core.value, &InverseKind::Core).unwrap();
                    assert!(xu.passed());
                    // Independent route: group inverse from the Drazin
                    // formula times a times the Moore-Penrose inverse.
                    let group = compute_group(&a, &limits).unwrap().value;
                    assert_eq!(core.value, group.mul(&a).mul(&mp.value));
                    // Second independent route: constrained {1,3} solve.
                    assert_eq!(Some(core.value), compute_core_dual_route(&a));
                    core_successes += 1;
                }
                Err(Error::NotCoreInvertible(_)) => {
                    assert!(index > 1, "no core inverse but index is {index}");
                    core_failures += 1;
                }
                Err(other) => panic!("unexpected error: {other}"),
            }
        }
    }
    // Generic rank-r products have index 1 almost surely, so drive the
    // rejection branch with random nonzero strictly upper triangular
    // matrices (nilpotent, index >= 2).
    let spec = CarrierSpec::rational(3);
    for _ in 0..50 {
        let mut entries = vec![0i64; 9];
        while entries.iter().all(|&v| v == 0) {
            entries[1] = rng.next_in_range(-5, 5);
            entries[2] = rng.next_in_range(-5, 5);
            entries[5] = rng.next_in_range(-5, 5);
        }
        let a = RingElement::from_i64s(&spec, &entries).unwrap();
        let index = compute_drazin(&a, &limits).unwrap().index.unwrap();
        assert!(index > 1);
        assert!(matches!(
            compute_core(&a, &limits),
            Err(Error::NotCoreInvertible(_))
        ));
        core_failures += 1;
    }
    assert!(core_successes > 0 && core_failures > 0);
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(30), "criterion 7");
    println!("criterion 7: PASS - 450 random rational matrices agree with the equation oracles ({core_successes} core successes, {core_failures} index>1 rejections) ({elapsed:?})");
}

#[test]
fn criterion_8_commuting_pair_bridge() {
    let start = Instant::now();
    let limits = Limits::default();
    let provider = DirectProvider { limits: &limits };
    let mut bridged = 0u64;
    for spec in finite_carriers() {
        let elements = elements_of(&spec);
        for a in &elements {
            for b in &elements {
                let remark = check_law(
                    LawId::Remark36,
                    &[a.clone(), b.clone()],
                    CheckMode::Scan,
                    &provider,
                    &limits,
                )
                .unwrap();
                if !remark.hypotheses_satisfied() {
                    continue;
                }
                // Hypotheses hold: the four commutation hypotheses of the
                // four-condition law must hold as well.
                let thm35 = check_law(
                    LawId::Thm35,
                    &[a.clone(), b.clone()],
                    CheckMode::Scan,
                    &provider,
                    &limits,
                )
                .unwrap();
                assert!(
                    thm35.hypotheses_satisfied(),
                    "bridge violated for ({a}, {b}) in {spec}: {thm35:?}"
                );
                bridged += 1;
            }
        }
    }
    assert!(bridged > 0);
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(60), "criterion 8");
    println!("criterion 8: PASS - commuting-pair hypotheses imply the four commutation conditions on {bridged} pairs ({elapsed:?})");
}

#[test]
fn criterion_9_determinism() {
    let start = Instant::now();
    let strip_elapsed = |out: &MiningOutput| -> serde_json::Value {
        let mut v: serde_json::Value = serde_json::from_str(&report_to_json(out)).unwrap();
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    // Same job, same seed: byte-identical apart from elapsed_ms.
    let mut job = MiningJob::exhaustive(CarrierSpec::zn(2, 2).unwrap(), LawId::Thm32);
    job.mode = MiningMode::Random {
        seed: 2024,
        samples: 200,
    };
    let first = strip_elapsed(&mine(&job).unwrap());
    let second = strip_elapsed(&mine(&job).unwrap());
    assert_eq!(
        serde_json::to_string(&first).unwrap(),
        serde_json::to_string(&second).unwrap()
    );
    // Worker count must not change contents.
    let mut one = MiningJob::exhaustive(CarrierSpec::zn(6, 1).unwrap(), LawId::Thm310Weighted);
    one.workers = 1;
    let mut four = one.clone();
    four.workers = 4;
    assert_eq!(
        serde_json::to_string(&strip_elapsed(&mine(&one).unwrap())).unwrap(),
        serde_json::to_string(&strip_elapsed(&mine(&four).unwrap())).unwrap()
    );
    // Classify runs must also agree.
    let c1 = strip_elapsed(&mine(&MiningJob {
        task: JobTask::Classify,
        ..MiningJob::exhaustive(CarrierSpec::zn(12, 1).unwrap(), LawId::Thm32)
    })
    .unwrap());
    let c2 = strip_elapsed(&mine(&MiningJob {
        task: JobTask::Classify,
        ..MiningJob::exhaustive(CarrierSpec::zn(12, 1).unwrap(), LawId::Thm32)
    })
    .unwrap());
    assert_eq!(c1, c2);
    let elapsed = start.elapsed();
    println!("criterion 9: PASS - identical jobs yield byte-identical reports; worker count is content-invariant ({elapsed:?})");
}

/// The verdict-level consistency property behind the mining runs:
/// whenever a checker concludes the forward-order law, the product
/// passes independent core verification.
#[test]
fn conclusion_self_consistency_spot_check() {
    let limits = Limits::default();
    let provider = DirectProvider { limits: &limits };
    let spec = CarrierSpec::zn(6, 1).unwrap();
    let elements = elements_of(&spec);
    let mut asserted = 0u32;
    for a in &elements {
        for b in &elements {
            for law in [LawId::Thm32, LawId::Thm35, LawId::Remark36] {
                let v = check_law(
                    law,
                    &[a.clone(), b.clone()],
                    CheckMode::Scan,
                    &provider,
                    &limits,
                )
                .unwrap();
                assert!(corering::laws::conclusion_is_consistent(a, b, &v, &limits));
                if v.conclusion == Some(true) {
                    asserted += 1;
                }
            }
        }
    }
    assert!(asserted > 0);

    // Uniqueness sets used by the and weighted tables match: weight 1
    // must reproduce the plain core inverse everywhere.
    for a in &elements {
        let one = RingElement::one(&spec);
        let weighted = compute_weighted_core(a, &one, &limits).map(|r| r.value).ok();
        let core = compute_core(a, &limits).map(|r| r.value).ok();
        assert_eq!(weighted, core);
    }

    // And the BTreeSet detour guards against duplicate witnesses in a
    // characterization report.
    let rep = characterize_core(&elements[3], &limits).unwrap();
    for clause in &rep.clauses {
        let set: BTreeSet<String> = clause.witnesses.iter().map(|w| w.to_string()).collect();
        assert_eq!(set.len(), clause.witnesses.len());
    }
}
