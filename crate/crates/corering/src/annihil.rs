//! Left/right annihilator sets in finite carriers and the checks built
//! on them: the five annihilator identities of a core-invertible
//! element, the idempotent complement lemma, and the `b b^core`
//! containment remark.
//!
//! Set-valued annihilators exist only on finite carriers; rational and
//! Gaussian carriers are rejected with `InfiniteCarrier`, except for the
//! pointwise cancellation checks which make sense anywhere.

use serde::Serialize;

use crate::carrier::{CarrierSpec, RingElement};
use crate::error::{Error, Result};
use crate::geninv::{compute_core, finite_elements};
use crate::laws::{CheckMode, HypothesisRow, LawStatus, LawVerdict};
use crate::rng::SplitMix64;
use crate::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// An annihilator set over a finite carrier, stored as sorted
/// enumeration indices. `side = Left` holds {x : x a = 0}, `Right`
/// holds {x : a x = 0}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnihilatorSet {
    pub side: Side,
    pub anchor: RingElement,
    member_indices: Vec<u64>,
}

impl AnnihilatorSet {
    pub fn indices(&self) -> &[u64] {
        &self.member_indices
    }

    pub fn len(&self) -> usize {
        self.member_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.member_indices.is_empty()
    }

    /// Materialize the member elements in enumeration order.
    pub fn members(&self) -> Vec<RingElement> {
        self.member_indices
            .iter()
            .map(|&i| {
                self.anchor
                    .spec()
                    .element_at(i)
                    .expect("member index is in range")
            })
            .collect()
    }

    /// Membership by the defining equation, independent of the stored
    /// index list.
    pub fn contains(&self, x: &RingElement) -> bool {
        match self.side {
            Side::Left => x.mul(&self.anchor).is_zero(),
            Side::Right => self.anchor.mul(x).is_zero(),
        }
    }

    /// Subset test on the stored index lists (both are sorted).
    pub fn is_subset_of(&self, other: &AnnihilatorSet) -> bool {
        let mut it = other.member_indices.iter().peekable();
        'outer: for &m in &self.member_indices {
            while let Some(&&o) = it.peek() {
                match o.cmp(&m) {
                    std::cmp::Ordering::Less => {
                        it.next();
                    }
                    std::cmp::Ordering::Equal => continue 'outer,
                    std::cmp::Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }
}

fn annihilator(a: &RingElement, side: Side, limits: &Limits) -> Result<AnnihilatorSet> {
    let spec = a.spec();
    let elements = finite_elements(spec, limits)?;
    let member_indices = elements
        .iter()
        .enumerate()
        .filter(|(_, x)| match side {
            Side::Left => x.mul(a).is_zero(),
            Side::Right => a.mul(x).is_zero(),
        })
        .map(|(i, _)| i as u64)
        .collect();
    Ok(AnnihilatorSet {
        side,
        anchor: a.clone(),
        member_indices,
    })
}

/// `{x : x a = 0}` by full enumeration.
pub fn left_annihilator(a: &RingElement, limits: &Limits) -> Result<AnnihilatorSet> {
    annihilator(a, Side::Left, limits)
}

/// `{x : a x = 0}` by full enumeration.
pub fn right_annihilator(a: &RingElement, limits: &Limits) -> Result<AnnihilatorSet> {
    annihilator(a, Side::Right, limits)
}

/// How a quantified check covered its domain: every tuple, or a seeded
/// sample of the stated size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum QuantifierCoverage {
    Exhaustive,
    Sampled { seed: u64, count: u64 },
}

fn hyp(name: &str, satisfied: bool) -> HypothesisRow {
    HypothesisRow {
        name: name.to_string(),
        satisfied,
        left: None,
        right: None,
        note: None,
    }
}

/// Quantifier strategy for a finite carrier: exhaustive up to the
/// configured bound, seeded uniform sampling beyond it. Returns the
/// single draws (for one-variable quantifiers) and the pair draws.
#[allow(clippy::type_complexity)]
fn coverage_for(
    spec: &CarrierSpec,
    limits: &Limits,
) -> Result<(QuantifierCoverage, Vec<u64>, Vec<(u64, u64)>)> {
    let size = spec.element_count().ok_or(Error::InfiniteCarrier)?;
    if size > limits.enumeration_bound {
        return Err(Error::CarrierTooLarge {
            size,
            bound: limits.enumeration_bound,
        });
    }
    if size <= limits.quantifier_bound {
        let singles: Vec<u64> = (0..size).collect();
        let pairs = singles
            .iter()
            .flat_map(|&b| (0..size).map(move |c| (b, c)))
            .collect();
        Ok((QuantifierCoverage::Exhaustive, singles, pairs))
    } else {
        let mut rng = SplitMix64::new(limits.sample_seed);
        let singles = (0..limits.sample_count)
            .map(|_| rng.next_below(size))
            .collect();
        let pairs = (0..limits.sample_count)
            .map(|_| (rng.next_below(size), rng.next_below(size)))
            .collect();
        Ok((
            QuantifierCoverage::Sampled {
                seed: limits.sample_seed,
                count: limits.sample_count,
            },
            singles,
            pairs,
        ))
    }
}

/// The five annihilator identities of a core-invertible element:
///
/// 1. `ann_r(a*) = ann_r(a^core)`
/// 2. `ann_l((a^core)*) = ann_l(a) = ann_l(a^core)`
/// 3. for all b, c: `a^core b = a^core c  iff  a* b = a* c`
/// 4. for all b, c: `b a^core = c a^core  iff  b a = c a`
/// 5. for all b: `ann_l(b (a^core)*) = ann_l(b a)`
///
/// Items 3-5 quantify over the carrier; coverage (exhaustive or
/// sampled) is recorded in the verdict notes.
pub fn check_lemma31(a: &RingElement, limits: &Limits) -> Result<LawVerdict> {
    let core = compute_core(a, limits)
        .map_err(|_| Error::NotCoreInvertible("lemma needs a core-invertible element".into()))?
        .value;
    let astar = a.star();
    let corestar = core.star();

    let item1 = right_annihilator(&astar, limits)?.indices()
        == right_annihilator(&core, limits)?.indices();
    let l_corestar = left_annihilator(&corestar, limits)?;
    let l_a = left_annihilator(a, limits)?;
    let l_core = left_annihilator(&core, limits)?;
    let item2 = l_corestar.indices() == l_a.indices() && l_a.indices() == l_core.indices();

    let (coverage, singles, pairs) = coverage_for(a.spec(), limits)?;
    let spec = a.spec();
    let mut item3 = true;
    let mut item4 = true;
    for &(bi, ci) in &pairs {
        let b = spec.element_at(bi)?;
        let c = spec.element_at(ci)?;
        let left3 = core.mul(&b) == core.mul(&c);
        let right3 = astar.mul(&b) == astar.mul(&c);
        item3 &= left3 == right3;
        let left4 = b.mul(&core) == c.mul(&core);
        let right4 = b.mul(a) == c.mul(a);
        item4 &= left4 == right4;
        if !(item3 && item4) {
            break;
        }
    }
    let mut item5 = true;
    for &bi in &singles {
        let b = spec.element_at(bi)?;
        let lhs = left_annihilator(&b.mul(&corestar), limits)?;
        let rhs = left_annihilator(&b.mul(a), limits)?;
        if lhs.indices() != rhs.indices() {
            item5 = false;
            break;
        }
    }

    let hypotheses = vec![hyp("a core invertible", true)];
    let conclusion_rows = vec![
        hyp("(i) ann_r(a*) = ann_r(a^core)", item1),
        hyp(
            "(ii) ann_l((a^core)*) = ann_l(a) = ann_l(a^core)",
            item2,
        ),
        hyp("(iii) a^core b = a^core c iff a* b = a* c", item3),
        hyp("(iv) b a^core = c a^core iff b a = c a", item4),
        hyp("(v) ann_l(b (a^core)*) = ann_l(b a)", item5),
    ];
    let all = item1 && item2 && item3 && item4 && item5;
    Ok(LawVerdict {
        law: "lemma31".into(),
        inputs: vec![a.to_string()],
        hypotheses,
        conclusion_rows,
        conclusion: Some(all),
        status: if all {
            LawStatus::ImplicationHolds
        } else {
            LawStatus::Counterexample
        },
        notes: vec![format!("quantifier coverage: {coverage:?}")],
    })
}

/// Pointwise form of cancellation items (iii) and (iv) for given `b`,
/// `c`; valid on any carrier, including the infinite ones.
pub fn check_lemma31_pointwise(
    a: &RingElement,
    b: &RingElement,
    c: &RingElement,
    limits: &Limits,
) -> Result<LawVerdict> {
    a.ensure_same_spec(b)?;
    a.ensure_same_spec(c)?;
    let core = compute_core(a, limits)
        .map_err(|_| Error::NotCoreInvertible("lemma needs a core-invertible element".into()))?
        .value;
    let astar = a.star();
    let item3 = (core.mul(b) == core.mul(c)) == (astar.mul(b) == astar.mul(c));
    let item4 = (b.mul(&core) == c.mul(&core)) == (b.mul(a) == c.mul(a));
    let all = item3 && item4;
    Ok(LawVerdict {
        law: "lemma31-pointwise".into(),
        inputs: vec![a.to_string(), b.to_string(), c.to_string()],
        hypotheses: vec![hyp("a core invertible", true)],
        conclusion_rows: vec![
            hyp("(iii) a^core b = a^core c iff a* b = a* c", item3),
            hyp("(iv) b a^core = c a^core iff b a = c a", item4),
        ],
        conclusion: Some(all),
        status: if all {
            LawStatus::ImplicationHolds
        } else {
            LawStatus::Counterexample
        },
        notes: vec![],
    })
}

/// The idempotent complement lemma. For idempotent `x` and `y`:
///
/// (i)  `(1-x)a = b`  iff  `x b = 0` and `ann_l(x)` within `ann_l(a-b)`;
/// (ii) `a(1-y) = b`  iff  `b y = 0` and `ann_r(y)` within `ann_r(a-b)`.
///
/// Containment is read inclusively; strict containment would fail on
/// the boundary cases (for example `a = b`), and the verdict carries a
/// note saying so.
pub fn check_idempotent_lemma(
    a: &RingElement,
    b: &RingElement,
    x: &RingElement,
    y: &RingElement,
    limits: &Limits,
) -> Result<LawVerdict> {
    for other in [b, x, y] {
        a.ensure_same_spec(other)?;
    }
    if !x.is_idempotent() || !y.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    let one = RingElement::one(a.spec());
    let diff = a.sub(b);

    let lhs_i = one.sub(x).mul(a) == *b;
    let rhs_i = x.mul(b).is_zero()
        && left_annihilator(x, limits)?.is_subset_of(&left_annihilator(&diff, limits)?);
    let item_i = lhs_i == rhs_i;

    let lhs_ii = a.mul(&one.sub(y)) == *b;
    let rhs_ii = b.mul(y).is_zero()
        && right_annihilator(y, limits)?.is_subset_of(&right_annihilator(&diff, limits)?);
    let item_ii = lhs_ii == rhs_ii;

    let all = item_i && item_ii;
    Ok(LawVerdict {
        law: "idempotent-lemma".into(),
        inputs: vec![a.to_string(), b.to_string(), x.to_string(), y.to_string()],
        hypotheses: vec![
            hyp("x idempotent", true),
            hyp("y idempotent", true),
        ],
        conclusion_rows: vec![
            hyp("(i) (1-x)a = b iff xb = 0 and ann_l(x) within ann_l(a-b)", item_i),
            hyp("(ii) a(1-y) = b iff by = 0 and ann_r(y) within ann_r(a-b)", item_ii),
        ],
        conclusion: Some(all),
        status: if all {
            LawStatus::EquivalenceHolds
        } else {
            LawStatus::EquivalenceFails
        },
        notes: vec!["containment read inclusively".into()],
    })
}

/// The projector containment remark: for core-invertible `b` with
/// `ab = b b^core a b`, conclude `ann_l(b b^core)` within `ann_l(ab)`.
pub fn check_remark_bbcore(
    a: &RingElement,
    b: &RingElement,
    limits: &Limits,
    mode: CheckMode,
) -> Result<LawVerdict> {
    a.ensure_same_spec(b)?;
    let core_b = match compute_core(b, limits) {
        Ok(r) => Some(r.value),
        Err(Error::CarrierTooLarge { size, bound }) => {
            return Err(Error::CarrierTooLarge { size, bound })
        }
        Err(Error::InfiniteCarrier) => return Err(Error::InfiniteCarrier),
        Err(_) => None,
    };
    let Some(core_b) = core_b else {
        if mode == CheckMode::Direct {
            return Err(Error::NotCoreInvertible("b is not core invertible".into()));
        }
        return Ok(LawVerdict {
            law: "remark-bbcore".into(),
            inputs: vec![a.to_string(), b.to_string()],
            hypotheses: vec![hyp("b core invertible", false)],
            conclusion_rows: vec![],
            conclusion: None,
            status: LawStatus::VacuouslyTrue,
            notes: vec![],
        });
    };
    let bbcore = b.mul(&core_b);
    let ab = a.mul(b);
    let hypothesis = ab == bbcore.mul(&ab);
    let conclusion = left_annihilator(&bbcore, limits)?
        .is_subset_of(&left_annihilator(&ab, limits)?);
    let status = if !hypothesis {
        LawStatus::VacuouslyTrue
    } else if conclusion {
        LawStatus::ImplicationHolds
    } else {
        LawStatus::Counterexample
    };
    Ok(LawVerdict {
        law: "remark-bbcore".into(),
        inputs: vec![a.to_string(), b.to_string()],
        hypotheses: vec![
            hyp("b core invertible", true),
            hyp("ab = b b^core a b", hypothesis),
        ],
        conclusion_rows: vec![hyp(
            "ann_l(b b^core) within ann_l(ab)",
            conclusion,
        )],
        conclusion: Some(conclusion),
        status,
        notes: vec![],
    })
}

/// `x` lies in the principal right ideal `yR`. Finite carriers scan for
/// a solution of `y t = x`; field carriers use column-space containment.
pub fn in_right_ideal(x: &RingElement, y: &RingElement, limits: &Limits) -> Result<bool> {
    x.ensure_same_spec(y)?;
    if x.spec().is_finite() {
        Ok(finite_elements(x.spec(), limits)?
            .iter()
            .any(|t| &y.mul(t) == x))
    } else {
        Ok(crate::geninv::in_right_ideal_field(x, y))
    }
}

/// `x` lies in the principal left ideal `Ry`.
pub fn in_left_ideal(x: &RingElement, y: &RingElement, limits: &Limits) -> Result<bool> {
    x.ensure_same_spec(y)?;
    if x.spec().is_finite() {
        Ok(finite_elements(x.spec(), limits)?
            .iter()
            .any(|t| &t.mul(y) == x))
    } else {
        Ok(crate::geninv::in_left_ideal_field(x, y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::CarrierSpec;

    fn zn(n: u64, v: i64) -> RingElement {
        RingElement::from_i64s(&CarrierSpec::zn(n, 1).unwrap(), &[v]).unwrap()
    }

    #[test]
    fn annihilators_of_two_mod_six() {
        let limits = Limits::default();
        let a = zn(6, 2);
        let left = left_annihilator(&a, &limits).unwrap();
        assert_eq!(left.indices(), &[0, 3]);
        let right = right_annihilator(&a, &limits).unwrap();
        assert_eq!(right.indices(), &[0, 3]);
        assert!(left.contains(&zn(6, 3)));
        assert!(!left.contains(&zn(6, 1)));
    }

    #[test]
    fn annihilator_of_unity_and_zero() {
        let limits = Limits::default();
        let one = zn(6, 1);
        assert_eq!(left_annihilator(&one, &limits).unwrap().indices(), &[0]);
        let zero = zn(6, 0);
        assert_eq!(left_annihilator(&zero, &limits).unwrap().len(), 6);
    }

    #[test]
    fn annihilator_rejects_infinite_carrier() {
        let q = RingElement::one(&CarrierSpec::rational(2));
        assert!(matches!(
            left_annihilator(&q, &Limits::default()),
            Err(Error::InfiniteCarrier)
        ));
    }

    #[test]
    fn annihilators_are_left_ideals() {
        let limits = Limits::default();
        let m2z2 = CarrierSpec::zn(2, 2).unwrap();
        let anchors = vec![
            zn(6, 2),
            zn(6, 0),
            RingElement::from_i64s(&m2z2, &[1, 1, 0, 0]).unwrap(),
            RingElement::from_i64s(&m2z2, &[0, 1, 0, 0]).unwrap(),
        ];
        for a in anchors {
            let ann = left_annihilator(&a, &limits).unwrap();
            let members = ann.members();
            for m in &members {
                for n in &members {
                    assert!(ann.contains(&m.add(n)));
                }
                for r in finite_elements(a.spec(), &limits).unwrap() {
                    assert!(ann.contains(&r.mul(m)));
                }
            }
        }
    }

    #[test]
    fn lemma31_for_two_mod_six() {
        let v = check_lemma31(&zn(6, 2), &Limits::default()).unwrap();
        assert_eq!(v.status, LawStatus::ImplicationHolds);
    }

    #[test]
    fn lemma31_for_unity() {
        let v = check_lemma31(&zn(6, 1), &Limits::default()).unwrap();
        assert_eq!(v.status, LawStatus::ImplicationHolds);
    }

    #[test]
    fn lemma31_rejects_non_core_invertible() {
        assert!(matches!(
            check_lemma31(&zn(4, 2), &Limits::default()),
            Err(Error::NotCoreInvertible(_))
        ));
    }

    #[test]
    fn lemma31_pointwise_over_q() {
        let spec = CarrierSpec::rational(2);
        let a = RingElement::from_i64s(&spec, &[1, 1, 0, 0]).unwrap();
        let b = RingElement::from_i64s(&spec, &[1, 0, 0, 1]).unwrap();
        let c = RingElement::from_i64s(&spec, &[0, 1, 1, 0]).unwrap();
        let v = check_lemma31_pointwise(&a, &b, &c, &Limits::default()).unwrap();
        assert_eq!(v.status, LawStatus::ImplicationHolds);
    }

    #[test]
    fn idempotent_lemma_trivial_cases() {
        let limits = Limits::default();
        let spec = CarrierSpec::zn(12, 1).unwrap();
        let zero = RingElement::zero(&spec);
        let one = RingElement::one(&spec);
        let a = RingElement::from_i64s(&spec, &[7]).unwrap();
        // x = 0, a = b.
        let v = check_idempotent_lemma(&a, &a, &zero, &zero, &limits).unwrap();
        assert_eq!(v.status, LawStatus::EquivalenceHolds);
        // x = 1, b = 0.
        let v = check_idempotent_lemma(&a, &zero, &one, &one, &limits).unwrap();
        assert_eq!(v.status, LawStatus::EquivalenceHolds);
    }

    #[test]
    fn idempotent_lemma_exhaustive_over_z12() {
        let limits = Limits::default();
        let spec = CarrierSpec::zn(12, 1).unwrap();
        let elements = finite_elements(&spec, &limits).unwrap();
        let idempotents: Vec<RingElement> = elements
            .iter()
            .filter(|x| x.is_idempotent())
            .cloned()
            .collect();
        let shown: Vec<String> = idempotents.iter().map(|x| x.to_string()).collect();
        assert_eq!(shown, ["0", "1", "4", "9"]);
        for x in &idempotents {
            for a in &elements {
                for b in &elements {
                    let v = check_idempotent_lemma(a, b, x, x, &limits).unwrap();
                    assert_eq!(
                        v.status,
                        LawStatus::EquivalenceHolds,
                        "failed for a={a}, b={b}, x={x}"
                    );
                }
            }
        }
    }

    #[test]
    fn remark_bbcore_exhaustive_over_m2z2() {
        let limits = Limits::default();
        let spec = CarrierSpec::zn(2, 2).unwrap();
        let elements = finite_elements(&spec, &limits).unwrap();
        let mut implications = 0u32;
        for a in &elements {
            for b in &elements {
                let v = check_remark_bbcore(a, b, &limits, CheckMode::Scan).unwrap();
                assert_ne!(
                    v.status,
                    LawStatus::Counterexample,
                    "violation for a={a}, b={b}"
                );
                if v.status == LawStatus::ImplicationHolds {
                    implications += 1;
                }
            }
        }
        assert!(implications > 0, "the remark must be exercised non-vacuously");
    }

    #[test]
    fn idempotent_lemma_rejects_non_idempotent() {
        let spec = CarrierSpec::zn(12, 1).unwrap();
        let a = RingElement::from_i64s(&spec, &[5]).unwrap();
        assert!(matches!(
            check_idempotent_lemma(&a, &a, &a, &a, &Limits::default()),
            Err(Error::NotIdempotent)
        ));
    }

    #[test]
    fn remark_bbcore_unit_b() {
        let limits = Limits::default();
        let a = zn(6, 4);
        let b = zn(6, 5);
        let v = check_remark_bbcore(&a, &b, &limits, CheckMode::Direct).unwrap();
        assert_eq!(v.status, LawStatus::ImplicationHolds);
    }

    #[test]
    fn remark_bbcore_zero_a() {
        let limits = Limits::default();
        let v = check_remark_bbcore(&zn(6, 0), &zn(6, 2), &limits, CheckMode::Direct).unwrap();
        assert_eq!(v.status, LawStatus::ImplicationHolds);
    }

    #[test]
    fn ideal_membership_finite_and_field() {
        let limits = Limits::default();
        assert!(in_right_ideal(&zn(6, 4), &zn(6, 2), &limits).unwrap());
        assert!(!in_right_ideal(&zn(6, 1), &zn(6, 2), &limits).unwrap());
        let spec = CarrierSpec::rational(2);
        let x = RingElement::from_i64s(&spec, &[2, 3, 0, 0]).unwrap();
        let y = RingElement::from_i64s(&spec, &[1, 0, 0, 0]).unwrap();
        assert!(in_right_ideal(&x, &y, &limits).unwrap());
        assert!(!in_left_ideal(&x, &y, &limits).unwrap());
    }
}
