//! Generalized inverses: Moore-Penrose, {1,3}, group, Drazin, core, and
//! weighted core.
//!
//! Field carriers (Q, Q(i)) get closed-form paths built on the exact
//! elimination in `linalg`; finite Z_n carriers are solved by exhaustive
//! scan in the documented enumeration order. Every successful
//! computation re-verifies the defining equations of its inverse kind
//! and ships the trace with the result.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::carrier::{CarrierSpec, Involution, RingElement, ScalarDomain};
use crate::error::{Error, Result};
use crate::linalg::{solve_real_linear_matrix_system, FieldScalar, Mat};
use crate::scalar::{GaussianRational, Scalar};
use crate::Limits;

/// Which inverse to compute or verify. The weighted-core weight is
/// validated (Hermitian unit) by [`InverseKind::weighted_core`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InverseKind {
    MoorePenrose,
    OneThree,
    Group,
    Drazin { index: u32 },
    Core,
    WeightedCore { weight: RingElement },
}

impl InverseKind {
    /// Weighted-core kind with the weight invariants checked up front:
    /// `e* = e` and `e` invertible.
    pub fn weighted_core(weight: RingElement) -> Result<Self> {
        validate_weight(&weight)?;
        Ok(InverseKind::WeightedCore { weight })
    }

    pub fn name(&self) -> &'static str {
        match self {
            InverseKind::MoorePenrose => "moore-penrose",
            InverseKind::OneThree => "one-three",
            InverseKind::Group => "group",
            InverseKind::Drazin { .. } => "drazin",
            InverseKind::Core => "core",
            InverseKind::WeightedCore { .. } => "weighted-core",
        }
    }
}

pub fn validate_weight(e: &RingElement) -> Result<()> {
    if !e.is_hermitian() {
        return Err(Error::InvalidWeight("weight is not Hermitian".into()));
    }
    if !is_unit(e) {
        return Err(Error::InvalidWeight("weight is not a unit".into()));
    }
    Ok(())
}

/// One defining equation, with both sides rendered exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquationCheck {
    pub equation: String,
    pub left: String,
    pub right: String,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationTrace {
    pub rows: Vec<EquationCheck>,
}

impl VerificationTrace {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.equal)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InverseResult {
    pub kind: InverseKind,
    pub value: RingElement,
    /// Drazin index; present for Drazin (and Group, where it is 1).
    pub index: Option<u32>,
    pub trace: VerificationTrace,
}

fn row(label: &str, left: RingElement, right: RingElement) -> EquationCheck {
    EquationCheck {
        equation: label.to_string(),
        equal: left == right,
        left: left.to_string(),
        right: right.to_string(),
    }
}

/// Check the defining equations of `kind` for the pair `(a, x)` and
/// report one row per equation. Nothing is assumed about `x`.
pub fn verify_inverse(
    a: &RingElement,
    x: &RingElement,
    kind: &InverseKind,
) -> Result<VerificationTrace> {
    a.ensure_same_spec(x)?;
    let rows = match kind {
        InverseKind::MoorePenrose => {
            let ax = a.mul(x);
            let xa = x.mul(a);
            vec![
                row("axa = a", ax.mul(a), a.clone()),
                row("xax = x", xa.mul(x), x.clone()),
                row("(ax)* = ax", ax.star(), ax.clone()),
                row("(xa)* = xa", xa.star(), xa.clone()),
            ]
        }
        InverseKind::OneThree => {
            let ax = a.mul(x);
            vec![
                row("axa = a", ax.mul(a), a.clone()),
                row("(ax)* = ax", ax.star(), ax),
            ]
        }
        InverseKind::Group => drazin_rows(a, x, 1),
        InverseKind::Drazin { index } => {
            if *index == 0 {
                return Err(Error::Parse("Drazin index must be >= 1".into()));
            }
            drazin_rows(a, x, *index)
        }
        InverseKind::Core => core_rows(a, x),
        InverseKind::WeightedCore { weight } => {
            a.ensure_same_spec(weight)?;
            validate_weight(weight)?;
            let eax = weight.mul(&a.mul(x));
            vec![
                row("ax^2 = x", a.mul(&x.mul(x)), x.clone()),
                row("xa^2 = a", x.mul(&a.mul(a)), a.clone()),
                row("(eax)* = eax", eax.star(), eax),
            ]
        }
    };
    Ok(VerificationTrace { rows })
}

/// The three-equation core characterization used as the solver target:
/// `(ax)* = ax`, `ax^2 = x`, `xa^2 = a`.
fn core_rows(a: &RingElement, x: &RingElement) -> Vec<EquationCheck> {
    let ax = a.mul(x);
    vec![
        row("(ax)* = ax", ax.star(), ax),
        row("ax^2 = x", a.mul(&x.mul(x)), x.clone()),
        row("xa^2 = a", x.mul(&a.mul(a)), a.clone()),
    ]
}

fn drazin_rows(a: &RingElement, x: &RingElement, k: u32) -> Vec<EquationCheck> {
    vec![
        row(
            &format!("xa^{} = a^{}", k + 1, k),
            x.mul(&a.pow(k + 1)),
            a.pow(k),
        ),
        row("ax = xa", a.mul(x), x.mul(a)),
        row("ax^2 = x", a.mul(&x.mul(x)), x.clone()),
    ]
}

fn passes(a: &RingElement, x: &RingElement, kind: &InverseKind) -> bool {
    verify_inverse(a, x, kind)
        .map(|t| t.passed())
        .unwrap_or(false)
}

// ---------------------------------------------------------------------
// Unit test: invertibility of an element of the carrier ring.

/// Fraction-free integer determinant (Bareiss).
fn bigint_det(mut m: Vec<BigInt>, n: usize) -> BigInt {
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k * n + k].is_zero() {
            let Some(s) = ((k + 1)..n).find(|&r| !m[r * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for c in 0..n {
                m.swap(k * n + c, s * n + c);
            }
            negate = !negate;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = (&m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j]) / &prev;
                m[i * n + j] = v;
            }
            m[i * n + k] = BigInt::zero();
        }
        prev = m[k * n + k].clone();
    }
    let det = m[(n - 1) * n + (n - 1)].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// True iff `a` has a two-sided inverse in its carrier. Over Z_n this is
/// a determinant test (det coprime to n); over the field carriers it is
/// a rank test.
pub fn is_unit(a: &RingElement) -> bool {
    match a.spec().domain {
        ScalarDomain::IntegersModN => {
            let n = a.spec().modulus.expect("ZN spec has a modulus");
            let d = a.dim();
            let ints = a
                .entries()
                .iter()
                .map(|s| match s {
                    Scalar::Residue(r) => BigInt::from(*r),
                    _ => unreachable!("ZN entries are residues"),
                })
                .collect();
            let det = bigint_det(ints, d).mod_floor(&BigInt::from(n));
            det.gcd(&BigInt::from(n)).is_one()
        }
        ScalarDomain::Rational => to_qmat(a).rank() == a.dim(),
        ScalarDomain::GaussianRational => to_gmat(a).rank() == a.dim(),
    }
}

// ---------------------------------------------------------------------
// Conversions between ring elements and field matrices.

fn to_qmat(a: &RingElement) -> Mat<BigRational> {
    Mat::from_fn(a.dim(), a.dim(), |r, c| match a.entry(r, c) {
        Scalar::Rational(x) => x.clone(),
        _ => unreachable!("rational carrier"),
    })
}

fn from_qmat(spec: &CarrierSpec, m: &Mat<BigRational>) -> RingElement {
    let d = spec.dim;
    let entries = (0..d * d)
        .map(|i| Scalar::Rational(m.at(i / d, i % d).clone()))
        .collect();
    RingElement::make(spec, entries).expect("field matrix entries are canonical")
}

fn to_gmat(a: &RingElement) -> Mat<GaussianRational> {
    Mat::from_fn(a.dim(), a.dim(), |r, c| match a.entry(r, c) {
        Scalar::Gaussian(x) => x.clone(),
        _ => unreachable!("gaussian carrier"),
    })
}

fn from_gmat(spec: &CarrierSpec, m: &Mat<GaussianRational>) -> RingElement {
    let d = spec.dim;
    let entries = (0..d * d)
        .map(|i| Scalar::Gaussian(m.at(i / d, i % d).clone()))
        .collect();
    RingElement::make(spec, entries).expect("field matrix entries are canonical")
}

/// Whether the carrier's involution conjugates entries.
fn conjugating(spec: &CarrierSpec) -> bool {
    spec.involution == Involution::ConjugateTranspose
}

/// Run a field-path computation, dispatching on the scalar domain.
fn on_field<T>(
    a: &RingElement,
    f_q: impl FnOnce(Mat<BigRational>, bool) -> T,
    f_g: impl FnOnce(Mat<GaussianRational>, bool) -> T,
) -> T {
    let conj = conjugating(a.spec());
    match a.spec().domain {
        ScalarDomain::Rational => f_q(to_qmat(a), conj),
        ScalarDomain::GaussianRational => f_g(to_gmat(a), conj),
        ScalarDomain::IntegersModN => unreachable!("field path on a finite carrier"),
    }
}

// ---------------------------------------------------------------------
// Field-path algorithms over a generic exact field.

/// Moore-Penrose inverse via the full-rank factorization `a = f g`:
/// `a+ = g* (f* a g*)^-1 f*`. The middle factor is invertible over Q
/// and Q(i) by the Gram positive-definiteness argument, so `None` is
/// unreachable there; it is still threaded for totality.
fn mp_field<F: FieldScalar>(a: &Mat<F>, conj: bool) -> Option<Mat<F>> {
    let (f, g) = a.full_rank_factorization();
    let fs = f.star(conj);
    let gs = g.star(conj);
    let mid = fs.mul(a).mul(&gs);
    let mid_inv = mid.inverse()?;
    Some(gs.mul(&mid_inv).mul(&fs))
}

/// Smallest `k >= 0` with `rank(a^k) = rank(a^(k+1))`. Bounded by the
/// dimension.
fn rank_stabilization<F: FieldScalar>(a: &Mat<F>) -> u32 {
    let mut k = 0u32;
    let mut prev = a.rows; // rank of a^0 = I
    loop {
        let next = a.pow(k + 1).rank();
        if next == prev {
            return k;
        }
        prev = next;
        k += 1;
    }
}

/// Group inverse when the index is at most one: `a# = f (gf)^-2 g` from
/// the full-rank factorization. Zero has group inverse zero.
fn group_field<F: FieldScalar>(a: &Mat<F>) -> Option<Mat<F>> {
    if a.is_zero() {
        return Some(Mat::zeros(a.rows, a.cols));
    }
    let (f, g) = a.full_rank_factorization();
    let s = g.mul(&f);
    let si = s.inverse()?; // invertible iff index <= 1
    Some(f.mul(&si).mul(&si).mul(&g))
}

/// Drazin inverse over a field: `a^d = a^k ((a^(2k+1))+) a^k` with
/// `k = max(rank stabilization, 1)`; any {1}-inverse of `a^(2k+1)`
/// works there and Moore-Penrose is one.
fn drazin_field<F: FieldScalar>(a: &Mat<F>, conj: bool) -> (Mat<F>, u32) {
    let k = rank_stabilization(a).max(1);
    let p = a.pow(k);
    let q = a.pow(2 * k + 1);
    let qd = mp_field(&q, conj).expect("field matrices are Moore-Penrose invertible");
    (p.mul(&qd).mul(&p), k)
}

/// Core inverse over a field: requires index <= 1, then
/// `a^core = a# a a+`.
fn core_field<F: FieldScalar>(a: &Mat<F>, conj: bool) -> Option<Mat<F>> {
    let group = group_field(a)?;
    let mp = mp_field(a, conj)?;
    Some(group.mul(a).mul(&mp))
}

/// Independent second route to the core inverse: solve the linear
/// system `a^2 t a = a`, `(a^2 t)* = a^2 t` and take `x = a t`, i.e. a
/// {1,3}-inverse constrained into `aR`. Used to cross-check the
/// factorization route.
fn core_via_constrained_13<F: FieldScalar>(a: &Mat<F>, conj: bool) -> Option<Mat<F>> {
    group_field(a)?;
    let d = a.rows;
    let a2 = a.mul(a);
    let t = solve_real_linear_matrix_system(
        d,
        |t| {
            let a2t = a2.mul(t);
            vec![a2t.mul(a), a2t.star(conj).sub(&a2t)]
        },
        &[a.clone(), Mat::zeros(d, d)],
    )?;
    Some(a.mul(&t))
}

/// Weighted core inverse over a field: group invertibility plus an
/// e-weighted {1,3}-inverse `z` (`aza = a`, `(eaz)* = eaz`, solved as a
/// linear system), combined as `x = a# a z`.
fn weighted_core_field<F: FieldScalar>(
    a: &Mat<F>,
    e: &Mat<F>,
    conj: bool,
) -> std::result::Result<Mat<F>, &'static str> {
    let Some(group) = group_field(a) else {
        return Err("not group invertible");
    };
    let d = a.rows;
    let ea = e.mul(a);
    let z = solve_real_linear_matrix_system(
        d,
        |z| {
            let eaz = ea.mul(z);
            vec![a.mul(z).mul(a), eaz.star(conj).sub(&eaz)]
        },
        &[a.clone(), Mat::zeros(d, d)],
    )
    .ok_or("no e-weighted {1,3}-inverse exists")?;
    Ok(group.mul(a).mul(&z))
}

// ---------------------------------------------------------------------
// Finite-carrier scans.

/// All carrier elements in enumeration order, bound-checked. A finite
/// carrier whose size overflows u64 is over any practical bound.
pub(crate) fn finite_elements(spec: &CarrierSpec, limits: &Limits) -> Result<Vec<RingElement>> {
    if !spec.is_finite() {
        return Err(Error::InfiniteCarrier);
    }
    let size = spec.element_count().unwrap_or(u64::MAX);
    if size > limits.enumeration_bound {
        return Err(Error::CarrierTooLarge {
            size,
            bound: limits.enumeration_bound,
        });
    }
    (0..size).map(|i| spec.element_at(i)).collect()
}

/// Scan the whole carrier and return every solution of `pred`, in
/// enumeration order.
fn scan_all(
    spec: &CarrierSpec,
    limits: &Limits,
    pred: impl Fn(&RingElement) -> bool,
) -> Result<Vec<RingElement>> {
    Ok(finite_elements(spec, limits)?
        .into_iter()
        .filter(pred)
        .collect())
}

/// Scan for an inverse kind whose solution is unique by theory. A
/// multiple hit would mean the carrier arithmetic is broken, so it
/// panics rather than returning garbage.
fn scan_unique(
    a: &RingElement,
    kind: &InverseKind,
    limits: &Limits,
) -> Result<Option<RingElement>> {
    let mut sols = scan_all(a.spec(), limits, |x| passes(a, x, kind))?;
    match sols.len() {
        0 => Ok(None),
        1 => Ok(Some(sols.remove(0))),
        n => panic!(
            "uniqueness violated: {n} solutions for the {} inverse of {a}",
            kind.name()
        ),
    }
}

/// Tail length of the power trajectory `a, a^2, a^3, ...` in a finite
/// carrier: the first exponent whose value recurs later. Also reports
/// whether some power is zero (nilpotency).
fn power_tail(a: &RingElement) -> (u32, bool) {
    let mut seen: HashMap<RingElement, u32> = HashMap::new();
    let mut p = a.clone();
    let mut k = 1u32;
    let mut nilpotent = false;
    loop {
        if p.is_zero() {
            nilpotent = true;
        }
        if let Some(&j) = seen.get(&p) {
            return (j, nilpotent);
        }
        seen.insert(p.clone(), k);
        p = p.mul(a);
        k += 1;
    }
}

// ---------------------------------------------------------------------
// Public computation entry points.

fn finish(
    a: &RingElement,
    kind: InverseKind,
    value: RingElement,
    index: Option<u32>,
) -> Result<InverseResult> {
    let trace = verify_inverse(a, &value, &kind)?;
    assert!(
        trace.passed(),
        "self-check failed for the {} inverse of {a}: computed {value}",
        kind.name()
    );
    Ok(InverseResult {
        kind,
        value,
        index,
        trace,
    })
}

/// Moore-Penrose inverse; unique when it exists. Over Z_n nonexistence
/// is common (`NotMpInvertible`).
pub fn compute_mp(a: &RingElement, limits: &Limits) -> Result<InverseResult> {
    let value = if a.spec().is_finite() {
        scan_unique(a, &InverseKind::MoorePenrose, limits)?.ok_or(Error::NotMpInvertible)?
    } else {
        on_field(
            a,
            |m, conj| mp_field(&m, conj).map(|x| from_qmat(a.spec(), &x)),
            |m, conj| mp_field(&m, conj).map(|x| from_gmat(a.spec(), &x)),
        )
        .ok_or(Error::NotMpInvertible)?
    };
    finish(a, InverseKind::MoorePenrose, value, None)
}

/// Any {1,3}-inverse: `axa = a` and `(ax)* = ax`. Not unique; the
/// finite path returns the first solution in enumeration order and the
/// field path returns the Moore-Penrose inverse.
pub fn compute_one_three(a: &RingElement, limits: &Limits) -> Result<InverseResult> {
    let value = if a.spec().is_finite() {
        finite_elements(a.spec(), limits)?
            .into_iter()
            .find(|x| passes(a, x, &InverseKind::OneThree))
            .ok_or(Error::NoOneThreeInverse)?
    } else {
        compute_mp(a, limits)
            .map_err(|_| Error::NoOneThreeInverse)?
            .value
    };
    finish(a, InverseKind::OneThree, value, None)
}

/// Drazin inverse with its index. Every element of the supported
/// carriers is Drazin invertible; `NotDrazinInvertible` is kept for API
/// totality.
pub fn compute_drazin(a: &RingElement, limits: &Limits) -> Result<InverseResult> {
    if a.spec().is_finite() {
        let (tail, _) = power_tail(a);
        for k in 1..=tail {
            if let Some(x) = scan_unique(a, &InverseKind::Drazin { index: k }, limits)? {
                return finish(a, InverseKind::Drazin { index: k }, x, Some(k));
            }
        }
        Err(Error::NotDrazinInvertible)
    } else {
        let (value, k) = on_field(
            a,
            |m, conj| {
                let (x, k) = drazin_field(&m, conj);
                (from_qmat(a.spec(), &x), k)
            },
            |m, conj| {
                let (x, k) = drazin_field(&m, conj);
                (from_gmat(a.spec(), &x), k)
            },
        );
        finish(a, InverseKind::Drazin { index: k }, value, Some(k))
    }
}

/// Group inverse: the Drazin inverse when the index is 1.
pub fn compute_group(a: &RingElement, limits: &Limits) -> Result<InverseResult> {
    let drazin = compute_drazin(a, limits)?;
    let index = drazin.index.expect("drazin result carries an index");
    if index > 1 {
        return Err(Error::NotGroupInvertible(index));
    }
    finish(a, InverseKind::Group, drazin.value, Some(index))
}

/// Core inverse: the unique `x` with `(ax)* = ax`, `ax^2 = x`,
/// `xa^2 = a`.
pub fn compute_core(a: &RingElement, limits: &Limits) -> Result<InverseResult> {
    let value = if a.spec().is_finite() {
        scan_unique(a, &InverseKind::Core, limits)?
            .ok_or_else(|| Error::NotCoreInvertible("no solution in carrier scan".into()))?
    } else {
        on_field(
            a,
            |m, conj| core_field(&m, conj).map(|x| from_qmat(a.spec(), &x)),
            |m, conj| core_field(&m, conj).map(|x| from_gmat(a.spec(), &x)),
        )
        .ok_or_else(|| Error::NotCoreInvertible("index > 1".into()))?
    };
    finish(a, InverseKind::Core, value, None)
}

/// Second, independent core-inverse route for field carriers: a {1,3}-
/// inverse constrained into `aR` via one exact linear solve. Exposed so
/// tests can compare both routes; `None` on finite carriers and for
/// elements of index above one.
pub fn compute_core_dual_route(a: &RingElement) -> Option<RingElement> {
    if a.spec().is_finite() {
        return None;
    }
    on_field(
        a,
        |m, conj| core_via_constrained_13(&m, conj).map(|x| from_qmat(a.spec(), &x)),
        |m, conj| core_via_constrained_13(&m, conj).map(|x| from_gmat(a.spec(), &x)),
    )
}

/// e-weighted core inverse: the unique `x` with `ax^2 = x`, `xa^2 = a`,
/// `(eax)* = eax` for a Hermitian unit weight `e`. Weight 1 reproduces
/// the core inverse exactly.
pub fn compute_weighted_core(
    a: &RingElement,
    e: &RingElement,
    limits: &Limits,
) -> Result<InverseResult> {
    a.ensure_same_spec(e)?;
    let kind = InverseKind::weighted_core(e.clone())?;
    let value = if a.spec().is_finite() {
        scan_unique(a, &kind, limits)?
            .ok_or_else(|| Error::NotWeightedCoreInvertible("no solution in carrier scan".into()))?
    } else {
        let outcome = match a.spec().domain {
            ScalarDomain::Rational => {
                weighted_core_field(&to_qmat(a), &to_qmat(e), conjugating(a.spec()))
                    .map(|x| from_qmat(a.spec(), &x))
            }
            ScalarDomain::GaussianRational => {
                weighted_core_field(&to_gmat(a), &to_gmat(e), conjugating(a.spec()))
                    .map(|x| from_gmat(a.spec(), &x))
            }
            ScalarDomain::IntegersModN => unreachable!("finite carriers are scanned"),
        };
        outcome.map_err(|reason| Error::NotWeightedCoreInvertible(reason.into()))?
    };
    finish(a, kind, value, None)
}

// ---------------------------------------------------------------------
// Theorem-style characterization of core invertibility.

/// One of the eight equivalent clauses, with every witness `x` the scan
/// found (finite carriers) or the checked constructive witness (field
/// carriers).
#[derive(Debug, Clone, Serialize)]
pub struct ClauseReport {
    pub label: String,
    pub holds: bool,
    pub witnesses: Vec<RingElement>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoreCharacterization {
    pub clauses: Vec<ClauseReport>,
    /// All eight truth values agree.
    pub all_agree: bool,
    pub core_invertible: bool,
    /// Every clause that holds has exactly the core inverse as witness.
    pub witnesses_consistent: bool,
}

/// Evaluate the eight equivalent characterizations of "`a` is core
/// invertible with inverse `x`": existence of an `x` satisfying each
/// clause. Ideal and annihilator conditions are decided by enumeration
/// on finite carriers and by rank tests on field carriers. Containments
/// are read inclusively.
pub fn characterize_core(a: &RingElement, limits: &Limits) -> Result<CoreCharacterization> {
    let labels = [
        "(i) x is the core inverse",
        "(ii) axa = a, xR = aR, Rx subset of Ra*",
        "(iii) axa = a, ann_l(x) = ann_l(a), ann_r(a*) subset of ann_r(x)",
        "(iv) xax = x, xR = aR, Rx = Ra*",
        "(v) xax = x, xR = aR, Ra* subset of Rx",
        "(vi) xax = x, ann_l(x) = ann_l(a), ann_r(x) subset of ann_r(a*)",
        "(vii) a group invertible, axa = a, (ax)* = ax, xR subset of aR",
        "(viii) a group invertible, xax = x, (ax)* = ax, aR subset of xR",
    ];
    let clause_sets: Vec<Vec<RingElement>> = if a.spec().is_finite() {
        characterize_finite(a, limits)?
    } else {
        characterize_field(a, limits)?
    };
    let core = compute_core(a, limits).ok().map(|r| r.value);
    let clauses: Vec<ClauseReport> = labels
        .iter()
        .zip(clause_sets)
        .map(|(label, witnesses)| ClauseReport {
            label: label.to_string(),
            holds: !witnesses.is_empty(),
            witnesses,
        })
        .collect();
    let first = clauses[0].holds;
    let all_agree = clauses.iter().all(|c| c.holds == first);
    let witnesses_consistent = match &core {
        Some(x) => clauses
            .iter()
            .all(|c| c.holds && c.witnesses.len() == 1 && c.witnesses[0] == *x),
        None => clauses.iter().all(|c| !c.holds),
    };
    Ok(CoreCharacterization {
        clauses,
        all_agree,
        core_invertible: core.is_some(),
        witnesses_consistent,
    })
}

fn characterize_finite(a: &RingElement, limits: &Limits) -> Result<Vec<Vec<RingElement>>> {
    let spec = a.spec();
    let elements = finite_elements(spec, limits)?;
    let astar = a.star();
    let idx = |x: &RingElement| spec.index_of(x).expect("same carrier") as usize;
    // Membership tables for the fixed anchors aR and Ra*.
    let mut in_ar = vec![false; elements.len()];
    let mut in_rastar = vec![false; elements.len()];
    for r in &elements {
        in_ar[idx(&a.mul(r))] = true;
        in_rastar[idx(&r.mul(&astar))] = true;
    }
    let in_xr = |y: &RingElement, x: &RingElement| elements.iter().any(|r| &y.mul(r) == x);
    let in_rx = |y: &RingElement, x: &RingElement| elements.iter().any(|r| &r.mul(y) == x);
    let ann_l_eq =
        |x: &RingElement| elements.iter().all(|m| m.mul(x).is_zero() == m.mul(a).is_zero());
    // ann_r(of) subset of ann_r(within): everything `of` kills on the
    // right is killed by `within` too.
    let ann_r_subset = |of: &RingElement, within: &RingElement| {
        elements
            .iter()
            .all(|m| !of.mul(m).is_zero() || within.mul(m).is_zero())
    };
    let group_ok = compute_group(a, limits).is_ok();

    let mut sets: Vec<Vec<RingElement>> = vec![Vec::new(); 8];
    if let Ok(res) = compute_core(a, limits) {
        sets[0].push(res.value);
    }
    for x in &elements {
        let axa_eq_a = a.mul(x).mul(a) == *a;
        let xax_eq_x = x.mul(a).mul(x) == *x;
        let ax = a.mul(x);
        let ax_herm = ax.star() == ax;
        let xr_eq_ar = in_ar[idx(x)] && in_xr(x, a);
        if axa_eq_a && xr_eq_ar && in_rastar[idx(x)] {
            sets[1].push(x.clone());
        }
        if axa_eq_a && ann_l_eq(x) && ann_r_subset(&astar, x) {
            sets[2].push(x.clone());
        }
        if xax_eq_x && xr_eq_ar && in_rastar[idx(x)] && in_rx(x, &astar) {
            sets[3].push(x.clone());
        }
        if xax_eq_x && xr_eq_ar && in_rx(x, &astar) {
            sets[4].push(x.clone());
        }
        if xax_eq_x && ann_l_eq(x) && ann_r_subset(x, &astar) {
            sets[5].push(x.clone());
        }
        if group_ok && axa_eq_a && ax_herm && in_ar[idx(x)] {
            sets[6].push(x.clone());
        }
        if group_ok && xax_eq_x && ax_herm && in_xr(x, a) {
            sets[7].push(x.clone());
        }
    }
    Ok(sets)
}

fn characterize_field(a: &RingElement, limits: &Limits) -> Result<Vec<Vec<RingElement>>> {
    let mut sets: Vec<Vec<RingElement>> = vec![Vec::new(); 8];
    let Ok(core) = compute_core(a, limits) else {
        // Over field matrices each clause forces index <= 1 and with it
        // core invertibility, so no clause can hold here.
        return Ok(sets);
    };
    let x = core.value;
    let astar = a.star();
    let axa_eq_a = a.mul(&x).mul(a) == *a;
    let xax_eq_x = x.mul(a).mul(&x) == x;
    let ax = a.mul(&x);
    let ax_herm = ax.star() == ax;
    let xr_eq_ar = in_right_ideal_field(&x, a) && in_right_ideal_field(a, &x);
    // Over a field, ann_l(u) is the orthogonal complement of the column
    // space under the plain bilinear pairing, so ann_l(x) = ann_l(a) iff
    // xR = aR; right annihilators compare through row spaces.
    let ann_l_eq = xr_eq_ar;
    let ann_r_a_sub_x = in_left_ideal_field(&x, &astar);
    let ann_r_x_sub_a = in_left_ideal_field(&astar, &x);
    let group_ok = compute_group(a, limits).is_ok();

    sets[0].push(x.clone());
    if axa_eq_a && xr_eq_ar && in_left_ideal_field(&x, &astar) {
        sets[1].push(x.clone());
    }
    if axa_eq_a && ann_l_eq && ann_r_a_sub_x {
        sets[2].push(x.clone());
    }
    if xax_eq_x && xr_eq_ar && in_left_ideal_field(&x, &astar) && in_left_ideal_field(&astar, &x) {
        sets[3].push(x.clone());
    }
    if xax_eq_x && xr_eq_ar && in_left_ideal_field(&astar, &x) {
        sets[4].push(x.clone());
    }
    if xax_eq_x && ann_l_eq && ann_r_x_sub_a {
        sets[5].push(x.clone());
    }
    if group_ok && axa_eq_a && ax_herm && in_right_ideal_field(&x, a) {
        sets[6].push(x.clone());
    }
    if group_ok && xax_eq_x && ax_herm && in_right_ideal_field(a, &x) {
        sets[7].push(x.clone());
    }
    Ok(sets)
}

/// `u` lies in `vR`, i.e. `u = v t` is solvable. For field matrices
/// this is column-space containment.
pub(crate) fn in_right_ideal_field(u: &RingElement, v: &RingElement) -> bool {
    match u.spec().domain {
        ScalarDomain::Rational => to_qmat(v).contains_columns_of(&to_qmat(u)),
        ScalarDomain::GaussianRational => to_gmat(v).contains_columns_of(&to_gmat(u)),
        ScalarDomain::IntegersModN => unreachable!("field-only ideal test"),
    }
}

/// `u` lies in `Rv`, i.e. `u = t v` is solvable: row-space containment.
pub(crate) fn in_left_ideal_field(u: &RingElement, v: &RingElement) -> bool {
    match u.spec().domain {
        ScalarDomain::Rational => to_qmat(v)
            .transpose()
            .contains_columns_of(&to_qmat(u).transpose()),
        ScalarDomain::GaussianRational => to_gmat(v)
            .transpose()
            .contains_columns_of(&to_gmat(u).transpose()),
        ScalarDomain::IntegersModN => unreachable!("field-only ideal test"),
    }
}

// ---------------------------------------------------------------------
// Element classification.

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementClass {
    pub hermitian: bool,
    pub idempotent: bool,
    pub unit: bool,
    pub nilpotent: bool,
    pub mp_invertible: bool,
    pub group_invertible: bool,
    pub drazin_index: Option<u32>,
    pub core_invertible: bool,
}

pub fn classify_element(a: &RingElement, limits: &Limits) -> Result<ElementClass> {
    let nilpotent = if a.spec().is_finite() {
        power_tail(a).1
    } else {
        // Cayley-Hamilton bounds the nilpotency index by the dimension.
        a.pow(a.dim() as u32).is_zero()
    };
    let drazin_index = compute_drazin(a, limits).ok().and_then(|r| r.index);
    Ok(ElementClass {
        hermitian: a.is_hermitian(),
        idempotent: a.is_idempotent(),
        unit: is_unit(a),
        nilpotent,
        mp_invertible: compute_mp(a, limits).is_ok(),
        group_invertible: drazin_index == Some(1),
        drazin_index,
        core_invertible: compute_core(a, limits).is_ok(),
    })
}
