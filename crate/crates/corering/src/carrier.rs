//! Concrete *-rings: square matrices over exact rationals, Gaussian
//! rationals, or integers mod n, each with an involution. `dim = 1`
//! carriers double as scalar rings, so Z_n residues and matrices share
//! one code path.
//!
//! Elements are immutable values; every operation returns a fresh
//! canonical element, and nothing here mutates shared state.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use crate::scalar::{residue, GaussianRational, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScalarDomain {
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "QI")]
    GaussianRational,
    #[serde(rename = "ZN")]
    IntegersModN,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Involution {
    ConjugateTranspose,
    Transpose,
    Identity,
}

/// Description of one concrete carrier: scalar domain, matrix side
/// length, modulus (Z_n only), and the involution giving `*`.
///
/// Valid combinations:
/// - `Identity` only on `dim = 1` carriers (the scalar rings are
///   commutative, so the identity map is an involution there);
/// - `Transpose` over Q or Z_n (entrywise conjugation is trivial);
/// - `ConjugateTranspose` over Q or Q(i).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CarrierSpec {
    pub domain: ScalarDomain,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub modulus: Option<u64>,
    pub involution: Involution,
}

impl CarrierSpec {
    pub fn new(
        domain: ScalarDomain,
        dim: usize,
        modulus: Option<u64>,
        involution: Involution,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch {
                dim,
                expected: 1,
                got: 0,
            });
        }
        match (domain, modulus) {
            (ScalarDomain::IntegersModN, Some(n)) if n >= 2 => {}
            (ScalarDomain::IntegersModN, _) => return Err(Error::ModulusOutOfRange),
            (_, None) => {}
            (_, Some(_)) => return Err(Error::ModulusOutOfRange),
        }
        match involution {
            Involution::Identity if dim != 1 => {
                return Err(Error::InvalidInvolution(
                    "identity involution needs a commutative carrier (dim = 1)".into(),
                ))
            }
            Involution::Transpose if domain == ScalarDomain::GaussianRational => {
                return Err(Error::InvalidInvolution(
                    "plain transpose over Q(i) is not an involution of interest; \
                     use conjugate-transpose"
                        .into(),
                ))
            }
            Involution::ConjugateTranspose if domain == ScalarDomain::IntegersModN => {
                return Err(Error::InvalidInvolution(
                    "conjugation is trivial over Z_n; use transpose".into(),
                ))
            }
            _ => {}
        }
        Ok(CarrierSpec {
            domain,
            dim,
            modulus,
            involution,
        })
    }

    /// Rational matrices with transpose.
    pub fn rational(dim: usize) -> Self {
        CarrierSpec::new(ScalarDomain::Rational, dim, None, Involution::Transpose).unwrap()
    }

    /// Gaussian-rational matrices with conjugate transpose.
    pub fn gaussian(dim: usize) -> Self {
        CarrierSpec::new(
            ScalarDomain::GaussianRational,
            dim,
            None,
            Involution::ConjugateTranspose,
        )
        .unwrap()
    }

    /// Z_n matrices: transpose for `dim > 1`, identity for scalars.
    pub fn zn(modulus: u64, dim: usize) -> Result<Self> {
        let inv = if dim == 1 {
            Involution::Identity
        } else {
            Involution::Transpose
        };
        CarrierSpec::new(ScalarDomain::IntegersModN, dim, Some(modulus), inv)
    }

    pub fn entry_count(&self) -> usize {
        self.dim * self.dim
    }

    pub fn is_finite(&self) -> bool {
        self.domain == ScalarDomain::IntegersModN
    }

    /// Number of elements, `None` for infinite carriers or when
    /// `n^(dim^2)` overflows u64.
    pub fn element_count(&self) -> Option<u64> {
        let n = self.modulus?;
        let mut total: u64 = 1;
        for _ in 0..self.entry_count() {
            total = total.checked_mul(n)?;
        }
        Some(total)
    }

    /// The element at `index` in the documented row-major ascending
    /// order: the index written base n with `dim^2` digits, entry (0,0)
    /// most significant, so the last entry varies fastest.
    pub fn element_at(&self, index: u64) -> Result<RingElement> {
        let n = self.modulus.ok_or(Error::InfiniteCarrier)?;
        let count = self.entry_count();
        let mut digits = vec![0u64; count];
        let mut rest = index;
        for slot in (0..count).rev() {
            digits[slot] = rest % n;
            rest /= n;
        }
        if rest != 0 {
            return Err(Error::Parse(format!(
                "element index {index} out of range for {self}"
            )));
        }
        let entries = digits.into_iter().map(Scalar::Residue).collect();
        Ok(RingElement {
            spec: self.clone(),
            entries,
        })
    }

    /// Inverse of `element_at` for finite carriers.
    pub fn index_of(&self, e: &RingElement) -> Result<u64> {
        let n = self.modulus.ok_or(Error::InfiniteCarrier)?;
        let mut idx: u64 = 0;
        for s in &e.entries {
            let Scalar::Residue(r) = s else {
                return Err(Error::SpecMismatch);
            };
            idx = idx * n + r;
        }
        Ok(idx)
    }
}

impl fmt::Display for CarrierSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.domain {
            ScalarDomain::Rational => write!(f, "M_{}(Q)", self.dim),
            ScalarDomain::GaussianRational => write!(f, "M_{}(Q(i))", self.dim),
            ScalarDomain::IntegersModN => {
                write!(f, "M_{}(Z_{})", self.dim, self.modulus.unwrap_or(0))
            }
        }
    }
}

/// An element of a carrier: a `dim` x `dim` array of canonical scalars
/// in row-major order. Construction canonicalizes; arithmetic is exact.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    spec: CarrierSpec,
    entries: Vec<Scalar>,
}

fn canonical_scalar(spec: &CarrierSpec, s: Scalar) -> Result<Scalar> {
    match (spec.domain, s) {
        (ScalarDomain::Rational, Scalar::Rational(r)) => Ok(Scalar::Rational(r)),
        (ScalarDomain::GaussianRational, Scalar::Gaussian(g)) => Ok(Scalar::Gaussian(g)),
        // Plain rationals embed into Q(i).
        (ScalarDomain::GaussianRational, Scalar::Rational(r)) => Ok(Scalar::Gaussian(
            GaussianRational::new(r, BigRational::zero()),
        )),
        (ScalarDomain::IntegersModN, Scalar::Residue(r)) => {
            let n = spec.modulus.expect("ZN spec has a modulus");
            Ok(Scalar::Residue(r % n))
        }
        (_, other) => Err(Error::NonCanonicalScalar(format!(
            "scalar `{other}` is not in the declared domain"
        ))),
    }
}

impl RingElement {
    /// Canonicalizing constructor: entry count must be `dim^2`, residues
    /// are reduced, and each scalar must live in the declared domain.
    pub fn make(spec: &CarrierSpec, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != spec.entry_count() {
            return Err(Error::DimensionMismatch {
                dim: spec.dim,
                expected: spec.entry_count(),
                got: entries.len(),
            });
        }
        let entries = entries
            .into_iter()
            .map(|s| canonical_scalar(spec, s))
            .collect::<Result<Vec<_>>>()?;
        Ok(RingElement {
            spec: spec.clone(),
            entries,
        })
    }

    /// Convenience constructor from machine integers (tests, examples).
    pub fn from_i64s(spec: &CarrierSpec, values: &[i64]) -> Result<Self> {
        let entries = values
            .iter()
            .map(|&v| match spec.domain {
                ScalarDomain::Rational => Scalar::Rational(BigRational::from_integer(v.into())),
                ScalarDomain::GaussianRational => {
                    Scalar::Gaussian(GaussianRational::from_integer(v))
                }
                ScalarDomain::IntegersModN => Scalar::Residue(crate::scalar::reduce_residue(
                    v,
                    spec.modulus.expect("ZN spec has a modulus"),
                )),
            })
            .collect();
        RingElement::make(spec, entries)
    }

    pub fn zero(spec: &CarrierSpec) -> Self {
        RingElement::from_integer(spec, 0)
    }

    pub fn one(spec: &CarrierSpec) -> Self {
        RingElement::from_integer(spec, 1)
    }

    /// The image of the integer `k` under the unique unital ring map
    /// Z -> R, i.e. `k` times the identity matrix.
    pub fn from_integer(spec: &CarrierSpec, k: i64) -> Self {
        let d = spec.dim;
        let mut values = vec![0i64; d * d];
        for i in 0..d {
            values[i * d + i] = k;
        }
        RingElement::from_i64s(spec, &values).expect("integer embedding is always canonical")
    }

    pub fn spec(&self) -> &CarrierSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.spec.dim
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn entry(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.spec.dim + c]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_one(&self) -> bool {
        *self == RingElement::one(&self.spec)
    }

    fn assert_same_spec(&self, o: &Self) {
        assert_eq!(
            self.spec, o.spec,
            "ring operation across different carriers"
        );
    }

    /// Same-spec check for public entry points that must report
    /// `SpecMismatch` instead of panicking.
    pub fn ensure_same_spec(&self, o: &Self) -> Result<()> {
        if self.spec == o.spec {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    fn zip_entries(&self, o: &Self, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Self {
        let entries = self
            .entries
            .iter()
            .zip(&o.entries)
            .map(|(a, b)| f(a, b))
            .collect();
        RingElement {
            spec: self.spec.clone(),
            entries,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.assert_same_spec(o);
        let m = self.spec.modulus;
        self.zip_entries(o, |a, b| scalar_add(a, b, m))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.assert_same_spec(o);
        let m = self.spec.modulus;
        self.zip_entries(o, |a, b| scalar_sub(a, b, m))
    }

    pub fn neg(&self) -> Self {
        let m = self.spec.modulus;
        let entries = self.entries.iter().map(|a| scalar_neg(a, m)).collect();
        RingElement {
            spec: self.spec.clone(),
            entries,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.assert_same_spec(o);
        let d = self.spec.dim;
        let m = self.spec.modulus;
        let mut entries = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let mut acc = scalar_zero(&self.spec);
                for k in 0..d {
                    let prod = scalar_mul(self.entry(i, k), o.entry(k, j), m);
                    acc = scalar_add(&acc, &prod, m);
                }
                entries.push(acc);
            }
        }
        RingElement {
            spec: self.spec.clone(),
            entries,
        }
    }

    /// The involution `a*` declared by the carrier.
    pub fn star(&self) -> Self {
        let d = self.spec.dim;
        match self.spec.involution {
            Involution::Identity => self.clone(),
            Involution::Transpose => {
                let entries = (0..d * d)
                    .map(|idx| self.entry(idx % d, idx / d).clone())
                    .collect();
                RingElement {
                    spec: self.spec.clone(),
                    entries,
                }
            }
            Involution::ConjugateTranspose => {
                let entries = (0..d * d)
                    .map(|idx| scalar_conj(self.entry(idx % d, idx / d)))
                    .collect();
                RingElement {
                    spec: self.spec.clone(),
                    entries,
                }
            }
        }
    }

    /// `a^k` by repeated multiplication; `a^0` is the identity.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = RingElement::one(&self.spec);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_hermitian(&self) -> bool {
        self.star() == *self
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }
}

impl fmt::Display for RingElement {
    /// Compact bracket form, `[[1,2],[3,4]]`; scalars print bare (`2`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.spec.dim;
        if d == 1 {
            return write!(f, "{}", self.entries[0]);
        }
        write!(f, "[")?;
        for i in 0..d {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..d {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

fn scalar_zero(spec: &CarrierSpec) -> Scalar {
    match spec.domain {
        ScalarDomain::Rational => Scalar::Rational(BigRational::zero()),
        ScalarDomain::GaussianRational => Scalar::Gaussian(GaussianRational::zero()),
        ScalarDomain::IntegersModN => Scalar::Residue(0),
    }
}

fn scalar_add(a: &Scalar, b: &Scalar, m: Option<u64>) -> Scalar {
    match (a, b) {
        (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
        (Scalar::Gaussian(x), Scalar::Gaussian(y)) => Scalar::Gaussian(x.add(y)),
        (Scalar::Residue(x), Scalar::Residue(y)) => {
            Scalar::Residue(residue::add(*x, *y, m.expect("residue modulus")))
        }
        _ => unreachable!("mixed scalar variants inside one element"),
    }
}

fn scalar_sub(a: &Scalar, b: &Scalar, m: Option<u64>) -> Scalar {
    match (a, b) {
        (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x - y),
        (Scalar::Gaussian(x), Scalar::Gaussian(y)) => Scalar::Gaussian(x.sub(y)),
        (Scalar::Residue(x), Scalar::Residue(y)) => {
            Scalar::Residue(residue::sub(*x, *y, m.expect("residue modulus")))
        }
        _ => unreachable!("mixed scalar variants inside one element"),
    }
}

fn scalar_mul(a: &Scalar, b: &Scalar, m: Option<u64>) -> Scalar {
    match (a, b) {
        (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
        (Scalar::Gaussian(x), Scalar::Gaussian(y)) => Scalar::Gaussian(x.mul(y)),
        (Scalar::Residue(x), Scalar::Residue(y)) => {
            Scalar::Residue(residue::mul(*x, *y, m.expect("residue modulus")))
        }
        _ => unreachable!("mixed scalar variants inside one element"),
    }
}

fn scalar_neg(a: &Scalar, m: Option<u64>) -> Scalar {
    match a {
        Scalar::Rational(x) => Scalar::Rational(-x.clone()),
        Scalar::Gaussian(x) => Scalar::Gaussian(x.neg()),
        Scalar::Residue(x) => Scalar::Residue(residue::neg(*x, m.expect("residue modulus"))),
    }
}

fn scalar_conj(a: &Scalar) -> Scalar {
    match a {
        Scalar::Rational(x) => Scalar::Rational(x.clone()),
        Scalar::Gaussian(x) => Scalar::Gaussian(x.conj()),
        Scalar::Residue(x) => Scalar::Residue(*x),
    }
}

/// Diagnostic for the proper-ring property: a nonzero `a` with
/// `a* a = 0`, if one exists within the budget. Finite carriers are
/// scanned in enumeration order; infinite carriers get a seeded random
/// search with small entries (over Q and Q(i) the sum-of-squares
/// argument means no witness exists, so the search reports none).
pub fn is_proper_witness(spec: &CarrierSpec, budget: u64) -> Option<RingElement> {
    if let Some(count) = spec.element_count() {
        let upto = count.min(budget);
        for idx in 0..upto {
            let a = spec.element_at(idx).expect("index below element count");
            if !a.is_zero() && a.star().mul(&a).is_zero() {
                return Some(a);
            }
        }
        return None;
    }
    // Fixed seed: the diagnostic must be reproducible run to run.
    let mut rng = SplitMix64::new(0x5EED_0001);
    for _ in 0..budget {
        let a = random_small_element(spec, &mut rng);
        if !a.is_zero() && a.star().mul(&a).is_zero() {
            return Some(a);
        }
    }
    None
}

fn random_small_element(spec: &CarrierSpec, rng: &mut SplitMix64) -> RingElement {
    let entries = (0..spec.entry_count())
        .map(|_| {
            let num = rng.next_in_range(-9, 9);
            let den = rng.next_in_range(1, 9);
            let r = BigRational::new(num.into(), den.into());
            match spec.domain {
                ScalarDomain::Rational => Scalar::Rational(r),
                ScalarDomain::GaussianRational => {
                    let inum = rng.next_in_range(-9, 9);
                    let iden = rng.next_in_range(1, 9);
                    Scalar::Gaussian(GaussianRational::new(
                        r,
                        BigRational::new(inum.into(), iden.into()),
                    ))
                }
                ScalarDomain::IntegersModN => unreachable!("finite carriers are scanned"),
            }
        })
        .collect();
    RingElement::make(spec, entries).expect("random entries are canonical")
}
