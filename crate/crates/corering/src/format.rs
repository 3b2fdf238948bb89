//! Element input/output: the whitespace text format and the canonical
//! JSON form.
//!
//! Text format: a header line `<domain> <dim> [modulus]` with domain one
//! of `Q`, `QI`, `ZN`, followed by `dim` rows of `dim` whitespace
//! separated scalars. Rationals are `p` or `p/q`, Gaussian rationals
//! `p/q+r/si`, residues plain integers (any sign, reduced mod n).
//!
//! JSON form: `{"spec": {...}, "entries": [[...]]}` with entries as
//! canonical scalar strings. Emission is deterministic (fixed key order,
//! compact separators), so parse -> emit is byte stable.

use serde::{Deserialize, Serialize};

use crate::carrier::{CarrierSpec, Involution, RingElement, ScalarDomain};
use crate::error::{Error, Result};
use crate::scalar::{parse_gaussian, parse_rational, parse_residue, Scalar};

fn default_involution(domain: ScalarDomain, dim: usize) -> Involution {
    match domain {
        ScalarDomain::Rational => Involution::Transpose,
        ScalarDomain::GaussianRational => Involution::ConjugateTranspose,
        ScalarDomain::IntegersModN => {
            if dim == 1 {
                Involution::Identity
            } else {
                Involution::Transpose
            }
        }
    }
}

fn parse_scalar_in(spec: &CarrierSpec, token: &str) -> Result<Scalar> {
    match spec.domain {
        ScalarDomain::Rational => Ok(Scalar::Rational(parse_rational(token)?)),
        ScalarDomain::GaussianRational => Ok(Scalar::Gaussian(parse_gaussian(token)?)),
        ScalarDomain::IntegersModN => Ok(Scalar::Residue(parse_residue(
            token,
            spec.modulus.expect("ZN spec has a modulus"),
        )?)),
    }
}

/// Parse the text format. `involution` overrides the per-domain default
/// (transpose for Q and Z_n matrices, identity for Z_n scalars,
/// conjugate transpose for Q(i)).
pub fn parse_element_text(input: &str, involution: Option<Involution>) -> Result<RingElement> {
    let mut tokens = input.split_whitespace();
    let domain = match tokens.next() {
        Some("Q") | Some("q") => ScalarDomain::Rational,
        Some("QI") | Some("qi") => ScalarDomain::GaussianRational,
        Some("ZN") | Some("zn") => ScalarDomain::IntegersModN,
        Some(other) => {
            return Err(Error::Parse(format!(
                "unknown domain `{other}` (expected Q, QI, or ZN)"
            )))
        }
        None => return Err(Error::Parse("empty input".into())),
    };
    let dim: usize = tokens
        .next()
        .ok_or_else(|| Error::Parse("missing dimension".into()))?
        .parse()
        .map_err(|_| Error::Parse("bad dimension".into()))?;
    if dim == 0 || dim > 64 {
        return Err(Error::Parse("dimension must be in 1..=64".into()));
    }
    let modulus = if domain == ScalarDomain::IntegersModN {
        let m: u64 = tokens
            .next()
            .ok_or_else(|| Error::Parse("missing modulus".into()))?
            .parse()
            .map_err(|_| Error::Parse("bad modulus".into()))?;
        Some(m)
    } else {
        None
    };
    let involution = involution.unwrap_or_else(|| default_involution(domain, dim));
    let spec = CarrierSpec::new(domain, dim, modulus, involution)?;
    let mut entries = Vec::with_capacity(spec.entry_count());
    for _ in 0..spec.entry_count() {
        let tok = tokens
            .next()
            .ok_or_else(|| Error::Parse("too few entries".into()))?;
        entries.push(parse_scalar_in(&spec, tok)?);
    }
    if tokens.next().is_some() {
        return Err(Error::Parse("trailing input after the last entry".into()));
    }
    RingElement::make(&spec, entries)
}

/// Emit the text format, one row per line.
pub fn emit_element_text(e: &RingElement) -> String {
    let spec = e.spec();
    let mut out = match spec.domain {
        ScalarDomain::Rational => format!("Q {}", spec.dim),
        ScalarDomain::GaussianRational => format!("QI {}", spec.dim),
        ScalarDomain::IntegersModN => {
            format!("ZN {} {}", spec.dim, spec.modulus.expect("modulus"))
        }
    };
    for r in 0..spec.dim {
        out.push('\n');
        for c in 0..spec.dim {
            if c > 0 {
                out.push(' ');
            }
            out.push_str(&e.entry(r, c).to_string());
        }
    }
    out.push('\n');
    out
}

#[derive(Serialize, Deserialize)]
struct ElementDto {
    spec: CarrierSpec,
    entries: Vec<Vec<String>>,
}

impl Serialize for RingElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let spec = self.spec();
        let entries = (0..spec.dim)
            .map(|r| {
                (0..spec.dim)
                    .map(|c| self.entry(r, c).to_string())
                    .collect()
            })
            .collect();
        ElementDto {
            spec: spec.clone(),
            entries,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RingElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let dto = ElementDto::deserialize(d)?;
        element_from_dto(dto).map_err(serde::de::Error::custom)
    }
}

fn element_from_dto(dto: ElementDto) -> Result<RingElement> {
    // Revalidate the spec: serde fills the struct fields without going
    // through the invariant-checking constructor.
    let spec = CarrierSpec::new(dto.spec.domain, dto.spec.dim, dto.spec.modulus, dto.spec.involution)?;
    if dto.entries.len() != spec.dim || dto.entries.iter().any(|row| row.len() != spec.dim) {
        return Err(Error::DimensionMismatch {
            dim: spec.dim,
            expected: spec.entry_count(),
            got: dto.entries.iter().map(Vec::len).sum(),
        });
    }
    let mut entries = Vec::with_capacity(spec.entry_count());
    for row in &dto.entries {
        for tok in row {
            entries.push(parse_scalar_in(&spec, tok)?);
        }
    }
    RingElement::make(&spec, entries)
}

/// Canonical JSON: compact separators, fixed key order.
pub fn element_to_json(e: &RingElement) -> String {
    serde_json::to_string(e).expect("element serialization cannot fail")
}

pub fn element_from_json(s: &str) -> Result<RingElement> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}
