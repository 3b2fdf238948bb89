//! Exact scalars: arbitrary-precision rationals, Gaussian rationals, and
//! canonical residues mod n. No floating point anywhere.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A rational with a rational imaginary part: `re + im*i`.
///
/// Both components are kept reduced with positive denominator, which the
/// `BigRational` constructor guarantees.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_integer(n: i64) -> Self {
        GaussianRational::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Self) -> Self {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn neg(&self) -> Self {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        GaussianRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    /// Multiplicative inverse; `None` for zero. Uses the norm
    /// `re^2 + im^2`, which vanishes only at zero over the rationals.
    pub fn inv(&self) -> Option<Self> {
        let norm = &self.re * &self.re + &self.im * &self.im;
        if norm.is_zero() {
            return None;
        }
        Some(GaussianRational::new(
            &self.re / &norm,
            -(&self.im / &norm),
        ))
    }
}

impl fmt::Display for GaussianRational {
    /// Canonical form: plain rational when the imaginary part is zero,
    /// otherwise `re+imi` / `re-imi` with the real part always printed.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(
            f,
            "{}{}{}i",
            fmt_rational(&self.re),
            sign,
            fmt_rational(&self.im.abs())
        )
    }
}

/// Canonical rational display: `p` when the denominator is one, else `p/q`.
pub fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// One entry of a ring element. The carrier's `CarrierSpec` decides which
/// variant is admissible; residues carry no modulus of their own.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Gaussian(GaussianRational),
    Residue(u64),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Gaussian(g) => g.is_zero(),
            Scalar::Residue(r) => *r == 0,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}", fmt_rational(r)),
            Scalar::Gaussian(g) => write!(f, "{}", g),
            Scalar::Residue(r) => write!(f, "{}", r),
        }
    }
}

fn parse_bigint(s: &str) -> Result<BigInt> {
    if s.is_empty() {
        return Err(Error::NonCanonicalScalar("empty integer".into()));
    }
    s.parse::<BigInt>()
        .map_err(|_| Error::NonCanonicalScalar(format!("bad integer `{s}`")))
}

/// Parse `p` or `p/q` into a reduced rational. A zero denominator is
/// rejected, not normalized away.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_bigint(s)?)),
        Some((num, den)) => {
            let n = parse_bigint(num)?;
            if den.starts_with(['+', '-']) {
                return Err(Error::NonCanonicalScalar(format!(
                    "signed denominator in `{s}`"
                )));
            }
            let d = parse_bigint(den)?;
            if d.is_zero() {
                return Err(Error::NonCanonicalScalar(format!(
                    "zero denominator in `{s}`"
                )));
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// Parse a Gaussian rational: `p/q`, `p/q+r/si`, `p/q-r/si`, or a pure
/// imaginary `r/si` (also bare `i`, `+i`, `-i`).
pub fn parse_gaussian(s: &str) -> Result<GaussianRational> {
    let s = s.trim();
    let Some(body) = s.strip_suffix('i') else {
        return Ok(GaussianRational::new(parse_rational(s)?, BigRational::zero()));
    };
    // Split the imaginary term off at the last sign that starts a term.
    // Numerators and denominators are plain digit runs, so any '+'/'-'
    // past position 0 is the separator.
    let mut split = None;
    for (i, c) in body.char_indices().skip(1) {
        if c == '+' || c == '-' {
            split = Some(i);
        }
    }
    let (re_part, im_part) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("", body),
    };
    let re = if re_part.is_empty() {
        BigRational::zero()
    } else {
        parse_rational(re_part)?
    };
    let im = match im_part {
        "" | "+" => BigRational::one(),
        "-" => -BigRational::one(),
        t => parse_rational(t)?,
    };
    Ok(GaussianRational::new(re, im))
}

/// Parse an integer (any sign, any size) and reduce it to the canonical
/// residue in `[0, modulus)`.
pub fn parse_residue(s: &str, modulus: u64) -> Result<u64> {
    let n = parse_bigint(s.trim())?;
    let m = BigInt::from(modulus);
    let r = n.mod_floor(&m);
    // mod_floor of a positive modulus is in range; this cannot truncate.
    Ok(u64::try_from(r).expect("canonical residue fits in u64"))
}

pub fn reduce_residue(n: i64, modulus: u64) -> u64 {
    let m = modulus as i128;
    let r = (n as i128).rem_euclid(m);
    r as u64
}

pub mod residue {
    //! Arithmetic on canonical residues; intermediate products go through
    //! `u128` so any `u64` modulus is safe.

    pub fn add(a: u64, b: u64, m: u64) -> u64 {
        ((a as u128 + b as u128) % m as u128) as u64
    }

    pub fn sub(a: u64, b: u64, m: u64) -> u64 {
        ((a as u128 + m as u128 - b as u128) % m as u128) as u64
    }

    pub fn mul(a: u64, b: u64, m: u64) -> u64 {
        ((a as u128 * b as u128) % m as u128) as u64
    }

    pub fn neg(a: u64, m: u64) -> u64 {
        if a == 0 {
            0
        } else {
            m - a
        }
    }
}
