//! Field-independent scalar values and their string form.
//!
//! Canonical strings: `a` or `a/b` for rationals, `re+im*i` / `re-|im|*i`
//! for Gaussian rationals with nonzero imaginary part, `r mod p` for
//! residues.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gaussian {
    pub re: BigRational,
    pub im: BigRational,
}

impl Gaussian {
    pub fn new(re: BigRational, im: BigRational) -> Gaussian {
        Gaussian { re, im }
    }

    pub fn zero() -> Gaussian {
        Gaussian::new(BigRational::zero(), BigRational::zero())
    }

    pub fn from_ints(re: i64, im: i64) -> Gaussian {
        Gaussian::new(
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rational(BigRational),
    Gaussian(Gaussian),
    Modular { value: u64, modulus: u64 },
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{}", fmt_rational(q)),
            Scalar::Gaussian(g) if g.im.is_zero() => write!(f, "{}", fmt_rational(&g.re)),
            Scalar::Gaussian(g) => {
                let sign = if g.im.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}*i", fmt_rational(&g.re), sign, fmt_rational(&g.im.abs()))
            }
            Scalar::Modular { value, modulus } => write!(f, "{value} mod {modulus}"),
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational, AlgebraError> {
    let bad = || AlgebraError::BadScalar(s.to_string());
    let s = s.trim();
    if s.is_empty() {
        return Err(bad());
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Parses an imaginary part written as `c*i`, `i`, or `c/d*i` (sign stripped).
fn parse_imag(s: &str) -> Result<BigRational, AlgebraError> {
    let body = s.trim();
    let coeff = body
        .strip_suffix('i')
        .ok_or_else(|| AlgebraError::BadScalar(s.to_string()))?
        .trim_end();
    let coeff = coeff.strip_suffix('*').unwrap_or(coeff).trim();
    if coeff.is_empty() {
        return Ok(BigRational::from_integer(1.into()));
    }
    parse_rational(coeff)
}

impl FromStr for Scalar {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Scalar, AlgebraError> {
        let t = s.trim();
        if let Some((v, p)) = t.split_once("mod") {
            let bad = || AlgebraError::BadScalar(s.to_string());
            let modulus: u64 = p.trim().parse().map_err(|_| bad())?;
            let value: BigInt = v.trim().parse().map_err(|_| bad())?;
            if modulus < 2 {
                return Err(bad());
            }
            let m = BigInt::from(modulus);
            let value = ((value % &m) + &m) % &m;
            return Ok(Scalar::Modular {
                value: value.try_into().map_err(|_| bad())?,
                modulus,
            });
        }
        if !t.ends_with('i') {
            return Ok(Scalar::Rational(parse_rational(t)?));
        }
        // find the sign separating real and imaginary parts (not a leading sign)
        let split = t
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        let (re, im_str) = match split {
            Some(k) => (parse_rational(&t[..k])?, &t[k..]),
            None => (BigRational::zero(), t),
        };
        let (neg, im_body) = match im_str.as_bytes().first() {
            Some(b'-') => (true, &im_str[1..]),
            Some(b'+') => (false, &im_str[1..]),
            _ => (false, im_str),
        };
        let mut im = parse_imag(im_body)?;
        if neg {
            im = -im;
        }
        Ok(Scalar::Gaussian(Gaussian::new(re, im)))
    }
}
