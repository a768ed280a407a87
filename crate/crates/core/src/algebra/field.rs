//! Coefficient fields.
//!
//! A [`Field`] value is a descriptor (it may carry data such as a prime),
//! and elements are plain values of the associated type. All arithmetic goes
//! through the descriptor.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::Matrix;
use super::scalar::{Gaussian, Scalar};
use super::AlgebraError;

/// Serializable name of a coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldTag {
    Rationals,
    GaussianRationals,
    Prime(u64),
}

impl FieldTag {
    pub fn parse(s: &str) -> Result<FieldTag, AlgebraError> {
        match s.trim() {
            "Q" => Ok(FieldTag::Rationals),
            "Qi" | "Q(i)" => Ok(FieldTag::GaussianRationals),
            other => {
                let p = other
                    .strip_prefix("Fp:")
                    .ok_or_else(|| AlgebraError::UnknownField(other.to_string()))?;
                let p: u64 = p.parse().map_err(|_| AlgebraError::UnknownField(other.to_string()))?;
                if !super::primes::is_prime(p) {
                    return Err(AlgebraError::NotPrime(p));
                }
                Ok(FieldTag::Prime(p))
            }
        }
    }
}

impl std::fmt::Display for FieldTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldTag::Rationals => write!(f, "Q"),
            FieldTag::GaussianRationals => write!(f, "Qi"),
            FieldTag::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn tag(&self) -> FieldTag;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// `None` when the denominator is not invertible in the field.
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn to_scalar(&self, a: &Self::Elem) -> Scalar;
    fn from_scalar(&self, s: &Scalar) -> Result<Self::Elem, AlgebraError>;

    /// Complex conjugation; the identity outside Q(i).
    fn conj(&self, a: &Self::Elem) -> Self::Elem {
        a.clone()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// `a -= b * c`
    fn sub_mul_assign(&self, a: &mut Self::Elem, b: &Self::Elem, c: &Self::Elem) {
        *a = self.sub(a, &self.mul(b, c));
    }

    fn format(&self, a: &Self::Elem) -> String {
        self.to_scalar(a).to_string()
    }

    fn parse(&self, s: &str) -> Result<Self::Elem, AlgebraError> {
        self.from_scalar(&s.parse::<Scalar>()?)
    }

    /// Rank of a matrix over this field. Overridden where a better
    /// algorithm exists.
    fn rank_of(m: &Matrix<Self>) -> usize
    where
        Self: Sized,
    {
        m.gauss_rank()
    }

    fn det_of(m: &Matrix<Self>) -> Option<Self::Elem>
    where
        Self: Sized,
    {
        m.gauss_det()
    }
}

/// Fields whose elements can be reduced modulo a prime.
pub trait ReduceMod: Field {
    /// `None` if a denominator vanishes mod `p`, or if `p` lacks a square
    /// root of -1 for Gaussian data.
    fn reduce(&self, a: &Self::Elem, fp: &PrimeField) -> Option<u64>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct GaussianRationals;

/// Prime field with an optional chosen square root of -1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    sqrt_neg1: Option<u64>,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<PrimeField, AlgebraError> {
        if !super::primes::is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        if p >= 1 << 32 {
            return Err(AlgebraError::PrimeTooLarge(p));
        }
        Ok(PrimeField {
            p,
            sqrt_neg1: super::primes::sqrt_neg_one(p),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn sqrt_neg1(&self) -> Option<u64> {
        self.sqrt_neg1
    }

    pub fn reduce_int(&self, v: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        v.mod_floor(&p).to_u64().expect("residue fits")
    }

    pub fn reduce_rational(&self, q: &BigRational) -> Option<u64> {
        let d = self.reduce_int(q.denom());
        if d == 0 {
            return None;
        }
        let n = self.reduce_int(q.numer());
        Some(self.mul(&n, &super::primes::inv_mod(d, self.p)))
    }
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl Field for Rationals {
    type Elem = BigRational;

    fn tag(&self) -> FieldTag {
        FieldTag::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        q(v)
    }
    fn from_rational(&self, v: &BigRational) -> Option<BigRational> {
        Some(v.clone())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn sub_mul_assign(&self, a: &mut BigRational, b: &BigRational, c: &BigRational) {
        if !b.is_zero() && !c.is_zero() {
            *a -= b * c;
        }
    }
    fn to_scalar(&self, a: &BigRational) -> Scalar {
        Scalar::Rational(a.clone())
    }
    fn from_scalar(&self, s: &Scalar) -> Result<BigRational, AlgebraError> {
        match s {
            Scalar::Rational(v) => Ok(v.clone()),
            Scalar::Gaussian(g) if g.im.is_zero() => Ok(g.re.clone()),
            _ => Err(AlgebraError::FieldMismatch {
                expected: "Q".into(),
                found: s.to_string(),
            }),
        }
    }
    fn rank_of(m: &Matrix<Self>) -> usize {
        super::bareiss::rank(m)
    }
    fn det_of(m: &Matrix<Self>) -> Option<BigRational> {
        super::bareiss::det(m)
    }
}

impl ReduceMod for Rationals {
    fn reduce(&self, a: &BigRational, fp: &PrimeField) -> Option<u64> {
        fp.reduce_rational(a)
    }
}

impl Field for GaussianRationals {
    type Elem = Gaussian;

    fn tag(&self) -> FieldTag {
        FieldTag::GaussianRationals
    }
    fn zero(&self) -> Gaussian {
        Gaussian::zero()
    }
    fn one(&self) -> Gaussian {
        Gaussian::new(BigRational::one(), BigRational::zero())
    }
    fn from_i64(&self, v: i64) -> Gaussian {
        Gaussian::new(q(v), BigRational::zero())
    }
    fn from_rational(&self, v: &BigRational) -> Option<Gaussian> {
        Some(Gaussian::new(v.clone(), BigRational::zero()))
    }
    fn is_zero(&self, a: &Gaussian) -> bool {
        a.re.is_zero() && a.im.is_zero()
    }
    fn add(&self, a: &Gaussian, b: &Gaussian) -> Gaussian {
        Gaussian::new(&a.re + &b.re, &a.im + &b.im)
    }
    fn sub(&self, a: &Gaussian, b: &Gaussian) -> Gaussian {
        Gaussian::new(&a.re - &b.re, &a.im - &b.im)
    }
    fn mul(&self, a: &Gaussian, b: &Gaussian) -> Gaussian {
        Gaussian::new(&a.re * &b.re - &a.im * &b.im, &a.re * &b.im + &a.im * &b.re)
    }
    fn neg(&self, a: &Gaussian) -> Gaussian {
        Gaussian::new(-&a.re, -&a.im)
    }
    fn inv(&self, a: &Gaussian) -> Option<Gaussian> {
        let norm = &a.re * &a.re + &a.im * &a.im;
        if norm.is_zero() {
            return None;
        }
        Some(Gaussian::new(&a.re / &norm, -&a.im / &norm))
    }
    fn conj(&self, a: &Gaussian) -> Gaussian {
        Gaussian::new(a.re.clone(), -&a.im)
    }
    fn to_scalar(&self, a: &Gaussian) -> Scalar {
        Scalar::Gaussian(a.clone())
    }
    fn from_scalar(&self, s: &Scalar) -> Result<Gaussian, AlgebraError> {
        match s {
            Scalar::Rational(v) => Ok(Gaussian::new(v.clone(), BigRational::zero())),
            Scalar::Gaussian(g) => Ok(g.clone()),
            Scalar::Modular { .. } => Err(AlgebraError::FieldMismatch {
                expected: "Qi".into(),
                found: s.to_string(),
            }),
        }
    }
}

impl ReduceMod for GaussianRationals {
    fn reduce(&self, a: &Gaussian, fp: &PrimeField) -> Option<u64> {
        let re = fp.reduce_rational(&a.re)?;
        if a.im.is_zero() {
            return Some(re);
        }
        let im = fp.reduce_rational(&a.im)?;
        let i = fp.sqrt_neg1?;
        Some(fp.add(&re, &fp.mul(&im, &i)))
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn tag(&self) -> FieldTag {
        FieldTag::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn from_rational(&self, v: &BigRational) -> Option<u64> {
        self.reduce_rational(v)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| super::primes::inv_mod(*a, self.p))
    }
    fn sub_mul_assign(&self, a: &mut u64, b: &u64, c: &u64) {
        *a = self.sub(a, &(b * c % self.p));
    }
    fn to_scalar(&self, a: &u64) -> Scalar {
        Scalar::Modular {
            value: *a,
            modulus: self.p,
        }
    }
    fn from_scalar(&self, s: &Scalar) -> Result<u64, AlgebraError> {
        match s {
            Scalar::Modular { value, modulus } if *modulus == self.p => Ok(value % self.p),
            Scalar::Rational(v) => self.reduce_rational(v).ok_or(AlgebraError::DenominatorVanishes(self.p)),
            _ => Err(AlgebraError::FieldMismatch {
                expected: self.tag().to_string(),
                found: s.to_string(),
            }),
        }
    }
}

impl ReduceMod for PrimeField {
    fn reduce(&self, a: &u64, fp: &PrimeField) -> Option<u64> {
        (fp.p == self.p).then_some(*a)
    }
}

/// Smallest positive integer multiple clearing all denominators.
pub fn common_denominator<'a>(vals: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    vals.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Scales a rational vector to a primitive integer vector with the same span.
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigRational> {
    let d = common_denominator(v.iter());
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &d).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = ints
        .iter()
        .find(|x| !x.is_zero())
        .map(|x| if x.is_negative() { -1 } else { 1 })
        .unwrap_or(1);
    ints.into_iter()
        .map(|x| BigRational::from_integer(x * sign / &g))
        .collect()
}
