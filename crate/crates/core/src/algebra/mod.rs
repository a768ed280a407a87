//! Exact scalars and dense linear algebra.

mod bareiss;
mod field;
mod matrix;
pub mod primes;
mod scalar;

pub use field::{
    common_denominator, primitive_integer_vector, Field, FieldTag, GaussianRationals, PrimeField, Rationals, ReduceMod,
};
pub use matrix::{Matrix, Rref};
pub use scalar::{Gaussian, Scalar};

use rand::Rng;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    Shape {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("rows have different lengths")]
    Ragged,
    #[error("cannot parse scalar `{0}`")]
    BadScalar(String),
    #[error("unknown field `{0}`")]
    UnknownField(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds 32 bits")]
    PrimeTooLarge(u64),
    #[error("scalar `{found}` does not belong to {expected}")]
    FieldMismatch { expected: String, found: String },
    #[error("a denominator vanishes modulo {0}")]
    DenominatorVanishes(u64),
}

/// Uniform random small integer in `[-bound, bound]` as a field element.
pub fn random_small<F: Field, R: Rng>(field: &F, rng: &mut R, bound: i64) -> F::Elem {
    field.from_i64(rng.random_range(-bound..=bound))
}

/// Reduces a matrix modulo a prime.
pub fn reduce_matrix<F: ReduceMod>(m: &Matrix<F>, fp: &PrimeField) -> Result<Matrix<PrimeField>, AlgebraError> {
    m.try_map(fp, |x| {
        m.field()
            .reduce(x, fp)
            .ok_or(AlgebraError::DenominatorVanishes(fp.modulus()))
    })
}
