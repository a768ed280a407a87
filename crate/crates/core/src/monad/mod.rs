//! Linear monads `O(-1)^n → O^(r+2n) → O(1)^n` and the bundles they
//! define.

mod iso;
mod lines;
mod sample;
mod validate;

pub use iso::{monad_isomorphic, morphism_dimension, MonadIsomorphism};
pub use lines::{Frame, Line, SplittingType};
pub use sample::{sample_instanton, sample_with, strategy_for, SampleOptions, Strategy};
pub use validate::{fibre_points, surjectivity_degree, ValidationReport};

use std::ops::RangeInclusive;

use crate::algebra::{AlgebraError, Field, Matrix, PrimeField, ReduceMod};
use crate::cohomology::{three_term_cohomology, CohomologyError, CohomologyTable, LineBundleComplex};
use crate::forms::{AmbientSpace, Degree, FormError, FormMatrix, Substitution};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum MonadError {
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error("epsilon is {0}x{1} and q is {2}x{3}; expected (r+2n)xn and nx(r+2n)")]
    Shape(usize, usize, usize, usize),
    #[error("monads live on P3 or P2, not {0}")]
    Space(AmbientSpace),
    #[error("entries of epsilon and q must be linear forms")]
    NotLinear,
    #[error("q·epsilon is not zero")]
    NotAComplex,
    #[error("rank {r} and charge {n} violate n >= r >= 2")]
    StandingHypothesis { r: usize, n: usize },
    #[error("no sampler covers rank {r} and charge {n}")]
    UnsupportedRange { r: usize, n: usize },
    #[error("no valid monad after {0} attempts")]
    SamplerExhausted(usize),
    #[error("the line is not trivializing (splitting type {0})")]
    NotTrivializing(SplittingType),
    #[error("{0}")]
    Invalid(String),
}

/// A linear monad with `epsilon: O(-1)^n → O^m` and `q: O^m → O(1)^n`,
/// where `m = r + 2n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Monad<F: Field> {
    field: F,
    space: AmbientSpace,
    r: usize,
    n: usize,
    epsilon: FormMatrix<F>,
    q: FormMatrix<F>,
}

impl<F: Field> Monad<F> {
    /// Monad on P3 subject to `n >= r >= 2`; the pair `(2, 1)` is also
    /// admitted.
    pub fn new(epsilon: FormMatrix<F>, q: FormMatrix<F>) -> Result<Monad<F>, MonadError> {
        let m = Monad::general(epsilon, q)?;
        if m.space == AmbientSpace::P3 && !standing_hypothesis(m.r, m.n) {
            return Err(MonadError::StandingHypothesis { r: m.r, n: m.n });
        }
        Ok(m)
    }

    /// Like [`Monad::new`] but without the restriction on rank and charge.
    /// Checks shapes, linearity and `q·ε = 0`.
    pub fn general(epsilon: FormMatrix<F>, q: FormMatrix<F>) -> Result<Monad<F>, MonadError> {
        let m = Monad::assemble(epsilon, q)?;
        if !m.q.mul(&m.epsilon)?.is_zero() {
            return Err(MonadError::NotAComplex);
        }
        Ok(m)
    }

    /// From coefficient matrices, one per variable: `ε = Σ E_j z_j`,
    /// `q = Σ Q_j z_j`.
    pub fn from_coefficients(
        field: &F,
        space: AmbientSpace,
        eps: &[Matrix<F>],
        q: &[Matrix<F>],
    ) -> Result<Monad<F>, MonadError> {
        let e = FormMatrix::linear(field, space, eps)?;
        let q = FormMatrix::linear(field, space, q)?;
        Monad::new(e, q)
    }

    fn assemble(epsilon: FormMatrix<F>, q: FormMatrix<F>) -> Result<Monad<F>, MonadError> {
        let space = epsilon.space();
        if !matches!(space, AmbientSpace::P3 | AmbientSpace::P2) {
            return Err(MonadError::Space(space));
        }
        if q.space() != space {
            return Err(MonadError::Space(q.space()));
        }
        let (m, n) = (epsilon.rows(), epsilon.cols());
        let shape = MonadError::Shape(m, n, q.rows(), q.cols());
        if n == 0 || q.rows() != n || q.cols() != m || m < 2 * n {
            return Err(shape);
        }
        let linear = |a: &FormMatrix<F>| a.entries().iter().all(|e| e.degree() == Degree::Single(1));
        if !linear(&epsilon) || !linear(&q) {
            return Err(MonadError::NotLinear);
        }
        Ok(Monad {
            field: epsilon.field().clone(),
            space,
            r: m - 2 * n,
            n,
            epsilon,
            q,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn space(&self) -> AmbientSpace {
        self.space
    }
    pub fn rank(&self) -> usize {
        self.r
    }
    pub fn charge(&self) -> usize {
        self.n
    }
    /// Rank of the middle term, `r + 2n`.
    pub fn middle(&self) -> usize {
        self.r + 2 * self.n
    }
    pub fn epsilon(&self) -> &FormMatrix<F> {
        &self.epsilon
    }
    pub fn q(&self) -> &FormMatrix<F> {
        &self.q
    }

    /// Coefficient matrices of `ε` for each variable.
    pub fn epsilon_coefficients(&self) -> Vec<Matrix<F>> {
        coefficients(&self.epsilon)
    }

    pub fn q_coefficients(&self) -> Vec<Matrix<F>> {
        coefficients(&self.q)
    }

    /// The monad as a complex in degrees -1, 0, 1, so that its
    /// hypercohomology is the cohomology of the bundle.
    pub fn complex(&self) -> LineBundleComplex<F> {
        let (n, m) = (self.n, self.middle());
        let terms = vec![
            vec![Degree::Single(-1); n],
            vec![Degree::Single(0); m],
            vec![Degree::Single(1); n],
        ];
        LineBundleComplex::unchecked(
            &self.field,
            self.space,
            -1,
            terms,
            vec![self.epsilon.clone(), self.q.clone()],
        )
    }

    /// `h^i(F(k))` for `i = 0..=dim`, by the display chase.
    pub fn cohomology(&self, k: i32) -> Result<Vec<usize>, CohomologyError> {
        three_term_cohomology(&self.epsilon, &self.q, Degree::Single(k))
    }

    pub fn cohomology_table(&self, twists: RangeInclusive<i32>) -> Result<CohomologyTable, CohomologyError> {
        let mut t = CohomologyTable::new(self.space);
        for k in twists {
            t.insert_row(Degree::Single(k), &self.cohomology(k)?);
        }
        Ok(t)
    }

    /// Monad of the dual bundle: `(qᵀ, εᵀ)`.
    pub fn dual(&self) -> Monad<F> {
        Monad {
            epsilon: self.q.transpose(),
            q: self.epsilon.transpose(),
            ..self.clone()
        }
    }

    /// Block-diagonal sum. Rank and charge add; the standing hypothesis is
    /// not imposed on the result.
    pub fn direct_sum(&self, other: &Monad<F>) -> Result<Monad<F>, MonadError> {
        if self.space != other.space {
            return Err(MonadError::Space(other.space));
        }
        let one = Degree::Single(1);
        Monad::assemble(
            self.epsilon.block_diag(&other.epsilon, one),
            self.q.block_diag(&other.q, one),
        )
    }

    /// Total complex of the tensor product, quasi-isomorphic to `F ⊗ G`.
    pub fn tensor_complex(&self, other: &Monad<F>) -> Result<LineBundleComplex<F>, CohomologyError> {
        self.complex().tensor(&other.complex())
    }

    /// Complex computing `End F = F ⊗ F^∨`.
    pub fn end_complex(&self) -> Result<LineBundleComplex<F>, CohomologyError> {
        self.tensor_complex(&self.dual())
    }

    /// `(g_C ε g_V⁻¹, g_W q g_C⁻¹)`.
    pub fn act(&self, g_v: &Matrix<F>, g_c: &Matrix<F>, g_w: &Matrix<F>) -> Result<Monad<F>, MonadError> {
        let inv = |g: &Matrix<F>| {
            g.inverse()
                .ok_or_else(|| MonadError::Invalid("group element is not invertible".into()))
        };
        let eps = self.epsilon.left_mul_const(g_c)?.right_mul_const(&inv(g_v)?)?;
        let q = self.q.left_mul_const(g_w)?.right_mul_const(&inv(g_c)?)?;
        Monad::assemble(eps, q)
    }

    /// Pullback along `z = M w` for an invertible matrix `M`.
    pub fn change_coordinates(&self, m: &Matrix<F>) -> Result<Monad<F>, MonadError> {
        if !m.is_invertible() {
            return Err(MonadError::Invalid("coordinate change is not invertible".into()));
        }
        let sub = Substitution::linear(self.space, self.space, m)?;
        Monad::assemble(self.epsilon.substitute(&sub)?, self.q.substitute(&sub)?)
    }

    /// Restriction of the complex along a substitution (to a line, a plane
    /// or the quadric).
    pub fn restrict(&self, sub: &Substitution<F>) -> Result<LineBundleComplex<F>, CohomologyError> {
        self.complex().restrict(sub)
    }

    /// Restriction to the plane parametrized by the 4×3 matrix `a`, again a
    /// monad.
    pub fn restrict_to_plane(&self, a: &Matrix<F>) -> Result<Monad<F>, MonadError> {
        if self.space != AmbientSpace::P3 {
            return Err(MonadError::Space(self.space));
        }
        let sub = Substitution::linear(AmbientSpace::P3, AmbientSpace::P2, a)?;
        Monad::assemble(self.epsilon.substitute(&sub)?, self.q.substitute(&sub)?)
    }

    /// Restriction to the quadric `z1 z4 = z2 z3` through the Segre map.
    pub fn restrict_to_quadric(&self) -> Result<LineBundleComplex<F>, CohomologyError> {
        self.restrict(&Substitution::segre(&self.field))
    }

    pub fn conj(&self) -> Monad<F> {
        Monad {
            epsilon: self.epsilon.conj(),
            q: self.q.conj(),
            ..self.clone()
        }
    }

    pub fn map_field<G: Field>(&self, field: &G, g: impl Fn(&F::Elem) -> G::Elem) -> Monad<G> {
        Monad {
            field: field.clone(),
            space: self.space,
            r: self.r,
            n: self.n,
            epsilon: self.epsilon.map_field(field, &g),
            q: self.q.map_field(field, &g),
        }
    }
}

impl<F: ReduceMod> Monad<F> {
    /// Reduction modulo a prime. The result need not be a monad in the
    /// strict sense, but `q·ε = 0` survives.
    pub fn reduce(&self, fp: &PrimeField) -> Result<Monad<PrimeField>, AlgebraError> {
        Ok(Monad {
            field: *fp,
            space: self.space,
            r: self.r,
            n: self.n,
            epsilon: self.epsilon.reduce(fp)?,
            q: self.q.reduce(fp)?,
        })
    }
}

pub(crate) fn standing_hypothesis(r: usize, n: usize) -> bool {
    (r >= 2 && n >= r) || (r, n) == (2, 1)
}

fn coefficients<F: Field>(a: &FormMatrix<F>) -> Vec<Matrix<F>> {
    (0..a.space().nvars())
        .map(|k| a.coefficient_matrix(k).expect("monad entries are linear"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rationals;
    use crate::cohomology::cech_hypercohomology;

    fn sample(r: usize, n: usize, seed: u64) -> Monad<Rationals> {
        sample_instanton(r, n, seed).unwrap()
    }

    #[test]
    fn rejects_small_charge() {
        let m = sample(2, 2, 1);
        let e = m.epsilon().clone();
        let q = m.q().clone();
        assert!(Monad::new(e.clone(), q.clone()).is_ok());
        let bad = m.direct_sum(&sample(2, 1, 2)).unwrap();
        assert_eq!(bad.rank(), 4);
        assert_eq!(bad.charge(), 3);
        assert!(matches!(
            Monad::new(bad.epsilon().clone(), bad.q().clone()),
            Err(MonadError::StandingHypothesis { r: 4, n: 3 })
        ));
    }

    #[test]
    fn swapped_maps_are_rejected() {
        let m = sample(2, 1, 3);
        assert!(matches!(
            Monad::new(m.q().clone(), m.epsilon().clone()),
            Err(MonadError::Shape(..))
        ));
    }

    #[test]
    fn dimension_table_of_samples() {
        for &(r, n) in &[(2, 1), (2, 2), (3, 3)] {
            let m = sample(r, n, 11);
            assert_eq!(m.cohomology(-1).unwrap(), vec![0, n, 0, 0]);
            assert_eq!(m.cohomology(-2).unwrap(), vec![0, 0, 0, 0]);
            assert_eq!(m.cohomology(-3).unwrap(), vec![0, 0, n, 0]);
        }
    }

    #[test]
    fn display_matches_cech() {
        let m = sample(2, 2, 5);
        for k in -4..=2 {
            let h = m.cohomology(k).unwrap();
            let c = cech_hypercohomology(&m.complex().twist_by(k), None).unwrap();
            let hc: Vec<usize> = (0..4).map(|i| c.get(i)).collect();
            assert_eq!(h, hc, "twist {k}");
        }
    }

    #[test]
    fn dual_and_sum() {
        let m = sample(2, 2, 8);
        assert_eq!(m.dual().dual(), m);
        assert_eq!(m.dual().cohomology(-1).unwrap()[1], 2);
        for k in -4..=0 {
            let h = m.cohomology(k).unwrap();
            let hd = m.dual().cohomology(-4 - k).unwrap();
            assert_eq!(h, hd.into_iter().rev().collect::<Vec<_>>());
        }
        let s = m.direct_sum(&m).unwrap();
        assert_eq!((s.rank(), s.charge()), (4, 4));
        assert_eq!(s.cohomology(-1).unwrap()[1], 4);
        assert_eq!(s.cohomology(0).unwrap()[1], 4);
        assert_eq!(s.dual(), m.dual().direct_sum(&m.dual()).unwrap());
    }

    #[test]
    fn plane_restriction() {
        let m = sample(2, 2, 4);
        let a = Matrix::from_i64(
            &Rationals,
            &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![2, -1, 3]],
        );
        let h = m.restrict_to_plane(&a).unwrap();
        assert_eq!(h.space(), AmbientSpace::P2);
        assert_eq!(h.cohomology(-1).unwrap()[1], 2);
    }

    #[test]
    fn quadric_terms() {
        let m = sample(2, 1, 4);
        let c = m.restrict_to_quadric().unwrap();
        assert_eq!(c.terms()[0][0], Degree::Bi(-1, -1));
        assert_eq!(c.terms()[1][0], Degree::Bi(0, 0));
        assert_eq!(c.terms()[2][0], Degree::Bi(1, 1));
    }
}
