//! Pullback of forms along linear embeddings and the Segre embedding.

use crate::algebra::{Field, Matrix};

use super::form::Form;
use super::space::{AmbientSpace, Degree};
use super::FormError;

/// Each source variable is replaced by a form on the target space. All
/// images share one degree, which is linear (1, or (1,1) on the quadric).
#[derive(Clone, Debug, PartialEq)]
pub struct Substitution<F: Field> {
    source: AmbientSpace,
    target: AmbientSpace,
    images: Vec<Form<F>>,
}

impl<F: Field> Substitution<F> {
    pub fn new(source: AmbientSpace, target: AmbientSpace, images: Vec<Form<F>>) -> Result<Substitution<F>, FormError> {
        if source == AmbientSpace::Quadric {
            return Err(FormError::Unsupported("substitution from the quadric".into()));
        }
        if images.len() != source.nvars() {
            return Err(FormError::Shape(format!(
                "{} images for {} variables",
                images.len(),
                source.nvars()
            )));
        }
        let unit = match target {
            AmbientSpace::Quadric => Degree::Bi(1, 1),
            _ => Degree::Single(1),
        };
        if let Some(bad) = images.iter().find(|f| f.degree() != unit || f.space() != target) {
            return Err(FormError::NotLinear(bad.degree()));
        }
        Ok(Substitution { source, target, images })
    }

    /// `x_i = sum_j A_ij y_j`, where `A` has one row per source variable and
    /// one column per target variable. `A` must have full column rank.
    pub fn linear(source: AmbientSpace, target: AmbientSpace, a: &Matrix<F>) -> Result<Substitution<F>, FormError> {
        if target == AmbientSpace::Quadric {
            return Err(FormError::Unsupported("linear map into the quadric".into()));
        }
        if a.rows() != source.nvars() || a.cols() != target.nvars() {
            return Err(FormError::Shape("parametrization matrix shape".into()));
        }
        if a.rank() != target.nvars() {
            return Err(FormError::DegenerateParametrization);
        }
        let images = (0..a.rows())
            .map(|i| Form::linear(a.field(), target, a.row(i)))
            .collect();
        Substitution::new(source, target, images)
    }

    /// Segre embedding z1 = s0 t0, z2 = s0 t1, z3 = s1 t0, z4 = s1 t1 of
    /// the quadric z1 z4 = z2 z3.
    pub fn segre(field: &F) -> Substitution<F> {
        let q = AmbientSpace::Quadric;
        let prod = |a: usize, b: usize| Form::var(field, q, a).mul(&Form::var(field, q, b));
        let images = vec![prod(0, 2), prod(0, 3), prod(1, 2), prod(1, 3)];
        Substitution {
            source: AmbientSpace::P3,
            target: q,
            images,
        }
    }

    pub fn source(&self) -> AmbientSpace {
        self.source
    }
    pub fn target(&self) -> AmbientSpace {
        self.target
    }
    pub fn images(&self) -> &[Form<F>] {
        &self.images
    }

    /// Image of a source degree.
    pub fn map_degree(&self, d: Degree) -> Result<Degree, FormError> {
        let k = d.single().ok_or(FormError::DegreeSpaceMismatch {
            space: self.source,
            degree: d,
        })?;
        Ok(match self.target {
            AmbientSpace::Quadric => Degree::Bi(k, k),
            _ => Degree::Single(k),
        })
    }

    pub fn apply(&self, f: &Form<F>) -> Result<Form<F>, FormError> {
        if f.space() != self.source {
            return Err(FormError::SubstitutionSpace {
                expected: self.source,
                found: f.space(),
            });
        }
        let field = f.field();
        let mut acc = Form::zero(field, self.target, self.map_degree(f.degree())?);
        for (e, c) in f.terms() {
            let mut t = Form::constant(field, self.target, c.clone());
            for (img, &k) in self.images.iter().zip(e) {
                if k > 0 {
                    t = t.mul(&img.pow(k));
                }
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rationals;

    #[test]
    fn segre_kills_the_quadric_equation() {
        let q = Rationals;
        let p3 = AmbientSpace::P3;
        let z = |i| Form::var(&q, p3, i);
        let eq = z(0).mul(&z(3)).sub(&z(1).mul(&z(2))).unwrap();
        let pulled = Substitution::segre(&q).apply(&eq).unwrap();
        assert!(pulled.is_zero());
        assert_eq!(pulled.degree(), Degree::Bi(2, 2));
    }

    #[test]
    fn hyperplane_substitution() {
        let q = Rationals;
        // z4 = 0 hyperplane: z_i = y_i for i < 3
        let a = Matrix::from_i64(&q, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]);
        let s = Substitution::linear(AmbientSpace::P3, AmbientSpace::P2, &a).unwrap();
        assert!(s.apply(&Form::var(&q, AmbientSpace::P3, 3)).unwrap().is_zero());
        let bad = Matrix::from_i64(&q, &[vec![1, 0], vec![1, 0], vec![0, 0], vec![0, 0]]);
        assert!(Substitution::linear(AmbientSpace::P3, AmbientSpace::P1, &bad).is_err());
    }

    #[test]
    fn nonlinear_images_rejected() {
        let q = Rationals;
        let p1 = AmbientSpace::P1;
        let x = Form::var(&q, p1, 0);
        let imgs = vec![x.mul(&x), x.mul(&x), x.mul(&x), x.mul(&x)];
        assert!(Substitution::new(AmbientSpace::P3, p1, imgs).is_err());
    }
}
