//! Matrices of forms.

use crate::algebra::{AlgebraError, Field, Matrix, PrimeField, ReduceMod};

use super::form::Form;
use super::space::{AmbientSpace, Degree};
use super::subst::Substitution;
use super::FormError;

#[derive(Clone, Debug, PartialEq)]
pub struct FormMatrix<F: Field> {
    field: F,
    space: AmbientSpace,
    rows: usize,
    cols: usize,
    entries: Vec<Form<F>>,
}

impl<F: Field> FormMatrix<F> {
    pub fn new(
        field: &F,
        space: AmbientSpace,
        rows: usize,
        cols: usize,
        entries: Vec<Form<F>>,
    ) -> Result<FormMatrix<F>, FormError> {
        if entries.len() != rows * cols {
            return Err(FormError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|e| e.space() != space) {
            return Err(FormError::Shape("entries live on different spaces".into()));
        }
        Ok(FormMatrix {
            field: field.clone(),
            space,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_fn(
        field: &F,
        space: AmbientSpace,
        rows: usize,
        cols: usize,
        mut g: impl FnMut(usize, usize) -> Form<F>,
    ) -> FormMatrix<F> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(g(i, j));
            }
        }
        FormMatrix {
            field: field.clone(),
            space,
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(field: &F, space: AmbientSpace, rows: usize, cols: usize, degree: Degree) -> FormMatrix<F> {
        FormMatrix::from_fn(field, space, rows, cols, |_, _| Form::zero(field, space, degree))
    }

    /// `sum_j x_j M_j` for constant matrices `M_j`, one per variable.
    pub fn linear(field: &F, space: AmbientSpace, coeffs: &[Matrix<F>]) -> Result<FormMatrix<F>, FormError> {
        if coeffs.len() != space.nvars() || space == AmbientSpace::Quadric {
            return Err(FormError::Shape("one coefficient matrix per variable".into()));
        }
        let (r, c) = (coeffs[0].rows(), coeffs[0].cols());
        if coeffs.iter().any(|m| (m.rows(), m.cols()) != (r, c)) {
            return Err(FormError::Shape("coefficient matrices differ in shape".into()));
        }
        Ok(FormMatrix::from_fn(field, space, r, c, |i, j| {
            let v: Vec<F::Elem> = coeffs.iter().map(|m| m.get(i, j).clone()).collect();
            Form::linear(field, space, &v)
        }))
    }

    /// Constant matrix viewed as degree-0 forms.
    pub fn constant(space: AmbientSpace, m: &Matrix<F>) -> FormMatrix<F> {
        let f = m.field();
        FormMatrix::from_fn(f, space, m.rows(), m.cols(), |i, j| {
            Form::constant(f, space, m.get(i, j).clone())
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn space(&self) -> AmbientSpace {
        self.space
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> &Form<F> {
        &self.entries[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: Form<F>) {
        self.entries[i * self.cols + j] = v;
    }
    pub fn entries(&self) -> &[Form<F>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// The degree shared by all entries, if any.
    pub fn degree(&self) -> Option<Degree> {
        let d = self.entries.first()?.degree();
        self.entries.iter().all(|e| e.degree() == d).then_some(d)
    }

    /// Coefficient matrix of variable `k` for a linear matrix.
    pub fn coefficient_matrix(&self, k: usize) -> Result<Matrix<F>, FormError> {
        let mut m = Matrix::zeros(&self.field, self.rows, self.cols);
        let mut e = vec![0; self.space.nvars()];
        e[k] = 1;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let f = self.get(i, j);
                if f.degree() != Degree::Single(1) {
                    return Err(FormError::NotLinear(f.degree()));
                }
                m.set(i, j, f.coeff(&e));
            }
        }
        Ok(m)
    }

    pub fn transpose(&self) -> FormMatrix<F> {
        FormMatrix::from_fn(&self.field, self.space, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn neg(&self) -> FormMatrix<F> {
        self.map_entries(|e| e.neg())
    }

    pub fn conj(&self) -> FormMatrix<F> {
        self.map_entries(|e| e.conj())
    }

    pub fn scale(&self, c: &F::Elem) -> FormMatrix<F> {
        self.map_entries(|e| e.scale(c))
    }

    pub fn map_entries(&self, g: impl Fn(&Form<F>) -> Form<F>) -> FormMatrix<F> {
        FormMatrix {
            field: self.field.clone(),
            space: self.space,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(g).collect(),
        }
    }

    pub fn add(&self, other: &FormMatrix<F>) -> Result<FormMatrix<F>, FormError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(FormError::Shape("add of different shapes".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_, _>>()?;
        Ok(FormMatrix {
            entries,
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &FormMatrix<F>) -> Result<FormMatrix<F>, FormError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FormMatrix<F>) -> Result<FormMatrix<F>, FormError> {
        if self.cols != other.rows {
            return Err(FormError::Shape(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let deg = match (self.cols, self.rows, other.cols) {
                    (0, _, _) => self.space.zero_degree(),
                    _ => self.get(i, 0).degree() + other.get(0, j).degree(),
                };
                let mut acc = Form::zero(&self.field, self.space, deg);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b))?;
                    }
                }
                out.push(acc);
            }
        }
        Ok(FormMatrix {
            field: self.field.clone(),
            space: self.space,
            rows: self.rows,
            cols: other.cols,
            entries: out,
        })
    }

    pub fn left_mul_const(&self, m: &Matrix<F>) -> Result<FormMatrix<F>, FormError> {
        FormMatrix::constant(self.space, m)
            .mul(self)
            .map(|x| x.retag_degrees(self))
    }

    pub fn right_mul_const(&self, m: &Matrix<F>) -> Result<FormMatrix<F>, FormError> {
        self.mul(&FormMatrix::constant(self.space, m))
            .map(|x| x.retag_degrees(self))
    }

    /// After multiplying by constants, zero entries carry the shared degree
    /// of `like` when there is one.
    fn retag_degrees(mut self, like: &FormMatrix<F>) -> FormMatrix<F> {
        if let Some(d) = like.degree() {
            for e in &mut self.entries {
                if e.is_zero() {
                    *e = Form::zero(&self.field, self.space, d);
                }
            }
        }
        self
    }

    pub fn block_diag(&self, other: &FormMatrix<F>, off_degree: Degree) -> FormMatrix<F> {
        let (r1, c1) = (self.rows, self.cols);
        FormMatrix::from_fn(
            &self.field,
            self.space,
            r1 + other.rows,
            c1 + other.cols,
            |i, j| match (i < r1, j < c1) {
                (true, true) => self.get(i, j).clone(),
                (false, false) => other.get(i - r1, j - c1).clone(),
                _ => Form::zero(&self.field, self.space, off_degree),
            },
        )
    }

    pub fn vstack(&self, other: &FormMatrix<F>) -> Result<FormMatrix<F>, FormError> {
        if self.cols != other.cols {
            return Err(FormError::Shape("vstack of different widths".into()));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(FormMatrix {
            rows: self.rows + other.rows,
            entries,
            ..self.clone()
        })
    }

    pub fn hstack(&self, other: &FormMatrix<F>) -> Result<FormMatrix<F>, FormError> {
        if self.rows != other.rows {
            return Err(FormError::Shape("hstack of different heights".into()));
        }
        Ok(FormMatrix::from_fn(
            &self.field,
            self.space,
            self.rows,
            self.cols + other.cols,
            |i, j| {
                if j < self.cols {
                    self.get(i, j).clone()
                } else {
                    other.get(i, j - self.cols).clone()
                }
            },
        ))
    }

    /// Kronecker product of form matrices.
    pub fn kron(&self, other: &FormMatrix<F>) -> FormMatrix<F> {
        let (r2, c2) = (other.rows, other.cols);
        FormMatrix::from_fn(&self.field, self.space, self.rows * r2, self.cols * c2, |i, j| {
            self.get(i / r2, j / c2).mul(other.get(i % r2, j % c2))
        })
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> Matrix<F> {
        Matrix::from_fn(&self.field, self.rows, self.cols, |i, j| self.get(i, j).evaluate(point))
    }

    pub fn substitute(&self, sub: &Substitution<F>) -> Result<FormMatrix<F>, FormError> {
        if sub.source() != self.space {
            return Err(FormError::SubstitutionSpace {
                expected: sub.source(),
                found: self.space,
            });
        }
        let entries = self.entries.iter().map(|e| sub.apply(e)).collect::<Result<_, _>>()?;
        Ok(FormMatrix {
            field: self.field.clone(),
            space: sub.target(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn map_field<G: Field>(&self, field: &G, g: impl Fn(&F::Elem) -> G::Elem) -> FormMatrix<G> {
        FormMatrix {
            field: field.clone(),
            space: self.space,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.map_field(field, &g)).collect(),
        }
    }
}

impl<F: ReduceMod> FormMatrix<F> {
    pub fn reduce(&self, fp: &PrimeField) -> Result<FormMatrix<PrimeField>, AlgebraError> {
        Ok(FormMatrix {
            field: *fp,
            space: self.space,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.reduce(fp)).collect::<Result<_, _>>()?,
        })
    }
}
