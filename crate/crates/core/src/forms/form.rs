//! Homogeneous forms.

use std::collections::BTreeMap;

use crate::algebra::{AlgebraError, Field, PrimeField, ReduceMod};

use super::space::{monomial_basis, AmbientSpace, Degree, Exponent};
use super::FormError;

#[derive(Clone, Debug, PartialEq)]
pub struct Form<F: Field> {
    field: F,
    space: AmbientSpace,
    degree: Degree,
    terms: BTreeMap<Exponent, F::Elem>,
}

impl<F: Field> Form<F> {
    pub fn zero(field: &F, space: AmbientSpace, degree: Degree) -> Form<F> {
        Form {
            field: field.clone(),
            space,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &F, space: AmbientSpace, c: F::Elem) -> Form<F> {
        let mut f = Form::zero(field, space, space.zero_degree());
        if !field.is_zero(&c) {
            f.terms.insert(vec![0; space.nvars()], c);
        }
        f
    }

    pub fn monomial(field: &F, space: AmbientSpace, e: Exponent, c: F::Elem) -> Form<F> {
        let mut f = Form::zero(field, space, space.degree_of(&e));
        if !field.is_zero(&c) {
            f.terms.insert(e, c);
        }
        f
    }

    pub fn var(field: &F, space: AmbientSpace, i: usize) -> Form<F> {
        let mut e = vec![0; space.nvars()];
        e[i] = 1;
        Form::monomial(field, space, e, field.one())
    }

    /// `sum_i c_i x_i` on a single-graded space.
    pub fn linear(field: &F, space: AmbientSpace, coeffs: &[F::Elem]) -> Form<F> {
        assert_eq!(coeffs.len(), space.nvars());
        let mut f = Form::zero(field, space, Degree::Single(1));
        for (i, c) in coeffs.iter().enumerate() {
            if !field.is_zero(c) {
                let mut e = vec![0; space.nvars()];
                e[i] = 1;
                f.terms.insert(e, c.clone());
            }
        }
        f
    }

    pub fn from_terms(
        field: &F,
        space: AmbientSpace,
        degree: Degree,
        terms: impl IntoIterator<Item = (Exponent, F::Elem)>,
    ) -> Result<Form<F>, FormError> {
        space.check_degree(degree)?;
        let mut f = Form::zero(field, space, degree);
        for (e, c) in terms {
            if e.len() != space.nvars() || space.degree_of(&e) != degree {
                return Err(FormError::Inhomogeneous { degree });
            }
            f.add_term(e, &c);
        }
        Ok(f)
    }

    fn add_term(&mut self, e: Exponent, c: &F::Elem) {
        if self.field.is_zero(c) {
            return;
        }
        let f = &self.field;
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = f.add(v, c);
                if f.is_zero(v) {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn space(&self) -> AmbientSpace {
        self.space
    }
    pub fn degree(&self) -> Degree {
        self.degree
    }
    pub fn terms(&self) -> &BTreeMap<Exponent, F::Elem> {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> F::Elem {
        self.terms.get(e).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Coefficients in the monomial basis order.
    pub fn coeff_vector(&self) -> Vec<F::Elem> {
        monomial_basis(self.space, self.degree)
            .iter()
            .map(|e| self.coeff(e))
            .collect()
    }

    pub fn with_degree(mut self, degree: Degree) -> Result<Form<F>, FormError> {
        if !self.is_zero() && degree != self.degree {
            return Err(FormError::DegreeMismatch(self.degree, degree));
        }
        self.degree = degree;
        Ok(self)
    }

    pub fn add(&self, other: &Form<F>) -> Result<Form<F>, FormError> {
        if self.degree != other.degree {
            if other.is_zero() {
                return Ok(self.clone());
            }
            if self.is_zero() {
                return Ok(other.clone());
            }
            return Err(FormError::DegreeMismatch(self.degree, other.degree));
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Form<F> {
        self.map_coeffs(|c| self.field.neg(c))
    }

    pub fn sub(&self, other: &Form<F>) -> Result<Form<F>, FormError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F::Elem) -> Form<F> {
        self.map_coeffs(|x| self.field.mul(c, x))
    }

    pub fn conj(&self) -> Form<F> {
        self.map_coeffs(|x| self.field.conj(x))
    }

    fn map_coeffs(&self, g: impl Fn(&F::Elem) -> F::Elem) -> Form<F> {
        let mut out = Form::zero(&self.field, self.space, self.degree);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), &g(c));
        }
        out
    }

    pub fn mul(&self, other: &Form<F>) -> Form<F> {
        assert_eq!(self.space, other.space, "forms on different spaces");
        let f = &self.field;
        let mut out = Form::zero(f, self.space, self.degree + other.degree);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, &f.mul(c1, c2));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Form<F> {
        let mut acc = Form::constant(&self.field, self.space, self.field.one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = f.mul(&t, x);
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    pub fn map_field<G: Field>(&self, field: &G, g: impl Fn(&F::Elem) -> G::Elem) -> Form<G> {
        let mut out = Form::zero(field, self.space, self.degree);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), &g(c));
        }
        out
    }

    /// Coefficients of a linear form on a single-graded space.
    pub fn linear_coeffs(&self) -> Result<Vec<F::Elem>, FormError> {
        if self.degree != Degree::Single(1) {
            return Err(FormError::NotLinear(self.degree));
        }
        Ok((0..self.space.nvars())
            .map(|i| {
                let mut e = vec![0; self.space.nvars()];
                e[i] = 1;
                self.coeff(&e)
            })
            .collect())
    }
}

impl<F: ReduceMod> Form<F> {
    pub fn reduce(&self, fp: &PrimeField) -> Result<Form<PrimeField>, AlgebraError> {
        let mut out = Form::zero(fp, self.space, self.degree);
        for (e, c) in &self.terms {
            let v = self
                .field
                .reduce(c, fp)
                .ok_or(AlgebraError::DenominatorVanishes(fp.modulus()))?;
            out.add_term(e.clone(), &v);
        }
        Ok(out)
    }
}

/// Key used for exponents in serialized forms: digits concatenated, or
/// comma separated once some exponent exceeds 9.
pub fn exponent_key(e: &[u32]) -> String {
    if e.iter().all(|&x| x < 10) {
        e.iter().map(|x| x.to_string()).collect()
    } else {
        e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

pub fn parse_exponent_key(s: &str, nvars: usize) -> Result<Exponent, FormError> {
    let bad = || FormError::BadExponent(s.to_string());
    let e: Exponent = if s.contains(',') {
        s.split(',')
            .map(|x| x.trim().parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?
    } else {
        s.chars()
            .map(|c| c.to_digit(10).ok_or_else(bad))
            .collect::<Result<_, _>>()?
    };
    if e.len() != nvars {
        return Err(bad());
    }
    Ok(e)
}
