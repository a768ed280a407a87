//! Sparse multivariate polynomials, enough for `𝕜[s₁, …, s_m]` with small `m`.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F: Field> {
    field: F,
    nvars: usize,
    /// Exponent vector to nonzero coefficient.
    terms: BTreeMap<Vec<u32>, F::Elem>,
}

impl<F: Field> Poly<F> {
    pub fn zero(field: &F, nvars: usize) -> Poly<F> {
        Poly {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &F, nvars: usize, c: F::Elem) -> Poly<F> {
        let mut p = Poly::zero(field, nvars);
        if !field.is_zero(&c) {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(field: &F, nvars: usize) -> Poly<F> {
        Poly::constant(field, nvars, field.one())
    }

    pub fn var(field: &F, nvars: usize, i: usize) -> Poly<F> {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Poly::zero(field, nvars);
        p.terms.insert(e, field.one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &F::Elem)> {
        self.terms.iter()
    }

    /// The coefficient if the polynomial is constant.
    pub fn as_constant(&self) -> Option<F::Elem> {
        match self.terms.len() {
            0 => Some(self.field.zero()),
            1 => self.terms.get(&vec![0; self.nvars]).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, e: Vec<u32>, c: F::Elem) {
        let f = &self.field;
        let v = match self.terms.remove(&e) {
            Some(old) => f.add(&old, &c),
            None => c,
        };
        if !f.is_zero(&v) {
            self.terms.insert(e, v);
        }
    }

    pub fn add(&self, other: &Poly<F>) -> Poly<F> {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly<F> {
        self.scale(&self.field.neg(&self.field.one()))
    }

    pub fn sub(&self, other: &Poly<F>) -> Poly<F> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F::Elem) -> Poly<F> {
        let mut out = Poly::zero(&self.field, self.nvars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), self.field.mul(v, c));
        }
        out
    }

    pub fn mul(&self, other: &Poly<F>) -> Poly<F> {
        let f = &self.field;
        let mut out = Poly::zero(f, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, f.mul(c1, c2));
            }
        }
        out
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        self.terms.iter().fold(f.zero(), |acc, (e, c)| {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = f.mul(&t, x);
                }
            }
            f.add(&acc, &t)
        })
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(out, " + ")?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        format!("s{}", i + 1)
                    } else {
                        format!("s{}^{k}", i + 1)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(out, "{}", self.field.format(c))?;
            } else if self.field.is_one(c) {
                write!(out, "{}", mono.join("*"))?;
            } else {
                write!(out, "({})*{}", self.field.format(c), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Determinant by cofactor expansion; only for small matrices.
pub fn poly_det<F: Field>(field: &F, nvars: usize, m: &[Vec<Poly<F>>]) -> Poly<F> {
    let n = m.len();
    if n == 0 {
        return Poly::one(field, nvars);
    }
    let mut out = Poly::zero(field, nvars);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly<F>>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let t = m[0][j].mul(&poly_det(field, nvars, &minor));
        out = if j % 2 == 0 { out.add(&t) } else { out.sub(&t) };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rationals;

    #[test]
    fn ring_identities() {
        let f = Rationals;
        let (x, y) = (Poly::var(&f, 2, 0), Poly::var(&f, 2, 1));
        let s = x.add(&y);
        let d = x.sub(&y);
        assert_eq!(s.mul(&d), x.mul(&x).sub(&y.mul(&y)));
        assert!(s.sub(&s).is_zero());
        let v = s.mul(&s).evaluate(&[f.from_i64(2), f.from_i64(3)]);
        assert_eq!(v, f.from_i64(25));
        assert_eq!(s.to_string(), "s2 + s1");
    }

    #[test]
    fn det_of_symbolic_matrix() {
        let f = Rationals;
        let x = Poly::var(&f, 1, 0);
        let one = Poly::one(&f, 1);
        let m = vec![vec![x.clone(), one.clone()], vec![one.clone(), x.clone()]];
        assert_eq!(poly_det(&f, 1, &m), x.mul(&x).sub(&one));
    }
}
