//! Bounded complexes whose terms are sums of line bundles.

use crate::algebra::{AlgebraError, Field, PrimeField, ReduceMod};
use crate::forms::{AmbientSpace, Degree, Form, FormMatrix, Substitution};

use super::bott::line_bundle_euler;
use super::CohomologyError;

#[derive(Clone, Debug, PartialEq)]
pub struct LineBundleComplex<F: Field> {
    field: F,
    space: AmbientSpace,
    offset: i32,
    terms: Vec<Vec<Degree>>,
    maps: Vec<FormMatrix<F>>,
}

impl<F: Field> LineBundleComplex<F> {
    /// Checks shapes, degrees and `d ∘ d = 0`.
    pub fn new(
        field: &F,
        space: AmbientSpace,
        offset: i32,
        terms: Vec<Vec<Degree>>,
        maps: Vec<FormMatrix<F>>,
    ) -> Result<LineBundleComplex<F>, CohomologyError> {
        let c = LineBundleComplex::unchecked(field, space, offset, terms, maps);
        c.check_shapes()?;
        for (t, pair) in c.maps.windows(2).enumerate() {
            let comp = pair[1].mul(&pair[0])?;
            if !comp.is_zero() {
                return Err(CohomologyError::NotAComplex(t));
            }
        }
        Ok(c)
    }

    pub(crate) fn unchecked(
        field: &F,
        space: AmbientSpace,
        offset: i32,
        terms: Vec<Vec<Degree>>,
        maps: Vec<FormMatrix<F>>,
    ) -> LineBundleComplex<F> {
        LineBundleComplex {
            field: field.clone(),
            space,
            offset,
            terms,
            maps,
        }
    }

    fn check_shapes(&self) -> Result<(), CohomologyError> {
        if self.terms.is_empty() || self.maps.len() + 1 != self.terms.len() {
            return Err(CohomologyError::Malformed(
                "need one map between consecutive terms".into(),
            ));
        }
        for d in self.terms.iter().flatten() {
            self.space.check_degree(*d)?;
        }
        for (t, m) in self.maps.iter().enumerate() {
            let (src, tgt) = (&self.terms[t], &self.terms[t + 1]);
            if m.space() != self.space || m.rows() != tgt.len() || m.cols() != src.len() {
                return Err(CohomologyError::Malformed(format!("map {t} has the wrong shape")));
            }
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    let e = m.get(i, j);
                    if !e.is_zero() && e.degree() != tgt[i] - src[j] {
                        return Err(CohomologyError::Malformed(format!(
                            "entry ({i},{j}) of map {t} has degree {}",
                            e.degree()
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// A single sum of line bundles placed in degree 0.
    pub fn sheaf(field: &F, space: AmbientSpace, twists: Vec<Degree>) -> LineBundleComplex<F> {
        LineBundleComplex::unchecked(field, space, 0, vec![twists], Vec::new())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn space(&self) -> AmbientSpace {
        self.space
    }
    pub fn offset(&self) -> i32 {
        self.offset
    }
    pub fn terms(&self) -> &[Vec<Degree>] {
        &self.terms
    }
    pub fn maps(&self) -> &[FormMatrix<F>] {
        &self.maps
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn term_dims(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.len()).collect()
    }

    pub fn twist(&self, k: Degree) -> LineBundleComplex<F> {
        let terms = self.terms.iter().map(|t| t.iter().map(|&d| d + k).collect()).collect();
        LineBundleComplex::unchecked(&self.field, self.space, self.offset, terms, self.maps.clone())
    }

    /// Twist by an integer, pulled back to bidegree `(k,k)` on the quadric.
    pub fn twist_by(&self, k: i32) -> LineBundleComplex<F> {
        self.twist(self.space.degree(k))
    }

    /// Total complex of the tensor product; blocks of a term are ordered by
    /// the index of the first factor, summands in Kronecker order.
    pub fn tensor(&self, other: &LineBundleComplex<F>) -> Result<LineBundleComplex<F>, CohomologyError> {
        if self.space != other.space {
            return Err(CohomologyError::Malformed(
                "tensor of complexes on different spaces".into(),
            ));
        }
        let field = self.field.clone();
        let (l1, l2) = (self.len(), other.len());
        let total = l1 + l2 - 1;
        // blocks[k] = list of (i, j, start index)
        let mut blocks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); total];
        let mut terms: Vec<Vec<Degree>> = vec![Vec::new(); total];
        for k in 0..total {
            for i in 0..l1 {
                if k < i || k - i >= l2 {
                    continue;
                }
                let j = k - i;
                blocks[k].push((i, j, terms[k].len()));
                for &a in &self.terms[i] {
                    for &b in &other.terms[j] {
                        terms[k].push(a + b);
                    }
                }
            }
        }
        let mut maps = Vec::with_capacity(total - 1);
        for k in 0..total - 1 {
            let (src, tgt) = (&terms[k], &terms[k + 1]);
            let mut m = FormMatrix::from_fn(&field, self.space, tgt.len(), src.len(), |r, c| {
                Form::zero(&field, self.space, tgt[r] - src[c])
            });
            let start_of = |i: usize, j: usize| {
                blocks[k + 1]
                    .iter()
                    .find(|&&(a, b, _)| a == i && b == j)
                    .map(|&(_, _, s)| s)
            };
            for &(i, j, s0) in &blocks[k] {
                let n2 = other.terms[j].len();
                let n1 = self.terms[i].len();
                if i + 1 < l1 {
                    let s1 = start_of(i + 1, j).expect("target block exists");
                    let d1 = &self.maps[i];
                    for a2 in 0..d1.rows() {
                        for a in 0..n1 {
                            let e = d1.get(a2, a);
                            if e.is_zero() {
                                continue;
                            }
                            for b in 0..n2 {
                                m.set(s1 + a2 * n2 + b, s0 + a * n2 + b, e.clone());
                            }
                        }
                    }
                }
                if j + 1 < l2 {
                    let s1 = start_of(i, j + 1).expect("target block exists");
                    let d2 = &other.maps[j];
                    let n2t = d2.rows();
                    let negate = (self.offset + i as i32).rem_euclid(2) == 1;
                    for a in 0..n1 {
                        for b2 in 0..n2t {
                            for b in 0..n2 {
                                let e = d2.get(b2, b);
                                if e.is_zero() {
                                    continue;
                                }
                                let v = if negate { e.neg() } else { e.clone() };
                                m.set(s1 + a * n2t + b2, s0 + a * n2 + b, v);
                            }
                        }
                    }
                }
            }
            maps.push(m);
        }
        Ok(LineBundleComplex::unchecked(
            &field,
            self.space,
            self.offset + other.offset,
            terms,
            maps,
        ))
    }

    /// Termwise dual with transposed differentials.
    pub fn dual(&self) -> LineBundleComplex<F> {
        let l = self.len();
        let terms = self
            .terms
            .iter()
            .rev()
            .map(|t| t.iter().map(|&d| -d).collect())
            .collect();
        let maps = (0..l - 1).map(|t| self.maps[l - 2 - t].transpose()).collect();
        LineBundleComplex::unchecked(&self.field, self.space, -(self.offset + l as i32 - 1), terms, maps)
    }

    pub fn restrict(&self, sub: &Substitution<F>) -> Result<LineBundleComplex<F>, CohomologyError> {
        if sub.source() != self.space {
            return Err(CohomologyError::Malformed("restriction from the wrong space".into()));
        }
        let terms = self
            .terms
            .iter()
            .map(|t| t.iter().map(|&d| sub.map_degree(d)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let maps = self
            .maps
            .iter()
            .map(|m| m.substitute(sub))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LineBundleComplex::unchecked(
            &self.field,
            sub.target(),
            self.offset,
            terms,
            maps,
        ))
    }

    /// Euler characteristic of the hypercohomology, from the terms.
    pub fn euler_characteristic(&self) -> i64 {
        self.terms
            .iter()
            .enumerate()
            .map(|(t, ds)| {
                let s: i64 = ds.iter().map(|&d| line_bundle_euler(self.space, d)).sum();
                if (self.offset + t as i32).rem_euclid(2) == 0 {
                    s
                } else {
                    -s
                }
            })
            .sum()
    }
}

impl<F: ReduceMod> LineBundleComplex<F> {
    pub fn reduce(&self, fp: &PrimeField) -> Result<LineBundleComplex<PrimeField>, AlgebraError> {
        Ok(LineBundleComplex::unchecked(
            fp,
            self.space,
            self.offset,
            self.terms.clone(),
            self.maps.iter().map(|m| m.reduce(fp)).collect::<Result<_, _>>()?,
        ))
    }
}
