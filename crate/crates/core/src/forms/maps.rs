//! Induced maps on cohomology of sums of line bundles.

use std::collections::HashMap;

use crate::algebra::{Field, Matrix};

use super::fmatrix::FormMatrix;
use super::space::{monomial_basis, AmbientSpace, Degree, Exponent};
use super::FormError;

struct BasisCache {
    space: AmbientSpace,
    bases: HashMap<Degree, (Vec<Exponent>, HashMap<Exponent, usize>)>,
}

impl BasisCache {
    fn new(space: AmbientSpace) -> BasisCache {
        BasisCache {
            space,
            bases: HashMap::new(),
        }
    }

    fn get(&mut self, d: Degree) -> &(Vec<Exponent>, HashMap<Exponent, usize>) {
        let space = self.space;
        self.bases.entry(d).or_insert_with(|| {
            let b = monomial_basis(space, d);
            let idx = b.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
            (b, idx)
        })
    }
}

/// Matrix of `H^0(⊕ O(source_j)) → H^0(⊕ O(target_i))`. Entry `(i,j)` of
/// `a` must be zero or of degree `target_i - source_j`.
pub fn mult_map_graded<F: Field>(
    a: &FormMatrix<F>,
    source: &[Degree],
    target: &[Degree],
) -> Result<Matrix<F>, FormError> {
    if a.rows() != target.len() || a.cols() != source.len() {
        return Err(FormError::Shape("twists do not match the matrix".into()));
    }
    let space = a.space();
    let f = a.field();
    let mut cache = BasisCache::new(space);
    let row_off: Vec<usize> = prefix(target.iter().map(|&d| cache.get(d).0.len()));
    let col_off: Vec<usize> = prefix(source.iter().map(|&d| cache.get(d).0.len()));
    let mut m = Matrix::zeros(f, *row_off.last().unwrap(), *col_off.last().unwrap());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let entry = a.get(i, j);
            if entry.is_zero() {
                continue;
            }
            if entry.degree() != target[i] - source[j] {
                return Err(FormError::DegreeMismatch(entry.degree(), target[i] - source[j]));
            }
            let src = cache.get(source[j]).0.clone();
            let tgt = &cache.get(target[i]).1;
            for (c, g) in src.iter().enumerate() {
                for (h, coeff) in entry.terms() {
                    let e: Exponent = g.iter().zip(h).map(|(x, y)| x + y).collect();
                    let r = tgt[&e];
                    let cur = m.get(row_off[i] + r, col_off[j] + c).clone();
                    m.set(row_off[i] + r, col_off[j] + c, f.add(&cur, coeff));
                }
            }
        }
    }
    Ok(m)
}

fn prefix(sizes: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut out = vec![0];
    for s in sizes {
        out.push(out.last().unwrap() + s);
    }
    out
}

/// Multiplication map `H^0(O(d))^cols → H^0(O(d+e))^rows` for a matrix of
/// forms of common degree `e`. Rows are grouped by output summand, columns
/// by input summand, monomials in basis order within each group.
pub fn mult_map<F: Field>(a: &FormMatrix<F>, d: Degree) -> Result<Matrix<F>, FormError> {
    let e = shared_degree(a)?;
    mult_map_graded(a, &vec![d; a.cols()], &vec![d + e; a.rows()])
}

/// Top-degree analogue of [`mult_map_graded`]: `H^top(⊕ O(source_j)) →
/// H^top(⊕ O(target_i))`, where `H^top(O(d))` carries the basis dual to
/// the monomial basis of `H^0(O(K - d))`.
pub fn serre_dual_map_graded<F: Field>(
    a: &FormMatrix<F>,
    source: &[Degree],
    target: &[Degree],
) -> Result<Matrix<F>, FormError> {
    let k = a.space().canonical();
    let src: Vec<Degree> = target.iter().map(|&t| k - t).collect();
    let tgt: Vec<Degree> = source.iter().map(|&s| k - s).collect();
    Ok(mult_map_graded(&a.transpose(), &src, &tgt)?.transpose())
}

/// Top-degree cohomology map induced by a matrix of forms of common degree
/// `e` on `O(d)^cols`.
pub fn serre_dual_map<F: Field>(a: &FormMatrix<F>, d: Degree) -> Result<Matrix<F>, FormError> {
    let e = shared_degree(a)?;
    serre_dual_map_graded(a, &vec![d; a.cols()], &vec![d + e; a.rows()])
}

fn shared_degree<F: Field>(a: &FormMatrix<F>) -> Result<Degree, FormError> {
    match a.degree() {
        Some(d) => Ok(d),
        None if a.rows() * a.cols() == 0 => Ok(a.space().zero_degree()),
        None => {
            let nonzero: Vec<Degree> = a
                .entries()
                .iter()
                .filter(|e| !e.is_zero())
                .map(|e| e.degree())
                .collect();
            match nonzero.first() {
                Some(&d) if nonzero.iter().all(|&x| x == d) => Ok(d),
                Some(&d) => Err(FormError::Inhomogeneous { degree: d }),
                None => Ok(a.get(0, 0).degree()),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rationals;
    use crate::forms::Form;

    #[test]
    fn multiplication_by_a_variable() {
        let q = Rationals;
        let a = FormMatrix::from_fn(&q, AmbientSpace::P3, 1, 1, |_, _| Form::var(&q, AmbientSpace::P3, 0));
        let m = mult_map(&a, Degree::Single(0)).unwrap();
        assert_eq!((m.rows(), m.cols()), (4, 1));
        assert_eq!(m.column(0), vec![q.one(), q.zero(), q.zero(), q.zero()]);
    }

    #[test]
    fn identity_serre_dual() {
        let q = Rationals;
        let a = FormMatrix::constant(AmbientSpace::P3, &Matrix::identity(&q, 1));
        let m = serre_dual_map(&a, Degree::Single(-4)).unwrap();
        assert_eq!(m, Matrix::identity(&q, 1));
        let m2 = serre_dual_map(&a, Degree::Single(-6)).unwrap();
        assert_eq!(m2, Matrix::identity(&q, 10));
    }

    #[test]
    fn negative_twist_gives_empty_map() {
        let q = Rationals;
        let a = FormMatrix::from_fn(&q, AmbientSpace::P2, 2, 3, |_, _| Form::var(&q, AmbientSpace::P2, 1));
        let m = mult_map(&a, Degree::Single(-1)).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 0));
    }
}
