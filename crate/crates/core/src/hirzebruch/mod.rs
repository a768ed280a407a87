//! Extension data for bundles on Hirzebruch surfaces and the two group
//! actions on it, with the quadric `P¹ × P¹` realized geometrically.
//!
//! A bundle `V` is an extension `0 → π*L → V → ⊕_j O_{π⁻¹(x_j)}(−1) → 0`
//! with `L = O(−a)^{r−ρ} ⊕ O(−a−1)^ρ`, `a = ⌊m/r⌋`, `ρ = m − ar`. The
//! extension class is a pair of `r × m` matrices (`left`, `right`) whose
//! column `k` is the `ẑ^k` component in `𝕜[z]/∏(z − x_j)`; the value at the
//! fibre over `x_j` is therefore `Σ_k col_k x_j^k`. Rows split as
//! `(r − ρ) + ρ` and the leading columns as `(r − ρ) + ρ + ρ`, giving the
//! blocks `[I]` to `[VI]`.

mod bundle;
pub mod poly;
mod ring;

pub use bundle::{
    build_quadric_bundle, bundle_cohomology, check_table_invariance, cohomology_grid, dual_cohomology,
    riemann_roch_check, QuadricBundlePresentation,
};
pub use ring::{
    elementary_symmetric, t_action_symbolic, QuotientRing, QuotientRingElement, SymbolicExtension, SYMBOLIC_MAX_CHARGE,
};

use rand::Rng;
use serde::Serialize;

use crate::algebra::{random_small, AlgebraError, Field, Matrix};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum HirzebruchError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("points must be {0}")]
    Points(&'static str),
    #[error("expected {what} of shape {expected:?}, got {got:?}")]
    Shape {
        what: &'static str,
        expected: (usize, usize),
        got: (usize, usize),
    },
    #[error("evaluation at fibre {0} is not onto O(1)")]
    NotSurjective(usize),
    #[error("non-generic extension: {0}")]
    NonGeneric(String),
    #[error("element is not invertible")]
    NotInvertible,
}

/// `(a, ρ) = (⌊m/r⌋, m − ar)`.
pub fn generic_splitting(m: usize, r: usize) -> Result<(usize, usize), HirzebruchError> {
    if r < 2 || m < r {
        return Err(HirzebruchError::Precondition(format!(
            "need m >= r >= 2, got m = {m}, r = {r}"
        )));
    }
    Ok((m / r, m % r))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Term1 {
    pub value: i64,
    /// `n″ ≥ r″`, which the stability argument relies on.
    pub precondition_holds: bool,
}

/// `r′(n″ − r″) + r″n′`.
pub fn term1(r1: i64, n1: i64, r2: i64, n2: i64) -> Term1 {
    Term1 {
        value: r1 * (n2 - r2) + r2 * n1,
        precondition_holds: n2 >= r2,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionData<F: Field> {
    field: F,
    r: usize,
    m: usize,
    points: Vec<F::Elem>,
    left: Matrix<F>,
    right: Matrix<F>,
}

impl<F: Field> ExtensionData<F> {
    pub fn new(
        field: &F,
        points: Vec<F::Elem>,
        left: Matrix<F>,
        right: Matrix<F>,
    ) -> Result<ExtensionData<F>, HirzebruchError> {
        let m = points.len();
        let r = left.rows();
        generic_splitting(m, r)?;
        for (what, a) in [("left", &left), ("right", &right)] {
            if (a.rows(), a.cols()) != (r, m) {
                return Err(HirzebruchError::Shape {
                    what,
                    expected: (r, m),
                    got: (a.rows(), a.cols()),
                });
            }
        }
        if points.iter().any(|x| field.is_zero(x)) {
            return Err(HirzebruchError::Points("nonzero"));
        }
        for i in 0..m {
            if points[i + 1..].contains(&points[i]) {
                return Err(HirzebruchError::Points("pairwise distinct"));
            }
        }
        Ok(ExtensionData {
            field: field.clone(),
            r,
            m,
            points,
            left,
            right,
        })
    }

    /// Data given by its values on the fibres: column `j` of `left` and
    /// `right` is the value at `x_j`.
    pub fn from_fibre_values(
        field: &F,
        points: Vec<F::Elem>,
        left: &Matrix<F>,
        right: &Matrix<F>,
    ) -> Result<ExtensionData<F>, HirzebruchError> {
        let inv = vandermonde(field, &points)
            .inverse()
            .ok_or(HirzebruchError::Points("pairwise distinct"))?;
        ExtensionData::new(field, points, left.mul(&inv)?, right.mul(&inv)?)
    }

    /// Random data with small integer points and entries in `[-bound, bound]`.
    pub fn random<R: Rng>(
        field: &F,
        r: usize,
        m: usize,
        rng: &mut R,
        bound: i64,
    ) -> Result<ExtensionData<F>, HirzebruchError> {
        generic_splitting(m, r)?;
        let mut points: Vec<F::Elem> = Vec::with_capacity(m);
        let span = (2 * m as i64).max(bound);
        while points.len() < m {
            let x = field.from_i64(rng.random_range(-span..=span));
            if !field.is_zero(&x) && !points.contains(&x) {
                points.push(x);
            }
        }
        let mut mat = || Matrix::from_fn(field, r, m, |_, _| random_small(field, rng, bound));
        let left = mat();
        let right = mat();
        ExtensionData::new(field, points, left, right)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn r(&self) -> usize {
        self.r
    }
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn points(&self) -> &[F::Elem] {
        &self.points
    }
    pub fn left(&self) -> &Matrix<F> {
        &self.left
    }
    pub fn right(&self) -> &Matrix<F> {
        &self.right
    }

    /// `(a, ρ)`.
    pub fn splitting(&self) -> (usize, usize) {
        (self.m / self.r, self.m % self.r)
    }

    pub fn ring(&self) -> QuotientRing<F> {
        QuotientRing::at_points(&self.field, &self.points)
    }

    /// Values on the fibres, `(left·Vand, right·Vand)`.
    pub fn fibre_values(&self) -> (Matrix<F>, Matrix<F>) {
        let v = vandermonde(&self.field, &self.points);
        (
            self.left.mul(&v).expect("r x m times m x m"),
            self.right.mul(&v).expect("r x m times m x m"),
        )
    }

    /// Multiplication by `ẑ` on each row of `x`:
    /// `col_j(ẑx) = x_{j−1} + (−1)^{m−j+1} s_{m−j} x_{m−1}`.
    pub fn z_shift(&self, x: &Matrix<F>) -> Matrix<F> {
        let f = &self.field;
        let s = elementary_symmetric(f, &self.points);
        let m = self.m;
        Matrix::from_fn(f, x.rows(), m, |i, j| {
            let top = f.mul(&s[m - j - 1], x.get(i, m - 1));
            let top = if (m - j + 1).is_multiple_of(2) {
                top
            } else {
                f.neg(&top)
            };
            if j == 0 {
                top
            } else {
                f.add(x.get(i, j - 1), &top)
            }
        })
    }

    fn block(&self, x: &Matrix<F>, upper: bool, cols: std::ops::Range<usize>) -> Matrix<F> {
        let (_, rho) = self.splitting();
        let rows: Vec<usize> = if upper {
            (0..self.r - rho).collect()
        } else {
            (self.r - rho..self.r).collect()
        };
        x.submatrix(&rows, &cols.collect::<Vec<_>>())
    }

    fn ranges(&self) -> [std::ops::Range<usize>; 3] {
        let (_, rho) = self.splitting();
        let r = self.r;
        [0..r - rho, r - rho..r, r..r + rho]
    }

    /// Block `[I]` … `[VI]` of the left matrix, numbered 1 to 6.
    pub fn left_block(&self, k: usize) -> Matrix<F> {
        let ranges = self.ranges();
        self.block(&self.left, k % 2 == 1, ranges[(k - 1) / 2].clone())
    }

    /// `[II′]`, `[IV′]`, `[VI′]` (`k` = 2, 4, 6): the lower rows of `ẑ·left`
    /// in the column ranges of `[II]`, `[IV]`, `[VI]`.
    pub fn left_block_prime(&self, k: usize) -> Matrix<F> {
        let ranges = self.ranges();
        let zl = self.z_shift(&self.lower(&self.left));
        let rows: Vec<usize> = (0..zl.rows()).collect();
        zl.submatrix(&rows, &ranges[(k - 1) / 2].clone().collect::<Vec<_>>())
    }

    fn lower(&self, x: &Matrix<F>) -> Matrix<F> {
        let (_, rho) = self.splitting();
        x.submatrix(
            &(self.r - rho..self.r).collect::<Vec<_>>(),
            &(0..self.m).collect::<Vec<_>>(),
        )
    }

    fn upper(&self, x: &Matrix<F>) -> Matrix<F> {
        let (_, rho) = self.splitting();
        x.submatrix(&(0..self.r - rho).collect::<Vec<_>>(), &(0..self.m).collect::<Vec<_>>())
    }

    fn with(&self, left: Matrix<F>, right: Matrix<F>) -> ExtensionData<F> {
        ExtensionData {
            left,
            right,
            ..self.clone()
        }
    }
}

/// `V[k][j] = x_j^k`.
pub fn vandermonde<F: Field>(field: &F, points: &[F::Elem]) -> Matrix<F> {
    let m = points.len();
    let mut v = Matrix::zeros(field, m, m);
    for (j, x) in points.iter().enumerate() {
        let mut p = field.one();
        for k in 0..m {
            v.set(k, j, p.clone());
            p = field.mul(&p, x);
        }
    }
    v
}

/// `w = [[A, H₀ + zH₁], [0, B]]` in `Aut(L)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AutLElement<F: Field> {
    pub a: Matrix<F>,
    pub b: Matrix<F>,
    pub h0: Matrix<F>,
    pub h1: Matrix<F>,
}

impl<F: Field> AutLElement<F> {
    pub fn new(a: Matrix<F>, b: Matrix<F>, h0: Matrix<F>, h1: Matrix<F>) -> Result<AutLElement<F>, HirzebruchError> {
        let (p, q) = (a.rows(), b.rows());
        let shapes = [
            ("A", &a, (p, p)),
            ("B", &b, (q, q)),
            ("H0", &h0, (p, q)),
            ("H1", &h1, (p, q)),
        ];
        for (what, x, expected) in shapes {
            if (x.rows(), x.cols()) != expected {
                return Err(HirzebruchError::Shape {
                    what,
                    expected,
                    got: (x.rows(), x.cols()),
                });
            }
        }
        if !a.is_invertible() || !b.is_invertible() {
            return Err(HirzebruchError::NotInvertible);
        }
        Ok(AutLElement { a, b, h0, h1 })
    }

    pub fn identity(field: &F, r: usize, rho: usize) -> AutLElement<F> {
        AutLElement::scalar(field, r, rho, field.one())
    }

    pub fn scalar(field: &F, r: usize, rho: usize, c: F::Elem) -> AutLElement<F> {
        AutLElement {
            a: Matrix::identity(field, r - rho).scale(&c),
            b: Matrix::identity(field, rho).scale(&c),
            h0: Matrix::zeros(field, r - rho, rho),
            h1: Matrix::zeros(field, r - rho, rho),
        }
    }

    /// An element of `U₁*`: `[[1, zH₁], [0, 1]]`.
    pub fn unipotent(field: &F, h1: Matrix<F>) -> AutLElement<F> {
        let (p, q) = (h1.rows(), h1.cols());
        AutLElement {
            a: Matrix::identity(field, p),
            b: Matrix::identity(field, q),
            h0: Matrix::zeros(field, p, q),
            h1,
        }
    }

    pub fn random<R: Rng>(field: &F, r: usize, rho: usize, rng: &mut R, bound: i64) -> AutLElement<F> {
        let mut inv = |k: usize| loop {
            let g = Matrix::from_fn(field, k, k, |_, _| random_small(field, rng, bound));
            if g.is_invertible() {
                return g;
            }
        };
        let (a, b) = (inv(r - rho), inv(rho));
        let h0 = Matrix::from_fn(field, r - rho, rho, |_, _| random_small(field, rng, bound));
        let h1 = Matrix::from_fn(field, r - rho, rho, |_, _| random_small(field, rng, bound));
        AutLElement { a, b, h0, h1 }
    }

    pub fn is_identity(&self) -> bool {
        let f = self.a.field();
        self.a == Matrix::identity(f, self.a.rows())
            && self.b == Matrix::identity(f, self.b.rows())
            && self.h0.is_zero()
            && self.h1.is_zero()
    }

    /// `self · other`.
    pub fn compose(&self, other: &AutLElement<F>) -> AutLElement<F> {
        let mm = |x: &Matrix<F>, y: &Matrix<F>| x.mul(y).expect("compatible blocks");
        let add = |x: Matrix<F>, y: Matrix<F>| x.add(&y).expect("same shape");
        AutLElement {
            a: mm(&self.a, &other.a),
            b: mm(&self.b, &other.b),
            h0: add(mm(&self.a, &other.h0), mm(&self.h0, &other.b)),
            h1: add(mm(&self.a, &other.h1), mm(&self.h1, &other.b)),
        }
    }
}

/// `w × e`: on both matrices, `u ↦ Au + H₀v + H₁(ẑv)` and `v ↦ Bv`, where
/// `u`, `v` are the upper `r − ρ` and lower `ρ` rows. On the leading column
/// ranges this is `w×[I] = A[I] + H₀[II] + H₁[II′]`, `w×[IV] = B[IV]`, etc.
pub fn aut_action<F: Field>(w: &AutLElement<F>, e: &ExtensionData<F>) -> Result<ExtensionData<F>, HirzebruchError> {
    let (_, rho) = e.splitting();
    if w.a.rows() != e.r - rho || w.b.rows() != rho {
        return Err(HirzebruchError::Shape {
            what: "w",
            expected: (e.r - rho, rho),
            got: (w.a.rows(), w.b.rows()),
        });
    }
    let act = |x: &Matrix<F>| -> Result<Matrix<F>, HirzebruchError> {
        let (u, v) = (e.upper(x), e.lower(x));
        let top = w.a.mul(&u)?.add(&w.h0.mul(&v)?)?.add(&w.h1.mul(&e.z_shift(&v))?)?;
        Ok(top.vstack(&w.b.mul(&v)?)?)
    };
    Ok(e.with(act(&e.left)?, act(&e.right)?))
}

/// The element of `U₁*` with `H₁ = −[III]·[IV′]⁻¹`, which moves `e` into
/// the slice `[III] = 0`, and the moved data.
pub fn normalize_u1_slice<F: Field>(
    e: &ExtensionData<F>,
) -> Result<(AutLElement<F>, ExtensionData<F>), HirzebruchError> {
    let f = e.field();
    let (_, rho) = e.splitting();
    if rho == 0 {
        return Ok((AutLElement::identity(f, e.r, 0), e.clone()));
    }
    let iv = e.left_block_prime(4);
    let inv = iv
        .inverse()
        .ok_or_else(|| HirzebruchError::NonGeneric("[IV'] is singular".into()))?;
    let h1 = e.left_block(3).mul(&inv)?.neg();
    let w = AutLElement::unipotent(f, h1);
    let moved = aut_action(&w, e)?;
    Ok((w, moved))
}

/// `t × e` at the numeric point: every row is multiplied by `t` in the
/// quotient ring, i.e. `e ↦ e·M_tᵀ`. On fibre values this scales the
/// value at `x_j` by `t(x_j)`.
pub fn t_action<F: Field>(
    t: &QuotientRingElement<F>,
    e: &ExtensionData<F>,
) -> Result<ExtensionData<F>, HirzebruchError> {
    let ring = e.ring();
    if t.coeffs.len() != e.m {
        return Err(HirzebruchError::Shape {
            what: "t",
            expected: (1, e.m),
            got: (1, t.coeffs.len()),
        });
    }
    let mt = ring.numeric_matrix(t)?;
    if !mt.is_invertible() {
        return Err(HirzebruchError::NotInvertible);
    }
    let mtt = mt.transpose();
    Ok(e.with(e.left.mul(&mtt)?, e.right.mul(&mtt)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rationals;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(v: i64) -> num_rational::BigRational {
        Rationals.from_i64(v)
    }

    #[test]
    fn splitting_and_term1() {
        assert_eq!(generic_splitting(5, 2).unwrap(), (2, 1));
        assert_eq!(generic_splitting(4, 2).unwrap(), (2, 0));
        assert_eq!(generic_splitting(4, 3).unwrap(), (1, 1));
        assert!(generic_splitting(1, 2).is_err());
        assert_eq!(term1(1, 0, 1, 1).value, 0);
        assert_eq!(term1(2, 1, 1, 1).value, 1);
        let t = term1(1, 1, 1, 0);
        assert_eq!(t.value, 0);
        assert!(!t.precondition_holds);
    }

    #[test]
    fn rejects_bad_points() {
        let f = Rationals;
        let z = Matrix::zeros(&f, 2, 2);
        assert!(ExtensionData::new(&f, vec![q(1), q(1)], z.clone(), z.clone()).is_err());
        assert!(ExtensionData::new(&f, vec![q(0), q(1)], z.clone(), z.clone()).is_err());
        assert!(ExtensionData::new(&f, vec![q(2), q(1)], z.clone(), z).is_ok());
    }

    #[test]
    fn z_shift_matches_fibre_multiplication() {
        let f = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let e = ExtensionData::random(&f, 2, 5, &mut rng, 4).unwrap();
        let shifted = e.z_shift(e.left());
        let v = vandermonde(&f, e.points());
        let vals = e.left().mul(&v).unwrap();
        let svals = shifted.mul(&v).unwrap();
        for j in 0..5 {
            for i in 0..2 {
                assert_eq!(*svals.get(i, j), f.mul(vals.get(i, j), &e.points()[j]));
            }
        }
    }

    #[test]
    fn aut_group_law_and_blocks() {
        let f = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let e = ExtensionData::random(&f, 3, 7, &mut rng, 4).unwrap();
        assert_eq!(e.splitting(), (2, 1));
        let w1 = AutLElement::random(&f, 3, 1, &mut rng, 3);
        let w2 = AutLElement::random(&f, 3, 1, &mut rng, 3);
        let lhs = aut_action(&w1.compose(&w2), &e).unwrap();
        let rhs = aut_action(&w1, &aut_action(&w2, &e).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(aut_action(&AutLElement::identity(&f, 3, 1), &e).unwrap(), e);
        // block formulas
        let we = aut_action(&w1, &e).unwrap();
        let iv = w1.b.mul(&e.left_block(4)).unwrap();
        assert_eq!(we.left_block(4), iv);
        let iii =
            w1.a.mul(&e.left_block(3))
                .unwrap()
                .add(&w1.h0.mul(&e.left_block(4)).unwrap())
                .unwrap()
                .add(&w1.h1.mul(&e.left_block_prime(4)).unwrap())
                .unwrap();
        assert_eq!(we.left_block(3), iii);
        let v =
            w1.a.mul(&e.left_block(5))
                .unwrap()
                .add(&w1.h0.mul(&e.left_block(6)).unwrap())
                .unwrap()
                .add(&w1.h1.mul(&e.left_block_prime(6)).unwrap())
                .unwrap();
        assert_eq!(we.left_block(5), v);
    }

    #[test]
    fn b_only_scales_iv_and_fixes_i() {
        let f = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let e = ExtensionData::random(&f, 2, 5, &mut rng, 4).unwrap();
        let mut w = AutLElement::identity(&f, 2, 1);
        w.b = Matrix::from_i64(&f, &[vec![3]]);
        let we = aut_action(&w, &e).unwrap();
        assert_eq!(we.left_block(1), e.left_block(1));
        assert_eq!(we.left_block(4), e.left_block(4).scale(&q(3)));
    }

    #[test]
    fn slice_normalization() {
        let f = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let e = ExtensionData::random(&f, 2, 5, &mut rng, 4).unwrap();
        let (w, n) = normalize_u1_slice(&e).unwrap();
        assert!(n.left_block(3).is_zero());
        let (w2, n2) = normalize_u1_slice(&n).unwrap();
        assert!(w2.is_identity());
        assert_eq!(n2, n);
        assert!(!w.is_identity());
    }

    #[test]
    fn slice_with_identity_iv_prime() {
        // r = 2, m = 3: ρ = 1 and [IV'] = v_0 - s_2 v_2 for the lower row v
        let f = Rationals;
        let pts = vec![q(1), q(2), q(3)];
        let left = Matrix::from_i64(&f, &[vec![4, 7, 1], vec![1, 5, 0]]);
        let right = Matrix::from_i64(&f, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let e = ExtensionData::new(&f, pts, left, right).unwrap();
        assert_eq!(e.left_block_prime(4), Matrix::from_i64(&f, &[vec![1]]));
        let (w, n) = normalize_u1_slice(&e).unwrap();
        assert_eq!(w.h1, Matrix::from_i64(&f, &[vec![-7]]));
        assert!(n.left_block(3).is_zero());
    }

    #[test]
    fn t_action_scales_fibres() {
        let f = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let e = ExtensionData::random(&f, 2, 4, &mut rng, 4).unwrap();
        let ring = e.ring();
        let t = ring.from_scalars(&[q(2), q(-1), q(1)]);
        let te = t_action(&t, &e).unwrap();
        let (l0, _) = e.fibre_values();
        let (l1, _) = te.fibre_values();
        let s = elementary_symmetric(&f, e.points());
        for (j, x) in e.points().iter().enumerate() {
            let tx = ring.value_at(&t, &s, x);
            for i in 0..2 {
                assert_eq!(*l1.get(i, j), f.mul(&tx, l0.get(i, j)));
            }
        }
        assert_eq!(t_action(&ring.one(), &e).unwrap(), e);
    }
}
