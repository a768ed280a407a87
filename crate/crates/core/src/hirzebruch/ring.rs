//! The algebra `𝕜[s₁, …, s_m][z] / (z^m − s₁z^{m−1} + s₂z^{m−2} − …)` in the
//! basis `1, ẑ, …, ẑ^{m−1}`, symbolically or at a numeric point.

use crate::algebra::{Field, Matrix};

use super::poly::{poly_det, Poly};
use super::{ExtensionData, HirzebruchError};

/// `c₀ + c₁ẑ + … + c_{m−1}ẑ^{m−1}`, always reduced.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientRingElement<F: Field> {
    pub coeffs: Vec<Poly<F>>,
}

/// The ring itself: `s[i]` is `s_{i+1}`, either the variable or its value.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientRing<F: Field> {
    field: F,
    m: usize,
    s: Vec<Poly<F>>,
}

/// Elementary symmetric polynomials `s₁, …, s_m` of the points.
pub fn elementary_symmetric<F: Field>(field: &F, points: &[F::Elem]) -> Vec<F::Elem> {
    let mut e = vec![field.one()];
    for x in points {
        let mut next = e.clone();
        next.push(field.zero());
        for k in 1..next.len() {
            next[k] = field.add(
                &e.get(k).cloned().unwrap_or_else(|| field.zero()),
                &field.mul(x, &e[k - 1]),
            );
        }
        e = next;
    }
    e[1..].to_vec()
}

impl<F: Field> QuotientRing<F> {
    /// Over `𝕜[s₁, …, s_m]`.
    pub fn symbolic(field: &F, m: usize) -> QuotientRing<F> {
        QuotientRing {
            field: field.clone(),
            m,
            s: (0..m).map(|i| Poly::var(field, m, i)).collect(),
        }
    }

    /// At the point `s = σ(x̄)`, where `p(z) = ∏ (z − x_j)`.
    pub fn at_points(field: &F, points: &[F::Elem]) -> QuotientRing<F> {
        let m = points.len();
        QuotientRing {
            field: field.clone(),
            m,
            s: elementary_symmetric(field, points)
                .into_iter()
                .map(|c| Poly::constant(field, m, c))
                .collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn s(&self) -> &[Poly<F>] {
        &self.s
    }

    fn zero_poly(&self) -> Poly<F> {
        Poly::zero(&self.field, self.m)
    }

    pub fn constant(&self, c: F::Elem) -> QuotientRingElement<F> {
        let mut coeffs = vec![self.zero_poly(); self.m];
        coeffs[0] = Poly::constant(&self.field, self.m, c);
        QuotientRingElement { coeffs }
    }

    pub fn one(&self) -> QuotientRingElement<F> {
        self.constant(self.field.one())
    }

    pub fn z(&self) -> QuotientRingElement<F> {
        self.reduce(vec![self.zero_poly(), Poly::one(&self.field, self.m)])
    }

    /// Numeric coefficients `c₀, …` (shorter lists are padded with zeros).
    pub fn from_scalars(&self, c: &[F::Elem]) -> QuotientRingElement<F> {
        self.reduce(
            c.iter()
                .map(|x| Poly::constant(&self.field, self.m, x.clone()))
                .collect(),
        )
    }

    pub fn from_polys(&self, c: Vec<Poly<F>>) -> QuotientRingElement<F> {
        self.reduce(c)
    }

    /// Coefficient of `ẑ^j` in `ẑ^m`, namely `(−1)^{m−j+1} s_{m−j}`.
    fn top(&self, j: usize) -> Poly<F> {
        let s = &self.s[self.m - j - 1];
        if (self.m - j + 1).is_multiple_of(2) {
            s.clone()
        } else {
            s.neg()
        }
    }

    /// Canonical form of `Σ c_k z^k`.
    pub fn reduce(&self, mut c: Vec<Poly<F>>) -> QuotientRingElement<F> {
        let m = self.m;
        while c.len() > m {
            let lead = c.pop().expect("nonempty");
            if lead.is_zero() {
                continue;
            }
            let d = c.len() - m;
            for j in 0..m {
                c[d + j] = c[d + j].add(&lead.mul(&self.top(j)));
            }
        }
        c.resize(m, self.zero_poly());
        QuotientRingElement { coeffs: c }
    }

    pub fn add(&self, a: &QuotientRingElement<F>, b: &QuotientRingElement<F>) -> QuotientRingElement<F> {
        QuotientRingElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x.add(y)).collect(),
        }
    }

    pub fn mul(&self, a: &QuotientRingElement<F>, b: &QuotientRingElement<F>) -> QuotientRingElement<F> {
        let mut c = vec![self.zero_poly(); 2 * self.m - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].add(&x.mul(y));
            }
        }
        self.reduce(c)
    }

    /// Matrix of multiplication by `t`: column `k` holds `t·ẑ^k`.
    pub fn multiplication_matrix(&self, t: &QuotientRingElement<F>) -> Vec<Vec<Poly<F>>> {
        let mut cols = Vec::with_capacity(self.m);
        let mut cur = t.clone();
        let z = self.z();
        for _ in 0..self.m {
            cols.push(cur.coeffs.clone());
            cur = self.mul(&cur, &z);
        }
        (0..self.m)
            .map(|i| (0..self.m).map(|k| cols[k][i].clone()).collect())
            .collect()
    }

    /// The norm `det(t·)`, which is `∏ t(x_j)` at a numeric point.
    pub fn norm(&self, t: &QuotientRingElement<F>) -> Poly<F> {
        poly_det(&self.field, self.m, &self.multiplication_matrix(t))
    }

    pub fn is_invertible(&self, t: &QuotientRingElement<F>) -> bool {
        !self.norm(t).is_zero()
    }

    /// Numeric multiplication matrix; fails on a symbolic ring.
    pub fn numeric_matrix(&self, t: &QuotientRingElement<F>) -> Result<Matrix<F>, HirzebruchError> {
        let m = self.multiplication_matrix(t);
        let mut out = Matrix::zeros(&self.field, self.m, self.m);
        for (i, row) in m.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                let c = p
                    .as_constant()
                    .ok_or_else(|| HirzebruchError::Precondition("symbolic element where numeric required".into()))?;
                out.set(i, j, c);
            }
        }
        Ok(out)
    }

    /// `t(x)` at a numeric point `x` (not necessarily a root of `p`).
    pub fn value_at(&self, t: &QuotientRingElement<F>, s_point: &[F::Elem], x: &F::Elem) -> F::Elem {
        let f = &self.field;
        t.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), &c.evaluate(s_point)))
    }

    /// Substitutes `s = σ(points)`.
    pub fn specialize(&self, t: &QuotientRingElement<F>, points: &[F::Elem]) -> QuotientRingElement<F> {
        let ring = QuotientRing::at_points(&self.field, points);
        let s = elementary_symmetric(&self.field, points);
        QuotientRingElement {
            coeffs: t
                .coeffs
                .iter()
                .map(|c| Poly::constant(&self.field, ring.m, c.evaluate(&s)))
                .collect(),
        }
    }
}

/// Extension data with entries in `𝕜[s₁, …, s_m]`: two `r × m` matrices
/// whose columns are the `ẑ^k` components.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicExtension<F: Field> {
    pub r: usize,
    pub m: usize,
    pub left: Vec<Vec<Poly<F>>>,
    pub right: Vec<Vec<Poly<F>>>,
}

/// Symbolic computations are supported up to this charge.
pub const SYMBOLIC_MAX_CHARGE: usize = 3;

impl<F: Field> SymbolicExtension<F> {
    /// Constant polynomials.
    pub fn lift(e: &ExtensionData<F>) -> SymbolicExtension<F> {
        let f = e.field();
        let conv = |a: &Matrix<F>| {
            (0..a.rows())
                .map(|i| {
                    (0..a.cols())
                        .map(|j| Poly::constant(f, e.m(), a.get(i, j).clone()))
                        .collect()
                })
                .collect()
        };
        SymbolicExtension {
            r: e.r(),
            m: e.m(),
            left: conv(e.left()),
            right: conv(e.right()),
        }
    }

    /// Substitutes `s = σ(points)` and attaches the points.
    pub fn evaluate(&self, field: &F, points: &[F::Elem]) -> Result<ExtensionData<F>, HirzebruchError> {
        let s = elementary_symmetric(field, points);
        let conv = |a: &Vec<Vec<Poly<F>>>| Matrix::from_fn(field, self.r, self.m, |i, j| a[i][j].evaluate(&s));
        ExtensionData::new(field, points.to_vec(), conv(&self.left), conv(&self.right))
    }
}

/// `t·e`: every row of both blocks, read as an element of the quotient
/// ring, is multiplied by `t`.
pub fn t_action_symbolic<F: Field>(
    ring: &QuotientRing<F>,
    t: &QuotientRingElement<F>,
    e: &SymbolicExtension<F>,
) -> Result<SymbolicExtension<F>, HirzebruchError> {
    if ring.degree() != e.m || ring.degree() > SYMBOLIC_MAX_CHARGE {
        return Err(HirzebruchError::Precondition(format!(
            "symbolic action needs m = {} at most {SYMBOLIC_MAX_CHARGE}",
            e.m
        )));
    }
    if !ring.is_invertible(t) {
        return Err(HirzebruchError::NotInvertible);
    }
    let act = |rows: &Vec<Vec<Poly<F>>>| {
        rows.iter()
            .map(|row| ring.mul(t, &QuotientRingElement { coeffs: row.clone() }).coeffs)
            .collect()
    };
    Ok(SymbolicExtension {
        r: e.r,
        m: e.m,
        left: act(&e.left),
        right: act(&e.right),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rationals;

    #[test]
    fn z_times_linear_for_m2() {
        let f = Rationals;
        let ring = QuotientRing::symbolic(&f, 2);
        let (c0, c1) = (
            Poly::constant(&f, 2, f.from_i64(3)),
            Poly::constant(&f, 2, f.from_i64(5)),
        );
        let v = ring.from_polys(vec![c0.clone(), c1.clone()]);
        let w = ring.mul(&ring.z(), &v);
        let (s1, s2) = (Poly::var(&f, 2, 0), Poly::var(&f, 2, 1));
        assert_eq!(w.coeffs[0], c1.mul(&s2).neg());
        assert_eq!(w.coeffs[1], c0.add(&c1.mul(&s1)));
    }

    #[test]
    fn roots_satisfy_the_relation() {
        let f = Rationals;
        let pts: Vec<_> = [2, -1, 3].iter().map(|&x| f.from_i64(x)).collect();
        assert_eq!(
            elementary_symmetric(&f, &pts),
            vec![f.from_i64(4), f.from_i64(1), f.from_i64(-6)]
        );
        let ring = QuotientRing::at_points(&f, &pts);
        let z3 = ring.mul(&ring.z(), &ring.mul(&ring.z(), &ring.z()));
        let s = elementary_symmetric(&f, &pts);
        for x in &pts {
            let lhs = ring.value_at(&z3, &s, x);
            assert_eq!(lhs, f.mul(x, &f.mul(x, x)));
        }
        // norm of z is the product of the roots
        assert_eq!(ring.norm(&ring.z()).as_constant().unwrap(), f.from_i64(-6));
    }

    #[test]
    fn symbolic_associativity_m3() {
        let f = Rationals;
        let ring = QuotientRing::symbolic(&f, 3);
        let s = ring.s().to_vec();
        let a = ring.from_polys(vec![s[0].clone(), Poly::one(&f, 3), s[2].clone()]);
        let b = ring.from_polys(vec![Poly::one(&f, 3), s[1].clone(), Poly::var(&f, 3, 0)]);
        let c = ring.z();
        assert_eq!(ring.mul(&a, &ring.mul(&b, &c)), ring.mul(&ring.mul(&a, &b), &c));
    }

    #[test]
    fn symbolic_action_specializes_to_numeric() {
        use crate::hirzebruch::t_action;
        use rand::SeedableRng;
        let f = Rationals;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for m in 2..=3 {
            let e = ExtensionData::random(&f, 2, m, &mut rng, 4).unwrap();
            let ring = QuotientRing::symbolic(&f, m);
            let mut c = vec![Poly::one(&f, m), ring.s()[0].clone()];
            c.resize(m, Poly::zero(&f, m));
            let t = ring.from_polys(c);
            let sym = t_action_symbolic(&ring, &t, &SymbolicExtension::lift(&e)).unwrap();
            let numeric = t_action(&ring.specialize(&t, e.points()), &e).unwrap();
            assert_eq!(sym.evaluate(&f, e.points()).unwrap(), numeric);
        }
    }
}
