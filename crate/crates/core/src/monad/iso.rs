//! Isomorphisms of monads.

use rand::Rng;

use crate::algebra::{random_small, Field, Matrix};

use super::Monad;

/// `(g_V, g_C, g_W)` with `g_C ε₁ = ε₂ g_V` and `q₂ g_C = g_W q₁`.
#[derive(Clone, Debug, PartialEq)]
pub struct MonadIsomorphism<F: Field> {
    pub g_v: Matrix<F>,
    pub g_c: Matrix<F>,
    pub g_w: Matrix<F>,
}

/// Linear system whose solutions are the morphisms of monads `m1 → m2`.
/// Unknowns are ordered `g_V`, `g_C`, `g_W`, each row-major.
fn morphism_system<F: Field>(m1: &Monad<F>, m2: &Monad<F>) -> Matrix<F> {
    let f = m1.field();
    let (n, m) = (m1.n, m1.middle());
    let (ov, oc, ow) = (0, n * n, n * n + m * m);
    let nvars = m1.space.nvars();
    let e1 = m1.epsilon_coefficients();
    let e2 = m2.epsilon_coefficients();
    let q1 = m1.q_coefficients();
    let q2 = m2.q_coefficients();
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for k in 0..nvars {
        // (g_C E1 - E2 g_V)_{a,j}
        for a in 0..m {
            for j in 0..n {
                let mut row = vec![f.zero(); ow + n * n];
                for b in 0..m {
                    row[oc + a * m + b] = f.add(&row[oc + a * m + b], e1[k].get(b, j));
                }
                for l in 0..n {
                    row[ov + l * n + j] = f.sub(&row[ov + l * n + j], e2[k].get(a, l));
                }
                rows.push(row);
            }
        }
        // (Q2 g_C - g_W Q1)_{i,a}
        for i in 0..n {
            for a in 0..m {
                let mut row = vec![f.zero(); ow + n * n];
                for b in 0..m {
                    row[oc + b * m + a] = f.add(&row[oc + b * m + a], q2[k].get(i, b));
                }
                for l in 0..n {
                    row[ow + i * n + l] = f.sub(&row[ow + i * n + l], q1[k].get(l, a));
                }
                rows.push(row);
            }
        }
    }
    Matrix::from_rows(f, rows).expect("rows have equal length")
}

fn split<F: Field>(f: &F, v: &[F::Elem], n: usize, m: usize) -> MonadIsomorphism<F> {
    let block = |off: usize, k: usize| Matrix::from_fn(f, k, k, |i, j| v[off + i * k + j].clone());
    MonadIsomorphism {
        g_v: block(0, n),
        g_c: block(n * n, m),
        g_w: block(n * n + m * m, n),
    }
}

/// Dimension of the space of morphisms of monads `m1 → m2`, which equals
/// `dim Hom(F₁, F₂)`.
pub fn morphism_dimension<F: Field>(m1: &Monad<F>, m2: &Monad<F>) -> usize {
    let s = morphism_system(m1, m2);
    s.cols() - s.rank()
}

/// Searches the solution space of the intertwining equations for an
/// element with all three blocks invertible. Random combinations of a
/// kernel basis are tried `attempts` times; the solution is scaled so its
/// first nonzero entry is one.
pub fn monad_isomorphic<F: Field, R: Rng>(
    m1: &Monad<F>,
    m2: &Monad<F>,
    rng: &mut R,
    attempts: usize,
) -> Option<MonadIsomorphism<F>> {
    if (m1.r, m1.n, m1.space) != (m2.r, m2.n, m2.space) {
        return None;
    }
    let f = m1.field();
    let (n, m) = (m1.n, m1.middle());
    let kernel = morphism_system(m1, m2).kernel_vectors();
    if kernel.is_empty() {
        return None;
    }
    for attempt in 0..attempts.max(1) {
        let v: Vec<F::Elem> = if kernel.len() == 1 {
            kernel[0].clone()
        } else {
            let coeffs: Vec<F::Elem> = (0..kernel.len())
                .map(|i| {
                    if attempt == 0 && i > 0 {
                        f.zero()
                    } else {
                        random_small(f, rng, 5)
                    }
                })
                .collect();
            (0..kernel[0].len())
                .map(|j| {
                    kernel
                        .iter()
                        .zip(&coeffs)
                        .fold(f.zero(), |acc, (k, c)| f.add(&acc, &f.mul(c, &k[j])))
                })
                .collect()
        };
        let Some(lead) = v.iter().find(|x| !f.is_zero(x)) else {
            continue;
        };
        let inv = f.inv(lead).expect("nonzero");
        let v: Vec<F::Elem> = v.iter().map(|x| f.mul(x, &inv)).collect();
        let g = split(f, &v, n, m);
        if g.g_v.is_invertible() && g.g_c.is_invertible() && g.g_w.is_invertible() {
            return Some(g);
        }
        if kernel.len() == 1 {
            break;
        }
    }
    None
}
