//! Seeded sampling of instanton monads over ℚ.
//!
//! Three constructions are used, depending on `(r, n)`:
//!
//! * `RandomEpsilon`: random ε, then rows of q drawn from the solutions of
//!   `v·ε = 0`. There are at least `4r - 2n` independent solutions, so this
//!   needs `3n <= 4r`.
//! * `Linear`: the normal form
//!   `ε = (z1 + z3 B11 + z4 B21; z2 + z3 B12 + z4 B22; z3 J1 + z4 J2)`,
//!   `q = (-(z2 + z3 B12 + z4 B22), z1 + z3 B11 + z4 B21, z3 I1 + z4 I2)`,
//!   where `q·ε = 0` is linear in `(B12, B22, J1, J2)` once
//!   `(B11, B21, I1, I2)` are fixed.
//! * `Symplectic` (rank 2): the same normal form with symmetric `B` and
//!   `I_k = J_kᵀ ω`. Then the equations are linear in the symmetric
//!   unknowns `B12, B22` with a right-hand side quadratic in `J`.
//!
//! Candidates from the last two are moved by a random change of
//! coordinates. Each candidate must carry a surjectivity certificate and
//! a trivializing line.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::primes::random_prime;
use crate::algebra::{primitive_integer_vector, random_small, Field, Matrix, PrimeField, Rationals};
use crate::forms::{mult_map, AmbientSpace, Degree, FormMatrix};

use super::{standing_hypothesis, Monad, MonadError};

type Q = Rationals;
type Elem = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Strategy {
    RandomEpsilon,
    Linear,
    Symplectic,
}

/// The first construction that applies to `(r, n)`.
pub fn strategy_for(r: usize, n: usize) -> Option<Strategy> {
    if !standing_hypothesis(r, n) {
        return None;
    }
    if 3 * n <= 4 * r {
        Some(Strategy::RandomEpsilon)
    } else if 2 * r > n && n * (2 * r - n) >= 4 {
        Some(Strategy::Linear)
    } else if r == 2 && n <= 4 {
        Some(Strategy::Symplectic)
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleOptions {
    pub max_attempts: usize,
    pub strategy: Option<Strategy>,
    /// Coefficients are drawn from `[-bound, bound]`.
    pub bound: i64,
    /// Random lines tried when looking for a trivializing one.
    pub line_trials: usize,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions {
            max_attempts: 20,
            strategy: None,
            bound: 5,
            line_trials: 10,
        }
    }
}

pub fn sample_instanton(r: usize, n: usize, seed: u64) -> Result<Monad<Q>, MonadError> {
    sample_with(r, n, seed, &SampleOptions::default())
}

pub fn sample_with(r: usize, n: usize, seed: u64, opts: &SampleOptions) -> Result<Monad<Q>, MonadError> {
    let strategy = opts
        .strategy
        .or_else(|| strategy_for(r, n))
        .ok_or(MonadError::UnsupportedRange { r, n })?;
    if !standing_hypothesis(r, n) || (strategy == Strategy::Symplectic && r != 2) {
        return Err(MonadError::UnsupportedRange { r, n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fp = PrimeField::new(random_prime(&mut rng))?;
    let b = opts.bound;
    for _ in 0..opts.max_attempts {
        let candidate = match strategy {
            Strategy::RandomEpsilon => random_epsilon(r, n, b, &mut rng),
            Strategy::Linear => linear(r, n, b, &mut rng),
            Strategy::Symplectic => symplectic(n, b, &mut rng),
        };
        let Some((eps, q)) = candidate else {
            continue;
        };
        let mut m = Monad::new(eps, q)?;
        if strategy != Strategy::RandomEpsilon {
            m = m.change_coordinates(&random_invertible(4, 2, &mut rng))?;
        }
        if m.certificate(&fp)?.is_none() {
            continue;
        }
        if m.find_trivializing_line(&mut rng, opts.line_trials)?.is_none() {
            continue;
        }
        return Ok(m);
    }
    Err(MonadError::SamplerExhausted(opts.max_attempts))
}

fn random_matrix<R: Rng>(rows: usize, cols: usize, bound: i64, rng: &mut R) -> Matrix<Q> {
    Matrix::from_fn(&Rationals, rows, cols, |_, _| random_small(&Rationals, rng, bound))
}

fn random_symmetric<R: Rng>(n: usize, bound: i64, rng: &mut R) -> Matrix<Q> {
    let x = random_matrix(n, n, bound, rng);
    x.add(&x.transpose()).expect("square")
}

fn random_invertible<R: Rng>(n: usize, bound: i64, rng: &mut R) -> Matrix<Q> {
    loop {
        let g = random_matrix(n, n, bound, rng);
        if g.is_invertible() {
            return g;
        }
    }
}

/// Random combination of primitive integer generators of a subspace.
fn random_combination<R: Rng>(basis: &[Vec<Elem>], len: usize, bound: i64, rng: &mut R) -> Vec<Elem> {
    let f = Rationals;
    let mut out = vec![f.zero(); len];
    for v in basis {
        let c = random_small(&f, rng, bound);
        for (o, x) in out.iter_mut().zip(primitive_integer_vector(v)) {
            *o = f.add(o, &f.mul(&c, &x));
        }
    }
    out
}

fn random_epsilon<R: Rng>(r: usize, n: usize, bound: i64, rng: &mut R) -> Option<(FormMatrix<Q>, FormMatrix<Q>)> {
    let m = r + 2 * n;
    let e: Vec<Matrix<Q>> = (0..4).map(|_| random_matrix(m, n, bound, rng)).collect();
    let eps = FormMatrix::linear(&Rationals, AmbientSpace::P3, &e).ok()?;
    // columns of the multiplication map are indexed by (a, variable)
    let kernel = mult_map(&eps.transpose(), Degree::Single(1)).ok()?.kernel_vectors();
    if kernel.len() < n {
        return None;
    }
    let mut qk: Vec<Matrix<Q>> = (0..4).map(|_| Matrix::zeros(&Rationals, n, m)).collect();
    for i in 0..n {
        let v = random_combination(&kernel, 4 * m, bound, rng);
        for a in 0..m {
            for (k, c) in qk.iter_mut().enumerate() {
                c.set(i, a, v[a * 4 + k].clone());
            }
        }
    }
    let q = FormMatrix::linear(&Rationals, AmbientSpace::P3, &qk).ok()?;
    Some((eps, q))
}

/// Blocks of the normal form, see the module documentation.
struct NormalForm {
    b11: Matrix<Q>,
    b12: Matrix<Q>,
    b21: Matrix<Q>,
    b22: Matrix<Q>,
    i1: Matrix<Q>,
    i2: Matrix<Q>,
    j1: Matrix<Q>,
    j2: Matrix<Q>,
}

impl NormalForm {
    fn monad(&self) -> Option<(FormMatrix<Q>, FormMatrix<Q>)> {
        let f = Rationals;
        let n = self.b11.rows();
        let r = self.j1.rows();
        let m = r + 2 * n;
        let id = Matrix::identity(&f, n);
        let mut e: Vec<Matrix<Q>> = (0..4).map(|_| Matrix::zeros(&f, m, n)).collect();
        let mut q: Vec<Matrix<Q>> = (0..4).map(|_| Matrix::zeros(&f, n, m)).collect();
        let put = |target: &mut Matrix<Q>, src: &Matrix<Q>, r0: usize, c0: usize, neg: bool| {
            for i in 0..src.rows() {
                for j in 0..src.cols() {
                    let v = src.get(i, j);
                    target.set(r0 + i, c0 + j, if neg { f.neg(v) } else { v.clone() });
                }
            }
        };
        put(&mut e[0], &id, 0, 0, false);
        put(&mut e[1], &id, n, 0, false);
        put(&mut e[2], &self.b11, 0, 0, false);
        put(&mut e[2], &self.b12, n, 0, false);
        put(&mut e[2], &self.j1, 2 * n, 0, false);
        put(&mut e[3], &self.b21, 0, 0, false);
        put(&mut e[3], &self.b22, n, 0, false);
        put(&mut e[3], &self.j2, 2 * n, 0, false);
        put(&mut q[0], &id, 0, n, false);
        put(&mut q[1], &id, 0, 0, true);
        put(&mut q[2], &self.b12, 0, 0, true);
        put(&mut q[2], &self.b11, 0, n, false);
        put(&mut q[2], &self.i1, 0, 2 * n, false);
        put(&mut q[3], &self.b22, 0, 0, true);
        put(&mut q[3], &self.b21, 0, n, false);
        put(&mut q[3], &self.i2, 0, 2 * n, false);
        let eps = FormMatrix::linear(&f, AmbientSpace::P3, &e).ok()?;
        let q = FormMatrix::linear(&f, AmbientSpace::P3, &q).ok()?;
        Some((eps, q))
    }
}

/// Column `(i, j)` of the linear map `Y ↦ [X, Y]` on `n × n` matrices,
/// added into `sys` at row offset `row0` and column offset `col0`.
fn add_commutator(sys: &mut Matrix<Q>, x: &Matrix<Q>, row0: usize, col0: usize) {
    let f = Rationals;
    let n = x.rows();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (r, c) = (row0 + i * n + j, col0 + k * n + j);
                let v = f.add(sys.get(r, c), x.get(i, k));
                sys.set(r, c, v);
                let c = col0 + i * n + k;
                let v = f.sub(sys.get(r, c), x.get(k, j));
                sys.set(r, c, v);
            }
        }
    }
}

/// `J ↦ I J` for `I` of shape `n × r`, unknown `J` of shape `r × n`.
fn add_left_product(sys: &mut Matrix<Q>, i_mat: &Matrix<Q>, row0: usize, col0: usize) {
    let f = Rationals;
    let (n, r) = (i_mat.rows(), i_mat.cols());
    for i in 0..n {
        for j in 0..n {
            for k in 0..r {
                let (row, c) = (row0 + i * n + j, col0 + k * n + j);
                let v = f.add(sys.get(row, c), i_mat.get(i, k));
                sys.set(row, c, v);
            }
        }
    }
}

fn reshape(v: &[Elem], rows: usize, cols: usize) -> Matrix<Q> {
    Matrix::from_fn(&Rationals, rows, cols, |i, j| v[i * cols + j].clone())
}

fn linear<R: Rng>(r: usize, n: usize, bound: i64, rng: &mut R) -> Option<(FormMatrix<Q>, FormMatrix<Q>)> {
    let b11 = random_matrix(n, n, bound, rng);
    let b21 = random_matrix(n, n, bound, rng);
    let i1 = random_matrix(n, r, bound, rng);
    let i2 = random_matrix(n, r, bound, rng);
    let nn = n * n;
    let (o12, o22, oj1, oj2) = (0, nn, 2 * nn, 2 * nn + r * n);
    let mut sys = Matrix::zeros(&Rationals, 3 * nn, 2 * nn + 2 * r * n);
    // [B11, B12] + I1 J1
    add_commutator(&mut sys, &b11, 0, o12);
    add_left_product(&mut sys, &i1, 0, oj1);
    // [B21, B22] + I2 J2
    add_commutator(&mut sys, &b21, nn, o22);
    add_left_product(&mut sys, &i2, nn, oj2);
    // [B11, B22] + [B21, B12] + I1 J2 + I2 J1
    add_commutator(&mut sys, &b11, 2 * nn, o22);
    add_commutator(&mut sys, &b21, 2 * nn, o12);
    add_left_product(&mut sys, &i1, 2 * nn, oj2);
    add_left_product(&mut sys, &i2, 2 * nn, oj1);
    let kernel = sys.kernel_vectors();
    if kernel.is_empty() {
        return None;
    }
    let v = random_combination(&kernel, sys.cols(), bound, rng);
    NormalForm {
        b11,
        b12: reshape(&v[o12..o22], n, n),
        b21,
        b22: reshape(&v[o22..oj1], n, n),
        i1,
        i2,
        j1: reshape(&v[oj1..oj2], r, n),
        j2: reshape(&v[oj2..], r, n),
    }
    .monad()
}

fn omega() -> Matrix<Q> {
    Matrix::from_i64(&Rationals, &[vec![0, 1], vec![-1, 0]])
}

fn symmetric_basis(n: usize) -> Vec<Matrix<Q>> {
    let f = Rationals;
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            out.push(Matrix::from_fn(&f, n, n, |a, b| {
                if (a, b) == (i, j) || (a, b) == (j, i) {
                    f.one()
                } else {
                    f.zero()
                }
            }));
        }
    }
    out
}

fn commutator(x: &Matrix<Q>, y: &Matrix<Q>) -> Matrix<Q> {
    x.mul(y).unwrap().sub(&y.mul(x).unwrap()).unwrap()
}

/// Columns: `B12` then `B22` in the symmetric basis. Rows: the three
/// equations, each an `n × n` block.
fn symplectic_system(b11: &Matrix<Q>, b21: &Matrix<Q>) -> Matrix<Q> {
    let f = Rationals;
    let n = b11.rows();
    let basis = symmetric_basis(n);
    let k = basis.len();
    let nn = n * n;
    let mut sys = Matrix::zeros(&f, 3 * nn, 2 * k);
    for (c, s) in basis.iter().enumerate() {
        let blocks = [
            (0, c, commutator(b11, s)),
            (2 * nn, c, commutator(b21, s)),
            (nn, k + c, commutator(b21, s)),
            (2 * nn, k + c, commutator(b11, s)),
        ];
        for (row0, col, m) in blocks {
            for (t, v) in m.entries().iter().enumerate() {
                sys.set(row0 + t, col, v.clone());
            }
        }
    }
    sys
}

/// Right-hand side `-(J1ᵀωJ1, J2ᵀωJ2, J1ᵀωJ2 + J2ᵀωJ1)`.
fn symplectic_rhs(j1: &Matrix<Q>, j2: &Matrix<Q>) -> Vec<Elem> {
    let f = Rationals;
    let w = omega();
    let pair = |a: &Matrix<Q>, b: &Matrix<Q>| a.transpose().mul(&w).unwrap().mul(b).unwrap();
    let mixed = pair(j1, j2).add(&pair(j2, j1)).unwrap();
    [pair(j1, j1), pair(j2, j2), mixed]
        .iter()
        .flat_map(|m| m.entries().iter().map(|x| f.neg(x)).collect::<Vec<_>>())
        .collect()
}

fn symplectic<R: Rng>(n: usize, bound: i64, rng: &mut R) -> Option<(FormMatrix<Q>, FormMatrix<Q>)> {
    let f = Rationals;
    let b11 = random_symmetric(n, bound, rng);
    let b21 = random_symmetric(n, bound, rng);
    let sys = symplectic_system(&b11, &b21);
    let (mut j1, mut j2) = (random_matrix(2, n, bound, rng), random_matrix(2, n, bound, rng));
    let mut x = sys.solve(&symplectic_rhs(&j1, &j2));
    if x.is_none() {
        // The right-hand side must satisfy the compatibility conditions
        // λ·rhs = 0. They vanish on the rank-one pairs (w u1ᵀ, w u2ᵀ), so
        // along a line through such a pair each condition is t·(L + t Q).
        let compat = sys.left_kernel_vectors();
        let w = random_matrix(2, 1, bound, rng);
        let u1 = random_matrix(1, n, bound, rng);
        let u2 = random_matrix(1, n, bound, rng);
        let p1 = w.mul(&u1).unwrap();
        let p2 = w.mul(&u2).unwrap();
        let d1 = random_matrix(2, n, bound, rng);
        let d2 = random_matrix(2, n, bound, rng);
        let at = |t: i64| {
            let t = f.from_i64(t);
            let a = p1.add(&d1.scale(&t)).unwrap();
            let b = p2.add(&d2.scale(&t)).unwrap();
            let rhs = symplectic_rhs(&a, &b);
            compat
                .iter()
                .map(|l| {
                    l.iter()
                        .zip(&rhs)
                        .fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y)))
                })
                .collect::<Vec<_>>()
        };
        let (g1, gm) = (at(1), at(-1));
        let half = f.inv(&f.from_i64(2)).unwrap();
        let lin: Vec<Elem> = g1.iter().zip(&gm).map(|(a, b)| f.mul(&f.sub(a, b), &half)).collect();
        let quad: Vec<Elem> = g1.iter().zip(&gm).map(|(a, b)| f.mul(&f.add(a, b), &half)).collect();
        let i = quad.iter().position(|x| !f.is_zero(x))?;
        let t = f.neg(&f.div(&lin[i], &quad[i])?);
        if f.is_zero(&t) {
            return None;
        }
        if lin.iter().zip(&quad).any(|(l, q)| !f.is_zero(&f.add(l, &f.mul(&t, q)))) {
            return None;
        }
        j1 = p1.add(&d1.scale(&t)).unwrap();
        j2 = p2.add(&d2.scale(&t)).unwrap();
        x = sys.solve(&symplectic_rhs(&j1, &j2));
    }
    let x = x?;
    let hom = sys.kernel_vectors();
    let shift = random_combination(&hom, x.len(), bound, rng);
    let x: Vec<Elem> = x.iter().zip(&shift).map(|(a, b)| f.add(a, b)).collect();
    let basis = symmetric_basis(n);
    let k = basis.len();
    let combine = |coeffs: &[Elem]| {
        basis
            .iter()
            .zip(coeffs)
            .fold(Matrix::zeros(&f, n, n), |acc, (s, c)| acc.add(&s.scale(c)).unwrap())
    };
    let w = omega();
    NormalForm {
        b12: combine(&x[..k]),
        b22: combine(&x[k..]),
        i1: j1.transpose().mul(&w).unwrap(),
        i2: j2.transpose().mul(&w).unwrap(),
        b11,
        b21,
        j1,
        j2,
    }
    .monad()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategy_ranges() {
        assert_eq!(strategy_for(2, 1), Some(Strategy::RandomEpsilon));
        assert_eq!(strategy_for(2, 2), Some(Strategy::RandomEpsilon));
        assert_eq!(strategy_for(2, 3), Some(Strategy::Symplectic));
        assert_eq!(strategy_for(2, 4), Some(Strategy::Symplectic));
        assert_eq!(strategy_for(3, 4), Some(Strategy::RandomEpsilon));
        assert_eq!(strategy_for(3, 5), Some(Strategy::Linear));
        assert_eq!(strategy_for(2, 5), None);
        assert_eq!(strategy_for(1, 1), None);
    }

    #[test]
    fn deterministic() {
        let a = sample_instanton(2, 2, 7).unwrap();
        let b = sample_instanton(2, 2, 7).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, sample_instanton(2, 2, 8).unwrap());
    }

    #[test]
    fn each_strategy_yields_instantons() {
        let cases = [
            (2, 2, Strategy::RandomEpsilon),
            (2, 2, Strategy::Linear),
            (2, 3, Strategy::Symplectic),
            (2, 4, Strategy::Symplectic),
            (3, 3, Strategy::Linear),
        ];
        for (r, n, s) in cases {
            let opts = SampleOptions {
                strategy: Some(s),
                ..SampleOptions::default()
            };
            let m = sample_with(r, n, 1, &opts).unwrap_or_else(|e| panic!("{r},{n},{s:?}: {e}"));
            assert_eq!((m.rank(), m.charge()), (r, n));
            let h = m.cohomology(-1).unwrap();
            assert_eq!(h, vec![0, n, 0, 0], "{r},{n},{s:?}");
            assert_eq!(m.cohomology(0).unwrap()[1], 2 * n - r);
        }
    }
}
