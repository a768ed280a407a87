//! The real structure `ρ` on P3 and the quaternionic side: ADHM data in
//! four-component complex form, their monads, real lines and the
//! restriction criterion on a pair of planes.

use std::time::Instant;

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{AlgebraError, Field, Gaussian, GaussianRationals as Qi, Matrix};
use crate::checks::{monad_inputs, timed, CheckReport};
use crate::forms::{AmbientSpace, FormError, FormMatrix};
use crate::monad::{monad_isomorphic, morphism_dimension, Line, Monad, MonadError, ValidationReport};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum AdhmError {
    #[error(transparent)]
    Monad(#[from] MonadError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("expected a nonzero point of C^4")]
    BadPoint,
    #[error("expected four {rows}x{cols} matrices")]
    Shape { rows: usize, cols: usize },
    #[error("the charge-one construction needs an even rank, got {0}")]
    OddRank(usize),
    #[error("no nondegenerate data after {0} attempts")]
    Exhausted(usize),
}

/// `J` with `ρ(z) = J z̄`.
pub fn rho_matrix() -> Matrix<Qi> {
    Matrix::from_i64(
        &Qi,
        &[vec![0, 1, 0, 0], vec![-1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, -1, 0]],
    )
}

/// `(z1, z2, z3, z4) ↦ (z̄2, −z̄1, z̄4, −z̄3)`.
pub fn rho_point(z: &[Gaussian]) -> Result<Vec<Gaussian>, AdhmError> {
    let f = Qi;
    if z.len() != 4 || z.iter().all(|x| f.is_zero(x)) {
        return Err(AdhmError::BadPoint);
    }
    Ok(vec![
        f.conj(&z[1]),
        f.neg(&f.conj(&z[0])),
        f.conj(&z[3]),
        f.neg(&f.conj(&z[2])),
    ])
}

/// `ρ̃*F = (conj ρ*F)^∨`. Substituting `z ↦ J z̄` and conjugating the
/// coefficients gives the holomorphic pullback; the dual swaps the maps.
pub fn rho_pullback(m: &Monad<Qi>) -> Result<Monad<Qi>, AdhmError> {
    if m.space() != AmbientSpace::P3 {
        return Err(MonadError::Space(m.space()).into());
    }
    Ok(m.conj().change_coordinates(&rho_matrix())?.dual())
}

/// ADHM data: `ε = Σ L_left⁽ʲ⁾ z_j` with `L_left⁽ʲ⁾` of size `(r+2n)×n`
/// and `q = Σ L_right⁽ʲ⁾ z_j` with `L_right⁽ʲ⁾` of size `n×(r+2n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdhmData {
    r: usize,
    n: usize,
    left: Vec<Matrix<Qi>>,
    right: Vec<Matrix<Qi>>,
}

impl AdhmData {
    /// Checks shapes only; the quaternionic relations may fail.
    pub fn new(r: usize, n: usize, left: Vec<Matrix<Qi>>, right: Vec<Matrix<Qi>>) -> Result<AdhmData, AdhmError> {
        let m = r + 2 * n;
        if n == 0 || left.len() != 4 || left.iter().any(|a| (a.rows(), a.cols()) != (m, n)) {
            return Err(AdhmError::Shape { rows: m, cols: n });
        }
        if right.len() != 4 || right.iter().any(|a| (a.rows(), a.cols()) != (n, m)) {
            return Err(AdhmError::Shape { rows: n, cols: m });
        }
        Ok(AdhmData { r, n, left, right })
    }

    pub fn rank(&self) -> usize {
        self.r
    }
    pub fn charge(&self) -> usize {
        self.n
    }
    pub fn left(&self) -> &[Matrix<Qi>] {
        &self.left
    }
    pub fn right(&self) -> &[Matrix<Qi>] {
        &self.right
    }

    /// Indices `j` (1-based) whose relation fails.
    pub fn constraint_defects(&self) -> Vec<usize> {
        let expected = right_from_left(&self.left);
        (0..4)
            .filter(|&j| expected[j] != self.right[j])
            .map(|j| j + 1)
            .collect()
    }

    pub fn satisfies_constraints(&self) -> bool {
        self.constraint_defects().is_empty()
    }

    pub fn epsilon(&self) -> Result<FormMatrix<Qi>, AdhmError> {
        Ok(FormMatrix::linear(&Qi, AmbientSpace::P3, &self.left)?)
    }

    pub fn q(&self) -> Result<FormMatrix<Qi>, AdhmError> {
        Ok(FormMatrix::linear(&Qi, AmbientSpace::P3, &self.right)?)
    }

    /// `IL(z) = L_left(z)* ⊕ L_right(z)`, a `2n × (r+2n)` matrix.
    pub fn il(&self, z: &[Gaussian]) -> Matrix<Qi> {
        let f = Qi;
        let combine = |ms: &[Matrix<Qi>], c: &dyn Fn(usize) -> Gaussian| {
            ms.iter()
                .enumerate()
                .fold(Matrix::zeros(&f, ms[0].rows(), ms[0].cols()), |acc, (j, a)| {
                    acc.add(&a.scale(&c(j))).expect("equal shapes")
                })
        };
        let top = combine(&self.left, &|j| f.conj(&z[j])).adjoint();
        let bottom = combine(&self.right, &|j| z[j].clone());
        top.vstack(&bottom).expect("equal widths")
    }
}

/// `L_right⁽¹⁾ = (L_left⁽²⁾)*`, `L_right⁽²⁾ = −(L_left⁽¹⁾)*`,
/// `L_right⁽³⁾ = (L_left⁽⁴⁾)*`, `L_right⁽⁴⁾ = −(L_left⁽³⁾)*`.
fn right_from_left(left: &[Matrix<Qi>]) -> Vec<Matrix<Qi>> {
    vec![
        left[1].adjoint(),
        left[0].adjoint().neg(),
        left[3].adjoint(),
        left[2].adjoint().neg(),
    ]
}

/// The inverse relations.
pub fn left_from_right(right: &[Matrix<Qi>]) -> Vec<Matrix<Qi>> {
    vec![
        right[1].adjoint().neg(),
        right[0].adjoint(),
        right[3].adjoint().neg(),
        right[2].adjoint(),
    ]
}

/// Completes `L_left` by the quaternionic relations. `q·ε = 0` is not
/// imposed.
pub fn impose_quaternionic(left: Vec<Matrix<Qi>>) -> Result<AdhmData, AdhmError> {
    let (m, n) = left.first().map(|a| (a.rows(), a.cols())).unwrap_or((0, 0));
    if n == 0 || m < 2 * n {
        return Err(AdhmError::Shape { rows: m, cols: n });
    }
    let right = right_from_left(&left);
    AdhmData::new(m - 2 * n, n, left, right)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AdhmReport {
    pub constraints: bool,
    pub complex: bool,
    pub points_checked: usize,
    /// Points where `IL(z)` is not onto.
    pub il_failures: usize,
    pub validation: Option<ValidationReport>,
    pub issues: Vec<String>,
}

impl AdhmReport {
    pub fn accepted(&self) -> bool {
        self.constraints
            && self.complex
            && self.il_failures == 0
            && self.validation.as_ref().is_some_and(|v| v.is_valid())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdhmConversion {
    /// Present whenever `q·ε = 0`, even if validation fails.
    pub monad: Option<Monad<Qi>>,
    pub report: AdhmReport,
}

impl AdhmConversion {
    /// The monad, only if the data were accepted.
    pub fn accepted(&self) -> Option<&Monad<Qi>> {
        self.monad.as_ref().filter(|_| self.report.accepted())
    }
}

pub fn random_gaussian<R: Rng>(rng: &mut R, bound: i64) -> Gaussian {
    Gaussian::from_ints(rng.random_range(-bound..=bound), rng.random_range(-bound..=bound))
}

fn random_point<R: Rng>(rng: &mut R, bound: i64) -> Vec<Gaussian> {
    loop {
        let z: Vec<Gaussian> = (0..4).map(|_| random_gaussian(rng, bound)).collect();
        if z.iter().any(|x| !Qi.is_zero(x)) {
            return z;
        }
    }
}

/// `ε`, `q` from the data, with the constraints, `q·ε = 0`, surjectivity of
/// `IL(z)` at `trials` random points and the usual monad validation all
/// itemized.
pub fn adhm_to_monad<R: Rng>(d: &AdhmData, trials: usize, rng: &mut R) -> Result<AdhmConversion, AdhmError> {
    let mut issues = Vec::new();
    let defects = d.constraint_defects();
    if !defects.is_empty() {
        issues.push(format!("quaternionic relations fail for j in {defects:?}"));
    }
    let (eps, q) = (d.epsilon()?, d.q()?);
    let complex = q.mul(&eps)?.is_zero();
    if !complex {
        issues.push("q·epsilon is not zero".into());
    }
    let mut il_failures = 0;
    for _ in 0..trials {
        let z = random_point(rng, 4);
        if d.il(&z).rank() != 2 * d.n {
            il_failures += 1;
        }
    }
    if il_failures > 0 {
        issues.push(format!("IL(z) is not onto at {il_failures} of {trials} points"));
    }
    let mut monad = None;
    let mut validation = None;
    if complex {
        let m = Monad::general(eps, q)?;
        let v = m.validate(trials, rng)?;
        issues.extend(v.issues.iter().cloned());
        validation = Some(v);
        monad = Some(m);
    }
    Ok(AdhmConversion {
        monad,
        report: AdhmReport {
            constraints: defects.is_empty(),
            complex,
            points_checked: trials,
            il_failures,
            validation,
            issues,
        },
    })
}

/// `v ↦ Ω v̄` with `Ω = [[0, −1], [1, 0]]` in blocks of half size.
fn j_map(v: &[Gaussian]) -> Vec<Gaussian> {
    let f = Qi;
    let h = v.len() / 2;
    (0..v.len())
        .map(|i| {
            if i < h {
                f.neg(&f.conj(&v[i + h]))
            } else {
                f.conj(&v[i - h])
            }
        })
        .collect()
}

/// A unitary matrix over ℚ(i) by the Cayley transform `(1 − A)(1 + A)⁻¹`
/// of a random skew-Hermitian `A`.
pub fn random_unitary<R: Rng>(size: usize, rng: &mut R, bound: i64) -> Matrix<Qi> {
    let f = Qi;
    let mut a = Matrix::zeros(&f, size, size);
    for i in 0..size {
        a.set(i, i, Gaussian::from_ints(0, rng.random_range(-bound..=bound)));
        for j in i + 1..size {
            let x = random_gaussian(rng, bound);
            a.set(j, i, f.neg(&f.conj(&x)));
            a.set(i, j, x);
        }
    }
    let id = Matrix::identity(&f, size);
    // 1 + A is invertible since A has imaginary spectrum.
    let inv = id.add(&a).expect("square").inverse().expect("1 + A is invertible");
    id.sub(&a).expect("square").mul(&inv).expect("square")
}

/// Charge-one data for even `r`: random `e₁, e₃ ∈ ℂ^{r+2}`, `e₂ = Ω ē₁`,
/// `e₄ = Ω ē₃`, then a random unitary change of `ℂ^{r+2}` and a random
/// scalar on `ℂ_left`. Retries until `e₁, …, e₄` are independent, which
/// makes `ε` injective on every fibre.
pub fn solve_charge_one<R: Rng>(r: usize, rng: &mut R) -> Result<AdhmData, AdhmError> {
    if r % 2 == 1 || r == 0 {
        return Err(AdhmError::OddRank(r));
    }
    let f = Qi;
    let m = r + 2;
    const ATTEMPTS: usize = 20;
    for _ in 0..ATTEMPTS {
        let e1: Vec<Gaussian> = (0..m).map(|_| random_gaussian(rng, 3)).collect();
        let e3: Vec<Gaussian> = (0..m).map(|_| random_gaussian(rng, 3)).collect();
        let cols = [e1.clone(), j_map(&e1), e3.clone(), j_map(&e3)];
        let u = random_unitary(m, rng, 2);
        let lambda = loop {
            let x = random_gaussian(rng, 2);
            if !f.is_zero(&x) {
                break x;
            }
        };
        let lambda_inv = f.inv(&lambda).expect("nonzero");
        let left: Vec<Matrix<Qi>> = cols
            .iter()
            .map(|c| {
                let col = Matrix::from_fn(&f, m, 1, |i, _| c[i].clone());
                u.mul(&col).expect("shapes").scale(&lambda_inv)
            })
            .collect();
        let stacked = left[1..].iter().try_fold(left[0].clone(), |acc, c| acc.hstack(c))?;
        if stacked.rank() == 4 {
            return impose_quaternionic(left);
        }
    }
    Err(AdhmError::Exhausted(ATTEMPTS))
}

/// Residuals of the charge-one equations written out with Hermitian
/// products `⟨a, b⟩ = a* b` of the columns `e_j` of `L_left⁽ʲ⁾`:
/// `⟨e₂,e₁⟩`, `⟨e₄,e₃⟩`, `|e₂|² − |e₁|²`, `|e₄|² − |e₃|²`,
/// `⟨e₂,e₃⟩ + ⟨e₄,e₁⟩`, `⟨e₂,e₄⟩ − ⟨e₃,e₁⟩`, `⟨e₄,e₂⟩ − ⟨e₁,e₃⟩`,
/// `⟨e₁,e₄⟩ + ⟨e₃,e₂⟩`. All vanish iff `q·ε = 0` under the quaternionic
/// relations.
pub fn charge_one_residuals(d: &AdhmData) -> Vec<Gaussian> {
    assert_eq!(d.n, 1, "charge one only");
    let f = Qi;
    let e: Vec<Vec<Gaussian>> = d.left.iter().map(|a| a.column(0)).collect();
    let h = |a: usize, b: usize| {
        e[a].iter()
            .zip(&e[b])
            .fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(&f.conj(x), y)))
    };
    vec![
        h(1, 0),
        h(3, 2),
        f.sub(&h(1, 1), &h(0, 0)),
        f.sub(&h(3, 3), &h(2, 2)),
        f.add(&h(1, 2), &h(3, 0)),
        f.sub(&h(1, 3), &h(2, 0)),
        f.sub(&h(3, 1), &h(0, 2)),
        f.add(&h(0, 3), &h(2, 1)),
    ]
}

/// The real line through `[z]` and `[ρ(z)]`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealLine {
    point: Vec<Gaussian>,
    line: Line<Qi>,
}

impl RealLine {
    pub fn point(&self) -> &[Gaussian] {
        &self.point
    }
    pub fn line(&self) -> &Line<Qi> {
        &self.line
    }

    /// `ρ` maps the points `s z + t ρ(z)` for a few `(s, t)` back into the
    /// line.
    pub fn is_rho_invariant(&self) -> bool {
        let params = [(1, 0, 0, 0), (0, 0, 1, 0), (1, 0, 1, 0), (2, -1, 0, 3)];
        params.iter().all(|&(a, b, c, d)| {
            let p = self.line.point(&Gaussian::from_ints(a, b), &Gaussian::from_ints(c, d));
            rho_point(&p).is_ok_and(|q| self.line.contains(&q))
        })
    }
}

pub fn twistor_line(z: &[Gaussian]) -> Result<RealLine, AdhmError> {
    let rz = rho_point(z)?;
    // ρ has no fixed points on P3, so z and ρ(z) are independent.
    let line = Line::through(&Qi, AmbientSpace::P3, z, &rz)?;
    let out = RealLine {
        point: z.to_vec(),
        line,
    };
    assert!(out.is_rho_invariant(), "real lines are ρ-invariant");
    Ok(out)
}

/// The standard plane `{z4 = 0}`, parametrized by `(w1, w2, w3)`.
pub fn plane_z4() -> Matrix<Qi> {
    Matrix::from_fn(&Qi, 4, 3, |i, j| if i == j { Qi.one() } else { Qi.zero() })
}

fn is_real(m: &Monad<Qi>, rng: &mut ChaCha8Rng) -> Result<bool, AdhmError> {
    Ok(monad_isomorphic(m, &rho_pullback(m)?, rng, 20).is_some())
}

/// Splitting type of `m` on `trials` random real lines. Jumping lines fail
/// the check for a `ρ̃*`-invariant monad; otherwise they are only reported.
pub fn check_real_line_trivial(m: &Monad<Qi>, trials: usize, seed: u64) -> Result<CheckReport, AdhmError> {
    let start = Instant::now();
    let mut rep = CheckReport::new("real_line_trivial");
    monad_inputs(&mut rep, "monad", m);
    rep.set_input("trials", trials);
    rep.set_input("seed", seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut jumps = Vec::new();
    for _ in 0..trials {
        let z = random_point(&mut rng, 5);
        let l = twistor_line(&z)?;
        let t = m.splitting_type(l.line())?;
        if !t.is_trivial() {
            jumps.push(serde_json::json!({
                "z": z.iter().map(|x| Qi.format(x)).collect::<Vec<_>>(),
                "splitting": t.0,
            }));
        }
    }
    let real = is_real(m, &mut rng)?;
    rep.record("rho_invariant", real);
    rep.record("jumping_real_lines", &jumps);
    if jumps.is_empty() || real {
        rep.expect_eq("jumping real lines", 0, jumps.len());
    } else {
        rep.non_generic(format!(
            "{} of {trials} real lines jump; the monad is not invariant under the real structure",
            jumps.len()
        ));
    }
    Ok(timed(start, rep))
}

/// Restriction criterion on the pair of planes `H` and `D = ρ(H)`:
/// `(ρ̃*F)|_H ≅ F|_H`. The left side is computed twice, by restricting
/// `ρ̃*F` and by transporting `F|_D` along `ρ: H → D`; both must agree
/// exactly before the isomorphism is searched for.
pub fn check_atiyah_pair(m: &Monad<Qi>, h: &Matrix<Qi>, seed: u64) -> Result<CheckReport, AdhmError> {
    let start = Instant::now();
    let mut rep = CheckReport::new("atiyah_pair");
    monad_inputs(&mut rep, "monad", m);
    rep.set_input("seed", seed);
    if (h.rows(), h.cols()) != (4, 3) || h.rank() != 3 {
        return Err(MonadError::Invalid("a plane needs a 4x3 matrix of rank 3".into()).into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // ρ(H w) = J conj(H) w̄
    let d = rho_matrix().mul(&h.conj())?;
    let pulled = rho_pullback(m)?.restrict_to_plane(h)?;
    let transported = m.restrict_to_plane(&d)?.conj().dual();
    rep.expect_eq("transport through D agrees", true, pulled == transported);
    let on_h = m.restrict_to_plane(h)?;
    rep.record("hom dimension", morphism_dimension(&on_h, &transported));
    let iso = monad_isomorphic(&on_h, &transported, &mut rng, 20);
    rep.expect_eq("restrictions isomorphic", true, iso.is_some());
    Ok(timed(start, rep))
}

/// `|z|²` as a rational.
pub fn hermitian_norm(z: &[Gaussian]) -> BigRational {
    z.iter()
        .fold(BigRational::zero(), |acc, x| acc + &x.re * &x.re + &x.im * &x.im)
}

/// Exact test of unitarity, `U* U = 1`.
pub fn is_unitary(u: &Matrix<Qi>) -> bool {
    u.adjoint().mul(u).is_ok_and(|p| p == Matrix::identity(&Qi, u.rows()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monad::sample_instanton;

    fn g(re: i64, im: i64) -> Gaussian {
        Gaussian::from_ints(re, im)
    }

    #[test]
    fn rho_on_points() {
        let f = Qi;
        assert_eq!(
            rho_point(&[g(1, 0), g(0, 0), g(0, 0), g(0, 0)]).unwrap(),
            vec![g(0, 0), g(-1, 0), g(0, 0), g(0, 0)]
        );
        assert_eq!(
            rho_point(&[g(0, 0), g(0, 0), g(1, 0), g(0, 1)]).unwrap(),
            vec![g(0, 0), g(0, 0), g(0, -1), g(-1, 0)]
        );
        let z = vec![g(1, 2), g(-3, 1), g(0, 5), g(2, -2)];
        let back = rho_point(&rho_point(&z).unwrap()).unwrap();
        assert_eq!(back, z.iter().map(|x| f.neg(x)).collect::<Vec<_>>());
        assert_eq!(hermitian_norm(&rho_point(&z).unwrap()), hermitian_norm(&z));
        assert_eq!(rho_point(&vec![g(0, 0); 4]), Err(AdhmError::BadPoint));
    }

    #[test]
    fn impose_relations_and_inverse() {
        let f = Qi;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let left: Vec<Matrix<Qi>> = (0..4)
            .map(|_| Matrix::from_fn(&f, 4, 1, |_, _| random_gaussian(&mut rng, 4)))
            .collect();
        let d = impose_quaternionic(left.clone()).unwrap();
        assert!(d.satisfies_constraints());
        assert_eq!(left_from_right(d.right()), left);
        // scalar case
        let one = |x: Gaussian| Matrix::from_fn(&f, 3, 1, move |i, _| if i == 0 { x.clone() } else { g(0, 0) });
        let d = impose_quaternionic(vec![one(g(2, 5)), one(g(0, 0)), one(g(0, 0)), one(g(0, 0))]).unwrap();
        assert_eq!(d.right()[1].get(0, 0), &g(-2, 5));
        let mut broken = d.right().to_vec();
        broken[1] = broken[1].scale(&g(2, 0));
        let bad = AdhmData::new(1, 1, d.left().to_vec(), broken).unwrap();
        assert_eq!(bad.constraint_defects(), vec![2]);
    }

    #[test]
    fn random_constrained_data_is_not_a_complex() {
        let f = Qi;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let left: Vec<Matrix<Qi>> = (0..4)
            .map(|_| Matrix::from_fn(&f, 4, 1, |_, _| random_gaussian(&mut rng, 4)))
            .collect();
        let d = impose_quaternionic(left).unwrap();
        let c = adhm_to_monad(&d, 5, &mut rng).unwrap();
        assert!(c.report.constraints);
        assert!(!c.report.complex);
        assert!(c.accepted().is_none());
    }

    #[test]
    fn cayley_transform_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for size in 1..5 {
            assert!(is_unitary(&random_unitary(size, &mut rng, 3)));
        }
    }

    #[test]
    fn charge_one_solution_is_accepted() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let d = solve_charge_one(2, &mut rng).unwrap();
        assert!(d.satisfies_constraints());
        assert!(charge_one_residuals(&d).iter().all(|x| Qi.is_zero(x)));
        let c = adhm_to_monad(&d, 10, &mut rng).unwrap();
        assert!(c.report.accepted(), "{:?}", c.report.issues);
        let m = c.accepted().unwrap();
        assert_eq!((m.rank(), m.charge()), (2, 1));
        let back = rho_pullback(m).unwrap();
        assert!(monad_isomorphic(m, &back, &mut rng, 10).is_some());
        assert_eq!(
            back.cohomology_table(-3..=1).unwrap(),
            m.cohomology_table(-3..=1).unwrap()
        );
        assert!(solve_charge_one(3, &mut rng).is_err());
    }

    #[test]
    fn residuals_detect_broken_data() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let d = solve_charge_one(2, &mut rng).unwrap();
        let mut left = d.left().to_vec();
        left[1] = left[1].scale(&g(2, 0));
        let broken = impose_quaternionic(left).unwrap();
        assert!(charge_one_residuals(&broken).iter().any(|x| !Qi.is_zero(x)));
        let c = adhm_to_monad(&broken, 3, &mut rng).unwrap();
        assert!(!c.report.complex);
    }

    #[test]
    fn double_pullback_is_isomorphic() {
        let m = sample_instanton(2, 2, 4)
            .unwrap()
            .map_field(&Qi, |x| Gaussian::new(x.clone(), BigRational::zero()));
        let twice = rho_pullback(&rho_pullback(&m).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(monad_isomorphic(&m, &twice, &mut rng, 10).is_some());
    }

    #[test]
    fn twistor_lines() {
        let l = twistor_line(&[g(1, 0), g(0, 0), g(0, 0), g(0, 0)]).unwrap();
        assert!(l.line().same_as(&Line::z3_z4(&Qi)));
        let z = vec![g(1, 1), g(2, 0), g(0, -1), g(3, 2)];
        let l = twistor_line(&z).unwrap();
        // another point of the same fibre
        let w = l.line().point(&g(2, 1), &g(1, -3));
        assert!(twistor_line(&w).unwrap().line().same_as(l.line()));
    }

    #[test]
    fn reality_checks_on_charge_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let d = solve_charge_one(2, &mut rng).unwrap();
        let c = adhm_to_monad(&d, 5, &mut rng).unwrap();
        let m = c.accepted().unwrap();
        let rep = check_real_line_trivial(m, 5, 9).unwrap();
        assert!(rep.passed(), "{}", rep.to_json_line());
        let rep = check_atiyah_pair(m, &plane_z4(), 9).unwrap();
        assert!(rep.passed(), "{}", rep.to_json_line());
    }

    #[test]
    fn atiyah_pair_fails_without_reality() {
        let m = sample_instanton(2, 1, 6)
            .unwrap()
            .map_field(&Qi, |x| Gaussian::new(x.clone(), BigRational::zero()));
        let rep = check_atiyah_pair(&m, &plane_z4(), 9).unwrap();
        assert!(!rep.passed());
        assert_eq!(rep.computed["transport through D agrees"], serde_json::json!(true));
    }
}
