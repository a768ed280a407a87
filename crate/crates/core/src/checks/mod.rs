//! Checkers for the computable claims about instantons. Each returns a
//! [`CheckReport`] with exact integer comparisons.
//!
//! Hypercohomology is computed modulo a prime. Reducing a complex can only
//! lower the ranks of its differentials, so the dimensions found modulo
//! `p` bound the exact ones from above; whenever a comparison fails the
//! computation is repeated over the exact field before a verdict.

mod report;
mod suite;

pub use report::{summary_csv, CheckReport, Status};
pub use suite::{run_suite, SuiteOptions};

use std::ops::RangeInclusive;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::primes::random_prime;
use crate::algebra::{AlgebraError, Field, Matrix, PrimeField, ReduceMod};
use crate::cohomology::{cech_hypercohomology, CohomologyError, LineBundleComplex};
use crate::forms::{monomial_basis, AmbientSpace, Degree, FormError, Substitution};
use crate::monad::{Line, Monad, MonadError};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum CheckError {
    #[error(transparent)]
    Monad(#[from] MonadError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Form(#[from] FormError),
}

/// Shared settings: the working prime, the Čech truncation bound (default:
/// the minimal one) and the seed everything random derives from.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckContext {
    pub prime: PrimeField,
    pub bound: Option<u32>,
    pub seed: u64,
}

impl CheckContext {
    pub fn new(seed: u64) -> CheckContext {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0f_c4ec);
        let prime = PrimeField::new(random_prime(&mut rng)).expect("random_prime returns primes");
        CheckContext {
            prime,
            bound: None,
            seed,
        }
    }

    pub fn with_bound(mut self, bound: Option<u32>) -> CheckContext {
        self.bound = bound;
        self
    }

    /// Deterministic generator for one named task.
    pub fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(salt))
    }

    pub(crate) fn stamp(&self, r: &mut CheckReport) {
        r.set_input("prime", self.prime.modulus());
        r.set_input("bound", self.bound);
        r.set_input("seed", self.seed);
        r.set_input("version", env!("CARGO_PKG_VERSION"));
    }

    /// Hypercohomology dimensions in `degrees`, modulo the working prime;
    /// recomputed exactly when `accept` rejects them.
    pub fn hyper<F: ReduceMod>(
        &self,
        c: &LineBundleComplex<F>,
        degrees: RangeInclusive<i32>,
        accept: impl Fn(&[usize]) -> bool,
        report: &mut CheckReport,
    ) -> Result<Vec<usize>, CheckError> {
        let pick = |h: &crate::cohomology::Hypercohomology| degrees.clone().map(|k| h.get(k)).collect::<Vec<_>>();
        if let Ok(cp) = c.reduce(&self.prime) {
            let dims = pick(&cech_hypercohomology(&cp, self.bound)?);
            if accept(&dims) {
                return Ok(dims);
            }
        }
        let dims = pick(&cech_hypercohomology(c, self.bound)?);
        report.note(format!("recomputed over {} in degrees {degrees:?}", c.field().tag()));
        Ok(dims)
    }
}

pub(crate) fn monad_inputs<F: Field>(r: &mut CheckReport, key: &str, m: &Monad<F>) {
    r.set_input(
        key,
        serde_json::json!({"r": m.rank(), "n": m.charge(), "field": m.field().tag().to_string()}),
    );
}

pub(crate) fn timed(start: Instant, mut r: CheckReport) -> CheckReport {
    r.elapsed = start.elapsed();
    r
}

/// `h^1(F(-2)) = h^2(F(-2)) = 0`.
pub fn check_instanton_condition<F: Field>(m: &Monad<F>) -> CheckReport {
    let start = Instant::now();
    let mut r = CheckReport::new("instanton_condition");
    monad_inputs(&mut r, "monad", m);
    if m.space() != AmbientSpace::P3 {
        r.skip("not a monad on P3");
        return timed(start, r);
    }
    match m.cohomology(-2) {
        Ok(h) => {
            r.record("h(F(-2))", &h);
            r.expect_eq("h1(F(-2))", 0, h[1]);
            r.expect_eq("h2(F(-2))", 0, h[2]);
        }
        Err(e) => r.skip(format!("precondition: {e}")),
    }
    timed(start, r)
}

/// Vanishing of `h^1` and `h^2` of `(F ⊗ G)(-2)` and the charge of the
/// tensor product, `h^1((F ⊗ G)(-1)) = r'' n' + r' n''`.
pub fn check_tensor_vanishing<F: ReduceMod>(
    ctx: &CheckContext,
    m1: &Monad<F>,
    m2: &Monad<F>,
) -> Result<CheckReport, CheckError> {
    let start = Instant::now();
    let mut r = CheckReport::new("tensor_vanishing");
    monad_inputs(&mut r, "first", m1);
    monad_inputs(&mut r, "second", m2);
    ctx.stamp(&mut r);
    let c = m1.tensor_complex(m2)?;
    r.record("term_dims", c.term_dims());
    let h2 = ctx.hyper(&c.twist_by(-2), 0..=3, |h| h[1] == 0 && h[2] == 0, &mut r)?;
    r.record("h(FG(-2))", &h2);
    r.expect_eq("h1(FG(-2))", 0, h2[1]);
    r.expect_eq("h2(FG(-2))", 0, h2[2]);
    let charge = m2.rank() * m1.charge() + m1.rank() * m2.charge();
    let h1 = ctx.hyper(&c.twist_by(-1), 0..=3, |h| h == [0, charge, 0, 0], &mut r)?;
    r.record("h(FG(-1))", &h1);
    r.expect_eq("h1(FG(-1))", charge, h1[1]);
    // the outer terms of the sequence through V_F ⊗ H^2(G(-3))
    let ext = m1.cohomology(-1)?[1] * m2.cohomology(-3)?[2];
    let ext2 = m1.cohomology(-3)?[2] * m2.cohomology(-1)?[1];
    r.expect_eq("h1(F(-1))*h2(G(-3))", m1.charge() * m2.charge(), ext);
    r.expect_eq("h2(F(-3))*h1(G(-1))", m1.charge() * m2.charge(), ext2);
    Ok(timed(start, r))
}

/// Simplicity, unobstructedness and the dimension `4rn - r^2 + 1`.
pub fn check_end_dims<F: ReduceMod>(ctx: &CheckContext, m: &Monad<F>) -> Result<CheckReport, CheckError> {
    let start = Instant::now();
    let mut r = CheckReport::new("end_dims");
    monad_inputs(&mut r, "monad", m);
    ctx.stamp(&mut r);
    let (rk, n) = (m.rank() as i64, m.charge() as i64);
    let expected = (4 * rk * n - rk * rk + 1) as usize;
    let c = m.end_complex()?;
    let h0 = ctx.hyper(&c, 0..=3, |h| h == [1, expected, 0, 0], &mut r)?;
    r.record("h(End F)", &h0);
    if h0[0] != 1 {
        r.skip(format!("sample is not simple: h0(End F) = {}", h0[0]));
        return Ok(timed(start, r));
    }
    let hm2 = ctx.hyper(&c.twist_by(-2), 0..=3, |h| h[1] == 0 && h[2] == 0, &mut r)?;
    r.record("h(End F(-2))", &hm2);
    r.expect_eq("h1(End F(-2))", 0, hm2[1]);
    r.expect_eq("h2(End F(-2))", 0, hm2[2]);
    r.expect_eq("h2(End F)", 0, h0[2]);
    r.expect_eq("h1(End F)", expected, h0[1]);
    Ok(timed(start, r))
}

/// Matrix of `(δε, δq) ↦ q·δε + δq·ε`, from `8n(r+2n)` coefficients to the
/// `10n^2` coefficients of an `n × n` matrix of quadrics.
pub fn linearization<F: Field>(m: &Monad<F>) -> Matrix<F> {
    let f = m.field();
    let (n, mid) = (m.charge(), m.middle());
    let quad = monomial_basis(AmbientSpace::P3, Degree::Single(2));
    let mono = |k: usize, l: usize| {
        let mut e = vec![0u32; 4];
        e[k] += 1;
        e[l] += 1;
        quad.iter().position(|x| *x == e).expect("quadratic monomial")
    };
    let e = m.epsilon_coefficients();
    let q = m.q_coefficients();
    let rows = 10 * n * n;
    let half = 4 * mid * n;
    let mut a = Matrix::zeros(f, rows, 2 * half);
    let row = |i: usize, j: usize, s: usize| (i * n + j) * 10 + s;
    // δε_l[a, j] at column l*mid*n + a*n + j
    for l in 0..4 {
        for aa in 0..mid {
            for j in 0..n {
                let col = l * mid * n + aa * n + j;
                for k in 0..4 {
                    for i in 0..n {
                        let c = q[k].get(i, aa);
                        if f.is_zero(c) {
                            continue;
                        }
                        let rr = row(i, j, mono(k, l));
                        let v = f.add(a.get(rr, col), c);
                        a.set(rr, col, v);
                    }
                }
            }
        }
    }
    // δq_k[i, a] at column half + k*n*mid + i*mid + a
    for k in 0..4 {
        for i in 0..n {
            for aa in 0..mid {
                let col = half + k * n * mid + i * mid + aa;
                for l in 0..4 {
                    for j in 0..n {
                        let c = e[l].get(aa, j);
                        if f.is_zero(c) {
                            continue;
                        }
                        let rr = row(i, j, mono(k, l));
                        let v = f.add(a.get(rr, col), c);
                        a.set(rr, col, v);
                    }
                }
            }
        }
    }
    a
}

/// Nullity of the linearized complex condition equals `8rn + 6n^2`, and
/// after removing the group `GL(n) × GL(r+2n) × GL(n) / k*` it equals
/// `h^1(End F)`.
pub fn check_tangent_dimension<F: ReduceMod>(
    ctx: &CheckContext,
    m: &Monad<F>,
    h1_end: Option<usize>,
) -> Result<CheckReport, CheckError> {
    let start = Instant::now();
    let mut r = CheckReport::new("tangent_dimension");
    monad_inputs(&mut r, "monad", m);
    ctx.stamp(&mut r);
    let (rk, n, mid) = (m.rank(), m.charge(), m.middle());
    let expected = 8 * rk * n + 6 * n * n;
    let mut nullity = None;
    if let Ok(mp) = m.reduce(&ctx.prime) {
        let a = linearization(&mp);
        let k = a.cols() - a.rank();
        if k == expected {
            nullity = Some(k);
        }
    }
    let nullity = match nullity {
        Some(k) => k,
        None => {
            r.note("recomputed over the exact field");
            let a = linearization(m);
            a.cols() - a.rank()
        }
    };
    r.record("unknowns", 8 * n * mid);
    r.record("equations", 10 * n * n);
    r.expect_eq("nullity", expected, nullity);
    let group = 2 * n * n + mid * mid - 1;
    r.record("group_dimension", group);
    let h1 = match h1_end {
        Some(h) => h,
        None => ctx.hyper(&m.end_complex()?, 1..=1, |_| true, &mut r)?[0],
    };
    r.expect_eq("nullity - group", h1 as i64, nullity as i64 - group as i64);
    Ok(timed(start, r))
}

/// Coordinates adapted to a trivializing line `λ`: after `z = M w`, `λ` is
/// `{w3 = w4 = 0}`, `D = {w3 = 0}` and `H = {w4 = 0}`.
pub struct AdaptedFrame<F: Field> {
    pub change: Matrix<F>,
    pub monad: Monad<F>,
    pub line: Line<F>,
}

impl<F: Field> AdaptedFrame<F> {
    pub fn find<R: Rng>(m: &Monad<F>, rng: &mut R, trials: usize) -> Result<Option<AdaptedFrame<F>>, CheckError> {
        let Some(line) = m.find_trivializing_line(rng, trials)? else {
            return Ok(None);
        };
        let change = line.adapted_coordinates(rng);
        let monad = m.change_coordinates(&change)?;
        Ok(Some(AdaptedFrame {
            change,
            monad,
            line: Line::z3_z4(m.field()),
        }))
    }

    fn plane(&self, drop: usize) -> Matrix<F> {
        let f = self.monad.field();
        let keep: Vec<usize> = (0..4).filter(|&i| i != drop).collect();
        Matrix::from_fn(f, 4, 3, |i, j| if keep[j] == i { f.one() } else { f.zero() })
    }

    /// `D = {w3 = 0}`.
    pub fn plane_d(&self) -> Matrix<F> {
        self.plane(2)
    }

    /// `H = {w4 = 0}`.
    pub fn plane_h(&self) -> Matrix<F> {
        self.plane(3)
    }

    fn record(&self, r: &mut CheckReport) {
        let f = self.monad.field();
        let rows: Vec<Vec<String>> = self
            .change
            .to_rows()
            .iter()
            .map(|row| row.iter().map(|x| f.format(x)).collect())
            .collect();
        r.record("coordinate_change", rows);
    }
}

const LINE_TRIALS: usize = 50;

/// `h^1(F(-1)) = h^2(F(-3)) = n` and, on a plane `H` through a
/// trivializing line, `h^1(F_H(-1)) = h^1(F_H(-2)) = n`.
pub fn check_koszul_dims<F: ReduceMod>(ctx: &CheckContext, m: &Monad<F>) -> Result<CheckReport, CheckError> {
    let start = Instant::now();
    let mut r = CheckReport::new("koszul_dims");
    monad_inputs(&mut r, "monad", m);
    ctx.stamp(&mut r);
    let n = m.charge();
    r.expect_eq("h1(F(-1))", n, m.cohomology(-1)?[1]);
    r.expect_eq("h2(F(-3))", n, m.cohomology(-3)?[2]);
    let Some(frame) = AdaptedFrame::find(m, &mut ctx.rng(1), LINE_TRIALS)? else {
        r.non_generic("no trivializing line found");
        return Ok(timed(start, r));
    };
    frame.record(&mut r);
    let h = frame.monad.restrict_to_plane(&frame.plane_h())?;
    r.expect_eq("h1(F_H(-1))", n, h.cohomology(-1)?[1]);
    r.expect_eq("h1(F_H(-2))", n, h.cohomology(-2)?[1]);
    Ok(timed(start, r))
}

fn chi(h: &[usize]) -> i64 {
    h.iter()
        .enumerate()
        .map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}

/// Assembles `h^1(End F|_{D ∪ H})` from `0 → E_D(-1) → E_{D∪H} → E_H → 0`
/// for planes `D, H` meeting in a trivializing line, and compares it with
/// `h^1(End F)`. Since `End F(-2)` has no `H^0, H^1, H^2`, restriction
/// identifies `H^0` and `H^1` of `End F` with those of `E_{D∪H}`; the
/// connecting map `H^0(E_H) → H^1(E_D(-1))` then has rank
/// `h^0(E_H) - h^0(End F) + h^0(E_D(-1))`, and the next one vanishes when
/// `h^2(E_D(-1)) = 0`.
pub fn check_mayer_vietoris<F: ReduceMod>(ctx: &CheckContext, m: &Monad<F>) -> Result<CheckReport, CheckError> {
    let start = Instant::now();
    let mut r = CheckReport::new("mayer_vietoris");
    monad_inputs(&mut r, "monad", m);
    ctx.stamp(&mut r);
    let rk = m.rank();
    let Some(frame) = AdaptedFrame::find(m, &mut ctx.rng(2), LINE_TRIALS)? else {
        r.skip("no trivializing line found");
        return Ok(timed(start, r));
    };
    frame.record(&mut r);
    let end = frame.monad.end_complex()?;
    let any = |_: &[usize]| true;
    let e = ctx.hyper(&end, 0..=3, any, &mut r)?;
    let em2 = ctx.hyper(
        &end.twist_by(-2),
        0..=3,
        |h| h[0] == 0 && h[1] == 0 && h[2] == 0,
        &mut r,
    )?;
    r.record("h(End F)", &e);
    r.record("h(End F(-2))", &em2);
    if em2[0] != 0 || em2[1] != 0 || em2[2] != 0 {
        r.fail("End F(-2) has cohomology below degree 3");
        return Ok(timed(start, r));
    }
    let restrict = |a: &Matrix<F>| -> Result<LineBundleComplex<F>, CheckError> {
        let sub = Substitution::linear(AmbientSpace::P3, AmbientSpace::P2, a)?;
        Ok(end.restrict(&sub)?)
    };
    let ed = restrict(&frame.plane_d())?;
    let eh = restrict(&frame.plane_h())?;
    let el = end.restrict(&frame.line.substitution())?;
    let ed_m1 = ctx.hyper(&ed.twist_by(-1), 0..=2, any, &mut r)?;
    let ed0 = ctx.hyper(&ed, 0..=2, any, &mut r)?;
    let eh0 = ctx.hyper(&eh, 0..=2, any, &mut r)?;
    let el0 = ctx.hyper(&el, 0..=1, |h| h == [rk * rk, 0], &mut r)?;
    r.record("h(E_D(-1))", &ed_m1);
    r.record("h(E_D)", &ed0);
    r.record("h(E_H)", &eh0);
    r.expect_eq("h(E_line)", vec![rk * rk, 0], el0.clone());
    let chi_union = chi(&e) - chi(&em2);
    r.expect_eq("chi(E_D(-1)) + chi(E_H)", chi_union, chi(&ed_m1) + chi(&eh0));
    r.expect_eq("chi(E_D(-1)) + chi(E_line)", chi(&ed0), chi(&ed_m1) + chi(&el0));
    if ed_m1[2] != 0 {
        r.non_generic(format!(
            "h2(E_D(-1)) = {}; the second connecting map is undetermined",
            ed_m1[2]
        ));
        return Ok(timed(start, r));
    }
    let delta0 = eh0[0] as i64 - e[0] as i64 + ed_m1[0] as i64;
    r.record("rank_delta0", delta0);
    let assembled = ed_m1[1] as i64 - delta0 + eh0[1] as i64;
    r.expect_eq("h1(End F_{D+H})", e[1] as i64, assembled);
    let (rr, n) = (rk as i64, m.charge() as i64);
    r.expect_eq("h1(End F)", 4 * rr * n - rr * rr + 1, e[1] as i64);
    Ok(timed(start, r))
}

/// `(a', ρ') = (⌊2n/r⌋, 2n - a'r)`.
pub fn quadric_splitting(r: usize, n: usize) -> (usize, usize) {
    let a = 2 * n / r;
    (a, 2 * n - a * r)
}

/// Expected `h^0(F_Q(k, 0))` for the generic pushforward
/// `O(-a')^{r-ρ'} ⊕ O(-a'-1)^{ρ'}`.
pub fn quadric_profile(r: usize, n: usize, k: i64) -> usize {
    let (a, rho) = quadric_splitting(r, n);
    let a = a as i64;
    let h = |d: i64| (d + 1).max(0) as usize;
    (r - rho) * h(k - a) + rho * h(k - a - 1)
}

/// Profile of `h^0(F_Q(k, 0))` for `k = 0..a'+2` against the generic
/// shape. A mismatch is reported as a non-generic restriction.
pub fn check_quadric_splitting<F: ReduceMod>(ctx: &CheckContext, m: &Monad<F>) -> Result<CheckReport, CheckError> {
    let start = Instant::now();
    let mut r = CheckReport::new("quadric_splitting");
    monad_inputs(&mut r, "monad", m);
    ctx.stamp(&mut r);
    let (rk, n) = (m.rank(), m.charge());
    let (a, rho) = quadric_splitting(rk, n);
    r.record("a'", a);
    r.record("rho'", rho);
    let c = m.restrict_to_quadric()?;
    let ks: Vec<i64> = (0..=(a as i64 + 2)).collect();
    let expected: Vec<usize> = ks.iter().map(|&k| quadric_profile(rk, n, k)).collect();
    let mut computed = Vec::new();
    for (&k, &e) in ks.iter().zip(&expected) {
        let ck = c.twist(Degree::Bi(k as i32, 0));
        computed.push(ctx.hyper(&ck, 0..=0, |h| h[0] == e, &mut r)?[0]);
    }
    r.expected.insert("h0(F_Q(k,0))".into(), serde_json::json!(expected));
    r.computed.insert("h0(F_Q(k,0))".into(), serde_json::json!(computed));
    if computed != expected {
        r.non_generic("non-generic restriction to the quadric");
    }
    Ok(timed(start, r))
}
