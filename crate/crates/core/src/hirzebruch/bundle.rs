//! The bundle on the quadric determined by extension data, and its
//! cohomology.
//!
//! `V^∨` is the kernel of `β*: π*L^∨ → ⊕_j O_{{x_j}×P¹}(1)`, where
//! `L^∨ = O(a)^{r−ρ} ⊕ O(a+1)^ρ` lives on the left factor and generator
//! `i` goes to the linear form `left_ij t₀ + right_ij t₁` on the fibre over
//! `x_j` (fibre values, see [`ExtensionData::fibre_values`]). Cohomology of
//! `V^∨` follows from the long exact sequence once the maps `β₀`, `β₁` on
//! `H⁰` and `H¹` are written down; cohomology of `V` then comes from Serre
//! duality with `K = O(−2, −2)`.

use std::time::Instant;

use crate::algebra::{Field, Matrix};
use crate::checks::CheckReport;
use crate::cohomology::{line_bundle_cohomology, LineBundleComplex};
use crate::forms::{AmbientSpace, Degree, Form, FormMatrix};

use super::{ExtensionData, HirzebruchError};

#[derive(Clone, Debug, PartialEq)]
pub struct QuadricBundlePresentation<F: Field> {
    pub data: ExtensionData<F>,
    /// For each fibre, an `r × 2` matrix: row `i` holds the coefficients
    /// of `t₀`, `t₁` in the image of generator `i`.
    pub fibre_forms: Vec<Matrix<F>>,
}

/// Realizes `β*` and checks that it is onto at every fibre, i.e. that the
/// `r` linear forms span `H⁰(O(1))`.
pub fn build_quadric_bundle<F: Field>(data: ExtensionData<F>) -> Result<QuadricBundlePresentation<F>, HirzebruchError> {
    let (l, r) = data.fibre_values();
    let mut forms = Vec::with_capacity(data.m());
    for j in 0..data.m() {
        let form = Matrix::from_fn(data.field(), data.r(), 2, |i, c| {
            if c == 0 { l.get(i, j) } else { r.get(i, j) }.clone()
        });
        if form.rank() < 2 {
            return Err(HirzebruchError::NotSurjective(j + 1));
        }
        forms.push(form);
    }
    Ok(QuadricBundlePresentation {
        data,
        fibre_forms: forms,
    })
}

impl<F: Field> QuadricBundlePresentation<F> {
    /// A two-term complex `π*L^∨ ⊕ O(N−m, 1) → O(N, 1)` of line bundles,
    /// `N = a + m`, whose only cohomology sheaf is `V^∨` in degree 0. The
    /// first components interpolate the fibre forms,
    /// `g_i = s₀^{N−e_i−m+1} Σ_j Λ_j ℓ_ij` with Lagrange polynomials `Λ_j`
    /// in `(s₀, s₁)`; the last is `P = ∏_k (s₁ − x_k s₀)`, cutting out the
    /// fibres.
    pub fn resolution(&self) -> Result<LineBundleComplex<F>, HirzebruchError> {
        let f = self.data.field();
        let q = AmbientSpace::Quadric;
        let m = self.data.m();
        let pts = self.data.points();
        let (a, _) = self.data.splitting();
        let n = (a + m) as i32;
        let var = |i: usize| Form::var(f, q, i);
        let root = |x: &F::Elem| var(1).sub(&var(0).scale(x)).expect("same degree");
        let mut lagrange = Vec::with_capacity(m);
        for (j, xj) in pts.iter().enumerate() {
            let mut num = Form::constant(f, q, f.one());
            let mut den = f.one();
            for (k, xk) in pts.iter().enumerate() {
                if k != j {
                    num = num.mul(&root(xk));
                    den = f.mul(&den, &f.sub(xj, xk));
                }
            }
            lagrange.push(num.scale(&f.inv(&den).ok_or(HirzebruchError::Points("pairwise distinct"))?));
        }
        let degs = degrees(self);
        let mut row = Vec::with_capacity(degs.len() + 1);
        for (i, &e) in degs.iter().enumerate() {
            let mut g = Form::zero(f, q, Degree::Bi(n - e, 1));
            for (j, lag) in lagrange.iter().enumerate() {
                let form = &self.fibre_forms[j];
                let ell = var(2)
                    .scale(form.get(i, 0))
                    .add(&var(3).scale(form.get(i, 1)))
                    .expect("same degree");
                let term = var(0).pow((n - e) as u32 - (m as u32 - 1)).mul(lag).mul(&ell);
                g = g.add(&term).map_err(|e| HirzebruchError::Precondition(e.to_string()))?;
            }
            row.push(g);
        }
        row.push(
            pts.iter()
                .fold(Form::constant(f, q, f.one()), |acc, x| acc.mul(&root(x))),
        );
        let mut src: Vec<Degree> = degs.iter().map(|&e| Degree::Bi(e, 0)).collect();
        src.push(Degree::Bi(n - m as i32, 1));
        let map = FormMatrix::new(f, q, 1, row.len(), row).map_err(|e| HirzebruchError::Precondition(e.to_string()))?;
        LineBundleComplex::new(f, q, 0, vec![src, vec![Degree::Bi(n, 1)]], vec![map])
            .map_err(|e| HirzebruchError::Precondition(e.to_string()))
    }
}

fn degrees<F: Field>(p: &QuadricBundlePresentation<F>) -> Vec<i32> {
    let (a, rho) = p.data.splitting();
    let r = p.data.r();
    (0..r)
        .map(|i| if i < r - rho { a as i32 } else { a as i32 + 1 })
        .collect()
}

fn powers<F: Field>(f: &F, x: &F::Elem, n: usize) -> Vec<F::Elem> {
    let mut out = Vec::with_capacity(n);
    let mut p = f.one();
    for _ in 0..n {
        out.push(p.clone());
        p = f.mul(&p, x);
    }
    out
}

/// `β₀: ⊕_i H⁰(O(e_i + d₁)) ⊗ H⁰(O(d₂)) → ⊕_j H⁰(O(d₂ + 1))`. Sections of
/// `O(p)` on the left factor are indexed by the power of the affine
/// coordinate, those on the fibre by the power of `t₁`.
fn beta0<F: Field>(p: &QuadricBundlePresentation<F>, d1: i32, d2: i32) -> Matrix<F> {
    let f = p.data.field();
    let m = p.data.m();
    let degs = degrees(p);
    if d2 < 0 {
        return Matrix::zeros(f, m * (d2 + 2).max(0) as usize, 0);
    }
    let (src, tgt) = (d2 as usize + 1, d2 as usize + 2);
    let cols: usize = degs.iter().map(|&e| (e + d1 + 1).max(0) as usize * src).sum();
    let mut b = Matrix::zeros(f, m * tgt, cols);
    for (j, x) in p.data.points().iter().enumerate() {
        let form = &p.fibre_forms[j];
        let mut col = 0;
        for (i, &e) in degs.iter().enumerate() {
            let n = (e + d1 + 1).max(0) as usize;
            let xp = powers(f, x, n);
            for xa in &xp {
                for beta in 0..src {
                    b.set(j * tgt + beta, col, f.mul(xa, form.get(i, 0)));
                    b.set(j * tgt + beta + 1, col, f.mul(xa, form.get(i, 1)));
                    col += 1;
                }
            }
        }
    }
    b
}

/// `β₁` on the part `H⁰(O(e_i + d₁)) ⊗ H¹(O(d₂))` of `H¹`; the other
/// Künneth summand restricts to zero on a fibre. `H¹(P¹, O(d))` has the
/// Čech basis `t₀^{−α} t₁^{−β}`, `α, β ≥ 1`, `α + β = −d`, indexed by `β − 1`.
fn beta1<F: Field>(p: &QuadricBundlePresentation<F>, d1: i32, d2: i32) -> Matrix<F> {
    let f = p.data.field();
    let m = p.data.m();
    let degs = degrees(p);
    let src = (-d2 - 1).max(0) as usize;
    let tgt = (-d2 - 2).max(0) as usize;
    let cols: usize = degs.iter().map(|&e| (e + d1 + 1).max(0) as usize * src).sum();
    let mut b = Matrix::zeros(f, m * tgt, cols);
    for (j, x) in p.data.points().iter().enumerate() {
        let form = &p.fibre_forms[j];
        let mut col = 0;
        for (i, &e) in degs.iter().enumerate() {
            let xp = powers(f, x, (e + d1 + 1).max(0) as usize);
            for xa in &xp {
                for k in 0..src {
                    let beta = k + 1;
                    let alpha = src + 1 - beta;
                    // t₀·: lowers α, keeps β
                    if alpha >= 2 {
                        b.set(j * tgt + (beta - 1), col, f.mul(xa, form.get(i, 0)));
                    }
                    // t₁·: lowers β
                    if beta >= 2 {
                        let v = f.add(b.get(j * tgt + beta - 2, col), &f.mul(xa, form.get(i, 1)));
                        b.set(j * tgt + beta - 2, col, v);
                    }
                    col += 1;
                }
            }
        }
    }
    b
}

/// `h^i(V^∨(d₁, d₂))` for `i = 0, 1, 2`.
pub fn dual_cohomology<F: Field>(p: &QuadricBundlePresentation<F>, (d1, d2): (i32, i32)) -> [usize; 3] {
    let mut hl = [0usize; 3];
    for e in degrees(p) {
        let h = line_bundle_cohomology(AmbientSpace::Quadric, Degree::Bi(e + d1, d2));
        for i in 0..3 {
            hl[i] += h[i];
        }
    }
    let hs = line_bundle_cohomology(AmbientSpace::P1, Degree::Single(d2 + 1));
    let m = p.data.m();
    let (s0, s1) = (m * hs[0], m * hs[1]);
    let r0 = beta0(p, d1, d2).rank();
    let r1 = beta1(p, d1, d2).rank();
    [hl[0] - r0, (s0 - r0) + (hl[1] - r1), (s1 - r1) + hl[2]]
}

/// `h^i(V(k₁, k₂)) = h^{2−i}(V^∨(−k₁−2, −k₂−2))`.
pub fn bundle_cohomology<F: Field>(p: &QuadricBundlePresentation<F>, (k1, k2): (i32, i32)) -> [usize; 3] {
    let h = dual_cohomology(p, (-k1 - 2, -k2 - 2));
    [h[2], h[1], h[0]]
}

/// `h^i(V(k, 0))` read off `0 → π*L → V → ⊕ O_fibre(−1) → 0`, whose
/// quotient is acyclic.
pub fn direct_cohomology_k0<F: Field>(p: &QuadricBundlePresentation<F>, k: i32) -> [usize; 3] {
    let mut out = [0; 3];
    for e in degrees(p) {
        let h = line_bundle_cohomology(AmbientSpace::Quadric, Degree::Bi(k - e, 0));
        for i in 0..3 {
            out[i] += h[i];
        }
    }
    out
}

/// `h¹(V) − h⁰(V) = m − r`, `χ(V) = r − m`, and the Serre-dual computation
/// agrees with the direct one along `(k, 0)`.
pub fn riemann_roch_check<F: Field>(p: &QuadricBundlePresentation<F>) -> CheckReport {
    let start = Instant::now();
    let (r, m) = (p.data.r() as i64, p.data.m() as i64);
    let mut rep = CheckReport::new("riemann_roch")
        .input("r", r)
        .input("m", m)
        .input("field", p.data.field().tag().to_string())
        .input("version", env!("CARGO_PKG_VERSION"));
    let h = bundle_cohomology(p, (0, 0));
    rep.record("h(V)", h);
    rep.expect_eq("h1(V) - h0(V)", m - r, h[1] as i64 - h[0] as i64);
    rep.expect_eq("chi(V)", r - m, h[0] as i64 - h[1] as i64 + h[2] as i64);
    let (a, _) = p.data.splitting();
    let ks: Vec<i32> = (-1..=a as i32 + 1).collect();
    let serre: Vec<[usize; 3]> = ks.iter().map(|&k| bundle_cohomology(p, (k, 0))).collect();
    let direct: Vec<[usize; 3]> = ks.iter().map(|&k| direct_cohomology_k0(p, k)).collect();
    rep.expect_eq("h(V(k,0)), k = -1..a+1", direct, serre);
    rep.elapsed = start.elapsed();
    rep
}

/// `h^i(V(k₁, k₂))` over a rectangle of twists, row-major in `k₁`.
pub fn cohomology_grid<F: Field>(
    p: &QuadricBundlePresentation<F>,
    k1: std::ops::RangeInclusive<i32>,
    k2: std::ops::RangeInclusive<i32>,
) -> Vec<[usize; 3]> {
    k1.flat_map(|a| k2.clone().map(move |b| (a, b)))
        .map(|k| bundle_cohomology(p, k))
        .collect()
}

/// The cohomology tables of the bundles built from `before` and `after`
/// agree on `[-2, 3] × [-3, 2]`.
pub fn check_table_invariance<F: Field>(
    action: &str,
    before: &ExtensionData<F>,
    after: &ExtensionData<F>,
) -> Result<CheckReport, HirzebruchError> {
    let start = Instant::now();
    let mut rep = CheckReport::new("hirzebruch_invariance")
        .input("action", action)
        .input("r", before.r())
        .input("m", before.m())
        .input("field", before.field().tag().to_string())
        .input("version", env!("CARGO_PKG_VERSION"));
    let t0 = cohomology_grid(&build_quadric_bundle(before.clone())?, -2..=3, -3..=2);
    let t1 = cohomology_grid(&build_quadric_bundle(after.clone())?, -2..=3, -3..=2);
    rep.expect_eq("h(V(k1,k2)), k1 in -2..3, k2 in -3..2", t0, t1);
    rep.elapsed = start.elapsed();
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rationals;
    use crate::hirzebruch::{aut_action, t_action, AutLElement};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn table<F: Field>(p: &QuadricBundlePresentation<F>) -> Vec<[usize; 3]> {
        cohomology_grid(p, -2..=3, -3..=2)
    }

    #[test]
    fn generic_rank2_charge4() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let e = ExtensionData::random(&Rationals, 2, 4, &mut rng, 5).unwrap();
        let p = build_quadric_bundle(e).unwrap();
        assert_eq!(p.fibre_forms.len(), 4);
        assert_eq!(bundle_cohomology(&p, (0, 0)), [0, 2, 0]);
        let rr = riemann_roch_check(&p);
        assert!(rr.passed(), "{}", rr.to_json_line());
        let first = (0..6).find(|&k| bundle_cohomology(&p, (k, 0))[0] > 0);
        assert_eq!(first, Some(2));
    }

    #[test]
    fn rank3_charge5() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let e = ExtensionData::random(&Rationals, 3, 5, &mut rng, 5).unwrap();
        let p = build_quadric_bundle(e).unwrap();
        let rr = riemann_roch_check(&p);
        assert!(rr.passed(), "{}", rr.to_json_line());
        assert_eq!(rr.computed["h1(V) - h0(V)"], 2);
    }

    #[test]
    fn degenerate_fibre_is_rejected() {
        let f = Rationals;
        let pts = vec![f.from_i64(1), f.from_i64(2), f.from_i64(3), f.from_i64(4)];
        let mut l = Matrix::from_i64(&f, &[vec![1, 2, 0, 1], vec![3, 1, 1, 0]]);
        let mut r = Matrix::from_i64(&f, &[vec![0, 1, 1, 2], vec![1, 0, 2, 1]]);
        for i in 0..2 {
            l.set(i, 0, f.zero());
            r.set(i, 0, f.zero());
        }
        let e = ExtensionData::from_fibre_values(&f, pts, &l, &r).unwrap();
        assert_eq!(build_quadric_bundle(e).unwrap_err(), HirzebruchError::NotSurjective(1));
    }

    #[test]
    fn long_exact_sequence_matches_cech() {
        use crate::cohomology::cech_hypercohomology;
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for &(r, m) in &[(2, 3), (2, 4), (3, 4)] {
            let e = ExtensionData::random(&Rationals, r, m, &mut rng, 4).unwrap();
            let p = build_quadric_bundle(e).unwrap();
            let c = p.resolution().unwrap();
            for d1 in -3..=1 {
                for d2 in -4..=1 {
                    let h = cech_hypercohomology(&c.twist(Degree::Bi(d1, d2)), None).unwrap();
                    let cech = [h.get(0), h.get(1), h.get(2)];
                    assert_eq!(dual_cohomology(&p, (d1, d2)), cech, "r={r} m={m} ({d1},{d2})");
                }
            }
        }
    }

    #[test]
    fn tables_invariant_under_both_actions() {
        let f = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let e = ExtensionData::random(&f, 2, 5, &mut rng, 5).unwrap();
        let base = table(&build_quadric_bundle(e.clone()).unwrap());
        let w = AutLElement::random(&f, 2, 1, &mut rng, 3);
        let we = aut_action(&w, &e).unwrap();
        assert_eq!(table(&build_quadric_bundle(we).unwrap()), base);
        let ring = e.ring();
        let t = ring.from_scalars(&[f.from_i64(3), f.from_i64(1)]);
        let te = t_action(&t, &e).unwrap();
        assert_eq!(table(&build_quadric_bundle(te.clone()).unwrap()), base);
        assert!(check_table_invariance("t", &e, &te).unwrap().passed());
    }
}
