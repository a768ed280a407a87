//! Acceptance suite. Each criterion prints one line with its exact
//! integers; the process exits non-zero if any criterion fails.

use std::time::Instant;

use instanton::adhm::{
    adhm_to_monad, charge_one_residuals, check_atiyah_pair, check_real_line_trivial, impose_quaternionic,
    left_from_right, plane_z4, random_gaussian, rho_pullback, solve_charge_one,
};
use instanton::algebra::{random_small, Field, Gaussian, GaussianRationals as Qi, Matrix, Rationals};
use instanton::checks::{
    check_end_dims, check_mayer_vietoris, check_quadric_splitting, check_tangent_dimension, check_tensor_vanishing,
    CheckContext, CheckReport, Status,
};
use instanton::cohomology::{cech_hypercohomology, line_bundle_cohomology, minimal_bound, LineBundleComplex};
use instanton::forms::{AmbientSpace, Degree};
use instanton::hirzebruch::poly::Poly;
use instanton::hirzebruch::{
    aut_action, build_quadric_bundle, check_table_invariance, normalize_u1_slice, riemann_roch_check, t_action,
    t_action_symbolic, AutLElement, ExtensionData, QuotientRing, SymbolicExtension,
};
use instanton::monad::{monad_isomorphic, sample_instanton, Monad};
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Q = Rationals;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn random_invertible<F: Field, R: Rng>(f: &F, k: usize, rng: &mut R) -> Matrix<F> {
    loop {
        let g = Matrix::from_fn(f, k, k, |_, _| random_small(f, rng, 3));
        if g.is_invertible() {
            return g;
        }
    }
}

fn to_gaussian(m: &Monad<Q>) -> Monad<Qi> {
    m.map_field(&Qi, |x| Gaussian::new(x.clone(), BigRational::zero()))
}

fn hard_failures(reports: &[CheckReport]) -> usize {
    reports.iter().filter(|r| r.status == Status::Fail).count()
}

fn computed_usize(r: &CheckReport, key: &str) -> usize {
    r.computed.get(key).and_then(|v| v.as_u64()).unwrap_or(u64::MAX) as usize
}

const SAMPLE_RANGES: [(usize, usize); 5] = [(2, 1), (2, 2), (2, 3), (3, 3), (3, 4)];

/// Sampled monads, four per range, seeds 1..=4.
fn samples() -> Vec<Monad<Q>> {
    SAMPLE_RANGES
        .iter()
        .flat_map(|&(r, n)| (1..=4).map(move |s| sample_instanton(r, n, s).expect("sampler covers the range")))
        .collect()
}

fn criterion_1() -> Outcome {
    let mut bundles = 0;
    let mut bad = 0;
    let mut check = |space: AmbientSpace, d: Degree| {
        let c = LineBundleComplex::sheaf(&Q::default(), space, vec![d]);
        let h = cech_hypercohomology(&c, None).expect("line bundle");
        let expected = line_bundle_cohomology(space, d);
        bundles += 1;
        if (0..=space.dim()).any(|i| h.get(i as i32) != expected[i]) {
            bad += 1;
        }
    };
    for d in -8..=8 {
        for s in [AmbientSpace::P1, AmbientSpace::P2, AmbientSpace::P3] {
            check(s, Degree::Single(d));
        }
        for e in -8..=8 {
            check(AmbientSpace::Quadric, Degree::Bi(d, e));
        }
    }
    let mut cells = 0;
    let mut disagree = 0;
    let ms = samples();
    for m in &ms {
        for k in -4..=2 {
            let display = m.cohomology(k).expect("display chase");
            let cech = cech_hypercohomology(&m.complex().twist_by(k), None).expect("cech");
            cells += 1;
            if (0..4).any(|i| cech.get(i) != display[i as usize]) {
                disagree += 1;
            }
        }
    }
    outcome(
        bad == 0 && disagree == 0 && ms.len() == 20,
        format!(
            "line bundles {bundles}, Bott mismatches {bad}; monads {}, twists {cells}, display/Cech mismatches {disagree}",
            ms.len()
        ),
    )
}

fn criterion_2() -> Outcome {
    let mut bad = Vec::new();
    let ms = samples();
    for m in &ms {
        let n = m.charge();
        let (h1, h3, h2) = (
            m.cohomology(-1).unwrap(),
            m.cohomology(-3).unwrap(),
            m.cohomology(-2).unwrap(),
        );
        if h1[1] != n || h3[2] != n || h2[1] != 0 || h2[2] != 0 || h1[0] != 0 {
            bad.push(format!(
                "({},{}) h(F(-1))={h1:?} h(F(-2))={h2:?} h(F(-3))={h3:?}",
                m.rank(),
                n
            ));
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{} of {} samples match h1(F(-1))=n, h2(F(-3))=n, h1=h2(F(-2))=0, h0(F(-1))=0 {bad:?}",
            ms.len() - bad.len(),
            ms.len()
        ),
    )
}

fn criterion_3() -> Outcome {
    let mut rows = Vec::new();
    let mut pass = true;
    for &(r, n) in &SAMPLE_RANGES {
        let mut found = None;
        for retry in 0..=3u64 {
            let m = sample_instanton(r, n, 100 + retry).unwrap();
            let h = m.cohomology(0).unwrap();
            if h[0] == 0 && h[2] == 0 && h[3] == 0 {
                found = Some((retry, h[1]));
                break;
            }
        }
        match found {
            Some((retry, h1)) => {
                pass &= h1 as i64 == 2 * n as i64 - r as i64;
                rows.push(format!("({r},{n}): h1(F)={h1} expected {} retries {retry}", 2 * n - r));
            }
            None => {
                pass = false;
                rows.push(format!("({r},{n}): no generic sample in 4 tries"));
            }
        }
    }
    outcome(pass, rows.join("; "))
}

fn criterion_4() -> Outcome {
    let pairs = [
        ((2, 1), 1, (2, 1), 2),
        ((2, 1), 3, (2, 1), 4),
        ((2, 1), 5, (2, 2), 6),
        ((2, 2), 7, (2, 1), 8),
        ((2, 2), 9, (2, 2), 10),
        ((2, 1), 11, (2, 3), 12),
    ];
    let ctx = CheckContext::new(4);
    let mut rows = Vec::new();
    let mut pass = true;
    for ((r1, n1), s1, (r2, n2), s2) in pairs {
        let start = Instant::now();
        let m1 = sample_instanton(r1, n1, s1).unwrap();
        let m2 = sample_instanton(r2, n2, s2).unwrap();
        let bound = minimal_bound(&m1.tensor_complex(&m2).unwrap().twist_by(-2));
        let rep = check_tensor_vanishing(&ctx, &m1, &m2).unwrap();
        let h1 = rep.computed.get("h(FG(-1))").cloned().unwrap_or_default();
        let h2 = rep.computed.get("h(FG(-2))").cloned().unwrap_or_default();
        pass &= rep.passed() && bound <= 10;
        rows.push(format!(
            "({r1},{n1})x({r2},{n2}): h(FG(-2))={h2} h(FG(-1))={h1} expected h1={} bound {bound} {:.1}s",
            r2 * n1 + r1 * n2,
            start.elapsed().as_secs_f64()
        ));
    }
    outcome(pass, rows.join("; "))
}

fn end_rows() -> Vec<(usize, usize, CheckReport)> {
    let ctx = CheckContext::new(5);
    [(2, 2), (2, 1), (3, 3)]
        .into_iter()
        .map(|(r, n)| {
            let m = sample_instanton(r, n, 21).unwrap();
            (r, n, check_end_dims(&ctx, &m).unwrap())
        })
        .collect()
}

fn criterion_5(ends: &[(usize, usize, CheckReport)]) -> Outcome {
    let mut rows = Vec::new();
    let mut pass = true;
    for (r, n, rep) in ends {
        pass &= rep.status == Status::Pass;
        rows.push(format!(
            "({r},{n}): h(End F)={} h(End F(-2))={} expected h1={}",
            rep.computed.get("h(End F)").cloned().unwrap_or_default(),
            rep.computed.get("h(End F(-2))").cloned().unwrap_or_default(),
            4 * r * n - r * r + 1
        ));
    }
    outcome(pass, rows.join("; "))
}

fn criterion_6(ends: &[(usize, usize, CheckReport)]) -> Outcome {
    let ctx = CheckContext::new(6);
    let mut rows = Vec::new();
    let mut pass = true;
    for (r, n, end) in ends {
        let m = sample_instanton(*r, *n, 21).unwrap();
        let h1 = end
            .computed
            .get("h(End F)")
            .and_then(|v| v[1].as_u64())
            .map(|x| x as usize);
        let rep = check_tangent_dimension(&ctx, &m, h1).unwrap();
        pass &= rep.passed();
        let nullity = rep.computed.get("nullity").cloned().unwrap_or_default();
        let group = computed_usize(&rep, "group_dimension");
        rows.push(format!(
            "({r},{n}): nullity {nullity} expected {} group {group} h1(End F) {}",
            8 * r * n + 6 * n * n,
            h1.map_or("?".into(), |h| h.to_string())
        ));
    }
    outcome(pass, rows.join("; "))
}

fn criterion_7() -> Outcome {
    let ctx = CheckContext::new(7);
    let mut rows = Vec::new();
    let mut pass = true;
    for (r, n) in [(2, 1), (2, 2)] {
        let m = sample_instanton(r, n, 31).unwrap();
        let rep = check_mayer_vietoris(&ctx, &m).unwrap();
        pass &= rep.status == Status::Pass;
        rows.push(format!(
            "({r},{n}): assembled {} h1(End F) {} [{:?}]",
            rep.computed.get("h1(End F_{D+H})").cloned().unwrap_or_default(),
            rep.expected.get("h1(End F_{D+H})").cloned().unwrap_or_default(),
            rep.status
        ));
    }
    outcome(pass, rows.join("; "))
}

fn criterion_8() -> Outcome {
    let ctx = CheckContext::new(8);
    let mut rows = Vec::new();
    let mut reports = Vec::new();
    for &(r, n) in &[(2, 1), (2, 2), (2, 3), (3, 3)] {
        let m = sample_instanton(r, n, 41).unwrap();
        let rep = check_quadric_splitting(&ctx, &m).unwrap();
        rows.push(format!(
            "({r},{n}): h0(F_Q(k,0)) {} expected {} [{:?}]",
            rep.computed.get("h0(F_Q(k,0))").cloned().unwrap_or_default(),
            rep.expected.get("h0(F_Q(k,0))").cloned().unwrap_or_default(),
            rep.status
        ));
        reports.push(rep);
    }
    let generic = reports.iter().filter(|r| r.status == Status::Pass).count();
    let flagged = reports.iter().filter(|r| r.status == Status::NonGeneric).count();
    // a non-generic report must carry a mismatching profile
    let honest = reports.iter().all(|r| {
        (r.status == Status::NonGeneric) == (r.computed.get("h0(F_Q(k,0))") != r.expected.get("h0(F_Q(k,0))"))
    });
    outcome(
        hard_failures(&reports) == 0 && honest && generic > 0,
        format!("generic {generic}, flagged non-generic {flagged}; {}", rows.join("; ")),
    )
}

fn criterion_9() -> Outcome {
    let f = Q::default();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut invariance = 0;
    let mut slices = 0;
    let mut chi_ok = 0;
    let mut built = 0;
    let mut failures = Vec::new();
    for trial in 0..10 {
        let r = 2 + trial % 2;
        let m = (2 + trial % 5).max(r);
        let e = ExtensionData::random(&f, r, m, &mut rng, 4).unwrap();
        let (_, rho) = e.splitting();
        let w = AutLElement::random(&f, r, rho, &mut rng, 3);
        let ring = e.ring();
        let t = loop {
            let c: Vec<_> = (0..m).map(|_| random_small(&f, &mut rng, 3)).collect();
            let t = ring.from_scalars(&c);
            if ring.is_invertible(&t) {
                break t;
            }
        };
        let we = aut_action(&w, &e).unwrap();
        let te = t_action(&t, &e).unwrap();
        let a = check_table_invariance("aut", &e, &we).unwrap();
        let b = check_table_invariance("t", &e, &te).unwrap();
        if a.passed() && b.passed() {
            invariance += 1;
        } else {
            failures.push(format!("invariance trial {trial}"));
        }
        match normalize_u1_slice(&e) {
            Ok((_, n1)) => {
                let (w2, n2) = normalize_u1_slice(&n1).unwrap();
                if (rho == 0 || n1.left_block(3).is_zero()) && n2 == n1 && w2.is_identity() {
                    slices += 1;
                } else {
                    failures.push(format!("slice trial {trial}"));
                }
            }
            Err(err) => failures.push(format!("slice trial {trial}: {err}")),
        }
        for data in [e, we, te] {
            let p = build_quadric_bundle(data).unwrap();
            built += 1;
            let rr = riemann_roch_check(&p);
            if rr.passed() {
                chi_ok += 1;
            }
        }
    }
    let mut symbolic = 0;
    for m in 2..=3 {
        let e = ExtensionData::random(&f, 2, m, &mut rng, 4).unwrap();
        let ring = QuotientRing::symbolic(&f, m);
        let mut c = vec![Poly::constant(&f, m, f.from_i64(2)), ring.s()[0].clone()];
        c.resize(m, Poly::zero(&f, m));
        if m == 3 {
            c[2] = ring.s()[1].clone();
        }
        let t = ring.from_polys(c);
        if !ring.is_invertible(&t) {
            failures.push(format!("symbolic t not invertible at m={m}"));
            continue;
        }
        let sym = t_action_symbolic(&ring, &t, &SymbolicExtension::lift(&e)).unwrap();
        let num = t_action(&ring.specialize(&t, e.points()), &e).unwrap();
        if sym.evaluate(&f, e.points()).unwrap() == num {
            symbolic += 1;
        } else {
            failures.push(format!("symbolic m={m}"));
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "invariance {invariance}/10, slice zero+idempotent {slices}/10, symbolic=numeric {symbolic}/2, chi=r-m {chi_ok}/{built} {failures:?}"
        ),
    )
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    // relations and involutivity on random data
    let mut relations = 0;
    for _ in 0..5 {
        let left: Vec<Matrix<Qi>> = (0..4)
            .map(|_| Matrix::from_fn(&Qi, 4, 1, |_, _| random_gaussian(&mut rng, 3)))
            .collect();
        let d = impose_quaternionic(left.clone()).unwrap();
        let r = d.right();
        let holds = r[0] == left[1].adjoint()
            && r[1] == left[0].adjoint().neg()
            && r[2] == left[3].adjoint()
            && r[3] == left[2].adjoint().neg();
        if holds && left_from_right(r) == left {
            relations += 1;
        }
    }
    let d = solve_charge_one(2, &mut rng).unwrap();
    let residual = charge_one_residuals(&d).iter().filter(|x| !Qi.is_zero(x)).count();
    let conv = adhm_to_monad(&d, 20, &mut rng).unwrap();
    let valid = conv.report.validation.as_ref().is_some_and(|v| v.is_valid());
    let inst = conv.report.validation.as_ref().is_some_and(|v| v.instanton_condition());
    let Some(m) = conv.monad.clone() else {
        return outcome(false, format!("relations {relations}/5; solver produced no monad"));
    };
    let intertwiner = monad_isomorphic(&m, &rho_pullback(&m).unwrap(), &mut rng, 20).is_some();
    let lines = check_real_line_trivial(&m, 24, 10).unwrap();
    let jumps = lines
        .computed
        .get("jumping_real_lines")
        .and_then(|v| v.as_array().map(|a| a.len()))
        .unwrap_or(usize::MAX);
    let atiyah = check_atiyah_pair(&m, &plane_z4(), 10).unwrap();
    let other = to_gaussian(&sample_instanton(2, 1, 3).unwrap());
    let atiyah_other = check_atiyah_pair(&other, &plane_z4(), 10).unwrap();
    let pass = relations == 5
        && residual == 0
        && valid
        && inst
        && intertwiner
        && lines.passed()
        && jumps == 0
        && atiyah.passed()
        && !atiyah_other.passed();
    outcome(
        pass,
        format!(
            "relations+involution {relations}/5, residuals {residual}, valid {valid}, instanton {inst}, intertwiner {intertwiner}, \
             jumping twistor lines {jumps}/24, atiyah pair {:?}, non-real sample {:?}",
            atiyah.status, atiyah_other.status
        ),
    )
}

fn criterion_11() -> Outcome {
    let f = Q::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut recovered = 0;
    for seed in 0..10 {
        let (r, n) = if seed % 2 == 0 { (2, 2) } else { (2, 1) };
        let m = sample_instanton(r, n, 50 + seed).unwrap();
        let (gc, gv, gw) = (
            random_invertible(&f, m.middle(), &mut rng),
            random_invertible(&f, n, &mut rng),
            random_invertible(&f, n, &mut rng),
        );
        let m2 = m.act(&gv, &gc, &gw).unwrap();
        if let Some(g) = monad_isomorphic(&m, &m2, &mut rng, 10) {
            let ok = m.epsilon().left_mul_const(&g.g_c).unwrap() == m2.epsilon().right_mul_const(&g.g_v).unwrap()
                && m2.q().right_mul_const(&g.g_c).unwrap() == m.q().left_mul_const(&g.g_w).unwrap()
                && g.g_v.is_invertible()
                && g.g_c.is_invertible()
                && g.g_w.is_invertible();
            if ok {
                recovered += 1;
            }
        }
    }
    let mut separated = 0;
    for seed in 0..10 {
        let m1 = sample_instanton(2, 2, 200 + seed).unwrap();
        let m2 = sample_instanton(2, 2, 300 + seed).unwrap();
        if monad_isomorphic(&m1, &m2, &mut rng, 10).is_none() {
            separated += 1;
        }
    }
    outcome(
        recovered == 10 && separated == 10,
        format!("planted orbits recovered {recovered}/10, independent (2,2) pairs separated {separated}/10"),
    )
}

fn main() {
    let mut failed = 0;
    let mut run = |k: usize, f: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let o = f();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {k:>2} {tag} ({:.1}s): {}",
            start.elapsed().as_secs_f64(),
            o.detail
        );
        if !o.pass {
            failed += 1;
        }
    };
    run(1, &criterion_1);
    run(2, &criterion_2);
    run(3, &criterion_3);
    run(4, &criterion_4);
    let ends = end_rows();
    run(5, &|| criterion_5(&ends));
    run(6, &|| criterion_6(&ends));
    run(7, &criterion_7);
    run(8, &criterion_8);
    run(9, &criterion_9);
    run(10, &criterion_10);
    run(11, &criterion_11);
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
