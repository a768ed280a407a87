use instanton::adhm::{hermitian_norm, impose_quaternionic, rho_point};
use instanton::algebra::{reduce_matrix, Field, Gaussian, GaussianRationals as Qi, Matrix, PrimeField, Rationals};
use instanton::cohomology::line_bundle_cohomology;
use instanton::forms::{mult_map, AmbientSpace, Degree, Form, FormMatrix, Substitution};
use instanton::hirzebruch::{aut_action, t_action, AutLElement, ExtensionData};
use instanton::io::{extension_from_json, extension_to_json, monad_from_json, monad_to_json};
use instanton::monad::sample_instanton;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, cols), rows)
}

fn linear_matrix(rows: usize, cols: usize, seed: u64) -> FormMatrix<Rationals> {
    let f = Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs: Vec<Matrix<Rationals>> = (0..4)
        .map(|_| Matrix::from_fn(&f, rows, cols, |_, _| instanton::algebra::random_small(&f, &mut rng, 2)))
        .collect();
    FormMatrix::linear(&f, AmbientSpace::P3, &coeffs).unwrap()
}

fn gaussian_vec() -> impl Strategy<Value = Vec<Gaussian>> {
    prop::collection::vec((-5i64..=5, -5i64..=5).prop_map(|(a, b)| Gaussian::from_ints(a, b)), 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_is_transpose_invariant(rows in int_matrix(5, 4)) {
        let m = Matrix::from_i64(&Rationals, &rows);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert_eq!(m.rank(), m.gauss_rank());
    }

    #[test]
    fn reduction_never_raises_rank(rows in int_matrix(4, 6), p in prop::sample::select(vec![2u64, 3, 5, 7, 32003])) {
        let m = Matrix::from_i64(&Rationals, &rows);
        let fp = PrimeField::new(p).unwrap();
        let mp = reduce_matrix(&m, &fp).unwrap();
        prop_assert!(mp.rank() <= m.rank());
        prop_assert_eq!(mp.rank(), mp.transpose().rank());
    }

    #[test]
    fn mult_map_is_functorial(seed in any::<u64>(), d in -1i32..=2) {
        let a = linear_matrix(2, 3, seed);
        let b = linear_matrix(3, 2, seed.wrapping_add(1));
        let ab = a.mul(&b).unwrap();
        let d = Degree::Single(d);
        let lhs = mult_map(&ab, d).unwrap();
        let rhs = mult_map(&a, d + Degree::Single(1)).unwrap().mul(&mult_map(&b, d).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_is_multiplicative_and_evaluates(
        a in int_matrix(4, 2),
        f in prop::collection::vec(-3i64..=3, 4),
        g in prop::collection::vec(-3i64..=3, 4),
        s in -4i64..=4,
        t in -4i64..=4,
    ) {
        let fld = Rationals;
        let m = Matrix::from_i64(&fld, &a);
        prop_assume!(m.rank() == 2);
        let sub = Substitution::linear(AmbientSpace::P3, AmbientSpace::P1, &m).unwrap();
        let lin = |c: &[i64]| {
            let c: Vec<_> = c.iter().map(|&x| fld.from_i64(x)).collect();
            Form::linear(&fld, AmbientSpace::P3, &c)
        };
        let (f, g) = (lin(&f), lin(&g));
        let fg = f.mul(&g);
        prop_assert_eq!(sub.apply(&fg).unwrap(), sub.apply(&f).unwrap().mul(&sub.apply(&g).unwrap()));
        let w = vec![fld.from_i64(s), fld.from_i64(t)];
        let image = m.mul_vec(&w);
        prop_assert_eq!(sub.apply(&fg).unwrap().evaluate(&w), fg.evaluate(&image));
    }

    #[test]
    fn bott_formula_is_serre_symmetric(d in -8i32..=8) {
        for space in [AmbientSpace::P1, AmbientSpace::P2, AmbientSpace::P3] {
            let n = space.dim();
            let h = line_bundle_cohomology(space, Degree::Single(d));
            let hd = line_bundle_cohomology(space, Degree::Single(-d - n as i32 - 1));
            for i in 0..=n {
                prop_assert_eq!(h[i], hd[n - i]);
            }
        }
    }

    #[test]
    fn rho_is_a_quaternionic_structure(z in gaussian_vec()) {
        let rz = rho_point(&z).unwrap();
        prop_assert_eq!(hermitian_norm(&rz), hermitian_norm(&z));
        let rrz = rho_point(&rz).unwrap();
        let neg: Vec<Gaussian> = z.iter().map(|c| Qi.neg(c)).collect();
        prop_assert_eq!(rrz, neg);
    }

    #[test]
    fn impose_is_idempotent(seed in any::<u64>(), r in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 1;
        let left: Vec<Matrix<Qi>> = (0..4)
            .map(|_| Matrix::from_fn(&Qi, r + 2 * n, n, |_, _| instanton::adhm::random_gaussian(&mut rng, 3)))
            .collect();
        let d = impose_quaternionic(left.clone()).unwrap();
        prop_assert_eq!(d.left(), &left[..]);
        let again = impose_quaternionic(d.left().to_vec()).unwrap();
        prop_assert_eq!(&again, &d);
    }

    #[test]
    fn aut_action_is_a_group_action(seed in any::<u64>(), r in 2usize..=3, m in 3usize..=5) {
        let f = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = ExtensionData::random(&f, r, m, &mut rng, 4).unwrap();
        let rho = e.splitting().1;
        let w1 = AutLElement::random(&f, r, rho, &mut rng, 3);
        let w2 = AutLElement::random(&f, r, rho, &mut rng, 3);
        let lhs = aut_action(&w1.compose(&w2), &e).unwrap();
        let rhs = aut_action(&w1, &aut_action(&w2, &e).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn t_action_is_a_group_action(seed in any::<u64>(), m in 2usize..=5) {
        let f = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = ExtensionData::random(&f, 2, m, &mut rng, 4).unwrap();
        let ring = e.ring();
        let mut pick = || {
            let c: Vec<_> = (0..m).map(|_| instanton::algebra::random_small(&f, &mut rng, 3)).collect();
            ring.from_scalars(&c)
        };
        let (t1, t2) = (pick(), pick());
        prop_assume!(ring.is_invertible(&t1) && ring.is_invertible(&t2));
        let lhs = t_action(&ring.mul(&t1, &t2), &e).unwrap();
        let rhs = t_action(&t1, &t_action(&t2, &e).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn extension_files_roundtrip(seed in any::<u64>(), m in 2usize..=5) {
        let f = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = ExtensionData::random(&f, 2, m, &mut rng, 4).unwrap();
        let s = extension_to_json(&e);
        prop_assert_eq!(extension_from_json(&s).unwrap().to_json(), s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn monad_files_roundtrip(seed in 0u64..1000) {
        let m = sample_instanton(2, 1, seed).unwrap();
        let s = monad_to_json(&m);
        prop_assert_eq!(monad_from_json(&s).unwrap().to_json(), s);
    }
}
