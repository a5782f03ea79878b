use proptest::prelude::*;

use symnorm::harness::gen::{gen_concave, gen_general, gen_hermitian, gen_normal, gen_psd, gen_unitary, trial_rng};
use symnorm::matcore::{
    apply_fn_abs, hermitian_dilation, is_psd, is_unitary, matrix_abs, polar_factors, pos_neg_parts, singular_values,
    PolarSide,
};
use symnorm::norms::{majorization_from_spectra, weakly_majorized};
use symnorm::theorems::check_subadditivity;

fn sv(a: &symnorm::ComplexMatrix) -> Vec<f64> {
    singular_values(a).as_slice().to_vec()
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn singular_values_are_unitarily_invariant(seed in any::<u64>(), n in 1usize..7) {
        let mut rng = trial_rng(seed, 0);
        let a = gen_general(&mut rng, n, 2.0);
        let u = gen_unitary(&mut rng, n);
        let v = gen_unitary(&mut rng, n);
        let moved = &(&u * &a) * &v;
        prop_assert!(max_diff(&sv(&a), &sv(&moved)) < 1e-10);
    }

    #[test]
    fn dilation_doubles_the_spectrum(seed in any::<u64>(), n in 1usize..6) {
        let mut rng = trial_rng(seed, 1);
        let a = gen_general(&mut rng, n, 2.0);
        let s = sv(&a);
        let doubled: Vec<f64> = s.iter().flat_map(|&x| [x, x]).collect();
        prop_assert!(max_diff(&sv(&hermitian_dilation(&a)), &doubled) < 1e-10);
    }

    #[test]
    fn absolute_value_squares_to_gram(seed in any::<u64>(), n in 1usize..7) {
        let mut rng = trial_rng(seed, 2);
        let a = gen_general(&mut rng, n, 2.0);
        let abs = matrix_abs(&a).unwrap();
        prop_assert!(is_psd(&abs, 1e-9).unwrap());
        prop_assert!((&abs * &abs).max_abs_diff(&(&a.adjoint() * &a)) < 1e-9);
        prop_assert!(apply_fn_abs(&|t: f64| t, &a).unwrap().max_abs_diff(&abs) < 1e-10);
    }

    #[test]
    fn polar_factors_reconstruct(seed in any::<u64>(), n in 1usize..7) {
        let mut rng = trial_rng(seed, 3);
        let a = gen_general(&mut rng, n, 2.0);
        let (u, p) = polar_factors(&a, PolarSide::Right).unwrap();
        prop_assert!(is_unitary(&u, 1e-9));
        prop_assert!((&u * &p).max_abs_diff(&a) < 1e-9);
    }

    #[test]
    fn positive_and_negative_parts_are_orthogonal(seed in any::<u64>(), n in 1usize..7) {
        let mut rng = trial_rng(seed, 4);
        let h = gen_hermitian(&mut rng, n, 2.0);
        let (p, q) = pos_neg_parts(&h, 1e-9).unwrap();
        prop_assert!((&p - &q).max_abs_diff(&h) < 1e-10);
        prop_assert!((&p * &q).frobenius_norm() < 1e-10);
        prop_assert!(is_psd(&p, 1e-10).unwrap() && is_psd(&q, 1e-10).unwrap());
    }

    #[test]
    fn majorization_is_reflexive_and_follows_scaling(seed in any::<u64>(), n in 1usize..7, s in 0.0f64..1.0) {
        let mut rng = trial_rng(seed, 5);
        let a = gen_psd(&mut rng, n, 2.0);
        prop_assert!(weakly_majorized(&a, &a, 1e-12).unwrap().holds);
        prop_assert!(weakly_majorized(&a.scale(s), &a, 1e-12).unwrap().holds);
        let v = majorization_from_spectra(&sv(&a), &[], 1e-12);
        prop_assert_eq!(v.holds, sv(&a).iter().all(|&x| x <= 1e-12));
    }

    #[test]
    fn concave_subadditivity_on_normal_pairs(seed in any::<u64>(), n in 1usize..6) {
        let mut rng = trial_rng(seed, 6);
        let f = gen_concave(&mut rng, 3.0);
        let ops = vec![gen_normal(&mut rng, n, 2.0, false), gen_normal(&mut rng, n, 2.0, false)];
        let r = check_subadditivity(&f, &ops, 1e-9).unwrap();
        prop_assert!(r.holds, "{:?}", r.per_k);
    }
}
