use majorize_core::matrix::{
    classify_matrix, compose, compose_certificates, convex_combine_certificates,
    decompose_increasable, vonneumann_complete,
};
use majorize_core::sample::{random_doubly_stochastic, random_doubly_substochastic, trial_rng};
use majorize_core::{MatrixClass, CLASS_TOL, EXACT_TOL};
use proptest::prelude::*;

proptest! {
    #[test]
    fn completion_invariants(seed in any::<u64>(), n in 1usize..=30) {
        let d = random_doubly_substochastic(&mut trial_rng(seed, 0), n, CLASS_TOL);
        let cert = vonneumann_complete(&d).unwrap();
        prop_assert!(cert.verify(CLASS_TOL).is_ok());
        prop_assert_eq!(cert.completion.class(), MatrixClass::DoublyStochastic);
        prop_assert!(cert.completion.dominates(&d, 0.0));
        prop_assert!(cert.steps <= 2 * n - 1);
    }

    #[test]
    fn stochastic_input_is_left_alone(seed in any::<u64>(), n in 1usize..=12) {
        let d = random_doubly_stochastic(&mut trial_rng(seed, 0), n, CLASS_TOL);
        let cert = vonneumann_complete(&d).unwrap();
        prop_assert_eq!(cert.completion.data(), d.data());
        prop_assert_eq!(cert.steps, 0);
    }

    #[test]
    fn decomposition_reconstructs(seed in any::<u64>(), n in 1usize..=20) {
        let d = random_doubly_substochastic(&mut trial_rng(seed, 0), n, CLASS_TOL);
        let cert = vonneumann_complete(&d).unwrap();
        let dec = decompose_increasable(&d, &cert).unwrap();
        prop_assert_eq!(dec.d1.class(), MatrixClass::DoublyStochastic);
        prop_assert!(dec.d2.class().is_doubly_substochastic());
        prop_assert!(dec.reconstruction_error(&d) <= EXACT_TOL);
    }

    #[test]
    fn closure_under_composition_and_mixing(seed in any::<u64>(), n in 1usize..=15, t in 0.0..=1.0f64) {
        let mut rng = trial_rng(seed, 0);
        let a = random_doubly_substochastic(&mut rng, n, CLASS_TOL);
        let b = random_doubly_substochastic(&mut rng, n, CLASS_TOL);
        let (ca, cb) = (vonneumann_complete(&a).unwrap(), vonneumann_complete(&b).unwrap());
        let prod = compose_certificates(&ca, &cb).unwrap();
        prop_assert!(prod.verify(CLASS_TOL).is_ok());
        prop_assert_eq!(&prod.base, &compose(&a, &b).unwrap());
        let mix = convex_combine_certificates(t, &ca, &cb).unwrap();
        prop_assert!(mix.verify(CLASS_TOL).is_ok());
        prop_assert!(mix.base.class().is_doubly_substochastic());
    }

    #[test]
    fn classification_is_monotone_in_tol(
        data in prop::collection::vec(0.0..0.6f64, 9),
        t1 in 1e-12..1e-3f64,
        scale in 1.0..1e3f64,
    ) {
        let t2 = t1 * scale;
        let tight = classify_matrix(3, data.clone(), t1).unwrap();
        let loose = classify_matrix(3, data, t2).unwrap();
        // anything that holds under the tight tolerance holds under the loose one
        prop_assert!(loose.class().implies(tight.class()));
    }

    #[test]
    fn perturbed_stochastic_class_relaxes_with_tol(seed in any::<u64>(), n in 1usize..=8, noise in -1e-6..1e-6f64) {
        let d = random_doubly_stochastic(&mut trial_rng(seed, 0), n, CLASS_TOL);
        let mut data = d.data().to_vec();
        data[0] = (data[0] + noise).max(0.0);
        let tight = classify_matrix(n, data.clone(), 1e-12).unwrap();
        let loose = classify_matrix(n, data, 1e-5).unwrap();
        prop_assert_eq!(loose.class(), MatrixClass::DoublyStochastic);
        prop_assert!(loose.class().implies(tight.class()));
    }
}
