use majorize_core::matrix::vonneumann_complete;
use majorize_core::preservers::{
    apply_injection_operator, build_preserver, classify_preserver_l1, classify_preserver_lp,
    construct_s, intertwining_residual, PreserverSpec, Space, TruncatedOperator,
};
use majorize_core::sample::{
    random_doubly_substochastic, random_family, random_preserver_spec, random_vector, trial_rng,
};
use majorize_core::seq::p_norm;
use majorize_core::{CLASS_TOL, EXACT_TOL};
use proptest::prelude::*;
use rand::Rng;

fn space() -> impl Strategy<Value = Space> {
    prop_oneof![Just(Space::Lp), Just(Space::L1)]
}

fn classify(op: &TruncatedOperator, space: Space) -> bool {
    match space {
        Space::Lp => classify_preserver_lp(op, CLASS_TOL).accepted,
        Space::L1 => classify_preserver_l1(op, CLASS_TOL).accepted,
    }
}

fn materialise(spec: &PreserverSpec) -> TruncatedOperator {
    build_preserver(spec, spec.row_bound(), spec.domain_dim()).unwrap()
}

proptest! {
    #[test]
    fn injection_operators_preserve_norms(seed in any::<u64>(), domain in 1usize..=12, p in 1.0..5.0f64) {
        let mut rng = trial_rng(seed, 0);
        let fam = random_family(&mut rng, 3, domain, domain);
        let f = random_vector(&mut rng, domain, 1.0);
        for theta in fam.members() {
            let pf = apply_injection_operator(theta, &f).unwrap();
            prop_assert_eq!(p_norm(&pf, p).unwrap(), p_norm(&f, p).unwrap());
            prop_assert_eq!(p_norm(&pf, 1.0).unwrap(), p_norm(&f, 1.0).unwrap());
        }
    }

    #[test]
    fn disjoint_images_add_norms(seed in any::<u64>(), domain in 1usize..=12) {
        let mut rng = trial_rng(seed, 0);
        let spec = random_preserver_spec(&mut rng, domain, Space::Lp);
        let f = random_vector(&mut rng, domain, 1.0);
        let tf = materialise(&spec).apply(&f).unwrap();
        let lambda: f64 = spec.weights().iter().sum();
        let expected = lambda * f.sum();
        prop_assert!((tf.sum() - expected).abs() <= EXACT_TOL * expected.max(1.0));
    }

    #[test]
    fn built_preservers_classify(seed in any::<u64>(), domain in 1usize..=10, space in space()) {
        let spec = random_preserver_spec(&mut trial_rng(seed, 0), domain, space);
        prop_assert!(classify(&materialise(&spec), space));
    }

    #[test]
    fn single_corruption_flips_verdict(seed in any::<u64>(), domain in 2usize..=10, space in space()) {
        let mut rng = trial_rng(seed, 0);
        let spec = random_preserver_spec(&mut rng, domain, space);
        let mut op = materialise(&spec);
        let zeros: Vec<(usize, usize)> = (0..op.rows())
            .flat_map(|i| (0..op.cols()).map(move |j| (i, j)))
            .filter(|&(i, j)| op.get(i, j) == 0.0)
            .collect();
        prop_assume!(!zeros.is_empty());
        let (i, j) = zeros[rng.random_range(0..zeros.len())];
        // 2 exceeds every sampled weight, so it never completes a pattern
        op.set(i, j, 2.0).unwrap();
        prop_assert!(!classify(&op, space));
    }

    #[test]
    fn intertwining_holds(seed in any::<u64>(), domain in 1usize..=8, members in 1usize..=4, a in 0.0..=1.0f64) {
        let mut rng = trial_rng(seed, 0);
        let spare = rng.random_range(0..=domain);
        let fam = random_family(&mut rng, members, domain, spare);
        let d = random_doubly_substochastic(&mut rng, domain, CLASS_TOL);
        let cert = vonneumann_complete(&d).unwrap();
        let n = fam.image_bound() + rng.random_range(0..=4usize);
        let s = construct_s(&d, &cert, &fam, a, n).unwrap();
        for theta in fam.members() {
            prop_assert!(intertwining_residual(&d, &s, theta) <= EXACT_TOL);
        }
    }

    #[test]
    fn geometric_limits_stay_preservers(seed in any::<u64>(), domain in 1usize..=8, space in space()) {
        let spec = random_preserver_spec(&mut trial_rng(seed, 0), domain, space);
        let limit = materialise(&spec);
        let mut previous = f64::INFINITY;
        for m in 1..=30 {
            let r = 1.0 - 0.5f64.powi(m);
            let weights = spec.weights().iter().map(|w| w * r).collect();
            let approx = PreserverSpec::new(
                spec.p(),
                weights,
                spec.family().clone(),
                spec.constant_row().cloned(),
            )
            .unwrap();
            let op = materialise(&approx);
            prop_assert!(classify(&op, space));
            let dist = op.sup_distance(&limit);
            prop_assert!(dist <= previous);
            previous = dist;
        }
        prop_assert!(previous <= 1e-9);
        prop_assert!(classify(&limit, space));
    }
}
