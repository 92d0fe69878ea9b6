//! Property tests over seeded random complexes and random dimensions.

use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::Rng;

use hodgesamp::complex::HodgeLaplacians;
use hodgesamp::oracle;
use hodgesamp::rng::rng_from_seed;
use hodgesamp::sampling::{aggregate, observe, SamplingPlan};
use hodgesamp::signals::{helmholtz_compose, helmholtz_project, synthesize_bandlimited};
use hodgesamp::spectral::{SpectralBases, DEFAULT_ZERO_TOL};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn chain_complex_identity_holds(seed in any::<u64>()) {
        let c = oracle::random_complex(seed);
        prop_assert!(c.boundary_product_is_zero());
        let l = HodgeLaplacians::new(&c);
        prop_assert_eq!(&(l.l_low() + l.l_up()), l.l1());
        let bound = 1e-10 * (1.0 + l.l_low().amax() * l.l_up().amax());
        prop_assert!((l.l_low() * l.l_up()).amax() <= bound);
    }

    #[test]
    fn helmholtz_round_trip(seed in any::<u64>()) {
        let c = oracle::random_complex(seed);
        let l = HodgeLaplacians::new(&c);
        let bases = SpectralBases::new(&c, &l, DEFAULT_ZERO_TOL).unwrap();
        let s = synthesize_bandlimited(&c, &bases, bases.w0(), bases.w2(), bases.r1_dim(), seed)
            .unwrap();
        let x1 = helmholtz_compose(&c, &s.x0, &s.x2, &s.r1).unwrap();
        prop_assert!((&x1 - &s.x1).amax() <= 1e-12);

        let parts = helmholtz_project(&c, &l, &x1).unwrap();
        let back = &parts.gradient + &parts.curl + &parts.harmonic;
        prop_assert!((back - &x1).amax() <= 1e-10 * (1.0 + x1.amax()));

        // The true components are orthogonal by construction.
        let grad = c.b1().transpose() * &s.x0;
        let curl = c.b2() * &s.x2;
        prop_assert!(grad.dot(&curl).abs() <= 1e-8 * (1.0 + grad.norm() * curl.norm()));
        prop_assert!(grad.dot(&s.r1).abs() <= 1e-8 * (1.0 + grad.norm() * s.r1.norm()));
        prop_assert!(curl.dot(&s.r1).abs() <= 1e-8 * (1.0 + curl.norm() * s.r1.norm()));
    }

    #[test]
    fn spectral_coefficients_round_trip(seed in any::<u64>()) {
        let c = oracle::random_complex(seed);
        let l = HodgeLaplacians::new(&c);
        let bases = SpectralBases::new(&c, &l, DEFAULT_ZERO_TOL).unwrap();
        let s = synthesize_bandlimited(&c, &bases, bases.w0(), bases.w2(), bases.r1_dim(), seed)
            .unwrap();
        // Orthonormal coordinates invert by transposition.
        let back = bases.q0().transpose() * &s.x0;
        prop_assert!((back - &s.x_hat0).amax() <= 1e-10);
        let back = bases.q1_harmonic().transpose() * &s.r1;
        prop_assert!((back - &s.r_hat1).amax() <= 1e-10);
    }

    #[test]
    fn observation_is_linear_and_column_major(seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let n = rng.random_range(3..=12usize);
        let p = rng.random_range(1..=5usize);
        let half = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
        let m = &half + half.transpose();
        let a = DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0));
        let b = DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0));
        let (alpha, beta) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));

        let size = rng.random_range(1..=n);
        let set = oracle::random_subset(rng.random(), n, size);
        let plan = SamplingPlan::new(p, set, None).unwrap();

        let za = observe(&aggregate(&m, &a, p).unwrap(), &plan).unwrap();
        let zb = observe(&aggregate(&m, &b, p).unwrap(), &plan).unwrap();
        let combined = &a * alpha + &b * beta;
        let zc = observe(&aggregate(&m, &combined, p).unwrap(), &plan).unwrap();
        let lhs = za.z1_vec() * alpha + zb.z1_vec() * beta;
        prop_assert!((lhs - zc.z1_vec()).amax() <= 1e-9 * (1.0 + zc.z1_vec().amax()));

        for q in 0..zc.num_shifts() {
            for i in 0..zc.sample_size() {
                prop_assert_eq!(zc.z1_vec()[q * zc.sample_size() + i], zc.z1_matrix()[(i, q)]);
            }
        }
    }

    #[test]
    fn vec_identity(m in 1..6usize, k in 1..6usize, n in 1..6usize, seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let a = DMatrix::from_fn(m, k, |_, _| rng.random_range(-1.0..1.0));
        let c = DMatrix::from_fn(k, n, |_, _| rng.random_range(-1.0..1.0));
        let b = DVector::from_fn(k, |_, _| rng.random_range(-1.0..1.0));
        prop_assert!(oracle::vec_identity_check(&a, &b, &c) <= 1e-12);
    }
}
