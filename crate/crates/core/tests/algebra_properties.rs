mod common;

use common::*;
use dulac::algebra::{compose, jacobian_apply};
use dulac::normalform::{formal_inverse, inverse_residual};
use dulac::PolyMap;
use proptest::prelude::*;

fn seeds() -> impl Strategy<Value = u64> {
    any::<u64>()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative(seed in seeds()) {
        let mut r = rng(seed);
        let (a, b, g) = (origin_map(&mut r, 2, 4, 5), origin_map(&mut r, 2, 4, 5), origin_map(&mut r, 2, 4, 5));
        let left = compose(&compose(&a, &b, 4).unwrap(), &g, 4).unwrap();
        let right = compose(&a, &compose(&b, &g, 4).unwrap(), 4).unwrap();
        let scale = left.max_abs_coeff().max(1.0);
        prop_assert!(left.sub_exact(&right).unwrap().max_abs_coeff() <= 1e-10 * scale);
    }

    #[test]
    fn identity_is_neutral(seed in seeds()) {
        let mut r = rng(seed);
        let a = origin_map(&mut r, 3, 4, 6);
        let id = PolyMap::identity(3, 4);
        prop_assert!(compose(&a, &id, 4).unwrap().sub_exact(&a).unwrap().max_abs_coeff() <= 1e-14);
        prop_assert!(compose(&id, &a, 4).unwrap().sub_exact(&a).unwrap().max_abs_coeff() <= 1e-14);
    }

    #[test]
    fn formal_inverse_round_trips(seed in seeds()) {
        let mut r = rng(seed);
        let h = normalized_map(&mut r, 3, 6, 6, 1.0);
        let g = formal_inverse(&h, 6).unwrap();
        prop_assert!(inverse_residual(&h, &g, 6).unwrap() <= 1e-10);
        prop_assert!(inverse_residual(&g, &h, 6).unwrap() <= 1e-10);
    }

    #[test]
    fn homogeneous_parts_sum_back(seed in seeds()) {
        let mut r = rng(seed);
        let a = origin_map(&mut r, 2, 5, 8);
        let mut sum = PolyMap::zero(2, 5);
        for m in 0..=5 {
            sum = sum.add(&a.homogeneous_part(m)).unwrap();
        }
        prop_assert_eq!(sum, a);
    }

    #[test]
    fn evaluation_respects_composition(seed in seeds()) {
        // Exact when the degrees fit below the truncation.
        let mut r = rng(seed);
        let a = origin_map(&mut r, 2, 2, 2);
        let b = origin_map(&mut r, 2, 2, 2);
        let z = point(&mut r, 2, 0.5);
        let lhs = compose(&a, &b, 4).unwrap().evaluate(&z).unwrap();
        let rhs = a.evaluate(&b.evaluate(&z).unwrap()).unwrap();
        prop_assert!(max_dist(&lhs, &rhs) <= 1e-12);
    }

    #[test]
    fn jacobian_apply_matches_directional_derivative(seed in seeds()) {
        let mut r = rng(seed);
        let p = origin_map(&mut r, 2, 3, 4);
        let v = origin_map(&mut r, 2, 3, 4);
        let z = point(&mut r, 2, 0.3);
        let dp = jacobian_apply(&p, &v, 6).unwrap().evaluate(&z).unwrap();
        let vz = v.evaluate(&z).unwrap();
        let h = 1e-6;
        let shifted = |s: f64| -> Vec<_> { z.iter().zip(&vz).map(|(a, b)| a + b * s).collect() };
        let fd: Vec<_> = p.evaluate(&shifted(h)).unwrap().iter()
            .zip(p.evaluate(&shifted(-h)).unwrap())
            .map(|(a, b)| (a - b) / (2.0 * h))
            .collect();
        prop_assert!(max_dist(&dp, &fd) <= 1e-6);
    }

    #[test]
    fn json_round_trip(seed in seeds()) {
        let mut r = rng(seed);
        let a = origin_map(&mut r, 3, 4, 6);
        let back: PolyMap = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        prop_assert_eq!(back, a);
    }
}
