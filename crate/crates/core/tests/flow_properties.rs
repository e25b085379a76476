mod common;

use common::*;
use dulac::flow::{self, estimate_generator, OdeOptions};
use dulac::spectrum::DEFAULT_TOL;
use dulac::{fixtures, normalform, PolyMap, VectorField};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn semigroup_cocycle(seed in any::<u64>(), t in 0.0f64..2.0, s in 0.0f64..2.0) {
        let mut r = rng(seed);
        let f = random_field(&mut r, 2);
        let z = point(&mut r, 2, 0.3);
        let o = OdeOptions::default();
        let two = flow::evaluate_flow(&f, t, &flow::evaluate_flow(&f, s, &z, &o).unwrap(), &o).unwrap();
        let one = flow::evaluate_flow(&f, t + s, &z, &o).unwrap();
        prop_assert!(max_dist(&two, &one) <= 1e-8);
    }

    #[test]
    fn flow_derivative_at_origin_is_linear_part(seed in any::<u64>(), t in 0.1f64..3.0) {
        let mut r = rng(seed);
        let f = random_field(&mut r, 2);
        let z = point(&mut r, 2, 1.0);
        let eps = 1e-7;
        let small: Vec<_> = z.iter().map(|x| x * eps).collect();
        let phi = flow::evaluate_flow(&f, t, &small, &OdeOptions::default()).unwrap();
        let want = flow::linear_flow(f.alpha(), t, &z);
        let got: Vec<_> = phi.iter().map(|x| x / eps).collect();
        prop_assert!(max_dist(&got, &want) <= 1e-5);
    }

    #[test]
    fn generator_is_recovered(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = random_field(&mut r, 2);
        let z = point(&mut r, 2, 0.3);
        let o = OdeOptions::default();
        let est = estimate_generator(|t, z| flow::evaluate_flow(&f, t, z, &o), &z, 0.05).unwrap();
        prop_assert!(max_dist(&est.value, &f.evaluate(&z).unwrap()) <= 1e-6);
    }

    #[test]
    fn triangular_group_law_matches_integration(seed in any::<u64>(), t in 0.0f64..4.0) {
        let mut r = rng(seed);
        let higher = PolyMap::from_terms(3, 3, [
            (1, [2, 0, 0], complex(&mut r, 1.0)),
            (2, [1, 1, 0], complex(&mut r, 1.0)),
            (2, [3, 0, 0], complex(&mut r, 1.0)),
        ]).unwrap();
        let f = VectorField::new(vec![c(-1.0, 0.0), c(-2.0, 0.0), c(-3.0, 0.0)], higher, 2.0).unwrap();
        let p = flow::triangular_flow(&f, DEFAULT_TOL).unwrap();
        let z = point(&mut r, 3, 0.4);
        let tr = flow::integrate_at(&f, &z, &[t], &OdeOptions::default()).unwrap();
        prop_assert!(max_dist(tr.last(), &p.eval(t, &z).unwrap()) <= 1e-8);
        prop_assert!(max_dist(&p.eval(-t, &p.eval(t, &z).unwrap()).unwrap(), &z) <= 1e-10);
    }
}

#[test]
fn normal_form_flow_conjugates_original_flow() {
    // h o phi_t = P_t o h for the 3-d resonant fixture, up to truncation.
    let f = fixtures::resonant_3d();
    let nf = normalform::solve(&f, &Default::default()).unwrap();
    let p = flow::triangular_flow(&nf.normal_field, DEFAULT_TOL).unwrap();
    let z = [c(0.05, 0.01), c(-0.03, 0.02), c(0.04, -0.02)];
    for t in [0.5, 1.0, 3.0] {
        let phi = flow::evaluate_flow(&f, t, &z, &OdeOptions::default()).unwrap();
        let lhs = nf.h.evaluate(&phi).unwrap();
        let rhs = p.eval(t, &nf.h.evaluate(&z).unwrap()).unwrap();
        assert!(max_dist(&lhs, &rhs) < 1e-9, "t = {t}");
    }
}

#[test]
fn trajectory_csv_has_one_row_per_sample() {
    let f = fixtures::example2(c(1.0, 0.0));
    let tr = flow::integrate_at(&f, &[c(0.2, 0.0), c(0.1, 0.0)], &[0.0, 0.5, 1.0], &OdeOptions::default()).unwrap();
    let csv = tr.to_csv();
    assert_eq!(csv.lines().count(), 4);
    assert!(csv.starts_with("t,re(z_1),im(z_1),re(z_2),im(z_2)"));
}
