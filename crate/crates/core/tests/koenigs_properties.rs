mod common;

use common::*;
use dulac::flow::{self, OdeOptions};
use dulac::koenigs::{self, KoenigsOptions, Verdict};
use dulac::{fixtures, normalform};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn koenigs_limit_conjugates_flow_to_linear(seed in any::<u64>(), t in 0.2f64..2.0) {
        // K(phi_t z) = e^{At} K(z) for the limit K with Q = h.
        let mut r = rng(seed);
        let f = fixtures::nonres_2_5();
        let h = normalform::solve(&f, &Default::default()).unwrap().h;
        let z = point(&mut r, 2, 0.3);
        let o = KoenigsOptions::default();
        let k_z = koenigs::limit_with_precomposition(&f, &h, &z, &o).unwrap();
        prop_assert_eq!(k_z.verdict, Verdict::Converged);
        let phi = flow::evaluate_flow(&f, t, &z, &OdeOptions::default()).unwrap();
        let k_phi = koenigs::limit_with_precomposition(&f, &h, &phi, &o).unwrap();
        prop_assert_eq!(k_phi.verdict, Verdict::Converged);
        let want = flow::linear_flow(f.alpha(), t, k_z.limit.as_ref().unwrap());
        prop_assert!(max_dist(k_phi.limit.as_ref().unwrap(), &want) <= 1e-8);
        prop_assert!(max_dist(k_z.limit.as_ref().unwrap(), &h.evaluate(&z).unwrap()) <= 1e-8);
    }
}

#[test]
fn example2_never_converges_without_correction() {
    let f = fixtures::example2(c(1.0, 0.0));
    for z in [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.3, 0.2), c(-0.1, 0.4)]] {
        let r = koenigs::limit(&f, &z, &KoenigsOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Oscillating);
        assert!(r.limit.is_none());
    }
}

#[test]
fn result_csv_and_json() {
    let f = fixtures::example2(c(1.0, 0.0));
    let r = koenigs::limit(&f, &[c(1.0, 0.0), c(0.0, 0.0)], &KoenigsOptions::default()).unwrap();
    assert_eq!(r.to_csv().lines().count(), r.times.len() + 1);
    let json = serde_json::to_value(&r).unwrap();
    assert_eq!(json["verdict"], "oscillating");
}
