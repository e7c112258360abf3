mod common;

use covercert::covers::enumerate_uniform_covers;
use covercert::functional::{
    check_dual_functional, exp_norm_integral, integrate, pointwise_lemma_check, Domain, LogConcaveSpec, Method,
};
use covercert::inequality::check_weighted_dual_bt;
use covercert::quadrature::QuadratureSpec;
use covercert::rational::{factorial_rat, to_f64};
use covercert::{Cover, Polytope, WeightedCover};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn quadrature_error(f: &LogConcaveSpec, m: usize) -> f64 {
    integrate(f, &Domain::Full, &QuadratureSpec::tensor(m)).unwrap().relative_error().unwrap()
}

#[test]
fn quadrature_error_halves_when_points_double() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let bodies = [
        Polytope::cross_polytope(2),
        Polytope::cube(3),
        common::random_body(&mut rng, 2),
        common::random_body(&mut rng, 3),
    ];
    for k in &bodies {
        let f = LogConcaveSpec::exp_minkowski(k).unwrap();
        let (a, b) = (quadrature_error(&f, 32), quadrature_error(&f, 64));
        assert!(b <= a / 2.0 || b < 1e-5, "{a:e} -> {b:e}");
    }
}

#[test]
fn pointwise_lemma_on_every_variant() {
    let covers = [Cover::singletons(3), Cover::complements(3).unwrap(), Cover::parse("1,2;3;1,2,3", Some(3)).unwrap()];
    let densities = [
        LogConcaveSpec::isotropic_gaussian(3, 0.7).unwrap(),
        LogConcaveSpec::exp_l1(3, 2.0).unwrap(),
        LogConcaveSpec::exp_minkowski(&Polytope::standard_simplex(3).translate(&vec![covercert::rational::rat(-1, 8); 3]).unwrap())
            .unwrap(),
    ];
    for f in &densities {
        for c in &covers {
            let wc = WeightedCover::from_cover(c).unwrap();
            let r = pointwise_lemma_check(f, &wc, 10_000, 11).unwrap();
            assert!(r.pass(), "{c}: {r:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn closed_form_is_factorial_times_volume(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = common::random_body(&mut rng, n);
        let exact = exp_norm_integral(&k).unwrap();
        prop_assert_eq!(&exact, &(factorial_rat(n) * k.volume().unwrap()));
        let f = LogConcaveSpec::exp_minkowski(&k).unwrap();
        prop_assert!((f.closed_form_power(1.0) / to_f64(&exact) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn functional_and_geometric_verdicts_agree(seed in any::<u64>(), n in 2usize..=3, s in 1usize..=2, i in any::<usize>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = common::random_body(&mut rng, n);
        let pool: Vec<Cover> = enumerate_uniform_covers(n, s, 2 * n).map(|c| c.unwrap()).collect();
        let wc = WeightedCover::from_cover(&pool[i % pool.len()]).unwrap();
        let f = LogConcaveSpec::exp_minkowski(&k).unwrap();
        let a = check_dual_functional(&f, &wc, Method::ClosedForm, &QuadratureSpec::default(), 1e-9).unwrap();
        let b = check_weighted_dual_bt(&k, &wc).unwrap();
        prop_assert_eq!(a.pass, b.pass);
    }
}
