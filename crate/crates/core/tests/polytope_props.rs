mod common;

use covercert::polytope::ApexRule;
use covercert::rational::{int, rat};
use covercert::{CoordSet, Polytope, Rational};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn body(seed: u64, n: usize) -> (Polytope, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = common::random_body(&mut rng, n);
    (k, rng)
}

fn identity(n: usize) -> Vec<Vec<Rational>> {
    (0..n).map(|i| (0..n).map(|j| int((i == j) as i64)).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn volume_scales_by_determinant(seed in any::<u64>(), n in 2usize..=3) {
        let (k, mut rng) = body(seed, n);
        let vol = k.volume().unwrap();
        let mut diag = identity(n);
        let mut det = int(1);
        for (i, row) in diag.iter_mut().enumerate() {
            let d = rat(rng.gen_range(1..=5), rng.gen_range(1..=4)) * int(if rng.gen_bool(0.5) { -1 } else { 1 });
            det *= d.clone();
            row[i] = d;
        }
        prop_assert_eq!(k.linear_image(&diag).unwrap().volume().unwrap(), &vol * det.clone() * int(det.clone().signum_i()));
        let mut shear = identity(n);
        shear[0][n - 1] = rat(rng.gen_range(-5..=5), rng.gen_range(1..=3));
        prop_assert_eq!(k.linear_image(&shear).unwrap().volume().unwrap(), vol);
    }

    #[test]
    fn triangulation_order_does_not_matter(seed in any::<u64>(), n in 2usize..=4) {
        let (k, _) = body(seed, n);
        prop_assert_eq!(k.volume_with(ApexRule::First).unwrap(), k.volume_with(ApexRule::Last).unwrap());
    }

    #[test]
    fn sections_and_projections_commute_with_relabeling(seed in any::<u64>(), n in 2usize..=4) {
        let (k, mut rng) = body(seed, n);
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let kp = k.permute_coords(&perm).unwrap();
        for sigma in CoordSet::all_nonempty(n) {
            let sp = sigma.permuted(&perm);
            prop_assert_eq!(
                k.coordinate_section(&sigma).unwrap().volume().unwrap(),
                kp.coordinate_section(&sp).unwrap().volume().unwrap()
            );
            prop_assert_eq!(
                k.coordinate_projection(&sigma).unwrap().volume().unwrap(),
                kp.coordinate_projection(&sp).unwrap().volume().unwrap()
            );
        }
    }

    #[test]
    fn gauge_agrees_with_membership(seed in any::<u64>(), n in 1usize..=3) {
        let (k, mut rng) = body(seed, n);
        let k = k.complete().unwrap().into_owned();
        for _ in 0..200 {
            let y: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(-12..=12), 8)).collect();
            let inside = k.contains(&y).unwrap();
            prop_assert_eq!(k.minkowski_functional(&y).unwrap() <= int(1), inside);
        }
    }

    #[test]
    fn projection_dominates_section(seed in any::<u64>(), n in 2usize..=4) {
        let (k, _) = body(seed, n);
        for sigma in CoordSet::all_nonempty(n) {
            let s = k.coordinate_section(&sigma).unwrap().volume().unwrap();
            let p = k.coordinate_projection(&sigma).unwrap().volume().unwrap();
            prop_assert!(p >= s, "{} < {} on {}", p, s, sigma);
        }
    }
}

trait SignumI {
    fn signum_i(&self) -> i64;
}

impl SignumI for Rational {
    fn signum_i(&self) -> i64 {
        if *self < int(0) {
            -1
        } else {
            1
        }
    }
}
