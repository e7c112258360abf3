//! Acceptance criteria, one line of output per criterion.

mod common;

use std::f64::consts::PI;
use std::time::Instant;

use covercert::certifier::{certify_profile, verify_certificate};
use covercert::covers::{solve_weights, UniformCovers};
use covercert::functional::{
    check_dual_functional, exp_norm_integral, gaussian_bl_extremal_check, integrate, pointwise_lemma_check, BlDatum,
    Domain, LogConcaveSpec, Method, Verdict,
};
use covercert::inequality::{
    check_bt_profile, check_dual_bt_profile, check_lw, check_meyer, dual_bt_slack, meyer_identity, BodyProfile,
};
use covercert::isotropic::{check_dual_ball, renormalize_to_isotropic, SphereMeasure, UnitVectorSystem};
use covercert::quadrature::QuadratureSpec;
use covercert::rational::{factorial_rat, int, pow_int, rat};
use covercert::{CoordSet, Cover, Polytope, Rational, WeightedCover};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// All uniform covers of `[n]` with `s <= max_s` and at most `max_parts` parts.
fn covers_up_to(n: usize, max_s: usize, max_parts: usize) -> Vec<Cover> {
    (1..=max_s)
        .flat_map(|s| UniformCovers::new(n, s, max_parts, usize::MAX))
        .map(|c| c.unwrap())
        .collect()
}

/// Random bodies of the property suites, with their covers.
struct Suite {
    bodies: Vec<(usize, BodyProfile)>,
    covers: Vec<Vec<Cover>>,
}

fn suite() -> Suite {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce);
    let mut specs = Vec::new();
    for n in 2..=4 {
        for _ in 0..100 {
            specs.push((n, common::random_body(&mut rng, n)));
        }
    }
    let bodies = specs
        .into_par_iter()
        .map(|(n, k)| {
            let p = BodyProfile::new(&k).unwrap();
            p.precompute();
            (n, p)
        })
        .collect();
    let covers = (0..=4).map(|n| if n < 2 { Vec::new() } else { covers_up_to(n, 2, 6) }).collect();
    Suite { bodies, covers }
}

fn criterion_1() -> Outcome {
    let mut total = 0usize;
    for n in 2..=5 {
        let k = Polytope::cross_polytope(n);
        let p = BodyProfile::new(&k).map_err(|e| e.to_string())?;
        p.precompute_sections();
        let max_parts = 2 * n;
        for s in 1..=max_parts {
            let mut it = UniformCovers::new(n, s, max_parts, usize::MAX).peekable();
            while it.peek().is_some() {
                let chunk: Vec<Cover> = it.by_ref().take(100_000).map(|c| c.unwrap()).collect();
                let bad = chunk
                    .par_iter()
                    .enumerate()
                    .find_any(|(i, c)| {
                        let slack = dual_bt_slack(&p, c).unwrap();
                        if slack != int(1) {
                            return true;
                        }
                        if i % 997 == 0 {
                            let r = check_dual_bt_profile(&p, c).unwrap();
                            return !(r.pass && r.exact && r.is_equality());
                        }
                        false
                    })
                    .map(|(_, c)| c.clone());
                if let Some(c) = bad {
                    return Err(format!("B_1^{n} cover {c} is not an equality"));
                }
                total += chunk.len();
            }
        }
    }
    Ok(format!("{total} covers, all slack exactly 1"))
}

fn criterion_2(suite: &Suite) -> Outcome {
    let checks: usize = suite
        .bodies
        .par_iter()
        .map(|(n, p)| -> Result<usize, String> {
            for c in &suite.covers[*n] {
                let r = check_dual_bt_profile(p, c).map_err(|e| e.to_string())?;
                ensure(r.pass && r.exact, || format!("dual-bt fails on {c}: slack {:?}", r.slack))?;
            }
            Ok(suite.covers[*n].len())
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .sum();
    Ok(format!("{} bodies, {checks} exact checks", suite.bodies.len()))
}

fn criterion_3(suite: &Suite) -> Outcome {
    let checks: usize = suite
        .bodies
        .par_iter()
        .map(|(n, p)| -> Result<usize, String> {
            for c in &suite.covers[*n] {
                let r = check_bt_profile(p, c).map_err(|e| e.to_string())?;
                ensure(r.pass && r.exact, || format!("bt fails on {c}: slack {:?}", r.slack))?;
            }
            Ok(suite.covers[*n].len())
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .sum();
    let mut rng = ChaCha8Rng::seed_from_u64(0xb0c5);
    for i in 0..20 {
        let n = 2 + i % 3;
        let b = common::random_box(&mut rng, n);
        let r = check_lw(&b).map_err(|e| e.to_string())?;
        ensure(r.is_equality(), || format!("LW not an equality on a box: {:?}", r.slack))?;
    }
    Ok(format!("{checks} exact checks, 20 boxes with LW equality"))
}

fn criterion_4() -> Outcome {
    for n in 1..=12 {
        let id = meyer_identity(n);
        // Independent computation of (n-1)!^n / n!^(n-1).
        let direct = pow_int(&factorial_rat(n - 1), n as i64) / pow_int(&factorial_rat(n), n as i64 - 1);
        let expected = factorial_rat(n) / pow_int(&int(n as i64), n as i64);
        ensure(id.holds() && direct == expected && id.constant == expected, || format!("n = {n}"))?;
    }
    Ok("n = 1..12".into())
}

fn criterion_5(suite: &Suite) -> Outcome {
    let worst = suite
        .bodies
        .par_iter()
        .map(|(_, p)| -> Result<(f64, f64), String> {
            let cert = certify_profile(p, 1e-9).map_err(|e| e.to_string())?;
            let check = verify_certificate(p.body(), &cert, 1e-9);
            ensure(check.pass, || format!("certificate rejected: {:?}", check.reason))?;
            Ok((check.volume_residual, check.min_slack))
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .fold((0f64, f64::INFINITY), |a, b| (a.0.max(b.0), a.1.min(b.1)));
    ensure(worst.0 <= 1e-9 && worst.1 >= -1e-9, || format!("residual {:e}, slack {:e}", worst.0, worst.1))?;
    for n in 1..=5 {
        let k = Polytope::cross_polytope(n);
        let p = BodyProfile::new(&k).unwrap();
        let cert = certify_profile(&p, 1e-9).map_err(|e| e.to_string())?;
        let check = verify_certificate(&k, &cert, 1e-9);
        let max_abs = check.per_sigma.values().fold(0f64, |a, s| a.max(s.abs()));
        ensure(check.pass && check.volume_residual <= 1e-9 && max_abs <= 1e-9, || {
            format!("B_1^{n}: residual {:e}, slack {:e}", check.volume_residual, max_abs)
        })?;
    }
    Ok(format!(
        "{} bodies, worst residual {:.1e}, min slack {:.1e}; B_1^n tight",
        suite.bodies.len(),
        worst.0,
        worst.1
    ))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xf00d);
    let bodies: Vec<(usize, Polytope)> = (0..50)
        .map(|i| {
            let n = 1 + i % 3;
            (n, common::random_body(&mut rng, n))
        })
        .collect();
    let worst = bodies
        .par_iter()
        .map(|(n, k)| -> Result<f64, String> {
            let exact = exp_norm_integral(k).map_err(|e| e.to_string())?;
            let expected: Rational = factorial_rat(*n) * k.volume().unwrap();
            ensure(exact == expected, || format!("closed form {exact} vs {expected}"))?;
            let f = LogConcaveSpec::exp_minkowski(k).map_err(|e| e.to_string())?;
            let r = integrate(&f, &Domain::Full, &QuadratureSpec::tensor(64)).map_err(|e| e.to_string())?;
            let rel = (r.value / covercert::rational::to_f64(&exact) - 1.0).abs();
            ensure(rel <= 0.01, || format!("quadrature off by {rel:e} in dimension {n}"))?;
            Ok(rel)
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .fold(0f64, f64::max);
    Ok(format!("50 bodies, worst quadrature error {worst:.2e}"))
}

fn criterion_7() -> Outcome {
    let q = QuadratureSpec::default();
    for n in 1..=3 {
        let f = LogConcaveSpec::exp_l1(n, 1.0).map_err(|e| e.to_string())?;
        let wc = WeightedCover::from_cover(&Cover::singletons(n)).unwrap();
        let r = check_dual_functional(&f, &wc, Method::ClosedForm, &q, 1e-9).map_err(|e| e.to_string())?;
        let two_n = 2f64.powi(n as i32);
        let ratio = r.lhs.to_f64() / r.rhs.to_f64();
        ensure(
            (ratio - 1.0).abs() <= 1e-6
                && (r.lhs.to_f64() / two_n - 1.0).abs() <= 1e-9
                && (r.rhs.to_f64() / two_n - 1.0).abs() <= 1e-9,
            || format!("n = {n}: lhs {}, rhs {}", r.lhs.to_f64(), r.rhs.to_f64()),
        )?;
    }
    Ok("n = 1, 2, 3, both sides 2^n".into())
}

fn criterion_8() -> Outcome {
    let wc = |text: &str, n: usize| WeightedCover::from_cover(&Cover::parse(text, Some(n)).unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x1e33a);
    let body = common::random_body(&mut rng, 3);
    let odd_parts: Vec<CoordSet> = ["1,2", "2,3", "1", "3"].iter().map(|t| CoordSet::parse(3, t).unwrap()).collect();
    let odd_weights = solve_weights(&odd_parts, &int(1)).ok_or("no weights for the fractional cover")?;
    let odd = WeightedCover::new(3, odd_parts, odd_weights, int(1)).map_err(|e| e.to_string())?;
    let configs: Vec<(&str, LogConcaveSpec, WeightedCover)> = vec![
        ("gaussian n=2, singletons", LogConcaveSpec::isotropic_gaussian(2, 1.0).unwrap(), wc("1;2", 2)),
        ("exp-l1 n=3, complements", LogConcaveSpec::exp_l1(3, 1.0).unwrap(), wc("1,2;1,3;2,3", 3)),
        (
            "B_1^3 gauge, complements",
            LogConcaveSpec::exp_minkowski(&Polytope::cross_polytope(3)).unwrap(),
            wc("1,2;1,3;2,3", 3),
        ),
        ("cube gauge n=2, 1;2;1,2", LogConcaveSpec::exp_minkowski(&Polytope::cube(2)).unwrap(), wc("1;2;1,2", 2)),
        (
            "correlated gaussian n=3, 1,2;3",
            LogConcaveSpec::gaussian(vec![vec![2.0, 0.5, 0.1], vec![0.5, 1.0, -0.3], vec![0.1, -0.3, 1.5]]).unwrap(),
            wc("1,2;3", 3),
        ),
        ("random gauge n=3, fractional cover", LogConcaveSpec::exp_minkowski(&body).unwrap(), odd),
    ];
    let mut worst = f64::NEG_INFINITY;
    for (i, (label, f, w)) in configs.iter().enumerate() {
        let r = pointwise_lemma_check(f, w, 10_000, 0x5eed + i as u64).map_err(|e| e.to_string())?;
        ensure(r.samples == 10_000 && r.pass(), || {
            format!("{label}: {} violations, worst gap {:e}", r.violations, r.worst_gap)
        })?;
        worst = worst.max(r.worst_gap);
    }
    Ok(format!("6 configurations x 10^4 samples, worst gap {worst:.2e}"))
}

fn criterion_9() -> Outcome {
    let datum = |text: &str, n: usize| {
        BlDatum::from_weighted_cover(&WeightedCover::from_cover(&Cover::parse(text, Some(n)).unwrap()).unwrap()).unwrap()
    };
    let line = |t: f64| {
        let u = [t.cos(), t.sin()];
        vec![vec![u[0] * u[0], u[0] * u[1]], vec![u[1] * u[0], u[1] * u[1]]]
    };
    let d = PI / 180.0;
    let lines = BlDatum {
        n: 2,
        projections: vec![line(90.0 * d), line(210.0 * d), line(330.0 * d)],
        weights: vec![2.0 / 3.0; 3],
    };
    let data = vec![
        ("singletons n=2", datum("1;2", 2), QuadratureSpec::tensor(64)),
        ("complements n=3", datum("1,2;1,3;2,3", 3), QuadratureSpec::tensor(64)),
        ("cycle n=4", datum("1,2;2,3;3,4;1,4", 4), QuadratureSpec::tensor(32)),
        ("three lines at 120 degrees", lines, QuadratureSpec::tensor(64)),
    ];
    let mut worst = 0f64;
    for (label, dat, q) in &data {
        let r = gaussian_bl_extremal_check(dat, q, 1000, 7, 0.01).map_err(|e| e.to_string())?;
        let rel = (r.direct_lhs / r.direct_rhs - 1.0).abs();
        ensure(rel <= 0.01 && r.reverse_lower_bound >= 0.999 && r.direct == Verdict::Confirmed, || {
            format!("{label}: ratio {}, reverse bound {}", r.direct_lhs / r.direct_rhs, r.reverse_lower_bound)
        })?;
        worst = worst.max(rel);
    }
    Ok(format!("{} data, worst |lhs/rhs - 1| = {worst:.2e}", data.len()))
}

fn random_measure<R: Rng>(rng: &mut R, n: usize, atoms: usize) -> SphereMeasure {
    let atoms = (0..atoms)
        .map(|_| {
            let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            (v.iter().map(|x| x / norm).collect(), rng.gen_range(0.1..2.0))
        })
        .collect();
    SphereMeasure::new(atoms).unwrap()
}

fn criterion_10() -> Outcome {
    let residual = UnitVectorSystem::triple_120().john_check(1e-12).residual;
    ensure(residual < 1e-12, || format!("triple residual {residual:e}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x150);
    let mut worst_renorm = 0f64;
    let mut systems = Vec::new();
    for i in 0..40 {
        let n = 2 + i % 2;
        let m = renormalize_to_isotropic(&random_measure(&mut rng, n, 10)).map_err(|e| e.to_string())?;
        let r = m.isotropy_residual();
        ensure(r < 1e-11, || format!("renormalized residual {r:e}"))?;
        worst_renorm = worst_renorm.max(r);
        if n == 2 {
            systems.push(m.to_system().map_err(|e| e.to_string())?);
        }
    }
    let mut meyer_bodies = vec![Polytope::cross_polytope(2), Polytope::cube(3), Polytope::cross_polytope(4)];
    meyer_bodies.push(common::random_body(&mut rng, 3));
    meyer_bodies.push(Polytope::coordinate_box(&[rat(-1, 2), int(-2)], &[int(3), rat(1, 3)]).unwrap());
    for k in &meyer_bodies {
        let n = k.dim();
        let a = check_dual_ball(k, &UnitVectorSystem::standard_basis(n), 1e-6).map_err(|e| e.to_string())?;
        let b = check_meyer(k).map_err(|e| e.to_string())?;
        let rel = |x: f64, y: f64| (x / y - 1.0).abs();
        ensure(
            rel(a.lhs.to_f64(), b.lhs.to_f64()) <= 1e-9 && rel(a.rhs.to_f64(), b.rhs.to_f64()) <= 1e-9,
            || format!("n = {n}: dual-ball {} / {} vs meyer {} / {}", a.lhs.to_f64(), a.rhs.to_f64(), b.lhs.to_f64(), b.rhs.to_f64()),
        )?;
    }
    systems.push(UnitVectorSystem::triple_120());
    let polygons: Vec<Polytope> = (0..50).map(|_| common::random_symmetric_polygon(&mut rng)).collect();
    let checks = polygons
        .par_iter()
        .map(|k| -> Result<usize, String> {
            for sys in &systems {
                let r = check_dual_ball(k, sys, 1e-6).map_err(|e| e.to_string())?;
                ensure(r.pass, || format!("dual-ball slack {:?}", r.slack_f64()))?;
            }
            Ok(systems.len())
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .sum::<usize>();
    Ok(format!(
        "worst renormalized residual {worst_renorm:.1e}, {} meyer agreements, {checks} dual-ball checks on 50 polygons",
        meyer_bodies.len()
    ))
}

fn report(index: usize, title: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let secs = start.elapsed().as_secs_f64();
    match &out {
        Ok(detail) => println!("criterion {index:>2} PASS  {title}: {detail} [{secs:.1}s]"),
        Err(why) => println!("criterion {index:>2} FAIL  {title}: {why} [{secs:.1}s]"),
    }
    out.is_ok()
}

fn main() {
    let mut ok = true;
    ok &= report(1, "dual inequality is an equality on B_1^n", criterion_1);
    let suite = suite();
    ok &= report(2, "dual inequality on random bodies", || criterion_2(&suite));
    ok &= report(3, "primal inequality on random bodies, LW on boxes", || criterion_3(&suite));
    ok &= report(4, "Meyer constant identity", criterion_4);
    ok &= report(5, "cross-polytope certificates", || criterion_5(&suite));
    ok &= report(6, "integral of exp(-|x|_K)", criterion_6);
    ok &= report(7, "dual functional equality for exp(-|x|_1)", criterion_7);
    ok &= report(8, "pointwise lemma", criterion_8);
    ok &= report(9, "Gaussian extremals of geometric data", criterion_9);
    ok &= report(10, "isotropic systems and dual Ball", criterion_10);
    if !ok {
        std::process::exit(1);
    }
}
