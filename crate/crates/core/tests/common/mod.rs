#![allow(dead_code)]

use covercert::rational::{int, rat};
use covercert::{Polytope, Rational};
use rand::Rng;

/// A rational in `[-1, 1]` with denominator at most `den`.
pub fn small_rational<R: Rng>(rng: &mut R, den: i64) -> Rational {
    let d = rng.gen_range(1..=den);
    rat(rng.gen_range(-d..=d), d)
}

/// Random vertices in `[-1, 1]^n` plus spikes `±ρ_i e_i` with `ρ_i ∈ [1/4, 1]`,
/// so that the origin is interior.
pub fn random_body<R: Rng>(rng: &mut R, n: usize) -> Polytope {
    let extra = rng.gen_range(1..=n + 2);
    let mut vertices: Vec<Vec<Rational>> = (0..extra)
        .map(|_| (0..n).map(|_| small_rational(rng, 4)).collect())
        .collect();
    for i in 0..n {
        for sign in [1, -1] {
            let rho = rat(rng.gen_range(2..=8), 8) * int(sign);
            let mut v = vec![int(0); n];
            v[i] = rho;
            vertices.push(v);
        }
    }
    Polytope::from_vertices(n, vertices).unwrap()
}

/// A box `prod [a_i, b_i]` with `a_i < b_i` rational, not necessarily around 0.
pub fn random_box<R: Rng>(rng: &mut R, n: usize) -> Polytope {
    let lo: Vec<Rational> = (0..n).map(|_| small_rational(rng, 6)).collect();
    let hi: Vec<Rational> = lo.iter().map(|a| a + rat(rng.gen_range(1..=12), rng.gen_range(1..=6))).collect();
    Polytope::coordinate_box(&lo, &hi).unwrap()
}

/// `conv(V ∪ -V)` for a few random points `V` in the plane, plus the axis spikes.
pub fn random_symmetric_polygon<R: Rng>(rng: &mut R) -> Polytope {
    let mut vertices = Vec::new();
    for _ in 0..rng.gen_range(1..=4) {
        let v: Vec<Rational> = (0..2).map(|_| small_rational(rng, 5)).collect();
        vertices.push(v.iter().map(|x| -x).collect());
        vertices.push(v);
    }
    for i in 0..2 {
        let rho = rat(rng.gen_range(2..=8), 8);
        let mut v = vec![int(0); 2];
        v[i] = rho.clone();
        vertices.push(v.clone());
        v[i] = -rho;
        vertices.push(v);
    }
    Polytope::from_vertices(2, vertices).unwrap()
}
