//! Deterministic cubature on boxes `[-R, R]^d`.
//!
//! Two schemes: a tensor grid of composite two-point Gauss–Legendre panels,
//! and a Halton point set. Summation is pairwise in a fixed order, so results
//! do not depend on thread scheduling.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Largest number of integrand evaluations allowed by default.
pub const DEFAULT_POINT_BUDGET: u128 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Scheme {
    /// `points_per_axis` nodes per axis; must be even.
    TensorGrid { points_per_axis: usize },
    QuasiRandom { total_points: usize },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSpec {
    pub scheme: Scheme,
    /// Half-width of the integration box; chosen from `cutoff` when absent.
    pub truncation_radius: Option<f64>,
    /// Target bound on the discarded tail, relative to the full integral.
    pub cutoff: f64,
    pub budget: u128,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec::tensor(64)
    }
}

impl QuadratureSpec {
    pub fn tensor(points_per_axis: usize) -> Self {
        QuadratureSpec {
            scheme: Scheme::TensorGrid { points_per_axis },
            truncation_radius: None,
            cutoff: 1e-4,
            budget: DEFAULT_POINT_BUDGET,
        }
    }

    pub fn quasi_random(total_points: usize) -> Self {
        QuadratureSpec {
            scheme: Scheme::QuasiRandom { total_points },
            ..QuadratureSpec::tensor(2)
        }
    }

    pub fn with_radius(mut self, r: f64) -> Self {
        self.truncation_radius = Some(r);
        self
    }

    /// Number of integrand evaluations in dimension `dim`.
    pub fn points(&self, dim: usize) -> u128 {
        match self.scheme {
            Scheme::TensorGrid { points_per_axis } => (points_per_axis as u128).saturating_pow(dim as u32),
            Scheme::QuasiRandom { total_points } => total_points as u128,
        }
    }

    fn validate(&self, dim: usize) -> Result<()> {
        if let Scheme::TensorGrid { points_per_axis } = self.scheme {
            if points_per_axis < 2 || points_per_axis % 2 != 0 {
                return Err(Error::InvalidInput(format!(
                    "points per axis must be even and at least 2, got {points_per_axis}"
                )));
            }
        }
        if !(self.cutoff > 0.0 && self.cutoff < 1.0) {
            return Err(Error::InvalidInput("cutoff must lie in (0, 1)".into()));
        }
        let needed = self.points(dim);
        if needed > self.budget {
            return Err(Error::QuadratureBudgetExceeded {
                needed,
                budget: self.budget,
            });
        }
        Ok(())
    }
}

/// Sum by recursive halving.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1 => v[0],
        2 => v[0] + v[1],
        len => {
            let (a, b) = v.split_at(len / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

fn gauss_legendre_nodes(radius: f64, m: usize) -> Vec<(f64, f64)> {
    let panels = m / 2;
    let h = 2.0 * radius / panels as f64;
    let off = 0.5 * h / 3f64.sqrt();
    let mut nodes = Vec::with_capacity(m);
    for k in 0..panels {
        let c = -radius + (k as f64 + 0.5) * h;
        nodes.push((c - off, 0.5 * h));
        nodes.push((c + off, 0.5 * h));
    }
    nodes
}

fn tensor_integral<F>(dim: usize, radius: f64, m: usize, f: &F) -> f64
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if dim == 0 {
        return f(&[]);
    }
    let nodes = gauss_legendre_nodes(radius, m);
    let rest = m.pow(dim as u32 - 1);
    let outer: Vec<f64> = (0..m)
        .into_par_iter()
        .map(|i0| {
            let mut x = vec![0.0; dim];
            let mut idx = vec![0usize; dim];
            idx[0] = i0;
            let mut vals = Vec::with_capacity(rest);
            for _ in 0..rest {
                let mut w = 1.0;
                for (j, &k) in idx.iter().enumerate() {
                    x[j] = nodes[k].0;
                    w *= nodes[k].1;
                }
                vals.push(w * f(&x));
                for j in (1..dim).rev() {
                    idx[j] += 1;
                    if idx[j] < m {
                        break;
                    }
                    idx[j] = 0;
                }
            }
            pairwise_sum(&vals)
        })
        .collect();
    pairwise_sum(&outer)
}

const PRIMES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

fn radical_inverse(mut k: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut scale = inv;
    let mut out = 0.0;
    while k > 0 {
        out += (k % base) as f64 * scale;
        k /= base;
        scale *= inv;
    }
    out
}

fn halton_integral<F>(dim: usize, radius: f64, total: usize, f: &F) -> Result<f64>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if dim > PRIMES.len() {
        return Err(Error::UnsupportedDimension(dim));
    }
    if total == 0 {
        return Err(Error::InvalidInput("quasi-random scheme needs at least one point".into()));
    }
    const CHUNK: usize = 4096;
    let chunks = total.div_ceil(CHUNK);
    let sums: Vec<f64> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(total);
            let mut x = vec![0.0; dim];
            let vals: Vec<f64> = (lo..hi)
                .map(|k| {
                    for (j, xj) in x.iter_mut().enumerate() {
                        *xj = radius * (2.0 * radical_inverse(k as u64 + 1, PRIMES[j]) - 1.0);
                    }
                    f(&x)
                })
                .collect();
            pairwise_sum(&vals)
        })
        .collect();
    let vol = (2.0 * radius).powi(dim as i32);
    Ok(pairwise_sum(&sums) * vol / total as f64)
}

/// Integral of `f` over `[-radius, radius]^dim` with the scheme of `spec`.
pub fn integrate_box<F>(dim: usize, radius: f64, spec: &QuadratureSpec, f: F) -> Result<f64>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    spec.validate(dim)?;
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidInput(format!("bad truncation radius {radius}")));
    }
    match spec.scheme {
        Scheme::TensorGrid { points_per_axis } => Ok(tensor_integral(dim, radius, points_per_axis, &f)),
        Scheme::QuasiRandom { total_points } => halton_integral(dim, radius, total_points, &f),
    }
}

/// `P(Poisson(x) <= d) = e^{-x} sum_{k<=d} x^k/k!`, which equals
/// `Γ(d+1, x) / d!`.
pub fn poisson_cdf(d: usize, x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..=d {
        term *= x / k as f64;
        sum += term;
    }
    (-x).exp() * sum
}
