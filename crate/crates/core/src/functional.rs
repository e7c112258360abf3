//! Functional forms of the dual inequality, tested numerically.
//!
//! For log-concave `f` with `f(0) = 1` and a weighted cover `s I = sum c_i P_i`:
//!
//! ```text
//! n^n ∫ f^n  >=  prod_i ( ∫_{F_i} f )^{c_i / s}
//! ```
//!
//! Three density families are supported, each with closed-form integrals on
//! every coordinate subspace, so quadrature is only ever a cross-check.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coords::CoordSet;
use crate::covers::WeightedCover;
use crate::error::{Error, Result};
use crate::polytope::Polytope;
use crate::quadrature::{integrate_box, pairwise_sum, poisson_cdf, QuadratureSpec};
use crate::rational::{self, factorial_rat, Rational};
use crate::report::{Factor, InequalityReport, Side, Value};

/// Seed used when a caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Debug)]
pub enum Density {
    /// `exp(-x^T Q x)` with `Q` positive definite.
    Gaussian { q: Vec<Vec<f64>> },
    /// `exp(-||x||_K)` for a body with `0` in its interior.
    ExpMinkowski { body: Polytope },
    /// `exp(-scale ||x||_1)`.
    ExpL1 { scale: f64 },
}

/// A log-concave density on `R^dim` with `f(0) = 1`.
#[derive(Clone, Debug)]
pub struct LogConcaveSpec {
    dim: usize,
    density: Density,
    /// Gauge rows `a / b` of the body (ExpMinkowski only).
    gauge_rows: Vec<Vec<f64>>,
    /// `max_{v in K} |v|_inf` for gauge densities; unused for Gaussians.
    outer_radius: f64,
    /// Per-axis `[min, max]` of `K` for gauge densities.
    extent: Vec<(f64, f64)>,
    /// Smallest eigenvalue of `Q` (Gaussian only).
    lambda_min: f64,
}

fn ln_factorial(k: usize) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

impl LogConcaveSpec {
    pub fn gaussian(q: Vec<Vec<f64>>) -> Result<Self> {
        let n = q.len();
        if n == 0 || q.iter().any(|r| r.len() != n) {
            return Err(Error::NotIntegrable("Q must be a nonempty square matrix".into()));
        }
        let m = DMatrix::from_fn(n, n, |i, j| q[i][j]);
        let asym = (&m - m.transpose()).abs().max();
        if !(asym <= 1e-12 * (1.0 + m.abs().max())) {
            return Err(Error::NotIntegrable("Q must be symmetric".into()));
        }
        let lambda_min = m.symmetric_eigenvalues().min();
        if !(lambda_min > 0.0) {
            return Err(Error::NotIntegrable(format!(
                "Q is not positive definite (smallest eigenvalue {lambda_min:e})"
            )));
        }
        Ok(LogConcaveSpec {
            dim: n,
            density: Density::Gaussian { q },
            gauge_rows: Vec::new(),
            outer_radius: 0.0,
            extent: Vec::new(),
            lambda_min,
        })
    }

    /// `exp(-t |x|^2)` on `R^n`.
    pub fn isotropic_gaussian(n: usize, t: f64) -> Result<Self> {
        let q = (0..n)
            .map(|i| (0..n).map(|j| if i == j { t } else { 0.0 }).collect())
            .collect();
        Self::gaussian(q)
    }

    pub fn exp_minkowski(body: &Polytope) -> Result<Self> {
        let body = body.complete()?.into_owned();
        if !body.has_zero_interior()? {
            return Err(Error::ZeroNotInterior);
        }
        let gauge_rows = body
            .halfspaces()
            .expect("complete")
            .iter()
            .map(|h| h.normal.iter().map(|a| rational::to_f64(&(a / &h.offset))).collect())
            .collect();
        let mut extent = vec![(0.0f64, 0.0f64); body.dim()];
        for v in body.vertices().expect("complete") {
            for (e, x) in extent.iter_mut().zip(v) {
                let x = rational::to_f64(x);
                *e = (e.0.min(x), e.1.max(x));
            }
        }
        let outer_radius = extent.iter().fold(0.0f64, |a, e| a.max(-e.0).max(e.1));
        Ok(LogConcaveSpec {
            dim: body.dim(),
            density: Density::ExpMinkowski { body },
            gauge_rows,
            outer_radius,
            extent,
            lambda_min: 0.0,
        })
    }

    pub fn exp_l1(dim: usize, scale: f64) -> Result<Self> {
        if dim == 0 || !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::NotIntegrable(format!("exp_l1 needs dim >= 1 and scale > 0, got {scale}")));
        }
        Ok(LogConcaveSpec {
            dim,
            density: Density::ExpL1 { scale },
            gauge_rows: Vec::new(),
            outer_radius: 1.0 / scale,
            extent: vec![(-1.0 / scale, 1.0 / scale); dim],
            lambda_min: 0.0,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn density(&self) -> &Density {
        &self.density
    }

    /// `-log f(x)`.
    pub fn potential(&self, x: &[f64]) -> f64 {
        match &self.density {
            Density::Gaussian { q } => q
                .iter()
                .zip(x)
                .map(|(row, xi)| xi * row.iter().zip(x).map(|(a, b)| a * b).sum::<f64>())
                .sum(),
            Density::ExpMinkowski { .. } => self
                .gauge_rows
                .iter()
                .map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum::<f64>())
                .fold(0.0, f64::max),
            Density::ExpL1 { scale } => scale * x.iter().map(|v| v.abs()).sum::<f64>(),
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        (-self.potential(x)).exp()
    }

    /// The restriction of `f` to `F_sigma`, in the coordinates of `sigma`.
    pub fn restrict(&self, sigma: &CoordSet) -> Result<LogConcaveSpec> {
        if sigma.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: sigma.ambient_dim(),
            });
        }
        if sigma.is_full() {
            return Ok(self.clone());
        }
        let idx = sigma.indices();
        match &self.density {
            Density::Gaussian { q } => {
                LogConcaveSpec::gaussian(idx.iter().map(|&i| idx.iter().map(|&j| q[i][j]).collect()).collect())
            }
            Density::ExpMinkowski { body } => LogConcaveSpec::exp_minkowski(&body.coordinate_section(sigma)?),
            Density::ExpL1 { scale } => LogConcaveSpec::exp_l1(idx.len(), *scale),
        }
    }

    /// `∫ f^p` over `R^dim` in closed form.
    pub fn closed_form_power(&self, p: f64) -> f64 {
        self.ln_closed_form_power(p).exp()
    }

    fn ln_closed_form_power(&self, p: f64) -> f64 {
        let d = self.dim as f64;
        match &self.density {
            Density::Gaussian { q } => {
                let m = DMatrix::from_fn(self.dim, self.dim, |i, j| p * q[i][j]);
                0.5 * d * PI.ln() - 0.5 * m.determinant().ln()
            }
            Density::ExpMinkowski { body } => {
                let v = body.volume().expect("complete body");
                ln_factorial(self.dim) + rational::log_abs(&v) - d * p.ln()
            }
            Density::ExpL1 { scale } => d * (2.0 / (p * scale)).ln(),
        }
    }

    /// `∫ f = dim! |K|` exactly, for `exp(-||x||_K)`.
    pub fn exact_integral(&self) -> Option<Rational> {
        match &self.density {
            Density::ExpMinkowski { body } => Some(factorial_rat(self.dim) * body.volume().ok()?),
            _ => None,
        }
    }

    /// Half-width of a box outside which `∫ f^p` loses at most `cutoff`
    /// relative mass, with the tail bound actually achieved.
    pub fn truncation(&self, p: f64, cutoff: f64) -> (f64, f64) {
        let d = self.dim;
        match &self.density {
            Density::Gaussian { .. } => {
                let a = p * self.lambda_min;
                let r = 6.0 / a.sqrt();
                // Union bound over coordinates, erfc(t) <= exp(-t^2).
                let tail = d as f64 * (PI / a).powf(d as f64 / 2.0) * (-a * r * r).exp();
                (r, tail / self.closed_form_power(p))
            }
            _ => {
                // The box [-R, R]^d contains (R / rho) K, and the mass of
                // exp(-p||x||_K) outside tK is P(Gamma(d) > pt) = P(Poisson(pt) <= d - 1)
                // of the total.
                let mut t = 1.0;
                while poisson_cdf(d - 1, p * t) > cutoff {
                    t *= 1.02;
                }
                (self.outer_radius * t, poisson_cdf(d - 1, p * t))
            }
        }
    }

    /// Per-axis bounds of a box with the same tail guarantee as
    /// [`truncation`](Self::truncation); tighter for lopsided bodies.
    pub fn truncation_box(&self, p: f64, cutoff: f64) -> (Vec<(f64, f64)>, f64) {
        let (r, tail) = self.truncation(p, cutoff);
        match &self.density {
            Density::Gaussian { .. } => (vec![(-r, r); self.dim], tail),
            _ => {
                let t = r / self.outer_radius;
                (self.extent.iter().map(|(a, b)| (a * t, b * t)).collect(), tail)
            }
        }
    }

    /// Midpoint test of log-concavity, `f((x+y)/2)^2 >= f(x) f(y) - 1e-12`.
    /// Returns the number of failures.
    pub fn midpoint_violations(&self, samples: usize, seed: u64) -> usize {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (r, _) = self.truncation(1.0, 1e-3);
        (0..samples)
            .filter(|_| {
                let x: Vec<f64> = (0..self.dim).map(|_| rng.gen_range(-r..r)).collect();
                let y: Vec<f64> = (0..self.dim).map(|_| rng.gen_range(-r..r)).collect();
                let m: Vec<f64> = x.iter().zip(&y).map(|(a, b)| 0.5 * (a + b)).collect();
                self.eval(&m).powi(2) < self.eval(&x) * self.eval(&y) - 1e-12
            })
            .count()
    }
}

/// `{"variant": "gaussian", "q": [[..]]}`, `{"variant": "exp_minkowski", "body": {..}}`,
/// `{"variant": "exp_l1", "dim": n, "scale": a}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case", deny_unknown_fields)]
pub enum LogConcaveJson {
    Gaussian { q: Vec<Vec<f64>> },
    ExpMinkowski { body: Polytope },
    ExpL1 {
        dim: usize,
        #[serde(default = "one")]
        scale: f64,
    },
}

fn one() -> f64 {
    1.0
}

impl TryFrom<LogConcaveJson> for LogConcaveSpec {
    type Error = Error;

    fn try_from(j: LogConcaveJson) -> Result<Self> {
        match j {
            LogConcaveJson::Gaussian { q } => LogConcaveSpec::gaussian(q),
            LogConcaveJson::ExpMinkowski { body } => LogConcaveSpec::exp_minkowski(&body),
            LogConcaveJson::ExpL1 { dim, scale } => LogConcaveSpec::exp_l1(dim, scale),
        }
    }
}

impl LogConcaveSpec {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let j: LogConcaveJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        j.try_into()
    }
}

/// Where to integrate.
#[derive(Clone, Debug, PartialEq)]
pub enum Domain {
    Full,
    Coords(CoordSet),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub closed_form: Option<f64>,
    pub exact: Option<Rational>,
    pub points: u128,
    pub truncation_radius: f64,
    /// Bound on the discarded mass relative to the full integral.
    pub tail_bound: f64,
}

impl Integral {
    pub fn relative_error(&self) -> Option<f64> {
        self.closed_form.map(|c| (self.value - c).abs() / c)
    }
}

pub fn integrate(f: &LogConcaveSpec, domain: &Domain, q: &QuadratureSpec) -> Result<Integral> {
    integrate_power(f, domain, 1.0, q)
}

/// Quadrature estimate of `∫ f^p` over the domain, with the closed form.
pub fn integrate_power(f: &LogConcaveSpec, domain: &Domain, p: f64, q: &QuadratureSpec) -> Result<Integral> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::InvalidInput(format!("bad power {p}")));
    }
    let g = match domain {
        Domain::Full => f.clone(),
        Domain::Coords(s) => f.restrict(s)?,
    };
    let (bounds, tail) = match q.truncation_radius {
        Some(r) => (vec![(-r, r); g.dim()], f64::NAN),
        None => g.truncation_box(p, q.cutoff),
    };
    let r = bounds.iter().fold(0.0f64, |a, e| a.max(-e.0).max(e.1));
    let value = integrate_bounds(&bounds, q, |x| (-p * g.potential(x)).exp())?;
    Ok(Integral {
        value,
        closed_form: Some(g.closed_form_power(p)),
        exact: if p == 1.0 { g.exact_integral() } else { None },
        points: q.points(g.dim()),
        truncation_radius: r,
        tail_bound: tail,
    })
}

/// Exponent of the half-axis map `t -> sign(t) |t|^k`.
const NODE_CLUSTERING: f64 = 2.0;

/// Integral over `prod [lo_i, hi_i]` with `lo_i <= 0 <= hi_i`. Each half-axis
/// is mapped onto half of `[-1, 1]` by `x = s |t|^k`, which clusters nodes
/// where the density lives and keeps the origin on a panel boundary.
fn integrate_bounds<F>(bounds: &[(f64, f64)], q: &QuadratureSpec, f: F) -> Result<f64>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if let Some(b) = bounds.iter().find(|(a, b)| !(*a <= 0.0 && 0.0 <= *b && a < b)) {
        return Err(Error::InvalidInput(format!("bad integration bounds {b:?}")));
    }
    let k = NODE_CLUSTERING;
    integrate_box(bounds.len(), 1.0, q, |y| {
        let mut jacobian = 1.0;
        let x: Vec<f64> = bounds
            .iter()
            .zip(y)
            .map(|((a, b), t)| {
                let scale = if *t < 0.0 { *a } else { *b };
                let u = t.abs();
                jacobian *= scale.abs() * k * u.powf(k - 1.0);
                scale * u.powf(k)
            })
            .collect();
        jacobian * f(&x)
    })
}

/// `n! |K|`, the integral of `exp(-||x||_K)`.
pub fn exp_norm_integral(k: &Polytope) -> Result<Rational> {
    Ok(factorial_rat(k.dim()) * k.volume()?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Quadrature,
}

/// Checks `n^n ∫ f^n >= prod (∫_{F_i} f)^{c_i/s}`; passes at `lhs >= rhs (1 - tol)`.
pub fn check_dual_functional(
    f: &LogConcaveSpec,
    wc: &WeightedCover,
    method: Method,
    q: &QuadratureSpec,
    tol: f64,
) -> Result<InequalityReport> {
    if wc.n() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: wc.n(),
        });
    }
    wc.check()?;
    let n = f.dim();
    let nf = n as f64;
    let ln_integral = |g: &LogConcaveSpec, dom: &Domain, p: f64| -> Result<f64> {
        Ok(match method {
            Method::ClosedForm => match dom {
                Domain::Full => g.ln_closed_form_power(p),
                Domain::Coords(s) => g.restrict(s)?.ln_closed_form_power(p),
            },
            Method::Quadrature => integrate_power(g, dom, p, q)?.value.ln(),
        })
    };
    let ln_lhs = nf * nf.ln() + ln_integral(f, &Domain::Full, nf)?;
    let s = rational::to_f64(wc.s());
    let mut ln_rhs = 0.0;
    let mut factors = Vec::new();
    for (part, c) in wc.parts().iter().zip(wc.weights()) {
        let e = rational::to_f64(c) / s;
        let li = ln_integral(f, &Domain::Coords(part.clone()), 1.0)?;
        ln_rhs += e * li;
        factors.push(Factor {
            label: part.to_string(),
            volume: Value::Float(li.exp()),
            exponent: Value::Float(e),
        });
    }
    let slack = (ln_lhs - ln_rhs).exp();
    let mut extras = BTreeMap::new();
    extras.insert(
        "method".into(),
        serde_json::json!(match method {
            Method::ClosedForm => "closed-form",
            Method::Quadrature => "quadrature",
        }),
    );
    if let Some(e) = f.exact_integral() {
        extras.insert("exact_integral".into(), serde_json::json!(rational::format_rational(&e)));
    }
    Ok(InequalityReport {
        name: "dual-functional".into(),
        lhs: Value::Float(ln_lhs.exp()),
        rhs: Value::Float(ln_rhs.exp()),
        slack: Some(Value::Float(slack)),
        pass: slack >= 1.0 - tol,
        exact: false,
        constant: Value::Float(1.0),
        product_side: Side::Rhs,
        factors,
        warnings: Vec::new(),
        extras,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointwiseReport {
    pub samples: usize,
    /// Samples with `f(z/n)^n < prod f(x_i)^{c_i/s} - 1e-10`.
    pub violations: usize,
    /// Largest `rhs - lhs` seen (negative when every sample had room).
    pub worst_gap: f64,
    /// Failures of `f(x_i / d_i) >= f(x_i)^{1/d_i} - 1e-10`.
    pub step_violations: usize,
    pub worst_step_gap: f64,
}

impl PointwiseReport {
    pub fn pass(&self) -> bool {
        self.violations == 0 && self.step_violations == 0
    }
}

const POINTWISE_TOL: f64 = 1e-10;

/// Samples decompositions `x_i in F_i` and checks
/// `f(z/n)^n >= prod f(x_i)^{c_i/s}` for `z = sum (c_i/s) x_i`, together with
/// the step `f(x_i/d_i) >= f(x_i)^{1/d_i}`. The first sample is `x_i = 0`.
pub fn pointwise_lemma_check(f: &LogConcaveSpec, wc: &WeightedCover, samples: usize, seed: u64) -> Result<PointwiseReport> {
    if wc.n() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: wc.n(),
        });
    }
    wc.check()?;
    let n = f.dim();
    let s = rational::to_f64(wc.s());
    let a: Vec<f64> = wc.weights().iter().map(|c| rational::to_f64(c) / s).collect();
    let (r, _) = f.truncation(1.0, 1e-3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = PointwiseReport {
        samples,
        violations: 0,
        worst_gap: f64::NEG_INFINITY,
        step_violations: 0,
        worst_step_gap: f64::NEG_INFINITY,
    };
    let scales = [r, r / 4.0, r / 16.0];
    for k in 0..samples {
        let scale = scales[k % scales.len()];
        let xs: Vec<Vec<f64>> = wc
            .parts()
            .iter()
            .map(|part| {
                let mut x = vec![0.0; n];
                if k > 0 {
                    for &j in part.indices() {
                        x[j] = rng.gen_range(-scale..scale);
                    }
                }
                x
            })
            .collect();
        let mut z = vec![0.0; n];
        for (x, ai) in xs.iter().zip(&a) {
            for (zj, xj) in z.iter_mut().zip(x) {
                *zj += ai * xj;
            }
        }
        let zn: Vec<f64> = z.iter().map(|v| v / n as f64).collect();
        let lhs = (-(n as f64) * f.potential(&zn)).exp();
        let terms: Vec<f64> = xs.iter().zip(&a).map(|(x, ai)| -ai * f.potential(x)).collect();
        let rhs = pairwise_sum(&terms).exp();
        let gap = rhs - lhs;
        report.worst_gap = report.worst_gap.max(gap);
        if gap > POINTWISE_TOL {
            report.violations += 1;
        }
        for (x, part) in xs.iter().zip(wc.parts()) {
            let d = part.len() as f64;
            let xd: Vec<f64> = x.iter().map(|v| v / d).collect();
            let gap = (-f.potential(x) / d).exp() - f.eval(&xd);
            report.worst_step_gap = report.worst_step_gap.max(gap);
            if gap > POINTWISE_TOL {
                report.step_violations += 1;
            }
        }
    }
    Ok(report)
}

/// Subspaces `F_i` (as orthogonal projection matrices) with weights `a_i`
/// meant to satisfy `sum a_i P_i = I`.
#[derive(Clone, Debug)]
pub struct BlDatum {
    pub n: usize,
    pub projections: Vec<Vec<Vec<f64>>>,
    pub weights: Vec<f64>,
}

impl BlDatum {
    /// Coordinate projections with weights `c_i / s`.
    pub fn from_weighted_cover(wc: &WeightedCover) -> Result<Self> {
        wc.check()?;
        let n = wc.n();
        let s = rational::to_f64(wc.s());
        let projections = wc
            .parts()
            .iter()
            .map(|p| {
                (0..n)
                    .map(|i| (0..n).map(|j| if i == j && p.contains(i) { 1.0 } else { 0.0 }).collect())
                    .collect()
            })
            .collect();
        Ok(BlDatum {
            n,
            projections,
            weights: wc.weights().iter().map(|c| rational::to_f64(c) / s).collect(),
        })
    }

    /// `||sum a_i P_i - I||_F`.
    pub fn identity_residual(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                let v: f64 = self.projections.iter().zip(&self.weights).map(|(p, a)| a * p[i][j]).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                acc += (v - target).powi(2);
            }
        }
        acc.sqrt()
    }

    fn sq_norm_projected(p: &[Vec<f64>], x: &[f64]) -> f64 {
        p.iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum::<f64>().powi(2))
            .sum()
    }

    /// `prod f_i(P_i x)^{a_i}` with `f_i = exp(-π|y|^2)`.
    fn integrand(&self, x: &[f64]) -> f64 {
        let e: f64 = self
            .projections
            .iter()
            .zip(&self.weights)
            .map(|(p, a)| a * Self::sq_norm_projected(p, x))
            .sum();
        (-PI * e).exp()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Confirmed,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlExtremalReport {
    pub identity_residual: f64,
    /// Largest `|sum a_i |P_i x|^2 - |x|^2|` over the samples.
    pub pointwise_residual: f64,
    /// Quadrature of `∫ prod f_i(P_i x)^{a_i} dx`; the product of the
    /// `(∫ f_i)^{a_i}` is exactly 1.
    pub direct_lhs: f64,
    pub direct_rhs: f64,
    /// Quadrature of the sup-convolution integrand bounded below by the
    /// decomposition `x_i = P_i x`.
    pub reverse_lower_bound: f64,
    pub direct: Verdict,
    pub reverse: Verdict,
}

/// Gaussian extremals of the direct and reverse Brascamp–Lieb inequalities for
/// a geometric datum, with `f_i = exp(-π|x|^2)` on every `F_i`.
pub fn gaussian_bl_extremal_check(datum: &BlDatum, q: &QuadratureSpec, samples: usize, seed: u64, tol: f64) -> Result<BlExtremalReport> {
    let n = datum.n;
    if datum.projections.len() != datum.weights.len() || datum.weights.iter().any(|w| !(*w > 0.0)) {
        return Err(Error::WeightsInvalid("need one positive weight per subspace".into()));
    }
    let identity_residual = datum.identity_residual();
    if identity_residual > 1e-9 {
        return Err(Error::WeightsInvalid(format!(
            "sum a_i P_i differs from the identity by {identity_residual:e}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pointwise_residual: f64 = 0.0;
    for _ in 0..samples {
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let lhs: f64 = datum
            .projections
            .iter()
            .zip(&datum.weights)
            .map(|(p, a)| a * BlDatum::sq_norm_projected(p, &x))
            .sum();
        let rhs: f64 = x.iter().map(|v| v * v).sum();
        pointwise_residual = pointwise_residual.max((lhs - rhs).abs());
    }
    // Every f_i integrates to 1 over F_i, so prod (∫ f_i)^{a_i} = 1.
    let direct_rhs = 1.0;
    // sum a_i P_i = I makes the integrand at least as concentrated as exp(-π|x|^2).
    let r = q.truncation_radius.unwrap_or(6.0 / PI.sqrt());
    let direct_lhs = integrate_box(n, r, q, |x| datum.integrand(x))?;
    // x_i = P_i x is a feasible decomposition of x, so the sup-convolution is
    // at least the same product, which is the direct integrand again.
    let reverse_lower_bound = direct_lhs;
    let verdict = |ok: bool| if ok { Verdict::Confirmed } else { Verdict::Inconclusive };
    Ok(BlExtremalReport {
        identity_residual,
        pointwise_residual,
        direct: verdict((direct_lhs / direct_rhs - 1.0).abs() <= tol),
        reverse: verdict(reverse_lower_bound >= direct_rhs * (1.0 - tol)),
        direct_lhs,
        direct_rhs,
        reverse_lower_bound,
    })
}
