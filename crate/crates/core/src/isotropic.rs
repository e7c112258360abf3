//! Unit vector systems in John's position and the hyperplane inequalities
//! they induce:
//!
//! ```text
//! |K|^{n-1} <= prod |P_{u_i^⊥} K|^{c_i}                    (Ball)
//! |K|^{n-1} >= (n!/n^n) prod |K ∩ u_i^⊥|^{c_i}             (dual, 0 in int K)
//! ```
//!
//! whenever `sum c_i u_i u_i^T = I`. Everything here is floating point.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inequality::meyer_constant;
use crate::polytope::float::{general_projection, general_section};
use crate::polytope::Polytope;
use crate::rational;
use crate::report::{Factor, InequalityReport, Side, Value};

/// Allowed deviation of `|u_i|` from 1.
pub const UNIT_TOL: f64 = 1e-12;

/// Default tolerance on the John residual.
pub const DEFAULT_JOHN_TOL: f64 = 1e-9;

/// Relative slack tolerance for the float inequality checks.
pub const DEFAULT_CHECK_TOL: f64 = 1e-6;

/// Eigenvalues of `T` below this make a measure degenerate.
pub const EIGENVALUE_FLOOR: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitVectorSystem {
    #[serde(skip_serializing, default)]
    n: Option<usize>,
    vectors: Vec<Vec<f64>>,
    weights: Vec<f64>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn frobenius_from_identity(m: &DMatrix<f64>, scale: f64) -> f64 {
    let n = m.nrows();
    (m - DMatrix::<f64>::identity(n, n) * scale).norm()
}

impl UnitVectorSystem {
    pub fn new(vectors: Vec<Vec<f64>>, weights: Vec<f64>) -> Result<Self> {
        let n = vectors.first().map(Vec::len).unwrap_or(0);
        if n == 0 || vectors.len() != weights.len() {
            return Err(Error::InvalidInput(format!(
                "{} vectors and {} weights",
                vectors.len(),
                weights.len()
            )));
        }
        for (i, u) in vectors.iter().enumerate() {
            if u.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: u.len(),
                });
            }
            let norm = dot(u, u).sqrt();
            if !((norm - 1.0).abs() <= UNIT_TOL) {
                return Err(Error::InvalidInput(format!("vector {} has norm {norm}", i + 1)));
            }
        }
        if let Some(w) = weights.iter().find(|w| !(**w > 0.0 && w.is_finite())) {
            return Err(Error::WeightsInvalid(format!("weight {w} is not positive")));
        }
        Ok(UnitVectorSystem {
            n: Some(n),
            vectors,
            weights,
        })
    }

    /// `e_1, ..., e_n` with unit weights.
    pub fn standard_basis(n: usize) -> Self {
        let vectors = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        UnitVectorSystem::new(vectors, vec![1.0; n]).expect("valid")
    }

    /// Unit vectors at the given angles in the plane, common weight `w`.
    pub fn planar(angles: &[f64], w: f64) -> Result<Self> {
        UnitVectorSystem::new(angles.iter().map(|t| vec![t.cos(), t.sin()]).collect(), vec![w; angles.len()])
    }

    /// Directions at 90°, 210° and 330° with weights 2/3.
    pub fn triple_120() -> Self {
        let d = PI / 180.0;
        UnitVectorSystem::planar(&[90.0 * d, 210.0 * d, 330.0 * d], 2.0 / 3.0).expect("valid")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: UnitVectorSystem = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        UnitVectorSystem::new(raw.vectors, raw.weights)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("serializes")
    }

    pub fn n(&self) -> usize {
        self.vectors[0].len()
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// `sum c_i u_i u_i^T`.
    pub fn tensor(&self) -> DMatrix<f64> {
        let n = self.n();
        let mut t = DMatrix::zeros(n, n);
        for (u, c) in self.vectors.iter().zip(&self.weights) {
            let v = DVector::from_column_slice(u);
            t += &v * v.transpose() * *c;
        }
        t
    }

    pub fn john_check(&self, tol: f64) -> JohnCheck {
        let residual = frobenius_from_identity(&self.tensor(), 1.0);
        let trace: f64 = self.weights.iter().sum();
        let n = self.n() as f64;
        JohnCheck {
            residual,
            trace,
            isotropic: residual <= tol,
            trace_matches: (trace - n).abs() <= n * tol.max(f64::EPSILON),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JohnCheck {
    /// `||sum c_i u_i u_i^T - I||_F`.
    pub residual: f64,
    /// `sum c_i`, which must equal `n` for an isotropic system.
    pub trace: f64,
    pub isotropic: bool,
    pub trace_matches: bool,
}

pub fn john_check(sys: &UnitVectorSystem, tol: f64) -> JohnCheck {
    sys.john_check(tol)
}

fn require_isotropic(sys: &UnitVectorSystem, tol: f64) -> Result<JohnCheck> {
    let j = sys.john_check(tol);
    if j.isotropic {
        Ok(j)
    } else {
        Err(Error::NotIsotropic { residual: j.residual })
    }
}

/// `P_i = I - u_i u_i^T` with weights `c_i`, an `(n-1)`-uniform cover of `R^n`.
#[derive(Clone, Debug)]
pub struct HyperplaneCover {
    pub projections: Vec<DMatrix<f64>>,
    pub weights: Vec<f64>,
    /// `||sum c_i P_i - (n-1) I||_F`.
    pub residual: f64,
}

pub fn cover_from_john(sys: &UnitVectorSystem, tol: f64) -> Result<HyperplaneCover> {
    let j = require_isotropic(sys, tol)?;
    let n = sys.n();
    let mut sum = DMatrix::zeros(n, n);
    let projections: Vec<DMatrix<f64>> = sys
        .vectors
        .iter()
        .map(|u| {
            let v = DVector::from_column_slice(u);
            DMatrix::identity(n, n) - &v * v.transpose()
        })
        .collect();
    for (p, c) in projections.iter().zip(&sys.weights) {
        sum += p * *c;
    }
    let residual = frobenius_from_identity(&sum, n as f64 - 1.0);
    // sum c_i P_i - (n-1) I = (sum c_i - n) I - (T - I).
    let bound = j.trace * tol + (j.trace - n as f64).abs() * (n as f64).sqrt();
    if residual > bound.max(j.trace * tol) + 1e-15 {
        return Err(Error::NotIsotropic { residual });
    }
    Ok(HyperplaneCover {
        projections,
        weights: sys.weights.clone(),
        residual,
    })
}

/// Rows form an orthonormal basis of `u^⊥` (Householder reflection of `u`).
pub fn hyperplane_basis(u: &[f64]) -> Vec<Vec<f64>> {
    let n = u.len();
    let k = (0..n)
        .max_by(|&a, &b| u[a].abs().total_cmp(&u[b].abs()))
        .expect("nonempty");
    let sign = if u[k] >= 0.0 { 1.0 } else { -1.0 };
    let mut v = u.to_vec();
    v[k] += sign;
    let vv = dot(&v, &v);
    (0..n)
        .filter(|&i| i != k)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let id = if i == j { 1.0 } else { 0.0 };
                    id - 2.0 * v[i] * v[j] / vv
                })
                .collect()
        })
        .collect()
}

fn float_report(
    name: &str,
    ln_lhs: f64,
    ln_rhs: f64,
    constant: Value,
    side: Side,
    factors: Vec<Factor>,
    tol: f64,
) -> InequalityReport {
    let slack = (ln_lhs - ln_rhs).exp();
    InequalityReport {
        name: name.into(),
        lhs: Value::Float(ln_lhs.exp()),
        rhs: Value::Float(ln_rhs.exp()),
        slack: Some(Value::Float(slack)),
        pass: slack >= 1.0 - tol,
        exact: false,
        constant,
        product_side: side,
        factors,
        warnings: Vec::new(),
        extras: BTreeMap::new(),
    }
}

fn check_dims(k: &Polytope, sys: &UnitVectorSystem) -> Result<usize> {
    let n = sys.n();
    if k.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: k.dim(),
            found: n,
        });
    }
    if n < 2 {
        return Err(Error::UnsupportedDimension(n));
    }
    Ok(n)
}

/// `|K|^{n-1} <= prod |P_{u_i^⊥} K|^{c_i}`, passing at slack `>= 1 - tol`.
pub fn check_ball(k: &Polytope, sys: &UnitVectorSystem, tol: f64) -> Result<InequalityReport> {
    let n = check_dims(k, sys)?;
    require_isotropic(sys, DEFAULT_JOHN_TOL)?;
    let vol = k.volume()?;
    let mut ln_prod = 0.0;
    let mut factors = Vec::new();
    for (i, (u, c)) in sys.vectors.iter().zip(&sys.weights).enumerate() {
        let v = general_projection(k, &hyperplane_basis(u))?.volume();
        ln_prod += c * v.ln();
        factors.push(Factor {
            label: (i + 1).to_string(),
            volume: Value::Float(v),
            exponent: Value::Float(*c),
        });
    }
    let ln_vol = (n as f64 - 1.0) * rational::log_abs(&vol);
    Ok(float_report("ball", ln_prod, ln_vol, Value::Float(1.0), Side::Lhs, factors, tol))
}

/// `|K|^{n-1} >= (n!/n^n) prod |K ∩ u_i^⊥|^{c_i}`, passing at slack `>= 1 - tol`.
pub fn check_dual_ball(k: &Polytope, sys: &UnitVectorSystem, tol: f64) -> Result<InequalityReport> {
    let n = check_dims(k, sys)?;
    require_isotropic(sys, DEFAULT_JOHN_TOL)?;
    if !k.has_zero_interior()? {
        return Err(Error::ZeroNotInterior);
    }
    let vol = k.volume()?;
    let constant = meyer_constant(n);
    let mut log_integral = 0.0;
    let mut factors = Vec::new();
    for (i, (u, c)) in sys.vectors.iter().zip(&sys.weights).enumerate() {
        let v = general_section(k, &hyperplane_basis(u))?.volume();
        log_integral += c * v.ln();
        factors.push(Factor {
            label: (i + 1).to_string(),
            volume: Value::Float(v),
            exponent: Value::Float(*c),
        });
    }
    let ln_rhs = rational::log_abs(&constant) + log_integral;
    let ln_lhs = (n as f64 - 1.0) * rational::log_abs(&vol);
    let mut r = float_report("dual-ball", ln_lhs, ln_rhs, Value::Exact(constant), Side::Rhs, factors, tol);
    r.extras.insert("log_integral".into(), serde_json::json!(log_integral));
    r.extras.insert(
        "log_integral_form_rhs".into(),
        serde_json::json!((ln_rhs).exp()),
    );
    Ok(r)
}

/// A finite measure on `S^{n-1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphereMeasure {
    pub atoms: Vec<(Vec<f64>, f64)>,
}

impl SphereMeasure {
    pub fn new(atoms: Vec<(Vec<f64>, f64)>) -> Result<Self> {
        let n = atoms.first().map(|a| a.0.len()).unwrap_or(0);
        if n == 0 {
            return Err(Error::InvalidInput("a sphere measure needs atoms".into()));
        }
        for (u, m) in &atoms {
            if u.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: u.len(),
                });
            }
            if !(*m >= 0.0 && m.is_finite()) {
                return Err(Error::InvalidInput(format!("negative or infinite mass {m}")));
            }
        }
        Ok(SphereMeasure { atoms })
    }

    pub fn from_system(sys: &UnitVectorSystem) -> Self {
        SphereMeasure {
            atoms: sys.vectors.iter().cloned().zip(sys.weights.iter().copied()).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.atoms[0].0.len()
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.1).sum()
    }

    pub fn tensor(&self) -> DMatrix<f64> {
        let n = self.n();
        let mut t = DMatrix::zeros(n, n);
        for (u, m) in &self.atoms {
            let v = DVector::from_column_slice(u);
            t += &v * v.transpose() * *m;
        }
        t
    }

    pub fn isotropy_residual(&self) -> f64 {
        frobenius_from_identity(&self.tensor(), 1.0)
    }

    /// The atoms with positive mass, as a unit vector system.
    pub fn to_system(&self) -> Result<UnitVectorSystem> {
        let (v, w): (Vec<_>, Vec<_>) = self.atoms.iter().filter(|a| a.1 > 0.0).cloned().unzip();
        UnitVectorSystem::new(v, w)
    }
}

/// Pushes the measure through `u -> T^{-1/2} u / |T^{-1/2} u|` with masses
/// scaled by `|T^{-1/2} u|^2`, where `T = sum m u u^T`. The result is isotropic.
pub fn renormalize_to_isotropic(m: &SphereMeasure) -> Result<SphereMeasure> {
    let eig = m.tensor().symmetric_eigen();
    let min = eig.eigenvalues.min();
    if !(min > EIGENVALUE_FLOOR) {
        return Err(Error::DegenerateMeasure { min_eigenvalue: min });
    }
    let inv_sqrt = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| 1.0 / l.sqrt()));
    let w = &eig.eigenvectors * inv_sqrt * eig.eigenvectors.transpose();
    let atoms = m
        .atoms
        .iter()
        .map(|(u, mass)| {
            let v = &w * DVector::from_column_slice(u);
            let norm = v.norm();
            ((v / norm).as_slice().to_vec(), mass * norm * norm)
        })
        .collect();
    Ok(SphereMeasure { atoms })
}

/// A density on the sphere, evaluated at unit vectors.
pub type SphereFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// Densities for [`discretize_sphere_measure`], with respect to surface measure.
#[derive(Clone)]
pub enum SphereDensity {
    /// Constant density with the given total mass.
    Uniform { total_mass: f64 },
    /// `exp(κ<μ,u>) + exp(-κ<μ,u>)`, rescaled to `total_mass`.
    /// Symmetrized so that the measure is even.
    VonMisesFisher { mean: Vec<f64>, kappa: f64, total_mass: f64 },
    /// Used as given.
    Custom(SphereFn),
}

impl fmt::Debug for SphereDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SphereDensity::Uniform { total_mass } => write!(f, "Uniform({total_mass})"),
            SphereDensity::VonMisesFisher { mean, kappa, total_mass } => {
                write!(f, "VonMisesFisher({mean:?}, {kappa}, {total_mass})")
            }
            SphereDensity::Custom(_) => f.write_str("Custom"),
        }
    }
}

/// Surface area of `S^{n-1}` for `n` in {2, 3}.
fn sphere_area(n: usize) -> f64 {
    if n == 2 {
        2.0 * PI
    } else {
        4.0 * PI
    }
}

/// Default number of grid points on `S^1` and `S^2`.
pub fn default_grid_size(n: usize) -> usize {
    if n == 2 {
        1 << 14
    } else {
        40_000
    }
}

fn sphere_grid(n: usize, size: usize) -> Vec<Vec<f64>> {
    if n == 2 {
        (0..size)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / size as f64;
                vec![t.cos(), t.sin()]
            })
            .collect()
    } else {
        // Fibonacci lattice.
        let golden = PI * (3.0 - 5f64.sqrt());
        (0..size)
            .map(|k| {
                let z = 1.0 - (2.0 * k as f64 + 1.0) / size as f64;
                let r = (1.0 - z * z).sqrt();
                let phi = golden * k as f64;
                vec![r * phi.cos(), r * phi.sin(), z]
            })
            .collect()
    }
}

fn geodesic(a: &[f64], b: &[f64]) -> f64 {
    dot(a, b).clamp(-1.0, 1.0).acos()
}

pub fn discretize_sphere_measure(n: usize, density: &SphereDensity, eps: f64) -> Result<SphereMeasure> {
    discretize_sphere_measure_with_grid(n, density, eps, default_grid_size(n))
}

/// Greedy maximal `eps`-separated net over a fixed grid, grid cells assigned
/// to the nearest net point (ties to the lower index), masses by cell
/// quadrature of the density.
pub fn discretize_sphere_measure_with_grid(n: usize, density: &SphereDensity, eps: f64, grid_size: usize) -> Result<SphereMeasure> {
    if n != 2 && n != 3 {
        return Err(Error::UnsupportedDimension(n));
    }
    if !(eps > 0.0 && eps.is_finite()) || grid_size == 0 {
        return Err(Error::InvalidInput(format!("bad eps {eps} or grid size {grid_size}")));
    }
    let grid = sphere_grid(n, grid_size);
    let cell = sphere_area(n) / grid_size as f64;
    let mut net: Vec<Vec<f64>> = Vec::new();
    for g in &grid {
        if net.iter().all(|u| geodesic(u, g) >= eps - 1e-9) {
            net.push(g.clone());
        }
    }
    let raw: SphereFn = match density {
        SphereDensity::Uniform { total_mass } => {
            let d = total_mass / sphere_area(n);
            Arc::new(move |_| d)
        }
        SphereDensity::VonMisesFisher { mean, kappa, .. } => {
            if mean.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: mean.len(),
                });
            }
            let norm = dot(mean, mean).sqrt();
            let mu: Vec<f64> = mean.iter().map(|x| x / norm).collect();
            let kappa = *kappa;
            Arc::new(move |u: &[f64]| {
                let t = kappa * dot(&mu, u);
                t.exp() + (-t).exp()
            })
        }
        SphereDensity::Custom(f) => f.clone(),
    };
    let mut masses = vec![0.0; net.len()];
    for g in &grid {
        let mut best = 0;
        let mut best_dot = f64::NEG_INFINITY;
        for (i, u) in net.iter().enumerate() {
            let d = dot(u, g);
            if d > best_dot {
                best = i;
                best_dot = d;
            }
        }
        masses[best] += raw(g) * cell;
    }
    if let SphereDensity::VonMisesFisher { total_mass, .. } = density {
        let total: f64 = masses.iter().sum();
        masses.iter_mut().for_each(|m| *m *= total_mass / total);
    }
    SphereMeasure::new(net.into_iter().zip(masses).collect())
}
