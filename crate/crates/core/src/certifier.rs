//! Cross-polytope certificates.
//!
//! For a body `K` with `0` in its interior, find `C = conv{±λ_i e_i}` with
//! `|C| = |K|` and `|C ∩ F_σ| >= |K ∩ F_σ|` for every coordinate subspace.
//! Writing `t_i = 2λ_i` and `x_i = log t_i`, the conditions are linear:
//!
//! ```text
//! sum_i x_i            = log(n! |K|)
//! sum_{i in σ} x_i    >= log(|σ|! |K ∩ F_σ|)     for proper nonempty σ
//! ```
//!
//! The solver maximizes the smallest slack of the inequalities, then the next
//! smallest, and so on (the nucleolus of the slack vector). That point is unique,
//! as far from round-off trouble as possible, and moves with relabelings and
//! dilations of `K`.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::coords::CoordSet;
use crate::error::{Error, Result};
use crate::inequality::BodyProfile;
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::polytope::Polytope;
use crate::rational::{self, Rational};

/// Largest dimension accepted by [`certify`] (`2^n - 1` constraints).
pub const MAX_CERTIFY_DIM: usize = 10;

pub const DEFAULT_CERTIFY_TOL: f64 = 1e-9;

const PIVOT_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct CrossPolytopeCertificate {
    pub n: usize,
    pub lambdas: Vec<f64>,
    /// `t_i = 2 λ_i`, the half-axes doubled.
    pub t: Vec<f64>,
    pub target_volume: Rational,
    /// `(|C ∩ F_σ| - |K ∩ F_σ|) / |K ∩ F_σ|` for every proper nonempty σ.
    pub section_slacks: BTreeMap<CoordSet, f64>,
    /// `||C| / |K| - 1|`.
    pub volume_residual: f64,
    /// Smallest entry of `section_slacks` (0 when there are none).
    pub min_slack: f64,
}

fn ln_factorial(k: usize) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

/// `log |C ∩ F_σ| = sum_{i in σ} log t_i - log |σ|!`.
fn ln_cross_section(ln_t: &[f64], sigma: &CoordSet) -> f64 {
    sigma.indices().iter().map(|&i| ln_t[i]).sum::<f64>() - ln_factorial(sigma.len())
}

/// Relative slacks and volume residual of the cross-polytope with the given
/// `λ` against the exact data in `profile`.
fn measure(profile: &BodyProfile, lambdas: &[f64]) -> Result<(BTreeMap<CoordSet, f64>, f64, f64)> {
    let n = profile.dim();
    let ln_t: Vec<f64> = lambdas.iter().map(|l| (2.0 * l).ln()).collect();
    let full = CoordSet::full(n);
    let volume_residual =
        (ln_cross_section(&ln_t, &full) - rational::log_abs(profile.volume())).exp_m1().abs();
    let mut slacks = BTreeMap::new();
    for sigma in CoordSet::all_nonempty(n) {
        if sigma.is_full() {
            continue;
        }
        let v = profile.section_volume(&sigma)?;
        let slack = if v == rational::int(0) {
            f64::INFINITY
        } else {
            (ln_cross_section(&ln_t, &sigma) - rational::log_abs(&v)).exp_m1()
        };
        slacks.insert(sigma, slack);
    }
    let min_slack = slacks.values().copied().fold(f64::INFINITY, f64::min);
    let min_slack = if min_slack.is_finite() { min_slack } else { 0.0 };
    Ok((slacks, volume_residual, min_slack))
}

pub fn certify(k: &Polytope) -> Result<CrossPolytopeCertificate> {
    certify_with_tol(k, DEFAULT_CERTIFY_TOL)
}

/// Builds the max-min-slack certificate. `Infeasible` is raised only when the
/// optimal log-slack is below `-10 tol`; a certificate always exists when 0 is
/// interior, so this points to round-off trouble or a bug.
pub fn certify_with_tol(k: &Polytope, tol: f64) -> Result<CrossPolytopeCertificate> {
    let n = k.dim();
    if n > MAX_CERTIFY_DIM {
        return Err(Error::DimensionTooLarge {
            dim: n,
            cap: MAX_CERTIFY_DIM,
        });
    }
    let profile = BodyProfile::new(k)?;
    if !profile.has_zero_interior() {
        return Err(Error::ZeroNotInterior);
    }
    profile.precompute_sections();
    certify_profile(&profile, tol)
}

/// `max m` subject to `row x - m >= b` on the free rows, `row x = b + level`
/// on the fixed rows and `sum x = target`.
fn max_min_slack(n: usize, target: f64, rows: &[(Vec<f64>, f64)], fixed: &[Option<f64>]) -> Result<(Vec<f64>, f64)> {
    let mut lp = LinearProgram::<f64>::new(n + 1);
    lp.free = vec![true; n + 1];
    lp.objective[n] = 1.0;
    let mut eq = vec![1.0; n + 1];
    eq[n] = 0.0;
    lp.add(eq, Relation::Eq, target);
    for ((row, b), level) in rows.iter().zip(fixed) {
        let mut r = row.clone();
        match level {
            Some(level) => {
                r.push(0.0);
                lp.add(r, Relation::Eq, b + level);
            }
            None => {
                r.push(-1.0);
                lp.add(r, Relation::Ge, *b);
            }
        }
    }
    solve(&lp, n)
}

fn solve(lp: &LinearProgram<f64>, n: usize) -> Result<(Vec<f64>, f64)> {
    match lp.maximize(PIVOT_TOL) {
        LpOutcome::Optimal { x, value } => Ok((x[..n].to_vec(), value)),
        LpOutcome::Infeasible => Err(Error::Infeasible { min_slack: f64::NEG_INFINITY }),
        LpOutcome::Unbounded => Err(Error::InvalidInput("certificate program is unbounded".into())),
    }
}

/// Largest value of `rows[c] x` keeping every free row at slack `>= level`.
fn max_row(n: usize, target: f64, rows: &[(Vec<f64>, f64)], fixed: &[Option<f64>], level: f64, c: usize) -> Result<f64> {
    let mut lp = LinearProgram::<f64>::new(n);
    lp.free = vec![true; n];
    lp.objective = rows[c].0.clone();
    lp.add(vec![1.0; n], Relation::Eq, target);
    for ((row, b), f) in rows.iter().zip(fixed) {
        match f {
            Some(l) => lp.add(row.clone(), Relation::Eq, b + l),
            None => lp.add(row.clone(), Relation::Ge, b + level - TIGHT_TOL),
        }
    }
    Ok(solve(&lp, n)?.1 - rows[c].1)
}

const TIGHT_TOL: f64 = 1e-10;

/// Lexicographic max-min of the slack vector: maximize the smallest slack,
/// freeze the rows that are tight at every optimum, repeat until `x` is
/// determined. The result does not depend on the order of the coordinates.
fn nucleolus(n: usize, target: f64, rows: &[(Vec<f64>, f64)], tol: f64) -> Result<Vec<f64>> {
    let mut fixed: Vec<Option<f64>> = vec![None; rows.len()];
    let mut first = true;
    loop {
        let (x, m) = max_min_slack(n, target, rows, &fixed)?;
        if first && m < -10.0 * tol {
            return Err(Error::Infeasible { min_slack: m });
        }
        first = false;
        let tight: Vec<usize> = (0..rows.len())
            .filter(|&c| fixed[c].is_none())
            .filter(|&c| {
                let slack: f64 = rows[c].0.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>() - rows[c].1;
                slack - m <= 1e-9 * (1.0 + m.abs())
            })
            .collect();
        let mut frozen = Vec::new();
        for &c in &tight {
            if max_row(n, target, rows, &fixed, m, c)? - m <= 1e-9 * (1.0 + m.abs()) {
                frozen.push(c);
            }
        }
        if frozen.is_empty() {
            frozen = tight;
        }
        if frozen.is_empty() {
            return Ok(x);
        }
        for c in frozen {
            fixed[c] = Some(m);
        }
        if let Some(x) = determined(n, target, rows, &fixed) {
            return Ok(x);
        }
    }
}

/// Least-squares solution of the frozen equations once they pin down `x`.
fn determined(n: usize, target: f64, rows: &[(Vec<f64>, f64)], fixed: &[Option<f64>]) -> Option<Vec<f64>> {
    let eqs: Vec<(&[f64], f64)> = std::iter::once((&[][..], target))
        .chain(rows.iter().zip(fixed).filter_map(|((r, b), f)| f.map(|l| (&r[..], b + l))))
        .collect();
    let a = DMatrix::from_fn(eqs.len(), n, |i, j| if i == 0 { 1.0 } else { eqs[i].0[j] });
    let rhs = DVector::from_iterator(eqs.len(), eqs.iter().map(|e| e.1));
    if a.rank(1e-9) < n {
        return None;
    }
    let ata = a.transpose() * &a;
    let x = ata.cholesky()?.solve(&(a.transpose() * rhs));
    Some(x.as_slice().to_vec())
}

pub fn certify_profile(profile: &BodyProfile, tol: f64) -> Result<CrossPolytopeCertificate> {
    let n = profile.dim();
    let target = rational::log_abs(profile.volume()) + ln_factorial(n);
    let x = if n == 1 {
        vec![target]
    } else {
        let mut rows = Vec::new();
        for sigma in CoordSet::all_nonempty(n) {
            if sigma.is_full() {
                continue;
            }
            let v = profile.section_volume(&sigma)?;
            if v == rational::int(0) {
                continue;
            }
            let mut row = vec![0.0; n];
            for &i in sigma.indices() {
                row[i] = 1.0;
            }
            rows.push((row, rational::log_abs(&v) + ln_factorial(sigma.len())));
        }
        nucleolus(n, target, &rows, tol)?
    };
    let t: Vec<f64> = x.iter().map(|xi| xi.exp()).collect();
    let lambdas: Vec<f64> = t.iter().map(|ti| ti / 2.0).collect();
    let (section_slacks, volume_residual, min_slack) = measure(profile, &lambdas)?;
    Ok(CrossPolytopeCertificate {
        n,
        lambdas,
        t,
        target_volume: profile.volume().clone(),
        section_slacks,
        volume_residual,
        min_slack,
    })
}

/// Outcome of re-checking a certificate against a body.
#[derive(Clone, Debug, PartialEq)]
pub struct CertificateCheck {
    pub pass: bool,
    pub volume_residual: f64,
    pub min_slack: f64,
    pub per_sigma: BTreeMap<CoordSet, f64>,
    pub reason: Option<String>,
}

/// Recomputes every `|K ∩ F_σ|` exactly and compares with the cross-polytope
/// closed forms. Passes iff the volume residual is at most `tol` and no
/// section slack is below `-tol`.
pub fn verify_certificate(k: &Polytope, cert: &CrossPolytopeCertificate, tol: f64) -> CertificateCheck {
    let failed = |reason: String| CertificateCheck {
        pass: false,
        volume_residual: f64::NAN,
        min_slack: f64::NAN,
        per_sigma: BTreeMap::new(),
        reason: Some(reason),
    };
    if cert.lambdas.len() != k.dim() {
        return failed(format!("{} lambdas for a body in dimension {}", cert.lambdas.len(), k.dim()));
    }
    if cert.lambdas.iter().any(|l| !(l.is_finite() && *l > 0.0)) {
        return failed("lambdas must be positive".into());
    }
    let profile = match BodyProfile::new(k) {
        Ok(p) => p,
        Err(e) => return failed(e.to_string()),
    };
    profile.precompute_sections();
    let (per_sigma, volume_residual, min_slack) = match measure(&profile, &cert.lambdas) {
        Ok(m) => m,
        Err(e) => return failed(e.to_string()),
    };
    let mut reason = None;
    if !(volume_residual <= tol) {
        reason = Some(format!("volume residual {volume_residual:e} exceeds {tol:e}"));
    } else if !(min_slack >= -tol) {
        reason = Some(format!("section slack {min_slack:e} below -{tol:e}"));
    }
    CertificateCheck {
        pass: reason.is_none(),
        volume_residual,
        min_slack,
        per_sigma,
        reason,
    }
}

/// The box `prod_i [0, t_i]`: `|B| = n! |K|` and `|B ∩ F_σ| = t_σ`.
#[derive(Clone, Debug, PartialEq)]
pub struct CertificateBox {
    pub sides: Vec<f64>,
}

impl CertificateBox {
    pub fn volume(&self) -> f64 {
        self.sides.iter().product()
    }

    /// `t_σ = prod_{i in σ} t_i`.
    pub fn section_volume(&self, sigma: &CoordSet) -> f64 {
        sigma.indices().iter().map(|&i| self.sides[i]).product()
    }
}

pub fn box_form(cert: &CrossPolytopeCertificate) -> CertificateBox {
    CertificateBox { sides: cert.t.clone() }
}

/// `{"lambdas", "volume_residual", "min_slack", "per_sigma": {"1,3": slack}}`
/// plus `n`, `t` and the exact target volume.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateJson {
    pub n: usize,
    pub lambdas: Vec<f64>,
    pub t: Vec<f64>,
    #[serde(with = "rational::serde_rational")]
    pub target_volume: Rational,
    pub volume_residual: f64,
    pub min_slack: f64,
    pub per_sigma: BTreeMap<String, f64>,
}

impl From<&CrossPolytopeCertificate> for CertificateJson {
    fn from(c: &CrossPolytopeCertificate) -> Self {
        CertificateJson {
            n: c.n,
            lambdas: c.lambdas.clone(),
            t: c.t.clone(),
            target_volume: c.target_volume.clone(),
            volume_residual: c.volume_residual,
            min_slack: c.min_slack,
            per_sigma: c.section_slacks.iter().map(|(s, v)| (s.to_string(), *v)).collect(),
        }
    }
}

impl TryFrom<CertificateJson> for CrossPolytopeCertificate {
    type Error = Error;

    fn try_from(j: CertificateJson) -> Result<Self> {
        let section_slacks = j
            .per_sigma
            .iter()
            .map(|(k, v)| Ok((CoordSet::parse(j.n, k)?, *v)))
            .collect::<Result<_>>()?;
        Ok(CrossPolytopeCertificate {
            n: j.n,
            lambdas: j.lambdas,
            t: j.t,
            target_volume: j.target_volume,
            section_slacks,
            volume_residual: j.volume_residual,
            min_slack: j.min_slack,
        })
    }
}

impl CrossPolytopeCertificate {
    /// Certificate for explicit `λ`, measured against `k`.
    pub fn from_lambdas(k: &Polytope, lambdas: Vec<f64>) -> Result<Self> {
        let profile = BodyProfile::new(k)?;
        if lambdas.len() != profile.dim() {
            return Err(Error::DimensionMismatch {
                expected: profile.dim(),
                found: lambdas.len(),
            });
        }
        let (section_slacks, volume_residual, min_slack) = measure(&profile, &lambdas)?;
        Ok(CrossPolytopeCertificate {
            n: profile.dim(),
            t: lambdas.iter().map(|l| 2.0 * l).collect(),
            lambdas,
            target_volume: profile.volume().clone(),
            section_slacks,
            volume_residual,
            min_slack,
        })
    }

    /// `(2^n / n!) prod λ_i`.
    pub fn cross_volume(&self) -> f64 {
        (self.t.iter().map(|t| t.ln()).sum::<f64>() - ln_factorial(self.n)).exp()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&CertificateJson::from(self)).expect("serializes")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let j: CertificateJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        j.try_into()
    }
}
