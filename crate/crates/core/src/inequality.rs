//! Exact checks of the uniform-cover volume inequalities on a polytope.
//!
//! * primal: `|K|^s <= prod |P_{F_i} K|^{c_i}`
//! * dual: `|K|^s >= (n!)^{-s} prod (d_i!)^{c_i} |K ∩ F_i|^{c_i}`, for `0 in int K`
//!
//! Unweighted covers are the case `c_i = 1`. Loomis–Whitney and Meyer are the
//! primal and dual forms for the cover by the sets `[n] \ {i}`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::coords::CoordSet;
use crate::covers::{Cover, WeightedCover};
use crate::error::{Error, Result};
use crate::polytope::Polytope;
use crate::rational::{self, factorial_rat, int, pow_int, Rational};
use crate::report::{to_i64, Factor, InequalityReport, Side, Value};

/// Largest dimension a [`BodyProfile`] will index by bitmask.
pub const MAX_PROFILE_DIM: usize = 16;

/// A full-dimensional body with its coordinate section and projection volumes
/// computed on demand and cached by coordinate mask.
pub struct BodyProfile {
    body: Polytope,
    volume: Rational,
    zero_interior: bool,
    sections: Vec<OnceLock<Result<Rational>>>,
    projections: Vec<OnceLock<Result<Rational>>>,
}

impl BodyProfile {
    pub fn new(body: &Polytope) -> Result<Self> {
        let n = body.dim();
        if n > MAX_PROFILE_DIM {
            return Err(Error::DimensionTooLarge {
                dim: n,
                cap: MAX_PROFILE_DIM,
            });
        }
        let body = body.complete()?.into_owned();
        let volume = body.volume()?;
        let zero_interior = body.has_zero_interior()?;
        let slots = 1usize << n;
        Ok(BodyProfile {
            body,
            volume,
            zero_interior,
            sections: (0..slots).map(|_| OnceLock::new()).collect(),
            projections: (0..slots).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn body(&self) -> &Polytope {
        &self.body
    }

    pub fn dim(&self) -> usize {
        self.body.dim()
    }

    pub fn volume(&self) -> &Rational {
        &self.volume
    }

    pub fn has_zero_interior(&self) -> bool {
        self.zero_interior
    }

    /// `|K ∩ F_sigma|` in `|sigma|` dimensions; 0 when the section has no interior.
    pub fn section_volume(&self, sigma: &CoordSet) -> Result<Rational> {
        self.check(sigma)?;
        if sigma.is_full() {
            return Ok(self.volume.clone());
        }
        self.sections[sigma.mask() as usize]
            .get_or_init(|| self.body.coordinate_section(sigma)?.volume())
            .clone()
    }

    fn section_ref(&self, sigma: &CoordSet) -> Result<&Rational> {
        self.check(sigma)?;
        if sigma.is_full() {
            return Ok(&self.volume);
        }
        self.sections[sigma.mask() as usize]
            .get_or_init(|| self.body.coordinate_section(sigma)?.volume())
            .as_ref()
            .map_err(Clone::clone)
    }

    /// `|P_{F_sigma} K|` in `|sigma|` dimensions.
    pub fn projection_volume(&self, sigma: &CoordSet) -> Result<Rational> {
        self.check(sigma)?;
        if sigma.is_full() {
            return Ok(self.volume.clone());
        }
        self.projections[sigma.mask() as usize]
            .get_or_init(|| self.body.coordinate_projection(sigma)?.volume())
            .clone()
    }

    /// Fills every section and projection cache, in parallel.
    pub fn precompute(&self) {
        let n = self.dim();
        CoordSet::all_nonempty(n).par_iter().for_each(|s| {
            let _ = self.section_volume(s);
            let _ = self.projection_volume(s);
        });
    }

    /// Fills the section cache only, in parallel.
    pub fn precompute_sections(&self) {
        CoordSet::all_nonempty(self.dim()).par_iter().for_each(|s| {
            let _ = self.section_volume(s);
        });
    }

    fn check(&self, sigma: &CoordSet) -> Result<()> {
        if sigma.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: sigma.ambient_dim(),
            });
        }
        Ok(())
    }
}

fn require_zero_interior(p: &BodyProfile) -> Result<()> {
    if p.has_zero_interior() {
        Ok(())
    } else {
        Err(Error::ZeroNotInterior)
    }
}

fn check_cover_dim(p: &BodyProfile, n: usize) -> Result<()> {
    if n != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: n,
        });
    }
    Ok(())
}

fn exact_report(
    name: &str,
    lhs: Rational,
    rhs: Rational,
    constant: Rational,
    product_side: Side,
    factors: Vec<Factor>,
) -> InequalityReport {
    let mut warnings = Vec::new();
    let (slack, pass) = if rhs.is_zero() {
        warnings.push("right-hand side is zero; inequality holds trivially".to_string());
        (None, true)
    } else {
        let pass = lhs >= rhs;
        (Some(Value::Exact(&lhs / &rhs)), pass)
    };
    InequalityReport {
        name: name.to_string(),
        lhs: Value::Exact(lhs),
        rhs: Value::Exact(rhs),
        slack,
        pass,
        exact: true,
        constant: Value::Exact(constant),
        product_side,
        factors,
        warnings,
        extras: BTreeMap::new(),
    }
}

/// Primal inequality: `lhs = prod |P_{F_sigma_i} K|`, `rhs = |K|^s`.
pub fn check_bt_profile(p: &BodyProfile, cover: &Cover) -> Result<InequalityReport> {
    check_cover_dim(p, cover.n())?;
    let s = cover.uniformity().ok_or(Error::NotUniform)?;
    let mut lhs = int(1);
    let mut factors = Vec::with_capacity(cover.len());
    for part in cover.parts() {
        let v = p.projection_volume(part)?;
        lhs *= &v;
        factors.push(Factor {
            label: part.to_string(),
            volume: Value::Exact(v),
            exponent: Value::Exact(int(1)),
        });
    }
    let rhs = pow_int(p.volume(), s as i64);
    Ok(exact_report("bt", lhs, rhs, int(1), Side::Lhs, factors))
}

/// `(n!)^{-s} prod |sigma_i|!`, the constant of the dual inequality.
pub fn dual_constant(cover: &Cover) -> Option<Rational> {
    let s = cover.uniformity()?;
    let num = cover
        .parts()
        .iter()
        .fold(int(1), |acc, part| acc * factorial_rat(part.len()));
    Some(num / pow_int(&factorial_rat(cover.n()), s as i64))
}

/// Dual inequality: `lhs = |K|^s`, `rhs = (n!)^{-s} prod |sigma_i|! |K ∩ F_sigma_i|`.
pub fn check_dual_bt_profile(p: &BodyProfile, cover: &Cover) -> Result<InequalityReport> {
    check_cover_dim(p, cover.n())?;
    let s = cover.uniformity().ok_or(Error::NotUniform)?;
    require_zero_interior(p)?;
    let constant = dual_constant(cover).expect("uniform");
    let mut rhs = constant.clone();
    let mut factors = Vec::with_capacity(cover.len());
    for part in cover.parts() {
        let v = p.section_volume(part)?;
        rhs *= &v;
        factors.push(Factor {
            label: part.to_string(),
            volume: Value::Exact(v),
            exponent: Value::Exact(int(1)),
        });
    }
    let lhs = pow_int(p.volume(), s as i64);
    Ok(exact_report("dual-bt", lhs, rhs, constant, Side::Rhs, factors))
}

pub fn check_bt(k: &Polytope, cover: &Cover) -> Result<InequalityReport> {
    check_bt_profile(&BodyProfile::new(k)?, cover)
}

pub fn check_dual_bt(k: &Polytope, cover: &Cover) -> Result<InequalityReport> {
    check_dual_bt_profile(&BodyProfile::new(k)?, cover)
}

/// Common denominator `L` of the weights and `s`, and the integers `s L`, `c_i L`.
fn cleared_exponents(wc: &WeightedCover) -> Result<(u64, i64, Vec<i64>)> {
    let l = rational::lcm_of_denominators(wc.weights().iter().chain(std::iter::once(wc.s())));
    let lr = Rational::from_integer(l.clone());
    let s_l = to_i64(&(wc.s() * &lr).to_integer())?;
    let c_l = wc
        .weights()
        .iter()
        .map(|c| to_i64(&(c * &lr).to_integer()))
        .collect::<Result<Vec<_>>>()?;
    let l = u64::try_from(&l).map_err(|_| Error::InvalidInput("weight denominators too large".into()))?;
    Ok((l, s_l, c_l))
}

fn weighted_report(
    name: &str,
    l: u64,
    lhs_pow: Rational,
    rhs_pow: Rational,
    constant_pow: Rational,
    product_side: Side,
    factors: Vec<Factor>,
) -> InequalityReport {
    let mut warnings = Vec::new();
    let (slack, pass) = if rhs_pow.is_zero() {
        warnings.push("right-hand side is zero; inequality holds trivially".to_string());
        (None, true)
    } else {
        let ratio = &lhs_pow / &rhs_pow;
        let pass = ratio >= Rational::one();
        (Some(Value::root(ratio, l)), pass)
    };
    let mut extras = BTreeMap::new();
    extras.insert("common_denominator".to_string(), serde_json::json!(l));
    InequalityReport {
        name: name.to_string(),
        lhs: Value::root(lhs_pow, l),
        rhs: Value::root(rhs_pow, l),
        slack,
        pass,
        exact: true,
        constant: Value::root(constant_pow, l),
        product_side,
        factors,
        warnings,
        extras,
    }
}

/// `|K|^s <= prod |P_{F_i} K|^{c_i}`, compared exactly after raising both
/// sides to the common denominator of the exponents.
pub fn check_weighted_bt_profile(p: &BodyProfile, wc: &WeightedCover) -> Result<InequalityReport> {
    check_cover_dim(p, wc.n())?;
    wc.check()?;
    let (l, s_l, c_l) = cleared_exponents(wc)?;
    let mut lhs_pow = int(1);
    let mut factors = Vec::new();
    for ((part, c), e) in wc.parts().iter().zip(wc.weights()).zip(&c_l) {
        let v = p.projection_volume(part)?;
        lhs_pow *= pow_int(&v, *e);
        factors.push(Factor {
            label: part.to_string(),
            volume: Value::Exact(v),
            exponent: Value::Exact(c.clone()),
        });
    }
    let rhs_pow = pow_int(p.volume(), s_l);
    Ok(weighted_report("weighted-bt", l, lhs_pow, rhs_pow, int(1), Side::Lhs, factors))
}

/// `|K|^s >= (n!)^{-s} prod (d_i!)^{c_i} |K ∩ F_i|^{c_i}`, exact.
pub fn check_weighted_dual_bt_profile(p: &BodyProfile, wc: &WeightedCover) -> Result<InequalityReport> {
    check_cover_dim(p, wc.n())?;
    require_zero_interior(p)?;
    wc.check()?;
    let (l, s_l, c_l) = cleared_exponents(wc)?;
    let mut constant_pow = pow_int(&factorial_rat(wc.n()), -s_l);
    let mut factors = Vec::new();
    let mut product = int(1);
    for ((part, c), e) in wc.parts().iter().zip(wc.weights()).zip(&c_l) {
        let v = p.section_volume(part)?;
        constant_pow *= pow_int(&factorial_rat(part.len()), *e);
        product *= pow_int(&v, *e);
        factors.push(Factor {
            label: part.to_string(),
            volume: Value::Exact(v),
            exponent: Value::Exact(c.clone()),
        });
    }
    let rhs_pow = &constant_pow * product;
    let lhs_pow = pow_int(p.volume(), s_l);
    Ok(weighted_report(
        "weighted-dual-bt",
        l,
        lhs_pow,
        rhs_pow,
        constant_pow,
        Side::Rhs,
        factors,
    ))
}

pub fn check_weighted_bt(k: &Polytope, wc: &WeightedCover) -> Result<InequalityReport> {
    check_weighted_bt_profile(&BodyProfile::new(k)?, wc)
}

pub fn check_weighted_dual_bt(k: &Polytope, wc: &WeightedCover) -> Result<InequalityReport> {
    check_weighted_dual_bt_profile(&BodyProfile::new(k)?, wc)
}

/// `n! / n^n`.
pub fn meyer_constant(n: usize) -> Rational {
    factorial_rat(n) / pow_int(&int(n as i64), n as i64)
}

/// The chain `(n!)^{-(n-1)} prod_i (n-1)! = ((n-1)!)^n / (n!)^{n-1} = n!/n^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct MeyerIdentity {
    pub n: usize,
    /// `(n!)^{-(n-1)}` times the product of `n` copies of `(n-1)!`.
    pub product_form: Rational,
    /// `((n-1)!)^n / (n!)^{n-1}`.
    pub power_form: Rational,
    /// `n!/n^n`.
    pub constant: Rational,
}

impl MeyerIdentity {
    pub fn holds(&self) -> bool {
        self.product_form == self.power_form && self.power_form == self.constant
    }
}

pub fn meyer_identity(n: usize) -> MeyerIdentity {
    assert!(n >= 1, "n must be positive");
    let nf = factorial_rat(n);
    let m1 = factorial_rat(n - 1);
    let inv = pow_int(&nf, -(n as i64 - 1));
    let product_form = (0..n).fold(inv, |acc, _| acc * &m1);
    let power_form = pow_int(&m1, n as i64) / pow_int(&nf, n as i64 - 1);
    MeyerIdentity {
        n,
        product_form,
        power_form,
        constant: meyer_constant(n),
    }
}

/// Loomis–Whitney: the primal check for the cover by `[n] \ {i}`.
pub fn check_lw_profile(p: &BodyProfile) -> Result<InequalityReport> {
    let mut r = check_bt_profile(p, &Cover::complements(p.dim())?)?;
    r.name = "lw".into();
    Ok(r)
}

/// Meyer: the dual check for the cover by `[n] \ {i}`, constant `n!/n^n`.
pub fn check_meyer_profile(p: &BodyProfile) -> Result<InequalityReport> {
    let n = p.dim();
    let mut r = check_dual_bt_profile(p, &Cover::complements(n)?)?;
    r.name = "meyer".into();
    let c = meyer_constant(n);
    debug_assert_eq!(r.constant, Value::Exact(c.clone()));
    r.extras.insert(
        "meyer_constant".into(),
        serde_json::Value::String(rational::format_rational(&c)),
    );
    Ok(r)
}

pub fn check_lw(k: &Polytope) -> Result<InequalityReport> {
    check_lw_profile(&BodyProfile::new(k)?)
}

pub fn check_meyer(k: &Polytope) -> Result<InequalityReport> {
    check_meyer_profile(&BodyProfile::new(k)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverCheck {
    Bt,
    DualBt,
}

/// Checks many covers against one body. The output follows the input order;
/// with `parallel` the work is spread over the rayon pool.
pub fn check_covers(
    p: &BodyProfile,
    covers: &[Cover],
    kind: CoverCheck,
    parallel: bool,
) -> Vec<Result<InequalityReport>> {
    let one = |c: &Cover| match kind {
        CoverCheck::Bt => check_bt_profile(p, c),
        CoverCheck::DualBt => check_dual_bt_profile(p, c),
    };
    if parallel {
        covers.par_iter().map(one).collect()
    } else {
        covers.iter().map(one).collect()
    }
}

/// Dual slack only, without building a report; for large sweeps.
pub fn dual_bt_slack(p: &BodyProfile, cover: &Cover) -> Result<Rational> {
    check_cover_dim(p, cover.n())?;
    let s = cover.uniformity().ok_or(Error::NotUniform)?;
    require_zero_interior(p)?;
    let mut sections = Vec::with_capacity(cover.len());
    for part in cover.parts() {
        let v = p.section_ref(part)?;
        if !v.is_positive() {
            return Err(Error::EmptySection);
        }
        sections.push((part.len(), v));
    }
    let vol = p.volume() * factorial_rat(p.dim());
    if let Some(r) = small_dual_slack(&vol, s, &sections) {
        return Ok(r);
    }
    // slack = (n! |K|)^s / prod |sigma|! |K ∩ F_sigma|
    let mut num = pow_int(&vol, s as i64).numer().clone();
    let mut den = pow_int(&vol, s as i64).denom().clone();
    for (k, v) in &sections {
        num *= v.denom();
        den *= v.numer() * rational::factorial(*k);
    }
    Ok(Rational::new(num, den))
}

/// The same quotient in `i128` when nothing overflows.
fn small_dual_slack(vol: &Rational, s: usize, sections: &[(usize, &Rational)]) -> Option<Rational> {
    use num_traits::ToPrimitive;
    let (vn, vd) = (vol.numer().to_i128()?, vol.denom().to_i128()?);
    let mut num = vn.checked_pow(s as u32)?;
    let mut den = vd.checked_pow(s as u32)?;
    for (k, v) in sections {
        let f = (2..=*k as i128).try_fold(1i128, |a, b| a.checked_mul(b))?;
        num = num.checked_mul(v.denom().to_i128()?)?;
        den = den.checked_mul(v.numer().to_i128()?.checked_mul(f)?)?;
    }
    Some(Rational::new(num.into(), den.into()))
}
