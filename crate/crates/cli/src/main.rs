mod output;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use covercert::certifier::{certify_with_tol, verify_certificate, DEFAULT_CERTIFY_TOL};
use covercert::covers::{
    enumerate_irreducible_with, IrreducibleBounds, UniformCovers, DEFAULT_ENUMERATION_BUDGET,
};
use covercert::functional::{
    check_dual_functional, gaussian_bl_extremal_check, integrate_power, pointwise_lemma_check, BlDatum, Domain,
    LogConcaveSpec, Method, DEFAULT_SEED,
};
use covercert::inequality::{
    check_bt, check_covers, check_dual_bt, check_lw, check_meyer, check_weighted_bt, check_weighted_dual_bt,
    BodyProfile, CoverCheck,
};
use covercert::isotropic::{
    check_ball, check_dual_ball, cover_from_john, discretize_sphere_measure, renormalize_to_isotropic, SphereDensity,
    SphereMeasure, UnitVectorSystem, DEFAULT_CHECK_TOL, DEFAULT_JOHN_TOL,
};
use covercert::quadrature::QuadratureSpec;
use covercert::rational::{format_rational, to_f64};
use covercert::{CoordSet, Cover, Error, Polytope, WeightedCover};
use serde_json::json;

use output::{report_list, single_report, Format, Outcome};

#[derive(Parser, Debug)]
#[command(name = "covercert", version, about = "Exact checks of uniform-cover volume inequalities")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Tolerance for floating-point verdicts (command-specific default).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads for batch checks.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Cap on enumerated covers.
    #[arg(long, global = true, env = "COVERCERT_BUDGET")]
    budget: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact volume of a body.
    Volume {
        /// Body JSON file.
        body: PathBuf,
    },
    /// Run one inequality check.
    Check(CheckArgs),
    /// Find and verify a cross-polytope certificate.
    Certify {
        #[arg(long)]
        body: PathBuf,
    },
    /// List uniform covers of [n].
    Covers {
        n: usize,
        s: usize,
        /// Only covers that are not disjoint unions of smaller uniform covers.
        #[arg(long)]
        irreducible: bool,
        #[arg(long)]
        max_parts: Option<usize>,
    },
    /// Integrals and pointwise checks for log-concave functions.
    #[command(subcommand)]
    Functional(FunctionalCommand),
    /// Unit vector systems and sphere measures.
    #[command(subcommand)]
    Isotropic(IsotropicCommand),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    Bt,
    DualBt,
    Lw,
    Meyer,
    Ball,
    DualBall,
    Weighted,
    Functional,
}

#[derive(Args, Debug)]
struct CheckArgs {
    kind: CheckKind,
    #[arg(long)]
    body: Option<PathBuf>,
    /// Cover such as "1,2;1,3;2,3".
    #[arg(long)]
    cover: Option<String>,
    /// Weighted cover JSON file.
    #[arg(long)]
    weights: Option<PathBuf>,
    /// Unit vector system JSON file.
    #[arg(long)]
    system: Option<PathBuf>,
    /// Log-concave function JSON file.
    #[arg(long)]
    function: Option<PathBuf>,
    /// Check every uniform cover of [N] with uniformity S.
    #[arg(long, num_args = 2, value_names = ["N", "S"])]
    all_covers: Option<Vec<usize>>,
    #[arg(long)]
    max_parts: Option<usize>,
    /// Use the dual (section) form for `weighted`.
    #[arg(long)]
    dual: bool,
    #[arg(long, value_enum, default_value = "closed-form")]
    method: MethodArg,
    #[command(flatten)]
    quad: QuadArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    ClosedForm,
    Quadrature,
}

#[derive(Args, Debug, Clone)]
struct QuadArgs {
    /// Tensor-grid points per axis.
    #[arg(long, default_value_t = 64)]
    points: usize,
    /// Use this many Halton points instead of the tensor grid.
    #[arg(long)]
    quasi: Option<usize>,
    /// Half-width of the integration box.
    #[arg(long)]
    radius: Option<f64>,
}

impl QuadArgs {
    fn spec(&self) -> QuadratureSpec {
        let q = match self.quasi {
            Some(n) => QuadratureSpec::quasi_random(n),
            None => QuadratureSpec::tensor(self.points),
        };
        match self.radius {
            Some(r) => q.with_radius(r),
            None => q,
        }
    }
}

#[derive(Subcommand, Debug)]
enum FunctionalCommand {
    /// Quadrature of f^p against its closed form.
    Integrate {
        #[arg(long)]
        function: PathBuf,
        /// Restrict to a coordinate subspace, e.g. "1,3".
        #[arg(long)]
        domain: Option<String>,
        #[arg(long, default_value_t = 1.0)]
        power: f64,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Sampled check of the pointwise inequality behind the functional form.
    Pointwise {
        #[arg(long)]
        function: PathBuf,
        #[arg(long)]
        cover: Option<String>,
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Gaussian extremals of the datum given by a coordinate cover.
    GaussianBl {
        #[arg(long)]
        cover: Option<String>,
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[command(flatten)]
        quad: QuadArgs,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DensityName {
    Uniform,
    VonMisesFisher,
}

#[derive(Subcommand, Debug)]
enum IsotropicCommand {
    /// Residual of John's condition for a vector system.
    John {
        #[arg(long)]
        system: PathBuf,
    },
    /// Push a weighted vector system into isotropic position.
    Renormalize {
        #[arg(long)]
        system: PathBuf,
    },
    /// Discretize a density on the sphere over a greedy eps-net.
    Discretize {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        eps: f64,
        #[arg(long, value_enum, default_value = "uniform")]
        density: DensityName,
        /// Total mass (defaults to n).
        #[arg(long)]
        mass: Option<f64>,
        /// Mean direction for von-mises-fisher, e.g. "1,0".
        #[arg(long)]
        mean: Option<String>,
        #[arg(long, default_value_t = 1.0)]
        kappa: f64,
        /// Also renormalize to isotropic position.
        #[arg(long)]
        renormalize: bool,
    },
}

/// Failures: geometry or usage problems exit with 2, failed verifications with 1.
enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Run = std::result::Result<Outcome, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn load_body(path: &Option<PathBuf>) -> std::result::Result<Polytope, Failure> {
    let path = path.as_ref().ok_or_else(|| usage("--body is required"))?;
    Ok(Polytope::from_json_str(&read(path)?)?)
}

fn load_system(path: &Option<PathBuf>) -> std::result::Result<UnitVectorSystem, Failure> {
    let path = path.as_ref().ok_or_else(|| usage("--system is required"))?;
    Ok(UnitVectorSystem::from_json_str(&read(path)?)?)
}

fn load_function(path: &Path) -> std::result::Result<LogConcaveSpec, Failure> {
    Ok(LogConcaveSpec::from_json_str(&read(path)?)?)
}

fn load_cover(text: &Option<String>, n: usize) -> std::result::Result<Cover, Failure> {
    let text = text.as_ref().ok_or_else(|| usage("--cover is required"))?;
    Ok(Cover::parse(text, Some(n))?)
}

/// A weighted cover from `--weights`, or unit weights on `--cover`.
fn load_weighted(cover: &Option<String>, weights: &Option<PathBuf>, n: usize) -> std::result::Result<WeightedCover, Failure> {
    match (cover, weights) {
        (_, Some(path)) => {
            let wc = WeightedCover::from_json_str(&read(path)?)?;
            if wc.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: wc.n(),
                }
                .into());
            }
            Ok(wc)
        }
        (Some(_), None) => Ok(WeightedCover::from_cover(&load_cover(cover, n)?)?),
        (None, None) => Err(usage("--cover or --weights is required")),
    }
}

fn positive_tol(tol: Option<f64>, default: f64) -> std::result::Result<f64, Failure> {
    match tol {
        Some(t) if !(t > 0.0 && t.is_finite()) => Err(usage(format!("--tol must be positive, got {t}"))),
        Some(t) => Ok(t),
        None => Ok(default),
    }
}

fn cmd_volume(body: &Path) -> Run {
    let k = Polytope::from_json_str(&read(body)?)?;
    let v = k.volume()?;
    let json = json!({"volume": format_rational(&v), "approx": to_f64(&v)});
    Ok(Outcome::new(json, true).with_fields())
}

fn uniform_covers(cli: &Cli, n: usize, s: usize, max_parts: Option<usize>) -> std::result::Result<Vec<Cover>, Failure> {
    let budget = cli.budget.unwrap_or(DEFAULT_ENUMERATION_BUDGET);
    let max_parts = max_parts.unwrap_or(n * s);
    UniformCovers::new(n, s, max_parts, budget)
        .collect::<covercert::Result<Vec<_>>>()
        .map_err(Failure::Core)
}

fn cmd_check(cli: &Cli, a: &CheckArgs) -> Run {
    if a.all_covers.is_some() && !matches!(a.kind, CheckKind::Bt | CheckKind::DualBt) {
        return Err(usage("--all-covers applies to bt and dual-bt only"));
    }
    match a.kind {
        CheckKind::Bt | CheckKind::DualBt => {
            let k = load_body(&a.body)?;
            if let Some(ns) = &a.all_covers {
                let (n, s) = (ns[0], ns[1]);
                if n != k.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: k.dim(),
                        found: n,
                    }
                    .into());
                }
                let covers = uniform_covers(cli, n, s, a.max_parts)?;
                let profile = BodyProfile::new(&k)?;
                let kind = if a.kind == CheckKind::Bt {
                    CoverCheck::Bt
                } else {
                    CoverCheck::DualBt
                };
                let parallel = cli.jobs != Some(1);
                let reports = check_covers(&profile, &covers, kind, parallel);
                let labelled = covers
                    .iter()
                    .zip(reports)
                    .map(|(c, r)| r.map(|r| (c.to_string(), r)))
                    .collect::<covercert::Result<Vec<_>>>()?;
                return Ok(report_list(&labelled));
            }
            let c = load_cover(&a.cover, k.dim())?;
            let r = if a.kind == CheckKind::Bt {
                check_bt(&k, &c)?
            } else {
                check_dual_bt(&k, &c)?
            };
            Ok(single_report(&c.to_string(), &r))
        }
        CheckKind::Lw => Ok(single_report("", &check_lw(&load_body(&a.body)?)?)),
        CheckKind::Meyer => Ok(single_report("", &check_meyer(&load_body(&a.body)?)?)),
        CheckKind::Ball | CheckKind::DualBall => {
            let k = load_body(&a.body)?;
            let sys = load_system(&a.system)?;
            let tol = positive_tol(cli.tol, DEFAULT_CHECK_TOL)?;
            let r = if a.kind == CheckKind::Ball {
                check_ball(&k, &sys, tol)?
            } else {
                check_dual_ball(&k, &sys, tol)?
            };
            Ok(single_report("", &r))
        }
        CheckKind::Weighted => {
            let k = load_body(&a.body)?;
            let wc = load_weighted(&a.cover, &a.weights, k.dim())?;
            let r = if a.dual {
                check_weighted_dual_bt(&k, &wc)?
            } else {
                check_weighted_bt(&k, &wc)?
            };
            Ok(single_report("", &r))
        }
        CheckKind::Functional => {
            let path = a.function.as_ref().ok_or_else(|| usage("--function is required"))?;
            let f = load_function(path)?;
            let wc = load_weighted(&a.cover, &a.weights, f.dim())?;
            let method = match a.method {
                MethodArg::ClosedForm => Method::ClosedForm,
                MethodArg::Quadrature => Method::Quadrature,
            };
            let tol = positive_tol(cli.tol, 1e-9)?;
            let r = check_dual_functional(&f, &wc, method, &a.quad.spec(), tol)?;
            Ok(single_report("", &r))
        }
    }
}

fn cmd_certify(cli: &Cli, body: &Path) -> Run {
    let tol = positive_tol(cli.tol, DEFAULT_CERTIFY_TOL)?;
    let k = Polytope::from_json_str(&read(body)?)?;
    let cert = certify_with_tol(&k, tol)?;
    let check = verify_certificate(&k, &cert, tol);
    let cert_json: serde_json::Value = serde_json::from_str(&cert.to_json_string()).expect("valid json");
    let json = json!({
        "certificate": cert_json,
        "verification": {
            "pass": check.pass,
            "volume_residual": check.volume_residual,
            "min_slack": check.min_slack,
            "reason": check.reason,
        },
    });
    let mut rows: Vec<Vec<String>> = cert
        .lambdas
        .iter()
        .enumerate()
        .map(|(i, l)| vec![format!("lambda_{}", i + 1), json!(l).to_string()])
        .collect();
    rows.push(vec!["volume_residual".into(), json!(check.volume_residual).to_string()]);
    rows.push(vec!["min_slack".into(), json!(check.min_slack).to_string()]);
    rows.push(vec!["verified".into(), check.pass.to_string()]);
    Ok(Outcome::new(json, check.pass).with_table(&["field", "value"], rows))
}

fn cmd_covers(cli: &Cli, n: usize, s: usize, irreducible: bool, max_parts: Option<usize>) -> Run {
    if n == 0 || s == 0 {
        return Err(usage("n and s must be positive"));
    }
    let covers = match (irreducible, max_parts) {
        (false, _) => uniform_covers(cli, n, s, max_parts)?,
        (true, Some(_)) => {
            let mut out = Vec::new();
            for c in uniform_covers(cli, n, s, max_parts)? {
                if c.is_irreducible()? {
                    out.push(c);
                }
            }
            out
        }
        (true, None) => {
            let bounds = IrreducibleBounds {
                max_uniformity: s,
                budget: cli.budget.unwrap_or(DEFAULT_ENUMERATION_BUDGET),
            };
            enumerate_irreducible_with(n, bounds)?
                .into_iter()
                .filter(|c| c.uniformity() == Some(s))
                .collect()
        }
    };
    let listing: Vec<String> = covers.iter().map(|c| c.to_string()).collect();
    let rows = listing.iter().map(|c| vec![c.clone(), c.matches(';').count().saturating_add(1).to_string()]).collect();
    let json = json!({"n": n, "s": s, "irreducible": irreducible, "count": listing.len(), "covers": listing});
    Ok(Outcome::new(json, true).with_table(&["cover", "parts"], rows))
}

fn cmd_functional(cli: &Cli, c: &FunctionalCommand) -> Run {
    match c {
        FunctionalCommand::Integrate {
            function,
            domain,
            power,
            quad,
        } => {
            let f = load_function(function)?;
            let dom = match domain {
                Some(t) => Domain::Coords(CoordSet::parse(f.dim(), t)?),
                None => Domain::Full,
            };
            let r = integrate_power(&f, &dom, *power, &quad.spec())?;
            let json = json!({
                "value": r.value,
                "closed_form": r.closed_form,
                "exact": r.exact.as_ref().map(format_rational),
                "relative_error": r.relative_error(),
                "points": r.points.to_string(),
                "truncation_radius": r.truncation_radius,
                "tail_bound": r.tail_bound,
            });
            Ok(Outcome::new(json, true).with_fields())
        }
        FunctionalCommand::Pointwise {
            function,
            cover,
            weights,
            samples,
        } => {
            let f = load_function(function)?;
            let wc = load_weighted(cover, weights, f.dim())?;
            let r = pointwise_lemma_check(&f, &wc, *samples, cli.seed)?;
            let json = json!({
                "pass": r.pass(),
                "samples": r.samples,
                "violations": r.violations,
                "worst_gap": r.worst_gap,
                "step_violations": r.step_violations,
                "worst_step_gap": r.worst_step_gap,
            });
            Ok(Outcome::new(json, r.pass()).with_fields())
        }
        FunctionalCommand::GaussianBl {
            cover,
            weights,
            samples,
            quad,
        } => {
            let n = match (cover, weights) {
                (Some(t), None) => Cover::parse(t, None)?.n(),
                (_, Some(p)) => WeightedCover::from_json_str(&read(p)?)?.n(),
                (None, None) => return Err(usage("--cover or --weights is required")),
            };
            let wc = load_weighted(cover, weights, n)?;
            let datum = BlDatum::from_weighted_cover(&wc)?;
            let tol = positive_tol(cli.tol, 0.01)?;
            let r = gaussian_bl_extremal_check(&datum, &quad.spec(), *samples, cli.seed, tol)?;
            let pass = r.direct == covercert::functional::Verdict::Confirmed
                && r.reverse == covercert::functional::Verdict::Confirmed;
            let json = json!({
                "pass": pass,
                "identity_residual": r.identity_residual,
                "pointwise_residual": r.pointwise_residual,
                "direct_lhs": r.direct_lhs,
                "direct_rhs": r.direct_rhs,
                "reverse_lower_bound": r.reverse_lower_bound,
                "direct": r.direct,
                "reverse": r.reverse,
            });
            Ok(Outcome::new(json, pass).with_fields())
        }
    }
}

fn system_json(sys: &UnitVectorSystem) -> serde_json::Value {
    serde_json::from_str(&sys.to_json_string()).expect("valid json")
}

fn cmd_isotropic(cli: &Cli, c: &IsotropicCommand) -> Run {
    match c {
        IsotropicCommand::John { system } => {
            let sys = load_system(&Some(system.clone()))?;
            let tol = positive_tol(cli.tol, DEFAULT_JOHN_TOL)?;
            let j = sys.john_check(tol);
            let cover_residual = cover_from_john(&sys, tol).ok().map(|c| c.residual);
            let json = json!({
                "isotropic": j.isotropic,
                "residual": j.residual,
                "trace": j.trace,
                "trace_matches": j.trace_matches,
                "cover_residual": cover_residual,
            });
            Ok(Outcome::new(json, j.isotropic).with_fields())
        }
        IsotropicCommand::Renormalize { system } => {
            let sys = load_system(&Some(system.clone()))?;
            let m = renormalize_to_isotropic(&SphereMeasure::from_system(&sys))?;
            let out = m.to_system()?;
            let json = json!({
                "system": system_json(&out),
                "residual": m.isotropy_residual(),
                "total_mass": m.total_mass(),
            });
            Ok(Outcome::new(json, true).with_fields())
        }
        IsotropicCommand::Discretize {
            n,
            eps,
            density,
            mass,
            mean,
            kappa,
            renormalize,
        } => {
            let total_mass = mass.unwrap_or(*n as f64);
            let density = match density {
                DensityName::Uniform => SphereDensity::Uniform { total_mass },
                DensityName::VonMisesFisher => {
                    let mean = match mean {
                        Some(t) => t
                            .split(',')
                            .map(|x| x.trim().parse::<f64>().map_err(|e| usage(format!("bad --mean: {e}"))))
                            .collect::<std::result::Result<Vec<_>, _>>()?,
                        None => (0..*n).map(|i| if i == 0 { 1.0 } else { 0.0 }).collect(),
                    };
                    SphereDensity::VonMisesFisher {
                        mean,
                        kappa: *kappa,
                        total_mass,
                    }
                }
            };
            let mut m = discretize_sphere_measure(*n, &density, *eps)?;
            if *renormalize {
                m = renormalize_to_isotropic(&m)?;
            }
            let json = json!({
                "atoms": m.atoms.len(),
                "system": system_json(&m.to_system()?),
                "residual": m.isotropy_residual(),
                "total_mass": m.total_mass(),
            });
            Ok(Outcome::new(json, true).with_fields())
        }
    }
}

fn run(cli: &Cli) -> Run {
    match &cli.command {
        Command::Volume { body } => cmd_volume(body),
        Command::Check(a) => cmd_check(cli, a),
        Command::Certify { body } => cmd_certify(cli, body),
        Command::Covers {
            n,
            s,
            irreducible,
            max_parts,
        } => cmd_covers(cli, *n, *s, *irreducible, *max_parts),
        Command::Functional(c) => cmd_functional(cli, c),
        Command::Isotropic(c) => cmd_isotropic(cli, c),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        // Fails only if a pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.render(cli.format));
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Core(e @ Error::Infeasible { .. })) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
