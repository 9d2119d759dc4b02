//! `hardy` — verification sweeps and probes for the inverse-square operator
//! toolkit, with machine-readable CSV/JSON reports.

mod config;
mod output;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use hardy_core::error::HardyError;
use hardy_core::green::GreenKernelSeries;
use hardy_core::probes::{eigen_scan, nonexistence_probe, sub_hardy_probe};
use hardy_core::profile::RadialFunction;
use hardy_core::quad::{integrate_radial, QuadratureSpec};
use hardy_core::solver::{extract_singularity_coefficient, solve_radial_bvp};
use hardy_core::testfn::default_library;
use hardy_core::verify::{verify_fundamental_identity, verify_green_identity};
use hardy_core::HardyParams;

use config::{make_source, parse_config_file, parse_f64_list, parse_mu_list};
use output::{fmt_f64, Format, Report};

#[derive(Parser)]
#[command(
    name = "hardy",
    version,
    about = "Numerical checks for -Δ + μ/|x|² on balls and annuli"
)]
struct Cli {
    /// Flat `key = value` config file; command-line flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output path (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format: csv | json.
    #[arg(long, global = true)]
    format: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the whole-space and ball distributional identities over the
    /// test-function library.
    Verify(VerifyArgs),
    /// Solve the radial problem with prescribed singularity coefficient and
    /// tabulate the profile.
    Solve(SolveArgs),
    /// Nonexistence and threshold probes.
    #[command(subcommand)]
    Probe(ProbeCommand),
    /// Sample the Green kernel and check the two-sided envelopes.
    Green(GreenArgs),
    /// Quadrature and derivative self-tests.
    Selftest,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    dim: Option<u32>,
    /// μ value or sweep list: e.g. `2` or `mu0,mu0+0.5,0,1,5`.
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    /// Ball radius for the bounded-domain identity.
    #[arg(long)]
    radius: Option<f64>,
    /// Relative tolerance for the residuals.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    dim: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    /// Source from the registry: zero | const[:c] | power:S | sin:K | table:PATH.
    #[arg(long)]
    f: Option<String>,
    /// Singularity coefficient to impose at the origin.
    #[arg(long)]
    k: Option<f64>,
    #[arg(long)]
    radius: Option<f64>,
    /// Angular mode.
    #[arg(long)]
    mode: Option<u32>,
    /// Number of table rows.
    #[arg(long)]
    grid: Option<usize>,
}

#[derive(Subcommand)]
enum ProbeCommand {
    /// Principal eigenvalue of -Δu = λ a₀ u/|x|² on annuli (ε, 1).
    Eigen(EigenArgs),
    /// Zero set of the oscillating solution below the threshold.
    Oscillation(OscillationArgs),
    /// Exhaustion series on shrinking annuli with growth classification.
    Blowup(BlowupArgs),
}

#[derive(Args)]
struct EigenArgs {
    #[arg(long)]
    dim: Option<u32>,
    #[arg(long)]
    a0: Option<f64>,
    /// Comma-separated inner radii.
    #[arg(long)]
    eps: Option<String>,
}

#[derive(Args)]
struct OscillationArgs {
    #[arg(long)]
    dim: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    #[arg(long)]
    rmax: Option<f64>,
}

#[derive(Args)]
struct BlowupArgs {
    #[arg(long)]
    dim: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    #[arg(long)]
    f: Option<String>,
    /// Probe radius.
    #[arg(long)]
    x0: Option<f64>,
    #[arg(long)]
    n_max: Option<u32>,
    #[arg(long)]
    radius: Option<f64>,
}

#[derive(Args)]
struct GreenArgs {
    #[arg(long)]
    dim: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    max_mode: Option<usize>,
    /// Evaluate one kernel value at `r,s,cos_gamma` instead of sampling.
    #[arg(long)]
    eval: Option<String>,
}

/// Flag-over-config resolution with typed parsing.
struct Resolver {
    cfg: BTreeMap<String, String>,
}

impl Resolver {
    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, String>
    where
        T::Err: std::fmt::Display,
    {
        match self.cfg.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<T>()
                .map(Some)
                .map_err(|e| format!("config key `{key}`: {e}")),
        }
    }

    fn resolve<T: std::str::FromStr + Clone>(
        &self,
        flag: Option<T>,
        key: &str,
        default: Option<T>,
    ) -> Result<T, String>
    where
        T::Err: std::fmt::Display,
    {
        if let Some(v) = flag {
            return Ok(v);
        }
        if let Some(v) = self.get::<T>(key)? {
            return Ok(v);
        }
        default.ok_or_else(|| format!("missing required parameter `{key}`"))
    }
}

fn exit_code_for(err: &HardyError) -> u8 {
    match err {
        HardyError::NoSolution(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    if let Ok(workers) = std::env::var("HARDY_WORKERS") {
        if let Ok(n) = workers.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }

    let cfg = match &cli.config {
        Some(path) => match parse_config_file(path) {
            Ok(map) => map,
            Err(e) => {
                eprintln!("hardy: {e}");
                return ExitCode::from(2);
            }
        },
        None => BTreeMap::new(),
    };
    let resolver = Resolver { cfg };

    let format = match resolver.resolve::<String>(cli.format.clone(), "format", Some("csv".into()))
    {
        Ok(f) => match f.parse::<Format>() {
            Ok(f) => f,
            Err(e) => {
                eprintln!("hardy: {e}");
                return ExitCode::from(2);
            }
        },
        Err(e) => {
            eprintln!("hardy: {e}");
            return ExitCode::from(2);
        }
    };
    let out = cli.out.clone().or_else(|| {
        resolver
            .get::<String>("out")
            .ok()
            .flatten()
            .map(PathBuf::from)
    });

    let run = match &cli.command {
        Command::Verify(args) => cmd_verify(args, &resolver),
        Command::Solve(args) => cmd_solve(args, &resolver),
        Command::Probe(ProbeCommand::Eigen(args)) => cmd_probe_eigen(args, &resolver),
        Command::Probe(ProbeCommand::Oscillation(args)) => cmd_probe_oscillation(args, &resolver),
        Command::Probe(ProbeCommand::Blowup(args)) => cmd_probe_blowup(args, &resolver),
        Command::Green(args) => cmd_green(args, &resolver),
        Command::Selftest => cmd_selftest(),
    };

    match run {
        Ok((report, code)) => {
            if let Err(e) = report.write(&out, format) {
                eprintln!("hardy: cannot write output: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err((msg, code)) => {
            eprintln!("hardy: {msg}");
            ExitCode::from(code)
        }
    }
}

type CmdResult = Result<(Report, u8), (String, u8)>;

fn cmd_verify(args: &VerifyArgs, res: &Resolver) -> CmdResult {
    let dim = res.resolve(args.dim, "dim", None).map_err(|e| (e, 2))?;
    let mu_spec: String = res
        .resolve(args.mu.clone(), "mu", None)
        .map_err(|e| (e, 2))?;
    let radius: f64 = res
        .resolve(args.radius, "radius", Some(1.0))
        .map_err(|e| (e, 2))?;
    let tol: f64 = res
        .resolve(args.tol, "tol", Some(1e-6))
        .map_err(|e| (e, 2))?;
    let mus = parse_mu_list(&mu_spec, dim).map_err(|e| (e, 2))?;

    // Fail fast on dimension/regime before the sweep.
    for &mu in &mus {
        let p = HardyParams::<f64>::new(dim, mu).map_err(|e| (e.to_string(), 2))?;
        p.dirac_constant()
            .map_err(|e| (format!("mu={mu}: {e}"), 2))?;
    }

    let spec = QuadratureSpec::<f64>::default();
    let library = default_library::<f64>(radius);
    let jobs: Vec<(f64, usize)> = mus
        .iter()
        .flat_map(|&mu| (0..library.len()).map(move |i| (mu, i)))
        .collect();

    // identity, mu, xi, lhs, rhs, abs_residual, rel_residual, budget
    type VerifyRow = (String, f64, String, f64, f64, f64, f64, f64);
    let results: Vec<Result<Vec<VerifyRow>, (f64, String, HardyError)>> = jobs
        .par_iter()
        .map(|&(mu, xi_idx)| {
            let xi = &library[xi_idx];
            let tag = |e: HardyError| (mu, xi.label().to_string(), e);
            let p = HardyParams::<f64>::new(dim, mu).map_err(tag)?;
            let mut rows = Vec::new();
            let fun = verify_fundamental_identity(&p, xi, &spec).map_err(tag)?;
            rows.push((
                "fundamental".to_string(),
                mu,
                xi.label().to_string(),
                fun.lhs,
                fun.rhs,
                fun.abs_residual,
                fun.rel_residual,
                fun.quadrature_error_budget,
            ));
            let green = verify_green_identity(&p, radius, xi, &spec).map_err(tag)?;
            rows.push((
                "green".to_string(),
                mu,
                xi.label().to_string(),
                green.lhs,
                green.rhs,
                green.abs_residual,
                green.rel_residual,
                green.quadrature_error_budget,
            ));
            Ok(rows)
        })
        .collect();

    let mut report = Report::new("verify");
    report.config("dim", dim);
    report.config("mu", &mu_spec);
    report.config("radius", radius);
    report.config("tol", tol);
    report.columns(&[
        "identity",
        "dim",
        "mu",
        "xi",
        "lhs",
        "rhs",
        "abs_residual",
        "rel_residual",
        "budget",
        "pass",
    ]);

    let mut worst = 0.0f64;
    let mut violations = 0usize;
    for result in results {
        let rows = result.map_err(|(mu, xi, e)| {
            (
                format!("verify failed at dim={dim} mu={mu} xi={xi}: {e}"),
                exit_code_for(&e),
            )
        })?;
        for (identity, mu, xi, lhs, rhs, abs_res, rel_res, budget) in rows {
            let pass = rel_res <= tol || abs_res <= budget;
            if !pass {
                violations += 1;
            }
            worst = worst.max(rel_res);
            report.row(vec![
                identity,
                dim.to_string(),
                fmt_f64(mu),
                xi,
                fmt_f64(lhs),
                fmt_f64(rhs),
                fmt_f64(abs_res),
                fmt_f64(rel_res),
                fmt_f64(budget),
                pass.to_string(),
            ]);
        }
    }
    report.footer("worst_rel_residual", fmt_f64(worst));
    report.footer("violations", violations);
    Ok((report, if violations == 0 { 0 } else { 1 }))
}

fn cmd_solve(args: &SolveArgs, res: &Resolver) -> CmdResult {
    let dim = res.resolve(args.dim, "dim", None).map_err(|e| (e, 2))?;
    let mu_spec: String = res
        .resolve(args.mu.clone(), "mu", None)
        .map_err(|e| (e, 2))?;
    let mus = parse_mu_list(&mu_spec, dim).map_err(|e| (e, 2))?;
    if mus.len() != 1 {
        return Err(("solve takes a single mu".into(), 2));
    }
    let mu = mus[0];
    let source_name: String = res
        .resolve(args.f.clone(), "source", None)
        .map_err(|e| (e, 2))?;
    let k: f64 = res.resolve(args.k, "k", Some(0.0)).map_err(|e| (e, 2))?;
    let radius: f64 = res
        .resolve(args.radius, "radius", Some(1.0))
        .map_err(|e| (e, 2))?;
    let mode: u32 = res
        .resolve(args.mode, "mode", Some(0))
        .map_err(|e| (e, 2))?;
    let grid: usize = res
        .resolve(args.grid, "grid", Some(50))
        .map_err(|e| (e, 2))?;

    let p = HardyParams::<f64>::new(dim, mu).map_err(|e| (e.to_string(), 2))?;
    let f = make_source(&source_name, &p, radius).map_err(|e| (e, 2))?;
    let spec = QuadratureSpec::<f64>::default();

    let mut report = Report::new("solve");
    report.config("dim", dim);
    report.config("mu", fmt_f64(mu));
    report.config("source", &source_name);
    report.config("k", fmt_f64(k));
    report.config("radius", fmt_f64(radius));
    report.config("mode", mode);
    report.config("grid", grid);
    report.columns(&["r", "u", "u_over_phi"]);

    let sol = match solve_radial_bvp(&p, mode, &f, radius, k, &spec) {
        Ok(sol) => sol,
        Err(HardyError::NoSolution(ev)) => {
            report.footer("status", "no-solution");
            report.footer("divergence_model", ev.model);
            report.footer("divergence_rate", fmt_f64(ev.rate));
            report.footer("partial_norm", fmt_f64(ev.partial));
            return Ok((report, 1));
        }
        Err(e) => return Err((format!("solve failed: {e}"), exit_code_for(&e))),
    };

    let mu_eff = mu + (mode as f64) * (mode as f64 + dim as f64 - 2.0);
    let p_eff = HardyParams::<f64>::new(dim, mu_eff).map_err(|e| (e.to_string(), 2))?;
    for i in 1..=grid {
        let r = radius * i as f64 / grid as f64;
        let u = sol.profile.value(r);
        let phi = p_eff.singular_branch(r).map_err(|e| (e.to_string(), 2))?;
        report.row(vec![fmt_f64(r), fmt_f64(u), fmt_f64(u / phi)]);
    }
    report.footer("status", "ok");
    report.footer("boundary_value", fmt_f64(sol.boundary_value));
    report.footer("residual_norm", fmt_f64(sol.residual_norm));
    match extract_singularity_coefficient(&sol, &p) {
        Ok(lim) => {
            report.footer("k_hat", fmt_f64(lim.value));
            report.footer("k_hat_error", fmt_f64(lim.error_estimate));
        }
        Err(e) => report.footer("k_hat", format!("unavailable ({e})")),
    }
    Ok((report, 0))
}

fn cmd_probe_eigen(args: &EigenArgs, res: &Resolver) -> CmdResult {
    let dim = res.resolve(args.dim, "dim", None).map_err(|e| (e, 2))?;
    let a0: f64 = res.resolve(args.a0, "a0", Some(1.0)).map_err(|e| (e, 2))?;
    let eps_spec: String = res
        .resolve(args.eps.clone(), "eps", Some("1e-2,1e-3,1e-4".into()))
        .map_err(|e| (e, 2))?;
    let eps = parse_f64_list(&eps_spec).map_err(|e| (e, 2))?;

    let curve = eigen_scan::<f64>(dim, a0, &eps)
        .map_err(|e| (format!("eigen scan failed: {e}"), exit_code_for(&e)))?;

    let mut report = Report::new("probe eigen");
    report.config("dim", dim);
    report.config("a0", fmt_f64(a0));
    report.config("eps", &eps_spec);
    report.columns(&["eps", "lambda1", "gap", "lambda_ref", "rel_err"]);
    let mut violation = false;
    let pi = std::f64::consts::PI;
    for (i, &e) in curve.eps_list.iter().enumerate() {
        let lam = curve.lambda1[i];
        let reference = (((dim as f64 - 2.0) / 2.0).powi(2) + pi * pi / (e.ln() * e.ln())) / a0;
        let rel = (lam - reference).abs() / reference;
        if rel > 5e-3 || lam <= curve.hardy_constant {
            violation = true;
        }
        if i > 0 && lam >= curve.lambda1[i - 1] {
            violation = true;
        }
        report.row(vec![
            fmt_f64(e),
            fmt_f64(lam),
            fmt_f64(lam - curve.hardy_constant),
            fmt_f64(reference),
            fmt_f64(rel),
        ]);
    }
    report.footer("hardy_constant", fmt_f64(curve.hardy_constant));
    report.footer("strictly_decreasing", (!violation).to_string());
    Ok((report, if violation { 1 } else { 0 }))
}

fn cmd_probe_oscillation(args: &OscillationArgs, res: &Resolver) -> CmdResult {
    let dim = res.resolve(args.dim, "dim", None).map_err(|e| (e, 2))?;
    let mu_spec: String = res
        .resolve(args.mu.clone(), "mu", None)
        .map_err(|e| (e, 2))?;
    let mus = parse_mu_list(&mu_spec, dim).map_err(|e| (e, 2))?;
    if mus.len() != 1 {
        return Err(("oscillation takes a single mu".into(), 2));
    }
    let rmax: f64 = res
        .resolve(args.rmax, "rmax", Some(1.0))
        .map_err(|e| (e, 2))?;

    let rep = sub_hardy_probe::<f64>(dim, mus[0], rmax)
        .map_err(|e| (format!("oscillation probe failed: {e}"), exit_code_for(&e)))?;

    let mut report = Report::new("probe oscillation");
    report.config("dim", dim);
    report.config("mu", fmt_f64(mus[0]));
    report.config("rmax", fmt_f64(rmax));
    report.columns(&["index", "zero_radius", "ratio_to_next"]);
    for (i, &z) in rep.zero_locations.iter().enumerate() {
        let ratio = rep
            .consecutive_ratios
            .get(i)
            .map(|&r| fmt_f64(r))
            .unwrap_or_default();
        report.row(vec![i.to_string(), fmt_f64(z), ratio]);
    }
    let eighth_err = rep
        .consecutive_ratios
        .get(7)
        .map(|&r| (r - rep.predicted_ratio).abs() / rep.predicted_ratio);
    report.footer("predicted_ratio", fmt_f64(rep.predicted_ratio));
    if let Some(err) = eighth_err {
        report.footer("eighth_zero_rel_err", fmt_f64(err));
    }
    let violation = eighth_err.map(|e| e > 1e-3).unwrap_or(true);
    Ok((report, if violation { 1 } else { 0 }))
}

fn cmd_probe_blowup(args: &BlowupArgs, res: &Resolver) -> CmdResult {
    let dim = res.resolve(args.dim, "dim", None).map_err(|e| (e, 2))?;
    let mu_spec: String = res
        .resolve(args.mu.clone(), "mu", None)
        .map_err(|e| (e, 2))?;
    let mus = parse_mu_list(&mu_spec, dim).map_err(|e| (e, 2))?;
    if mus.len() != 1 {
        return Err(("blowup takes a single mu".into(), 2));
    }
    let source_name: String = res
        .resolve(args.f.clone(), "source", None)
        .map_err(|e| (e, 2))?;
    let x0: f64 = res.resolve(args.x0, "x0", Some(0.5)).map_err(|e| (e, 2))?;
    let n_max: u32 = res
        .resolve(args.n_max, "n_max", Some(256))
        .map_err(|e| (e, 2))?;
    let radius: f64 = res
        .resolve(args.radius, "radius", Some(1.0))
        .map_err(|e| (e, 2))?;

    let p = HardyParams::<f64>::new(dim, mus[0]).map_err(|e| (e.to_string(), 2))?;
    let f = make_source(&source_name, &p, radius).map_err(|e| (e, 2))?;
    let spec = QuadratureSpec::<f64>::default();

    let series = match nonexistence_probe(&p, &f, x0, n_max, &spec) {
        Ok(s) => s,
        Err(e @ HardyError::ProbeFailure(_)) => {
            return Err((format!("probe failure: {e}"), 1));
        }
        Err(e) => return Err((format!("blowup probe failed: {e}"), exit_code_for(&e))),
    };

    let mut report = Report::new("probe blowup");
    report.config("dim", dim);
    report.config("mu", fmt_f64(mus[0]));
    report.config("source", &source_name);
    report.config("x0", fmt_f64(x0));
    report.config("n_max", n_max);
    report.columns(&["n", "inner_radius", "value"]);
    for (i, &a) in series.inner_radii.iter().enumerate() {
        report.row(vec![
            fmt_f64(1.0 / a),
            fmt_f64(a),
            fmt_f64(series.values_at_probe[i]),
        ]);
    }
    report.footer("growth_model", series.growth_fit.model);
    report.footer("coefficient", fmt_f64(series.growth_fit.coefficient));
    report.footer("r_squared", fmt_f64(series.growth_fit.r_squared));
    Ok((report, 0))
}

fn cmd_green(args: &GreenArgs, res: &Resolver) -> CmdResult {
    let dim = res.resolve(args.dim, "dim", None).map_err(|e| (e, 2))?;
    let mu_spec: String = res
        .resolve(args.mu.clone(), "mu", None)
        .map_err(|e| (e, 2))?;
    let mus = parse_mu_list(&mu_spec, dim).map_err(|e| (e, 2))?;
    if mus.len() != 1 {
        return Err(("green takes a single mu".into(), 2));
    }
    let samples: usize = res
        .resolve(args.samples, "samples", Some(1000))
        .map_err(|e| (e, 2))?;
    let seed: u64 = res
        .resolve(args.seed, "seed", Some(0xB0))
        .map_err(|e| (e, 2))?;
    let max_mode: usize = res
        .resolve(args.max_mode, "max_mode", Some(96))
        .map_err(|e| (e, 2))?;

    let p = HardyParams::<f64>::new(dim, mus[0]).map_err(|e| (e.to_string(), 2))?;
    let gk = GreenKernelSeries::build(p, 1.0, max_mode).map_err(|e| (e.to_string(), 2))?;

    let mut report = Report::new("green");
    report.config("dim", dim);
    report.config("mu", fmt_f64(mus[0]));
    report.config("max_mode", max_mode);

    if let Some(at) = &args.eval {
        let vals = parse_f64_list(at).map_err(|e| (e, 2))?;
        if vals.len() != 3 {
            return Err(("--eval needs r,s,cos_gamma".into(), 2));
        }
        let v = gk
            .eval_polar(vals[0], vals[1], vals[2])
            .map_err(|e| (format!("kernel evaluation failed: {e}"), exit_code_for(&e)))?;
        report.config("eval", at);
        report.columns(&["r", "s", "cos_gamma", "kernel"]);
        report.row(vec![
            fmt_f64(vals[0]),
            fmt_f64(vals[1]),
            fmt_f64(vals[2]),
            fmt_f64(v),
        ]);
        return Ok((report, 0));
    }

    report.config("samples", samples);
    report.config("seed", seed);
    let bounds = gk
        .check_kernel_bounds(samples, seed)
        .map_err(|e| (format!("bound check failed: {e}"), exit_code_for(&e)))?;
    report.columns(&[
        "r",
        "s",
        "cos_gamma",
        "dist",
        "kernel",
        "upper_envelope",
        "lower_envelope",
    ]);
    for s in &bounds.samples {
        report.row(vec![
            fmt_f64(s.r),
            fmt_f64(s.s),
            fmt_f64(s.cos_gamma),
            fmt_f64(s.dist),
            fmt_f64(s.kernel_value),
            fmt_f64(s.upper_envelope),
            s.lower_envelope.map(fmt_f64).unwrap_or_default(),
        ]);
    }
    report.footer("fitted_upper_c", fmt_f64(bounds.fitted_upper_c));
    if let Some(lc) = bounds.fitted_lower_c {
        report.footer("fitted_lower_c", fmt_f64(lc));
    }
    report.footer("violations", bounds.violations);
    Ok((report, if bounds.violations == 0 { 0 } else { 1 }))
}

fn cmd_selftest() -> CmdResult {
    use rand::{Rng, SeedableRng};
    let spec = QuadratureSpec::<f64>::default();
    let mut report = Report::new("selftest");
    report.columns(&["test", "cases", "worst_err", "pass"]);
    let mut all_pass = true;
    let push = |report: &mut Report, name: &str, cases: usize, worst: f64, tol: f64| {
        let pass = worst <= tol;
        report.row(vec![
            name.to_string(),
            cases.to_string(),
            fmt_f64(worst),
            pass.to_string(),
        ]);
        pass
    };

    // Power-law: ∫_0^1 r^α dr = 1/(α+1).
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5E1F);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let alpha: f64 = rng.gen_range(-0.95..3.0);
        let v = integrate_radial(&|r: f64| r.powf(alpha), 0.0, 1.0, &spec)
            .map_err(|e| (e.to_string(), 2))?
            .value;
        worst = worst.max((v - 1.0 / (alpha + 1.0)).abs() * (alpha + 1.0).abs());
    }
    all_pass &= push(&mut report, "power_law", 50, worst, 1e-9);

    // Log weight: ∫_0^1 (-ln r) r^α dr = 1/(α+1)².
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let alpha: f64 = rng.gen_range(-0.9..3.0);
        let v = integrate_radial(&|r: f64| -r.ln() * r.powf(alpha), 0.0, 1.0, &spec)
            .map_err(|e| (e.to_string(), 2))?
            .value;
        let oracle = 1.0 / ((alpha + 1.0) * (alpha + 1.0));
        worst = worst.max((v - oracle).abs() / oracle);
    }
    all_pass &= push(&mut report, "log_weight", 20, worst, 1e-9);

    // Additivity over a random split point.
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let c: f64 = rng.gen_range(0.05..0.95);
        let f = |r: f64| (3.0 * r).sin() + r.powf(-0.3);
        let whole = integrate_radial(&f, 0.0, 1.0, &spec).map_err(|e| (e.to_string(), 2))?;
        let left = integrate_radial(&f, 0.0, c, &spec).map_err(|e| (e.to_string(), 2))?;
        let right = integrate_radial(&f, c, 1.0, &spec).map_err(|e| (e.to_string(), 2))?;
        worst = worst.max((whole.value - left.value - right.value).abs());
    }
    all_pass &= push(&mut report, "additivity", 20, worst, 1e-10);

    // Analytic vs finite-difference derivatives over the library.
    let mut worst = 0.0f64;
    let mut cases = 0;
    for xi in default_library::<f64>(1.0) {
        let fd = xi.profile.without_analytic_derivatives();
        for &r in &[0.07, 0.23, 0.31, 0.62] {
            if r >= xi.support_radius {
                continue;
            }
            cases += 1;
            let d1 = (xi.profile.d1(r) - fd.d1(r)).abs() / fd.d1(r).abs().max(1.0);
            let d2 = (xi.profile.d2(r) - fd.d2(r)).abs() / fd.d2(r).abs().max(1.0);
            worst = worst.max(d1).max(d2);
        }
    }
    all_pass &= push(&mut report, "derivatives", cases, worst, 2e-5);

    // Closed-form solve roundtrip.
    let p = HardyParams::<f64>::new(3, 2.0).map_err(|e| (e.to_string(), 2))?;
    let one = RadialFunction::constant(1.0, 1.0);
    let sol = solve_radial_bvp(&p, 0, &one, 1.0, 0.0, &spec).map_err(|e| (e.to_string(), 2))?;
    let mut worst = 0.0f64;
    for i in 1..=40 {
        let r = i as f64 / 40.0;
        worst = worst.max((sol.profile.value(r) - (r - r * r) / 4.0).abs());
    }
    all_pass &= push(&mut report, "solve_roundtrip", 40, worst, 1e-10);

    report.footer("all_pass", all_pass);
    Ok((report, if all_pass { 0 } else { 1 }))
}
