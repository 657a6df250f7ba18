//! Command-line driver: solve a registered problem once, run a named
//! convergence study, or scan the stability bounds, writing CSV to stdout
//! or a file.

mod config;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use config::Config;
use fracdiff::evolution::{adi_solve_2d, cn_solve_1d, AdiVariant};
use fracdiff::harness::{
    emit_csv, find_problem, run_convergence, table_studies, ProblemKind, ProblemParams,
    ProblemSpec,
};
use fracdiff::linalg::{norms_1d, norms_2d};
use fracdiff::operators::SchemeOrder;
use fracdiff::spectral::{default_ratios, linspace, stability_scan};
use fracdiff::steady::solve_steady;
use fracdiff::{Field2D, GridFunction1D, SolverError};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

const MAX_M_1D: usize = 8192;
const MAX_M_2D: usize = 512;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Solver(SolverError),
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        CliError::Solver(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Solver(SolverError::Io(e))
    }
}

#[derive(Parser)]
#[command(
    name = "fracdiff",
    version,
    about = "Fractional and tempered-fractional diffusion solvers",
    after_help = "Config file: flat key=value lines with # comments; keys \
                  mirror the long flags and command-line values win."
)]
struct Cli {
    /// Key=value file supplying defaults for the long flags.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a steady problem once and print the solution profile.
    Steady(SteadyArgs),
    /// March a 1D problem to t = 1 with Crank-Nicolson.
    Evolve1d(Evolve1dArgs),
    /// March a 2D problem to t = 1 with an ADI splitting.
    Evolve2d(Evolve2dArgs),
    /// Rerun a named error-table study and print errors and rates.
    Convergence(ConvergenceArgs),
    /// Sample the generating function and amplification factor bounds.
    StabilityScan(ScanArgs),
}

#[derive(Args)]
struct SteadyArgs {
    /// Registered problem name, for example example2_1.
    #[arg(long)]
    problem: Option<String>,
    #[arg(long)]
    alpha: Option<f64>,
    /// Tempering parameter; defaults to the problem's own value.
    #[arg(long)]
    lambda: Option<f64>,
    /// Scheme order, 4 or 5.
    #[arg(long)]
    order: Option<u32>,
    /// Number of grid cells.
    #[arg(long)]
    m: Option<usize>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Evolve1dArgs {
    #[arg(long)]
    problem: Option<String>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    m: Option<usize>,
    /// Time-step rule; `h2` takes m^2 steps to t = 1.
    #[arg(long, value_name = "h2", conflicts_with = "nsteps")]
    tau_rule: Option<String>,
    /// Explicit number of time steps to t = 1.
    #[arg(long)]
    nsteps: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Evolve2dArgs {
    #[arg(long)]
    problem: Option<String>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    /// Splitting variant: douglas or dyakonov.
    #[arg(long)]
    variant: Option<String>,
    /// Cells per direction.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConvergenceArgs {
    /// Study preset: 1, 2, 3, t4, t5, t6, or tempered5.
    #[arg(long)]
    table: Option<String>,
    /// Keep only the studies at this fractional order.
    #[arg(long)]
    alpha: Option<f64>,
    /// Extend the 2D preset from m = 64 to m = 128.
    #[arg(long)]
    extended: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    /// Sample count across the order interval [1, 2].
    #[arg(long)]
    alpha_points: Option<usize>,
    /// Sample count across the frequency interval [0, pi].
    #[arg(long)]
    sigma_points: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let config = match &cli.config {
        Some(path) => match Config::load(path) {
            Ok(c) => c,
            Err(CliError::Usage(msg)) => {
                eprintln!("error: {msg}");
                return ExitCode::from(2);
            }
            Err(CliError::Solver(e)) => {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        },
        None => Config::default(),
    };
    match run(cli.command, &config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Solver(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command, config: &Config) -> Result<(), CliError> {
    match command {
        Command::Steady(args) => run_steady(args, config),
        Command::Evolve1d(args) => run_evolve1d(args, config),
        Command::Evolve2d(args) => run_evolve2d(args, config),
        Command::Convergence(args) => run_convergence_cmd(args, config),
        Command::StabilityScan(args) => run_scan(args, config),
    }
}

fn output(out: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    match out {
        Some(path) => Ok(Box::new(BufWriter::new(File::create(path)?))),
        None => Ok(Box::new(std::io::stdout().lock())),
    }
}

fn lookup(name: &str, kind: ProblemKind, verb: &str) -> Result<ProblemSpec, CliError> {
    let spec = find_problem(name).ok_or_else(|| {
        let known: Vec<_> = fracdiff::harness::registry()
            .iter()
            .map(|p| p.name)
            .collect();
        CliError::Usage(format!(
            "unknown problem {name:?}; registered problems: {}",
            known.join(", ")
        ))
    })?;
    if spec.kind != kind {
        return Err(CliError::Usage(format!(
            "problem {name} cannot be used with {verb}"
        )));
    }
    Ok(spec)
}

fn check_m(m: usize, cap: usize) -> Result<usize, CliError> {
    if (4..=cap).contains(&m) {
        Ok(m)
    } else {
        Err(CliError::Usage(format!(
            "m must lie in [4, {cap}], got {m}"
        )))
    }
}

fn merged_params(
    spec: &ProblemSpec,
    alpha: Option<f64>,
    beta: Option<f64>,
    lambda: Option<f64>,
) -> ProblemParams {
    let mut params = spec.defaults;
    if let Some(a) = alpha {
        params.alpha = a;
    }
    if let Some(b) = beta {
        params.beta = b;
    }
    if let Some(l) = lambda {
        params.lambda = l;
    }
    params
}

fn write_profile_1d(
    dest: &mut dyn Write,
    numeric: &GridFunction1D,
    exact: Option<&GridFunction1D>,
) -> Result<(), CliError> {
    writeln!(dest, "x,u,u_exact,abs_error")?;
    let grid = numeric.grid();
    for (j, &u) in numeric.values().iter().enumerate() {
        let x = grid.node(j);
        match exact {
            Some(reference) => {
                let v = reference.values()[j];
                writeln!(dest, "{x:.10e},{u:.10e},{v:.10e},{:.10e}", (u - v).abs())?;
            }
            None => writeln!(dest, "{x:.10e},{u:.10e},,")?,
        }
    }
    Ok(())
}

fn run_steady(args: SteadyArgs, config: &Config) -> Result<(), CliError> {
    let name: String = config.require(args.problem, "problem")?;
    let spec = lookup(&name, ProblemKind::Steady1D, "steady")?;
    let alpha = Some(config.require(args.alpha, "alpha")?);
    let lambda = config.merge(args.lambda, "lambda")?;
    let params = merged_params(&spec, alpha, None, lambda);
    let m = check_m(config.require(args.m, "m")?, MAX_M_1D)?;
    let order = match config.require::<u32>(args.order, "order")? {
        4 => SchemeOrder::Four,
        5 => SchemeOrder::Five,
        other => {
            return Err(CliError::Usage(format!(
                "order must be 4 or 5, got {other}"
            )))
        }
    };
    let problem = spec.steady(params, m)?;
    let numeric = solve_steady(&problem, order)?;
    let reference = problem.exact_on_grid();
    let mut dest = output(&args.out)?;
    write_profile_1d(&mut *dest, &numeric, reference.as_ref())?;
    dest.flush()?;
    if let Some(reference) = &reference {
        let norms = norms_1d(&numeric, reference)?;
        eprintln!(
            "{} alpha={} lambda={} m={m}: l2_error={:.5e} linf_error={:.5e}",
            spec.name, params.alpha, params.lambda, norms.l2, norms.linf
        );
    }
    Ok(())
}

fn run_evolve1d(args: Evolve1dArgs, config: &Config) -> Result<(), CliError> {
    let name: String = config.require(args.problem, "problem")?;
    let spec = lookup(&name, ProblemKind::Evolve1D, "evolve1d")?;
    let alpha = Some(config.require(args.alpha, "alpha")?);
    let lambda = config.merge(args.lambda, "lambda")?;
    let params = merged_params(&spec, alpha, None, lambda);
    let m = check_m(config.require(args.m, "m")?, MAX_M_1D)?;
    let tau_rule = config.merge(args.tau_rule, "tau-rule")?;
    let nsteps = config.merge(args.nsteps, "nsteps")?;
    let n_steps = match (tau_rule.as_deref(), nsteps) {
        (Some("h2"), None) | (None, None) => m * m,
        (None, Some(n)) if n >= 1 => n,
        (None, Some(n)) => {
            return Err(CliError::Usage(format!(
                "nsteps must be at least 1, got {n}"
            )))
        }
        (Some(other), None) => {
            return Err(CliError::Usage(format!(
                "unknown tau rule {other:?}; only h2 is defined"
            )))
        }
        (Some(_), Some(_)) => {
            return Err(CliError::Usage(
                "tau-rule and nsteps cannot both be given".into(),
            ))
        }
    };
    let problem = spec.evolution_1d(params, m, n_steps)?;
    let numeric = cn_solve_1d(&problem)?;
    let reference = problem.exact.as_ref().map(|exact| {
        let t = problem.t_end;
        GridFunction1D::from_fn(problem.grid, |x| exact(x, t))
    });
    let mut dest = output(&args.out)?;
    write_profile_1d(&mut *dest, &numeric, reference.as_ref())?;
    dest.flush()?;
    if let Some(reference) = &reference {
        let norms = norms_1d(&numeric, reference)?;
        eprintln!(
            "{} alpha={} lambda={} m={m} nsteps={n_steps}: l2_error={:.5e} linf_error={:.5e}",
            spec.name, params.alpha, params.lambda, norms.l2, norms.linf
        );
    }
    Ok(())
}

fn run_evolve2d(args: Evolve2dArgs, config: &Config) -> Result<(), CliError> {
    let name: String = config.require(args.problem, "problem")?;
    let spec = lookup(&name, ProblemKind::Evolve2D, "evolve2d")?;
    let alpha = Some(config.require(args.alpha, "alpha")?);
    let beta = Some(config.require(args.beta, "beta")?);
    let params = merged_params(&spec, alpha, beta, None);
    let m = check_m(config.require(args.m, "m")?, MAX_M_2D)?;
    let variant_name: String = config.require(args.variant, "variant")?;
    let variant = match variant_name.to_ascii_lowercase().as_str() {
        "douglas" => AdiVariant::Douglas,
        "dyakonov" => AdiVariant::Dyakonov,
        other => {
            return Err(CliError::Usage(format!(
                "variant must be douglas or dyakonov, got {other:?}"
            )))
        }
    };
    let problem = spec.evolution_2d(params, m, m * m)?;
    let numeric = adi_solve_2d(&problem, variant)?;
    let reference = problem.exact.as_ref().map(|exact| {
        let t = problem.t_end;
        Field2D::from_fn(problem.grid_x.m(), problem.grid_y.m(), |ix, iy| {
            exact(problem.grid_x.node(ix), problem.grid_y.node(iy), t)
        })
    });
    let mut dest = output(&args.out)?;
    writeln!(dest, "x,y,u,u_exact,abs_error")?;
    for ix in 0..=problem.grid_x.m() {
        let x = problem.grid_x.node(ix);
        for iy in 0..=problem.grid_y.m() {
            let y = problem.grid_y.node(iy);
            let u = numeric.get(ix, iy);
            match &reference {
                Some(field) => {
                    let v = field.get(ix, iy);
                    writeln!(
                        dest,
                        "{x:.10e},{y:.10e},{u:.10e},{v:.10e},{:.10e}",
                        (u - v).abs()
                    )?;
                }
                None => writeln!(dest, "{x:.10e},{y:.10e},{u:.10e},,")?,
            }
        }
    }
    dest.flush()?;
    if let Some(field) = &reference {
        let norms = norms_2d(&numeric, field, problem.grid_x.h(), problem.grid_y.h())?;
        eprintln!(
            "{} {} alpha={} beta={} m={m}: l2_error={:.5e} linf_error={:.5e}",
            spec.name, variant_name, params.alpha, params.beta, norms.l2, norms.linf
        );
    }
    Ok(())
}

fn run_convergence_cmd(args: ConvergenceArgs, config: &Config) -> Result<(), CliError> {
    let table: String = config.require(args.table, "table")?;
    let alpha_filter = config.merge(args.alpha, "alpha")?;
    let extended = args.extended
        || config
            .merge::<bool>(None, "extended")?
            .unwrap_or(false);
    let mut studies =
        table_studies(&table, extended).map_err(|e| CliError::Usage(e.to_string()))?;
    if let Some(alpha) = alpha_filter {
        studies.retain(|s| (s.params.alpha - alpha).abs() < 1e-9);
        if studies.is_empty() {
            return Err(CliError::Usage(format!(
                "no study in table {table} has alpha = {alpha}"
            )));
        }
    }
    let mut dest = output(&args.out)?;
    let mut solver_failures = 0usize;
    for study in &studies {
        let spec = find_problem(study.problem).expect("presets reference registered problems");
        let report = run_convergence(
            &spec,
            study.params,
            study.scheme,
            &study.m_list,
            study.tau_rule,
        );
        writeln!(dest, "# {}", study.label)?;
        emit_csv(&report, &mut *dest)?;
        for (m, err) in &report.failures {
            solver_failures += 1;
            eprintln!("{}: m={m} failed: {err}", study.label);
        }
    }
    dest.flush()?;
    if solver_failures > 0 {
        return Err(CliError::Solver(SolverError::InvalidParameter(format!(
            "{solver_failures} refinement levels failed"
        ))));
    }
    Ok(())
}

fn run_scan(args: ScanArgs, config: &Config) -> Result<(), CliError> {
    let alpha_points = config.merge(args.alpha_points, "alpha-points")?.unwrap_or(101);
    let sigma_points = config.merge(args.sigma_points, "sigma-points")?.unwrap_or(721);
    let report = stability_scan(
        &linspace(1.0, 2.0, alpha_points),
        &linspace(0.0, std::f64::consts::PI, sigma_points),
        &default_ratios(),
    );
    let mut dest = output(&args.out)?;
    writeln!(dest, "alpha,sigma,f,max_amp")?;
    for row in &report.rows {
        writeln!(
            dest,
            "{:.6},{:.6},{:.5e},{:.5e}",
            row.alpha, row.sigma, row.f_value, row.max_amp
        )?;
    }
    dest.flush()?;
    eprintln!(
        "scanned {} points: max_f={:.3e} max_amp={:.12} violations={}",
        report.rows.len(),
        report.max_f,
        report.max_amp,
        report.violations.len()
    );
    Ok(())
}
