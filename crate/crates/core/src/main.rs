use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use invariant_heat::driver::{linf_error, run, FourierIC, RunConfig};
use invariant_heat::harness::{
    self, convergence_study, emit, invariance_suite, linearity_test, render, OutputFormat, Report,
    DEFAULT_NS,
};
use invariant_heat::interpolation::ProjectionMethod;
use invariant_heat::mesh::GridKind;
use invariant_heat::schemes::SchemeKind;

#[derive(Parser)]
#[command(name = "invheat", version, about = "Invariant finite-difference schemes for the heat equation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Single run; prints the final state and its max-norm error.
    Run {
        #[command(flatten)]
        setup: Setup,
        #[arg(long = "N", default_value_t = 64)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Convergence study over a sequence of N.
    Converge {
        #[command(flatten)]
        setup: Setup,
        #[arg(long = "Ns", value_delimiter = ',', default_values_t = DEFAULT_NS)]
        ns: Vec<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Superposition test: sin(x-1)+2 and cos(x)+2 run separately and summed.
    Linearity {
        #[command(flatten)]
        setup: Setup,
        #[arg(long = "Ns", value_delimiter = ',', default_values_t = DEFAULT_NS)]
        ns: Vec<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Randomized invariance checks.
    Invariance {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct Setup {
    #[arg(long, default_value = "invariant_ftcs")]
    scheme: SchemeKind,
    #[arg(long, default_value = "invariantized", value_parser = parse_grid)]
    grid: GridKind,
    /// none, linear, quadratic, invariant_linear, invariant_quadratic, joint_invariant
    #[arg(long)]
    projection: Option<String>,
    #[arg(long, default_value_t = 0.25)]
    sigma: f64,
    #[arg(long = "t-final", default_value_t = 1.0)]
    t_final: f64,
    /// e.g. const:2+sin:k=1,shift=1
    #[arg(long, default_value = "const:2+sin:k=1,shift=1")]
    ic: FourierIC,
}

#[derive(Args)]
struct Output {
    #[arg(long, default_value = "csv")]
    format: OutputFormat,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_grid(s: &str) -> Result<GridKind, String> {
    match s {
        "stationary" => Ok(GridKind::Stationary),
        "invariantized" => Ok(GridKind::Invariantized),
        "dorodnitsyn" => Ok(GridKind::Dorodnitsyn),
        other => Err(format!("unknown grid {other:?}")),
    }
}

fn parse_projection(s: Option<&str>, default: Option<ProjectionMethod>) -> Result<Option<ProjectionMethod>, String> {
    match s {
        None => Ok(default),
        Some("none") => Ok(None),
        Some(other) => other.parse().map(Some).map_err(|e: invariant_heat::Error| e.to_string()),
    }
}

impl Setup {
    fn config(&self, n: usize, default_projection: Option<ProjectionMethod>) -> Result<RunConfig, String> {
        Ok(RunConfig {
            n,
            scheme: self.scheme,
            grid: self.grid,
            projection: parse_projection(self.projection.as_deref(), default_projection)?,
            sigma: self.sigma,
            t_final: self.t_final,
            ic: self.ic.clone(),
        })
    }
}

fn write<R: Report>(report: &R, out: &Output) -> Result<(), String> {
    match &out.out {
        Some(path) => emit(report, out.format, path).map_err(|e| e.to_string()),
        None => {
            print!("{}", render(report, out.format));
            Ok(())
        }
    }
}

fn summarize(report: &harness::ConvergenceReport) {
    match report.fitted_slope {
        Some(s) => eprintln!(
            "fitted slope {s:.4} over N = {:?}, window [{}, {}]: {}",
            report.fit_ns,
            report.order_window.0,
            report.order_window.1,
            if report.slope_within_window { "ok" } else { "outside" }
        ),
        None => eprintln!("fitted slope unavailable"),
    }
}

fn convergence_exit(report: &harness::ConvergenceReport) -> ExitCode {
    summarize(report);
    if report.any_failure() {
        ExitCode::from(1)
    } else if !report.slope_within_window {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}

fn execute(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Run { setup, n, out } => {
            let cfg = setup.config(n, None)?;
            let result = run(&cfg).map_err(|e| e.to_string())?;
            let error = linf_error(&result, &cfg.ic);
            let state = &result.final_state;
            match out.format {
                OutputFormat::Csv => {
                    let mut s = String::from("x,u,exact\n");
                    for (x, u) in state.x.iter().zip(&state.u) {
                        let exact = invariant_heat::exact_solution(&cfg.ic, *x, state.tau);
                        s.push_str(&format!(
                            "{},{},{}\n",
                            harness::format_number(*x),
                            harness::format_number(*u),
                            harness::format_number(exact)
                        ));
                    }
                    match &out.out {
                        Some(p) => std::fs::write(p, s).map_err(|e| format!("{}: {e}", p.display()))?,
                        None => print!("{s}"),
                    }
                }
                OutputFormat::Json => {
                    let v = serde_json::json!({
                        "version": harness::VERSION,
                        "config": cfg,
                        "result": result,
                        "linf_error": error,
                    });
                    let text = format!("{}\n", serde_json::to_string(&v).map_err(|e| e.to_string())?);
                    match &out.out {
                        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display()))?,
                        None => print!("{text}"),
                    }
                }
            }
            eprintln!("steps {} dtau {:e} linf_error {:e}", result.steps, result.dtau, error);
            if let Some(f) = &result.failure {
                eprintln!("run aborted at step {}: {}", f.step, f.message);
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Converge { setup, ns, out } => {
            let cfg = setup.config(ns.first().copied().unwrap_or(4), None)?;
            let report = convergence_study(&cfg, &ns).map_err(|e| e.to_string())?;
            write(&report, &out)?;
            Ok(convergence_exit(&report))
        }
        Command::Linearity { setup, ns, out } => {
            let cfg = setup.config(ns.first().copied().unwrap_or(4), Some(ProjectionMethod::InvariantQuadratic))?;
            let report = linearity_test(&ns, &cfg).map_err(|e| e.to_string())?;
            write(&report, &out)?;
            Ok(convergence_exit(&report))
        }
        Command::Invariance { trials, seed, out } => {
            let report = invariance_suite(trials, seed).map_err(|e| e.to_string())?;
            write(&report, &out)?;
            for c in &report.categories {
                eprintln!(
                    "{:<24} max {:.3e} tol {:.1e} {}",
                    c.name,
                    c.max_violation,
                    c.tolerance,
                    if c.passed { "pass" } else { "FAIL" }
                );
            }
            Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
    }
}

fn main() -> ExitCode {
    // exit code 2 is reserved for tolerance failures, so usage errors get 1
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
