//! Thin command-line front end: parses flags, dispatches to the library's
//! study commands, writes the report, and maps outcomes to exit codes
//! (0 success, 1 inequality violation, 2 numerical non-convergence,
//! 3 invalid config).

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use quadnet::cli::{
    cmd_bessel_verify, cmd_bounds, cmd_bv, cmd_converge, cmd_counterexample, cmd_gamma_scan,
    cmd_varnorm, Report, RunConfig,
};
use quadnet::error::{Error, Result};

#[derive(Parser)]
#[command(name = "quadnet", version, about = "Integral representations, quadrature networks, and norm-bound certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Flat key=value config file; command-line flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output path (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Tolerance override for the command's guaranteed checks.
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Grid override, e.g. "1,2,1.5;2,2,2.5" for Bessel (d,q,r) rows.
    #[arg(long, global = true)]
    grid: Option<String>,

    /// Network-size schedule, e.g. "16,32,64".
    #[arg(long = "n-schedule", global = true)]
    n_schedule: Option<String>,

    /// Seed for randomized checks.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output format: csv (default) or json.
    #[arg(long, global = true)]
    format: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Pointwise identity of the Gaussian representation on a (d,q,r,s) grid.
    BesselVerify,
    /// Gamma-function inequality scan along d = 2q(s-a).
    GammaScan,
    /// Norm-bound certificates for the bundled representations.
    Bounds,
    /// Quadrature-network convergence study.
    Converge,
    /// Bounded-variation suite: LP norms, staircases, total variation.
    Bv,
    /// Pointwise-vs-norm counterexample table.
    Counterexample,
    /// Variation-norm LP studies.
    Varnorm,
}

fn build_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    if let Some(t) = cli.tol {
        cfg.tol = Some(t);
    }
    if let Some(o) = &cli.out {
        cfg.out = Some(o.clone());
    }
    if let Some(g) = &cli.grid {
        cfg.grid = Some(g.clone());
    }
    if let Some(ns) = &cli.n_schedule {
        cfg.set("n_schedule", ns)?;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(f) = &cli.format {
        cfg.format = f.parse()?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn write_report(report: &Report, cfg: &RunConfig) -> Result<()> {
    let rendered = report.render(cfg.format);
    match &cfg.out {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| Error::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<i32> {
    let cfg = build_config(cli)?;
    let report = match cli.command {
        Command::BesselVerify => cmd_bessel_verify(&cfg)?,
        Command::GammaScan => cmd_gamma_scan(&cfg)?,
        Command::Bounds => cmd_bounds(&cfg)?,
        Command::Converge => cmd_converge(&cfg)?,
        Command::Bv => cmd_bv(&cfg)?,
        Command::Counterexample => cmd_counterexample(&cfg)?,
        Command::Varnorm => cmd_varnorm(&cfg)?,
    };
    write_report(&report, &cfg)?;
    Ok(if report.violations > 0 { 1 } else { 0 })
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
