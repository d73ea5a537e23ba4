use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use lp_projection::bounds::Constants;
use lp_projection::harness::{config, emit_report, run_experiment, write_report, Command, ExperimentConfig, Format};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Cmd {
    VerifyDuality,
    VerifyProjection,
    ModuliScan,
    ExponentStudy,
    AlternatingDemo,
    All,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::VerifyDuality => Command::VerifyDuality,
            Cmd::VerifyProjection => Command::VerifyProjection,
            Cmd::ModuliScan => Command::ModuliScan,
            Cmd::ExponentStudy => Command::ExponentStudy,
            Cmd::AlternatingDemo => Command::AlternatingDemo,
            Cmd::All => Command::All,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Fmt {
    Csv,
    Json,
}

/// Numerical verification of metric-projection and duality-mapping estimates in l^p.
#[derive(Debug, Parser)]
#[command(version, about)]
struct Cli {
    #[arg(value_enum)]
    command: Cmd,
    /// Exponents, comma separated.
    #[arg(long = "p", value_delimiter = ',', default_values_t = config::DEFAULT_P_GRID)]
    p: Vec<f64>,
    #[arg(long, default_value_t = 5)]
    dim: usize,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 12345)]
    seed: u64,
    /// Constant of the Figiel-type inequality.
    #[arg(long = "L", default_value_t = lp_projection::bounds::record::DEFAULT_FIGIEL_L)]
    figiel_l: f64,
    /// Constant of the Zarantonello-type estimate.
    #[arg(long = "N", default_value_t = lp_projection::bounds::record::DEFAULT_N_ZR)]
    n_zr: f64,
    /// Projection solver tolerance.
    #[arg(long, default_value_t = config::DEFAULT_TOL)]
    tol: f64,
    /// Radius of the l^p ball points are sampled from.
    #[arg(long, default_value_t = config::DEFAULT_RADIUS)]
    radius: f64,
    /// JSON file with a convex set or an array of sets.
    #[arg(long)]
    set_file: Option<PathBuf>,
    /// Report path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Fmt,
    /// Grid points per axis of the brute-force oracle.
    #[arg(long, default_value_t = config::DEFAULT_ORACLE_RESOLUTION)]
    oracle_resolution: usize,
    /// Oracle comparisons per exponent (dimension at most 3).
    #[arg(long, default_value_t = config::DEFAULT_ORACLE_SAMPLES)]
    oracle_samples: usize,
    /// Instances per exponent with a sampled certificate.
    #[arg(long, default_value_t = config::DEFAULT_CERTIFICATE_INSTANCES)]
    certificate_instances: usize,
    /// Feasible points per sampled certificate.
    #[arg(long, default_value_t = config::DEFAULT_CERTIFICATE_SAMPLES)]
    certificate_samples: usize,
}

fn build_config(cli: Cli) -> lp_projection::Result<ExperimentConfig> {
    let sets = match &cli.set_file {
        Some(path) => ExperimentConfig::load_sets(path)?,
        None => Vec::new(),
    };
    Ok(ExperimentConfig {
        command: cli.command.into(),
        p_grid: cli.p,
        dim: cli.dim,
        samples: cli.samples,
        seed: cli.seed,
        constants: Constants {
            figiel_l: cli.figiel_l,
            n_zr: cli.n_zr,
        },
        tol: cli.tol,
        radius: cli.radius,
        sets,
        oracle_resolution: cli.oracle_resolution,
        oracle_samples: cli.oracle_samples,
        certificate_instances: cli.certificate_instances,
        certificate_samples: cli.certificate_samples,
        out: cli.out,
        format: match cli.format {
            Fmt::Csv => Format::Csv,
            Fmt::Json => Format::Json,
        },
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = build_config(cli).and_then(|cfg| {
        let out = run_experiment(&cfg)?;
        match &cfg.out {
            Some(path) => emit_report(&out.rows, path, cfg.format)?,
            None => write_report(&out.rows, std::io::stdout().lock(), cfg.format)?,
        }
        Ok(out.summary)
    });
    match result {
        Ok(summary) => {
            eprintln!("{summary}");
            if summary.asserted_failures == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
