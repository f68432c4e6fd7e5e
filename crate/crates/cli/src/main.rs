//! `lapgeo` command-line front end.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::RunConfig;

#[derive(Parser, Debug)]
#[command(name = "lapgeo", version, about = "Laplace maps of sampled curves and surfaces")]
struct Cli {
    #[command(flatten)]
    global: GlobalFlags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalFlags {
    /// Finite-difference order (2 or 4).
    #[arg(long, global = true, default_value_t = 4)]
    pub fd_order: u32,
    #[arg(long, global = true)]
    pub tol_const: Option<f64>,
    #[arg(long, global = true)]
    pub tol_fit: Option<f64>,
    #[arg(long, global = true)]
    pub tol_ode: Option<f64>,
    #[arg(long, global = true)]
    pub tol_amp: Option<f64>,
    #[arg(long, global = true)]
    pub tol_poly: Option<f64>,
    /// Samples excluded at each end of a bounded axis.
    #[arg(long, global = true)]
    pub trim: Option<usize>,
    /// Worker threads.
    #[arg(long, global = true, env = "LAPGEO_WORKERS")]
    pub workers: Option<usize>,
    /// Output path (CSV for `generate`, JSON otherwise). Defaults to stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a catalogue entry to CSV.
    Generate {
        name: String,
        /// `key=value`, repeatable or comma separated.
        #[arg(long = "param")]
        params: Vec<String>,
        /// Samples per axis, e.g. `64,128`.
        #[arg(long, value_delimiter = ',')]
        grid: Vec<usize>,
    },
    /// Metric, Laplace map, rank, classification, LG and image-fit sections for a CSV input.
    Analyze {
        input: PathBuf,
        /// Sections to include (default: all).
        #[arg(long = "report", value_delimiter = ',')]
        reports: Vec<commands::Section>,
    },
    /// Test one property; exit 0 when it holds, 1 when it fails.
    Check { property: commands::Property, input: PathBuf },
    /// Spectral decomposition of a closed curve or flat torus.
    Spectrum {
        input: PathBuf,
        /// Write the conjugate of a 2-type curve to this CSV.
        #[arg(long)]
        conjugate: Option<PathBuf>,
        /// Fit the minimal polynomial up to this degree.
        #[arg(long)]
        minpoly: Option<usize>,
    },
    /// Fit primitives to the Laplace image (or to the samples themselves).
    FitImage {
        input: PathBuf,
        #[arg(long)]
        points: bool,
    },
    /// List the generator catalogue.
    Catalogue,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let config = match RunConfig::from_flags(&cli.global, subcommand_name(&cli.command)) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(w) = config.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w).build_global() {
            log::warn!("could not size the worker pool: {e}");
        }
    }
    match commands::run(cli.command, &config) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn subcommand_name(c: &Command) -> &'static str {
    match c {
        Command::Generate { .. } => "generate",
        Command::Analyze { .. } => "analyze",
        Command::Check { .. } => "check",
        Command::Spectrum { .. } => "spectrum",
        Command::FitImage { .. } => "fit-image",
        Command::Catalogue => "catalogue",
    }
}
