//! Thin command-line driver: parses arguments, loads the config, dispatches
//! to [`discspace::commands`], and writes the rows out.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use discspace::commands::{cmd_check, cmd_extremal, cmd_norm, cmd_opnorm};
use discspace::config::{load_config, ExperimentConfig};
use discspace::report::{write_rows, OutputFormat};

#[derive(Parser)]
#[command(
    name = "discspace",
    about = "Numerical laboratory for integral operators on analytic function spaces",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Experiment configuration file (JSON).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Override the config seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Norms of input functions in a selected space.
    Norm,
    /// Exact operator norm of S_g or T_g with witnessed lower bounds.
    Opnorm,
    /// Extremal convergence tables (bloch, bmoa) or the deficiency scan
    /// (dirichlet).
    Extremal,
    /// Identity and inequality suites; exits nonzero when any suite fails.
    Check,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }
    }
}

fn load(cli: &Cli, required: bool) -> Result<ExperimentConfig, discspace::DiscError> {
    let mut cfg = match (&cli.config, required) {
        (Some(path), _) => load_config(path)?,
        (None, false) => ExperimentConfig::default(),
        (None, true) => {
            return Err(discspace::DiscError::Config(
                "--config <file> is required for this command".into(),
            ))
        }
    };
    if let Some(seed) = cli.seed {
        cfg.seed = Some(seed);
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<bool, discspace::DiscError> {
    match cli.command {
        Command::Norm => {
            let cfg = load(cli, true)?;
            let rows = cmd_norm(&cfg)?;
            write_rows(&rows, cli.format.into(), cli.out.as_deref())?;
            Ok(true)
        }
        Command::Opnorm => {
            let cfg = load(cli, true)?;
            let rows = cmd_opnorm(&cfg)?;
            write_rows(&rows, cli.format.into(), cli.out.as_deref())?;
            Ok(true)
        }
        Command::Extremal => {
            let cfg = load(cli, true)?;
            let rows = cmd_extremal(&cfg)?;
            write_rows(&rows, cli.format.into(), cli.out.as_deref())?;
            Ok(true)
        }
        Command::Check => {
            let cfg = load(cli, false)?;
            let (rows, all_passed) = cmd_check(&cfg)?;
            for row in &rows {
                println!(
                    "{} {}: worst residual {:e} (tolerance {:e})",
                    if row.pass == Some(true) { "PASS" } else { "FAIL" },
                    row.quantity,
                    row.value,
                    row.tolerance.unwrap_or(f64::NAN),
                );
            }
            if let Some(out) = &cli.out {
                write_rows(&rows, cli.format.into(), Some(out))?;
            }
            Ok(all_passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
