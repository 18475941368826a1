//! `casimir`: lateral Casimir forces for corrugated surfaces from the
//! command line. See the repository README for the configuration format,
//! report schema and exit-code contract.

mod commands;
mod config;
mod exit;
mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use config::RunConfig;
use exit::{CliError, CliResult};
use report::{Format, Units};

#[derive(Parser)]
#[command(
    name = "casimir",
    version,
    about = "Lateral Casimir force between corrugated metal surfaces (proximity-force approximation over zero-temperature Lifshitz theory)"
)]
struct Cli {
    /// Output format; JSON is the machine contract.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Display units for text output (JSON/CSV are always SI).
    #[arg(long, global = true, value_enum, default_value = "si")]
    units: Units,

    /// Omit the timestamp so identical inputs give byte-identical output.
    #[arg(long, global = true)]
    no_timestamp: bool,

    /// Also write the rendered output to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Two-plate energy, pressure and separation derivatives, optionally
    /// over a log-spaced separation sweep.
    Pressure {
        #[arg(long)]
        config: PathBuf,
        /// Sweep lower bound (m); requires --sweep-max.
        #[arg(long)]
        sweep_min: Option<f64>,
        /// Sweep upper bound (m); requires --sweep-min.
        #[arg(long)]
        sweep_max: Option<f64>,
        /// Number of log-spaced sweep points.
        #[arg(long, default_value_t = 20)]
        sweep_points: usize,
    },
    /// Full lateral-force comparison: linear and complete PFA amplitudes,
    /// validity diagnostics, external deviation data and p-values.
    Lateral {
        #[arg(long)]
        config: PathBuf,
        /// Calibrate the sphere radius so the linear amplitude equals this
        /// target (N); used when geometry.R_m is absent.
        #[arg(long)]
        calibrate_target: Option<f64>,
    },
    /// kL-collapse spread of tabulated deviation curves, with optional
    /// fixed-kL rescaling of every point.
    Collapse {
        /// Rescale factor s: (k, L, rho) -> (k/s, s*L, rho).
        #[arg(long)]
        rescale: Option<f64>,
        /// Deviation CSV files (header: k_rad_per_m,L_m,rho).
        #[arg(required = true)]
        csv: Vec<PathBuf>,
    },
    /// Sphere radius for which the linear amplitude equals the target.
    CalibrateRadius {
        #[arg(long)]
        config: PathBuf,
        /// Target linear amplitude (N).
        #[arg(long)]
        target: f64,
    },
    /// Recompute a saved JSON report from its embedded configuration and
    /// check that every value reproduces within its error estimate.
    Verify {
        #[arg(long)]
        report: PathBuf,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(rendered) => {
            emit(&cli, &rendered);
        }
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(e.code());
        }
    }
}

fn emit(cli: &Cli, rendered: &str) {
    print!("{rendered}");
    std::io::stdout().flush().ok();
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, rendered) {
            eprintln!("error: cannot write {}: {e}", path.display());
            std::process::exit(2);
        }
    }
}

fn run(cli: &Cli) -> CliResult<String> {
    match &cli.command {
        Command::Pressure {
            config,
            sweep_min,
            sweep_max,
            sweep_points,
        } => {
            let config = RunConfig::load(config)?;
            let geom = config.geometry().map_err(CliError::from)?;
            let grid =
                commands::sweep_grid(geom.separation(), *sweep_min, *sweep_max, *sweep_points)?;
            let report = commands::cmd_pressure(&config, &grid, cli.no_timestamp)?;
            Ok(match cli.format {
                Format::Json => report::json_string(&report),
                Format::Csv => report.render_csv(),
                Format::Text => report.render_text(cli.units),
            })
        }
        Command::Lateral {
            config,
            calibrate_target,
        } => {
            let config = RunConfig::load(config)?;
            let report =
                commands::cmd_lateral(&config, *calibrate_target, None, cli.no_timestamp)?;
            Ok(match cli.format {
                Format::Json => report::json_string(&report),
                Format::Csv => report.render_csv(),
                Format::Text => report.render_text(cli.units),
            })
        }
        Command::Collapse { rescale, csv } => {
            let report = commands::cmd_collapse(csv, *rescale, cli.no_timestamp)?;
            Ok(match cli.format {
                Format::Json => report::json_string(&report),
                Format::Csv => report.render_csv(),
                Format::Text => report.render_text(),
            })
        }
        Command::CalibrateRadius { config, target } => {
            let config = RunConfig::load(config)?;
            let report = commands::cmd_calibrate_radius(&config, *target, cli.no_timestamp)?;
            Ok(match cli.format {
                Format::Json => report::json_string(&report),
                Format::Csv => report.render_csv(),
                Format::Text => report.render_text(cli.units),
            })
        }
        Command::Verify { report } => commands::cmd_verify(report),
    }
}
