//! `tlvac`: sweeps of transmission-line dispersion energies written as CSV or JSON.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use log::info;

use commands::{Command, Failure};
use config::{ConfigError, Grid, Params, Spacing};
use output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "tlvac",
    version,
    about = "Dispersion energies between dipoles on a transmission line"
)]
struct Cli {
    command: Command,

    /// Flat `key = value` file; `#` starts a comment.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,

    #[arg(long, allow_negative_numbers = true)]
    zmin: Option<f64>,

    #[arg(long, allow_negative_numbers = true)]
    zmax: Option<f64>,

    #[arg(long)]
    points: Option<usize>,

    #[arg(long, value_parser = ["log", "linear"])]
    spacing: Option<String>,

    /// Parameter overrides, applied after the config file.
    #[arg(value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

#[derive(Debug, thiserror::Error)]
enum AppError {
    #[error(transparent)]
    Failure(#[from] Failure),
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
}

impl From<ConfigError> for AppError {
    fn from(e: ConfigError) -> Self {
        AppError::Failure(Failure::Config(e))
    }
}

fn parse_spacing(raw: &str) -> Result<Spacing, ConfigError> {
    match raw.trim() {
        "log" => Ok(Spacing::Log),
        "linear" => Ok(Spacing::Linear),
        other => Err(ConfigError::Grid(format!(
            "spacing must be log or linear, got `{other}`"
        ))),
    }
}

fn parse_grid_value<T: std::str::FromStr>(key: &str, raw: &str) -> Result<T, ConfigError> {
    raw.trim()
        .parse()
        .map_err(|_| ConfigError::Grid(format!("bad value `{raw}` for {key}")))
}

/// Applies defaults, then the file, then `key=value` overrides, then flags.
fn resolve(cli: &Cli) -> Result<(Params, Grid), ConfigError> {
    let (defaults, mut grid) = cli.command.defaults();
    let mut assignments = match &cli.config {
        Some(path) => config::read_file(path)?,
        None => Vec::new(),
    };
    for arg in &cli.overrides {
        assignments.push(config::parse_override(arg)?);
    }

    let mut rest = Vec::new();
    for (k, v) in assignments {
        match k.as_str() {
            "zmin" => grid.z_min = parse_grid_value(&k, &v)?,
            "zmax" => grid.z_max = parse_grid_value(&k, &v)?,
            "points" => grid.points = parse_grid_value(&k, &v)?,
            "spacing" => grid.spacing = parse_spacing(&v)?,
            _ => rest.push((k, v)),
        }
    }
    if let Some(v) = cli.zmin {
        grid.z_min = v;
    }
    if let Some(v) = cli.zmax {
        grid.z_max = v;
    }
    if let Some(v) = cli.points {
        grid.points = v;
    }
    if let Some(v) = &cli.spacing {
        grid.spacing = parse_spacing(v)?;
    }
    grid.validate()?;
    let params = Params::resolve(cli.command.name(), defaults, &rest)?;
    Ok((params, grid))
}

fn run(cli: &Cli) -> Result<(), AppError> {
    let (params, grid) = resolve(cli)?;
    let nodes = grid.nodes();
    info!(
        "{}: {} points on [{}, {}]",
        cli.command.name(),
        nodes.len(),
        grid.z_min,
        grid.z_max
    );
    let rows = commands::run(cli.command, &params, &nodes)?;
    let text = match cli.format {
        Format::Csv => output::csv(&rows),
        Format::Json => output::json(cli.command.name(), &params, &grid, &rows),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|source| AppError::Write {
            path: path.display().to_string(),
            source,
        })?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                AppError::Failure(Failure::Numerical { .. }) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
