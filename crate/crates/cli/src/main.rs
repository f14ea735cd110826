//! Command-line front end: metric classification, geodesic comparison runs,
//! period-shift sweeps, and foliation construction/verification.

// `!(x > 0.0)` validation guards reject NaN as well; keep them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Numerical(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Numerical(_) | CliError::Io(_) => 2,
        }
    }

    pub fn validation(msg: impl Into<String>) -> Self {
        CliError::Validation(msg.into())
    }
}

impl From<su2geo::Error> for CliError {
    fn from(e: su2geo::Error) -> Self {
        match e {
            su2geo::Error::InvalidParameter(_) | su2geo::Error::OutsideChart => {
                CliError::Validation(e.to_string())
            }
            su2geo::Error::NonFinite(_) | su2geo::Error::SelfCheck(_) => {
                CliError::Numerical(e.to_string())
            }
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "su2geo",
    version,
    about = "Left-invariant metrics on SU(2): classification, Berger geodesics, and metric foliations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the metric with structure constants (x, y, z) and print its
    /// Christoffel table. Inputs are exact (decimals or fractions).
    Classify(ClassifyArgs),
    /// Compare the closed-form Berger geodesic against the integrator and
    /// verify the period-shift law; optionally export the trajectory.
    Geodesic(GeodesicArgs),
    /// Build, check, or certify one-dimensional foliations.
    Foliation(FoliationArgs),
    /// Period-shift residuals over an (eps, theta) grid.
    Sweep(SweepArgs),
}

#[derive(Args)]
pub struct ClassifyArgs {
    pub x: String,
    pub y: String,
    pub z: String,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Output file; defaults to stdout. Relative paths resolve against
    /// $SU2GEO_OUT_DIR when it is set.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct GeodesicArgs {
    /// Berger parameter (> 0, != 1).
    #[arg(long)]
    pub eps: f64,
    /// Angle between the initial velocity and the Hopf direction, in [0, pi];
    /// the endpoints delegate to the Hopf-orbit mode.
    #[arg(long)]
    pub theta: f64,
    /// Integration horizon.
    #[arg(long, default_value_t = 4.0 * std::f64::consts::PI)]
    pub t_end: f64,
    /// Integrator step.
    #[arg(long, default_value_t = 1e-3)]
    pub step: f64,
    /// Number of trajectory rows to export and compare.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Append the Hopf projection of each point as three extra CSV columns.
    #[arg(long)]
    pub hopf: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Trajectory CSV destination; the report always goes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct FoliationArgs {
    #[command(subcommand)]
    pub mode: FoliationMode,
}

#[derive(Subcommand)]
pub enum FoliationMode {
    /// Construct the inhomogeneous metric foliation of a metric with
    /// distinct structure constants x > y > z > 0 (exact inputs).
    Build {
        x: String,
        y: String,
        z: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Totally-geodesic residuals of a named field.
    Check(FieldRunArgs),
    /// Homogeneity certificate of a named field.
    Certify(FieldRunArgs),
}

#[derive(Args)]
pub struct FieldRunArgs {
    /// Field name: y1 | y2 | y3 | theorem1 | killing:v1,v2,v3,c
    #[arg(long)]
    pub field: String,
    /// Berger parameter; required for y1/y2/y3/killing fields.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Structure constants, required for the theorem1 field (exact inputs).
    #[arg(value_name = "TRIPLE", num_args = 0..=3)]
    pub triple: Vec<String>,
    #[arg(long, default_value_t = 30)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 0.2)]
    pub eps_min: f64,
    #[arg(long, default_value_t = 5.0)]
    pub eps_max: f64,
    #[arg(long, default_value_t = 10)]
    pub eps_count: usize,
    #[arg(long, default_value_t = 10)]
    pub theta_count: usize,
    /// Sample times per grid cell.
    #[arg(long, default_value_t = 100)]
    pub times: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let kind = e.kind();
            if kind == ErrorKind::DisplayHelp || kind == ErrorKind::DisplayVersion {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            return ExitCode::from(1);
        }
    };

    if let Err(e) = su2geo::group::self_check() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }

    let result = match cli.command {
        Command::Classify(args) => commands::classify(args),
        Command::Geodesic(args) => commands::geodesic(args),
        Command::Foliation(args) => match args.mode {
            FoliationMode::Build { x, y, z, format, out } => {
                commands::foliation_build(&x, &y, &z, format, out)
            }
            FoliationMode::Check(args) => commands::foliation_field_run(args, false),
            FoliationMode::Certify(args) => commands::foliation_field_run(args, true),
        },
        Command::Sweep(args) => commands::sweep(args),
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
