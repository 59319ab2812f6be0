//! `polar2d`: angular, Mathieu, band-structure, critical-coupling and radial
//! tables as CSV or JSON.
//!
//! Exit codes: 0 success, 2 input or domain error, 3 unsupported regime,
//! 4 convergence or search failure, 1 failed `repro` check or I/O error.

mod commands;
mod config;
mod repro;
mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use polar2d_core::Error;

use crate::table::Format;

/// Environment variable naming the directory for relative `--output` paths.
pub const OUTPUT_DIR_ENV: &str = "POLAR2D_OUTPUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "polar2d", version, about = "Eigenvalue tables for an electron near a charged polar nanoparticle")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv", global = true)]
    format: Format,

    /// Output file (stdout when absent). Relative paths resolve against
    /// $POLAR2D_OUTPUT_DIR when it is set.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// key = value parameter file; command-line flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Periodic angular levels lambda_m(xi) with parity.
    #[command(allow_negative_numbers = true, args_override_self = true)]
    Angular(AngularArgs),
    /// Mathieu characteristic values a(nu, q).
    #[command(allow_negative_numbers = true, args_override_self = true)]
    Mathieu(MathieuArgs),
    /// Floquet bands lambda_m(nu) on a uniform grid over [0, 2].
    #[command(allow_negative_numbers = true, args_override_self = true)]
    Bands(BandsArgs),
    /// Couplings xi_m where lambda_m crosses zero.
    #[command(args_override_self = true)]
    Critical(CriticalArgs),
    /// Radial bound-state energies.
    #[command(allow_negative_numbers = true, args_override_self = true)]
    Radial(RadialArgs),
    /// Physical constants to dimensionless couplings.
    #[command(allow_negative_numbers = true, args_override_self = true)]
    Model(ModelArgs),
    /// Check the reference tables and print PASS/FAIL per table.
    Repro,
}

#[derive(Debug, Args)]
pub struct AngularArgs {
    #[arg(long)]
    pub xi: f64,
    #[arg(long, default_value_t = 7)]
    pub count: usize,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct MathieuArgs {
    #[arg(long)]
    pub q: f64,
    /// Comma-separated Floquet exponents.
    #[arg(long, value_delimiter = ',', required = true)]
    pub nu: Vec<f64>,
    #[arg(long, default_value_t = 5)]
    pub count: usize,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct BandsArgs {
    #[arg(long)]
    pub xi: f64,
    /// Grid points over [0, 2], endpoints included.
    #[arg(long, default_value_t = 201)]
    pub points: usize,
    #[arg(long, default_value_t = 6)]
    pub count: usize,
    /// Emit only the band-0/band-1 minimum gap and its location.
    #[arg(long)]
    pub gap: bool,
}

#[derive(Debug, Args)]
pub struct CriticalArgs {
    #[arg(long = "m-max")]
    pub m_max: usize,
    /// Final bracket width in xi.
    #[arg(long, default_value_t = polar2d_core::angular::CRITICAL_XI_TOL)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct RadialArgs {
    /// Angular eigenvalue; alternatively give --xi and --m.
    #[arg(long, conflicts_with_all = ["xi", "m"])]
    pub lambda: Option<f64>,
    #[arg(long, requires = "m")]
    pub xi: Option<f64>,
    #[arg(long, requires = "xi")]
    pub m: Option<usize>,
    /// Gaussian cap height.
    #[arg(long = "A", default_value_t = 0.0)]
    pub cap: f64,
    /// Inverse Gaussian width.
    #[arg(long = "a", default_value_t = 1.0)]
    pub inverse_width: f64,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long = "rho-min")]
    pub rho_min: Option<f64>,
    #[arg(long = "rho-max", default_value_t = polar2d_core::radial::DEFAULT_RHO_MAX)]
    pub rho_max: f64,
    #[arg(long, default_value_t = polar2d_core::radial::DEFAULT_POINTS)]
    pub points: usize,
    /// Geometric cell spacing (inner face defaults to 1e-3).
    #[arg(long = "log-grid")]
    pub log_grid: bool,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Particle charge number, Q = Z e.
    #[arg(long, default_value_t = 1)]
    pub z: u32,
    /// Dipole moment (C m).
    #[arg(long)]
    pub dipole: f64,
    /// Gaussian cap height (J).
    #[arg(long = "b", default_value_t = 0.0)]
    pub cap: f64,
    /// Gaussian width (m).
    #[arg(long)]
    pub sigma: f64,
    /// Effective mass (kg).
    #[arg(long = "mass", default_value_t = polar2d_core::model::ELECTRON_MASS)]
    pub mass: f64,
    #[arg(long = "hbar", default_value_t = polar2d_core::model::HBAR)]
    pub hbar: f64,
    #[arg(long = "eps0", default_value_t = polar2d_core::model::EPSILON_0)]
    pub eps0: f64,
    #[arg(long = "charge", default_value_t = polar2d_core::model::ELEMENTARY_CHARGE)]
    pub charge: f64,
    /// Dipole position x (m).
    #[arg(long = "r0x", default_value_t = 0.0)]
    pub r0x: f64,
    /// Dipole position y (m).
    #[arg(long = "r0y", default_value_t = 0.0)]
    pub r0y: f64,
}

const SUBCOMMANDS: &[&str] = &["angular", "mathieu", "bands", "critical", "radial", "model", "repro"];

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Input(_) | Error::Domain(_) | Error::Size { .. } => 2,
        Error::SelfAdjointExtensionRequired { .. } | Error::NonSeparable(_) => 3,
        Error::Convergence { .. } | Error::Search(_) => 4,
    }
}

fn open_output(path: Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    match path {
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
        Some(p) => {
            let resolved = match std::env::var_os(OUTPUT_DIR_ENV) {
                Some(dir) if p.is_relative() => PathBuf::from(dir).join(p),
                _ => p,
            };
            Ok(Box::new(BufWriter::new(File::create(resolved)?)))
        }
    }
}

fn main() -> ExitCode {
    let args = match config::expand(std::env::args().collect(), SUBCOMMANDS) {
        Ok(a) => a,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let cli = Cli::parse_from(args);

    if let Command::Repro = cli.command {
        return if repro::run() { ExitCode::SUCCESS } else { ExitCode::from(1) };
    }

    let table = match &cli.command {
        Command::Angular(a) => commands::angular(a),
        Command::Mathieu(a) => commands::mathieu(a),
        Command::Bands(a) => commands::bands(a),
        Command::Critical(a) => commands::critical(a),
        Command::Radial(a) => commands::radial(a),
        Command::Model(a) => commands::model(a),
        Command::Repro => unreachable!(),
    };
    let table = match table {
        Ok(t) => t,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(exit_code(&err));
        }
    };
    let written = open_output(cli.output).and_then(|mut out| {
        table.write(cli.format, &mut out)?;
        out.flush()
    });
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: cannot write output: {e}");
            ExitCode::from(1)
        }
    }
}
