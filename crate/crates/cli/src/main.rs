//! `polyrips`: Vietoris-Rips complexes of regular polygons from the
//! command line.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage or input error,
//! 3 result not certifiable, 4 point set not cyclic at the scale,
//! 5 resource limit.

mod commands;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use polyrips_core::Convention;

#[derive(Parser)]
#[command(name = "polyrips", version, about = "Vietoris-Rips complexes of regular polygons")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BarcodeFormat {
    Text,
    Json,
    Svg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Barcode of VR(P_n; r) for 0 < r < r_n.
    Barcode {
        #[arg(long)]
        n: usize,
        /// `lt` for diameter < r, `leq` for diameter <= r.
        #[arg(long, default_value = "lt")]
        convention: Convention,
        #[arg(long, value_enum, default_value_t = BarcodeFormat::Text)]
        format: BarcodeFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Winding fraction, orbits and homotopy type of a finite sample.
    Analyze {
        /// Sample file: `n=<int>` then one arc coordinate per line.
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        scale: f64,
        #[arg(long, default_value = "leq")]
        convention: Convention,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Star side-length thresholds, optionally with a monotonicity scan.
    Stars {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = polyrips_core::stars::DEFAULT_VALIDATION_GRID)]
        grid: usize,
        #[arg(long)]
        validate: bool,
    },
    /// Dense sample with a prescribed number of periodic orbits.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        /// Number of periodic orbits; defaults to the minimum n/(2l+1).
        #[arg(long)]
        z: Option<usize>,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        scale: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bounds on the Gromov-Hausdorff distance between P_n and the circle.
    Gh {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = polyrips_core::gh::DEFAULT_GRID)]
        grid: usize,
    },
    /// Compares engine, predictor and homology oracle on a dense sample.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        scale: f64,
        /// Euclidean density radius of the sample.
        #[arg(long)]
        density: f64,
        /// Betti numbers b_0 .. b_{max-dim - 1} are compared.
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Barcode { n, convention, format, out } => commands::barcode(n, convention, format, out.as_deref()),
        Command::Analyze { points, scale, convention, format } => {
            commands::analyze(&points, scale, convention, format)
        }
        Command::Stars { n, l, grid, validate } => commands::stars(n, l, grid, validate),
        Command::Sample { n, l, z, eps, scale, seed, out } => {
            commands::sample(n, l, z, eps, scale, seed, out.as_deref())
        }
        Command::Gh { n, grid } => commands::gh(n, grid),
        Command::Verify { n, l, scale, density, max_dim } => commands::verify(n, l, scale, density, max_dim),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
