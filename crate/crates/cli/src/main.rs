//! `haptic`: command-line front end for the haptic design pipeline.
//!
//! Structured results go to the files named on the command line as JSON, CSV
//! or OBJ; a short human summary goes to standard output.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use haptic_core::haptics::ControlMode;

/// Malformed input files, bad configuration and similar caller mistakes.
/// Reported with exit code 2; everything else exits with 1.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

#[derive(Debug, Parser)]
#[command(
    name = "haptic",
    version,
    about = "Calibration, cast scanning, spring analysis and haptic controller tools"
)]
pub struct Cli {
    /// Key-value configuration file (TOML syntax, flat keys).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides the `seed` key of the configuration.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Spread data-parallel work over all cores. Results are identical either way.
    #[arg(long, global = true)]
    parallel: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fit the reading-to-distance map from a `reading,distance_mm` CSV.
    Calibrate {
        samples: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Replay a scan script (JSON event list) and write the cast mesh as OBJ.
    Scan {
        script: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also write the two printable halves next to `--out`.
        #[arg(long)]
        halves: bool,
        /// Leave the seam between the last and first vertex open.
        #[arg(long)]
        open_seam: bool,
        /// JSON summary (rings, vertices, faces).
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Spring rate and hysteresis of a `t_s,x_mm,f_n` trace.
    EstimateSpring {
        trace: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Direction-dependent slopes and release drop of a trace.
    AnalyzeHysteresis {
        trace: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Train the inverse actuator network and write it as JSON.
    TrainController {
        #[arg(long)]
        out: PathBuf,
        /// JSON summary including held-out composite force errors.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Drive a trained network along the configured finger trajectory.
    Simulate {
        #[arg(long)]
        mlp: PathBuf,
        /// `open` or `closed`.
        #[arg(long)]
        mode: ControlMode,
        /// Virtual spring rate in N/mm; defaults to the `spring_k` key.
        #[arg(long)]
        k: Option<f64>,
        /// Force/displacement trace CSV.
        #[arg(long)]
        out: PathBuf,
        /// JSON summary: spring estimate, hysteresis and tracking error.
        #[arg(long)]
        summary: PathBuf,
    },
    /// Synthesize a noisy triangle-wave trace of a real spring.
    SynthTrace {
        /// Spring rate in N/mm.
        #[arg(long)]
        k: f64,
        #[arg(long, default_value_t = 3)]
        cycles: usize,
        #[arg(long, default_value_t = 10.0)]
        peak_mm: f64,
        #[arg(long, default_value_t = 0.05)]
        sigma_f: f64,
        #[arg(long, default_value_t = 0.1)]
        sigma_x: f64,
        #[arg(long, default_value_t = 100)]
        samples_per_stroke: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Turn an arm profile (JSON station list) into the scan script a user would produce.
    ScriptScan {
        profile: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.chain().any(|e| e.is::<InputError>()) {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
