//! Command-line driver: computes travel-time tables and figure data as CSV.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qtt_core::atomic::Atom;
use qtt_core::report::{self, validate, ExperimentConfig, ExperimentalDataset, Mode, ReportError};

#[derive(Parser)]
#[command(
    name = "qtt",
    about = "Quantum travel times: rectangular-barrier scattering and strong-field tunnel ionization (He, Ar, Kr)",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// JSON configuration file; every key optional.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory for CSV files.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated laser intensities in W/cm².
    #[arg(long, value_delimiter = ',')]
    intensities: Option<Vec<f64>>,
    /// Comma-separated atoms (He, Ar, Kr).
    #[arg(long, value_delimiter = ',')]
    atoms: Option<Vec<Atom>>,
    /// Override the tunnel-exit point η used by the overlay.
    #[arg(long)]
    exit_eta: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Rectangular-barrier travel-time grid over (V0, width).
    Rect {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Atomic tunneling times vs intensity; optional trajectories and
    /// experimental overlay.
    Atom {
        #[command(flatten)]
        common: CommonArgs,
        /// Also emit cumulative travel-time trajectories.
        #[arg(long)]
        trajectories: bool,
        /// Measured-times CSV (intensity_Wcm2,time_as,error_as,instrument)
        /// to overlay against the model.
        #[arg(long)]
        experiment: Option<PathBuf>,
    },
    /// Turning points, barrier phase and tunneling time per (atom, intensity).
    Tables {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the numeric cross-check suite and print pass/fail lines.
    Validate,
}

fn build_config(common: &CommonArgs) -> Result<ExperimentConfig, ReportError> {
    let mut config = match &common.config {
        Some(path) => ExperimentConfig::from_json_file(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(out) = &common.out {
        config.out_dir = out.clone();
    }
    if let Some(intensities) = &common.intensities {
        config.intensities_wcm2 = intensities.clone();
        config.trajectory_intensities_wcm2 = intensities.clone();
    }
    if let Some(atoms) = &common.atoms {
        config.atoms = atoms.clone();
    }
    if let Some(exit_eta) = common.exit_eta {
        config.exit_eta = Some(exit_eta);
    }
    Ok(config)
}

fn run(cli: Cli) -> Result<ExitCode, ReportError> {
    match cli.command {
        Command::Rect { common } => {
            let config = build_config(&common)?;
            for warning in config.validate(Mode::Rect)? {
                eprintln!("warning: {warning}");
            }
            let table = report::run_rect(&config)?;
            let path = table.write_csv(&config.out_dir)?;
            println!("wrote {}", path.display());
        }
        Command::Tables { common } => {
            let config = build_config(&common)?;
            for warning in config.validate(Mode::Tables)? {
                eprintln!("warning: {warning}");
            }
            let table = report::run_tables(&config)?;
            let path = table.write_csv(&config.out_dir)?;
            println!("wrote {}", path.display());
        }
        Command::Atom {
            common,
            trajectories,
            experiment,
        } => {
            let mut config = build_config(&common)?;
            config.trajectories = trajectories;
            if let Some(path) = &experiment {
                config.experiment_csv = Some(path.clone());
            }
            for warning in config.validate(Mode::Atom)? {
                eprintln!("warning: {warning}");
            }
            let table = report::run_time_vs_intensity(&config)?;
            let path = table.write_csv(&config.out_dir)?;
            println!("wrote {}", path.display());
            if config.trajectories {
                for table in report::run_trajectories(&config)? {
                    let path = table.write_csv(&config.out_dir)?;
                    println!("wrote {}", path.display());
                }
            }
            if let Some(csv_path) = &config.experiment_csv {
                let dataset = ExperimentalDataset::from_file(csv_path)?;
                let table = report::overlay_experiment(&config, &dataset)?;
                let path = table.write_csv(&config.out_dir)?;
                println!("wrote {}", path.display());
            }
        }
        Command::Validate => {
            let checks = validate::run_all();
            let all_ok = validate::print_report(&checks);
            if !all_ok {
                let failed: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
                eprintln!("{}", serde_json::to_string(&failed).unwrap());
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            let summary = serde_json::json!({ "error": err.to_string() });
            eprintln!("{summary}");
            ExitCode::FAILURE
        }
    }
}
