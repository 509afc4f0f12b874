use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use quancorr::circuit::Normalization;
use quancorr::document::StateDocument;
use quancorr_harness::{run, write_outputs, Experiment, ExperimentConfig, HarnessError, Result};

#[derive(Parser)]
#[command(name = "quancorr", version, about = "Quantum-correlation experiments on two-qubit NMR states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Witness and correlations of the prepared states
    Fig2(RunArgs),
    /// Deviation matrices and distance to the ideal states
    Fig3(RunArgs),
    /// Decoherence sweep of the quantum-correlated state
    Fig4(RunArgs),
    /// Full analysis of a state read from a JSON document
    Custom(RunArgs),
    /// Check a configuration (and state document) without running
    Validate(RunArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum NormArg {
    Raw,
    Thermal,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long, value_enum)]
    normalization: Option<NormArg>,
    /// Output directory
    #[arg(long, env = "QUANCORR_OUT")]
    out: Option<PathBuf>,
    /// JSON experiment configuration
    #[arg(long)]
    config: Option<PathBuf>,
    /// Simulate pulse sequences instead of ideal gates
    #[arg(long)]
    pulse_level: bool,
    /// Enable preparation noise
    #[arg(long)]
    noise: bool,
    /// Readout flip-angle error, relative (pulse level with noise only)
    #[arg(long)]
    flip_error: Option<f64>,
    /// State document for `custom`
    #[arg(long)]
    state: Option<PathBuf>,
}

impl RunArgs {
    fn config(&self, experiment: Option<Experiment>) -> Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::from_file(path)?,
            None => ExperimentConfig::default(),
        };
        if let Some(e) = experiment {
            cfg.experiment = e;
        }
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        if let Some(eps) = self.epsilon {
            cfg.params.epsilon = eps;
        }
        if let Some(n) = self.normalization {
            cfg.normalization = match n {
                NormArg::Raw => Normalization::Raw,
                NormArg::Thermal => Normalization::Thermal,
            };
        }
        if self.pulse_level {
            cfg.pulse_level = true;
        }
        if self.noise {
            cfg.noise.enabled = true;
        }
        if let Some(k) = self.flip_error {
            cfg.noise.flip_error = k;
        }
        if let Some(path) = &self.state {
            let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
            cfg.state = Some(StateDocument::from_json(&text)?);
        }
        if let Some(out) = &self.out {
            cfg.out = Some(out.clone());
        }
        Ok(cfg)
    }
}

fn execute(cli: Cli) -> Result<()> {
    let (args, experiment) = match &cli.command {
        Command::Fig2(a) => (a, Some(Experiment::Fig2)),
        Command::Fig3(a) => (a, Some(Experiment::Fig3)),
        Command::Fig4(a) => (a, Some(Experiment::Fig4)),
        Command::Custom(a) => (a, Some(Experiment::Custom)),
        Command::Validate(a) => (a, None),
    };
    let cfg = args.config(experiment)?;
    cfg.validate()?;
    if experiment.is_none() {
        println!("config ok ({})", cfg.experiment.as_str());
        return Ok(());
    }
    let report = run(&cfg)?;
    for (stage, elapsed) in &report.timing {
        eprintln!("{stage}: {:.3} s", elapsed.as_secs_f64());
    }
    let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("."));
    for path in write_outputs(&report, &dir)? {
        println!("{}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
