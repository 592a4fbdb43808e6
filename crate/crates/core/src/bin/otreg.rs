use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use otreg::harness::output::{rate_csv, rate_svg};
use otreg::harness::{rate_experiment, simulate_dataset, RateConfig, ScenarioConfig};
use otreg::theory::{fano_bound, packing_family, FanoInputs, PackingConfig};
use otreg::{fit_with, RegressionDataset, Result};

#[derive(Parser)]
#[command(name = "otreg", version, about = "Optimal-transport regression between 1-D distributions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw a dataset from a scenario config.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Overrides the config's seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Fit the Fréchet least-squares map to a dataset.
    Fit {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// Do not clip fitted values to the domain.
        #[arg(long)]
        no_clamp: bool,
    },
    /// Monte Carlo risk curve over a grid of sample sizes.
    Rate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        plot: Option<PathBuf>,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// Greedy packing family of perturbed staircases on [0, 1].
    Packing {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        h: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0.25)]
        hamming_frac: f64,
    },
    /// Evaluate the Fano / Yang–Barron lower bound.
    Fano {
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        epsilon: f64,
        #[arg(long = "K")]
        bracketing: f64,
        #[arg(long = "c")]
        packing: f64,
        #[arg(long, default_value_t = 1.0)]
        kl_multiplier: f64,
    },
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simulate { config, out, seed } => {
            let mut cfg: ScenarioConfig = serde_json::from_str(&fs::read_to_string(config)?)?;
            if let Some(s) = seed {
                cfg.seed = s;
            }
            fs::write(out, simulate_dataset(&cfg)?.to_json()?)?;
        }
        Command::Fit { input, output, no_clamp } => {
            let data = RegressionDataset::from_json(&fs::read_to_string(input)?)?;
            fs::write(output, fit_with(&data, !no_clamp)?.to_json()?)?;
        }
        Command::Rate { config, out, plot, workers } => {
            let cfg: RateConfig = serde_json::from_str(&fs::read_to_string(config)?)?;
            let table = rate_experiment(&cfg, workers)?;
            fs::write(out, rate_csv(&table))?;
            if let Some(p) = plot {
                fs::write(p, rate_svg(&table))?;
            }
            if table.degenerate {
                eprintln!("warning: some mean risk is zero; slope is undefined");
            }
        }
        Command::Packing {
            k,
            h,
            seed,
            out,
            hamming_frac,
        } => {
            let mut cfg = PackingConfig::new(k, h, seed);
            cfg.target_hamming_frac = hamming_frac;
            fs::write(out, packing_family(&cfg)?.to_json()?)?;
        }
        Command::Fano {
            delta,
            epsilon,
            bracketing,
            packing,
            kl_multiplier,
        } => {
            let inp = FanoInputs::new(delta, epsilon, bracketing, packing).with_kl_multiplier(kl_multiplier);
            println!("{}", fano_bound(&inp)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("otreg: {e}");
            ExitCode::FAILURE
        }
    }
}
