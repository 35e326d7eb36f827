//! `bplab`: run experiments, draw samples, print image moments and run the
//! acceptance checks.
//!
//! Exit codes: 0 on success, 1 on runtime failures, 2 on config and usage
//! errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use bplab::experiment::{self, ExperimentConfig, Model};
use bplab::hermitian::{sample_p, SampleOptions};
use bplab::levy::TripleSpec;
use bplab::nonhermitian::sample_l;
use bplab::{spectra, verify, Error, RngStream};
use clap::{Parser, Subcommand};
use serde_json::json;

#[derive(Parser)]
#[command(name = "bplab", version, about = "Random matrix models for infinitely divisible laws")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment config (JSON, or TOML for `.toml` files).
    Run {
        config: PathBuf,
        /// Directory for stats.csv, histogram.csv and report.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw one matrix and print its spectrum as JSON.
    Sample {
        /// Triple spec as JSON, or `@path` to read it from a file.
        triple: String,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        stream: u64,
        #[arg(long, value_parser = ["hermitian", "nonhermitian"], default_value = "hermitian")]
        model: String,
        #[arg(long)]
        inner_cut: Option<f64>,
        /// Write sample.json here instead of printing.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the moments of the free image of a triple, one per line.
    Moments {
        triple: String,
        #[arg(long, default_value_t = 4)]
        kmax: usize,
    },
    /// Spectral moments of a sum of `dprime` random rank-one projections.
    Projection {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        dprime: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        kmax: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in acceptance checks (all, or the listed ids).
    Verify { ids: Vec<u32> },
}

fn read_triple(arg: &str) -> bplab::Result<TripleSpec> {
    match arg.strip_prefix('@') {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config { path: path.into(), message: format!("cannot read triple: {e}") })?;
            TripleSpec::parse(&text)
        }
        None => TripleSpec::parse(arg),
    }
}

fn emit(report: &experiment::Report, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(dir) => report.write_to(dir).with_context(|| format!("writing to {}", dir.display()))?,
        None => print!("{}", report.stats_csv()?),
    }
    Ok(())
}

fn run(cmd: Command) -> anyhow::Result<ExitCode> {
    match cmd {
        Command::Run { config, out } => {
            let cfg = ExperimentConfig::load(&config)?;
            emit(&experiment::run(&cfg)?, out.as_deref())?;
        }
        Command::Sample { triple, dim, seed, stream, model, inner_cut, out } => {
            let spec = read_triple(&triple)?;
            let t = spec.to_triple()?;
            let opts = SampleOptions { inner_cut };
            let mut rng = RngStream::new(seed, stream);
            let (model, key, values) = if model == "hermitian" {
                (Model::Hermitian, "eigenvalues", sample_p(&t, dim, &mut rng, &opts)?.eigenvalues()?)
            } else {
                (Model::Nonhermitian, "singular_values", sample_l(&t, dim, &mut rng, &opts)?.singular_values()?)
            };
            let doc = json!({
                "model": model,
                "triple": spec.to_json(),
                "dim": dim,
                "seed": seed,
                "stream": stream,
                key: values,
            });
            let text = serde_json::to_string_pretty(&doc)? + "\n";
            match out {
                Some(dir) => {
                    std::fs::create_dir_all(&dir)?;
                    std::fs::write(dir.join("sample.json"), text)?;
                }
                None => print!("{text}"),
            }
        }
        Command::Moments { triple, kmax } => {
            let t = read_triple(&triple)?.to_triple()?;
            for m in spectra::psi_image_moments(&t, kmax)?.values() {
                println!("{m}");
            }
        }
        Command::Projection { dim, dprime, trials, seed, kmax, out } => {
            emit(&experiment::projection_experiment(dim, dprime, trials, seed, kmax)?, out.as_deref())?;
        }
        Command::Verify { ids } => {
            let ids = if ids.is_empty() { (1..=12).collect() } else { ids };
            let mut bad = 0;
            for id in ids {
                let o = verify::criterion(id).with_context(|| format!("no check {id}"))?;
                println!("{o}");
                bad += usize::from(o.is_unexpected_failure());
            }
            if bad > 0 {
                eprintln!("{bad} check(s) failed");
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::Config { .. }) => ExitCode::from(2),
                _ => ExitCode::FAILURE,
            }
        }
    }
}
