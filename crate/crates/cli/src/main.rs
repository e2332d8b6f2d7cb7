//! `entrolab` command line: run configured experiments to CSV/JSON
//! reports, or encode a single sequence with the optimal one-to-one
//! code.
//!
//! Exit status: 0 when every verdict boolean in the experiment summary
//! is true, 1 when a bound check fails, 2 on usage, config, or capacity
//! errors.

mod config;
mod experiments;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{ConfigFile, OutputFormat, Overrides};
use entrolab::{optimal_one_to_one, CodeFamily, IidSource};

#[derive(Parser)]
#[command(name = "entrolab", version, about = "Entropy lower-bound experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment from a config file and write report files
    Run(RunArgs),
    /// Encode one sequence with the optimal one-to-one code
    Encode(EncodeArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Experiment configuration (TOML)
    #[arg(long)]
    config: PathBuf,
    /// Master seed, overriding the config
    #[arg(long)]
    seed: Option<u64>,
    /// Worker thread count; changes scheduling, never output bytes
    #[arg(long)]
    workers: Option<usize>,
    /// Output directory, overriding the config
    #[arg(long)]
    out: Option<PathBuf>,
    /// Which report bodies to write
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
}

#[derive(Args)]
struct EncodeArgs {
    /// Comma-separated symbol probabilities, e.g. 0.8,0.2
    #[arg(long)]
    probs: String,
    /// Symbol sequence: digits ("0110") or comma-separated ("0,1,1,0")
    #[arg(long)]
    sequence: String,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run(args) => match run(args) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(1),
            Err(message) => {
                eprintln!("error: {message}");
                ExitCode::from(2)
            }
        },
        Command::Encode(args) => match encode(args) {
            Ok(()) => ExitCode::SUCCESS,
            Err(message) => {
                eprintln!("error: {message}");
                ExitCode::from(2)
            }
        },
    }
}

fn run(args: RunArgs) -> Result<bool, String> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| format!("cannot read {}: {e}", args.config.display()))?;
    // toml errors carry line/column positions
    let file: ConfigFile =
        toml::from_str(&text).map_err(|e| format!("{}: {e}", args.config.display()))?;
    let cfg = config::resolve(
        file,
        Overrides {
            seed: args.seed,
            out: args.out,
            format: args.format,
        },
    )?;
    let outcome = experiments::execute(&cfg, args.workers)?;
    Ok(outcome.all_verdicts_true)
}

fn encode(args: EncodeArgs) -> Result<(), String> {
    let probs: Vec<f64> = args
        .probs
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|e| format!("bad probability {p:?}: {e}"))
        })
        .collect::<Result<_, _>>()?;
    let source = IidSource::new(probs).map_err(|e| e.to_string())?;

    let seq: Vec<usize> = if args.sequence.contains(',') {
        args.sequence
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|e| format!("bad symbol {s:?}: {e}"))
            })
            .collect::<Result<_, _>>()?
    } else {
        args.sequence
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| format!("bad symbol {c:?}"))
            })
            .collect::<Result<_, _>>()?
    };

    let code = optimal_one_to_one(source);
    let rank = code.rank(&seq).map_err(|e| e.to_string())?;
    let bits = code.encode(&seq).map_err(|e| e.to_string())?;
    println!("rank {rank}");
    println!("codeword {bits}");
    println!("length {}", bits.len());
    Ok(())
}
