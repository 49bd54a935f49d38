//! Command-line front end: circuit generation, simulation, sampling, XEB
//! analysis, cut planning, cost models and partial-amplitude merging.
//!
//! Every report embeds the tool version, SHA-256 hashes of its input
//! files, the seed and the resolved configuration; reruns with identical
//! inputs produce byte-identical outputs for any worker count.
//!
//! Exit codes: 0 success, 1 internal error, 2 user or configuration
//! error, 3 memory refusal.

mod commands;
mod report;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "rqc", version, about = "random quantum circuit benchmarking toolkit")]
struct Cli {
    /// Worker threads (default: available parallelism). Outputs do not
    /// depend on this value.
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random circuit (full, patch or elided) as JSON and
    /// optional QCIS text
    Generate(commands::generate::Args),
    /// Compute amplitudes with the state-vector or path-decomposition
    /// engine
    Simulate(commands::simulate::Args),
    /// Draw bitstring samples, optionally under Pauli trajectory noise
    Sample(commands::sample::Args),
    /// Cross-entropy benchmarking analysis of a samples file
    Xeb(commands::xeb::Args),
    /// Search or score circuit cuts and report effective cross gates and
    /// path counts
    Cutplan(commands::cutplan::Args),
    /// Closed-form runtime and memory models
    Cost(commands::cost::Args),
    /// Sum partial-amplitude files produced by per-run invocations
    Merge(commands::merge::Args),
}

fn exit_code(err: &rqc::Error) -> i32 {
    match err {
        rqc::Error::MemoryCap { .. } => 3,
        rqc::Error::Io(_) => 2,
        rqc::Error::Json(_) => 2,
        _ => 2,
    }
}

fn main() {
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
        {
            eprintln!("error: could not configure worker pool: {e}");
            std::process::exit(1);
        }
    }
    let result = match cli.command {
        Command::Generate(args) => commands::generate::run(args),
        Command::Simulate(args) => commands::simulate::run(args),
        Command::Sample(args) => commands::sample::run(args),
        Command::Xeb(args) => commands::xeb::run(args),
        Command::Cutplan(args) => commands::cutplan::run(args),
        Command::Cost(args) => commands::cost::run(args),
        Command::Merge(args) => commands::merge::run(args),
    };
    match result {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}
