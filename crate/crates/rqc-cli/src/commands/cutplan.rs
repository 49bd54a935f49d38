use crate::report;
use clap::Parser;
use rqc::cutopt::{count_formations, search_optimal_cut, CutReport, SearchStrategy};
use rqc::error::{Error, Result};
use serde::Serialize;
use std::path::PathBuf;

#[derive(Parser, Serialize)]
pub struct Args {
    #[arg(long)]
    pub circuit: PathBuf,
    #[arg(long, default_value_t = 4)]
    pub max_imbalance: usize,
    /// exhaustive | heuristic
    #[arg(long, default_value = "exhaustive")]
    pub strategy: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Score an explicit cut instead of searching.
    #[arg(long)]
    pub cut: Option<PathBuf>,
    /// Fidelity used for the projected SFA cost.
    #[arg(long, default_value_t = 1e-3)]
    pub fidelity: f64,
    /// Write the chosen cut here for reuse by other commands.
    #[arg(long)]
    pub emit_cut: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Serialize)]
struct Outcome {
    side1: Vec<(usize, usize)>,
    n1: usize,
    n2: usize,
    report: CutReport,
    l_times_two: i64,
    l: f64,
    path_count: String,
    per_gate_ranks: Vec<u8>,
    /// `paths * (2^n1 + 2^n2) * F / C_SFA` seconds.
    projected_sfa_seconds: f64,
}

pub fn run(args: Args) -> Result<()> {
    let circuit = rqc::io::load_circuit(&args.circuit)?;
    let (cut, cut_report) = match &args.cut {
        Some(path) => {
            let cut = super::load_cut(path)?;
            let report = count_formations(&circuit, &cut)?;
            (cut, report)
        }
        None => {
            let strategy = match args.strategy.as_str() {
                "exhaustive" => SearchStrategy::Exhaustive,
                "heuristic" => SearchStrategy::Heuristic { seed: args.seed, restarts: 8 },
                other => return Err(Error::Config(format!("unknown strategy {other:?}"))),
            };
            search_optimal_cut(&circuit, args.max_imbalance, strategy)?
        }
    };

    let (paths, ranks) = rqc::sfa::path_count(&circuit, &cut)?;
    let n1 = cut.side1.len();
    let n2 = circuit.n_qubits() - n1;
    let constants = rqc::cost::CostConstants::default();
    let per_path = (n1 as f64).exp2() + (n2 as f64).exp2();
    let projected = paths as f64 * per_path * args.fidelity / constants.c_sfa;

    if let Some(path) = &args.emit_cut {
        std::fs::write(path, serde_json::to_vec_pretty(&cut)?)?;
    }

    let outcome = Outcome {
        side1: cut.side1.iter().copied().collect(),
        n1,
        n2,
        report: cut_report,
        l_times_two: cut_report.l_times_two(),
        l: cut_report.l(),
        path_count: paths.to_string(),
        per_gate_ranks: ranks,
        projected_sfa_seconds: projected,
    };
    let mut inputs: Vec<&std::path::Path> = vec![&args.circuit];
    if let Some(p) = &args.cut {
        inputs.push(p);
    }
    let report = report::envelope(&inputs, Some(args.seed), &args, outcome)?;
    report::write_json(&args.out, &report)?;
    Ok(())
}
