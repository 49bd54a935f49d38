use crate::report;
use clap::Parser;
use num_complex::Complex64;
use rqc::error::{Error, Result};
use rqc::io::AmplitudeHeader;
use rqc::sfa::{sfa_amplitudes, SfaMode, SfaOptions};
use rqc::statevec::{ideal_probs, run as sv_run, StateVector};
use serde::Serialize;
use std::path::PathBuf;

#[derive(Parser, Serialize)]
pub struct Args {
    #[arg(long)]
    pub circuit: PathBuf,
    /// sv | sfa
    #[arg(long, default_value = "sv")]
    pub engine: String,
    /// single | double
    #[arg(long, default_value = "double")]
    pub precision: String,
    /// Cut JSON, required for the sfa engine.
    #[arg(long)]
    pub cut: Option<PathBuf>,
    /// full | top-fidelity (sfa only)
    #[arg(long, default_value = "full")]
    pub mode: String,
    #[arg(long)]
    pub target_fidelity: Option<f64>,
    #[arg(long)]
    pub simplify_boundary: bool,
    /// Bitstring file (one per line); default: all 2^n bitstrings.
    #[arg(long)]
    pub bitstrings: Option<PathBuf>,
    /// Evaluate only this prefix run (sfa; requires --prefix-len).
    #[arg(long)]
    pub run_id: Option<u64>,
    #[arg(long)]
    pub prefix_len: Option<usize>,
    /// Write the run manifest for out-of-process distribution.
    #[arg(long)]
    pub emit_runs: Option<PathBuf>,
    /// Amplitude dump path (binary + .json header).
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Serialize)]
struct Outcome {
    n_qubits: usize,
    amplitudes: usize,
    engine: String,
    achieved_fidelity: Option<f64>,
    paths_summed: Option<String>,
    norm_sqr: f64,
}

fn query_bitstrings(args: &Args, n: usize) -> Result<Vec<u64>> {
    match &args.bitstrings {
        Some(path) => rqc::io::read_samples(path, n),
        None => {
            if n > 24 {
                return Err(Error::Config(
                    "refusing to enumerate all bitstrings beyond 24 qubits; pass --bitstrings"
                        .into(),
                ));
            }
            Ok((0..(1u64 << n)).collect())
        }
    }
}

pub fn run(args: Args) -> Result<()> {
    let circuit = rqc::io::load_circuit(&args.circuit)?;
    let n = circuit.n_qubits();
    let sv_opts = report::sv_options();
    let circuit_hash = rqc::io::circuit_hash(&circuit)?;

    let (amps, achieved, paths): (Vec<Complex64>, Option<f64>, Option<String>) =
        match args.engine.as_str() {
            "sv" => {
                let queries = match &args.bitstrings {
                    Some(path) => Some(rqc::io::read_samples(path, n)?),
                    None => None,
                };
                let amps = match args.precision.as_str() {
                    "double" => {
                        let state = sv_run::<f64>(&circuit, &sv_opts)?;
                        match &queries {
                            Some(qs) => qs.iter().map(|&b| state.amp(b)).collect(),
                            None => state.amplitudes(),
                        }
                    }
                    "single" => {
                        let state = sv_run::<f32>(&circuit, &sv_opts)?;
                        match &queries {
                            Some(qs) => qs.iter().map(|&b| state.amp(b)).collect(),
                            None => state.amplitudes(),
                        }
                    }
                    other => return Err(Error::Config(format!("unknown precision {other:?}"))),
                };
                (amps, None, None)
            }
            "sfa" => {
                let cut_path = args
                    .cut
                    .as_ref()
                    .ok_or_else(|| Error::Config("sfa engine needs --cut".into()))?;
                let cut = super::load_cut(cut_path)?;
                let queries = query_bitstrings(&args, n)?;
                let opts = SfaOptions {
                    simplify_boundary: args.simplify_boundary,
                    sv: sv_opts.clone(),
                    ..Default::default()
                };
                let mode = match args.mode.as_str() {
                    "full" => match (args.run_id, args.prefix_len) {
                        (None, _) => SfaMode::Full,
                        (Some(id), Some(prefix_len)) => {
                            // restrict to one prefix run
                            let ranks = rqc::sfa::prepared_ranks(
                                &circuit,
                                &cut,
                                args.simplify_boundary,
                            )?;
                            let _ = rqc::sfa::count_prefix_runs(&ranks, prefix_len)?;
                            let suffix: u128 = ranks[prefix_len..]
                                .iter()
                                .map(|&r| r as u128)
                                .product();
                            let base = id as u128 * suffix;
                            SfaMode::PathSubset((0..suffix).map(|s| base + s).collect())
                        }
                        (Some(_), None) => {
                            return Err(Error::Config(
                                "--run-id needs --prefix-len".into(),
                            ))
                        }
                    },
                    "top-fidelity" => SfaMode::TopFidelity(args.target_fidelity.ok_or_else(
                        || Error::Config("top-fidelity mode needs --target-fidelity".into()),
                    )?),
                    other => return Err(Error::Config(format!("unknown mode {other:?}"))),
                };
                if let Some(manifest_path) = &args.emit_runs {
                    let prefix_len = args
                        .prefix_len
                        .ok_or_else(|| Error::Config("--emit-runs needs --prefix-len".into()))?;
                    let ranks =
                        rqc::sfa::prepared_ranks(&circuit, &cut, args.simplify_boundary)?;
                    let runs = rqc::sfa::enumerate_prefix_runs(&ranks, prefix_len)?;
                    let manifest = rqc::io::RunManifest {
                        circuit_hash: circuit_hash.clone(),
                        side1: rqc::sfa::Cut::from_spec(&circuit, &cut)?.side1,
                        prefix_len,
                        runs: runs
                            .into_iter()
                            .map(|r| rqc::io::RunEntry {
                                id: r.id as u64,
                                prefix_indices: r.prefix_indices,
                            })
                            .collect(),
                    };
                    rqc::io::write_run_manifest(manifest_path, &manifest)?;
                }
                let outcome = match args.precision.as_str() {
                    "double" => sfa_amplitudes::<f64>(&circuit, &cut, &queries, mode, &opts)?,
                    "single" => sfa_amplitudes::<f32>(&circuit, &cut, &queries, mode, &opts)?,
                    other => return Err(Error::Config(format!("unknown precision {other:?}"))),
                };
                (
                    outcome.amps,
                    outcome.achieved_fidelity,
                    Some(outcome.paths_summed.to_string()),
                )
            }
            other => return Err(Error::Config(format!("unknown engine {other:?}"))),
        };

    let header = AmplitudeHeader {
        n,
        count: amps.len(),
        precision: match args.precision.as_str() {
            "single" => "f32".into(),
            _ => "f64".into(),
        },
        circuit_hash: Some(circuit_hash),
    };
    rqc::io::write_amplitudes(&args.out, &header, &amps)?;

    if let Some(report_path) = &args.report {
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        let mut inputs: Vec<&std::path::Path> = vec![&args.circuit];
        if let Some(p) = &args.cut {
            inputs.push(p);
        }
        if let Some(p) = &args.bitstrings {
            inputs.push(p);
        }
        let outcome = Outcome {
            n_qubits: n,
            amplitudes: amps.len(),
            engine: args.engine.clone(),
            achieved_fidelity: achieved,
            paths_summed: paths,
            norm_sqr: norm,
        };
        let report = report::envelope(&inputs, None, &args, outcome)?;
        report::write_json(report_path, &report)?;
    }
    Ok(())
}

/// Probability helper for the xeb command.
pub fn probabilities_for(
    circuit: &rqc::circuit::Circuit,
    samples: &[u64],
    precision: &str,
) -> Result<Vec<f64>> {
    let opts = report::sv_options();
    match precision {
        "double" => {
            let state: StateVector<f64> = sv_run(circuit, &opts)?;
            ideal_probs(&state, samples)
        }
        "single" => {
            let state: StateVector<f32> = sv_run(circuit, &opts)?;
            ideal_probs(&state, samples)
        }
        other => Err(Error::Config(format!("unknown precision {other:?}"))),
    }
}
