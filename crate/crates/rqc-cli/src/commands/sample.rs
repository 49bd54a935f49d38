use crate::report;
use clap::Parser;
use rqc::error::{Error, Result};
use rqc::statevec::{noisy_run, run as sv_run, sample, NoiseModel};
use serde::Serialize;
use std::path::PathBuf;

#[derive(Parser, Serialize)]
pub struct Args {
    #[arg(long)]
    pub circuit: PathBuf,
    #[arg(long)]
    pub samples: usize,
    /// Defaults to a fresh random seed, echoed in the report and sidecar.
    #[arg(long)]
    pub seed: Option<u64>,
    /// single | double
    #[arg(long, default_value = "double")]
    pub precision: String,
    #[arg(long, default_value_t = 0.0)]
    pub noise_e1: f64,
    #[arg(long, default_value_t = 0.0)]
    pub noise_e2: f64,
    #[arg(long, default_value_t = 0.0)]
    pub noise_er: f64,
    /// Noisy sampling: number of Pauli trajectories the samples are
    /// spread over.
    #[arg(long)]
    pub trajectories: Option<usize>,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Serialize)]
struct Outcome {
    n_qubits: usize,
    n_samples: usize,
    noisy: bool,
}

pub fn run(mut args: Args) -> Result<()> {
    let seed = args.seed.unwrap_or_else(rand::random);
    args.seed = Some(seed);
    let circuit = rqc::io::load_circuit(&args.circuit)?;
    let n = circuit.n_qubits();
    let opts = report::sv_options();
    let circuit_hash = rqc::io::circuit_hash(&circuit)?;

    let noisy = args.noise_e1 > 0.0 || args.noise_e2 > 0.0 || args.noise_er > 0.0;
    let samples: Vec<u64> = if noisy {
        let noise = NoiseModel {
            e1: args.noise_e1,
            e2: args.noise_e2,
            er: args.noise_er,
        };
        let trajectories = args.trajectories.unwrap_or(args.samples);
        if trajectories == 0 || args.samples % trajectories != 0 {
            return Err(Error::Config(
                "--trajectories must divide --samples".into(),
            ));
        }
        let per = args.samples / trajectories;
        let groups = match args.precision.as_str() {
            "double" => noisy_run::<f64>(&circuit, &noise, seed, trajectories, per, &opts)?,
            "single" => noisy_run::<f32>(&circuit, &noise, seed, trajectories, per, &opts)?,
            other => return Err(Error::Config(format!("unknown precision {other:?}"))),
        };
        groups.into_iter().flatten().collect()
    } else {
        match args.precision.as_str() {
            "double" => {
                let state = sv_run::<f64>(&circuit, &opts)?;
                sample(&state, args.samples, seed)
            }
            "single" => {
                let state = sv_run::<f32>(&circuit, &opts)?;
                sample(&state, args.samples, seed)
            }
            other => return Err(Error::Config(format!("unknown precision {other:?}"))),
        }
    };

    rqc::io::write_samples_with_sidecar(&args.out, n, &samples, seed, &circuit_hash)?;

    if let Some(report_path) = &args.report {
        let outcome = Outcome {
            n_qubits: n,
            n_samples: samples.len(),
            noisy,
        };
        let report = report::envelope(&[&args.circuit], Some(seed), &args, outcome)?;
        report::write_json(report_path, &report)?;
    }
    Ok(())
}
