use crate::report;
use clap::Parser;
use rqc::error::{Error, Result};
use rqc::xeb::{
    bootstrap_sigma, ks_test, linear_xeb, log_xeb, theoretical_sigma, Estimator, XebSample,
};
use serde::Serialize;
use std::path::PathBuf;

#[derive(Parser, Serialize)]
pub struct Args {
    /// Samples file (one bitstring per line).
    #[arg(long)]
    pub samples: PathBuf,
    #[arg(long)]
    pub circuit: PathBuf,
    /// Precomputed probability file aligned with the samples; when absent
    /// the circuit is simulated.
    #[arg(long)]
    pub probs: Option<PathBuf>,
    /// linear | log
    #[arg(long, default_value = "linear")]
    pub estimator: String,
    #[arg(long, default_value = "double")]
    pub precision: String,
    /// Bootstrap replicate count (0 disables).
    #[arg(long, default_value_t = 0)]
    pub bootstrap: usize,
    #[arg(long, default_value_t = 0)]
    pub bootstrap_seed: u64,
    /// KS-test hypothesis fidelity; defaults to the estimated value.
    #[arg(long)]
    pub ks_fidelity: Option<f64>,
    /// Probability floor for zero-probability samples in log XEB.
    #[arg(long)]
    pub floor: Option<f64>,
    #[arg(long, default_value_t = 50)]
    pub histogram_bins: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Serialize)]
struct HistogramBin {
    x_lo: f64,
    x_hi: f64,
    count: usize,
}

#[derive(Serialize)]
struct Outcome {
    estimator: String,
    n: usize,
    n_samples: usize,
    fidelity: f64,
    sigma: f64,
    theoretical_sigma: f64,
    ks_hypothesis_fidelity: f64,
    d_ks: f64,
    p_value: f64,
    n_boot: usize,
    bootstrap_sigma: Option<f64>,
    gaussian_fit_sigma: Option<f64>,
    /// Histogram of x = D p (linear) or x = log(D p) (log) for PDF
    /// overlays.
    histogram: Vec<HistogramBin>,
}

pub fn run(args: Args) -> Result<()> {
    let circuit = rqc::io::load_circuit(&args.circuit)?;
    let n = circuit.n_qubits();
    let samples = rqc::io::read_samples(&args.samples, n)?;
    if samples.is_empty() {
        return Err(Error::EmptySample);
    }
    let probs = match &args.probs {
        Some(path) => {
            let p = rqc::io::read_probabilities(path)?;
            if p.len() != samples.len() {
                return Err(Error::Config(format!(
                    "{} probabilities for {} samples",
                    p.len(),
                    samples.len()
                )));
            }
            p
        }
        None => super::simulate::probabilities_for(&circuit, &samples, &args.precision)?,
    };
    let sample = XebSample::new(n, probs);

    let estimator = match args.estimator.as_str() {
        "linear" => Estimator::Linear,
        "log" => Estimator::Log,
        other => return Err(Error::Config(format!("unknown estimator {other:?}"))),
    };
    let estimate = match estimator {
        Estimator::Linear => linear_xeb(&sample)?,
        Estimator::Log => log_xeb(&sample, args.floor)?,
    };
    let ks_f = args.ks_fidelity.unwrap_or(estimate.value.clamp(0.0, 1.0));
    let (d_ks, p_value) = ks_test(&sample, ks_f, estimator)?;
    let t_sigma = theoretical_sigma(estimate.value.clamp(0.0, 1.0), sample.ns(), estimator);

    let (boot_sigma, fit_sigma) = if args.bootstrap > 0 {
        let b = bootstrap_sigma(&sample, args.bootstrap, args.bootstrap_seed, estimator)?;
        (Some(b.sigma), Some(b.gaussian_fit_sigma))
    } else {
        (None, None)
    };

    // histogram of the scaled variable
    let d = sample.d();
    let xs: Vec<f64> = match estimator {
        Estimator::Linear => sample.probs.iter().map(|&p| d * p).collect(),
        Estimator::Log => sample
            .probs
            .iter()
            .map(|&p| (d * p.max(args.floor.unwrap_or(f64::MIN_POSITIVE))).ln())
            .collect(),
    };
    let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let bins = args.histogram_bins.max(1);
    let width = ((hi - lo) / bins as f64).max(f64::MIN_POSITIVE);
    let mut counts = vec![0usize; bins];
    for &x in &xs {
        let b = (((x - lo) / width) as usize).min(bins - 1);
        counts[b] += 1;
    }
    let histogram = counts
        .iter()
        .enumerate()
        .map(|(b, &count)| HistogramBin {
            x_lo: lo + b as f64 * width,
            x_hi: lo + (b + 1) as f64 * width,
            count,
        })
        .collect();

    let outcome = Outcome {
        estimator: args.estimator.clone(),
        n,
        n_samples: sample.ns(),
        fidelity: estimate.value,
        sigma: estimate.sigma,
        theoretical_sigma: t_sigma,
        ks_hypothesis_fidelity: ks_f,
        d_ks,
        p_value,
        n_boot: args.bootstrap,
        bootstrap_sigma: boot_sigma,
        gaussian_fit_sigma: fit_sigma,
        histogram,
    };
    let mut inputs: Vec<&std::path::Path> = vec![&args.samples, &args.circuit];
    if let Some(p) = &args.probs {
        inputs.push(p);
    }
    let report = report::envelope(&inputs, Some(args.bootstrap_seed), &args, outcome)?;
    report::write_json(&args.out, &report)?;
    Ok(())
}
