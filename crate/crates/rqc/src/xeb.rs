//! Cross-entropy benchmarking statistics: linear and logarithmic fidelity
//! estimators, the predicted-fidelity product model, Porter-Thomas
//! densities, Kolmogorov-Smirnov tests, theoretical and bootstrap
//! uncertainties, and inverse-variance combination across circuit
//! instances.

use crate::circuit::{Circuit, Layer};
use crate::error::{Error, Result};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.57721566490153286;

/// Ideal probabilities of a set of sampled bitstrings on a circuit of
/// dimension `D = 2^n`.
#[derive(Clone, Debug)]
pub struct XebSample {
    pub n: usize,
    pub probs: Vec<f64>,
}

impl XebSample {
    pub fn new(n: usize, probs: Vec<f64>) -> XebSample {
        XebSample { n, probs }
    }

    pub fn d(&self) -> f64 {
        (self.n as f64).exp2()
    }

    pub fn ns(&self) -> usize {
        self.probs.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Estimator {
    Linear,
    Log,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct FidelityEstimate {
    pub value: f64,
    pub sigma: f64,
    pub estimator: Estimator,
}

fn mean_and_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, var)
}

/// Linear XEB: `F = <D p> - 1`, standard error `D sqrt(Var(p) / Ns)`.
pub fn linear_xeb(sample: &XebSample) -> Result<FidelityEstimate> {
    if sample.probs.is_empty() {
        return Err(Error::EmptySample);
    }
    let d = sample.d();
    let (mean, var) = mean_and_var(&sample.probs);
    Ok(FidelityEstimate {
        value: d * mean - 1.0,
        sigma: d * (var / sample.ns() as f64).sqrt(),
        estimator: Estimator::Linear,
    })
}

/// Log XEB: `F = <log(D p)> + gamma`, standard error
/// `sqrt(Var(log D p) / Ns)`. A zero probability is an error unless a
/// floor is supplied (the floor replaces non-positive entries).
pub fn log_xeb(sample: &XebSample, floor: Option<f64>) -> Result<FidelityEstimate> {
    if sample.probs.is_empty() {
        return Err(Error::EmptySample);
    }
    let d = sample.d();
    let logs: Vec<f64> = sample
        .probs
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let p = if p <= 0.0 {
                match floor {
                    Some(f) => f,
                    None => return Err(Error::ZeroProbability { index: i }),
                }
            } else {
                p
            };
            Ok((d * p).ln())
        })
        .collect::<Result<_>>()?;
    let (mean, var) = mean_and_var(&logs);
    Ok(FidelityEstimate {
        value: mean + EULER_GAMMA,
        sigma: (var / sample.ns() as f64).sqrt(),
        estimator: Estimator::Log,
    })
}

/// Per-operation Pauli/readout error budget, keyed by logical qubit and
/// edge.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ErrorBudget {
    pub e1: BTreeMap<usize, f64>,
    pub e2: BTreeMap<(usize, usize), f64>,
    pub er: BTreeMap<usize, f64>,
}

impl ErrorBudget {
    /// Uniform rates over a circuit's qubits and coupler pairs.
    pub fn uniform(circuit: &Circuit, e1: f64, e2: f64, er: f64) -> ErrorBudget {
        let mut budget = ErrorBudget::default();
        for q in 0..circuit.n_qubits() {
            budget.e1.insert(q, e1);
            budget.er.insert(q, er);
        }
        for layer in &circuit.layers {
            if let Layer::Two { gates } = layer {
                for g in gates {
                    budget.e2.insert((g.a.min(g.b), g.a.max(g.b)), e2);
                }
            }
        }
        budget
    }
}

/// Product model: `F = prod(1 - e)` over single-qubit gates, two-qubit
/// gates and measured qubits.
pub fn predicted_fidelity(circuit: &Circuit, budget: &ErrorBudget) -> Result<f64> {
    let mut log_f = 0.0f64;
    for layer in &circuit.layers {
        match layer {
            Layer::Single { gates } => {
                for g in gates {
                    let e = budget
                        .e1
                        .get(&g.q)
                        .ok_or_else(|| Error::MissingBudget(format!("e1 of qubit {}", g.q)))?;
                    log_f += (1.0 - e).ln();
                }
            }
            Layer::Two { gates } => {
                for g in gates {
                    let key = (g.a.min(g.b), g.a.max(g.b));
                    let e = budget.e2.get(&key).ok_or_else(|| {
                        Error::MissingBudget(format!("e2 of pair ({}, {})", key.0, key.1))
                    })?;
                    log_f += (1.0 - e).ln();
                }
            }
        }
    }
    for q in 0..circuit.n_qubits() {
        let e = budget
            .er
            .get(&q)
            .ok_or_else(|| Error::MissingBudget(format!("er of qubit {q}")))?;
        log_f += (1.0 - e).ln();
    }
    Ok(log_f.exp())
}

/// Porter-Thomas density of `x = D p` under linear-XEB fidelity `F`:
/// `(F x + 1 - F) e^{-x}`.
pub fn pdf_linear(x: f64, f: f64) -> f64 {
    if x < 0.0 {
        return 0.0;
    }
    (f * x + (1.0 - f)) * (-x).exp()
}

/// Closed-form integral of `pdf_linear`: `1 - e^{-x} (1 + F x)`.
pub fn cdf_linear(x: f64, f: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    1.0 - (-x).exp() * (1.0 + f * x)
}

/// Density of `x = log(D p)`: `(1 + F (e^x - 1)) e^{x - e^x}`.
pub fn pdf_log(x: f64, f: f64) -> f64 {
    let ex = x.exp();
    (1.0 + f * (ex - 1.0)) * (x - ex).exp()
}

/// Closed-form integral of `pdf_log`: `1 - e^{-e^x} (1 + F e^x)`.
pub fn cdf_log(x: f64, f: f64) -> f64 {
    let ex = x.exp();
    1.0 - (-ex).exp() * (1.0 + f * ex)
}

/// Survival function of the asymptotic Kolmogorov distribution,
/// `Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} e^{-2 k^2 lambda^2}`, truncated at
/// one hundred terms.
pub fn kolmogorov_q(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    let mut q = 0.0;
    for k in 1..=100 {
        let term = (-2.0 * (k as f64) * (k as f64) * lambda * lambda).exp();
        q += if k % 2 == 1 { 2.0 * term } else { -2.0 * term };
    }
    q.clamp(0.0, 1.0)
}

/// One-sample Kolmogorov-Smirnov test of the scaled bitstring
/// probabilities against the Porter-Thomas law at `hypothesis_f`.
/// Returns `(D_KS, p_value)` with the p-value from the asymptotic
/// Kolmogorov distribution.
pub fn ks_test(
    sample: &XebSample,
    hypothesis_f: f64,
    estimator: Estimator,
) -> Result<(f64, f64)> {
    if sample.ns() < 10 {
        return Err(Error::Config(format!(
            "KS test needs at least 10 samples, got {}",
            sample.ns()
        )));
    }
    let d = sample.d();
    let mut xs: Vec<f64> = match estimator {
        Estimator::Linear => sample.probs.iter().map(|&p| d * p).collect(),
        Estimator::Log => sample
            .probs
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                if p <= 0.0 {
                    Err(Error::ZeroProbability { index: i })
                } else {
                    Ok((d * p).ln())
                }
            })
            .collect::<Result<_>>()?,
    };
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len() as f64;
    let cdf = |x: f64| match estimator {
        Estimator::Linear => cdf_linear(x, hypothesis_f),
        Estimator::Log => cdf_log(x, hypothesis_f),
    };
    let mut d_ks = 0.0f64;
    for (i, &x) in xs.iter().enumerate() {
        let c = cdf(x);
        d_ks = d_ks.max(((i + 1) as f64 / n - c).abs());
        d_ks = d_ks.max((c - i as f64 / n).abs());
    }
    let p = kolmogorov_q(n.sqrt() * d_ks);
    Ok((d_ks, p))
}

/// Closed-form standard error of the estimators at fidelity `F`:
/// `sqrt((1 + 2F - F^2) / Ns)` (linear), `sqrt((pi^2/6 - F^2) / Ns)`
/// (log).
pub fn theoretical_sigma(f: f64, ns: usize, estimator: Estimator) -> f64 {
    let ns = ns as f64;
    match estimator {
        Estimator::Linear => ((1.0 + 2.0 * f - f * f) / ns).sqrt(),
        Estimator::Log => ((std::f64::consts::PI.powi(2) / 6.0 - f * f) / ns).sqrt(),
    }
}

#[derive(Clone, Debug)]
pub struct BootstrapOutcome {
    pub estimates: Vec<f64>,
    pub sigma: f64,
    /// Standard deviation of a Gaussian fitted to the histogram of the
    /// bootstrap estimates (method of moments on 50 bins).
    pub gaussian_fit_sigma: f64,
}

/// Resampling-with-replacement uncertainty estimate. Replicates run in
/// parallel with per-replicate derived seeds, so the outcome depends only
/// on the master seed.
pub fn bootstrap_sigma(
    sample: &XebSample,
    n_boot: usize,
    seed: u64,
    estimator: Estimator,
) -> Result<BootstrapOutcome> {
    if sample.ns() < 100 {
        return Err(Error::Config(format!(
            "bootstrap needs at least 100 samples, got {}",
            sample.ns()
        )));
    }
    let estimates: Vec<f64> = (0..n_boot)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b as u64 + 1);
            let resampled: Vec<f64> = (0..sample.ns())
                .map(|_| sample.probs[rng.gen_range(0..sample.ns())])
                .collect();
            let s = XebSample::new(sample.n, resampled);
            match estimator {
                Estimator::Linear => linear_xeb(&s).map(|e| e.value),
                Estimator::Log => log_xeb(&s, None).map(|e| e.value),
            }
        })
        .collect::<Result<_>>()?;

    let (_, var) = mean_and_var(&estimates);
    let sigma = var.sqrt();

    // histogram moment fit
    let lo = estimates.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = estimates.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let gaussian_fit_sigma = if hi > lo {
        let bins = 50usize;
        let w = (hi - lo) / bins as f64;
        let mut counts = vec![0usize; bins];
        for &e in &estimates {
            let b = (((e - lo) / w) as usize).min(bins - 1);
            counts[b] += 1;
        }
        let total: f64 = estimates.len() as f64;
        let centers: Vec<f64> = (0..bins).map(|b| lo + (b as f64 + 0.5) * w).collect();
        let mu: f64 = centers
            .iter()
            .zip(&counts)
            .map(|(c, &k)| c * k as f64)
            .sum::<f64>()
            / total;
        (centers
            .iter()
            .zip(&counts)
            .map(|(c, &k)| (c - mu) * (c - mu) * k as f64)
            .sum::<f64>()
            / total)
            .sqrt()
    } else {
        0.0
    };

    Ok(BootstrapOutcome { estimates, sigma, gaussian_fit_sigma })
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct CombinedEstimate {
    pub value: f64,
    pub sigma: f64,
    /// Significance of the estimate against the F = 0 null.
    pub z_score: f64,
}

/// Inverse-variance weighting across circuit instances.
pub fn combine_instances(estimates: &[FidelityEstimate]) -> Result<CombinedEstimate> {
    if estimates.is_empty() {
        return Err(Error::EmptySample);
    }
    if estimates.iter().any(|e| e.sigma <= 0.0) {
        return Err(Error::Config("combine_instances needs positive sigmas".into()));
    }
    let wsum: f64 = estimates.iter().map(|e| 1.0 / (e.sigma * e.sigma)).sum();
    let value: f64 = estimates
        .iter()
        .map(|e| e.value / (e.sigma * e.sigma))
        .sum::<f64>()
        / wsum;
    let sigma = wsum.powf(-0.5);
    Ok(CombinedEstimate { value, sigma, z_score: value / sigma })
}

/// Inverse-CDF sampler for the linear Porter-Thomas law, used by tests
/// and synthetic-data tooling.
pub fn sample_porter_thomas_linear(f: f64, n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let u: f64 = rng.gen();
            invert_cdf_linear(u, f)
        })
        .collect()
}

fn invert_cdf_linear(u: f64, f: f64) -> f64 {
    // monotone; bisection with a Newton polish
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while cdf_linear(hi, f) < u {
        hi *= 2.0;
        if hi > 1e6 {
            break;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if cdf_linear(mid, f) < u {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-13 * (1.0 + hi) {
            break;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_xeb_trivia() {
        // all p = 1/D
        let s = XebSample::new(4, vec![1.0 / 16.0; 100]);
        let e = linear_xeb(&s).unwrap();
        assert!(e.value.abs() < 1e-12);

        // D = 4, probs [0.5, 0.25] -> (2 + 1)/2 - 1 = 0.5
        let s = XebSample::new(2, vec![0.5, 0.25]);
        let e = linear_xeb(&s).unwrap();
        assert!((e.value - 0.5).abs() < 1e-12);

        assert!(linear_xeb(&XebSample::new(2, vec![])).is_err());
    }

    #[test]
    fn log_xeb_gamma_at_uniform() {
        let s = XebSample::new(6, vec![1.0 / 64.0; 50]);
        let e = log_xeb(&s, None).unwrap();
        assert!((e.value - EULER_GAMMA).abs() < 1e-12);

        let bad = XebSample::new(2, vec![0.25, 0.0]);
        assert!(matches!(log_xeb(&bad, None), Err(Error::ZeroProbability { index: 1 })));
        assert!(log_xeb(&bad, Some(1e-12)).is_ok());
    }

    #[test]
    fn pdf_limits() {
        for x in [0.0, 0.5, 1.0, 3.0] {
            assert!((pdf_linear(x, 0.0) - (-x as f64).exp()).abs() < 1e-15);
            assert!((pdf_linear(x, 1.0) - x * (-x as f64).exp()).abs() < 1e-15);
        }
    }

    fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, steps: usize) -> f64 {
        let h = (b - a) / steps as f64;
        let mut s = f(a) + f(b);
        for i in 1..steps {
            let x = a + i as f64 * h;
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(x);
        }
        s * h / 3.0
    }

    #[test]
    fn pdfs_integrate_to_one_and_match_cdfs() {
        for f in [0.0, 0.3, 1.0] {
            let total = simpson(|x| pdf_linear(x, f), 0.0, 60.0, 20000);
            assert!((total - 1.0).abs() < 1e-9, "linear F={f}: {total}");
            let total = simpson(|x| pdf_log(x, f), -30.0, 5.0, 20000);
            assert!((total - 1.0).abs() < 1e-9, "log F={f}: {total}");
            for x in [0.1f64, 0.7, 1.9, 4.2] {
                let quad = simpson(|t| pdf_linear(t, f), 0.0, x, 4000);
                assert!((quad - cdf_linear(x, f)).abs() < 1e-8);
                let quad = simpson(|t| pdf_log(t, f), -30.0, x.ln(), 8000);
                assert!((quad - cdf_log(x.ln(), f)).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn cdfs_monotone_zero_to_one() {
        for f in [0.0, 0.5, 1.0] {
            let mut prev = 0.0;
            for i in 0..=500 {
                let x = i as f64 * 0.05;
                let c = cdf_linear(x, f);
                assert!(c >= prev - 1e-14);
                prev = c;
            }
            assert!(prev > 0.999999);
        }
    }

    #[test]
    fn theoretical_sigma_values() {
        assert!((theoretical_sigma(0.0, 10_000, Estimator::Linear) - 0.01).abs() < 1e-15);
        // paper-scale inputs
        let s_l = theoretical_sigma(6.62e-4, 190_000_000, Estimator::Linear);
        assert!((s_l - 7.2648e-5).abs() / s_l < 1e-3, "{s_l}");
        let s_c = theoretical_sigma(6.62e-4, 190_000_000, Estimator::Log);
        assert!((s_c - 9.3046e-5).abs() / s_c < 1e-3, "{s_c}");
    }

    #[test]
    fn ks_uniform_p_values() {
        // synthetic data from P_l(x|0.5) tested at F = 0.5: p-values are
        // approximately uniform
        let mut mean_p = 0.0;
        let reps = 500;
        for r in 0..reps {
            let xs = sample_porter_thomas_linear(0.5, 2000, 1000 + r);
            let d = (20 as f64).exp2();
            let probs: Vec<f64> = xs.iter().map(|x| x / d).collect();
            let s = XebSample::new(20, probs);
            let (_, p) = ks_test(&s, 0.5, Estimator::Linear).unwrap();
            mean_p += p;
        }
        mean_p /= reps as f64;
        assert!((mean_p - 0.5).abs() < 0.05, "mean p = {mean_p}");
    }

    #[test]
    fn ks_power_against_wrong_hypothesis() {
        let xs = sample_porter_thomas_linear(0.5, 100_000, 7);
        let d = (20 as f64).exp2();
        let probs: Vec<f64> = xs.iter().map(|x| x / d).collect();
        let s = XebSample::new(20, probs);
        let (_, p) = ks_test(&s, 0.0, Estimator::Linear).unwrap();
        assert!(p < 1e-6, "p = {p}");
    }

    #[test]
    fn estimator_consistency_on_synthetic_data() {
        for f in [0.0, 0.3, 1.0] {
            let ns = 1_000_000;
            let xs = sample_porter_thomas_linear(f, ns, 11);
            let d = (24 as f64).exp2();
            let probs: Vec<f64> = xs.iter().map(|x| x / d).collect();
            let e = linear_xeb(&XebSample::new(24, probs)).unwrap();
            let sigma = theoretical_sigma(f, ns, Estimator::Linear);
            assert!(
                (e.value - f).abs() < 4.0 * sigma,
                "F={f}: estimate {} (sigma {sigma})",
                e.value
            );
        }
    }

    #[test]
    fn bootstrap_degenerate_sample() {
        let s = XebSample::new(4, vec![1.0 / 16.0; 500]);
        let b = bootstrap_sigma(&s, 200, 3, Estimator::Linear).unwrap();
        assert_eq!(b.sigma, 0.0);
    }

    #[test]
    fn bootstrap_seeds_agree_statistically() {
        let xs = sample_porter_thomas_linear(0.3, 20_000, 5);
        let d = (20 as f64).exp2();
        let probs: Vec<f64> = xs.iter().map(|x| x / d).collect();
        let s = XebSample::new(20, probs);
        let b1 = bootstrap_sigma(&s, 800, 100, Estimator::Linear).unwrap();
        let b2 = bootstrap_sigma(&s, 800, 200, Estimator::Linear).unwrap();
        // two-sample KS on the bootstrap distributions
        let mut all: Vec<(f64, bool)> = b1
            .estimates
            .iter()
            .map(|&x| (x, true))
            .chain(b2.estimates.iter().map(|&x| (x, false)))
            .collect();
        all.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let (n1, n2) = (b1.estimates.len() as f64, b2.estimates.len() as f64);
        let (mut c1, mut c2, mut dks) = (0.0, 0.0, 0.0f64);
        for (_, first) in all {
            if first {
                c1 += 1.0 / n1;
            } else {
                c2 += 1.0 / n2;
            }
            dks = dks.max((c1 - c2).abs());
        }
        let lambda = (n1 * n2 / (n1 + n2)).sqrt() * dks;
        let p = kolmogorov_q(lambda);
        assert!(p > 0.01, "KS p = {p}");
    }

    #[test]
    fn combine_instances_cases() {
        let e = |v: f64, s: f64| FidelityEstimate {
            value: v,
            sigma: s,
            estimator: Estimator::Linear,
        };
        let single = combine_instances(&[e(0.4, 0.1)]).unwrap();
        assert!((single.value - 0.4).abs() < 1e-15);
        assert!((single.sigma - 0.1).abs() < 1e-15);

        let two = combine_instances(&[e(1.0, 1.0), e(3.0, 1.0)]).unwrap();
        assert!((two.value - 2.0).abs() < 1e-12);
        assert!((two.sigma - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);

        let k = 16;
        let many: Vec<FidelityEstimate> = (0..k).map(|_| e(0.5, 0.2)).collect();
        let c = combine_instances(&many).unwrap();
        assert!((c.value - 0.5).abs() < 1e-12);
        assert!((c.sigma - 0.2 / (k as f64).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn predicted_fidelity_cases() {
        use crate::circuit::{generate_rqc, CircuitVariant, GateParams};
        use crate::lattice::{LatticeTopology, PatternSet};
        let t = LatticeTopology::full(2, 3);
        let p = PatternSet::canonical(&t);
        let c = generate_rqc(&t, &p, 4, 0, CircuitVariant::Full, &GateParams::default()).unwrap();
        let zero = ErrorBudget::uniform(&c, 0.0, 0.0, 0.0);
        assert!((predicted_fidelity(&c, &zero).unwrap() - 1.0).abs() < 1e-15);

        let mut missing = ErrorBudget::uniform(&c, 0.001, 0.005, 0.01);
        missing.e1.remove(&0);
        assert!(matches!(
            predicted_fidelity(&c, &missing),
            Err(Error::MissingBudget(_))
        ));

        // one two-qubit gate with e = 0.5 and nothing else
        let iswap = crate::gates::TwoQubitKind::ISwapLike(Default::default());
        let tiny = Circuit {
            version: crate::circuit::CIRCUIT_FORMAT_VERSION.into(),
            topology: LatticeTopology::full(1, 2),
            patterns: None,
            cycles: 1,
            seed: 0,
            variant: CircuitVariant::Full,
            qubit_order: LatticeTopology::full(1, 2).qubit_order(),
            layers: vec![Layer::Two {
                gates: vec![crate::circuit::TwoGate { a: 0, b: 1, kind: iswap }],
            }],
        };
        let mut budget = ErrorBudget::default();
        budget.e2.insert((0, 1), 0.5);
        budget.er.insert(0, 0.0);
        budget.er.insert(1, 0.0);
        assert!((predicted_fidelity(&tiny, &budget).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn uniform_budget_covers_position_pairs() {
        use crate::circuit::{generate_rqc, CircuitVariant, GateParams};
        use crate::lattice::{LatticeTopology, PatternSet};
        let t = LatticeTopology::full(3, 3);
        let p = PatternSet::canonical(&t);
        let c = generate_rqc(&t, &p, 8, 1, CircuitVariant::Full, &GateParams::default()).unwrap();
        let b = ErrorBudget::uniform(&c, 0.0014, 0.0059, 0.0452);
        let f = predicted_fidelity(&c, &b).unwrap();
        assert!(f > 0.0 && f < 1.0);
    }
}
