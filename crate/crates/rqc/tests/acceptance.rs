//! Acceptance suite: one test per criterion, each printing a PASS line
//! with its measured numbers (run with `--nocapture` to see them).
//! Device-layout checks that depend on the unverified 56-qubit
//! transcription are reported as INFO rather than asserted.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rqc::circuit::{generate_rqc, CircuitVariant, CutSpec, GateParams, Layer};
use rqc::gates::ISwapLikeParams;
use rqc::lattice::{LatticeTopology, PatternSet, Pos};
use rqc::statevec::{ideal_probs, noisy_run, run, sample, NoiseModel, StateVector, SvOptions};
use rqc::xeb::{
    bootstrap_sigma, combine_instances, linear_xeb, log_xeb, theoretical_sigma, Estimator,
    FidelityEstimate, XebSample, EULER_GAMMA,
};
use std::collections::BTreeSet;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Independent dense oracle: every layer is built as a full 2^n x 2^n
/// matrix from Kronecker products (with an explicit qubit permutation) and
/// applied by dense matrix-vector multiplication.
fn dense_oracle(circuit: &rqc::Circuit) -> Vec<Complex64> {
    let n = circuit.n_qubits();
    let dim = 1usize << n;
    let mut state = vec![ZERO; dim];
    state[0] = ONE;

    let kron = |a: &[Complex64], da: usize, b: &[Complex64], db: usize| -> Vec<Complex64> {
        let d = da * db;
        let mut out = vec![ZERO; d * d];
        for i in 0..da {
            for j in 0..da {
                for k in 0..db {
                    for l in 0..db {
                        out[(i * db + k) * d + (j * db + l)] = a[i * da + j] * b[k * db + l];
                    }
                }
            }
        }
        out
    };
    let id2 = vec![ONE, ZERO, ZERO, ONE];

    for layer in &circuit.layers {
        let mut order: Vec<usize> = Vec::new();
        let mut mats: Vec<(Vec<Complex64>, usize)> = Vec::new();
        match layer {
            Layer::Single { gates } => {
                let mut by_q = std::collections::BTreeMap::new();
                for g in gates {
                    by_q.insert(g.q, g.g.matrix().to_vec());
                }
                for q in (0..n).rev() {
                    order.push(q);
                    mats.push((by_q.get(&q).cloned().unwrap_or_else(|| id2.clone()), 2));
                }
            }
            Layer::Two { gates } => {
                let mut used = vec![false; n];
                let mut gates = gates.clone();
                gates.sort_by_key(|g| (g.a, g.b));
                for g in &gates {
                    used[g.a] = true;
                    used[g.b] = true;
                    order.push(g.a);
                    order.push(g.b);
                    mats.push((g.kind.matrix().to_vec(), 4));
                }
                for q in (0..n).rev() {
                    if !used[q] {
                        order.push(q);
                        mats.push((id2.clone(), 2));
                    }
                }
            }
        }
        let mut m: Vec<Complex64> = vec![ONE];
        let mut d = 1usize;
        for (g, gd) in &mats {
            m = kron(&m, d, g, *gd);
            d *= gd;
        }
        assert_eq!(d, dim);
        let to_kron = |x: usize| -> usize {
            let mut y = 0usize;
            for (j, &q) in order.iter().enumerate() {
                y |= ((x >> q) & 1) << (n - 1 - j);
            }
            y
        };
        let mut permuted = vec![ZERO; dim];
        for x in 0..dim {
            permuted[to_kron(x)] = state[x];
        }
        let mut applied = vec![ZERO; dim];
        for (r, slot) in applied.iter_mut().enumerate() {
            let mut s = ZERO;
            for c in 0..dim {
                let v = m[r * dim + c];
                if v != ZERO {
                    s += v * permuted[c];
                }
            }
            *slot = s;
        }
        for x in 0..dim {
            state[x] = applied[to_kron(x)];
        }
    }
    state
}

fn max_amp_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0f64, f64::max)
}

/// Criterion 1: the state-vector engine matches the dense layer-matrix
/// oracle to 1e-10 on fifty random circuits with n <= 10, m <= 14.
#[test]
fn criterion_1_statevector_matches_dense_oracle() {
    let shapes = [(2, 2), (2, 3), (3, 3), (2, 4), (2, 5), (5, 2), (4, 2), (3, 2)];
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC1);
    let mut worst = 0.0f64;
    for i in 0..50 {
        let (rows, cols) = shapes[rng.gen_range(0..shapes.len())];
        let m = rng.gen_range(1..=14);
        let seed = rng.gen::<u64>();
        let t = LatticeTopology::full(rows, cols);
        let p = PatternSet::canonical(&t);
        let c = generate_rqc(&t, &p, m, seed, CircuitVariant::Full, &GateParams::default())
            .unwrap();
        let engine: StateVector = run(&c, &SvOptions::default()).unwrap();
        let d = max_amp_diff(&engine.amplitudes(), &dense_oracle(&c));
        worst = worst.max(d);
        assert!(d < 1e-10, "circuit {i} ({rows}x{cols}, m={m}): max deviation {d}");
    }
    println!("ACCEPTANCE 1: PASS - 50 circuits, max amplitude deviation {worst:.3e} < 1e-10");
}

fn balanced_staircase_cut(
    t: &LatticeTopology,
    rng: &mut ChaCha8Rng,
    max_imbalance: usize,
) -> CutSpec {
    loop {
        let thresholds: Vec<usize> = (0..t.cols).map(|_| rng.gen_range(0..=t.rows)).collect();
        let side1: BTreeSet<Pos> = t
            .active
            .iter()
            .copied()
            .filter(|&(r, c)| r < thresholds[c])
            .collect();
        let n1 = side1.len();
        let n2 = t.n_qubits() - n1;
        if n1 > 0 && n2 > 0 && n1.abs_diff(n2) <= max_imbalance {
            return CutSpec { side1 };
        }
    }
}

/// Criterion 2: full-mode path summation equals the state vector to 1e-10
/// on thirty random circuits with n in [8, 16], m in [6, 12] and random
/// balanced cuts, with and without boundary simplification.
#[test]
fn criterion_2_sfa_matches_statevector() {
    use rqc::sfa::{sfa_amplitudes, path_count, SfaMode, SfaOptions};
    let shapes = [(4, 2), (3, 3), (5, 2), (4, 3), (6, 2), (7, 2), (5, 3), (8, 2), (4, 4)];
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC2);
    let mut done = 0;
    let mut worst = 0.0f64;
    let mut n_seen = (usize::MAX, 0usize);
    let mut m_seen = (usize::MAX, 0usize);
    while done < 30 {
        let (rows, cols) = shapes[rng.gen_range(0..shapes.len())];
        let m = rng.gen_range(6..=12);
        let seed = rng.gen::<u64>();
        let t = LatticeTopology::full(rows, cols);
        let p = PatternSet::canonical(&t);
        // half the circuits use perturbed per-gate parameters
        let params = if done % 2 == 0 {
            GateParams::default()
        } else {
            GateParams {
                default: Some(ISwapLikeParams {
                    theta: std::f64::consts::FRAC_PI_2 - 0.036,
                    phi: std::f64::consts::FRAC_PI_6 + 0.05,
                    delta_plus: 0.11,
                    delta_minus: -0.23,
                    delta_minus_off: 0.07,
                }),
                per_edge: Default::default(),
            }
        };
        let c = generate_rqc(&t, &p, m, seed, CircuitVariant::Full, &params).unwrap();
        let cut = balanced_staircase_cut(&t, &mut rng, 2);
        // keep the enumeration tractable; redraw otherwise
        let (paths, _) = path_count(&c, &cut).unwrap();
        if paths > (1 << 18) {
            continue;
        }
        let n = c.n_qubits();
        let sv: StateVector = run(&c, &SvOptions::default()).unwrap();
        let sv_amps = sv.amplitudes();
        let mut queries: Vec<u64> = (0..256).map(|_| rng.gen_range(0..(1u64 << n))).collect();
        queries.push(0);
        queries.push((1u64 << n) - 1);
        let expect: Vec<Complex64> = queries.iter().map(|&b| sv_amps[b as usize]).collect();

        for simplify in [false, true] {
            let opts = SfaOptions { simplify_boundary: simplify, ..Default::default() };
            let out = sfa_amplitudes::<f64>(&c, &cut, &queries, SfaMode::Full, &opts).unwrap();
            let d = max_amp_diff(&out.amps, &expect);
            worst = worst.max(d);
            assert!(
                d < 1e-10,
                "circuit {done} ({rows}x{cols}, m={m}, simplify={simplify}): deviation {d}"
            );
        }
        n_seen = (n_seen.0.min(n), n_seen.1.max(n));
        m_seen = (m_seen.0.min(m), m_seen.1.max(m));
        done += 1;
    }
    assert!(n_seen.0 <= 9 && n_seen.1 >= 15, "qubit range covered: {n_seen:?}");
    assert!(m_seen.0 == 6 && m_seen.1 == 12, "cycle range covered: {m_seen:?}");
    println!(
        "ACCEPTANCE 2: PASS - 30 circuits (n in {n_seen:?}, m in {m_seen:?}), max deviation {worst:.3e} < 1e-10"
    );
}

fn deep_14q_circuit() -> rqc::Circuit {
    let t = LatticeTopology::with_discarded(5, 3, &[(4, 2)]);
    let p = PatternSet::canonical(&t);
    generate_rqc(&t, &p, 14, 0, CircuitVariant::Full, &GateParams::default()).unwrap()
}

/// Criterion 3: on a 14-qubit, 14-cycle circuit with 1e5 samples, the
/// ideal sampler scores within 4 sigma of 1 on both estimators and the
/// uniform sampler within 4 sigma of 0.
#[test]
fn criterion_3_xeb_sanity() {
    let c = deep_14q_circuit();
    let n = c.n_qubits();
    assert_eq!(n, 14);
    let state: StateVector = run(&c, &SvOptions::default()).unwrap();
    let ns = 100_000;

    let ideal_samples = sample(&state, ns, 1001);
    let probs = ideal_probs(&state, &ideal_samples).unwrap();
    let s = XebSample::new(n, probs);
    let f_lin = linear_xeb(&s).unwrap().value;
    let f_log = log_xeb(&s, None).unwrap().value;
    let s_lin = theoretical_sigma(1.0, ns, Estimator::Linear);
    let s_log = theoretical_sigma(1.0, ns, Estimator::Log);
    assert!((f_lin - 1.0).abs() < 4.0 * s_lin, "ideal linear {f_lin} vs 1 (sigma {s_lin})");
    assert!((f_log - 1.0).abs() < 4.0 * s_log, "ideal log {f_log} vs 1 (sigma {s_log})");

    let mut rng = ChaCha8Rng::seed_from_u64(1002);
    let uniform_samples: Vec<u64> = (0..ns).map(|_| rng.gen_range(0..(1u64 << n))).collect();
    let probs = ideal_probs(&state, &uniform_samples).unwrap();
    let s = XebSample::new(n, probs);
    let u_lin = linear_xeb(&s).unwrap().value;
    let u_log = log_xeb(&s, None).unwrap().value;
    let s_lin0 = theoretical_sigma(0.0, ns, Estimator::Linear);
    let s_log0 = theoretical_sigma(0.0, ns, Estimator::Log);
    assert!(u_lin.abs() < 4.0 * s_lin0, "uniform linear {u_lin} vs 0 (sigma {s_lin0})");
    assert!(u_log.abs() < 4.0 * s_log0, "uniform log {u_log} vs 0 (sigma {s_log0})");
    println!(
        "ACCEPTANCE 3: PASS - ideal sampler F_l={f_lin:.4} F_c={f_log:.4} (target 1), uniform F_l={u_lin:.4} F_c={u_log:.4} (target 0)"
    );
}

fn measured_xeb_under_noise(
    c: &rqc::Circuit,
    noise: &NoiseModel,
    seed: u64,
    trajectories: usize,
    per: usize,
) -> (f64, f64) {
    let state: StateVector = run(c, &SvOptions::default()).unwrap();
    let d = (c.n_qubits() as f64).exp2();
    let groups = noisy_run::<f64>(c, noise, seed, trajectories, per, &SvOptions::default())
        .unwrap();
    // per-trajectory estimates are independent, so their spread gives an
    // honest standard error even though samples share trajectories
    let mut means = Vec::with_capacity(trajectories);
    for g in &groups {
        let probs = ideal_probs(&state, g).unwrap();
        means.push(d * probs.iter().sum::<f64>() / per as f64 - 1.0);
    }
    let measured = means.iter().sum::<f64>() / means.len() as f64;
    let var = means.iter().map(|x| (x - measured) * (x - measured)).sum::<f64>()
        / (means.len() as f64 - 1.0);
    (measured, (var / means.len() as f64).sqrt())
}

/// Criterion 4: trajectory-noise simulation at the published mean error
/// rates matches the product fidelity model within 3 sigma over 2e5
/// samples on a 12-qubit, 10-cycle circuit.
///
/// This criterion does not hold at the pinned scale. A Pauli error only
/// erases a sample's XEB contribution once it scrambles into the bulk; at
/// 10 cycles a sizable share of errors land close enough to the readout
/// that correlations survive, and the measured XEB sits a reproducible
/// ~7% above the product model - about 4-5 sigma at the demanded
/// resolution (0.41 vs 0.38 here). The effect is depth-limited physics,
/// not an implementation defect: the same oracle agrees with the model
/// inside one sigma at 20 cycles (see the supporting test below), readout
/// noise alone agrees at any depth, and criterion 3 validates the
/// noiseless estimator chain. The check is kept exactly as specified and
/// reports the discrepancy.
#[test]
fn criterion_4_fidelity_product_model() {
    let t = LatticeTopology::full(4, 3);
    let p = PatternSet::canonical(&t);
    let c = generate_rqc(&t, &p, 10, 7, CircuitVariant::Full, &GateParams::default()).unwrap();
    let noise = NoiseModel { e1: 0.0014, e2: 0.0059, er: 0.0452 };
    let budget = rqc::xeb::ErrorBudget::uniform(&c, noise.e1, noise.e2, noise.er);
    let predicted = rqc::xeb::predicted_fidelity(&c, &budget).unwrap();
    let (measured, sigma) = measured_xeb_under_noise(&c, &noise, 404, 2000, 100);
    println!(
        "ACCEPTANCE 4: measured XEB {measured:.4} vs predicted {predicted:.4}, sigma {sigma:.4} (z = {:+.1})",
        (measured - predicted) / sigma
    );
    assert!(
        (measured - predicted).abs() < 3.0 * sigma,
        "measured {measured:.4} vs predicted {predicted:.4} is {:.1} sigma ({sigma:.4}); \
         at 10 cycles the surviving correlations of late Pauli errors keep the sampled XEB \
         ~7% above the product model, so the stated scale cannot meet the stated tolerance \
         (the same oracle passes within 3 sigma at 20 cycles)",
        (measured - predicted).abs() / sigma
    );
}

/// Supporting evidence for criterion 4's analysis: at twice the depth the
/// same trajectory oracle and the same error rates agree with the product
/// model within 3 sigma.
#[test]
fn criterion_4_supporting_product_model_converges_with_depth() {
    let t = LatticeTopology::full(4, 3);
    let p = PatternSet::canonical(&t);
    let c = generate_rqc(&t, &p, 20, 7, CircuitVariant::Full, &GateParams::default()).unwrap();
    let noise = NoiseModel { e1: 0.0014, e2: 0.0059, er: 0.0452 };
    let budget = rqc::xeb::ErrorBudget::uniform(&c, noise.e1, noise.e2, noise.er);
    let predicted = rqc::xeb::predicted_fidelity(&c, &budget).unwrap();
    let (measured, sigma) = measured_xeb_under_noise(&c, &noise, 404, 2000, 100);
    assert!(
        (measured - predicted).abs() < 3.0 * sigma,
        "12q/20c: measured {measured:.4} vs predicted {predicted:.4} (sigma {sigma:.4})"
    );
    println!(
        "ACCEPTANCE 4 (supporting): PASS - 12q/20c measured {measured:.4} vs predicted {predicted:.4} within 3 sigma ({sigma:.4})"
    );
}

/// Criterion 5: theoretical, bootstrap and Gaussian-fit sigmas agree
/// within 3% on synthetic Porter-Thomas data at F = 0.3.
#[test]
fn criterion_5_sigma_agreement() {
    let ns = 100_000;
    let xs = rqc::xeb::sample_porter_thomas_linear(0.3, ns, 505);
    let n = 24;
    let d = (n as f64).exp2();
    let probs: Vec<f64> = xs.iter().map(|x| x / d).collect();
    let sample = XebSample::new(n, probs);
    let estimate = linear_xeb(&sample).unwrap();
    let theoretical = theoretical_sigma(0.3, ns, Estimator::Linear);
    let boot = bootstrap_sigma(&sample, 2500, 42, Estimator::Linear).unwrap();

    let rel = |a: f64, b: f64| (a - b).abs() / b.abs();
    let pairs = [
        ("theoretical vs bootstrap", theoretical, boot.sigma),
        ("theoretical vs gaussian-fit", theoretical, boot.gaussian_fit_sigma),
        ("bootstrap vs gaussian-fit", boot.sigma, boot.gaussian_fit_sigma),
    ];
    for (name, a, b) in pairs {
        assert!(rel(a, b) < 0.03, "{name}: {a:.6e} vs {b:.6e} ({:.2}%)", rel(a, b) * 100.0);
    }
    println!(
        "ACCEPTANCE 5: PASS - F={:.4}, sigmas theoretical {theoretical:.4e} / bootstrap {:.4e} / fit {:.4e} within 3%",
        estimate.value, boot.sigma, boot.gaussian_fit_sigma
    );
}

/// Criterion 6a: the closed-form linear-XEB uncertainty reproduces the
/// published 7.2e-5 at F = 6.62e-4, Ns = 1.9e8 within 1%.
#[test]
fn criterion_6_sigma_linear_constant() {
    let s = theoretical_sigma(6.62e-4, 190_000_000, Estimator::Linear);
    let rel = (s - 7.2e-5).abs() / 7.2e-5;
    assert!(rel < 0.01, "sigma_Fl {s:.4e} vs 7.2e-5 ({:.2}% off)", rel * 100.0);
    println!("ACCEPTANCE 6a: PASS - sigma_Fl = {s:.4e} vs 7.2e-5 ({:.2}% off)", rel * 100.0);
}

/// Criterion 6b: the corresponding log-XEB constant 9.2e-5.
///
/// At the stated inputs the closed form gives
/// sqrt((pi^2/6 - F^2) / 1.9e8) = 9.3046e-5, which is 1.14% from the
/// published 9.2e-5 and so fails the 1% gate. The published value is
/// consistent with the formula at Ns ~ 1.943e8 (the experiment's actual
/// sample count, quoted only as "approximately 1.9e7" per instance), and
/// the linear-XEB constant confirms the formula itself. The stated inputs
/// and the stated tolerance cannot both hold; the check is kept as
/// specified and reports the discrepancy.
#[test]
fn criterion_6_sigma_log_constant() {
    let s = theoretical_sigma(6.62e-4, 190_000_000, Estimator::Log);
    let rel = (s - 9.2e-5).abs() / 9.2e-5;
    let at_actual_ns = theoretical_sigma(6.62e-4, 194_340_000, Estimator::Log);
    println!(
        "ACCEPTANCE 6b: sigma_Fc = {s:.4e} vs 9.2e-5 ({:.2}% off); formula gives {at_actual_ns:.4e} at Ns = 1.9434e8",
        rel * 100.0
    );
    assert!(
        rel < 0.01,
        "sigma_Fc {s:.4e} is {:.2}% from 9.2e-5 at Ns = 1.9e8; the published value \
         corresponds to Ns ~ 1.943e8 (9.2e-5 needs that sample count), so the stated \
         inputs cannot reproduce it within 1%",
        rel * 100.0
    );
}

/// Criterion 6c: inverse-variance combination across ten synthetic
/// instances shrinks the uncertainty as 1/sqrt(10) around the target
/// fidelity (substitute for the unavailable per-instance digitization).
#[test]
fn criterion_6_combined_fidelity_synthetic() {
    let sigma_single = theoretical_sigma(6.62e-4, 19_000_000, Estimator::Linear);
    let mut rng = ChaCha8Rng::seed_from_u64(66);
    let estimates: Vec<FidelityEstimate> = (0..10)
        .map(|_| {
            // deterministic draws clustered around the target
            let wobble: f64 = rng.gen::<f64>() - 0.5;
            FidelityEstimate {
                value: 6.62e-4 + wobble * sigma_single,
                sigma: sigma_single,
                estimator: Estimator::Linear,
            }
        })
        .collect();
    let combined = combine_instances(&estimates).unwrap();
    let expected_sigma = sigma_single / 10f64.sqrt();
    assert!((combined.sigma - expected_sigma).abs() < 1e-12 * expected_sigma.max(1.0));
    assert!((combined.value - 6.62e-4).abs() < 3.0 * combined.sigma);
    assert!(combined.z_score > 3.0, "combined z = {}", combined.z_score);
    println!(
        "ACCEPTANCE 6c: PASS - combined F = ({:.3} +- {:.3})e-4, sigma shrank by sqrt(10), z = {:.1}",
        combined.value * 1e4,
        combined.sigma * 1e4,
        combined.z_score
    );
}

/// Criterion 7: the closed-form cost accounting reproduces the published
/// core-hour, calendar-year and floating-point totals within 1%.
#[test]
fn criterion_7_cost_tables() {
    use rqc::cost::{sfa_core_hours, tn_cost_scaling, TnReference, HOURS_PER_YEAR};
    let cores = 7_630_848.0;
    let close = |a: f64, b: f64| (a - b).abs() / b.abs() < 0.01;

    // 56q/20c balanced: 4^34 x 2 prefix runs of 19560 s on two
    // hyperthreads per core
    let ch = sfa_core_hours(2.0 * 4.0f64.powi(34), 6.62e-4, 19560.0, 2.0, cores);
    assert!(close(ch.core_hours, 1.06e18), "core-hours {}", ch.core_hours);
    assert!(close(ch.calendar_years, 15_887_738.0), "years {}", ch.calendar_years);

    // 53q/20c and the imbalanced 56q cut, pinned by their core-hour totals
    let years_53 = 8.90e13 / (cores * HOURS_PER_YEAR);
    assert!(close(years_53, 1332.0), "53q years {years_53}");
    let years_imb = 5.76e17 / (cores * HOURS_PER_YEAR);
    assert!(close(years_imb, 8_612_623.0), "imbalanced years {years_imb}");

    // tensor-network totals
    let reference = TnReference::default();
    let ours = tn_cost_scaling(1.65e20, 1.9e7, 6.62e-4, &reference).unwrap();
    assert!(close(ours.total_flops, 2.08e24), "flops {}", ours.total_flops);
    assert!(close(ours.summit_seconds / (HOURS_PER_YEAR * 3600.0), 8.24));
    let prior = tn_cost_scaling(1.63e18, 3e6, 2.24e-3, &reference).unwrap();
    assert!(close(prior.total_flops, 1.10e22), "flops {}", prior.total_flops);
    assert!(close(prior.summit_seconds / 86400.0, 15.9));

    println!(
        "ACCEPTANCE 7: PASS - {:.3e} core-hours / {:.0} y / {:.0} y / {:.0} y; TN {:.3e} and {:.3e} flops -> {:.1} d and {:.2} y",
        ch.core_hours,
        ch.calendar_years,
        years_53,
        years_imb,
        prior.total_flops,
        ours.total_flops,
        prior.summit_seconds / 86400.0,
        ours.summit_seconds / (HOURS_PER_YEAR * 3600.0)
    );
}

/// Criterion 8: Schmidt spectra match an independent SVD of the realigned
/// gate matrix on 200 random parameter pairs; the balanced gate has unit
/// spectrum; truncation speedups behave as published.
#[test]
fn criterion_8_schmidt_and_speedup() {
    use nalgebra::{Complex, Matrix4};
    use rqc::gates::TwoQubitKind;
    use rqc::sfa::schmidt::schmidt_decompose;

    let mut rng = ChaCha8Rng::seed_from_u64(0xACC8);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let theta = rng.gen::<f64>() * std::f64::consts::PI;
        let phi = rng.gen::<f64>() * 2.0 * std::f64::consts::PI;
        let params = ISwapLikeParams {
            theta,
            phi,
            delta_plus: rng.gen::<f64>() - 0.5,
            delta_minus: rng.gen::<f64>() - 0.5,
            delta_minus_off: rng.gen::<f64>() - 0.5,
        };
        let kind = TwoQubitKind::ISwapLike(params);
        let u = kind.matrix();
        let mut m = Matrix4::<Complex<f64>>::zeros();
        for i in 0..2 {
            for ip in 0..2 {
                for j in 0..2 {
                    for jp in 0..2 {
                        let v = u[(i * 2 + j) * 4 + (ip * 2 + jp)];
                        m[(i * 2 + ip, j * 2 + jp)] = Complex::new(v.re, v.im);
                    }
                }
            }
        }
        let mut oracle: Vec<f64> = m.svd(false, false).singular_values.iter().copied().collect();
        oracle.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let mut ours = schmidt_decompose(&kind).lambdas();
        ours.resize(4, 0.0);
        for k in 0..4 {
            let d = (ours[k] - oracle[k]).abs();
            worst = worst.max(d);
            assert!(d < 1e-10, "theta={theta} phi={phi} term {k}: {d}");
        }
    }

    let balanced = schmidt_decompose(&TwoQubitKind::ISwapLike(ISwapLikeParams::new(
        std::f64::consts::FRAC_PI_2,
        0.77,
    )));
    for l in balanced.lambdas() {
        assert!((l - 1.0).abs() < 1e-12);
    }

    let s_bal =
        rqc::cost::imbalanced_speedup(0.0, std::f64::consts::FRAC_PI_6, 42, 6.62e-4).unwrap();
    assert!((s_bal - 1.0).abs() < 1e-9, "balanced speedup {s_bal}");
    let s_paper =
        rqc::cost::imbalanced_speedup(0.036, std::f64::consts::FRAC_PI_6, 42, 6.62e-4).unwrap();
    assert!(s_paper > 1.0 && s_paper < 10.0, "paper-setting speedup {s_paper}");
    println!(
        "ACCEPTANCE 8: PASS - 200 spectra within {worst:.3e} of SVD oracle; balanced speedup {s_bal:.6}, paper setting {s_paper:.2}"
    );
}

/// Criterion 9: the exhaustive staircase search matches a brute-force
/// scan of every bipartition on small lattices, and the effective-gate
/// identity holds on every report. The 56-qubit layout check is
/// informational (the transcription is unverified).
#[test]
fn criterion_9_cut_optimizer() {
    use rqc::cutopt::{count_formations, search_optimal_cut, SearchStrategy};
    use rqc::statevec::lower;

    let mut rng = ChaCha8Rng::seed_from_u64(0xACC9);
    for (rows, cols) in [(2, 2), (2, 3), (2, 4)] {
        for m in [4, 8] {
            let t = LatticeTopology::full(rows, cols);
            let p = PatternSet::canonical(&t);
            let seed = rng.gen::<u64>();
            let c = generate_rqc(&t, &p, m, seed, CircuitVariant::Full, &GateParams::default())
                .unwrap();
            let imb = 2;
            let (_, report) = search_optimal_cut(&c, imb, SearchStrategy::Exhaustive).unwrap();

            // brute-force oracle over every bipartition
            let n = c.n_qubits();
            let ops = lower(&c);
            let mut best = i64::MAX;
            for mask in 1u32..((1 << n) - 1) {
                let n1 = mask.count_ones() as usize;
                if n1.abs_diff(n - n1) > imb {
                    continue;
                }
                let member: Vec<bool> = (0..n).map(|q| (mask >> q) & 1 == 1).collect();
                let r = rqc::cutopt::count_formations_ops(&ops, &|a, b| member[a] != member[b]);
                // identity check on every oracle report
                assert_eq!(
                    r.l_times_two(),
                    2 * (r.g_cut as i64 - r.g_wedge as i64 - r.g_dcd as i64)
                        - r.g_startend as i64
                );
                best = best.min(r.l_times_two());
            }
            assert_eq!(
                report.l_times_two(),
                best,
                "{rows}x{cols} m={m}: staircase optimum differs from brute force"
            );
        }
    }

    // informational: transcribed 56-qubit device at 20 cycles
    let (t, p) = rqc::lattice::zuchongzhi56();
    let c = generate_rqc(&t, &p, 20, 0, CircuitVariant::Full, &GateParams::default()).unwrap();
    let (cut, report) =
        search_optimal_cut(&c, 20, SearchStrategy::Exhaustive).unwrap();
    let check = count_formations(&c, &cut).unwrap();
    assert_eq!(check, report);
    let (paths, ranks) = rqc::sfa::path_count(&c, &cut).unwrap();
    let r2 = ranks.iter().filter(|&&r| r == 2).count();
    let r4 = ranks.iter().filter(|&&r| r == 4).count();
    println!(
        "ACCEPTANCE 9: PASS - exhaustive = brute force on small lattices; identity holds. \
         INFO (unverified transcription): device cut {}/{}, g_cut {}, wedge {}, dcd {}, boundary {}, L {}, paths 4^{} x 2^{} = {} \
         (published: 32/24, 42 cross gates, 4 boundary, 4^38 x 2^4)",
        cut.side1.len(),
        56 - cut.side1.len(),
        report.g_cut,
        report.g_wedge,
        report.g_dcd,
        report.g_startend,
        report.l(),
        r4,
        r2,
        paths
    );
}

/// Porter-Thomas cross-check used by criterion 3's oracle chain: the
/// exact collision value of the deep 14-qubit state sits near 1.
#[test]
fn deep_circuit_collision_number_near_unity() {
    let c = deep_14q_circuit();
    let s: StateVector = run(&c, &SvOptions::default()).unwrap();
    let d = s.len() as f64;
    let sum_p2: f64 = s.probabilities().iter().map(|p| p * p).sum();
    let f_true = d * sum_p2 - 1.0;
    assert!((f_true - 1.0).abs() < 0.02, "collision XEB {f_true}");
    let log_true: f64 = s
        .probabilities()
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * (d * p).ln())
        .sum::<f64>()
        + EULER_GAMMA
        - 1.0;
    assert!(log_true.abs() < 0.02, "log collision deviation {log_true}");
}
