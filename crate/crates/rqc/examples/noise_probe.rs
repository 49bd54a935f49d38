use rqc::circuit::{generate_rqc, CircuitVariant, GateParams};
use rqc::lattice::{LatticeTopology, PatternSet};
use rqc::statevec::{ideal_probs, noisy_run, run, NoiseModel, StateVector, SvOptions};
use rqc::xeb::{predicted_fidelity, ErrorBudget};

fn measure(c: &rqc::Circuit, noise: &NoiseModel, seed: u64, t: usize) -> (f64, f64) {
    let state: StateVector = run(c, &SvOptions::default()).unwrap();
    let d = (c.n_qubits() as f64).exp2();
    let per = 100;
    let groups = noisy_run::<f64>(c, noise, seed, t, per, &SvOptions::default()).unwrap();
    let mut means = Vec::new();
    for g in &groups {
        let probs = ideal_probs(&state, g).unwrap();
        means.push(d * probs.iter().sum::<f64>() / per as f64 - 1.0);
    }
    let m = means.iter().sum::<f64>() / means.len() as f64;
    let var = means.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (means.len() as f64 - 1.0);
    (m, (var / means.len() as f64).sqrt())
}

fn main() {
    let noise = NoiseModel { e1: 0.0014, e2: 0.0059, er: 0.0452 };
    for (rows, cols, m, disc) in [(4usize, 3usize, 10usize, vec![]), (4, 3, 20, vec![]), (5, 3, 14, vec![(4usize, 2usize)]), (4, 4, 12, vec![])] {
        let t = LatticeTopology::with_discarded(rows, cols, &disc);
        let p = PatternSet::canonical(&t);
        let c = generate_rqc(&t, &p, m, 7, CircuitVariant::Full, &GateParams::default()).unwrap();
        let budget = ErrorBudget::uniform(&c, noise.e1, noise.e2, noise.er);
        let pred = predicted_fidelity(&c, &budget).unwrap();
        let (meas, s) = measure(&c, &noise, 11, 2000);
        println!(
            "{}q m={m}: measured {meas:.4} predicted {pred:.4} rel {:+.2}% z={:+.1}",
            c.n_qubits(), (meas / pred - 1.0) * 100.0, (meas - pred) / s
        );
    }
}
