//! Full state-vector (Schrodinger) simulation: gate application, gate
//! fusion, amplitude/probability queries, bitstring sampling and Pauli
//! trajectory noise.
//!
//! Qubit 0 is the least significant bit of the basis index. Gate kernels
//! partition the amplitude array into independent groups, so parallel
//! application performs no cross-thread reductions and results are
//! bit-stable for any worker count.

use crate::circuit::{Circuit, Layer};
use crate::error::{Error, Result};
use crate::gates::{Mat2, Mat4, TwoQubitKind, C, ZERO};
use num_complex::Complex;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Floating-point precision of the amplitude array.
pub trait Precision:
    num_traits::Float + num_traits::FromPrimitive + Send + Sync + std::fmt::Debug + 'static
{
    const NAME: &'static str;
    const BYTES: usize;
    /// Norm tolerance after a layer of unitaries.
    const NORM_TOL: f64;
    fn of(x: f64) -> Self;
    fn as_f64(self) -> f64;
}

impl Precision for f32 {
    const NAME: &'static str = "f32";
    const BYTES: usize = 4;
    const NORM_TOL: f64 = 1e-6;
    fn of(x: f64) -> f32 {
        x as f32
    }
    fn as_f64(self) -> f64 {
        self as f64
    }
}

impl Precision for f64 {
    const NAME: &'static str = "f64";
    const BYTES: usize = 8;
    const NORM_TOL: f64 = 1e-12;
    fn of(x: f64) -> f64 {
        x
    }
    fn as_f64(self) -> f64 {
        self
    }
}

/// Default memory cap: a 30-qubit double-precision state (16 GiB).
pub const DEFAULT_MEMORY_CAP_BYTES: u128 = 16 * (1 << 30);

/// Engine options shared by `run`, `noisy_run` and the SFA patch states.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SvOptions {
    pub memory_cap_bytes: u128,
    /// Fuse gates into blocks of up to this many qubits before applying.
    /// `None` disables fusion.
    pub fuse_max_targets: Option<usize>,
}

impl Default for SvOptions {
    fn default() -> SvOptions {
        SvOptions {
            memory_cap_bytes: DEFAULT_MEMORY_CAP_BYTES,
            fuse_max_targets: Some(4),
        }
    }
}

impl SvOptions {
    pub fn check_memory<P: Precision>(&self, n: usize) -> Result<()> {
        // 2^n amplitudes, two floats each: 2^(n+1) * sizeof(float) bytes.
        let required = (1u128 << (n + 1)) * P::BYTES as u128;
        if required > self.memory_cap_bytes {
            return Err(Error::MemoryCap {
                n,
                float_bytes: P::BYTES,
                required,
                cap: self.memory_cap_bytes,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct StateVector<P: Precision = f64> {
    n: usize,
    amps: Vec<Complex<P>>,
}

const PAR_MIN_QUBITS: usize = 14;

impl<P: Precision> StateVector<P> {
    /// |0...0> on `n` qubits.
    pub fn zero(n: usize) -> StateVector<P> {
        let mut amps = vec![Complex::new(P::zero(), P::zero()); 1 << n];
        amps[0] = Complex::new(P::one(), P::zero());
        StateVector { n, amps }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn amp(&self, index: u64) -> C {
        let a = self.amps[index as usize];
        C::new(a.re.as_f64(), a.im.as_f64())
    }

    pub fn amplitudes(&self) -> Vec<C> {
        self.amps.iter().map(|a| C::new(a.re.as_f64(), a.im.as_f64())).collect()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps
            .iter()
            .map(|a| a.re.as_f64() * a.re.as_f64() + a.im.as_f64() * a.im.as_f64())
            .sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps
            .iter()
            .map(|a| a.re.as_f64() * a.re.as_f64() + a.im.as_f64() * a.im.as_f64())
            .collect()
    }

    /// Applies a k-qubit gate given as a row-major 2^k x 2^k matrix.
    /// Targets are listed most-significant first, matching the matrix
    /// sub-index convention.
    pub fn apply(&mut self, targets: &[usize], matrix: &[C]) {
        let k = targets.len();
        debug_assert_eq!(matrix.len(), (1 << k) * (1 << k));
        debug_assert!(targets.iter().all(|&t| t < self.n));
        match k {
            1 => self.apply1(targets[0], matrix),
            2 => self.apply2(targets[0], targets[1], matrix),
            _ => self.apply_k(targets, matrix),
        }
    }

    fn apply1(&mut self, t: usize, m: &[C]) {
        let m: [C; 4] = [m[0], m[1], m[2], m[3]];
        let bit = 1usize << t;
        let groups = self.amps.len() >> 1;
        // arithmetic in f64 regardless of the storage precision, so the
        // rounding of gate constants does not bias the norm
        let work = |amps: &mut [Complex<P>], range: std::ops::Range<usize>| {
            for g in range {
                let base = ((g >> t) << (t + 1)) | (g & (bit - 1));
                let i0 = base;
                let i1 = base | bit;
                let a0 = up(amps[i0]);
                let a1 = up(amps[i1]);
                amps[i0] = conv(m[0] * a0 + m[1] * a1);
                amps[i1] = conv(m[2] * a0 + m[3] * a1);
            }
        };
        if self.n >= PAR_MIN_QUBITS {
            par_groups(&mut self.amps, groups, work);
        } else {
            work(&mut self.amps, 0..groups);
        }
    }

    fn apply2(&mut self, ta: usize, tb: usize, m: &[C]) {
        let m: Vec<C> = m.to_vec();
        // ta supplies the MSB of the 2-bit sub-index
        let (hi, lo) = (ta.max(tb), ta.min(tb));
        let bit_a = 1u64 << ta;
        let bit_b = 1u64 << tb;
        let groups = self.amps.len() >> 2;
        let work = |amps: &mut [Complex<P>], range: std::ops::Range<usize>| {
            for g in range {
                let mut base = g as u64;
                // insert zero bits at lo then hi
                base = ((base >> lo) << (lo + 1)) | (base & ((1 << lo) - 1));
                base = ((base >> hi) << (hi + 1)) | (base & ((1 << hi) - 1));
                let i00 = base as usize;
                let i01 = (base | bit_b) as usize;
                let i10 = (base | bit_a) as usize;
                let i11 = (base | bit_a | bit_b) as usize;
                let a = [up(amps[i00]), up(amps[i01]), up(amps[i10]), up(amps[i11])];
                let idx = [i00, i01, i10, i11];
                for r in 0..4 {
                    let mut s = ZERO;
                    for c in 0..4 {
                        s += m[r * 4 + c] * a[c];
                    }
                    amps[idx[r]] = conv(s);
                }
            }
        };
        if self.n >= PAR_MIN_QUBITS {
            par_groups(&mut self.amps, groups, work);
        } else {
            work(&mut self.amps, 0..groups);
        }
    }

    fn apply_k(&mut self, targets: &[usize], matrix: &[C]) {
        let k = targets.len();
        let dim = 1usize << k;
        let mut sorted: Vec<usize> = targets.to_vec();
        sorted.sort_unstable();
        // bit of each sub-index position; targets[0] is the MSB
        let bits: Vec<u64> = targets.iter().map(|&t| 1u64 << t).collect();
        let groups = self.amps.len() >> k;
        let work = |amps: &mut [Complex<P>], range: std::ops::Range<usize>| {
            let mut gathered = vec![ZERO; dim];
            let mut indices = vec![0usize; dim];
            for g in range {
                let mut base = g as u64;
                for &t in &sorted {
                    base = ((base >> t) << (t + 1)) | (base & ((1 << t) - 1));
                }
                for (s, idx_slot) in indices.iter_mut().enumerate() {
                    let mut idx = base;
                    for (j, bit) in bits.iter().enumerate() {
                        if (s >> (k - 1 - j)) & 1 == 1 {
                            idx |= bit;
                        }
                    }
                    *idx_slot = idx as usize;
                    gathered[s] = up(amps[idx as usize]);
                }
                for r in 0..dim {
                    let mut s = ZERO;
                    for c in 0..dim {
                        s += matrix[r * dim + c] * gathered[c];
                    }
                    amps[indices[r]] = conv(s);
                }
            }
        };
        if self.n >= PAR_MIN_QUBITS {
            par_groups(&mut self.amps, groups, work);
        } else {
            work(&mut self.amps, 0..groups);
        }
    }
}

fn conv<P: Precision>(x: C) -> Complex<P> {
    Complex::new(P::of(x.re), P::of(x.im))
}

fn up<P: Precision>(x: Complex<P>) -> C {
    C::new(x.re.as_f64(), x.im.as_f64())
}

/// Runs `work` on disjoint group ranges in parallel. Each group addresses a
/// disjoint set of amplitude indices, so the unsafe shared access is sound.
fn par_groups<P: Precision>(
    amps: &mut [Complex<P>],
    groups: usize,
    work: impl Fn(&mut [Complex<P>], std::ops::Range<usize>) + Sync,
) {
    struct Ptr<P>(*mut Complex<P>, usize);
    unsafe impl<P> Send for Ptr<P> {}
    unsafe impl<P> Sync for Ptr<P> {}
    impl<P> Ptr<P> {
        fn slice(&self) -> (*mut Complex<P>, usize) {
            (self.0, self.1)
        }
    }
    let ptr = Ptr(amps.as_mut_ptr(), amps.len());
    let chunk = (groups / (rayon::current_num_threads() * 8)).max(1024);
    let ranges: Vec<std::ops::Range<usize>> = (0..groups)
        .step_by(chunk)
        .map(|s| s..(s + chunk).min(groups))
        .collect();
    ranges.into_par_iter().for_each(|r| {
        // SAFETY: every group index maps to a unique set of amplitude
        // indices, and group ranges are disjoint.
        let (raw, len) = ptr.slice();
        let slice = unsafe { std::slice::from_raw_parts_mut(raw, len) };
        work(slice, r);
    });
}

/// An op in the flattened gate stream.
#[derive(Clone, Debug)]
pub enum Op {
    One { q: usize, m: Mat2 },
    Two { a: usize, b: usize, kind: TwoQubitKind },
}

impl Op {
    pub fn targets(&self) -> Vec<usize> {
        match self {
            Op::One { q, .. } => vec![*q],
            Op::Two { a, b, .. } => vec![*a, *b],
        }
    }
}

/// Flattens a circuit's layers into an ordered op list.
pub fn lower(circuit: &Circuit) -> Vec<Op> {
    let mut ops = Vec::new();
    for layer in &circuit.layers {
        match layer {
            Layer::Single { gates } => {
                let mut gates = gates.clone();
                gates.sort_by_key(|g| g.q);
                for g in gates {
                    ops.push(Op::One {
                        q: g.q,
                        m: g.g.matrix(),
                    });
                }
            }
            Layer::Two { gates } => {
                let mut gates = gates.clone();
                gates.sort_by_key(|g| (g.a, g.b));
                for g in gates {
                    ops.push(Op::Two {
                        a: g.a,
                        b: g.b,
                        kind: g.kind,
                    });
                }
            }
        }
    }
    ops
}

fn apply_op<P: Precision>(state: &mut StateVector<P>, op: &Op) {
    match op {
        Op::One { q, m } => state.apply(&[*q], m),
        Op::Two { a, b, kind } => {
            let m: Mat4 = kind.matrix();
            state.apply(&[*a, *b], &m)
        }
    }
}

/// A gate block produced by fusion: at most `f` targets with a dense
/// 2^f x 2^f unitary.
#[derive(Clone, Debug)]
pub struct FusedGate {
    /// Sorted ascending; position in this list is the sub-index bit,
    /// most significant first.
    pub targets: Vec<usize>,
    pub matrix: Vec<C>,
}

impl FusedGate {
    pub fn dim(&self) -> usize {
        1 << self.targets.len()
    }
}

/// Expands `m` over `from` targets to the `to` target set (both sorted by
/// the caller's sub-index convention: first target = MSB).
fn expand_matrix(m: &[C], from: &[usize], to: &[usize]) -> Vec<C> {
    let kd = to.len();
    let dim = 1 << kd;
    // position of each `from` target inside `to`
    let pos: Vec<usize> = from
        .iter()
        .map(|t| to.iter().position(|u| u == t).unwrap())
        .collect();
    let sub_of = |s: usize| -> usize {
        let mut sub = 0usize;
        for (j, &p) in pos.iter().enumerate() {
            let bit = (s >> (kd - 1 - p)) & 1;
            sub |= bit << (from.len() - 1 - j);
        }
        sub
    };
    let rest_of = |s: usize| -> usize {
        let mut rest = 0usize;
        let mut out_bit = 0;
        for p in 0..kd {
            if !pos.contains(&p) {
                rest |= ((s >> (kd - 1 - p)) & 1) << out_bit;
                out_bit += 1;
            }
        }
        rest
    };
    let fdim = 1 << from.len();
    let mut out = vec![ZERO; dim * dim];
    for r in 0..dim {
        for c in 0..dim {
            if rest_of(r) == rest_of(c) {
                out[r * dim + c] = m[sub_of(r) * fdim + sub_of(c)];
            }
        }
    }
    out
}

/// Greedy gate fusion: consecutive gates are merged while their combined
/// target set stays within `max_targets`. Applying the fused list in order
/// is equivalent to applying the original gates in order.
pub fn fuse_ops(ops: &[Op], max_targets: usize) -> Vec<FusedGate> {
    assert!(max_targets >= 2, "fusion needs max_targets >= 2");
    struct Block {
        targets: Vec<usize>, // sorted
        matrix: Vec<C>,
        stamp: usize,
    }
    let mut open: Vec<Block> = Vec::new();
    let mut out: Vec<(usize, FusedGate)> = Vec::new();
    let mut stamp = 0usize;

    for op in ops {
        let qs = op.targets();
        let involved: Vec<usize> = open
            .iter()
            .enumerate()
            .filter(|(_, b)| qs.iter().any(|q| b.targets.contains(q)))
            .map(|(i, _)| i)
            .collect();
        let mut union: Vec<usize> = qs.clone();
        for &i in &involved {
            union.extend(open[i].targets.iter().copied());
        }
        union.sort_unstable();
        union.dedup();

        let op_matrix: Vec<C> = match op {
            Op::One { m, .. } => m.to_vec(),
            Op::Two { kind, .. } => kind.matrix().to_vec(),
        };

        if union.len() <= max_targets {
            // merge involved blocks and the op into one open block
            let mut matrix: Vec<C> = {
                let dim = 1 << union.len();
                let mut id = vec![ZERO; dim * dim];
                for i in 0..dim {
                    id[i * dim + i] = C::new(1.0, 0.0);
                }
                id
            };
            let mut blocks: Vec<Block> = Vec::new();
            for &i in involved.iter().rev() {
                blocks.push(open.swap_remove(i));
            }
            blocks.sort_by_key(|b| b.stamp);
            for b in &blocks {
                let exp = expand_matrix(&b.matrix, &b.targets, &union);
                matrix = crate::gates::mat_mul(&exp, &matrix, 1 << union.len());
            }
            let exp = expand_matrix(&op_matrix, &qs, &union);
            matrix = crate::gates::mat_mul(&exp, &matrix, 1 << union.len());
            open.push(Block {
                targets: union,
                matrix,
                stamp,
            });
        } else {
            // flush involved blocks, then open a fresh block for the op
            let mut blocks: Vec<Block> = Vec::new();
            for &i in involved.iter().rev() {
                blocks.push(open.swap_remove(i));
            }
            blocks.sort_by_key(|b| b.stamp);
            for b in blocks {
                out.push((
                    b.stamp,
                    FusedGate {
                        targets: b.targets,
                        matrix: b.matrix,
                    },
                ));
            }
            let mut sorted = qs.clone();
            sorted.sort_unstable();
            let matrix = expand_matrix(&op_matrix, &qs, &sorted);
            open.push(Block {
                targets: sorted,
                matrix,
                stamp,
            });
        }
        stamp += 1;
    }
    for b in open {
        out.push((
            b.stamp,
            FusedGate {
                targets: b.targets,
                matrix: b.matrix,
            },
        ));
    }
    out.sort_by_key(|(s, _)| *s);
    out.into_iter().map(|(_, g)| g).collect()
}

/// Fuses a circuit's gate stream into blocks of at most `max_targets`
/// qubits.
pub fn fuse(circuit: &Circuit, max_targets: usize) -> Vec<FusedGate> {
    fuse_ops(&lower(circuit), max_targets)
}

/// Simulates the circuit from |0...0>.
pub fn run<P: Precision>(circuit: &Circuit, opts: &SvOptions) -> Result<StateVector<P>> {
    let n = circuit.n_qubits();
    opts.check_memory::<P>(n)?;
    let mut state = StateVector::<P>::zero(n);
    match opts.fuse_max_targets {
        Some(f) if f >= 2 => {
            for g in fuse(circuit, f.min(n.max(2))) {
                state.apply(&g.targets, &g.matrix);
            }
        }
        _ => {
            for op in lower(circuit) {
                apply_op(&mut state, &op);
            }
        }
    }
    Ok(state)
}

/// Ideal probabilities of the queried bitstrings.
pub fn ideal_probs<P: Precision>(state: &StateVector<P>, bitstrings: &[u64]) -> Result<Vec<f64>> {
    let n = state.n_qubits();
    let lim = 1u64 << n;
    bitstrings
        .iter()
        .map(|&b| {
            if b >= lim {
                Err(Error::BitstringOutOfRange { bits: b, n })
            } else {
                Ok(state.amp(b).norm_sqr())
            }
        })
        .collect()
}

/// Draws i.i.d. bitstring samples from |amps|^2.
///
/// Uniform variates are drawn in order from a seeded stream, then matched
/// against the cumulative distribution in a single sorted sweep, so the
/// result only depends on the seed.
pub fn sample<P: Precision>(state: &StateVector<P>, n_samples: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let us: Vec<f64> = (0..n_samples).map(|_| rng.gen::<f64>()).collect();
    sample_with_uniforms(state, &us)
}

fn sample_with_uniforms<P: Precision>(state: &StateVector<P>, us: &[f64]) -> Vec<u64> {
    let mut order: Vec<usize> = (0..us.len()).collect();
    order.sort_by(|&i, &j| us[i].partial_cmp(&us[j]).unwrap());
    let mut out = vec![0u64; us.len()];
    let mut cum = 0.0f64;
    let mut k = 0usize;
    for (idx, a) in state.amps.iter().enumerate() {
        if k == order.len() {
            break;
        }
        cum += a.re.as_f64() * a.re.as_f64() + a.im.as_f64() * a.im.as_f64();
        while k < order.len() && us[order[k]] < cum {
            out[order[k]] = idx as u64;
            k += 1;
        }
    }
    // rounding can leave the tail of the cumulative sum short of 1
    while k < order.len() {
        out[order[k]] = (state.amps.len() - 1) as u64;
        k += 1;
    }
    out
}

/// Pauli error model for trajectory simulation.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct NoiseModel {
    /// Pauli error probability per single-qubit gate.
    pub e1: f64,
    /// Pauli error probability per two-qubit gate.
    pub e2: f64,
    /// Readout flip probability per qubit.
    pub er: f64,
}

impl NoiseModel {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("e1", self.e1), ("e2", self.e2), ("er", self.er)] {
            if !(0.0..1.0).contains(&v) {
                return Err(Error::Config(format!("{name} = {v} outside [0, 1)")));
            }
        }
        Ok(())
    }
}

const PAULI_X: Mat2 = [ZERO, C::new(1.0, 0.0), C::new(1.0, 0.0), ZERO];
const PAULI_Y: Mat2 = [ZERO, C::new(0.0, -1.0), C::new(0.0, 1.0), ZERO];
const PAULI_Z: Mat2 = [C::new(1.0, 0.0), ZERO, ZERO, C::new(-1.0, 0.0)];
const PAULIS: [Mat2; 3] = [PAULI_X, PAULI_Y, PAULI_Z];

/// One noisy trajectory state: after each gate a uniformly random
/// non-identity Pauli is applied to its targets with the gate's error
/// probability.
fn noisy_trajectory<P: Precision>(
    ops: &[Op],
    n: usize,
    noise: &NoiseModel,
    rng: &mut ChaCha8Rng,
) -> StateVector<P> {
    let mut state = StateVector::<P>::zero(n);
    for op in ops {
        apply_op(&mut state, op);
        match op {
            Op::One { q, .. } => {
                if noise.e1 > 0.0 && rng.gen::<f64>() < noise.e1 {
                    let p = rng.gen_range(0..3);
                    state.apply(&[*q], &PAULIS[p]);
                }
            }
            Op::Two { a, b, .. } => {
                if noise.e2 > 0.0 && rng.gen::<f64>() < noise.e2 {
                    // uniform over the 15 non-identity two-qubit Paulis
                    let p = rng.gen_range(1..16);
                    let (pa, pb) = (p / 4, p % 4);
                    if pa > 0 {
                        state.apply(&[*a], &PAULIS[pa - 1]);
                    }
                    if pb > 0 {
                        state.apply(&[*b], &PAULIS[pb - 1]);
                    }
                }
            }
        }
    }
    state
}

/// Trajectory-sampled noisy run. Returns `n_trajectories` groups of
/// `samples_per_trajectory` bitstrings; each group shares one Pauli
/// trajectory, with independent readout flips per sample. Deterministic
/// for a fixed seed.
pub fn noisy_run<P: Precision>(
    circuit: &Circuit,
    noise: &NoiseModel,
    seed: u64,
    n_trajectories: usize,
    samples_per_trajectory: usize,
    opts: &SvOptions,
) -> Result<Vec<Vec<u64>>> {
    noise.validate()?;
    let n = circuit.n_qubits();
    opts.check_memory::<P>(n)?;
    let ops = lower(circuit);
    let groups: Vec<Vec<u64>> = (0..n_trajectories)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64 + 1);
            let state = noisy_trajectory::<P>(&ops, n, noise, &mut rng);
            let us: Vec<f64> = (0..samples_per_trajectory).map(|_| rng.gen::<f64>()).collect();
            let mut samples = sample_with_uniforms(&state, &us);
            if noise.er > 0.0 {
                for s in samples.iter_mut() {
                    for q in 0..n {
                        if rng.gen::<f64>() < noise.er {
                            *s ^= 1 << q;
                        }
                    }
                }
            }
            samples
        })
        .collect();
    Ok(groups)
}
