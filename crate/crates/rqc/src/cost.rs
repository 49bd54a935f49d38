//! Closed-form classical and quantum runtime models: full state-vector
//! cost, Schrodinger-Feynman cost with patch-count optimization, quantum
//! sampling cost, core-hour accounting, the imbalanced-gate path-truncation
//! speedup, tensor-network cost scaling, and the runtime advantage grid.

use crate::error::{Error, Result};
use crate::lattice::{LatticeTopology, PatternSet, PATTERN_SEQUENCE};
use serde::{Deserialize, Serialize};

/// Hours in a year (365.25 days).
pub const HOURS_PER_YEAR: f64 = 8766.0;

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct CostConstants {
    /// Effective state-vector simulation rate, operations per second.
    pub c_sa: f64,
    /// Effective Schrodinger-Feynman rate, operations per second.
    pub c_sfa: f64,
    /// Quantum sampling rate, samples per second.
    pub c_qc: f64,
    /// Depth prefactor of the SFA path exponent.
    pub b: f64,
    pub threads_per_core: f64,
    pub cores: f64,
    pub memory_bytes: f64,
}

impl Default for CostConstants {
    /// Fitted constants used by the reference analysis:
    /// `C_SA = 0.015e6 GHz`, `C_SFA = 3.3e6 GHz`, `C_QC = (1/230) MHz`,
    /// `B = 0.24`, Fugaku-scale core count, 3 PB of memory.
    fn default() -> CostConstants {
        CostConstants {
            c_sa: 0.015e6 * 1e9,
            c_sfa: 3.3e6 * 1e9,
            c_qc: 1e6 / 230.0,
            b: 0.24,
            threads_per_core: 2.0,
            cores: 7_630_848.0,
            memory_bytes: 3e15,
        }
    }
}

impl CostConstants {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("c_sa", self.c_sa),
            ("c_sfa", self.c_sfa),
            ("c_qc", self.c_qc),
            ("b", self.b),
            ("threads_per_core", self.threads_per_core),
            ("cores", self.cores),
            ("memory_bytes", self.memory_bytes),
        ];
        for (name, v) in fields {
            if !(v > 0.0) {
                return Err(Error::Config(format!("cost constant {name} must be positive")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SaCost {
    pub seconds: f64,
    pub memory_bytes_required: f64,
    pub feasible: bool,
}

/// Full state-vector runtime `T = m n 2^n / C_SA`; the state itself takes
/// `2^(n+1)` bytes, which caps the feasible qubit count.
pub fn t_sa(n: usize, m: usize, c: &CostConstants) -> SaCost {
    let pow = (n as f64).exp2();
    let seconds = (m as f64) * (n as f64) * pow / c.c_sa;
    let memory = 2.0 * pow;
    SaCost {
        seconds,
        memory_bytes_required: memory,
        feasible: memory <= c.memory_bytes,
    }
}

/// Largest qubit count whose `2^(n+1)`-byte state fits in memory.
pub fn max_sa_qubits(memory_bytes: f64) -> usize {
    let mut n = 0usize;
    while 2.0 * ((n + 1) as f64).exp2() <= memory_bytes {
        n += 1;
    }
    n
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SfaCost {
    pub seconds: f64,
    pub patches: usize,
    pub memory_per_path_bytes: f64,
    pub feasible: bool,
}

fn t_sfa_fixed(n: usize, m: usize, f: f64, p: usize, c: &CostConstants) -> SfaCost {
    let pf = p as f64;
    let k = 0.5 + 1.0 / pf;
    let nf = n as f64;
    let paths = (k * pf * c.b * (m as f64) * nf.sqrt()).exp2();
    let patch_amps = (nf / pf).exp2();
    let outputs = (1.0 / (f * f)).min(nf.exp2());
    let seconds = paths * f * (pf * patch_amps + outputs) / c.c_sfa;
    let memory_per_path = 2.0 * pf * patch_amps;
    // total footprint assumes one path per core on a million-core machine
    let feasible = 1e6 * memory_per_path <= c.memory_bytes;
    SfaCost {
        seconds,
        patches: p,
        memory_per_path_bytes: memory_per_path,
        feasible,
    }
}

/// Schrodinger-Feynman runtime
/// `T = 2^{k p B m sqrt(n)} F (p 2^{n/p} + min(F^-2, 2^n)) / C_SFA` with
/// `k = 1/2 + 1/p`. With `patches = None`, searches the integer patch
/// count `p >= 2` minimizing time subject to the `10^6 * 2 p 2^{n/p}`
/// memory footprint.
pub fn t_sfa(
    n: usize,
    m: usize,
    f: f64,
    patches: Option<usize>,
    c: &CostConstants,
) -> Result<SfaCost> {
    if !(f > 0.0 && f <= 1.0) {
        return Err(Error::Config(format!("fidelity {f} outside (0, 1]")));
    }
    match patches {
        Some(p) => {
            if p < 2 {
                return Err(Error::Config("patch count must be at least 2".into()));
            }
            Ok(t_sfa_fixed(n, m, f, p, c))
        }
        None => {
            let mut best: Option<SfaCost> = None;
            for p in 2..=64.min(n.max(2)) {
                let cand = t_sfa_fixed(n, m, f, p, c);
                if !cand.feasible {
                    continue;
                }
                if best.map_or(true, |b| cand.seconds < b.seconds) {
                    best = Some(cand);
                }
            }
            best.ok_or_else(|| {
                Error::Config(format!("no feasible patch count for n = {n} under the memory cap"))
            })
        }
    }
}

/// Quantum sampling runtime `T = 1 / (C_QC F^2)`: collecting the 1/F^2
/// samples needed to resolve the fidelity.
pub fn t_quantum(f: f64, c: &CostConstants) -> Result<f64> {
    if !(f > 0.0 && f <= 1.0) {
        return Err(Error::Config(format!("fidelity {f} outside (0, 1]")));
    }
    Ok(1.0 / (c.c_qc * f * f))
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct CoreHours {
    pub core_hours: f64,
    pub calendar_years: f64,
}

/// Core-hour accounting for a set of SFA runs: `n_runs * F` runs actually
/// executed, `t_run` seconds each, divided over hyperthreads; calendar
/// time assumes all cores run in parallel.
pub fn sfa_core_hours(
    n_runs: f64,
    f: f64,
    t_run_seconds: f64,
    threads_per_core: f64,
    cores: f64,
) -> CoreHours {
    let core_hours = n_runs * f * t_run_seconds / 3600.0 / threads_per_core;
    CoreHours {
        core_hours,
        calendar_years: core_hours / (cores * HOURS_PER_YEAR),
    }
}

/// Path-truncation speedup from imbalanced iSWAP-like gates.
///
/// Every gate is `iswap_like(pi/2 +- delta_theta, phi)`, so the squared
/// singular values per gate form the multiset {a, b, b, c}. A path keeping
/// `k1, k2, k3` gates at values `a, b, c` has weight `a^k1 b^k2 c^k3` with
/// multiplicity `binom(g; k1, k2, k3) 2^k2`; the minimal path count `S`
/// reaching fidelity `F` is found by filling weight classes in descending
/// order. The speedup is `F 4^g / S`, the ratio of the balanced path
/// budget to the paths actually needed.
pub fn imbalanced_speedup(delta_theta: f64, phi: f64, g: usize, f: f64) -> Result<f64> {
    if g < 1 {
        return Err(Error::Config("g must be at least 1".into()));
    }
    if !(f > 0.0 && f <= 1.0) {
        return Err(Error::Config(format!("fidelity {f} outside (0, 1]")));
    }
    let sd = delta_theta.sin().abs();
    let a = 1.0 + 2.0 * (phi / 2.0).cos().abs() * sd + sd * sd;
    let b = 1.0 - sd * sd; // cos^2(delta)
    let c = (1.0f64 - 2.0 * (phi / 2.0).cos().abs() * sd + sd * sd).max(0.0);

    // weight classes over compositions k1 + k2 + k3 = g
    let binom = |n: usize, k: usize| -> u128 {
        let mut r: u128 = 1;
        for i in 0..k {
            r = r * (n - i) as u128 / (i + 1) as u128;
        }
        r
    };
    let mut classes: Vec<(f64, u128)> = Vec::new();
    for k1 in 0..=g {
        for k2 in 0..=(g - k1) {
            let k3 = g - k1 - k2;
            let weight = a.powi(k1 as i32) * b.powi(k2 as i32) * c.powi(k3 as i32);
            let count = binom(g, k1) * binom(g - k1, k2) * (1u128 << k2);
            classes.push((weight, count));
        }
    }
    classes.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap());

    let target = f * 4.0f64.powi(g as i32);
    let mut acc = 0.0f64;
    let mut s: u128 = 0;
    for (w, count) in classes {
        if w <= 0.0 {
            break;
        }
        let class_total = w * count as f64;
        if acc + class_total >= target {
            let needed = ((target - acc) / w).ceil().max(1.0) as u128;
            s += needed.min(count);
            acc = target;
            break;
        }
        acc += class_total;
        s += count;
    }
    if acc < target {
        // every path retained
        s = classes_total(g);
    }
    Ok(f * 4.0f64.powi(g as i32) / s as f64)
}

fn classes_total(g: usize) -> u128 {
    4u128.pow(g as u32)
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct TnCost {
    pub total_flops: f64,
    pub summit_seconds: f64,
}

/// Reference tensor-network contraction throughput: seconds per
/// contraction cost on the benchmark machine.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct TnReference {
    pub flops: f64,
    pub seconds: f64,
}

impl Default for TnReference {
    fn default() -> TnReference {
        TnReference { flops: 6.66e18, seconds: 833.75 }
    }
}

/// Total floating-point cost of reproducing a sampling experiment by
/// tensor-network contraction: per-sample cost times `n_samples * F`
/// perfect-sample equivalents, plus the wall time extrapolated from the
/// reference machine.
pub fn tn_cost_scaling(
    per_sample_flops: f64,
    n_samples: f64,
    f: f64,
    reference: &TnReference,
) -> Result<TnCost> {
    for (name, v) in [
        ("per_sample_flops", per_sample_flops),
        ("n_samples", n_samples),
        ("fidelity", f),
    ] {
        if !(v > 0.0) {
            return Err(Error::Config(format!("{name} must be positive")));
        }
    }
    let total = per_sample_flops * n_samples * f;
    Ok(TnCost {
        total_flops: total,
        summit_seconds: total / reference.flops * reference.seconds,
    })
}

pub fn summit_extrapolate(total_flops: f64, reference: &TnReference) -> f64 {
    total_flops / reference.flops * reference.seconds
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Sa,
    Sfa,
    Quantum,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AdvantageCell {
    pub n: usize,
    pub m: usize,
    pub fidelity: f64,
    pub t_sa_seconds: Option<f64>,
    pub t_sfa_seconds: Option<f64>,
    pub t_quantum_seconds: f64,
    pub label: Method,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AdvantageGrid {
    pub cells: Vec<AdvantageCell>,
}

impl AdvantageGrid {
    pub fn cell(&self, n: usize, m: usize) -> Option<&AdvantageCell> {
        self.cells.iter().find(|c| c.n == n && c.m == m)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,m,fidelity,t_sa_seconds,t_sfa_seconds,t_quantum_seconds,label\n");
        for c in &self.cells {
            let fmt = |x: Option<f64>| x.map(|v| format!("{v:.17e}")).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{:.17e},{},{},{:.17e},{:?}\n",
                c.n,
                c.m,
                c.fidelity,
                fmt(c.t_sa_seconds),
                fmt(c.t_sfa_seconds),
                c.t_quantum_seconds,
                c.label
            ));
        }
        out
    }
}

/// Classifies each (n, m) cell by the fastest feasible method.
///
/// The fidelity comes from the product model with uniform rates; gate
/// counts are taken from the actual lattice structure: `n (m + 1)`
/// single-qubit gates and the pattern-layer edges restricted to the first
/// `n` qubits of the row-major active order.
pub fn advantage_region(
    topology: &LatticeTopology,
    patterns: &PatternSet,
    n_range: &[usize],
    m_range: &[usize],
    e1: f64,
    e2: f64,
    er: f64,
    c: &CostConstants,
) -> Result<AdvantageGrid> {
    if n_range.is_empty() || m_range.is_empty() {
        return Err(Error::Config("empty grid range".into()));
    }
    c.validate()?;
    let order = topology.qubit_order();
    let mut cells = Vec::new();
    for &n in n_range {
        if n == 0 || n > order.len() {
            return Err(Error::Config(format!(
                "grid qubit count {n} outside the topology (max {})",
                order.len()
            )));
        }
        let active: std::collections::BTreeSet<_> = order[..n].iter().copied().collect();
        // two-qubit gates per pattern among the first n qubits
        let per_pattern: Vec<usize> = [&patterns.a, &patterns.b, &patterns.c, &patterns.d]
            .iter()
            .map(|set| {
                set.iter()
                    .filter(|e| active.contains(&e.a) && active.contains(&e.b))
                    .count()
            })
            .collect();
        for &m in m_range {
            let g1 = n * (m + 1);
            let g2: usize = (0..m)
                .map(|k| {
                    let pid = PATTERN_SEQUENCE[k % 8];
                    per_pattern[match pid {
                        crate::lattice::PatternId::A => 0,
                        crate::lattice::PatternId::B => 1,
                        crate::lattice::PatternId::C => 2,
                        crate::lattice::PatternId::D => 3,
                    }]
                })
                .sum();
            let fidelity = (1.0 - e1).powi(g1 as i32)
                * (1.0 - e2).powi(g2 as i32)
                * (1.0 - er).powi(n as i32);
            let fidelity = fidelity.max(f64::MIN_POSITIVE);
            let sa = t_sa(n, m, c);
            let sfa = t_sfa(n, m, fidelity, None, c).ok();
            let tq = t_quantum(fidelity, c)?;

            let mut best = (Method::Quantum, tq);
            if let Some(s) = &sfa {
                if s.seconds < best.1 {
                    best = (Method::Sfa, s.seconds);
                }
            }
            if sa.feasible && sa.seconds < best.1 {
                best = (Method::Sa, sa.seconds);
            }
            cells.push(AdvantageCell {
                n,
                m,
                fidelity,
                t_sa_seconds: sa.feasible.then_some(sa.seconds),
                t_sfa_seconds: sfa.map(|s| s.seconds),
                t_quantum_seconds: tq,
                label: best.0,
            });
        }
    }
    Ok(AdvantageGrid { cells })
}
