//! Cut scoring and search.
//!
//! A cut is scored by its number of effective cross-partition gates
//!
//! ```text
//! L = g_cut - g_wedge - g_dcd - g_startend / 2
//! ```
//!
//! where wedges (two consecutive cross gates sharing a qubit), DCD
//! formations (cross gates on a pair (a,b) sandwiching a single internal
//! gate on (b,c)) and start/end boundary gates each cut the path budget.
//! Formations are matched greedily in circuit order, wedges before DCDs,
//! and a gate joins at most one formation.
//!
//! Search enumerates the staircase cut family: bipartitions whose side 1
//! is a per-column row prefix (or, transposed, a per-row column prefix),
//! i.e. cuts whose boundary is a monotone line across the lattice.
//! Arbitrary bipartitions are reserved for brute-force test oracles.

use crate::circuit::{Circuit, CutSpec};
use crate::error::{Error, Result};
use crate::lattice::Pos;
use crate::statevec::{lower, Op};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutReport {
    pub g_cut: usize,
    pub g_wedge: usize,
    pub g_dcd: usize,
    pub g_startend: usize,
}

impl CutReport {
    /// Twice the effective cross-gate count; L itself may be half-integral
    /// and is kept exact by scaling.
    pub fn l_times_two(&self) -> i64 {
        2 * (self.g_cut as i64 - self.g_wedge as i64 - self.g_dcd as i64)
            - self.g_startend as i64
    }

    pub fn l(&self) -> f64 {
        self.l_times_two() as f64 / 2.0
    }
}

/// Counts cost-reducing formations on the cross gates of a cut.
pub fn count_formations(circuit: &Circuit, cut: &CutSpec) -> Result<CutReport> {
    let side1 = circuit.side1_logical(cut);
    cut.validate(&circuit.topology)?;
    let ops = lower(circuit);
    let side = |q: usize| side1.contains(&q);
    Ok(count_formations_ops(&ops, &|a, b| side(a) != side(b)))
}

/// Same, on a flattened op list with an arbitrary cross predicate.
pub fn count_formations_ops(ops: &[Op], crosses: &dyn Fn(usize, usize) -> bool) -> CutReport {
    FormationScanner::new(ops).count(crosses)
}

/// Cut-independent structure of a circuit's two-qubit gate stream,
/// reusable across many cut evaluations during search.
pub struct FormationScanner {
    /// Endpoint pairs of the two-qubit gates, in circuit order.
    two: Vec<(usize, usize)>,
    /// Gates whose qubits meet no other two-qubit gate before or after.
    boundary_free: Vec<bool>,
    /// Index of the next gate touching endpoint 0/1, `usize::MAX` if none.
    next_on: Vec<[usize; 2]>,
}

impl FormationScanner {
    pub fn new(ops: &[Op]) -> FormationScanner {
        let two: Vec<(usize, usize)> = ops
            .iter()
            .filter_map(|op| match op {
                Op::Two { a, b, .. } => Some((*a, *b)),
                _ => None,
            })
            .collect();
        let n = two
            .iter()
            .map(|&(a, b)| a.max(b) + 1)
            .max()
            .unwrap_or(0);
        let mut next_on = vec![[usize::MAX; 2]; two.len()];
        let mut prev_seen = vec![false; n];
        let mut boundary_free = vec![false; two.len()];
        // earlier-touch flags
        let mut earlier = vec![false; two.len()];
        for (k, &(a, b)) in two.iter().enumerate() {
            earlier[k] = prev_seen[a] || prev_seen[b];
            prev_seen[a] = true;
            prev_seen[b] = true;
        }
        // later-touch flags and next-gate-on-qubit pointers
        let mut next_gate = vec![usize::MAX; n];
        for (k, &(a, b)) in two.iter().enumerate().rev() {
            let later = next_gate[a] != usize::MAX || next_gate[b] != usize::MAX;
            next_on[k] = [next_gate[a], next_gate[b]];
            boundary_free[k] = !earlier[k] || !later;
            next_gate[a] = k;
            next_gate[b] = k;
        }
        FormationScanner { two, boundary_free, next_on }
    }

    /// Greedy formation counts for one cross predicate: boundary gates
    /// first, then wedges, then DCDs; a gate joins at most one formation.
    pub fn count(&self, crosses: &dyn Fn(usize, usize) -> bool) -> CutReport {
        let two = &self.two;
        let cross_idx: Vec<usize> = two
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| crosses(a, b))
            .map(|(k, _)| k)
            .collect();
        let g_cut = cross_idx.len();

        let mut consumed = vec![false; two.len()];
        let mut g_startend = 0usize;
        for &k in &cross_idx {
            if self.boundary_free[k] {
                g_startend += 1;
                consumed[k] = true;
            }
        }

        // wedges: consecutive remaining cross gates sharing a qubit, with
        // no other two-qubit gate on the shared qubit in between
        let mut g_wedge = 0usize;
        let remaining: Vec<usize> = cross_idx.iter().copied().filter(|&k| !consumed[k]).collect();
        let mut i = 0;
        while i + 1 < remaining.len() {
            let (k1, k2) = (remaining[i], remaining[i + 1]);
            let (a1, b1) = two[k1];
            let (a2, b2) = two[k2];
            let shared: Vec<usize> = [a1, b1]
                .iter()
                .copied()
                .filter(|q| *q == a2 || *q == b2)
                .collect();
            if shared.len() == 1 {
                let q = shared[0];
                let e = if q == a1 { 0 } else { 1 };
                if self.next_on[k1][e] == k2 {
                    g_wedge += 1;
                    consumed[k1] = true;
                    consumed[k2] = true;
                    i += 2;
                    continue;
                }
            }
            i += 1;
        }

        // DCD: two remaining cross gates on the same pair (a,b) with
        // exactly one internal gate on (b,c) or (a,c) in between
        let mut g_dcd = 0usize;
        let remaining: Vec<usize> = cross_idx.iter().copied().filter(|&k| !consumed[k]).collect();
        for (pos, &k1) in remaining.iter().enumerate() {
            if consumed[k1] {
                continue;
            }
            let (a1, b1) = two[k1];
            for &k2 in &remaining[pos + 1..] {
                if consumed[k2] {
                    continue;
                }
                let (a2, b2) = two[k2];
                let same_pair = (a1 == a2 && b1 == b2) || (a1 == b2 && b1 == a2);
                if !same_pair {
                    continue;
                }
                // first gate after k1 touching a1 or b1
                let t1 = self.next_on[k1][0].min(self.next_on[k1][1]);
                if t1 == k2 {
                    break; // nothing in between
                }
                // second toucher after t1
                let (x, y) = two[t1];
                let mut t2 = usize::MAX;
                for (e, q) in [(0usize, a1), (1usize, b1)] {
                    if x == q || y == q {
                        let pe = if x == q { 0 } else { 1 };
                        t2 = t2.min(self.next_on[t1][pe]);
                    } else {
                        t2 = t2.min(self.next_on[k1][e]);
                    }
                }
                if t2 == k2 {
                    let shares_one = (x == a1 || x == b1) != (y == a1 || y == b1);
                    let internal = !crosses(x, y);
                    if shares_one && internal {
                        g_dcd += 1;
                        consumed[k1] = true;
                        consumed[k2] = true;
                    }
                }
                // another cross gate on the same pair further out cannot
                // make a tighter sandwich
                break;
            }
        }

        CutReport { g_cut, g_wedge, g_dcd, g_startend }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchStrategy {
    Exhaustive,
    Heuristic { seed: u64, restarts: usize },
}

const MAX_EXHAUSTIVE_CUTS: u128 = 10_000_000;

/// All staircase cuts of the topology: per-column row thresholds plus the
/// transposed family, deduplicated, sides nonempty.
fn staircase_cuts(circuit: &Circuit, max_imbalance: usize) -> Result<Vec<BTreeSet<Pos>>> {
    let t = &circuit.topology;
    // enumerate each orientation only when its own family is tractable
    let row_count = (t.rows as u128 + 1).checked_pow(t.cols as u32);
    let col_count = (t.cols as u128 + 1).checked_pow(t.rows as u32);
    let row_ok = row_count.is_some_and(|c| c <= MAX_EXHAUSTIVE_CUTS);
    let col_ok = col_count.is_some_and(|c| c <= MAX_EXHAUSTIVE_CUTS);
    if !row_ok && !col_ok {
        return Err(Error::SearchSpaceTooLarge(
            row_count.or(col_count).unwrap_or(u128::MAX),
        ));
    }
    let n = t.n_qubits();
    let mut seen: BTreeSet<Vec<Pos>> = BTreeSet::new();
    let mut out = Vec::new();

    let mut push = |side1: BTreeSet<Pos>| {
        if side1.is_empty() || side1.len() == n {
            return;
        }
        let n1 = side1.len();
        let n2 = n - n1;
        if n1.abs_diff(n2) > max_imbalance {
            return;
        }
        let key: Vec<Pos> = side1.iter().copied().collect();
        let complement: Vec<Pos> = t.active.iter().copied().filter(|p| !side1.contains(p)).collect();
        if seen.contains(&key) || seen.contains(&complement) {
            return;
        }
        seen.insert(key);
        out.push(side1);
    };

    // per-column row thresholds
    if row_ok {
        let mut thresholds = vec![0usize; t.cols];
        loop {
            let side1: BTreeSet<Pos> = t
                .active
                .iter()
                .copied()
                .filter(|&(r, c)| r < thresholds[c])
                .collect();
            push(side1);
            // increment mixed-radix counter
            let mut i = 0;
            loop {
                if i == t.cols {
                    break;
                }
                thresholds[i] += 1;
                if thresholds[i] <= t.rows {
                    break;
                }
                thresholds[i] = 0;
                i += 1;
            }
            if i == t.cols {
                break;
            }
        }
    }
    // per-row column thresholds
    if col_ok {
        let mut thresholds = vec![0usize; t.rows];
        loop {
            let side1: BTreeSet<Pos> = t
                .active
                .iter()
                .copied()
                .filter(|&(r, c)| c < thresholds[r])
                .collect();
            push(side1);
            let mut i = 0;
            loop {
                if i == t.rows {
                    break;
                }
                thresholds[i] += 1;
                if thresholds[i] <= t.cols {
                    break;
                }
                thresholds[i] = 0;
                i += 1;
            }
            if i == t.rows {
                break;
            }
        }
    }
    Ok(out)
}

fn cut_id(side1: &BTreeSet<Pos>) -> String {
    side1
        .iter()
        .map(|&(r, c)| format!("{r},{c}"))
        .collect::<Vec<_>>()
        .join(";")
}

/// Finds the cut minimizing L subject to |n1 - n2| <= max_imbalance.
/// Exhaustive search walks every staircase cut without materializing the
/// family; the heuristic runs seeded greedy descent over threshold
/// vectors. Ties are broken by the threshold vector so results are
/// deterministic and independent of worker count.
pub fn search_optimal_cut(
    circuit: &Circuit,
    max_imbalance: usize,
    strategy: SearchStrategy,
) -> Result<(CutSpec, CutReport)> {
    let ops = lower(circuit);
    let scanner = FormationScanner::new(&ops);
    let n = circuit.n_qubits();

    match strategy {
        SearchStrategy::Exhaustive => {
            let t = &circuit.topology;
            let row_count = (t.rows as u128 + 1).checked_pow(t.cols as u32);
            let col_count = (t.cols as u128 + 1).checked_pow(t.rows as u32);
            let row_ok = row_count.is_some_and(|c| c <= MAX_EXHAUSTIVE_CUTS);
            let col_ok = col_count.is_some_and(|c| c <= MAX_EXHAUSTIVE_CUTS);
            if !row_ok && !col_ok {
                return Err(Error::SearchSpaceTooLarge(
                    row_count.or(col_count).unwrap_or(u128::MAX),
                ));
            }

            // Candidate key: (L*2, orientation, thresholds); the full
            // ordering makes the reduction associativity-safe.
            type Best = (i64, u8, Vec<usize>, CutReport);
            let consider = |orientation: u8, thr: &[usize], best: &mut Option<Best>| {
                let member = |&(r, c): &Pos| -> bool {
                    if orientation == 0 {
                        r < thr[c]
                    } else {
                        c < thr[r]
                    }
                };
                let n1 = circuit.qubit_order.iter().filter(|p| member(p)).count();
                if n1 == 0 || n1 == n || n1.abs_diff(n - n1) > max_imbalance {
                    return;
                }
                let side: Vec<bool> = circuit.qubit_order.iter().map(|p| member(p)).collect();
                let report = scanner.count(&|a, b| side[a] != side[b]);
                let key = (report.l_times_two(), orientation, thr.to_vec(), report);
                match best {
                    Some(b) if (b.0, b.1, &b.2) <= (key.0, key.1, &key.2) => {}
                    _ => *best = Some(key),
                }
            };

            let mut families: Vec<(u8, usize, usize)> = Vec::new(); // (orientation, digits, radix)
            if row_ok {
                families.push((0, t.cols, t.rows + 1));
            }
            if col_ok {
                families.push((1, t.rows, t.cols + 1));
            }

            let mut overall: Option<Best> = None;
            for (orientation, digits, radix) in families {
                let chunked: Vec<Option<Best>> = (0..radix)
                    .into_par_iter()
                    .map(|first| {
                        let mut best: Option<Best> = None;
                        let mut thr = vec![0usize; digits];
                        thr[0] = first;
                        loop {
                            consider(orientation, &thr, &mut best);
                            // advance the remaining digits
                            let mut i = 1;
                            loop {
                                if i >= digits {
                                    break;
                                }
                                thr[i] += 1;
                                if thr[i] < radix {
                                    break;
                                }
                                thr[i] = 0;
                                i += 1;
                            }
                            if i >= digits {
                                break;
                            }
                        }
                        best
                    })
                    .collect();
                for cand in chunked.into_iter().flatten() {
                    match &overall {
                        Some(b) if (b.0, b.1, &b.2) <= (cand.0, cand.1, &cand.2) => {}
                        _ => overall = Some(cand),
                    }
                }
            }

            let best = overall.ok_or(Error::NoFeasibleCut { max_imbalance })?;
            let side1: BTreeSet<Pos> = circuit
                .topology
                .active
                .iter()
                .copied()
                .filter(|&(r, c)| {
                    if best.1 == 0 {
                        r < best.2[c]
                    } else {
                        c < best.2[r]
                    }
                })
                .collect();
            Ok((CutSpec { side1 }, best.3))
        }
        SearchStrategy::Heuristic { seed, restarts } => {
            let candidates = heuristic_cuts(circuit, max_imbalance, seed, restarts);
            if candidates.is_empty() {
                return Err(Error::NoFeasibleCut { max_imbalance });
            }
            let best = candidates
                .par_iter()
                .map(|side1| {
                    let member: Vec<bool> =
                        circuit.qubit_order.iter().map(|p| side1.contains(p)).collect();
                    let report = scanner.count(&|a, b| member[a] != member[b]);
                    (report.l_times_two(), cut_id(side1), side1.clone(), report)
                })
                .reduce_with(|x, y| if (y.0, &y.1) < (x.0, &x.1) { y } else { x })
                .unwrap();
            Ok((CutSpec { side1: best.2 }, best.3))
        }
    }
}

/// Seeded multi-start coordinate descent over per-column thresholds.
fn heuristic_cuts(
    circuit: &Circuit,
    max_imbalance: usize,
    seed: u64,
    restarts: usize,
) -> Vec<BTreeSet<Pos>> {
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    let t = &circuit.topology;
    let ops = lower(circuit);
    let scanner = FormationScanner::new(&ops);
    let n = t.n_qubits();
    let realize = |thr: &[usize]| -> BTreeSet<Pos> {
        t.active.iter().copied().filter(|&(r, c)| r < thr[c]).collect()
    };
    let feasible = |side1: &BTreeSet<Pos>| {
        !side1.is_empty()
            && side1.len() < n
            && side1.len().abs_diff(n - side1.len()) <= max_imbalance
    };
    let score = |side1: &BTreeSet<Pos>| -> i64 {
        let member: Vec<bool> = circuit.qubit_order.iter().map(|p| side1.contains(p)).collect();
        scanner.count(&|a, b| member[a] != member[b]).l_times_two()
    };

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..restarts.max(1) {
        let mut thr: Vec<usize> = (0..t.cols).map(|_| rng.gen_range(0..=t.rows)).collect();
        let mut best = realize(&thr);
        let mut best_score = if feasible(&best) { score(&best) } else { i64::MAX };
        loop {
            let mut improved = false;
            for c in 0..t.cols {
                let orig = thr[c];
                for v in 0..=t.rows {
                    if v == orig {
                        continue;
                    }
                    thr[c] = v;
                    let cand = realize(&thr);
                    if feasible(&cand) {
                        let s = score(&cand);
                        if s < best_score {
                            best_score = s;
                            best = cand;
                            improved = true;
                            continue;
                        }
                    }
                    thr[c] = orig;
                }
                if thr[c] != orig && !improved {
                    thr[c] = orig;
                }
            }
            if !improved {
                break;
            }
        }
        if feasible(&best) {
            out.push(best);
        }
    }
    out
}

/// Result of a pattern search: the pattern set and the minimal effective
/// cross-gate count over the cut family (doubled, exact).
#[derive(Clone, Debug)]
pub struct PatternSearchOutcome {
    pub patterns: crate::lattice::PatternSet,
    pub min_l_times_two: i64,
}

/// Searches chain-phase assignments for the pattern set maximizing the
/// minimal L over cuts. `max_partition_gates` caps the number of internal
/// two-qubit gates a cut may leave on either side (bounding per-patch
/// simulation cost); cuts exceeding it are not scored.
pub fn search_patterns(
    topology: &crate::lattice::LatticeTopology,
    m: usize,
    sequence: &[crate::lattice::PatternId],
    max_partition_gates: usize,
    max_imbalance: usize,
) -> Result<PatternSearchOutcome> {
    use crate::circuit::{generate_rqc, CircuitVariant, GateParams};
    use crate::lattice::{diagonal_chains, Orientation, PatternSet};

    if sequence.is_empty() {
        return Err(Error::Config("empty pattern sequence".into()));
    }
    let chains45 = diagonal_chains(topology, Orientation::Deg45);
    let chains135 = diagonal_chains(topology, Orientation::Deg135);
    let n_chains = chains45.len() + chains135.len();
    if n_chains == 0 {
        return Err(Error::InvalidPatternSet("topology has no edges".into()));
    }
    if n_chains > 20 {
        return Err(Error::SearchSpaceTooLarge(1u128 << n_chains));
    }

    let build = |mask: u64| -> PatternSet {
        let mut sets = [BTreeSet::new(), BTreeSet::new(), BTreeSet::new(), BTreeSet::new()];
        for (ci, chain) in chains45.iter().chain(chains135.iter()).enumerate() {
            let deg45 = ci < chains45.len();
            let phase = (mask >> ci) & 1 == 1;
            for (i, &e) in chain.iter().enumerate() {
                let first = (i % 2 == 0) == phase;
                let idx = match (deg45, first) {
                    (true, true) => 0,
                    (true, false) => 1,
                    (false, true) => 2,
                    (false, false) => 3,
                };
                sets[idx].insert(e);
            }
        }
        let [mut a, mut b, mut c, mut d] = sets;
        if a.is_empty() && !b.is_empty() {
            std::mem::swap(&mut a, &mut b);
        }
        if c.is_empty() && !d.is_empty() {
            std::mem::swap(&mut c, &mut d);
        }
        PatternSet { a, b, c, d }
    };

    let seq_default = crate::lattice::PATTERN_SEQUENCE;
    let use_default_seq = sequence == seq_default;

    let evaluate = |patterns: &PatternSet| -> Result<i64> {
        // Min_L over feasible cuts of the circuit built from the patterns.
        // The gate layout is seed-independent, so any seed works.
        let circuit = if use_default_seq {
            generate_rqc(topology, patterns, m, 0, CircuitVariant::Full, &GateParams::default())?
        } else {
            let mut c = generate_rqc(
                topology,
                patterns,
                m,
                0,
                CircuitVariant::Full,
                &GateParams::default(),
            )?;
            // rebuild two-qubit layers following the custom sequence
            let mut k = 0usize;
            for layer in c.layers.iter_mut() {
                if let crate::circuit::Layer::Two { gates } = layer {
                    let pid = sequence[k % sequence.len()];
                    gates.clear();
                    for e in patterns.get(pid) {
                        let a = c.qubit_order.iter().position(|&p| p == e.a).unwrap();
                        let b = c.qubit_order.iter().position(|&p| p == e.b).unwrap();
                        gates.push(crate::circuit::TwoGate {
                            a,
                            b,
                            kind: crate::gates::TwoQubitKind::ISwapLike(Default::default()),
                        });
                    }
                    k += 1;
                }
            }
            c
        };
        let ops = lower(&circuit);
        let scanner = FormationScanner::new(&ops);
        let cuts = staircase_cuts(&circuit, max_imbalance)?;
        let mut min_l2 = i64::MAX;
        for side1 in &cuts {
            let member: Vec<bool> =
                circuit.qubit_order.iter().map(|p| side1.contains(p)).collect();
            // internal gate caps per side
            let mut internal = [0usize; 2];
            for op in &ops {
                if let Op::Two { a, b, .. } = op {
                    if member[*a] == member[*b] {
                        internal[member[*a] as usize] += 1;
                    }
                }
            }
            if internal[0] > max_partition_gates || internal[1] > max_partition_gates {
                continue;
            }
            let report = scanner.count(&|a, b| member[a] != member[b]);
            min_l2 = min_l2.min(report.l_times_two());
        }
        if min_l2 == i64::MAX {
            return Err(Error::NoFeasibleCut { max_imbalance });
        }
        Ok(min_l2)
    };

    let masks: Vec<u64> = (0..(1u64 << n_chains)).collect();
    let best = masks
        .par_iter()
        .map(|&mask| {
            let patterns = build(mask);
            let l2 = evaluate(&patterns).unwrap_or(i64::MIN);
            (l2, mask, patterns)
        })
        .reduce_with(|x, y| if (y.0, std::cmp::Reverse(y.1)) > (x.0, std::cmp::Reverse(x.1)) { y } else { x })
        .unwrap();

    if best.0 == i64::MIN {
        return Err(Error::NoFeasibleCut { max_imbalance });
    }
    Ok(PatternSearchOutcome { patterns: best.2, min_l_times_two: best.0 })
}
