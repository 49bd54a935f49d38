//! Schrodinger-Feynman simulation: the circuit is cut into two patches,
//! every cross-partition gate is replaced by its operator-Schmidt terms,
//! and amplitudes are obtained by summing over all index assignments
//! (paths), each path being a pair of independent patch simulations.
//!
//! A path's weight is the product of the squared singular values of its
//! chosen terms; summed over all paths the weights total `4^g`, so keeping
//! a path subset of weight `W` yields fidelity `W / 4^g`.

pub mod schmidt;

use crate::circuit::{Circuit, CutSpec};
use crate::error::{Error, Result};
use crate::gates::{Mat2, TwoQubitKind, C, ZERO};
use crate::statevec::{lower, Op, Precision, StateVector, SvOptions};
use rayon::prelude::*;
use schmidt::{schmidt_decompose, SchmidtDecomposition};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// A bipartition of the circuit's qubits, by logical index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cut {
    pub side1: Vec<usize>,
    pub side2: Vec<usize>,
}

impl Cut {
    pub fn from_spec(circuit: &Circuit, spec: &CutSpec) -> Result<Cut> {
        spec.validate(&circuit.topology)?;
        let side1: Vec<usize> = circuit.side1_logical(spec).into_iter().collect();
        let side1_set: BTreeSet<usize> = side1.iter().copied().collect();
        let side2: Vec<usize> = (0..circuit.n_qubits())
            .filter(|q| !side1_set.contains(q))
            .collect();
        if side1.is_empty() || side2.is_empty() {
            return Err(Error::InvalidCut("a side is empty".into()));
        }
        Ok(Cut { side1, side2 })
    }

    pub fn membership(&self, n: usize) -> Vec<bool> {
        let mut side1 = vec![false; n];
        for &q in &self.side1 {
            side1[q] = true;
        }
        side1
    }
}

/// Log entry for one applied boundary formation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryFormation {
    pub kind: BoundaryKind,
    /// Index of the rewritten gate in the flattened op stream.
    pub op_index: usize,
    pub a: usize,
    pub b: usize,
    /// Phase of the controlled-phase gate left on the cut.
    pub cphase_phi: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundaryKind {
    Start,
    End,
}

pub struct SimplifiedProgram {
    pub ops: Vec<Op>,
    pub log: Vec<BoundaryFormation>,
    /// Output-bit permutation: original amplitude at `x` equals the
    /// rewritten program's amplitude at the index whose bit `q` is bit
    /// `perm[q]` of `x`.
    pub output_perm: Vec<usize>,
}

/// Structural boundary candidates: cross gates whose qubits meet no other
/// two-qubit gate before (start) or after (end) in the circuit. A gate
/// free on both ends is reported as a start.
pub fn boundary_candidates(ops: &[Op], side1: &[bool]) -> (Vec<usize>, Vec<usize>) {
    let crosses = |a: usize, b: usize| side1[a] != side1[b];
    let mut starts = Vec::new();
    let mut ends = Vec::new();
    for (i, op) in ops.iter().enumerate() {
        let (a, b) = match op {
            Op::Two { a, b, .. } => (*a, *b),
            _ => continue,
        };
        if !crosses(a, b) {
            continue;
        }
        let touches = |op: &Op| match op {
            Op::Two { a: x, b: y, .. } => *x == a || *x == b || *y == a || *y == b,
            _ => false,
        };
        let earlier = ops[..i].iter().any(touches);
        let later = ops[i + 1..].iter().any(touches);
        if !earlier {
            starts.push(i);
        } else if !later {
            ends.push(i);
        }
    }
    (starts, ends)
}

fn phase_op(angle: f64) -> Mat2 {
    // diag(1, -i * e^{i angle})
    [
        C::new(1.0, 0.0),
        ZERO,
        ZERO,
        C::new(0.0, -1.0) * C::from_polar(1.0, angle),
    ]
}

/// Rewrites boundary cross iSWAP-like gates into controlled-phase gates.
///
/// The rewrite is exact: an iSWAP-like gate with `theta = pi/2` factors as
/// local phases, a controlled phase of angle `pi - phi` and a SWAP. At the
/// start of the circuit the SWAP is absorbed by exchanging the preceding
/// single-qubit gates of the two qubits; at the end it commutes forward
/// and becomes an output-bit transposition, recorded in `output_perm`.
/// Gates with `theta` away from `pi/2` are left untouched (the exact
/// factoring does not exist for them), so the rewrite always preserves
/// amplitudes.
pub fn simplify_boundary(original: &[Op], n: usize, side1: &[bool]) -> SimplifiedProgram {
    let (starts, ends) = boundary_candidates(original, side1);
    let exact = |i: usize| -> Option<(usize, usize, crate::gates::ISwapLikeParams)> {
        if let Op::Two { a, b, kind: TwoQubitKind::ISwapLike(p) } = &original[i] {
            if p.theta.cos().abs() < 1e-12 {
                return Some((*a, *b, *p));
            }
        }
        None
    };

    let mut ops: Vec<Op> = original.to_vec();
    let mut log = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut replacements: Vec<(usize, Vec<Op>)> = Vec::new();

    for &i in &starts {
        let Some((a, b, p)) = exact(i) else { continue };
        for op in ops[..i].iter_mut() {
            if let Op::One { q, .. } = op {
                if *q == a {
                    *q = b;
                } else if *q == b {
                    *q = a;
                }
            }
        }
        let phi = std::f64::consts::PI - p.phi;
        replacements.push((
            i,
            vec![
                Op::Two { a, b, kind: TwoQubitKind::CPhase { phi } },
                Op::One { q: a, m: phase_op(p.delta_plus + p.delta_minus_off) },
                Op::One { q: b, m: phase_op(p.delta_plus - p.delta_minus_off) },
            ],
        ));
        log.push(BoundaryFormation {
            kind: BoundaryKind::Start,
            op_index: i,
            a,
            b,
            cphase_phi: phi,
        });
    }

    for &i in &ends {
        let Some((a, b, p)) = exact(i) else { continue };
        for op in ops[i + 1..].iter_mut() {
            if let Op::One { q, .. } = op {
                if *q == a {
                    *q = b;
                } else if *q == b {
                    *q = a;
                }
            }
        }
        perm.swap(a, b);
        let phi = std::f64::consts::PI - p.phi;
        replacements.push((
            i,
            vec![
                Op::Two { a, b, kind: TwoQubitKind::CPhase { phi } },
                Op::One { q: a, m: phase_op(p.delta_plus - p.delta_minus_off) },
                Op::One { q: b, m: phase_op(p.delta_plus + p.delta_minus_off) },
            ],
        ));
        log.push(BoundaryFormation {
            kind: BoundaryKind::End,
            op_index: i,
            a,
            b,
            cphase_phi: phi,
        });
    }

    let mut out = Vec::with_capacity(ops.len() + 2 * replacements.len());
    for (i, op) in ops.into_iter().enumerate() {
        match replacements.iter().find(|(j, _)| *j == i) {
            Some((_, rep)) => out.extend(rep.iter().cloned()),
            None => out.push(op),
        }
    }
    SimplifiedProgram { ops: out, log, output_perm: perm }
}

/// An op acting on one patch, with patch-local targets.
#[derive(Clone, Debug)]
struct LocalOp {
    targets: Vec<usize>,
    matrix: Vec<C>,
}

/// One cross gate ready for path summation.
struct CrossGate {
    decomposition: SchmidtDecomposition,
    /// Patch-local index of the first gate target and which side it lives on.
    a_local: usize,
    a_on_side1: bool,
    b_local: usize,
}

struct Prepared {
    n1: usize,
    n2: usize,
    /// segments[k] holds the per-side ops between cross gate k-1 and k.
    segments: Vec<(Vec<LocalOp>, Vec<LocalOp>)>,
    cross: Vec<CrossGate>,
    /// (side1 index, side2 index) per query bitstring.
    output_perm: Vec<usize>,
    side1: Vec<bool>,
    local: Vec<usize>,
}

fn prepare(ops: &[Op], n: usize, cut: &Cut, output_perm: Vec<usize>) -> Prepared {
    let side1 = cut.membership(n);
    let mut local = vec![0usize; n];
    for (i, &q) in cut.side1.iter().enumerate() {
        local[q] = i;
    }
    for (i, &q) in cut.side2.iter().enumerate() {
        local[q] = i;
    }

    let mut segments = vec![(Vec::new(), Vec::new())];
    let mut cross = Vec::new();
    for op in ops {
        match op {
            Op::One { q, m } => {
                let seg = segments.last_mut().unwrap();
                let list = if side1[*q] { &mut seg.0 } else { &mut seg.1 };
                list.push(LocalOp { targets: vec![local[*q]], matrix: m.to_vec() });
            }
            Op::Two { a, b, kind } => {
                if side1[*a] == side1[*b] {
                    let seg = segments.last_mut().unwrap();
                    let list = if side1[*a] { &mut seg.0 } else { &mut seg.1 };
                    list.push(LocalOp {
                        targets: vec![local[*a], local[*b]],
                        matrix: kind.matrix().to_vec(),
                    });
                } else {
                    cross.push(CrossGate {
                        decomposition: schmidt_decompose(kind),
                        a_local: local[*a],
                        a_on_side1: side1[*a],
                        b_local: local[*b],
                    });
                    segments.push((Vec::new(), Vec::new()));
                }
            }
        }
    }
    Prepared {
        n1: cut.side1.len(),
        n2: cut.side2.len(),
        segments,
        cross,
        output_perm,
        side1,
        local,
    }
}

impl Prepared {
    fn ranks(&self) -> Vec<u8> {
        self.cross.iter().map(|c| c.decomposition.rank() as u8).collect()
    }

    /// Splits a global bitstring into patch-local indices, applying the
    /// output permutation.
    fn split(&self, bits: u64) -> (u64, u64) {
        let (mut i1, mut i2) = (0u64, 0u64);
        for (q, (&s1, &l)) in self.side1.iter().zip(self.local.iter()).enumerate() {
            let bit = (bits >> self.output_perm[q]) & 1;
            if s1 {
                i1 |= bit << l;
            } else {
                i2 |= bit << l;
            }
        }
        (i1, i2)
    }
}

fn apply_local<P: Precision>(state: &mut StateVector<P>, ops: &[LocalOp]) {
    for op in ops {
        state.apply(&op.targets, &op.matrix);
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SfaMode {
    Full,
    /// Keep the smallest weight-sorted path prefix reaching this fidelity.
    TopFidelity(f64),
    /// Explicit path ids (mixed-radix over per-gate ranks, first gate most
    /// significant).
    PathSubset(Vec<u128>),
}

#[derive(Clone, Debug)]
pub struct SfaOptions {
    pub simplify_boundary: bool,
    pub sv: SvOptions,
    /// Number of leading cross gates whose index tuples become parallel
    /// work units.
    pub prefix_parallel_len: usize,
}

impl Default for SfaOptions {
    fn default() -> SfaOptions {
        SfaOptions {
            simplify_boundary: false,
            sv: SvOptions { fuse_max_targets: None, ..Default::default() },
            prefix_parallel_len: 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SfaOutcome {
    pub amps: Vec<C>,
    /// Sum of selected path weights over 4^g; `None` in full mode.
    pub achieved_fidelity: Option<f64>,
    /// Paths actually summed.
    pub paths_summed: u128,
    /// Path count of the prepared program (product of term counts).
    pub total_paths: u128,
    pub per_gate_ranks: Vec<u8>,
    pub boundary_log: Vec<BoundaryFormation>,
}

const MAX_ENUMERATED_PATHS: u128 = 1 << 26;

/// Computes the amplitudes of `bitstrings` by path decomposition over the
/// cut. Full mode sums every path and matches the state-vector simulator;
/// the restricted modes report the fidelity of the kept path set.
pub fn sfa_amplitudes<P: Precision>(
    circuit: &Circuit,
    cut_spec: &CutSpec,
    bitstrings: &[u64],
    mode: SfaMode,
    opts: &SfaOptions,
) -> Result<SfaOutcome> {
    let n = circuit.n_qubits();
    let cut = Cut::from_spec(circuit, cut_spec)?;
    let ops = lower(circuit);
    let side1 = cut.membership(n);
    let (ops, log, perm) = if opts.simplify_boundary {
        let s = simplify_boundary(&ops, n, &side1);
        (s.ops, s.log, s.output_perm)
    } else {
        (ops, Vec::new(), (0..n).collect())
    };
    let prepared = prepare(&ops, n, &cut, perm);
    opts.sv.check_memory::<P>(prepared.n1)?;
    opts.sv.check_memory::<P>(prepared.n2)?;

    let lim = 1u64.checked_shl(n as u32).unwrap_or(u64::MAX);
    for &b in bitstrings {
        if n < 64 && b >= lim {
            return Err(Error::BitstringOutOfRange { bits: b, n });
        }
    }

    let ranks = prepared.ranks();
    let total_paths: u128 = ranks
        .iter()
        .map(|&r| r as u128)
        .try_fold(1u128, u128::checked_mul)
        .ok_or(Error::SearchSpaceTooLarge(u128::MAX))?;
    let g = ranks.len();

    let queries: Vec<(u64, u64)> = bitstrings.iter().map(|&b| prepared.split(b)).collect();

    let (amps, achieved, summed) = match &mode {
        SfaMode::Full => {
            let amps = sum_paths::<P>(&prepared, &queries, None, opts)?;
            (amps, None, total_paths)
        }
        SfaMode::TopFidelity(f) => {
            if !(*f > 0.0 && *f <= 1.0) {
                return Err(Error::Config(format!("target fidelity {f} outside (0, 1]")));
            }
            if total_paths > MAX_ENUMERATED_PATHS {
                return Err(Error::SearchSpaceTooLarge(total_paths));
            }
            let mut selected = top_fidelity_paths(&ranks, &prepared, *f);
            if selected.is_empty() {
                return Err(Error::EmptyPathSet);
            }
            let achieved = path_set_fidelity(&prepared, &selected, g);
            selected.sort();
            let amps = sum_paths::<P>(&prepared, &queries, Some(&selected), opts)?;
            let count = selected.len() as u128;
            (amps, Some(achieved), count)
        }
        SfaMode::PathSubset(ids) => {
            if ids.is_empty() {
                return Err(Error::EmptyPathSet);
            }
            let mut selected: Vec<Vec<u8>> = ids
                .iter()
                .map(|&id| decode_path(&ranks, id))
                .collect::<Result<_>>()?;
            selected.sort();
            selected.dedup();
            let achieved = path_set_fidelity(&prepared, &selected, g);
            let amps = sum_paths::<P>(&prepared, &queries, Some(&selected), opts)?;
            let count = selected.len() as u128;
            (amps, Some(achieved), count)
        }
    };

    Ok(SfaOutcome {
        amps,
        achieved_fidelity: achieved,
        paths_summed: summed,
        total_paths,
        per_gate_ranks: ranks,
        boundary_log: log,
    })
}

fn decode_path(ranks: &[u8], id: u128) -> Result<Vec<u8>> {
    let total: u128 = ranks.iter().map(|&r| r as u128).product();
    if id >= total {
        return Err(Error::Config(format!("path id {id} out of range ({total} paths)")));
    }
    let mut rem = id;
    let mut tuple = vec![0u8; ranks.len()];
    for (i, &r) in ranks.iter().enumerate().rev() {
        tuple[i] = (rem % r as u128) as u8;
        rem /= r as u128;
    }
    Ok(tuple)
}

fn path_weight(prepared: &Prepared, tuple: &[u8]) -> f64 {
    prepared
        .cross
        .iter()
        .zip(tuple.iter())
        .map(|(c, &i)| {
            let l = c.decomposition.terms[i as usize].lambda;
            l * l
        })
        .product()
}

fn path_set_fidelity(prepared: &Prepared, selected: &[Vec<u8>], g: usize) -> f64 {
    let norm = 4.0f64.powi(g as i32);
    selected.iter().map(|t| path_weight(prepared, t)).sum::<f64>() / norm
}

/// Smallest weight-sorted path prefix with total fidelity >= f.
/// Ties are broken by ascending path index for reproducibility.
fn top_fidelity_paths(ranks: &[u8], prepared: &Prepared, f: f64) -> Vec<Vec<u8>> {
    let total: u128 = ranks.iter().map(|&r| r as u128).product();
    let mut paths: Vec<(f64, u128)> = (0..total)
        .map(|id| {
            let tuple = decode_path(ranks, id).unwrap();
            (path_weight(prepared, &tuple), id)
        })
        .collect();
    paths.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));
    let norm = 4.0f64.powi(ranks.len() as i32);
    let mut out = Vec::new();
    let mut cum = 0.0;
    for (w, id) in paths {
        out.push(decode_path(ranks, id).unwrap());
        cum += w / norm;
        if cum >= f - 1e-12 {
            break;
        }
    }
    out
}

/// Sums path contributions into per-query amplitudes. `selected`, when
/// given, restricts the sum to those index tuples (sorted). Work is split
/// over the leading cross gates' index assignments; partial sums are
/// reduced in run order, so the result does not depend on thread count.
fn sum_paths<P: Precision>(
    prepared: &Prepared,
    queries: &[(u64, u64)],
    selected: Option<&[Vec<u8>]>,
    opts: &SfaOptions,
) -> Result<Vec<C>> {
    let g = prepared.cross.len();

    let mut s1 = StateVector::<P>::zero(prepared.n1);
    let mut s2 = StateVector::<P>::zero(prepared.n2);
    apply_local(&mut s1, &prepared.segments[0].0);
    apply_local(&mut s2, &prepared.segments[0].1);

    struct Ctx<'a, P: Precision> {
        prepared: &'a Prepared,
        queries: &'a [(u64, u64)],
        _marker: std::marker::PhantomData<P>,
    }

    // Leaf and branch logic shared by both modes. `paths` is the sorted
    // selected-tuple slice for subset mode, or None for the full sum.
    fn descend<P: Precision>(
        ctx: &Ctx<P>,
        depth: usize,
        coeff: f64,
        s1: &StateVector<P>,
        s2: &StateVector<P>,
        paths: Option<&[Vec<u8>]>,
        out: &mut [C],
    ) {
        let g = ctx.prepared.cross.len();
        if depth == g {
            for (k, &(i1, i2)) in ctx.queries.iter().enumerate() {
                out[k] += s1.amp(i1) * s2.amp(i2) * coeff;
            }
            return;
        }
        let cross = &ctx.prepared.cross[depth];
        let terms = &cross.decomposition.terms;
        for (ti, term) in terms.iter().enumerate() {
            let sub: Option<&[Vec<u8>]> = match paths {
                None => None,
                Some(list) => {
                    let lo = list.partition_point(|t| t[depth] < ti as u8);
                    let hi = list.partition_point(|t| t[depth] <= ti as u8);
                    if lo == hi {
                        continue;
                    }
                    Some(&list[lo..hi])
                }
            };
            let mut t1 = s1.clone();
            let mut t2 = s2.clone();
            if cross.a_on_side1 {
                t1.apply(&[cross.a_local], &term.op_a);
                t2.apply(&[cross.b_local], &term.op_b);
            } else {
                t2.apply(&[cross.a_local], &term.op_a);
                t1.apply(&[cross.b_local], &term.op_b);
            }
            apply_local(&mut t1, &ctx.prepared.segments[depth + 1].0);
            apply_local(&mut t2, &ctx.prepared.segments[depth + 1].1);
            descend(ctx, depth + 1, coeff * term.lambda, &t1, &t2, sub, out);
        }
    }

    let ctx = Ctx::<P> {
        prepared,
        queries,
        _marker: std::marker::PhantomData,
    };

    let prefix = opts.prefix_parallel_len.min(g);
    if prefix == 0 {
        let mut out = vec![ZERO; queries.len()];
        let sel = selected.map(|s| s as &[Vec<u8>]);
        descend(&ctx, 0, 1.0, &s1, &s2, sel, &mut out);
        return Ok(out);
    }

    // Enumerate the prefix index tuples in lexicographic order.
    let prefix_ranks: Vec<u8> = prepared.cross[..prefix]
        .iter()
        .map(|c| c.decomposition.rank() as u8)
        .collect();
    let run_count: u128 = prefix_ranks.iter().map(|&r| r as u128).product();
    let runs: Vec<Vec<u8>> = (0..run_count)
        .map(|id| decode_path(&prefix_ranks, id).unwrap())
        .collect();

    let partials: Vec<Vec<C>> = runs
        .par_iter()
        .map(|tuple| {
            let mut out = vec![ZERO; queries.len()];
            // narrow the selected set to this prefix
            let sel: Option<&[Vec<u8>]> = match selected {
                None => None,
                Some(list) => {
                    let lo = list.partition_point(|t| t[..prefix] < tuple[..]);
                    let hi = list.partition_point(|t| t[..prefix] <= tuple[..]);
                    if lo == hi {
                        return out;
                    }
                    Some(&list[lo..hi])
                }
            };
            let mut t1 = s1.clone();
            let mut t2 = s2.clone();
            let mut coeff = 1.0;
            for (d, &ti) in tuple.iter().enumerate() {
                let cross = &prepared.cross[d];
                let term = &cross.decomposition.terms[ti as usize];
                if cross.a_on_side1 {
                    t1.apply(&[cross.a_local], &term.op_a);
                    t2.apply(&[cross.b_local], &term.op_b);
                } else {
                    t2.apply(&[cross.a_local], &term.op_a);
                    t1.apply(&[cross.b_local], &term.op_b);
                }
                apply_local(&mut t1, &prepared.segments[d + 1].0);
                apply_local(&mut t2, &prepared.segments[d + 1].1);
                coeff *= term.lambda;
            }
            descend(&ctx, prefix, coeff, &t1, &t2, sel, &mut out);
            out
        })
        .collect();

    let mut out = vec![ZERO; queries.len()];
    for partial in partials {
        for (o, p) in out.iter_mut().zip(partial.iter()) {
            *o += p;
        }
    }
    Ok(out)
}

/// Ranks of the cross gates exactly as the amplitude engine will
/// enumerate them (after the optional boundary rewrite). Path ids in
/// subset mode and run manifests are defined against these.
pub fn prepared_ranks(
    circuit: &Circuit,
    cut_spec: &CutSpec,
    simplify: bool,
) -> Result<Vec<u8>> {
    let n = circuit.n_qubits();
    let cut = Cut::from_spec(circuit, cut_spec)?;
    let ops = lower(circuit);
    let side1 = cut.membership(n);
    let ops = if simplify {
        simplify_boundary(&ops, n, &side1).ops
    } else {
        ops
    };
    let prepared = prepare(&ops, n, &cut, (0..n).collect());
    Ok(prepared.ranks())
}

/// Paper-convention path count: the product of per-cross-gate Schmidt
/// ranks, with boundary-formation gates counted at rank 2 regardless of
/// their exact parameters. Returns the total and the per-gate ranks.
pub fn path_count(circuit: &Circuit, cut_spec: &CutSpec) -> Result<(u128, Vec<u8>)> {
    let cut = Cut::from_spec(circuit, cut_spec)?;
    let ops = lower(circuit);
    let side1 = cut.membership(circuit.n_qubits());
    let (starts, ends) = boundary_candidates(&ops, &side1);
    let boundary: BTreeSet<usize> = starts.into_iter().chain(ends).collect();
    let mut ranks = Vec::new();
    for (i, op) in ops.iter().enumerate() {
        if let Op::Two { a, b, kind } = op {
            if side1[*a] != side1[*b] {
                let r = if boundary.contains(&i) {
                    2u8
                } else {
                    schmidt_decompose(kind).rank() as u8
                };
                ranks.push(r);
            }
        }
    }
    let total = ranks
        .iter()
        .map(|&r| r as u128)
        .try_fold(1u128, u128::checked_mul)
        .ok_or(Error::SearchSpaceTooLarge(u128::MAX))?;
    Ok((total, ranks))
}

/// Descriptor of one prefix run: the fixed Schmidt indices of the leading
/// cross gates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefixRun {
    pub id: u128,
    pub prefix_indices: Vec<u8>,
}

/// Number of independent runs produced by fixing the first `prefix_len`
/// cross-gate indices.
pub fn count_prefix_runs(ranks: &[u8], prefix_len: usize) -> Result<u128> {
    if prefix_len > ranks.len() {
        return Err(Error::PrefixTooLong { prefix_len, gates: ranks.len() });
    }
    ranks[..prefix_len]
        .iter()
        .map(|&r| r as u128)
        .try_fold(1u128, u128::checked_mul)
        .ok_or(Error::SearchSpaceTooLarge(u128::MAX))
}

/// Materializes the run descriptors. The runs partition the path space:
/// every path extends exactly one prefix assignment.
pub fn enumerate_prefix_runs(ranks: &[u8], prefix_len: usize) -> Result<Vec<PrefixRun>> {
    let count = count_prefix_runs(ranks, prefix_len)?;
    if count > MAX_ENUMERATED_PATHS {
        return Err(Error::SearchSpaceTooLarge(count));
    }
    let prefix_ranks = &ranks[..prefix_len];
    Ok((0..count)
        .map(|id| PrefixRun {
            id,
            prefix_indices: decode_path(prefix_ranks, id).unwrap(),
        })
        .collect())
}
