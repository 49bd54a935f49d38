//! Random quantum circuit construction, validation and JSON serialization.
//!
//! A circuit of `m` cycles is `m + 1` single-qubit layers interleaved with
//! `m` two-qubit pattern layers. Single-qubit gates are drawn uniformly from
//! {sqrt(X), sqrt(Y), sqrt(W)} with the constraint that a qubit never
//! repeats its gate from the previous cycle. Two-qubit layer `k` applies
//! pattern `ABCDCDAB[k mod 8]`.

use crate::error::{Error, Result};
use crate::gates::{ISwapLikeParams, SingleQubitGate, TwoQubitKind, SINGLE_QUBIT_GATES};
use crate::lattice::{Edge, LatticeTopology, PatternSet, Pos, PATTERN_SEQUENCE};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

pub const CIRCUIT_FORMAT_VERSION: &str = "rqc-v1";

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingleGate {
    pub q: usize,
    pub g: SingleQubitGate,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoGate {
    pub a: usize,
    pub b: usize,
    #[serde(flatten)]
    pub kind: TwoQubitKind,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Layer {
    Single { gates: Vec<SingleGate> },
    Two { gates: Vec<TwoGate> },
}

/// A bipartition of the active qubits, named by the side-1 positions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutSpec {
    pub side1: BTreeSet<Pos>,
}

impl CutSpec {
    pub fn validate(&self, topology: &LatticeTopology) -> Result<()> {
        if self.side1.is_empty() {
            return Err(Error::InvalidCut("side 1 is empty".into()));
        }
        if !self.side1.is_subset(&topology.active) {
            return Err(Error::InvalidCut(
                "side 1 contains qubits outside the active set".into(),
            ));
        }
        if self.side1.len() == topology.active.len() {
            return Err(Error::InvalidCut("side 2 is empty".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CircuitVariant {
    Full,
    Patch { cut: CutSpec },
    Elided { cut: CutSpec, elided_cycles: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    pub version: String,
    pub topology: LatticeTopology,
    /// Absent for circuits recovered from formats that do not carry
    /// pattern metadata (e.g. QCIS text).
    pub patterns: Option<PatternSet>,
    pub cycles: usize,
    pub seed: u64,
    pub variant: CircuitVariant,
    /// Logical qubit index -> lattice position.
    pub qubit_order: Vec<Pos>,
    pub layers: Vec<Layer>,
}

/// Per-edge iSWAP-like parameters, falling back to a default.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct GateParams {
    #[serde(default)]
    pub default: Option<ISwapLikeParams>,
    #[serde(default)]
    pub per_edge: BTreeMap<String, ISwapLikeParams>,
}

impl GateParams {
    pub fn for_edge(&self, topology: &LatticeTopology, e: &Edge) -> ISwapLikeParams {
        if let Some(p) = self.per_edge.get(&topology.coupler_name(e)) {
            return *p;
        }
        self.default.unwrap_or_default()
    }
}

impl Circuit {
    pub fn n_qubits(&self) -> usize {
        self.qubit_order.len()
    }

    pub fn logical_index(&self, p: Pos) -> Option<usize> {
        self.qubit_order.iter().position(|&q| q == p)
    }

    /// Number of two-qubit gates over the whole circuit.
    pub fn two_qubit_gate_count(&self) -> usize {
        self.layers
            .iter()
            .map(|l| match l {
                Layer::Two { gates } => gates.len(),
                _ => 0,
            })
            .sum()
    }

    pub fn single_qubit_gate_count(&self) -> usize {
        self.layers
            .iter()
            .map(|l| match l {
                Layer::Single { gates } => gates.len(),
                _ => 0,
            })
            .sum()
    }

    /// Two-qubit gates whose endpoints fall on opposite sides of `side1`
    /// (given as logical indices).
    pub fn cross_gate_count(&self, side1: &BTreeSet<usize>) -> usize {
        self.layers
            .iter()
            .map(|l| match l {
                Layer::Two { gates } => gates
                    .iter()
                    .filter(|g| side1.contains(&g.a) != side1.contains(&g.b))
                    .count(),
                _ => 0,
            })
            .sum()
    }

    pub fn side1_logical(&self, cut: &CutSpec) -> BTreeSet<usize> {
        self.qubit_order
            .iter()
            .enumerate()
            .filter(|(_, p)| cut.side1.contains(p))
            .map(|(i, _)| i)
            .collect()
    }

    /// Layer-structure comparison that ignores lattice metadata. Used for
    /// round-trips through formats that carry only gates and ordering;
    /// since a gateless layer has no textual representation, empty layers
    /// are skipped on both sides.
    pub fn structurally_equal(&self, other: &Circuit) -> bool {
        let keep = |l: &&Layer| match l {
            Layer::Single { gates } => !gates.is_empty(),
            Layer::Two { gates } => !gates.is_empty(),
        };
        let mine: Vec<&Layer> = self.layers.iter().filter(keep).collect();
        let theirs: Vec<&Layer> = other.layers.iter().filter(keep).collect();
        if self.n_qubits() != other.n_qubits() || mine.len() != theirs.len() {
            return false;
        }
        for (x, y) in mine.into_iter().zip(theirs.into_iter()) {
            match (x, y) {
                (Layer::Single { gates: gx }, Layer::Single { gates: gy }) => {
                    let mut gx = gx.clone();
                    let mut gy = gy.clone();
                    gx.sort_by_key(|g| g.q);
                    gy.sort_by_key(|g| g.q);
                    if gx != gy {
                        return false;
                    }
                }
                (Layer::Two { gates: gx }, Layer::Two { gates: gy }) => {
                    let mut gx = gx.clone();
                    let mut gy = gy.clone();
                    gx.sort_by_key(|g| (g.a, g.b));
                    gy.sort_by_key(|g| (g.a, g.b));
                    if gx != gy {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        true
    }
}

/// Generates a random quantum circuit. Deterministic for a fixed seed; the
/// patch and elided variants of a seed share its single-qubit layers.
pub fn generate_rqc(
    topology: &LatticeTopology,
    patterns: &PatternSet,
    m: usize,
    seed: u64,
    variant: CircuitVariant,
    gate_params: &GateParams,
) -> Result<Circuit> {
    if m < 1 {
        return Err(Error::Config("cycle count m must be at least 1".into()));
    }
    patterns.validate(topology)?;
    let cut_side1 = match &variant {
        CircuitVariant::Full => None,
        CircuitVariant::Patch { cut } => {
            cut.validate(topology)?;
            Some(cut.side1.clone())
        }
        CircuitVariant::Elided { cut, elided_cycles } => {
            cut.validate(topology)?;
            if *elided_cycles > m {
                return Err(Error::ElidedCyclesExceedDepth {
                    elided: *elided_cycles,
                    cycles: m,
                });
            }
            Some(cut.side1.clone())
        }
    };

    let order = topology.qubit_order();
    let n = order.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut layers = Vec::with_capacity(2 * m + 1);
    let mut prev: Vec<Option<SingleQubitGate>> = vec![None; n];

    for cycle in 0..=m {
        let mut gates = Vec::with_capacity(n);
        for q in 0..n {
            let g = match prev[q] {
                None => SINGLE_QUBIT_GATES[rng.gen_range(0..3)],
                Some(p) => {
                    let remaining: Vec<SingleQubitGate> = SINGLE_QUBIT_GATES
                        .iter()
                        .copied()
                        .filter(|&g| g != p)
                        .collect();
                    remaining[rng.gen_range(0..2)]
                }
            };
            prev[q] = Some(g);
            gates.push(SingleGate { q, g });
        }
        layers.push(Layer::Single { gates });

        if cycle == m {
            break;
        }
        let pattern = PATTERN_SEQUENCE[cycle % 8];
        let mut gates = Vec::new();
        for e in patterns.get(pattern) {
            let crosses = cut_side1
                .as_ref()
                .map(|s| s.contains(&e.a) != s.contains(&e.b))
                .unwrap_or(false);
            let drop = match &variant {
                CircuitVariant::Full => false,
                CircuitVariant::Patch { .. } => crosses,
                CircuitVariant::Elided { elided_cycles, .. } => crosses && cycle < *elided_cycles,
            };
            if drop {
                continue;
            }
            let a = order.iter().position(|&p| p == e.a).unwrap();
            let b = order.iter().position(|&p| p == e.b).unwrap();
            gates.push(TwoGate {
                a,
                b,
                kind: TwoQubitKind::ISwapLike(gate_params.for_edge(topology, e)),
            });
        }
        layers.push(Layer::Two { gates });
    }

    Ok(Circuit {
        version: CIRCUIT_FORMAT_VERSION.to_string(),
        topology: topology.clone(),
        patterns: Some(patterns.clone()),
        cycles: m,
        seed,
        variant,
        qubit_order: order,
        layers,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Violation {
    LayerStructure { detail: String },
    IncompleteSingleLayer { layer: usize, missing: Vec<usize> },
    RepeatedSingleQubitGate { qubit: usize, cycle: usize },
    OverlappingTargets { layer: usize, qubit: usize },
    PatternMismatch { layer: usize, detail: String },
    CrossCutGateInVariant { layer: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::LayerStructure { detail } => write!(f, "layer structure: {detail}"),
            Violation::IncompleteSingleLayer { layer, missing } => {
                write!(f, "single layer {layer} misses qubits {missing:?}")
            }
            Violation::RepeatedSingleQubitGate { qubit, cycle } => {
                write!(f, "qubit {qubit} repeats its gate in cycle {cycle}")
            }
            Violation::OverlappingTargets { layer, qubit } => {
                write!(f, "layer {layer} has two gates on qubit {qubit}")
            }
            Violation::PatternMismatch { layer, detail } => {
                write!(f, "layer {layer} pattern mismatch: {detail}")
            }
            Violation::CrossCutGateInVariant { layer } => {
                write!(f, "layer {layer} keeps a cross-cut gate forbidden by the variant")
            }
        }
    }
}

/// Checks every circuit invariant; an empty list means the circuit is
/// well formed. Pattern checks are skipped when the circuit carries no
/// pattern metadata.
pub fn validate(circuit: &Circuit) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = circuit.n_qubits();
    let m = circuit.cycles;

    if circuit.layers.len() != 2 * m + 1 {
        out.push(Violation::LayerStructure {
            detail: format!(
                "expected {} layers for {} cycles, found {}",
                2 * m + 1,
                m,
                circuit.layers.len()
            ),
        });
    }
    for (i, layer) in circuit.layers.iter().enumerate() {
        let want_single = i % 2 == 0;
        let is_single = matches!(layer, Layer::Single { .. });
        if want_single != is_single {
            out.push(Violation::LayerStructure {
                detail: format!("layer {i} has the wrong kind"),
            });
        }
    }

    // Per-layer target disjointness, single-layer completeness, repeats.
    let mut prev_single: Vec<Option<SingleQubitGate>> = vec![None; n];
    let mut cycle = 0usize;
    for (i, layer) in circuit.layers.iter().enumerate() {
        let mut used: BTreeMap<usize, usize> = BTreeMap::new();
        match layer {
            Layer::Single { gates } => {
                for g in gates {
                    *used.entry(g.q).or_default() += 1;
                }
                let missing: Vec<usize> = (0..n).filter(|q| !used.contains_key(q)).collect();
                if !missing.is_empty() {
                    out.push(Violation::IncompleteSingleLayer { layer: i, missing });
                }
                for g in gates {
                    if g.q < n {
                        if prev_single[g.q] == Some(g.g) {
                            out.push(Violation::RepeatedSingleQubitGate {
                                qubit: g.q,
                                cycle,
                            });
                        }
                        prev_single[g.q] = Some(g.g);
                    }
                }
                cycle += 1;
            }
            Layer::Two { gates } => {
                for g in gates {
                    *used.entry(g.a).or_default() += 1;
                    *used.entry(g.b).or_default() += 1;
                }
            }
        }
        for (&q, &count) in &used {
            if count > 1 {
                out.push(Violation::OverlappingTargets { layer: i, qubit: q });
            }
        }
    }

    // Pattern membership and variant constraints for two-qubit layers.
    if let Some(patterns) = &circuit.patterns {
        let mut k = 0usize;
        for (i, layer) in circuit.layers.iter().enumerate() {
            if let Layer::Two { gates } = layer {
                let expected = patterns.get(PATTERN_SEQUENCE[k % 8]);
                for g in gates {
                    let (pa, pb) = match (
                        circuit.qubit_order.get(g.a),
                        circuit.qubit_order.get(g.b),
                    ) {
                        (Some(&pa), Some(&pb)) => (pa, pb),
                        _ => {
                            out.push(Violation::PatternMismatch {
                                layer: i,
                                detail: format!("gate ({}, {}) targets unknown qubits", g.a, g.b),
                            });
                            continue;
                        }
                    };
                    let e = Edge::new(pa, pb);
                    if !expected.contains(&e) {
                        out.push(Violation::PatternMismatch {
                            layer: i,
                            detail: format!("edge {e:?} not in pattern {:?}", PATTERN_SEQUENCE[k % 8]),
                        });
                    }
                }
                k += 1;
            }
        }
    }

    // Variant constraints on cross-cut gates.
    let (cut, elided) = match &circuit.variant {
        CircuitVariant::Full => (None, 0),
        CircuitVariant::Patch { cut } => (Some(cut), usize::MAX),
        CircuitVariant::Elided { cut, elided_cycles } => (Some(cut), *elided_cycles),
    };
    if let Some(cut) = cut {
        let side1 = circuit.side1_logical(cut);
        let mut k = 0usize;
        for (i, layer) in circuit.layers.iter().enumerate() {
            if let Layer::Two { gates } = layer {
                if k < elided {
                    for g in gates {
                        if side1.contains(&g.a) != side1.contains(&g.b) {
                            out.push(Violation::CrossCutGateInVariant { layer: i });
                        }
                    }
                }
                k += 1;
            }
        }
    }

    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::PatternId;

    fn toy(rows: usize, cols: usize) -> (LatticeTopology, PatternSet) {
        let t = LatticeTopology::full(rows, cols);
        let p = PatternSet::canonical(&t);
        (t, p)
    }

    #[test]
    fn pattern_sequence_is_abcdcdab() {
        let (t, p) = toy(2, 2);
        let c = generate_rqc(&t, &p, 8, 7, CircuitVariant::Full, &GateParams::default()).unwrap();
        let seq = [
            PatternId::A,
            PatternId::B,
            PatternId::C,
            PatternId::D,
            PatternId::C,
            PatternId::D,
            PatternId::A,
            PatternId::B,
        ];
        let mut k = 0;
        for layer in &c.layers {
            if let Layer::Two { gates } = layer {
                let expected = p.get(seq[k]);
                assert_eq!(gates.len(), expected.len(), "layer {k}");
                for g in gates {
                    let e = Edge::new(c.qubit_order[g.a], c.qubit_order[g.b]);
                    assert!(expected.contains(&e));
                }
                k += 1;
            }
        }
        assert_eq!(k, 8);
    }

    #[test]
    fn m1_layer_count_and_determinism() {
        let (t, p) = toy(3, 3);
        let c1 = generate_rqc(&t, &p, 1, 42, CircuitVariant::Full, &GateParams::default()).unwrap();
        let c2 = generate_rqc(&t, &p, 1, 42, CircuitVariant::Full, &GateParams::default()).unwrap();
        assert_eq!(c1.layers.len(), 3);
        let j1 = serde_json::to_vec(&c1).unwrap();
        let j2 = serde_json::to_vec(&c2).unwrap();
        assert_eq!(j1, j2);
    }

    #[test]
    fn no_repeated_single_qubit_gate_across_seeds() {
        let (t, p) = toy(2, 3);
        for seed in 0..1000 {
            let c =
                generate_rqc(&t, &p, 5, seed, CircuitVariant::Full, &GateParams::default()).unwrap();
            let mut prev: Vec<Option<SingleQubitGate>> = vec![None; c.n_qubits()];
            for layer in &c.layers {
                if let Layer::Single { gates } = layer {
                    for g in gates {
                        assert_ne!(prev[g.q], Some(g.g), "seed {seed}");
                        prev[g.q] = Some(g.g);
                    }
                }
            }
        }
    }

    #[test]
    fn generated_circuits_validate_clean() {
        for (rows, cols, m, seed) in [(2, 2, 8, 1), (3, 3, 5, 2), (4, 3, 12, 3), (2, 4, 20, 4)] {
            let (t, p) = toy(rows, cols);
            let c = generate_rqc(&t, &p, m, seed, CircuitVariant::Full, &GateParams::default())
                .unwrap();
            assert!(validate(&c).is_empty());
        }
    }

    #[test]
    fn patch_and_elided_cross_gate_counts() {
        let (t, p) = toy(4, 3);
        // horizontal cut between rows 1 and 2
        let side1: BTreeSet<Pos> = t.active.iter().copied().filter(|p| p.0 < 2).collect();
        let cut = CutSpec { side1 };
        let m = 10;
        let full =
            generate_rqc(&t, &p, m, 9, CircuitVariant::Full, &GateParams::default()).unwrap();
        let patch = generate_rqc(
            &t,
            &p,
            m,
            9,
            CircuitVariant::Patch { cut: cut.clone() },
            &GateParams::default(),
        )
        .unwrap();
        let elided = generate_rqc(
            &t,
            &p,
            m,
            9,
            CircuitVariant::Elided { cut: cut.clone(), elided_cycles: 3 },
            &GateParams::default(),
        )
        .unwrap();

        let side1 = full.side1_logical(&cut);
        assert_eq!(patch.cross_gate_count(&side1), 0);
        let full_cross = full.cross_gate_count(&side1);
        // count the cross gates of the first 3 cycles of the full circuit
        let mut early = 0;
        let mut k = 0;
        for layer in &full.layers {
            if let Layer::Two { gates } = layer {
                if k < 3 {
                    early += gates
                        .iter()
                        .filter(|g| side1.contains(&g.a) != side1.contains(&g.b))
                        .count();
                }
                k += 1;
            }
        }
        assert_eq!(elided.cross_gate_count(&side1), full_cross - early);
        assert!(validate(&patch).is_empty());
        assert!(validate(&elided).is_empty());
    }

    #[test]
    fn validate_catches_overlap_and_repeat() {
        let (t, p) = toy(2, 2);
        let mut c =
            generate_rqc(&t, &p, 2, 5, CircuitVariant::Full, &GateParams::default()).unwrap();
        // duplicate a gate inside the first two-qubit layer
        if let Layer::Two { gates } = &mut c.layers[1] {
            if let Some(g) = gates.first().copied() {
                gates.push(g);
            }
        }
        // force a repeat in the second single-qubit layer
        let first = match &c.layers[0] {
            Layer::Single { gates } => gates[0].g,
            _ => unreachable!(),
        };
        if let Layer::Single { gates } = &mut c.layers[2] {
            gates[0].g = first;
        }
        let v = validate(&c);
        assert!(v.iter().any(|x| matches!(x, Violation::OverlappingTargets { .. })));
        assert!(v
            .iter()
            .any(|x| matches!(x, Violation::RepeatedSingleQubitGate { qubit: 0, .. })));
    }

    #[test]
    fn elided_cycles_beyond_m_rejected() {
        let (t, p) = toy(2, 2);
        let side1: BTreeSet<Pos> = [(0usize, 0usize)].into_iter().collect();
        let r = generate_rqc(
            &t,
            &p,
            2,
            0,
            CircuitVariant::Elided { cut: CutSpec { side1 }, elided_cycles: 3 },
            &GateParams::default(),
        );
        assert!(matches!(r, Err(Error::ElidedCyclesExceedDepth { .. })));
    }
}
