//! Rectangular qubit lattice with diagonal couplers and the A/B/C/D
//! two-qubit gate patterns.
//!
//! Qubits sit on a `rows x cols` grid. Odd rows are drawn shifted half a
//! cell to the left, so every qubit couples diagonally to up to two qubits
//! in the row above and two in the row below. An edge whose lower endpoint
//! lies to the right of its upper endpoint is a 45-degree coupler, to the
//! left a 135-degree coupler. On the full 11x6 grid this gives 66 qubits
//! and 110 couplers, split 55/55 between the two orientations.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Lattice position, `(row, col)`.
pub type Pos = (usize, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Deg45,
    Deg135,
}

/// An undirected coupler between two diagonally adjacent qubits.
/// `a` is always the endpoint with the smaller row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub a: Pos,
    pub b: Pos,
}

impl Edge {
    pub fn new(p: Pos, q: Pos) -> Edge {
        if p.0 <= q.0 {
            Edge { a: p, b: q }
        } else {
            Edge { a: q, b: p }
        }
    }

    /// Orientation from the staggered-grid geometry (odd rows shifted left).
    pub fn orientation(&self) -> Orientation {
        let (r, c) = self.a;
        let right = if r % 2 == 0 { self.b.1 == c + 1 } else { self.b.1 == c };
        if right {
            Orientation::Deg45
        } else {
            Orientation::Deg135
        }
    }

    pub fn touches(&self, p: Pos) -> bool {
        self.a == p || self.b == p
    }
}

/// The two diagonal neighbours below `(r, c)`, as `(deg135, deg45)`,
/// before clipping to the grid.
fn lower_neighbors(r: usize, c: usize) -> (Option<Pos>, Option<Pos>) {
    if r % 2 == 0 {
        // down-left keeps the column, down-right is col + 1
        (Some((r + 1, c)), Some((r + 1, c + 1)))
    } else {
        // down-left is col - 1, down-right keeps the column
        (c.checked_sub(1).map(|cc| (r + 1, cc)), Some((r + 1, c)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeTopology {
    pub rows: usize,
    pub cols: usize,
    pub active: BTreeSet<Pos>,
}

impl LatticeTopology {
    /// Full grid with every site active.
    pub fn full(rows: usize, cols: usize) -> LatticeTopology {
        let active = (0..rows)
            .flat_map(|r| (0..cols).map(move |c| (r, c)))
            .collect();
        LatticeTopology { rows, cols, active }
    }

    pub fn with_discarded(rows: usize, cols: usize, discarded: &[Pos]) -> LatticeTopology {
        let mut t = LatticeTopology::full(rows, cols);
        for p in discarded {
            t.active.remove(p);
        }
        t
    }

    pub fn n_qubits(&self) -> usize {
        self.active.len()
    }

    /// All couplers between active qubits, sorted.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for &(r, c) in &self.active {
            let (dl, dr) = lower_neighbors(r, c);
            for q in [dl, dr].into_iter().flatten() {
                if q.0 < self.rows && q.1 < self.cols && self.active.contains(&q) {
                    out.push(Edge::new((r, c), q));
                }
            }
        }
        out.sort();
        out
    }

    pub fn edges_with_orientation(&self, o: Orientation) -> Vec<Edge> {
        self.edges()
            .into_iter()
            .filter(|e| e.orientation() == o)
            .collect()
    }

    /// Logical qubit order: active sites in row-major order.
    pub fn qubit_order(&self) -> Vec<Pos> {
        self.active.iter().copied().collect()
    }

    /// Row-major index into the full grid (0-based), used for naming.
    pub fn grid_index(&self, p: Pos) -> usize {
        p.0 * self.cols + p.1
    }

    fn name_width(&self) -> usize {
        let max = self.rows * self.cols;
        std::cmp::max(2, max.to_string().len())
    }

    /// Device-style qubit name, e.g. `(0, 2)` -> `Q03` on a 6-column grid.
    pub fn qubit_name(&self, p: Pos) -> String {
        format!("Q{:0w$}", self.grid_index(p) + 1, w = self.name_width())
    }

    /// Coupler name: the larger qubit index first, both zero-padded.
    pub fn coupler_name(&self, e: &Edge) -> String {
        let (i, j) = (self.grid_index(e.a) + 1, self.grid_index(e.b) + 1);
        let (hi, lo) = if i > j { (i, j) } else { (j, i) };
        let w = self.name_width();
        format!("G{:0w$}{:0w$}", hi, lo, w = w)
    }
}

/// Identifier of one of the four two-qubit layer patterns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PatternId {
    A,
    B,
    C,
    D,
}

/// Layer sequence used by the random circuits: repeats cyclically past
/// eight cycles.
pub const PATTERN_SEQUENCE: [PatternId; 8] = [
    PatternId::A,
    PatternId::B,
    PatternId::C,
    PatternId::D,
    PatternId::C,
    PatternId::D,
    PatternId::A,
    PatternId::B,
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternSet {
    pub a: BTreeSet<Edge>,
    pub b: BTreeSet<Edge>,
    pub c: BTreeSet<Edge>,
    pub d: BTreeSet<Edge>,
}

impl PatternSet {
    pub fn get(&self, id: PatternId) -> &BTreeSet<Edge> {
        match id {
            PatternId::A => &self.a,
            PatternId::B => &self.b,
            PatternId::C => &self.c,
            PatternId::D => &self.d,
        }
    }

    /// Canonical pattern construction.
    ///
    /// Edges of each orientation form diagonal chains; edges along a chain
    /// must alternate between the two patterns of that orientation so that
    /// no pattern reuses a qubit. The phase of each chain is fixed by the
    /// chain's starting site `(r, c)`: the first edge goes to A (or C) iff
    /// `floor((r + c) / 2)` is odd. If that leaves A (or C) empty while its
    /// partner is not, the pair is swapped.
    pub fn canonical(topology: &LatticeTopology) -> PatternSet {
        let (a, b) = split_orientation(topology, Orientation::Deg45);
        let (c, d) = split_orientation(topology, Orientation::Deg135);
        PatternSet { a, b, c, d }
    }

    /// Checks pattern-set invariants against a topology. Returns a list of
    /// problems, empty when valid.
    pub fn problems(&self, topology: &LatticeTopology) -> Vec<String> {
        let mut out = Vec::new();
        let deg45: BTreeSet<Edge> = topology
            .edges_with_orientation(Orientation::Deg45)
            .into_iter()
            .collect();
        let deg135: BTreeSet<Edge> = topology
            .edges_with_orientation(Orientation::Deg135)
            .into_iter()
            .collect();

        for (name, set) in [("A", &self.a), ("B", &self.b), ("C", &self.c), ("D", &self.d)] {
            let mut seen: BTreeSet<Pos> = BTreeSet::new();
            for e in set.iter() {
                for p in [e.a, e.b] {
                    if !seen.insert(p) {
                        out.push(format!("pattern {name} reuses qubit {p:?}"));
                    }
                }
            }
        }
        if !self.a.is_disjoint(&self.b) {
            out.push("A and B overlap".into());
        }
        if !self.c.is_disjoint(&self.d) {
            out.push("C and D overlap".into());
        }
        let ab: BTreeSet<Edge> = self.a.union(&self.b).copied().collect();
        if ab != deg45 {
            out.push("A union B is not the 45-degree edge set".into());
        }
        let cd: BTreeSet<Edge> = self.c.union(&self.d).copied().collect();
        if cd != deg135 {
            out.push("C union D is not the 135-degree edge set".into());
        }
        out
    }

    pub fn validate(&self, topology: &LatticeTopology) -> Result<()> {
        let problems = self.problems(topology);
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidPatternSet(problems.join("; ")))
        }
    }
}

/// Walks the diagonal chains of one orientation, returning each chain as an
/// ordered edge list starting from the edge with no predecessor.
pub fn diagonal_chains(topology: &LatticeTopology, o: Orientation) -> Vec<Vec<Edge>> {
    let edges = topology.edges_with_orientation(o);
    // successor of an edge: the same-orientation edge leaving its lower endpoint
    let by_upper: BTreeMap<Pos, Edge> = edges.iter().map(|e| (e.a, *e)).collect();
    let lowers: BTreeSet<Pos> = edges.iter().map(|e| e.b).collect();

    let mut chains = Vec::new();
    for e in &edges {
        if lowers.contains(&e.a) {
            continue; // not a chain head
        }
        let mut chain = vec![*e];
        let mut cur = *e;
        while let Some(next) = by_upper.get(&cur.b) {
            chain.push(*next);
            cur = *next;
        }
        chains.push(chain);
    }
    chains.sort_by_key(|ch| ch[0]);
    chains
}

fn split_orientation(
    topology: &LatticeTopology,
    o: Orientation,
) -> (BTreeSet<Edge>, BTreeSet<Edge>) {
    let mut first = BTreeSet::new();
    let mut second = BTreeSet::new();
    for chain in diagonal_chains(topology, o) {
        let (r, c) = chain[0].a;
        let phase = ((r + c) / 2) % 2 == 1;
        for (i, e) in chain.into_iter().enumerate() {
            if (i % 2 == 0) == phase {
                first.insert(e);
            } else {
                second.insert(e);
            }
        }
    }
    if first.is_empty() && !second.is_empty() {
        std::mem::swap(&mut first, &mut second);
    }
    (first, second)
}

/// 56-qubit device layout: the 11x6 grid with ten sites discarded.
///
/// The discarded set and pattern phases are a best-effort transcription
/// from published program listings: eight of the ten discarded sites are
/// pinned by the visible instruction and measurement lines, the remaining
/// two are chosen from the hidden range to maximize connectivity. The
/// result has 93 couplers where the device reports using 94, so the real
/// machine either idled a coupler between active qubits or differs
/// slightly in geometry; the transcription is unverified and
/// device-specific results should be treated as informational.
pub fn zuchongzhi56() -> (LatticeTopology, PatternSet) {
    // 1-based row-major grid indices of the discarded sites.
    let discarded_idx: [usize; 10] = [5, 6, 18, 24, 30, 42, 54, 60, 65, 66];
    let discarded: Vec<Pos> = discarded_idx
        .iter()
        .map(|&i| ((i - 1) / 6, (i - 1) % 6))
        .collect();
    let topology = LatticeTopology::with_discarded(11, 6, &discarded);
    let patterns = PatternSet::canonical(&topology);
    (topology, patterns)
}
