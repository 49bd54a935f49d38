//! Random quantum circuit benchmarking toolkit.
//!
//! Generates Zuchongzhi-style random circuits on a diagonal-coupled
//! rectangular lattice, simulates them exactly (full state vector) and by
//! path decomposition over a circuit cut (Schrodinger-Feynman), searches
//! for cost-optimal cuts and gate patterns, runs the cross-entropy
//! benchmarking statistics, and evaluates closed-form classical/quantum
//! runtime models.
//!
//! Conventions used throughout:
//! - qubit 0 is the least significant bit of a basis-state index;
//! - in bitstring text, qubit 0 is the leftmost character;
//! - two-qubit matrices are 4x4 row-major with the first target qubit as
//!   the most significant bit of the 2-bit sub-index.

pub mod circuit;
pub mod cost;
pub mod cutopt;
pub mod error;
pub mod gates;
pub mod io;
pub mod lattice;
pub mod qcis;
pub mod sfa;
pub mod statevec;
pub mod xeb;

pub use circuit::{generate_rqc, validate, Circuit, CircuitVariant, CutSpec, GateParams};
pub use error::{Error, Result};
pub use gates::{ISwapLikeParams, SingleQubitGate, TwoQubitKind};
pub use lattice::{zuchongzhi56, Edge, LatticeTopology, PatternId, PatternSet};
