//! QCIS text emission and parsing for the instruction subset
//! {X2P, Y2P, XY2P, FSIM, B, M, I}.
//!
//! One instruction per line, `//` starts a comment. sqrt(W) is emitted as a
//! +pi/2 XY-plane rotation at azimuth pi/4. FSIM instructions reference a
//! parameter-set index rather than carrying gate parameters, so parsing
//! takes a parameter table; index 1 is the first entry. A bare `B` line is
//! used as a global layer barrier. Layers are also inferred from gate
//! ordering: a qubit collision or a switch between single- and two-qubit
//! instructions starts a new layer.

use crate::circuit::{Circuit, CircuitVariant, Layer, SingleGate, TwoGate, CIRCUIT_FORMAT_VERSION};
use crate::error::{Error, Result};
use crate::gates::{ISwapLikeParams, SingleQubitGate, TwoQubitKind};
use crate::lattice::LatticeTopology;
use std::collections::{BTreeMap, BTreeSet};

const SQRT_W_AZIMUTH: f64 = std::f64::consts::FRAC_PI_4;

/// Emits a circuit as QCIS text. Gate-parameter sets are collected into a
/// table in first-use order and referenced by index; the table for a
/// generated circuit with uniform parameters has a single entry.
pub fn emit_qcis(circuit: &Circuit) -> Result<(String, Vec<ISwapLikeParams>)> {
    let mut out = String::new();
    let mut table: Vec<ISwapLikeParams> = Vec::new();
    let t = &circuit.topology;

    for (i, layer) in circuit.layers.iter().enumerate() {
        if i > 0 {
            out.push_str("B\n");
        }
        match layer {
            Layer::Single { gates } => {
                let mut gates = gates.clone();
                gates.sort_by_key(|g| g.q);
                for g in &gates {
                    let name = t.qubit_name(circuit.qubit_order[g.q]);
                    match g.g {
                        SingleQubitGate::SqrtX => out.push_str(&format!("X2P {name}\n")),
                        SingleQubitGate::SqrtY => out.push_str(&format!("Y2P {name}\n")),
                        SingleQubitGate::SqrtW => {
                            out.push_str(&format!("XY2P {name} {:.15}\n", SQRT_W_AZIMUTH))
                        }
                    }
                }
            }
            Layer::Two { gates } => {
                let mut lines = Vec::new();
                for g in gates {
                    let params = match g.kind {
                        TwoQubitKind::ISwapLike(p) => p,
                        TwoQubitKind::CPhase { .. } => {
                            return Err(Error::NoQcisEncoding(
                                "controlled-phase gate is outside the supported subset".into(),
                            ))
                        }
                    };
                    let idx = match table.iter().position(|p| *p == params) {
                        Some(i) => i + 1,
                        None => {
                            table.push(params);
                            table.len()
                        }
                    };
                    let e = crate::lattice::Edge::new(
                        circuit.qubit_order[g.a],
                        circuit.qubit_order[g.b],
                    );
                    lines.push(format!("FSIM {} {idx}\n", t.coupler_name(&e)));
                }
                lines.sort();
                for l in lines {
                    out.push_str(&l);
                }
            }
        }
    }
    for p in &circuit.qubit_order {
        out.push_str(&format!("M {}\n", t.qubit_name(*p)));
    }
    Ok((out, table))
}

fn parse_qubit(tok: &str, line: usize) -> Result<usize> {
    let idx = tok
        .strip_prefix('Q')
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&i| i >= 1);
    idx.map(|i| i - 1).ok_or_else(|| Error::QcisParse {
        line,
        msg: format!("malformed qubit name {tok:?}"),
    })
}

fn parse_coupler(tok: &str, line: usize) -> Result<(usize, usize)> {
    let body = tok.strip_prefix('G').ok_or_else(|| Error::QcisParse {
        line,
        msg: format!("malformed coupler name {tok:?}"),
    })?;
    if body.len() % 2 != 0 || body.is_empty() || !body.chars().all(|c| c.is_ascii_digit()) {
        return Err(Error::QcisParse {
            line,
            msg: format!("malformed coupler name {tok:?}"),
        });
    }
    let half = body.len() / 2;
    let hi: usize = body[..half].parse().unwrap();
    let lo: usize = body[half..].parse().unwrap();
    if hi == 0 || lo == 0 || hi == lo {
        return Err(Error::QcisParse {
            line,
            msg: format!("coupler {tok:?} does not name two distinct qubits"),
        });
    }
    Ok((hi - 1, lo - 1))
}

enum Instr {
    One(usize, SingleQubitGate),
    Two(usize, usize, usize), // grid indices + parameter-set index
    Barrier,
    Measure(usize),
    Idle,
}

/// Parses QCIS text into a circuit.
///
/// The lattice embedding is not part of the format, so the returned circuit
/// carries a synthetic single-row topology, no pattern metadata and the
/// `Full` variant; compare structure with [`Circuit::structurally_equal`].
pub fn parse_qcis(text: &str, fsim_table: &[ISwapLikeParams]) -> Result<Circuit> {
    let mut instrs: Vec<(usize, Instr)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let stripped = match raw.find("//") {
            Some(i) => &raw[..i],
            None => raw,
        };
        let mut toks = stripped.split_whitespace();
        let op = match toks.next() {
            Some(op) => op,
            None => continue,
        };
        let instr = match op {
            "X2P" | "Y2P" => {
                let q = parse_qubit(toks.next().unwrap_or(""), line)?;
                let g = if op == "X2P" {
                    SingleQubitGate::SqrtX
                } else {
                    SingleQubitGate::SqrtY
                };
                Instr::One(q, g)
            }
            "XY2P" => {
                let q = parse_qubit(toks.next().unwrap_or(""), line)?;
                let az: f64 = toks
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::QcisParse {
                        line,
                        msg: "XY2P needs an azimuth".into(),
                    })?;
                if (az - SQRT_W_AZIMUTH).abs() > 1e-9 {
                    return Err(Error::QcisParse {
                        line,
                        msg: format!("unsupported XY2P azimuth {az} (only pi/4 maps to a gate)"),
                    });
                }
                Instr::One(q, SingleQubitGate::SqrtW)
            }
            "FSIM" => {
                let (hi, lo) = parse_coupler(toks.next().unwrap_or(""), line)?;
                let idx: usize = toks
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::QcisParse {
                        line,
                        msg: "FSIM needs a parameter-set index".into(),
                    })?;
                Instr::Two(lo.min(hi), lo.max(hi), idx)
            }
            "B" => Instr::Barrier,
            "M" | "MEASURE" => Instr::Measure(parse_qubit(toks.next().unwrap_or(""), line)?),
            "I" => {
                let _ = parse_qubit(toks.next().unwrap_or(""), line)?;
                Instr::Idle
            }
            other => {
                return Err(Error::QcisParse {
                    line,
                    msg: format!("unknown opcode {other:?}"),
                })
            }
        };
        instrs.push((line, instr));
    }

    // All grid indices named anywhere in the program.
    let mut named: BTreeSet<usize> = BTreeSet::new();
    for (_, i) in &instrs {
        match i {
            Instr::One(q, _) | Instr::Measure(q) => {
                named.insert(*q);
            }
            Instr::Two(a, b, _) => {
                named.insert(*a);
                named.insert(*b);
            }
            _ => {}
        }
    }
    let logical: BTreeMap<usize, usize> =
        named.iter().enumerate().map(|(l, &g)| (g, l)).collect();

    enum Building {
        None,
        Single(Vec<SingleGate>),
        Two(Vec<TwoGate>),
    }
    let mut layers: Vec<Layer> = Vec::new();
    let mut cur = Building::None;
    let mut used: BTreeSet<usize> = BTreeSet::new();
    let mut measured: BTreeSet<usize> = BTreeSet::new();

    fn flush(cur: &mut Building, layers: &mut Vec<Layer>, used: &mut BTreeSet<usize>) {
        match std::mem::replace(cur, Building::None) {
            Building::None => {}
            Building::Single(gates) => layers.push(Layer::Single { gates }),
            Building::Two(gates) => layers.push(Layer::Two { gates }),
        }
        used.clear();
    }

    for (line, i) in &instrs {
        match i {
            Instr::Barrier | Instr::Idle => flush(&mut cur, &mut layers, &mut used),
            Instr::One(q, g) => {
                if !measured.is_empty() {
                    return Err(Error::QcisParse {
                        line: *line,
                        msg: "gate after measurement".into(),
                    });
                }
                let lq = logical[q];
                let collision = used.contains(&lq);
                if collision || !matches!(cur, Building::Single(_) | Building::None) {
                    flush(&mut cur, &mut layers, &mut used);
                }
                if matches!(cur, Building::None) {
                    cur = Building::Single(Vec::new());
                }
                if let Building::Single(gates) = &mut cur {
                    gates.push(SingleGate { q: lq, g: *g });
                }
                used.insert(lq);
            }
            Instr::Two(a, b, idx) => {
                if !measured.is_empty() {
                    return Err(Error::QcisParse {
                        line: *line,
                        msg: "gate after measurement".into(),
                    });
                }
                let (la, lb) = (logical[a], logical[b]);
                let collision = used.contains(&la) || used.contains(&lb);
                if collision || !matches!(cur, Building::Two(_) | Building::None) {
                    flush(&mut cur, &mut layers, &mut used);
                }
                if matches!(cur, Building::None) {
                    cur = Building::Two(Vec::new());
                }
                let params = if *idx >= 1 && *idx <= fsim_table.len() {
                    fsim_table[*idx - 1]
                } else if *idx == 1 && fsim_table.is_empty() {
                    ISwapLikeParams::default()
                } else {
                    return Err(Error::QcisParse {
                        line: *line,
                        msg: format!("FSIM parameter-set index {idx} has no table entry"),
                    });
                };
                if let Building::Two(gates) = &mut cur {
                    gates.push(TwoGate {
                        a: la,
                        b: lb,
                        kind: TwoQubitKind::ISwapLike(params),
                    });
                }
                used.insert(la);
                used.insert(lb);
            }
            Instr::Measure(q) => {
                flush(&mut cur, &mut layers, &mut used);
                measured.insert(logical[q]);
            }
        }
    }
    flush(&mut cur, &mut layers, &mut used);

    let cycles = layers
        .iter()
        .filter(|l| matches!(l, Layer::Two { .. }))
        .count();
    let max_grid = named.iter().max().copied().unwrap_or(0);
    let topology = LatticeTopology {
        rows: 1,
        cols: max_grid + 1,
        active: named.iter().map(|&g| (0, g)).collect(),
    };
    Ok(Circuit {
        version: CIRCUIT_FORMAT_VERSION.to_string(),
        topology,
        patterns: None,
        cycles,
        seed: 0,
        variant: CircuitVariant::Full,
        qubit_order: named.iter().map(|&g| (0, g)).collect(),
        layers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{generate_rqc, GateParams};
    use crate::lattice::{zuchongzhi56, LatticeTopology, PatternSet};

    #[test]
    fn sqrt_w_line_matches_device_listing() {
        let (t, p) = zuchongzhi56();
        let mut c = generate_rqc(&t, &p, 1, 3, CircuitVariant::Full, &GateParams::default())
            .unwrap();
        // force sqrt(W) on Q07 = grid index 6 = position (1, 0)
        let lq = c.logical_index((1, 0)).unwrap();
        if let Layer::Single { gates } = &mut c.layers[0] {
            gates[lq].g = SingleQubitGate::SqrtW;
            // keep the no-repeat rule intact in the next layer
        }
        if let Layer::Single { gates } = &mut c.layers[2] {
            if gates[lq].g == SingleQubitGate::SqrtW {
                gates[lq].g = SingleQubitGate::SqrtX;
            }
        }
        let (text, _) = emit_qcis(&c).unwrap();
        assert!(
            text.lines().any(|l| l == "XY2P Q07 0.785398163397448"),
            "missing exact sqrt(W) line"
        );
    }

    #[test]
    fn empty_circuit_emits_only_measurements() {
        let t = LatticeTopology::full(1, 2);
        let c = Circuit {
            version: CIRCUIT_FORMAT_VERSION.into(),
            topology: t.clone(),
            patterns: None,
            cycles: 0,
            seed: 0,
            variant: CircuitVariant::Full,
            qubit_order: t.qubit_order(),
            layers: vec![],
        };
        let (text, _) = emit_qcis(&c).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines, vec!["M Q01", "M Q02"]);
    }

    #[test]
    fn round_trip_preserves_structure() {
        let t = LatticeTopology::full(4, 3);
        let p = PatternSet::canonical(&t);
        for seed in 0..5 {
            let c = generate_rqc(&t, &p, 9, seed, CircuitVariant::Full, &GateParams::default())
                .unwrap();
            let (text, table) = emit_qcis(&c).unwrap();
            let back = parse_qcis(&text, &table).unwrap();
            assert!(c.structurally_equal(&back), "seed {seed}");
        }
    }

    #[test]
    fn parses_minimal_program() {
        let c = parse_qcis("X2P Q01\nM Q01", &[]).unwrap();
        assert_eq!(c.n_qubits(), 1);
        assert_eq!(c.layers.len(), 1);
        assert_eq!(c.cycles, 0);
    }

    #[test]
    fn unknown_opcode_rejected() {
        let e = parse_qcis("FROB Q01", &[]).unwrap_err();
        assert!(matches!(e, Error::QcisParse { line: 1, .. }));
    }

    #[test]
    fn malformed_names_rejected() {
        assert!(parse_qcis("X2P Z01", &[]).is_err());
        assert!(parse_qcis("FSIM Q0701 1", &[]).is_err());
        assert!(parse_qcis("FSIM G0707 1", &[]).is_err());
    }

    #[test]
    fn device_program_has_56_measured_qubits() {
        let (t, p) = zuchongzhi56();
        let c = generate_rqc(&t, &p, 2, 11, CircuitVariant::Full, &GateParams::default())
            .unwrap();
        let (text, table) = emit_qcis(&c).unwrap();
        assert_eq!(text.lines().filter(|l| l.starts_with("M ")).count(), 56);
        assert!(text.lines().any(|l| l == "M Q64"));
        let back = parse_qcis(&text, &table).unwrap();
        assert_eq!(back.n_qubits(), 56);
        assert!(c.structurally_equal(&back));
    }

    #[test]
    fn accepts_listing_style_snippet_without_barriers() {
        let snippet = "\
X2P Q01
Y2P Q02
XY2P Q07 0.785398163397448
FSIM G1003 1
FSIM G1104 1
M Q01
M Q02
M Q03 // trailing comment
";
        let c = parse_qcis(snippet, &[ISwapLikeParams::default()]).unwrap();
        assert_eq!(c.cycles, 1);
        assert_eq!(c.layers.len(), 2);
    }
}
