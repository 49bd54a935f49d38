use crate::report;
use clap::Parser;
use rqc::circuit::{generate_rqc, validate, CircuitVariant, GateParams};
use rqc::error::{Error, Result};
use serde::Serialize;
use std::path::PathBuf;

#[derive(Parser, Serialize)]
pub struct Args {
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long)]
    pub cols: Option<usize>,
    /// Named device layout, e.g. `zuchongzhi56`.
    #[arg(long)]
    pub preset: Option<String>,
    /// Qubits to discard from the full grid, e.g. `Q05`.
    #[arg(long)]
    pub discard: Vec<String>,
    #[arg(long)]
    pub cycles: usize,
    /// Defaults to a fresh random seed, echoed in the report.
    #[arg(long)]
    pub seed: Option<u64>,
    /// full | patch | elided
    #[arg(long, default_value = "full")]
    pub variant: String,
    /// Cut JSON ({"side1": [[r, c], ...]}), required for patch/elided.
    #[arg(long)]
    pub cut: Option<PathBuf>,
    #[arg(long)]
    pub elided_cycles: Option<usize>,
    /// Gate-parameter file (JSON GateParams); defaults to
    /// theta = pi/2, phi = pi/6.
    #[arg(long)]
    pub params: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
    /// Also emit QCIS text here.
    #[arg(long)]
    pub qcis: Option<PathBuf>,
    /// Also write a generation report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Serialize)]
struct Outcome {
    n_qubits: usize,
    cycles: usize,
    two_qubit_gates: usize,
    violations: usize,
    circuit_hash: String,
}

pub fn run(mut args: Args) -> Result<()> {
    let seed = args.seed.unwrap_or_else(rand::random);
    args.seed = Some(seed);
    let (topology, patterns) =
        super::resolve_topology(args.preset.as_deref(), args.rows, args.cols, &args.discard)?;

    let cut = match &args.cut {
        Some(path) => Some(super::load_cut(path)?),
        None => None,
    };
    let variant = match args.variant.as_str() {
        "full" => CircuitVariant::Full,
        "patch" => CircuitVariant::Patch {
            cut: cut.clone().ok_or_else(|| Error::Config("patch variant needs --cut".into()))?,
        },
        "elided" => CircuitVariant::Elided {
            cut: cut.clone().ok_or_else(|| Error::Config("elided variant needs --cut".into()))?,
            elided_cycles: args
                .elided_cycles
                .ok_or_else(|| Error::Config("elided variant needs --elided-cycles".into()))?,
        },
        other => return Err(Error::Config(format!("unknown variant {other:?}"))),
    };

    let gate_params: GateParams = match &args.params {
        Some(path) => serde_json::from_slice(&std::fs::read(path)?)?,
        None => GateParams::default(),
    };

    let circuit = generate_rqc(&topology, &patterns, args.cycles, seed, variant, &gate_params)?;
    let violations = validate(&circuit);
    if !violations.is_empty() {
        let lines: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(Error::Config(format!(
            "generated circuit failed validation: {}",
            lines.join("; ")
        )));
    }
    rqc::io::save_circuit(&circuit, &args.out)?;
    if let Some(qcis_path) = &args.qcis {
        let (text, _) = rqc::qcis::emit_qcis(&circuit)?;
        std::fs::write(qcis_path, text)?;
    }

    if let Some(report_path) = &args.report {
        let mut inputs: Vec<&std::path::Path> = Vec::new();
        if let Some(p) = &args.cut {
            inputs.push(p);
        }
        if let Some(p) = &args.params {
            inputs.push(p);
        }
        let outcome = Outcome {
            n_qubits: circuit.n_qubits(),
            cycles: circuit.cycles,
            two_qubit_gates: circuit.two_qubit_gate_count(),
            violations: 0,
            circuit_hash: rqc::io::circuit_hash(&circuit)?,
        };
        let report = report::envelope(&inputs, Some(seed), &args, outcome)?;
        report::write_json(report_path, &report)?;
    }
    Ok(())
}
