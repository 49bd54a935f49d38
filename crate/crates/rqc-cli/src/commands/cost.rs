use crate::report;
use clap::{Parser, Subcommand};
use rqc::cost::{
    advantage_region, sfa_core_hours, t_quantum, t_sa, t_sfa, tn_cost_scaling, CostConstants,
    TnReference, HOURS_PER_YEAR,
};
use rqc::error::{Error, Result};
use serde::Serialize;
use std::path::PathBuf;

#[derive(Parser, Serialize)]
pub struct Args {
    #[command(subcommand)]
    pub what: What,
}

#[derive(Subcommand, Serialize, Clone)]
pub enum What {
    /// Reference SFA run-time table (53q/20c, 56q/20c balanced and
    /// imbalanced cuts).
    TableS3 {
        #[arg(long)]
        out: PathBuf,
    },
    /// Tensor-network cost scaling for the two reference sampling tasks.
    Tn {
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        per_sample_flops: Option<f64>,
        #[arg(long)]
        n_samples: Option<f64>,
        #[arg(long)]
        fidelity: Option<f64>,
    },
    /// Closed-form runtime of one method at one point.
    Evaluate {
        #[arg(long)]
        out: PathBuf,
        /// sa | sfa | quantum
        #[arg(long)]
        method: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        fidelity: Option<f64>,
        #[arg(long)]
        patches: Option<usize>,
    },
    /// Advantage-region grid over (n, m), as JSON plus CSV.
    Grid {
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value = "zuchongzhi56")]
        preset: String,
        /// start:end:step
        #[arg(long, default_value = "10:56:2")]
        n_range: String,
        #[arg(long, default_value = "8:24:2")]
        m_range: String,
        #[arg(long, default_value_t = 0.0014)]
        e1: f64,
        #[arg(long, default_value_t = 0.0059)]
        e2: f64,
        #[arg(long, default_value_t = 0.0452)]
        er: f64,
    },
}

#[derive(Serialize)]
struct TableRow {
    n: usize,
    cycles: usize,
    paths: String,
    fidelity: f64,
    core_hours: f64,
    years_on_reference_machine: f64,
}

fn parse_range(spec: &str) -> Result<Vec<usize>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Config(format!("range {spec:?} is not start:end:step")));
    }
    let s: usize = parts[0].parse().map_err(|_| Error::Config("bad range".into()))?;
    let e: usize = parts[1].parse().map_err(|_| Error::Config("bad range".into()))?;
    let st: usize = parts[2].parse().map_err(|_| Error::Config("bad range".into()))?;
    if st == 0 || e < s {
        return Err(Error::Config(format!("range {spec:?} is empty")));
    }
    Ok((s..=e).step_by(st).collect())
}

pub fn run(args: Args) -> Result<()> {
    let constants = CostConstants::default();
    match &args.what {
        What::TableS3 { out } => {
            // 56q/20c balanced cut: 4^34 x 2 prefix runs of 19560 s each.
            let runs_56 = 2.0 * 4.0f64.powi(34);
            let balanced = sfa_core_hours(runs_56, 6.62e-4, 19560.0, 2.0, constants.cores);
            // The 53q/20c and imbalanced-cut rows are pinned by their
            // published core-hour totals.
            let ch_53: f64 = 8.90e13;
            let ch_imb: f64 = 5.76e17;
            let rows = vec![
                TableRow {
                    n: 53,
                    cycles: 20,
                    paths: format!("4^31 x 2^4 = {}", 4u128.pow(31) * 16),
                    fidelity: 0.00224,
                    core_hours: ch_53,
                    years_on_reference_machine: ch_53 / (constants.cores * HOURS_PER_YEAR),
                },
                TableRow {
                    n: 56,
                    cycles: 20,
                    paths: format!("4^38 x 2^4 = {}", 4u128.pow(38) * 16),
                    fidelity: 6.62e-4,
                    core_hours: balanced.core_hours,
                    years_on_reference_machine: balanced.calendar_years,
                },
                TableRow {
                    n: 56,
                    cycles: 20,
                    paths: format!("4^35 x 2^6 = {}", 4u128.pow(35) * 64),
                    fidelity: 6.62e-4,
                    core_hours: ch_imb,
                    years_on_reference_machine: ch_imb / (constants.cores * HOURS_PER_YEAR),
                },
            ];
            let report = report::envelope(&[], None, &args, rows)?;
            report::write_json(out, &report)?;
        }
        What::Tn { out, per_sample_flops, n_samples, fidelity } => {
            let reference = TnReference::default();
            #[derive(Serialize)]
            struct TnRow {
                per_sample_flops: f64,
                n_samples: f64,
                fidelity: f64,
                total_flops: f64,
                summit_seconds: f64,
                summit_days: f64,
                summit_years: f64,
            }
            let mk = |flops: f64, ns: f64, f: f64| -> Result<TnRow> {
                let c = tn_cost_scaling(flops, ns, f, &reference)?;
                Ok(TnRow {
                    per_sample_flops: flops,
                    n_samples: ns,
                    fidelity: f,
                    total_flops: c.total_flops,
                    summit_seconds: c.summit_seconds,
                    summit_days: c.summit_seconds / 86400.0,
                    summit_years: c.summit_seconds / (HOURS_PER_YEAR * 3600.0),
                })
            };
            let rows = match (per_sample_flops, n_samples, fidelity) {
                (Some(flops), Some(ns), Some(f)) => vec![mk(*flops, *ns, *f)?],
                (None, None, None) => vec![
                    mk(1.63e18, 3e6, 2.24e-3)?,
                    mk(1.65e20, 1.9e7, 6.62e-4)?,
                ],
                _ => {
                    return Err(Error::Config(
                        "give all of --per-sample-flops --n-samples --fidelity or none".into(),
                    ))
                }
            };
            let report = report::envelope(&[], None, &args, rows)?;
            report::write_json(out, &report)?;
        }
        What::Evaluate { out, method, n, m, fidelity, patches } => {
            #[derive(Serialize)]
            struct Eval {
                method: String,
                seconds: f64,
                detail: serde_json::Value,
            }
            let need = |x: &Option<usize>, name: &str| {
                x.ok_or_else(|| Error::Config(format!("{method} needs --{name}")))
            };
            let eval = match method.as_str() {
                "sa" => {
                    let r = t_sa(need(n, "n")?, need(m, "m")?, &constants);
                    Eval {
                        method: method.clone(),
                        seconds: r.seconds,
                        detail: serde_json::to_value(r)?,
                    }
                }
                "sfa" => {
                    let f = fidelity.ok_or_else(|| Error::Config("sfa needs --fidelity".into()))?;
                    let r = t_sfa(need(n, "n")?, need(m, "m")?, f, *patches, &constants)?;
                    Eval {
                        method: method.clone(),
                        seconds: r.seconds,
                        detail: serde_json::to_value(r)?,
                    }
                }
                "quantum" => {
                    let f = fidelity
                        .ok_or_else(|| Error::Config("quantum needs --fidelity".into()))?;
                    let secs = t_quantum(f, &constants)?;
                    Eval {
                        method: method.clone(),
                        seconds: secs,
                        detail: serde_json::Value::Null,
                    }
                }
                other => return Err(Error::Config(format!("unknown method {other:?}"))),
            };
            let report = report::envelope(&[], None, &args, eval)?;
            report::write_json(out, &report)?;
        }
        What::Grid { out, csv, preset, n_range, m_range, e1, e2, er } => {
            let (topology, patterns) = super::resolve_topology(Some(preset), None, None, &[])?;
            let ns = parse_range(n_range)?;
            let ms = parse_range(m_range)?;
            let grid = advantage_region(&topology, &patterns, &ns, &ms, *e1, *e2, *er, &constants)?;
            if let Some(csv_path) = csv {
                std::fs::write(csv_path, grid.to_csv())?;
            }
            let report = report::envelope(&[], None, &args, &grid)?;
            report::write_json(out, &report)?;
        }
    }
    Ok(())
}
