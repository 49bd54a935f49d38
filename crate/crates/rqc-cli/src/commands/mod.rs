pub mod cost;
pub mod cutplan;
pub mod generate;
pub mod merge;
pub mod sample;
pub mod simulate;
pub mod xeb;

use rqc::circuit::CutSpec;
use rqc::error::{Error, Result};
use rqc::lattice::{LatticeTopology, PatternSet};
use std::path::Path;

/// Topology selection shared by generate and the cost grid.
pub fn resolve_topology(
    preset: Option<&str>,
    rows: Option<usize>,
    cols: Option<usize>,
    discard: &[String],
) -> Result<(LatticeTopology, PatternSet)> {
    match preset {
        Some("zuchongzhi56") => Ok(rqc::lattice::zuchongzhi56()),
        Some(other) => Err(Error::Config(format!("unknown preset {other:?}"))),
        None => {
            let (rows, cols) = match (rows, cols) {
                (Some(r), Some(c)) if r >= 1 && c >= 1 => (r, c),
                _ => {
                    return Err(Error::Config(
                        "need --rows and --cols (or --preset)".into(),
                    ))
                }
            };
            let mut topology = LatticeTopology::full(rows, cols);
            for name in discard {
                let idx: usize = name
                    .trim_start_matches('Q')
                    .parse()
                    .map_err(|_| Error::Config(format!("bad qubit name {name:?}")))?;
                if idx < 1 || idx > rows * cols {
                    return Err(Error::Config(format!("qubit {name} outside the grid")));
                }
                topology.active.remove(&((idx - 1) / cols, (idx - 1) % cols));
            }
            let patterns = PatternSet::canonical(&topology);
            Ok((topology, patterns))
        }
    }
}

pub fn load_cut(path: &Path) -> Result<CutSpec> {
    Ok(serde_json::from_slice(&std::fs::read(path)?)?)
}
