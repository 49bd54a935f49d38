//! Report envelope shared by all subcommands.

use rqc::error::Result;
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

#[derive(Serialize)]
pub struct Report<C: Serialize, R: Serialize> {
    pub tool_version: &'static str,
    /// SHA-256 of every input file, keyed by path as given.
    pub inputs: BTreeMap<String, String>,
    pub seed: Option<u64>,
    pub config: C,
    pub result: R,
}

pub fn envelope<C: Serialize, R: Serialize>(
    inputs: &[&Path],
    seed: Option<u64>,
    config: C,
    result: R,
) -> Result<Report<C, R>> {
    let mut hashes = BTreeMap::new();
    for path in inputs {
        hashes.insert(
            path.display().to_string(),
            rqc::io::file_sha256(path)?,
        );
    }
    Ok(Report {
        tool_version: env!("CARGO_PKG_VERSION"),
        inputs: hashes,
        seed,
        config,
        result,
    })
}

pub fn write_json<T: Serialize>(path: &PathBuf, value: &T) -> Result<()> {
    std::fs::write(path, serde_json::to_vec_pretty(value)?)?;
    Ok(())
}

/// Memory cap from the environment, when set.
pub fn memory_cap_from_env() -> Option<u128> {
    std::env::var("RQC_MEMORY_CAP_BYTES")
        .ok()
        .and_then(|v| v.parse().ok())
}

pub fn sv_options() -> rqc::statevec::SvOptions {
    let mut opts = rqc::statevec::SvOptions::default();
    if let Some(cap) = memory_cap_from_env() {
        opts.memory_cap_bytes = cap;
    }
    opts
}
