//! File formats: circuit JSON, samples with sidecar, amplitude dumps,
//! probability files and SFA run manifests.

use crate::circuit::{Circuit, CIRCUIT_FORMAT_VERSION};
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::io::{BufRead, BufWriter, Read, Write};
use std::path::Path;

/// SHA-256 hex digest of a byte slice.
pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    let out = h.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn file_sha256(path: &Path) -> Result<String> {
    let mut f = std::fs::File::open(path)?;
    let mut buf = Vec::new();
    f.read_to_end(&mut buf)?;
    Ok(sha256_hex(&buf))
}

/// Canonical JSON bytes of a circuit; the hash of these bytes identifies
/// the circuit in sidecars and reports.
pub fn circuit_json(circuit: &Circuit) -> Result<Vec<u8>> {
    Ok(serde_json::to_vec_pretty(circuit)?)
}

pub fn circuit_hash(circuit: &Circuit) -> Result<String> {
    Ok(sha256_hex(&circuit_json(circuit)?))
}

pub fn save_circuit(circuit: &Circuit, path: &Path) -> Result<()> {
    std::fs::write(path, circuit_json(circuit)?)?;
    Ok(())
}

pub fn load_circuit(path: &Path) -> Result<Circuit> {
    let bytes = std::fs::read(path)?;
    let c: Circuit = serde_json::from_slice(&bytes)?;
    if c.version != CIRCUIT_FORMAT_VERSION {
        return Err(Error::Config(format!(
            "unsupported circuit format version {:?} (expected {:?})",
            c.version, CIRCUIT_FORMAT_VERSION
        )));
    }
    Ok(c)
}

/// Sidecar written next to a samples file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SamplesSidecar {
    pub n: usize,
    pub n_samples: usize,
    pub seed: u64,
    pub circuit_hash: String,
}

/// One ASCII bitstring per line, qubit 0 leftmost.
pub fn write_samples(path: &Path, n: usize, samples: &[u64]) -> Result<()> {
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    for &s in samples {
        let mut line = String::with_capacity(n + 1);
        for q in 0..n {
            line.push(if (s >> q) & 1 == 1 { '1' } else { '0' });
        }
        line.push('\n');
        w.write_all(line.as_bytes())?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_samples_with_sidecar(
    path: &Path,
    n: usize,
    samples: &[u64],
    seed: u64,
    circuit_hash: &str,
) -> Result<()> {
    write_samples(path, n, samples)?;
    let sidecar = SamplesSidecar {
        n,
        n_samples: samples.len(),
        seed,
        circuit_hash: circuit_hash.to_string(),
    };
    let mut sidecar_path = path.as_os_str().to_owned();
    sidecar_path.push(".json");
    std::fs::write(sidecar_path, serde_json::to_vec_pretty(&sidecar)?)?;
    Ok(())
}

pub fn read_samples(path: &Path, n: usize) -> Result<Vec<u64>> {
    let f = std::fs::File::open(path)?;
    let mut out = Vec::new();
    for (i, line) in std::io::BufReader::new(f).lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if line.len() != n {
            return Err(Error::Config(format!(
                "samples line {} has {} characters, expected {}",
                i + 1,
                line.len(),
                n
            )));
        }
        let mut bits = 0u64;
        for (q, ch) in line.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << q,
                _ => {
                    return Err(Error::Config(format!(
                        "samples line {} has non-binary character {ch:?}",
                        i + 1
                    )))
                }
            }
        }
        out.push(bits);
    }
    Ok(out)
}

/// One float per line, aligned with a samples file.
pub fn read_probabilities(path: &Path) -> Result<Vec<f64>> {
    let f = std::fs::File::open(path)?;
    let mut out = Vec::new();
    for (i, line) in std::io::BufReader::new(f).lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let p: f64 = line.parse().map_err(|_| {
            Error::Config(format!("probability file line {} is not a float", i + 1))
        })?;
        if !p.is_finite() || p < 0.0 {
            return Err(Error::Config(format!(
                "probability file line {} is not a probability: {p}",
                i + 1
            )));
        }
        out.push(p);
    }
    Ok(out)
}

pub fn write_probabilities(path: &Path, probs: &[f64]) -> Result<()> {
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    for p in probs {
        writeln!(w, "{p:.17e}")?;
    }
    w.flush()?;
    Ok(())
}

/// Header written next to an amplitude dump.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AmplitudeHeader {
    pub n: usize,
    pub count: usize,
    /// "f32" or "f64"
    pub precision: String,
    pub circuit_hash: Option<String>,
}

/// Little-endian interleaved re/im floats, with a JSON header sidecar.
pub fn write_amplitudes(
    path: &Path,
    header: &AmplitudeHeader,
    amps: &[Complex64],
) -> Result<()> {
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    match header.precision.as_str() {
        "f32" => {
            for a in amps {
                w.write_all(&(a.re as f32).to_le_bytes())?;
                w.write_all(&(a.im as f32).to_le_bytes())?;
            }
        }
        "f64" => {
            for a in amps {
                w.write_all(&a.re.to_le_bytes())?;
                w.write_all(&a.im.to_le_bytes())?;
            }
        }
        other => return Err(Error::Config(format!("unknown precision {other:?}"))),
    }
    w.flush()?;
    let mut hpath = path.as_os_str().to_owned();
    hpath.push(".json");
    std::fs::write(hpath, serde_json::to_vec_pretty(header)?)?;
    Ok(())
}

pub fn read_amplitudes(path: &Path) -> Result<(AmplitudeHeader, Vec<Complex64>)> {
    let mut hpath = path.as_os_str().to_owned();
    hpath.push(".json");
    let header: AmplitudeHeader = serde_json::from_slice(&std::fs::read(hpath)?)?;
    let bytes = std::fs::read(path)?;
    let mut amps = Vec::with_capacity(header.count);
    match header.precision.as_str() {
        "f32" => {
            for chunk in bytes.chunks_exact(8) {
                let re = f32::from_le_bytes(chunk[0..4].try_into().unwrap());
                let im = f32::from_le_bytes(chunk[4..8].try_into().unwrap());
                amps.push(Complex64::new(re as f64, im as f64));
            }
        }
        "f64" => {
            for chunk in bytes.chunks_exact(16) {
                let re = f64::from_le_bytes(chunk[0..8].try_into().unwrap());
                let im = f64::from_le_bytes(chunk[8..16].try_into().unwrap());
                amps.push(Complex64::new(re, im));
            }
        }
        other => return Err(Error::Config(format!("unknown precision {other:?}"))),
    }
    Ok((header, amps))
}

/// Manifest for distributing SFA prefix runs across processes.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub circuit_hash: String,
    pub side1: Vec<usize>,
    pub prefix_len: usize,
    pub runs: Vec<RunEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunEntry {
    pub id: u64,
    pub prefix_indices: Vec<u8>,
}

pub fn write_run_manifest(path: &Path, manifest: &RunManifest) -> Result<()> {
    std::fs::write(path, serde_json::to_vec_pretty(manifest)?)?;
    Ok(())
}

pub fn read_run_manifest(path: &Path) -> Result<RunManifest> {
    Ok(serde_json::from_slice(&std::fs::read(path)?)?)
}
