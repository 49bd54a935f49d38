use clap::Parser;
use num_complex::Complex64;
use rqc::error::{Error, Result};
use serde::Serialize;
use std::path::PathBuf;

/// Sums partial-amplitude files produced by per-run SFA invocations.
#[derive(Parser, Serialize)]
pub struct Args {
    /// Partial amplitude dumps, in run order.
    #[arg(long, required = true, num_args = 1..)]
    pub parts: Vec<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

pub fn run(args: Args) -> Result<()> {
    let mut total: Option<Vec<Complex64>> = None;
    let mut header = None;
    for part in &args.parts {
        let (h, amps) = rqc::io::read_amplitudes(part)?;
        match &mut total {
            None => {
                total = Some(amps);
                header = Some(h);
            }
            Some(acc) => {
                if acc.len() != amps.len() {
                    return Err(Error::Config(format!(
                        "partial {} has {} amplitudes, expected {}",
                        part.display(),
                        amps.len(),
                        acc.len()
                    )));
                }
                for (a, b) in acc.iter_mut().zip(amps.iter()) {
                    *a += b;
                }
            }
        }
    }
    let total = total.ok_or(Error::EmptySample)?;
    let header = header.unwrap();
    rqc::io::write_amplitudes(&args.out, &header, &total)?;
    Ok(())
}
