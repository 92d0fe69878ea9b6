//! Plain-text serialization for signals and observations.
//!
//! Signals go to CSV with one value per line; observations to CSV with one
//! row per sampled edge. Each CSV gets a JSON sidecar (`<path>.meta.json`)
//! recording what produced it. Float formatting uses Rust's shortest
//! round-trip representation, so identical data yields identical bytes.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use nalgebra::DVector;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::SimplicialComplex;
use crate::sampling::Observations;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("i/o failure: {0}")]
    Io(#[from] io::Error),
    #[error("malformed CSV value at line {line}: {value:?}")]
    BadValue { line: usize, value: String },
    #[error("sidecar serialization failed: {0}")]
    Json(#[from] serde_json::Error),
}

/// Provenance stamp written next to a signal CSV.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SignalSidecar {
    /// Content hash of the complex the signal lives on (hex).
    pub complex_hash: String,
    pub w0: usize,
    pub w2: usize,
    pub r1: usize,
    pub seed: u64,
}

impl SignalSidecar {
    pub fn new(complex: &SimplicialComplex, w0: usize, w2: usize, r1: usize, seed: u64) -> Self {
        Self {
            complex_hash: format!("{:016x}", complex.content_hash()),
            w0,
            w2,
            r1,
            seed,
        }
    }
}

/// Provenance stamp written next to an observations CSV.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ObservationsSidecar {
    pub sample_set: Vec<usize>,
    pub num_shifts: usize,
    pub seed: Option<u64>,
}

pub fn signal_to_csv(x: &DVector<f64>) -> String {
    let mut s = String::new();
    for v in x.iter() {
        writeln!(s, "{v}").expect("string write cannot fail");
    }
    s
}

pub fn signal_from_csv(text: &str) -> Result<DVector<f64>, IoError> {
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let v: f64 = trimmed.parse().map_err(|_| IoError::BadValue {
            line: i + 1,
            value: trimmed.to_string(),
        })?;
        values.push(v);
    }
    Ok(DVector::from_vec(values))
}

pub fn write_signal_csv(
    path: &Path,
    x: &DVector<f64>,
    sidecar: &SignalSidecar,
) -> Result<(), IoError> {
    fs::write(path, signal_to_csv(x))?;
    fs::write(sidecar_path(path), serde_json::to_string_pretty(sidecar)?)?;
    Ok(())
}

pub fn observations_to_csv(obs: &Observations) -> String {
    let z = obs.z1_matrix();
    let mut s = String::new();
    for i in 0..z.nrows() {
        for p in 0..z.ncols() {
            if p > 0 {
                s.push(',');
            }
            write!(s, "{}", z[(i, p)]).expect("string write cannot fail");
        }
        s.push('\n');
    }
    s
}

pub fn write_observations_csv(
    path: &Path,
    obs: &Observations,
    sidecar: &ObservationsSidecar,
) -> Result<(), IoError> {
    fs::write(path, observations_to_csv(obs))?;
    fs::write(sidecar_path(path), serde_json::to_string_pretty(sidecar)?)?;
    Ok(())
}

fn sidecar_path(path: &Path) -> std::path::PathBuf {
    let mut os = path.as_os_str().to_owned();
    os.push(".meta.json");
    std::path::PathBuf::from(os)
}
