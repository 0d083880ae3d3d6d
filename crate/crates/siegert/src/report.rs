//! Output records and file writers. Wave numbers are written in units of the
//! potential's scale, energies in units of its square.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use siegert_core::jost::SeedFailure;
use siegert_core::numerics::DensityMap;
use siegert_core::{Parity, Pole};

use crate::num::{fmt17, Num};
use crate::CliError;

#[derive(Debug, Clone, Serialize)]
pub struct PoleRecord {
    pub k_re: Num,
    pub k_im: Num,
    #[serde(rename = "E_re")]
    pub e_re: Num,
    #[serde(rename = "E_im")]
    pub e_im: Num,
    pub parity: &'static str,
    pub class: Option<&'static str>,
    pub residual: Num,
    pub provenance: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<&'static str>,
}

impl PoleRecord {
    pub fn new(p: &Pole, scale: f64) -> Self {
        let k = p.k / scale;
        let e = p.energy / (scale * scale);
        Self {
            k_re: Num(k.re),
            k_im: Num(k.im),
            e_re: Num(e.re),
            e_im: Num(e.im),
            parity: p.parity.name(),
            class: p.classification.map(|c| c.name()),
            residual: Num(p.residual),
            provenance: p.provenance.name(),
            warning: p.warning.map(|_| "outside_asymptotic_regime"),
        }
    }
}

pub fn pole_records(poles: &[Pole], scale: f64) -> Vec<PoleRecord> {
    poles.iter().map(|p| PoleRecord::new(p, scale)).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct FailureRecord {
    pub seed_re: Num,
    pub seed_im: Num,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parity: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solver: Option<&'static str>,
    pub error: String,
}

impl FailureRecord {
    pub fn new(f: &SeedFailure, scale: f64, parity: Option<Parity>, solver: Option<&'static str>) -> Self {
        Self {
            seed_re: Num(f.seed.re / scale),
            seed_im: Num(f.seed.im / scale),
            parity: parity.map(|p| p.name()),
            solver,
            error: f.error.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SeedRecord {
    pub k_re: Num,
    pub k_im: Num,
    pub value: Num,
}

#[derive(Debug, Clone, Serialize)]
pub struct MapReport<'a, P: Serialize> {
    pub solver: &'static str,
    pub parity: &'static str,
    pub potential: &'a P,
    pub scale: Num,
    pub re_min: Num,
    pub re_max: Num,
    pub im_min: Num,
    pub im_max: Num,
    pub nx: usize,
    pub ny: usize,
    /// |f| row by row (Im k outer, Re k inner).
    pub abs_values: Vec<Num>,
    pub seeds: Vec<SeedRecord>,
}

impl<'a, P: Serialize> MapReport<'a, P> {
    pub fn new(solver: &'static str, parity: Parity, potential: &'a P, scale: f64, map: &DensityMap) -> Self {
        let r = map.region;
        Self {
            solver,
            parity: parity.name(),
            potential,
            scale: Num(scale),
            re_min: Num(r.re_min / scale),
            re_max: Num(r.re_max / scale),
            im_min: Num(r.im_min / scale),
            im_max: Num(r.im_max / scale),
            nx: map.nx,
            ny: map.ny,
            abs_values: map.values.iter().map(|v| Num(*v)).collect(),
            seeds: map
                .seeds
                .iter()
                .map(|s| SeedRecord {
                    k_re: Num(s.k.re / scale),
                    k_im: Num(s.k.im / scale),
                    value: Num(s.value),
                })
                .collect(),
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(io_err(dir))
}

pub fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<PathBuf, CliError> {
    let path = dir.join(name);
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io {
        path: path.clone(),
        source: std::io::Error::other(e),
    })?;
    text.push('\n');
    fs::write(&path, text).map_err(io_err(&path))?;
    Ok(path)
}

/// CSV with fixed 17-digit numbers; non-finite values are written as inf/nan.
pub fn write_csv(dir: &Path, name: &str, header: &[&str], rows: &[Vec<f64>]) -> Result<PathBuf, CliError> {
    let path = dir.join(name);
    let to_io = |e: csv::Error| CliError::Io {
        path: path.clone(),
        source: e.into(),
    };
    let mut w = csv::Writer::from_path(&path).map_err(to_io)?;
    w.write_record(header).map_err(to_io)?;
    for row in rows {
        w.write_record(
            row.iter()
                .map(|x| if x.is_finite() { fmt17(*x) } else { x.to_string() }),
        )
        .map_err(to_io)?;
    }
    w.flush().map_err(io_err(&path))?;
    Ok(path)
}

/// File-name form of a number: 10 → "10", 2.5 → "2.5".
pub fn label(x: f64) -> String {
    format!("{x}")
}
