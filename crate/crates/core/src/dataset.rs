//! Particle records: the built-in hadron table and CSV/JSON ingestion.

use std::collections::HashSet;
use std::fmt;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Meson,
    Baryon,
    Theoretical,
}

impl Group {
    pub const ALL: [Group; 3] = [Group::Meson, Group::Baryon, Group::Theoretical];

    pub fn name(self) -> &'static str {
        match self {
            Group::Meson => "meson",
            Group::Baryon => "baryon",
            Group::Theoretical => "theoretical",
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown group `{0}` (expected meson, baryon or theoretical)")]
pub struct UnknownGroup(pub String);

impl FromStr for Group {
    type Err = UnknownGroup;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Group::ALL
            .into_iter()
            .find(|g| g.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| UnknownGroup(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParticleRecord {
    pub name: String,
    #[serde(rename = "L")]
    pub l: u32,
    #[serde(rename = "M")]
    pub m: u32,
    pub mass_mev: f64,
    #[serde(default)]
    pub status: String,
    pub group: Group,
}

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("line {line}: {message}")]
    Invalid { line: u64, message: String },
    #[error("line {line}: duplicate particle name `{name}`")]
    Duplicate { line: u64, name: String },
    #[error("cannot infer format of {0}; use a .csv or .json extension")]
    UnknownFormat(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn from_path(path: &Path) -> Result<Self, DatasetError> {
        match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
            Some("csv") => Ok(Format::Csv),
            Some("json") => Ok(Format::Json),
            _ => Err(DatasetError::UnknownFormat(path.display().to_string())),
        }
    }
}

// (name, L, M, mass, status, group)
const TABLE: [(&str, u32, u32, f64, &str, Group); 53] = {
    use Group::{Baryon as B, Meson as Me, Theoretical as Th};
    [
        ("π⁰", 1, 0, 135.0, "", Me),
        ("K⁰_S", 1, 1, 498.0, "", Me),
        ("ρ(770)", 2, 0, 776.0, "", Me),
        ("K*(892)⁰", 2, 1, 896.0, "", Me),
        ("φ(1020)", 2, 2, 1019.0, "", Me),
        ("N", 3, 0, 938.0, "", B),
        ("Λ", 3, 1, 1116.0, "", B),
        ("Σ⁰", 3, 2, 1193.0, "", B),
        ("Ξ⁰", 3, 3, 1315.0, "", B),
        ("Δ(1232)", 4, 0, 1232.0, "", B),
        ("Σ⁰(1385)", 4, 1, 1384.0, "", B),
        ("Ξ(1530)", 4, 2, 1532.0, "", B),
        ("Ω⁻", 4, 3, 1672.0, "", B),
        ("Λ(1800)", 4, 4, 1775.0, "", B),
        ("Λ(1520)", 5, 0, 1520.0, "", B),
        ("Λ(1670)", 5, 1, 1670.0, "", B),
        ("Ξ(1820)", 5, 2, 1823.0, "", B),
        ("Δ(1910)", 5, 3, 1910.0, "", B),
        ("Σ(2030)", 5, 4, 2030.0, "", B),
        ("Λ(2100)", 5, 5, 2100.0, "", B),
        ("Σ(1750)", 6, 0, 1750.0, "", B),
        ("Σ(1915)", 6, 1, 1915.0, "", B),
        ("Ξ(2030)", 6, 2, 2025.0, "", B),
        ("Δ(2150)", 6, 3, 2150.0, "*", B),
        ("Ω(2250)", 6, 4, 2252.0, "", B),
        ("Ω(2380)", 6, 5, 2380.0, "**", B),
        ("Σ_c(2452)", 6, 6, 2452.0, "", B),
        ("Ξ(1950)", 7, 0, 1950.0, "", B),
        ("Λ(2110)", 7, 1, 2110.0, "", B),
        ("Λ_c", 7, 2, 2286.0, "", B),
        ("Δ(2420)", 7, 3, 2420.0, "", B),
        ("Ξ_c⁺(2467)", 7, 4, 2467.0, "", B),
        ("Ξ'_c⁺(2575)", 7, 5, 2576.0, "", B),
        ("Ξ_c⁰(2645)", 7, 6, 2645.0, "", B),
        ("Ξ_c⁰(2790)", 7, 7, 2791.0, "", B),
        ("N(2190)", 8, 0, 2190.0, "", B),
        ("Λ(2350)", 8, 1, 2350.0, "", B),
        ("Ξ_c⁰(2471)", 8, 2, 2471.0, "", B),
        ("Λ_c⁺(2593)", 8, 3, 2595.0, "", B),
        ("Ω_c⁰", 8, 4, 2698.0, "", B),
        ("Σ_c⁰(2800)", 8, 5, 2800.0, "", B),
        ("Λ_c⁺(2880)", 8, 6, 2882.0, "***", B),
        ("Ξ(2980)", 8, 7, 2978.0, "***", B),
        ("Ξ_c(3080)", 8, 8, 3076.0, "***", B),
        ("Ω⁻(2380)", 9, 0, 2380.0, "**", B),
        ("Σ_c(2520)", 9, 1, 2518.0, "***", B),
        ("Σ_c(2645)", 9, 2, 2646.0, "***", B),
        ("Λ_c(2880)", 9, 4, 2882.0, "***", B),
        ("Σ(3170)", 9, 7, 3170.0, "*", B),
        ("Ξ_cc⁺", 10, 9, 3519.0, "*", B),
        ("Ω_cc", 11, 8, 3637.0, "", Th),
        ("Ω_ccc", 15, 15, 4681.0, "", Th),
        ("Λ_b⁰", 20, 20, 5620.0, "***", B),
    ]
};

/// The 53 tabulated states: five light mesons (L = 1, 2) compared against
/// baryon-formula predictions, the baryons, and two externally predicted
/// charmed states marked theoretical.
pub fn builtin_table() -> Vec<ParticleRecord> {
    TABLE
        .iter()
        .map(|&(name, l, m, mass_mev, status, group)| ParticleRecord {
            name: name.to_string(),
            l,
            m,
            mass_mev,
            status: status.to_string(),
            group,
        })
        .collect()
}

fn check_record(r: &ParticleRecord, line: u64) -> Result<(), DatasetError> {
    let invalid = |message: String| DatasetError::Invalid { line, message };
    if r.name.trim().is_empty() {
        return Err(invalid("empty name".into()));
    }
    if r.m > r.l {
        return Err(invalid(format!("M = {} exceeds L = {} for `{}`", r.m, r.l, r.name)));
    }
    if !(r.mass_mev > 0.0 && r.mass_mev.is_finite()) {
        return Err(invalid(format!("mass {} MeV of `{}` must be positive", r.mass_mev, r.name)));
    }
    Ok(())
}

/// Checks the per-record invariants and name uniqueness; `lines[i]` is the
/// source line of record `i`, used in error messages.
pub fn validate(records: &[ParticleRecord], lines: &[u64]) -> Result<(), DatasetError> {
    let mut seen = HashSet::new();
    for (i, r) in records.iter().enumerate() {
        let line = lines.get(i).copied().unwrap_or(i as u64 + 1);
        check_record(r, line)?;
        if !seen.insert(r.name.as_str()) {
            return Err(DatasetError::Duplicate { line, name: r.name.clone() });
        }
    }
    Ok(())
}

pub fn read_csv<R: Read>(reader: R) -> Result<Vec<ParticleRecord>, DatasetError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let parse_err =
        |e: csv::Error| DatasetError::Parse { line: e.position().map_or(1, |p| p.line()), message: e.to_string() };
    let headers = rdr.headers().map_err(parse_err)?.clone();
    let mut records = Vec::new();
    let mut lines = Vec::new();
    for row in rdr.records() {
        let row = row.map_err(parse_err)?;
        let line = row.position().map_or(0, |p| p.line());
        let rec: ParticleRecord =
            row.deserialize(Some(&headers)).map_err(|e| DatasetError::Parse { line, message: e.to_string() })?;
        records.push(rec);
        lines.push(line);
    }
    validate(&records, &lines)?;
    Ok(records)
}

pub fn read_json(src: &str) -> Result<Vec<ParticleRecord>, DatasetError> {
    if src.trim().is_empty() {
        return Ok(Vec::new());
    }
    let records: Vec<ParticleRecord> =
        serde_json::from_str(src).map_err(|e| DatasetError::Parse { line: e.line() as u64, message: e.to_string() })?;
    // JSON carries no per-record line; report the 1-based record index
    let idx: Vec<u64> = (1..=records.len() as u64).collect();
    validate(&records, &idx).map_err(|e| match e {
        DatasetError::Invalid { line, message } => {
            DatasetError::Invalid { line, message: format!("record {line}: {message}") }
        }
        other => other,
    })?;
    Ok(records)
}

pub fn load_records(path: &Path, format: Format) -> Result<Vec<ParticleRecord>, DatasetError> {
    let io = |source| DatasetError::Io { path: path.display().to_string(), source };
    let text = std::fs::read_to_string(path).map_err(io)?;
    match format {
        Format::Csv => read_csv(text.as_bytes()),
        Format::Json => read_json(&text),
    }
}

/// CSV with the `name,L,M,mass_mev,status,group` header.
pub fn write_csv<W: Write>(records: &[ParticleRecord], writer: W) -> Result<(), csv::Error> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(writer);
    w.write_record(["name", "L", "M", "mass_mev", "status", "group"])?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
