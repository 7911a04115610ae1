//! Deterministic text outputs: the comparison table and plot series.
//!
//! MeV values carry two decimals, dimensionless values six significant
//! digits.

use std::fmt::Write as _;
use std::io;
use std::path::{Path, PathBuf};

use crate::dataset::ParticleRecord;
use crate::fit::residuals;
use crate::spectrum::{mass, FitParams, Multiplet};

pub const TABLE_FILE: &str = "table.csv";
pub const PLOT_FILE: &str = "plot.tsv";

pub fn fmt_mev(v: f64) -> String {
    format!("{v:.2}")
}

/// Six significant digits, fixed notation.
pub fn fmt_sig(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let mag = v.abs().log10().floor() as i32;
    let decimals = (5 - mag).max(0) as usize;
    let s = format!("{v:.decimals$}");
    // rounding can carry into a new digit (9.999995 → 10.00000)
    if s.trim_start_matches('-').replace('.', "").trim_start_matches('0').len() > 6 && decimals > 0 {
        let d = decimals - 1;
        return format!("{v:.d$}");
    }
    s
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// `name,L,M,E_exp,E_th,dE_percent`, one row per record in input order.
pub fn table_csv(p: &FitParams<f64>, records: &[ParticleRecord]) -> String {
    let mut out = String::from("name,L,M,E_exp,E_th,dE_percent\n");
    for r in residuals(p, records) {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            csv_field(&r.name),
            r.l,
            r.m,
            fmt_mev(r.e_exp),
            fmt_mev(r.e_th),
            fmt_sig(r.de_percent)
        );
    }
    out
}

/// Tab-separated `series, L, M, E_MeV`: a `theory_L<n>` series over
/// M = 0..=L for each requested L, then an `experiment` series.
pub fn plot_tsv(p: &FitParams<f64>, ls: &[u32], records: &[ParticleRecord]) -> String {
    let mut out = String::from("series\tL\tM\tE_MeV\n");
    for &l in ls {
        for m in 0..=l {
            let e = mass(p, &Multiplet::plus(l, m as i32).expect("M ≤ L"));
            let _ = writeln!(out, "theory_L{l}\t{l}\t{m}\t{}", fmt_mev(e));
        }
    }
    for r in records {
        let _ = writeln!(out, "experiment\t{}\t{}\t{}", r.l, r.m, fmt_mev(r.mass_mev));
    }
    out
}

/// Writes [`TABLE_FILE`] and [`PLOT_FILE`] into `dir`, creating it.
pub fn write_report(
    dir: &Path,
    p: &FitParams<f64>,
    ls: &[u32],
    records: &[ParticleRecord],
) -> io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let table = dir.join(TABLE_FILE);
    let plot = dir.join(PLOT_FILE);
    std::fs::write(&table, table_csv(p, records))?;
    std::fs::write(&plot, plot_tsv(p, ls, records))?;
    Ok(vec![table, plot])
}
