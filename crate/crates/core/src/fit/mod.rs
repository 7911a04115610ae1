//! Least-squares estimation of the level-formula parameters from particle
//! records, by multi-start Nelder-Mead on the r.m.s. percent deviation.

mod simplex;

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use simplex::{minimize, SimplexOptions, SimplexResult};

use crate::dataset::{Group, ParticleRecord};
use crate::spectrum::{casimir_l2, casimir_lz, mass, FitParams, Multiplet, Sign};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_STARTS: usize = 32;

/// Search box of the random starts: α, m₀, a₀, b₀.
pub const START_BOX: [(f64, f64); 4] = [(0.01, 1.0), (-30000.0, 0.0), (0.0, 30000.0), (0.0, 30000.0)];

// Nelder-Mead runs on coordinates rescaled by these, so one tolerance
// serves the dimensionless α and the MeV-sized masses.
const SCALE: [f64; 4] = [1.0, 30000.0, 30000.0, 30000.0];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitConfig {
    pub include_groups: BTreeSet<Group>,
    /// Inclusive `[min, max]` on L.
    pub l_range: Option<(u32, u32)>,
    pub starts: usize,
    pub seed: u64,
    /// Objective evaluations per start.
    pub max_evals: usize,
    /// Simplex diameter, in rescaled coordinates, that counts as converged.
    pub tol: f64,
}

impl Default for FitConfig {
    /// Baryons with L = 3..9.
    fn default() -> Self {
        Self {
            include_groups: BTreeSet::from([Group::Baryon]),
            l_range: Some((3, 9)),
            starts: DEFAULT_STARTS,
            seed: DEFAULT_SEED,
            max_evals: 20_000,
            tol: 1e-9,
        }
    }
}

impl FitConfig {
    pub fn selects(&self, r: &ParticleRecord) -> bool {
        self.include_groups.contains(&r.group) && self.l_range.is_none_or(|(lo, hi)| (lo..=hi).contains(&r.l))
    }

    pub fn select(&self, records: &[ParticleRecord]) -> Vec<ParticleRecord> {
        records.iter().filter(|r| self.selects(r)).cloned().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FitError {
    #[error("no records to evaluate")]
    NoRecords,
    #[error("need at least 5 records for 4 parameters, got {0}")]
    TooFewRecords(usize),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("no start converged within {max_evals} evaluations (best objective {best})")]
    NotConverged { max_evals: usize, best: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub name: String,
    #[serde(rename = "L")]
    pub l: u32,
    #[serde(rename = "M")]
    pub m: u32,
    pub e_exp: f64,
    pub e_th: f64,
    pub de_percent: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub params: FitParams<f64>,
    pub rms_percent: f64,
    pub per_particle: Vec<Residual>,
    pub evals: usize,
    pub converged: bool,
}

fn multiplet(r: &ParticleRecord) -> Multiplet {
    Multiplet { l: r.l, m: r.m as i32, sign: Sign::Plus }
}

/// `100 (E_th − E_exp) / E_exp` for every record, with the `+` branch.
pub fn residuals(p: &FitParams<f64>, records: &[ParticleRecord]) -> Vec<Residual> {
    records
        .iter()
        .map(|r| {
            let e_th = mass(p, &multiplet(r));
            Residual {
                name: r.name.clone(),
                l: r.l,
                m: r.m,
                e_exp: r.mass_mev,
                e_th,
                de_percent: 100.0 * (e_th - r.mass_mev) / r.mass_mev,
            }
        })
        .collect()
}

fn rms(p: &FitParams<f64>, records: &[ParticleRecord]) -> f64 {
    if !(p.alpha > 0.0 && p.alpha <= 1.0) {
        return f64::INFINITY;
    }
    // few distinct L and M values recur across records
    let top = records.iter().map(|r| r.l as usize).max().unwrap_or(0);
    let mut l2 = vec![f64::NAN; top + 1];
    let mut lz = vec![f64::NAN; top + 1];
    let sum: f64 = records
        .iter()
        .map(|r| {
            let (l, m) = (r.l as usize, r.m as usize);
            if l2[l].is_nan() {
                l2[l] = casimir_l2(p.alpha, r.l);
            }
            if lz[m].is_nan() {
                lz[m] = casimir_lz(p.alpha, r.m as i32, Sign::Plus);
            }
            let e = p.m0 + p.a0 * l2[l] + p.b0 * lz[m];
            let d = 100.0 * (e - r.mass_mev) / r.mass_mev;
            d * d
        })
        .sum();
    (sum / records.len() as f64).sqrt()
}

/// R.m.s. of the percent deviations; +∞ for α outside (0, 1].
pub fn objective(p: &FitParams<f64>, records: &[ParticleRecord]) -> Result<f64, FitError> {
    if records.is_empty() {
        return Err(FitError::NoRecords);
    }
    Ok(rms(p, records))
}

/// The deterministic start points for `seed`.
pub fn start_points(n: usize, seed: u64) -> Vec<[f64; 4]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let mut x = [0.0; 4];
            for (v, &(lo, hi)) in x.iter_mut().zip(START_BOX.iter()) {
                *v = if lo == 0.01 {
                    // α ∈ (0.01, 1]
                    hi - rng.gen::<f64>() * (hi - lo)
                } else {
                    rng.gen_range(lo..=hi)
                };
            }
            x
        })
        .collect()
}

fn to_scaled(x: &[f64; 4]) -> [f64; 4] {
    let mut s = *x;
    for (v, k) in s.iter_mut().zip(SCALE) {
        *v /= k;
    }
    s
}

fn from_scaled(s: &[f64; 4]) -> [f64; 4] {
    let mut x = *s;
    for (v, k) in x.iter_mut().zip(SCALE) {
        *v *= k;
    }
    x
}

struct StartOutcome {
    x: [f64; 4],
    fx: f64,
    evals: usize,
    converged: bool,
}

/// One start: Nelder-Mead, then restarts from the optimum until a restart
/// no longer moves it, which guards against a collapsed simplex.
fn run_start(records: &[ParticleRecord], x0: [f64; 4], cfg: &FitConfig) -> StartOutcome {
    let f = |s: &[f64; 4]| rms(&FitParams::from_array(from_scaled(s)), records);
    let mut opts = SimplexOptions { step: 0.05, max_evals: cfg.max_evals, tol: cfg.tol };
    let mut res = minimize(f, to_scaled(&x0), opts);
    let mut evals = res.evals;
    for _ in 0..4 {
        if !res.converged || evals >= cfg.max_evals {
            break;
        }
        opts.max_evals = cfg.max_evals - evals;
        opts.step = 1e-3;
        let again = minimize(f, res.x, opts);
        evals += again.evals;
        let moved = again.fx < res.fx;
        let stalled = !moved || res.fx - again.fx <= cfg.tol * res.fx.max(1.0);
        if moved {
            res = again;
        }
        if stalled {
            break;
        }
    }
    StartOutcome { x: from_scaled(&res.x), fx: res.fx, evals, converged: res.converged }
}

/// Multi-start fit over the records `cfg` selects. Starts run in parallel;
/// the winner is the lowest objective among converged starts, ties to the
/// lowest start index, so the result depends only on the inputs and the seed.
pub fn fit(records: &[ParticleRecord], cfg: &FitConfig) -> Result<FitResult, FitError> {
    let selected = cfg.select(records);
    let records = selected.as_slice();
    if records.is_empty() {
        return Err(FitError::NoRecords);
    }
    if records.len() < 5 {
        return Err(FitError::TooFewRecords(records.len()));
    }
    if cfg.starts == 0 {
        return Err(FitError::Config("starts must be at least 1".into()));
    }
    if cfg.tol <= 0.0 || !cfg.tol.is_finite() {
        return Err(FitError::Config("tol must be positive".into()));
    }
    let starts = start_points(cfg.starts, cfg.seed);
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(starts.len());
    let mut outcomes: Vec<Option<StartOutcome>> = (0..starts.len()).map(|_| None).collect();
    std::thread::scope(|scope| {
        for (chunk_starts, chunk_out) in
            starts.chunks(starts.len().div_ceil(workers)).zip(outcomes.chunks_mut(starts.len().div_ceil(workers)))
        {
            scope.spawn(move || {
                for (x0, slot) in chunk_starts.iter().zip(chunk_out.iter_mut()) {
                    *slot = Some(run_start(records, *x0, cfg));
                }
            });
        }
    });
    let outcomes: Vec<StartOutcome> = outcomes.into_iter().map(|o| o.expect("every start ran")).collect();
    let evals = outcomes.iter().map(|o| o.evals).sum();
    let best = outcomes.iter().filter(|o| o.converged).fold(None::<&StartOutcome>, |b, o| match b {
        Some(b) if b.fx <= o.fx => Some(b),
        _ => Some(o),
    });
    let Some(best) = best else {
        let best = outcomes.iter().map(|o| o.fx).fold(f64::INFINITY, f64::min);
        return Err(FitError::NotConverged { max_evals: cfg.max_evals, best });
    };
    let params = FitParams::from_array(best.x);
    Ok(FitResult {
        params,
        rms_percent: rms(&params, records),
        per_particle: residuals(&params, records),
        evals,
        converged: true,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    #[serde(rename = "L")]
    pub l: u32,
    #[serde(rename = "M")]
    pub m: i32,
    pub sign: Sign,
    pub e_th: f64,
}

pub fn predict(p: &FitParams<f64>, mults: &[Multiplet]) -> Vec<Prediction> {
    mults.iter().map(|m| Prediction { l: m.l, m: m.m, sign: m.sign, e_th: mass(p, m) }).collect()
}
