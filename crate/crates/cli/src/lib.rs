//! The `fraczee` command line. [`run`] does everything but touch the
//! process: arguments, the seed variable and the output sink are passed in.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use fraczee::dataset::{builtin_table, load_records, DatasetError, Format, Group, ParticleRecord};
use fraczee::fit::{fit, predict, FitConfig, FitError, FitResult, Prediction};
use fraczee::numeric::{rl_derivative_quad, DEFAULT_NODES};
use fraczee::report::write_report;
use fraczee::spectrum::{Multiplet, Sign};
use fraczee::verify::{self, Suite};
use fraczee::{parse_expr, Axis, Params, Point, Poly};

mod config;

use config::Config;

pub const SEED_ENV: &str = "FRACZEE_SEED";

/// An error with its process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub msg: String,
}

impl Failure {
    pub fn new(code: u8, msg: impl fmt::Display) -> Self {
        Self { code, msg: msg.to_string() }
    }
    pub fn verification(msg: impl fmt::Display) -> Self {
        Self::new(1, msg)
    }
    pub fn usage(msg: impl fmt::Display) -> Self {
        Self::new(2, msg)
    }
    pub fn domain(msg: impl fmt::Display) -> Self {
        Self::new(3, msg)
    }
    pub fn io(msg: impl fmt::Display) -> Self {
        Self::new(4, msg)
    }
}

impl From<DatasetError> for Failure {
    fn from(e: DatasetError) -> Self {
        match e {
            DatasetError::Io { .. } => Failure::io(e),
            _ => Failure::usage(e),
        }
    }
}

impl From<FitError> for Failure {
    fn from(e: FitError) -> Self {
        match e {
            FitError::NotConverged { .. } => Failure::verification(e),
            _ => Failure::usage(e),
        }
    }
}

#[derive(Parser)]
#[command(name = "fraczee", version, about = "Riemann-Liouville calculus and the fractional Zeeman hadron spectrum")]
struct Cli {
    /// `key = value` file; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Fractional derivative of an expression, optionally evaluated.
    Derive(DeriveArgs),
    /// Run an operator-identity suite and print its JSON report.
    Verify {
        #[arg(value_enum)]
        suite: SuiteName,
    },
    /// Level grid E(L, M) over a range of L.
    Spectrum(SpectrumArgs),
    /// Fit (α, m₀, a₀, b₀) to a particle table.
    Fit(FitArgs),
    /// Levels for chosen multiplets, by default the meson rows of the built-in table.
    Predict(PredictArgs),
    /// Write the comparison table and the plot series.
    Report(ReportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteName {
    Quad,
    ZeemanField,
    Connection,
    Commutators,
    SpinAlgebra,
    All,
}

#[derive(Args)]
struct DeriveArgs {
    expr: String,
    #[arg(long)]
    axis: Axis,
    /// Negative orders are fractional integrals.
    #[arg(long, allow_hyphen_values = true)]
    order: f64,
    /// Evaluation point, e.g. `x=1,y=2`.
    #[arg(long)]
    at: Option<String>,
    /// Gauss-Jacobi nodes for the quadrature cross-check.
    #[arg(long, default_value_t = DEFAULT_NODES)]
    nodes: usize,
}

#[derive(Args, Default)]
struct ParamArgs {
    /// JSON with the parameters, either bare or as the `params` of a fit report.
    #[arg(long)]
    params: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    m0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    a0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    b0: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Self {
        match s {
            SignArg::Plus => Sign::Plus,
            SignArg::Minus => Sign::Minus,
        }
    }
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, default_value_t = 1)]
    l_min: u32,
    #[arg(long, default_value_t = 9)]
    l_max: u32,
    /// Also list M < 0.
    #[arg(long)]
    negative_m: bool,
    #[arg(long, value_enum, default_value_t = SignArg::Plus)]
    sign: SignArg,
}

#[derive(Args)]
struct FitArgs {
    /// `builtin` or a .csv/.json path.
    #[arg(long)]
    data: Option<String>,
    /// Comma-separated: baryon, meson, theoretical.
    #[arg(long)]
    groups: Option<String>,
    /// Lowest L fitted [default: 3].
    #[arg(long)]
    l_min: Option<u32>,
    /// Highest L fitted [default: 9].
    #[arg(long)]
    l_max: Option<u32>,
    /// Random starts [default: 32].
    #[arg(long)]
    starts: Option<usize>,
    /// Start seed [default: 42, or FRACZEE_SEED].
    #[arg(long)]
    seed: Option<u64>,
    /// Objective evaluations per start [default: 20000].
    #[arg(long)]
    max_evals: Option<usize>,
    /// Simplex size that counts as converged [default: 1e-9].
    #[arg(long)]
    tol: Option<f64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PredictArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// `L,M`, repeatable.
    #[arg(long = "multiplet", allow_hyphen_values = true)]
    multiplets: Vec<String>,
    #[arg(long, value_enum, default_value_t = SignArg::Plus)]
    sign: SignArg,
}

#[derive(Args)]
struct ReportArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    out_dir: PathBuf,
    #[arg(long)]
    data: Option<String>,
    /// Restrict table rows to these groups; all by default.
    #[arg(long)]
    groups: Option<String>,
    /// L values of the theory series, as `min..max` inclusive.
    #[arg(long, default_value = "1..9")]
    series: String,
}

/// Runs one invocation; `args` includes the program name. `seed_env` is
/// the value of [`SEED_ENV`], if set.
pub fn run<I, T>(args: I, seed_env: Option<&str>, out: &mut dyn Write) -> Result<(), Failure>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => emit(out, &e.to_string()),
                _ => Err(Failure::new(e.exit_code() as u8, e.to_string().trim_start_matches("error: ").trim_end())),
            };
        }
    };
    let cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    match cli.cmd {
        Cmd::Derive(a) => cmd_derive(a, out),
        Cmd::Verify { suite } => cmd_verify(suite, out),
        Cmd::Spectrum(a) => cmd_spectrum(a, &cfg, out),
        Cmd::Fit(a) => cmd_fit(a, &cfg, seed_env, out),
        Cmd::Predict(a) => cmd_predict(a, &cfg, out),
        Cmd::Report(a) => cmd_report(a, &cfg, out),
    }
}

fn emit(out: &mut dyn Write, s: &str) -> Result<(), Failure> {
    out.write_all(s.as_bytes()).and_then(|()| out.flush()).map_err(|e| Failure::io(format!("output: {e}")))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report types serialize") + "\n"
}

fn parse_point(src: &str) -> Result<Point<f64>, Failure> {
    let mut p = Point::new();
    for part in src.split(',') {
        let (k, v) = part.split_once('=').ok_or_else(|| Failure::usage(format!("`{part}`: expected axis=value")))?;
        let axis: Axis = k.parse().map_err(Failure::usage)?;
        let v: f64 = v.trim().parse().map_err(|e| Failure::usage(format!("`{part}`: {e}")))?;
        if p.get(axis).is_some() {
            return Err(Failure::usage(format!("axis {axis} given twice")));
        }
        p.set(axis, v);
    }
    Ok(p)
}

fn fmt_value(v: f64) -> String {
    let s = format!("{v:.10}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn cmd_derive(a: DeriveArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let f: Poly = parse_expr(&a.expr).map_err(Failure::usage)?;
    let d = f.rl_derive(a.axis, a.order).map_err(Failure::domain)?;
    let mut text = format!("{d}\n");
    if let Some(at) = &a.at {
        let pt = parse_point(at)?;
        let eval_err = |e: fraczee::expr::EvalError| match e {
            fraczee::expr::EvalError::MissingCoordinate(_) => Failure::usage(e),
            _ => Failure::domain(e),
        };
        let v = d.eval(&pt).map_err(eval_err)?;
        text += &format!("value {}\n", fmt_value(v));
        if a.order > 0.0 && a.order < 1.0 {
            let x = pt.get(a.axis).ok_or_else(|| Failure::usage(format!("--at needs a value for {}", a.axis)))?;
            let g = |s: f64| f.eval(&pt.with(a.axis, s)).unwrap_or(f64::NAN);
            let q = rl_derivative_quad(g, a.order, x, a.nodes).map_err(Failure::domain)?;
            let dev = if v == 0.0 { q.abs() } else { ((q - v) / v).abs() };
            text += &format!("quadrature {} rel_dev {dev:.3e}\n", fmt_value(q));
        } else {
            text += "quadrature skipped: order outside (0, 1)\n";
        }
    }
    emit(out, &text)
}

fn run_suite(s: SuiteName) -> Result<Vec<Suite>, verify::VerifyError> {
    Ok(match s {
        SuiteName::Quad => vec![verify::verify_quad()?],
        SuiteName::ZeemanField => vec![verify::verify_zeeman_field()?],
        SuiteName::Connection => vec![verify::verify_connection()?],
        SuiteName::Commutators => vec![verify::verify_commutators()?],
        SuiteName::SpinAlgebra => vec![verify::verify_spin_algebra()?],
        SuiteName::All => verify::verify_all()?,
    })
}

fn cmd_verify(s: SuiteName, out: &mut dyn Write) -> Result<(), Failure> {
    let suites = run_suite(s).map_err(Failure::domain)?;
    let json = match suites.as_slice() {
        [one] if !matches!(s, SuiteName::All) => to_json(one),
        _ => to_json(&suites),
    };
    emit(out, &json)?;
    let failed: Vec<_> = suites.iter().filter(|s| !s.passed).map(|s| s.suite.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::verification(format!("failed: {}", failed.join(", "))))
    }
}

/// Published values, then a params file, then single-value overrides;
/// config below flags at each step.
fn resolve_params(a: &ParamArgs, cfg: &Config) -> Result<Params, Failure> {
    let mut p = Params::published();
    let file = a.params.clone().or_else(|| cfg.raw("params").map(PathBuf::from));
    if let Some(path) = file {
        p = read_params(&path)?;
    }
    let pick = |flag: Option<f64>, key: &str| -> Result<Option<f64>, Failure> { Ok(flag.or(cfg.get::<f64>(key)?)) };
    let [mut alpha, mut m0, mut a0, mut b0] = p.to_array();
    alpha = pick(a.alpha, "alpha")?.unwrap_or(alpha);
    m0 = pick(a.m0, "m0")?.unwrap_or(m0);
    a0 = pick(a.a0, "a0")?.unwrap_or(a0);
    b0 = pick(a.b0, "b0")?.unwrap_or(b0);
    Params::new(alpha, m0, a0, b0).map_err(Failure::domain)
}

fn read_params(path: &Path) -> Result<Params, Failure> {
    let src = std::fs::read_to_string(path).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
    let v: serde_json::Value =
        serde_json::from_str(&src).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let inner = v.get("params").cloned().unwrap_or(v);
    let p: Params = serde_json::from_value(inner).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    Params::new(p.alpha, p.m0, p.a0, p.b0).map_err(Failure::domain)
}

fn load_data(src: Option<&str>) -> Result<Vec<ParticleRecord>, Failure> {
    match src {
        None | Some("builtin") => Ok(builtin_table()),
        Some(path) => {
            let path = Path::new(path);
            Ok(load_records(path, Format::from_path(path)?)?)
        }
    }
}

fn parse_groups(s: &str) -> Result<BTreeSet<Group>, Failure> {
    s.split(',').map(|g| g.parse::<Group>().map_err(Failure::usage)).collect()
}

fn parse_seed_env(v: Option<&str>) -> Result<Option<u64>, Failure> {
    v.map(|v| v.trim().parse().map_err(|e| Failure::usage(format!("{SEED_ENV}: {e}")))).transpose()
}

fn fit_config(a: &FitArgs, cfg: &Config, seed_env: Option<&str>) -> Result<FitConfig, Failure> {
    let d = FitConfig::default();
    let (dmin, dmax) = d.l_range.expect("default set has an L range");
    let groups = match a.groups.as_deref().or(cfg.raw("groups")) {
        Some(g) => parse_groups(g)?,
        None => d.include_groups,
    };
    let l_min = a.l_min.or(cfg.get("l_min")?).unwrap_or(dmin);
    let l_max = a.l_max.or(cfg.get("l_max")?).unwrap_or(dmax);
    if l_min > l_max {
        return Err(Failure::usage(format!("l_min {l_min} exceeds l_max {l_max}")));
    }
    let seed = match a.seed {
        Some(s) => s,
        None => parse_seed_env(seed_env)?.or(cfg.get("seed")?).unwrap_or(d.seed),
    };
    Ok(FitConfig {
        include_groups: groups,
        l_range: Some((l_min, l_max)),
        starts: a.starts.or(cfg.get("starts")?).unwrap_or(d.starts),
        seed,
        max_evals: a.max_evals.or(cfg.get("max_evals")?).unwrap_or(d.max_evals),
        tol: a.tol.or(cfg.get("tol")?).unwrap_or(d.tol),
    })
}

fn cmd_fit(a: FitArgs, cfg: &Config, seed_env: Option<&str>, out: &mut dyn Write) -> Result<(), Failure> {
    let fc = fit_config(&a, cfg, seed_env)?;
    let records = load_data(a.data.as_deref().or(cfg.raw("data")))?;
    let result: FitResult = fit(&records, &fc)?;
    let json = to_json(&result);
    match &a.out {
        Some(p) => std::fs::write(p, json).map_err(|e| Failure::io(format!("{}: {e}", p.display()))),
        None => emit(out, &json),
    }
}

fn cmd_spectrum(a: SpectrumArgs, cfg: &Config, out: &mut dyn Write) -> Result<(), Failure> {
    let p = resolve_params(&a.params, cfg)?;
    if a.l_min > a.l_max {
        return Err(Failure::usage(format!("l_min {} exceeds l_max {}", a.l_min, a.l_max)));
    }
    let mut mults = Vec::new();
    for l in a.l_min..=a.l_max {
        let lo = if a.negative_m { -(l as i32) } else { 0 };
        for m in lo..=l as i32 {
            mults.push(Multiplet::new(l, m, a.sign.into()).expect("|M| ≤ L by construction"));
        }
    }
    emit(out, &to_json(&predict(&p, &mults)))
}

#[derive(Serialize)]
struct NamedPrediction {
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(flatten)]
    level: Prediction,
}

fn parse_multiplet(s: &str, sign: Sign) -> Result<Multiplet, Failure> {
    let bad = || Failure::usage(format!("`{s}`: expected L,M"));
    let (l, m) = s.split_once(',').ok_or_else(bad)?;
    let l: u32 = l.trim().parse().map_err(|_| bad())?;
    let m: i32 = m.trim().parse().map_err(|_| bad())?;
    Multiplet::new(l, m, sign).map_err(Failure::domain)
}

fn cmd_predict(a: PredictArgs, cfg: &Config, out: &mut dyn Write) -> Result<(), Failure> {
    let p = resolve_params(&a.params, cfg)?;
    let sign: Sign = a.sign.into();
    let (names, mults): (Vec<Option<String>>, Vec<Multiplet>) = if a.multiplets.is_empty() {
        builtin_table()
            .into_iter()
            .filter(|r| r.group == Group::Meson)
            .map(|r| (Some(r.name), Multiplet { l: r.l, m: r.m as i32, sign }))
            .unzip()
    } else {
        a.multiplets
            .iter()
            .map(|s| parse_multiplet(s, sign).map(|m| (None, m)))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .unzip()
    };
    let rows: Vec<_> =
        names.into_iter().zip(predict(&p, &mults)).map(|(name, level)| NamedPrediction { name, level }).collect();
    emit(out, &to_json(&rows))
}

fn parse_series(s: &str) -> Result<Vec<u32>, Failure> {
    let bad = || Failure::usage(format!("--series `{s}`: expected min..max"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
    Ok((lo..=hi).collect())
}

fn cmd_report(a: ReportArgs, cfg: &Config, out: &mut dyn Write) -> Result<(), Failure> {
    let p = resolve_params(&a.params, cfg)?;
    let ls = parse_series(&a.series)?;
    let mut records = load_data(a.data.as_deref().or(cfg.raw("data")))?;
    if let Some(g) = a.groups.as_deref() {
        let keep = parse_groups(g)?;
        records.retain(|r| keep.contains(&r.group));
    }
    let written = write_report(&a.out_dir, &p, &ls, &records)
        .map_err(|e| Failure::io(format!("{}: {e}", a.out_dir.display())))?;
    let list: String = written.iter().map(|p| format!("{}\n", p.display())).collect();
    emit(out, &list)
}

#[cfg(test)]
mod tests;
