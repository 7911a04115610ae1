use std::path::PathBuf;

use super::*;

struct Call {
    code: u8,
    out: String,
}

fn call_with(args: &[&str], seed_env: Option<&str>) -> Call {
    let mut buf = Vec::new();
    let argv = std::iter::once("fraczee").chain(args.iter().copied());
    let code = match run(argv, seed_env, &mut buf) {
        Ok(()) => 0,
        Err(f) => f.code,
    };
    Call { code, out: String::from_utf8(buf).unwrap() }
}

fn call(args: &[&str]) -> Call {
    call_with(args, None)
}

fn json(args: &[&str]) -> serde_json::Value {
    let c = call(args);
    assert_eq!(c.code, 0, "{args:?}");
    serde_json::from_str(&c.out).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("fraczee-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn derive_half_of_x() {
    let c = call(&["derive", "x", "--axis", "x", "--order", "0.5"]);
    assert_eq!((c.code, c.out.as_str()), (0, "1.1283791671*x^0.5\n"));
}

#[test]
fn derive_integer_order() {
    assert_eq!(call(&["derive", "x^2", "--axis", "x", "--order", "1"]).out, "2*x\n");
}

#[test]
fn derive_at_point_cross_checks() {
    let c = call(&["derive", "x", "--axis", "x", "--order", "0.5", "--at", "x=1"]);
    let lines: Vec<_> = c.out.lines().collect();
    assert_eq!(lines[1], "value 1.1283791671");
    let dev: f64 = lines[2].rsplit(' ').next().unwrap().parse().unwrap();
    assert!(lines[2].starts_with("quadrature 1.12837") && dev < 1e-6, "{}", c.out);
}

#[test]
fn derive_at_point_other_axes_fixed() {
    let c = call(&["derive", "x*y^0.5 + 3", "--axis", "y", "--order", "0.3", "--at", "x=2,y=1.5"]);
    let dev: f64 = c.out.lines().nth(2).unwrap().rsplit(' ').next().unwrap().parse().unwrap();
    assert!(dev < 1e-6, "{}", c.out);
}

#[test]
fn derive_outside_quadrature_range() {
    let c = call(&["derive", "x^3", "--axis", "x", "--order", "1.5", "--at", "x=4"]);
    assert!(c.out.ends_with("quadrature skipped: order outside (0, 1)\n"));
}

#[test]
fn derive_fractional_integral() {
    assert_eq!(call(&["derive", "1", "--axis", "t", "--order", "-1"]).out, "t\n");
}

#[test]
fn derive_exit_codes() {
    assert_eq!(call(&["derive", "x^", "--axis", "x", "--order", "0.5"]).code, 2);
    assert_eq!(call(&["derive", "x^-1.5", "--axis", "x", "--order", "0.5"]).code, 3);
    assert_eq!(call(&["derive", "x", "--axis", "w", "--order", "0.5"]).code, 2);
    assert_eq!(call(&["derive", "x*y", "--axis", "x", "--order", "0.5", "--at", "x=1"]).code, 2);
    assert_eq!(call(&["derive", "x", "--axis", "x", "--order", "0.5", "--at", "x=1,x=2"]).code, 2);
    assert_eq!(call(&["derive", "x^-0.5", "--axis", "y", "--order", "0", "--at", "x=0"]).code, 3);
    assert_eq!(call(&["derive", "x"]).code, 2);
}

#[test]
fn help_is_output_not_error() {
    let c = call(&["--help"]);
    assert_eq!(c.code, 0);
    assert!(c.out.contains("derive") && c.out.contains("report"));
}

#[test]
fn verify_emits_json() {
    let v = json(&["verify", "zeeman-field"]);
    assert_eq!(v["suite"], "zeeman-field");
    assert_eq!(v["passed"], true);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["worst"].as_f64().unwrap() < 1e-12));
}

#[test]
fn verify_all_lists_every_suite() {
    let v = json(&["verify", "all"]);
    let names: Vec<_> = v.as_array().unwrap().iter().map(|s| s["suite"].as_str().unwrap().to_string()).collect();
    assert_eq!(names, ["quad", "zeeman-field", "connection", "commutators", "spin-algebra"]);
}

#[test]
fn predict_default_mesons() {
    let v = json(&["predict"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[4]["name"], "φ(1020)");
    assert!((rows[4]["e_th"].as_f64().unwrap() - 945.76).abs() < 0.05);
}

#[test]
fn predict_explicit_multiplets() {
    let v = json(&["predict", "--multiplet", "3,1", "--multiplet", "4,-2", "--sign", "minus"]);
    assert_eq!(v[1]["M"], -2);
    assert_eq!(v[1]["sign"], "Minus");
    assert!(v[0].get("name").is_none());
    assert_eq!(call(&["predict", "--multiplet", "2,3"]).code, 3);
    assert_eq!(call(&["predict", "--multiplet", "2"]).code, 2);
}

#[test]
fn spectrum_grid() {
    let v = json(&["spectrum", "--l-min", "2", "--l-max", "3", "--negative-m"]);
    assert_eq!(v.as_array().unwrap().len(), 5 + 7);
    assert_eq!(call(&["spectrum", "--alpha", "-1"]).code, 3);
    assert_eq!(call(&["spectrum", "--l-min", "4", "--l-max", "2"]).code, 2);
}

#[test]
fn parameter_overrides() {
    let base = json(&["predict", "--multiplet", "3,0"]);
    let moved = json(&["predict", "--multiplet", "3,0", "--m0", "-17161.6"]);
    let d = moved[0]["e_th"].as_f64().unwrap() - base[0]["e_th"].as_f64().unwrap();
    assert!((d - 10.0).abs() < 1e-9);
}

#[test]
fn fit_json_schema() {
    let v = json(&["fit", "--starts", "4"]);
    for key in ["params", "rms_percent", "per_particle", "evals", "converged"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["per_particle"].as_array().unwrap().len(), 44);
    assert!(v["per_particle"][0].get("de_percent").is_some());
}

#[test]
fn fit_selection_flags() {
    let v = json(&["fit", "--starts", "2", "--groups", "baryon,theoretical", "--l-max", "20"]);
    assert_eq!(v["per_particle"].as_array().unwrap().len(), 48);
    assert_eq!(call(&["fit", "--groups", "quark"]).code, 2);
    assert_eq!(call(&["fit", "--l-min", "9", "--l-max", "3"]).code, 2);
    assert_eq!(call(&["fit", "--data", "/nonexistent/t.csv"]).code, 4);
    assert_eq!(call(&["fit", "--data", "table.txt"]).code, 2);
    assert_eq!(call(&["fit", "--max-evals", "10", "--starts", "2"]).code, 1);
    assert_eq!(call(&["fit", "--starts", "0"]).code, 2);
}

#[test]
fn fit_from_csv_file() {
    let d = scratch("csv");
    let path = d.join("t.csv");
    std::fs::write(
        &path,
        "name,L,M,mass_mev,status,group\na,3,0,938,,baryon\nb,3,1,1116,,baryon\nc,3,2,1193,,baryon\nd,3,3,1315,,baryon\ne,4,0,1232,,baryon\nf,4,1,1384,,baryon\n",
    )
    .unwrap();
    assert_eq!(call(&["fit", "--starts", "2", "--data", path.to_str().unwrap()]).code, 0);
    let bad = d.join("bad.csv");
    std::fs::write(&bad, "name,L,M,mass_mev,status,group\na,3,5,938,,baryon\n").unwrap();
    assert_eq!(call(&["fit", "--data", bad.to_str().unwrap()]).code, 2);
}

#[test]
fn fit_out_file() {
    let d = scratch("out");
    let path = d.join("fit.json");
    let c = call(&["fit", "--starts", "2", "--out", path.to_str().unwrap()]);
    assert_eq!((c.code, c.out.as_str()), (0, ""));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), call(&["fit", "--starts", "2"]).out);
}

#[test]
fn seed_precedence() {
    let d = scratch("seed");
    let cfg = d.join("fit.cfg");
    std::fs::write(&cfg, "seed = 7\nstarts = 2\n").unwrap();
    let c = cfg.to_str().unwrap();
    let seven = call(&["fit", "--starts", "2", "--seed", "7"]).out;
    let nine = call(&["fit", "--starts", "2", "--seed", "9"]).out;
    assert_ne!(seven, nine);
    // default < config < environment < flag
    assert_eq!(call(&["--config", c, "fit"]).out, seven);
    assert_eq!(call_with(&["--config", c, "fit"], Some("9")).out, nine);
    assert_eq!(call_with(&["--config", c, "fit", "--seed", "7"], Some("9")).out, seven);
    assert_eq!(call_with(&["fit", "--starts", "2"], Some("7")).out, seven);
    assert_eq!(call_with(&["fit"], Some("seven")).code, 2);
}

#[test]
fn config_errors() {
    let d = scratch("cfg");
    let cfg = d.join("bad.cfg");
    std::fs::write(&cfg, "colour = red\n").unwrap();
    assert_eq!(call(&["--config", cfg.to_str().unwrap(), "fit"]).code, 2);
    assert_eq!(call(&["--config", d.join("missing.cfg").to_str().unwrap(), "fit"]).code, 4);
}

#[test]
fn report_files() {
    let d = scratch("report");
    let c = call(&["report", "--out-dir", d.to_str().unwrap()]);
    assert_eq!(c.code, 0);
    assert_eq!(c.out.lines().count(), 2);
    let table = std::fs::read_to_string(d.join("table.csv")).unwrap();
    assert_eq!(table.lines().count(), 54);
    assert!(table.contains("\nφ(1020),2,2,1019.00,945.78,"));
    let plot = std::fs::read_to_string(d.join("plot.tsv")).unwrap();
    let series: BTreeSet<_> = plot.lines().skip(1).map(|l| l.split('\t').next().unwrap()).collect();
    assert_eq!(series.len(), 10);
}

#[test]
fn report_from_fit_output() {
    let d = scratch("fit-report");
    let fit = d.join("fit.json");
    assert_eq!(call(&["fit", "--starts", "2", "--out", fit.to_str().unwrap()]).code, 0);
    let out = d.join("r");
    let c =
        call(&["report", "--params", fit.to_str().unwrap(), "--out-dir", out.to_str().unwrap(), "--groups", "meson"]);
    assert_eq!(c.code, 0);
    assert_eq!(std::fs::read_to_string(out.join("table.csv")).unwrap().lines().count(), 6);
}

#[test]
fn report_empty_selection() {
    let d = scratch("empty");
    let c = call(&["report", "--out-dir", d.to_str().unwrap(), "--series", "1..0", "--groups", "theoretical"]);
    assert_eq!(c.code, 0);
    assert_eq!(std::fs::read_to_string(d.join("plot.tsv")).unwrap().lines().count(), 1 + 2);
    assert_eq!(call(&["report", "--out-dir", d.to_str().unwrap(), "--series", "9"]).code, 2);
}

#[test]
fn params_file_forms() {
    let d = scratch("params");
    let bare = d.join("p.json");
    std::fs::write(&bare, r#"{"alpha": 0.112, "m0": -17171.6, "a0": 10971.8, "b0": 8064.6}"#).unwrap();
    let a = call(&["predict", "--params", bare.to_str().unwrap()]).out;
    assert_eq!(a, call(&["predict"]).out);
    let broken = d.join("q.json");
    std::fs::write(&broken, r#"{"alpha": 0.0, "m0": 0, "a0": 0, "b0": 0}"#).unwrap();
    assert_eq!(call(&["predict", "--params", broken.to_str().unwrap()]).code, 3);
    std::fs::write(&broken, "not json").unwrap();
    assert_eq!(call(&["predict", "--params", broken.to_str().unwrap()]).code, 2);
}
