//! Command-line front end. [`run`] returns the process exit code:
//! 0 success, 1 verification failure, 2 input error.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{all_builtins, builtin, evaluate_fact, random_family};
use crate::connection::{ConnectionParams, Geometry};
use crate::error::{Error, Result};
use crate::exterior::C64;
use crate::hermitian::{load_spec, torsion_invariants, ManifoldSpec};
use crate::identities::{all_pass, run_suite, IdentityReport, SuiteConfig};
use crate::kahler_like::{gauduchon_locus, is_kahler_like, plane_locus, LocusReport, DEFAULT_TOL};

#[derive(Parser, Debug)]
#[command(name = "gauduchon-lab", version, about = "Canonical Hermitian connections on Lie-algebra Hermitian manifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Torsion invariants and Kähler-like verdicts at chosen connections.
    Analyze(AnalyzeArgs),
    /// Obstruction norms over an (r,s) grid.
    Scan(ScanArgs),
    /// Solve for the Kähler-like locus.
    Locus(LocusArgs),
    /// Run the identity suite.
    Verify(VerifyArgs),
    /// List builtin manifolds or print one as a spec document.
    Catalog(CatalogArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Source {
    /// Builtin manifold name.
    #[arg(long, conflicts_with_all = ["spec", "random"])]
    pub catalog: Option<String>,
    /// Path to a JSON spec document.
    #[arg(long, conflicts_with = "random")]
    pub spec: Option<PathBuf>,
    /// Random family (`nilpotent3`, `metric_perturbed[:BASE]`).
    #[arg(long)]
    pub random: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    #[arg(long, env = "GAUDUCHON_LAB_TOL", default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub source: Source,
    #[command(flatten)]
    pub output: Output,
    /// Connection `R,S`; fractions like `1/3` are accepted. Repeatable.
    #[arg(long, value_name = "R,S", allow_hyphen_values = true)]
    pub connection: Vec<String>,
    /// Gauduchon connection `D^R`, i.e. `--connection R,0`. Repeatable.
    #[arg(long, value_name = "R", allow_hyphen_values = true)]
    pub gauduchon: Vec<String>,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[command(flatten)]
    pub source: Source,
    #[command(flatten)]
    pub output: Output,
    #[arg(long, value_name = "A:B:STEP", allow_hyphen_values = true)]
    pub r_range: String,
    #[arg(long, value_name = "A:B:STEP", allow_hyphen_values = true, default_value = "0:0:1")]
    pub s_range: String,
}

#[derive(Args, Debug)]
pub struct LocusArgs {
    #[command(flatten)]
    pub source: Source,
    #[command(flatten)]
    pub output: Output,
    /// Only solve on the Gauduchon line.
    #[arg(long)]
    pub line_only: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: Source,
    #[command(flatten)]
    pub output: Output,
    /// Extra plane point for the conditional checks. Repeatable.
    #[arg(long, value_name = "R,S", allow_hyphen_values = true)]
    pub connection: Vec<String>,
    /// Extra Gauduchon parameter for the conditional checks. Repeatable.
    #[arg(long, value_name = "R", allow_hyphen_values = true)]
    pub gauduchon: Vec<String>,
}

#[derive(Args, Debug)]
pub struct CatalogArgs {
    /// Print this entry as a spec document instead of listing.
    pub name: Option<String>,
    #[arg(long, env = "GAUDUCHON_LAB_TOL", default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A number, optionally written as a fraction `p/q`.
pub fn parse_number(s: &str) -> Result<f64> {
    let s = s.trim();
    let bad = || Error::Config(format!("not a number: '{s}'"));
    let v = match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| bad())?;
            let q: f64 = q.trim().parse().map_err(|_| bad())?;
            p / q
        }
        None => s.parse().map_err(|_| bad())?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}

pub fn parse_pair(s: &str) -> Result<(f64, f64)> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Error::Config(format!("expected R,S but got '{s}'")))?;
    Ok((parse_number(a)?, parse_number(b)?))
}

/// `A:B:STEP` expanded to its grid, endpoints included.
pub fn parse_range(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, step] = parts[..] else {
        return Err(Error::Config(format!("expected A:B:STEP but got '{s}'")));
    };
    let (a, b, step) = (parse_number(a)?, parse_number(b)?, parse_number(step)?);
    if step <= 0.0 {
        return Err(Error::Config(format!("range step must be positive in '{s}'")));
    }
    if b < a {
        return Err(Error::Config(format!("empty range '{s}'")));
    }
    let count = ((b - a) / step + 1e-9).floor() as usize + 1;
    if count > 1_000_000 {
        return Err(Error::Config(format!("range '{s}' has too many points")));
    }
    // a + k·step snapped to 15 digits so 0.1-style steps stay clean
    Ok((0..count).map(|k| round_sig(a + k as f64 * step, 15)).collect())
}

fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits - 1, x).parse().unwrap_or(x)
}

/// Fixed 12-significant-digit rendering for CSV and Markdown.
pub fn fmt_f(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x == 0.0 {
        return "0".into();
    }
    let a = x.abs();
    if (1e-4..1e12).contains(&a) {
        format!("{}", round_sig(x, 12))
    } else {
        let s = format!("{:.11e}", x);
        let (m, e) = s.split_once('e').unwrap();
        let m = if m.contains('.') { m.trim_end_matches('0').trim_end_matches('.') } else { m };
        format!("{m}e{e}")
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::Config(format!("tolerance must be positive, got {tol}")))
    }
}

fn load_sources(src: &Source) -> Result<Vec<ManifoldSpec>> {
    if let Some(name) = &src.catalog {
        return Ok(vec![builtin(name)?.spec]);
    }
    if let Some(path) = &src.spec {
        let text = std::fs::read_to_string(path)?;
        return Ok(vec![load_spec(&text)?]);
    }
    if let Some(fam) = &src.random {
        if src.count == 0 {
            return Err(Error::Config("--count must be at least 1".into()));
        }
        return random_family(src.seed, fam, src.count);
    }
    Err(Error::Config("one of --catalog, --spec or --random is required".into()))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes())?;
            so.flush()?;
        }
    }
    Ok(())
}

fn cjson(z: C64) -> Value {
    json!([z.re, z.im])
}

fn fmt_c(z: C64) -> String {
    if z.im == 0.0 {
        fmt_f(z.re)
    } else {
        format!("{}{}{}i", fmt_f(z.re), if z.im < 0.0 { "" } else { "+" }, fmt_f(z.im))
    }
}

#[derive(Serialize)]
struct ConnectionRow {
    label: String,
    r: f64,
    s: f64,
    t: f64,
    norm_o2: f64,
    norm_o20: f64,
    norm_o11: f64,
    kahler_like: bool,
}

fn connection_row(geo: &Geometry, label: String, p: ConnectionParams, tol: f64) -> ConnectionRow {
    let v = is_kahler_like(geo, p, tol);
    ConnectionRow {
        label,
        r: p.r(),
        s: p.s(),
        t: p.t(),
        norm_o2: v.norm_o2,
        norm_o20: v.norm_o20,
        norm_o11: v.norm_o11,
        kahler_like: v.kahler_like,
    }
}

fn requested_points(connection: &[String], gauduchon: &[String]) -> Result<Vec<(String, ConnectionParams)>> {
    let mut out = Vec::new();
    for c in connection {
        let (r, s) = parse_pair(c)?;
        out.push((c.clone(), ConnectionParams::new(r, s)?));
    }
    for g in gauduchon {
        out.push((format!("{g},0"), ConnectionParams::gauduchon(parse_number(g)?)?));
    }
    Ok(out)
}

fn default_points() -> Vec<(String, ConnectionParams)> {
    [
        ("chern", 1.0, 0.0),
        ("lichnerowicz", 0.0, 0.0),
        ("strominger", -1.0, 0.0),
        ("plus", -1.0, 2.0),
        ("minus", 1.0 / 3.0, -2.0),
        ("riemannian", 0.0, 1.0),
    ]
    .into_iter()
    .map(|(l, r, s)| (l.to_string(), ConnectionParams::new(r, s).expect("fixed point")))
    .collect()
}

fn analyze(args: &AnalyzeArgs) -> Result<(String, i32)> {
    let tol = args.output.tol;
    check_tol(tol)?;
    let specs = load_sources(&args.source)?;
    let mut points = requested_points(&args.connection, &args.gauduchon)?;
    if points.is_empty() {
        points = default_points();
    }
    let mut docs = Vec::new();
    let mut csv = String::from("name,label,r,s,t,norm_O2,norm_O20,norm_O11,kahler_like\n");
    let mut md = String::new();
    for spec in &specs {
        let geo = Geometry::from_spec(spec)?;
        let inv = torsion_invariants(&geo.cd);
        let n = geo.n();
        let mut torsion = Vec::new();
        for k in 0..n {
            for i in 0..n {
                for j in (i + 1)..n {
                    let z = geo.cd.t(k, i, j);
                    if z.norm() > 0.0 {
                        torsion.push(json!({"k": k + 1, "i": i + 1, "j": j + 1, "value": cjson(z)}));
                    }
                }
            }
        }
        let mat = |m: &ndarray::Array2<C64>| -> Value {
            Value::Array((0..n).map(|a| Value::Array((0..n).map(|b| cjson(m[[a, b]])).collect())).collect())
        };
        let rows: Vec<ConnectionRow> = points
            .iter()
            .map(|(l, p)| connection_row(&geo, l.clone(), *p, tol))
            .collect();
        docs.push(json!({
            "name": spec.name,
            "n": n,
            "torsion": torsion,
            "eta": inv.eta.iter().map(|z| cjson(*z)).collect::<Vec<_>>(),
            "norm_t2": inv.norm_t2,
            "norm_eta2": inv.norm_eta2,
            "a": mat(&inv.a),
            "b": mat(&inv.b),
            "phi": mat(&inv.phi),
            "connections": rows,
        }));
        for row in &rows {
            let _ = writeln!(
                csv,
                "{},\"{}\",{},{},{},{},{},{},{}",
                spec.name,
                row.label,
                fmt_f(row.r),
                fmt_f(row.s),
                fmt_f(row.t),
                fmt_f(row.norm_o2),
                fmt_f(row.norm_o20),
                fmt_f(row.norm_o11),
                row.kahler_like
            );
        }
        let _ = writeln!(md, "## {}\n", spec.name);
        let _ = writeln!(md, "- n = {n}\n- |T|² = {}\n- |η|² = {}", fmt_f(inv.norm_t2), fmt_f(inv.norm_eta2));
        let eta: Vec<String> = inv.eta.iter().map(|z| fmt_c(*z)).collect();
        let _ = writeln!(md, "- η = ({})\n", eta.join(", "));
        let _ = writeln!(md, "| connection | r | s | t | O2 | O20 | O11 | Kähler-like |\n|---|---|---|---|---|---|---|---|");
        for row in &rows {
            let _ = writeln!(
                md,
                "| {} | {} | {} | {} | {} | {} | {} | {} |",
                row.label,
                fmt_f(row.r),
                fmt_f(row.s),
                fmt_f(row.t),
                fmt_f(row.norm_o2),
                fmt_f(row.norm_o20),
                fmt_f(row.norm_o11),
                row.kahler_like
            );
        }
        md.push('\n');
    }
    let text = match args.output.format {
        Format::Json => {
            let v = if docs.len() == 1 { docs.pop().unwrap() } else { Value::Array(docs) };
            serde_json::to_string_pretty(&v)? + "\n"
        }
        Format::Csv => csv,
        Format::Md => md,
    };
    Ok((text, 0))
}

fn scan(args: &ScanArgs) -> Result<(String, i32)> {
    let tol = args.output.tol;
    check_tol(tol)?;
    let rs = parse_range(&args.r_range)?;
    let ss = parse_range(&args.s_range)?;
    let specs = load_sources(&args.source)?;
    if specs.len() != 1 {
        return Err(Error::Config("scan takes a single manifold".into()));
    }
    let geo = Geometry::from_spec(&specs[0])?;
    let grid: Vec<(f64, f64)> = rs.iter().flat_map(|&r| ss.iter().map(move |&s| (r, s))).collect();
    let rows: Vec<Option<ConnectionRow>> = grid
        .par_iter()
        .map(|&(r, s)| {
            ConnectionParams::new(r, s)
                .ok()
                .map(|p| connection_row(&geo, String::new(), p, tol))
        })
        .collect();
    let skipped = rows.iter().filter(|r| r.is_none()).count();
    if skipped > 0 {
        eprintln!("skipped {skipped} grid point(s) with s = 1, r ≠ 0");
    }
    let rows: Vec<ConnectionRow> = rows.into_iter().flatten().collect();
    if rows.is_empty() {
        return Err(Error::Config("empty grid".into()));
    }
    let text = match args.output.format {
        Format::Csv => {
            let mut s = String::from("r,s,t,norm_O2,norm_O20,norm_O11,kahler_like\n");
            for row in &rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{}",
                    fmt_f(row.r),
                    fmt_f(row.s),
                    fmt_f(row.t),
                    fmt_f(row.norm_o2),
                    fmt_f(row.norm_o20),
                    fmt_f(row.norm_o11),
                    row.kahler_like
                );
            }
            s
        }
        Format::Json => {
            let v: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({"r": r.r, "s": r.s, "t": r.t, "norm_O2": r.norm_o2, "norm_O20": r.norm_o20,
                           "norm_O11": r.norm_o11, "kahler_like": r.kahler_like})
                })
                .collect();
            serde_json::to_string_pretty(&v)? + "\n"
        }
        Format::Md => {
            let mut s = String::from("| r | s | t | O2 | O20 | O11 | Kähler-like |\n|---|---|---|---|---|---|---|\n");
            for row in &rows {
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {} | {} | {} | {} |",
                    fmt_f(row.r),
                    fmt_f(row.s),
                    fmt_f(row.t),
                    fmt_f(row.norm_o2),
                    fmt_f(row.norm_o20),
                    fmt_f(row.norm_o11),
                    row.kahler_like
                );
            }
            s
        }
    };
    Ok((text, 0))
}

fn locus(args: &LocusArgs) -> Result<(String, i32)> {
    let tol = args.output.tol;
    check_tol(tol)?;
    let specs = load_sources(&args.source)?;
    let mut reports: Vec<(String, LocusReport)> = Vec::new();
    for spec in &specs {
        let geo = Geometry::from_spec(spec)?;
        let rep = if args.line_only {
            LocusReport {
                line: gauduchon_locus(&geo, tol),
                plane: None,
            }
        } else {
            plane_locus(&geo, tol)
        };
        reports.push((spec.name.clone(), rep));
    }
    let text = match args.output.format {
        Format::Json => {
            let mut docs: Vec<Value> = reports
                .iter()
                .map(|(name, rep)| {
                    let mut v = serde_json::to_value(rep).expect("locus report serializes");
                    v.as_object_mut().expect("object").insert("name".into(), json!(name));
                    v
                })
                .collect();
            let v = if docs.len() == 1 { docs.pop().unwrap() } else { Value::Array(docs) };
            serde_json::to_string_pretty(&v)? + "\n"
        }
        Format::Csv => {
            let mut s = String::from("name,kind,r,s,t,residual\n");
            for (name, rep) in &reports {
                if rep.line.is_all() {
                    let _ = writeln!(s, "{name},line_all,,,,");
                }
                if rep.plane.as_ref().is_some_and(|p| p.entire_plane) {
                    let _ = writeln!(s, "{name},plane_all,,,,");
                }
                for p in rep.points() {
                    let kind = if p.s == 0.0 { "line" } else { "plane" };
                    let _ = writeln!(s, "{name},{kind},{},{},{},{}", fmt_f(p.r), fmt_f(p.s), fmt_f(p.t), fmt_f(p.residual));
                }
                for b in rep.plane.iter().flat_map(|p| &p.branches) {
                    let _ = writeln!(s, "{name},branch:{},,,,", branch_kind(b));
                }
            }
            s
        }
        Format::Md => {
            let mut s = String::new();
            for (name, rep) in &reports {
                let _ = writeln!(s, "## {name}\n");
                if rep.line.is_all() {
                    s.push_str("- every Gauduchon connection is Kähler-like\n");
                }
                if rep.plane.as_ref().is_some_and(|p| p.entire_plane) {
                    s.push_str("- every connection in the plane is Kähler-like\n");
                }
                for p in rep.points() {
                    let _ = writeln!(s, "- (r, s) = ({}, {}), residual {}", fmt_f(p.r), fmt_f(p.s), fmt_f(p.residual));
                }
                for b in rep.plane.iter().flat_map(|p| &p.branches) {
                    let _ = writeln!(s, "- branch: {}", branch_kind(b));
                }
                s.push('\n');
            }
            s
        }
    };
    Ok((text, 0))
}

fn branch_kind(b: &crate::kahler_like::Branch) -> String {
    use crate::kahler_like::Branch;
    match b {
        Branch::FixedT { t, .. } => format!("t={}", fmt_f(*t)),
        Branch::Curve { .. } => "curve".into(),
        Branch::OffLine { .. } => "off_line".into(),
    }
}

fn verify(args: &VerifyArgs) -> Result<(String, i32)> {
    let tol = args.output.tol;
    check_tol(tol)?;
    let specs = load_sources(&args.source)?;
    let mut cfg = SuiteConfig {
        tol,
        ..SuiteConfig::default()
    };
    for c in &args.connection {
        let (r, s) = parse_pair(c)?;
        ConnectionParams::new(r, s)?;
        if s == 0.0 {
            cfg.gauduchon.push(r);
        } else {
            cfg.plane.push((r, s));
        }
    }
    for g in &args.gauduchon {
        cfg.gauduchon.push(parse_number(g)?);
    }
    let mut results: Vec<(String, Vec<IdentityReport>)> = Vec::new();
    for spec in &specs {
        let geo = Geometry::from_spec(spec)?;
        results.push((spec.name.clone(), run_suite(&geo, &cfg)));
    }
    let ok = results.iter().all(|(_, r)| all_pass(r));
    let text = match args.output.format {
        Format::Json => {
            let docs: Vec<Value> = results
                .iter()
                .map(|(name, reps)| {
                    json!({
                        "name": name,
                        "pass": all_pass(reps),
                        "applicable": reps.iter().filter(|r| r.applicable).count(),
                        "not_applicable": reps.iter().filter(|r| !r.applicable).count(),
                        "checks": reps,
                    })
                })
                .collect();
            serde_json::to_string_pretty(&json!({"pass": ok, "tol": tol, "manifolds": docs}))? + "\n"
        }
        Format::Csv => {
            let mut s = String::from("name,id,at,applicable,residual,pass\n");
            for (name, reps) in &results {
                for r in reps {
                    let pass = r.pass.map(|b| b.to_string()).unwrap_or_default();
                    let _ = writeln!(s, "{name},{},\"{}\",{},{},{pass}", r.id, r.at, r.applicable, fmt_f(r.residual));
                }
            }
            s
        }
        Format::Md => {
            let mut s = format!("overall: {}\n\n", if ok { "pass" } else { "FAIL" });
            for (name, reps) in &results {
                let _ = writeln!(s, "## {name}\n\n| check | at | applicable | residual | pass |\n|---|---|---|---|---|");
                for r in reps {
                    let pass = r.pass.map(|b| if b { "yes" } else { "NO" }).unwrap_or("-");
                    let _ = writeln!(s, "| {} | {} | {} | {} | {pass} |", r.id, r.at, r.applicable, fmt_f(r.residual));
                }
                s.push('\n');
            }
            s
        }
    };
    Ok((text, if ok { 0 } else { 1 }))
}

fn catalog(args: &CatalogArgs) -> Result<(String, i32)> {
    check_tol(args.tol)?;
    if let Some(name) = &args.name {
        return Ok((builtin(name)?.spec.to_json() + "\n", 0));
    }
    let mut entries = Vec::new();
    let mut mismatch = false;
    for e in all_builtins() {
        let geo = Geometry::from_spec(&e.spec)?;
        let facts: Vec<Value> = e
            .expected
            .iter()
            .map(|(fact, want)| {
                let got = evaluate_fact(&geo, fact, args.tol);
                mismatch |= got != Some(*want);
                json!({"fact": fact, "expected": want, "derived": got})
            })
            .collect();
        entries.push(json!({"name": e.spec.name, "n": e.spec.n, "provenance": e.provenance, "facts": facts}));
    }
    let text = match args.format {
        Format::Json => serde_json::to_string_pretty(&entries)? + "\n",
        Format::Csv => {
            let mut s = String::from("name,n,fact,expected,derived\n");
            for e in &entries {
                for f in e["facts"].as_array().unwrap() {
                    let _ = writeln!(s, "{},{},{},{},{}", e["name"].as_str().unwrap(), e["n"], f["fact"].as_str().unwrap(), f["expected"], f["derived"]);
                }
            }
            s
        }
        Format::Md => {
            let mut s = String::from("| name | n | description |\n|---|---|---|\n");
            for e in &entries {
                let _ = writeln!(s, "| {} | {} | {} |", e["name"].as_str().unwrap(), e["n"], e["provenance"].as_str().unwrap());
            }
            s
        }
    };
    Ok((text, if mismatch { 1 } else { 0 }))
}

/// Parse `args` (including the program name) and run. Returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let (res, out) = match &cli.command {
        Command::Analyze(a) => (analyze(a), &a.output.out),
        Command::Scan(a) => (scan(a), &a.output.out),
        Command::Locus(a) => (locus(a), &a.output.out),
        Command::Verify(a) => (verify(a), &a.output.out),
        Command::Catalog(a) => (catalog(a), &a.out),
    };
    match res.and_then(|(text, code)| emit(out, &text).map(|_| code)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_and_ranges() {
        assert_eq!(parse_number("1/3").unwrap(), 1.0 / 3.0);
        assert_eq!(parse_number("-2").unwrap(), -2.0);
        assert!(parse_number("x").is_err());
        assert!(parse_number("1/0").is_err());
        assert_eq!(parse_pair("-1,2").unwrap(), (-1.0, 2.0));
        let g = parse_range("-2:2:0.5").unwrap();
        assert_eq!(g.len(), 9);
        assert_eq!(g[0], -2.0);
        assert_eq!(g[8], 2.0);
        assert_eq!(g[3], -0.5);
        assert!(parse_range("0:1:0").is_err());
        assert!(parse_range("1:0:1").is_err());
        assert_eq!(parse_range("0.1:0.3:0.1").unwrap(), vec![0.1, 0.2, 0.3]);
    }

    #[test]
    fn float_format() {
        assert_eq!(fmt_f(1.0), "1");
        assert_eq!(fmt_f(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_f(-0.5), "-0.5");
        assert_eq!(fmt_f(0.0), "0");
        assert_eq!(fmt_f(1.5e-17), "1.5e-17");
        assert_eq!(fmt_f(2.0 / 3.0 * 1e-9), "6.66666666667e-10");
    }
}
