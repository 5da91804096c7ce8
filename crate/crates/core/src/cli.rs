//! Command-line front end. Every command renders a deterministic text or JSON
//! report; exit codes are 0 (all checks pass), 1 (a mathematical check
//! fails) and 2 (usage or input error).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::atiyah::atiyah_report;
use crate::dpoly::{
    cohomology_report, expected_graded_betti, graded_oracle_betti, hopf_axiom_report, AntipodeChoice, DComplex,
    TruncationSpec,
};
use crate::error::{Error, Result};
use crate::free_lie::free_lie_report;
use crate::hkr::hkr_report;
use crate::lie::{load_pair, LiePair, Violation};

#[derive(Parser, Debug)]
#[command(
    name = "liehopf",
    version,
    about = "Exact checks for the polydifferential complex of a Lie pair"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: RunConfig,
}

#[derive(Subcommand, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    /// Check antisymmetry, Jacobi and subalgebra closure of the input pair.
    Validate,
    /// Hopf axioms of the polydifferential complex.
    Hopf,
    /// Skew-symmetrization cocycles, their classes and dim Hⁿ.
    Hkr,
    /// Cohomology of the complex in a weight range, with the graded oracle.
    Cohomology,
    /// Atiyah cocycle, its class and connection independence.
    Atiyah,
    /// Symmetrization isomorphism, d-stability and bracket compatibility.
    Freelie,
    /// All suites and a summary verdict.
    Report,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct RunConfig {
    /// Pair file (JSON: dim, subalgebra_dim, basis, brackets).
    #[arg(long = "pair", global = true, value_name = "FILE")]
    pub pair_file: Option<PathBuf>,
    /// Largest PBW weight of a tensor leg.
    #[arg(long, global = true, default_value_t = 3)]
    pub max_weight: usize,
    /// Largest tensor degree.
    #[arg(long, global = true, default_value_t = 3)]
    pub max_degree: usize,
    #[arg(long = "antipode", global = true, value_enum, default_value_t = AntipodeChoice::Auto)]
    pub antipode_convention: AntipodeChoice,
    #[arg(long = "format", global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub output_format: OutputFormat,
    /// Seed for sampled property checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

impl RunConfig {
    pub fn new(pair_file: impl Into<PathBuf>) -> Self {
        Self {
            pair_file: Some(pair_file.into()),
            max_weight: 3,
            max_degree: 3,
            antipode_convention: AntipodeChoice::Auto,
            output_format: OutputFormat::Text,
            seed: 0,
        }
    }

    pub fn spec(&self) -> Result<TruncationSpec> {
        TruncationSpec::new(self.max_weight, self.max_degree)
    }

    fn load(&self) -> Result<LiePair> {
        let path = self
            .pair_file
            .as_ref()
            .ok_or_else(|| Error::Format("no pair file given (use --pair FILE)".into()))?;
        load_pair(path)
    }
}

/// A rendered report and its verdict.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub passed: bool,
    pub text: String,
    pub json: Value,
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

fn header(cfg: &RunConfig, pair: &LiePair, title: &str) -> String {
    let file = cfg
        .pair_file
        .as_ref()
        .map(|p| p.display().to_string())
        .unwrap_or_default();
    let names = pair.names();
    format!(
        "== {title} ==\npair {file}: g = <{}>, h = <{}>, w = {}, N = {}\n",
        names.join(", "),
        names[..pair.sub_dim()].join(", "),
        cfg.max_weight,
        cfg.max_degree
    )
}

pub fn cmd_validate(cfg: &RunConfig) -> Result<Outcome> {
    match cfg.load() {
        Ok(pair) => {
            let names = pair.names();
            let text = format!(
                "== validate ==\nvalid Lie pair: dim g = {}, dim h = {}\nh basis: {}\ncomplement basis: {}\n",
                pair.dim(),
                pair.sub_dim(),
                names[..pair.sub_dim()].join(", "),
                pair.quotient_names().join(", ")
            );
            let json = json!({
                "valid": true,
                "dim": pair.dim(),
                "subalgebra_dim": pair.sub_dim(),
                "basis": names,
            });
            Ok(Outcome {
                passed: true,
                text,
                json,
            })
        }
        Err(Error::InvalidPair(violations)) => {
            let mut text = format!("== validate ==\ninvalid Lie pair: {} violation(s)\n", violations.len());
            for v in &violations {
                let _ = writeln!(text, "  {v}");
            }
            Ok(Outcome {
                passed: false,
                text,
                json: json!({ "valid": false, "violations": to_value::<Vec<Violation>>(&violations) }),
            })
        }
        Err(e) => Err(e),
    }
}

pub fn cmd_hopf(cfg: &RunConfig) -> Result<Outcome> {
    let pair = cfg.load()?;
    let spec = cfg.spec()?;
    let dc = DComplex::new(pair);
    let r = hopf_axiom_report(&dc, &spec, cfg.antipode_convention)?;
    let mut text = header(cfg, dc.pair(), "hopf axioms");
    let selected = r.selected_convention.map_or("none".to_string(), |c| c.to_string());
    let choice = r
        .antipode
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    let _ = writeln!(text, "antipode: {choice} (selected: {selected})");
    for a in &r.axioms {
        let conv = a.convention.map_or(String::new(), |c| format!("[{c}]"));
        let status = if a.strict_pass {
            "PASS"
        } else if a.homotopy_witness_found {
            "PASS up to homotopy"
        } else {
            "FAIL"
        };
        let role = if a.required { "" } else { " (recorded)" };
        let _ = writeln!(
            text,
            "  {:<30} {status}{role}, {} checks",
            format!("{}{conv}", a.name),
            a.checked
        );
        if let Some(c) = &a.counterexample {
            let _ = writeln!(text, "      counterexample: {c}");
        }
        if let Some(n) = &a.homotopy_note {
            let _ = writeln!(text, "      homotopy: {n}");
        }
    }
    let _ = writeln!(text, "verdict: {}", verdict(r.all_pass));
    Ok(Outcome {
        passed: r.all_pass,
        text,
        json: to_value(&r),
    })
}

pub fn cmd_hkr(cfg: &RunConfig) -> Result<Outcome> {
    let pair = cfg.load()?;
    let spec = cfg.spec()?;
    let dc = DComplex::new(pair);
    let r = hkr_report(&dc, &spec)?;
    let mut text = header(cfg, dc.pair(), "HKR");
    for row in &r.rows {
        let indep = match row.independent_pass {
            Some(b) => verdict(b),
            None => "not decided at this truncation",
        };
        let _ = writeln!(
            text,
            "  n = {}: cocycles {}, classes independent {indep}, dim H = {} (C(k, n) = {})",
            row.n,
            verdict(row.cocycle_pass),
            row.dim_h,
            row.expected_binomial
        );
    }
    let _ = writeln!(text, "verdict: {}", verdict(r.all_pass));
    Ok(Outcome {
        passed: r.all_pass,
        text,
        json: to_value(&r),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
struct CohomologyLine {
    degree: usize,
    dim: usize,
    dim_cochains: usize,
    dim_ker: usize,
    dim_im: usize,
    oracle_dim: usize,
    /// Within `n ≤ min(N − 1, w − 1)`.
    decided: bool,
    agrees: bool,
}

pub fn cmd_cohomology(cfg: &RunConfig) -> Result<Outcome> {
    let pair = cfg.load()?;
    let spec = cfg.spec()?;
    let dc = DComplex::new(pair);
    let k = dc.k();
    let rows = cohomology_report(&dc, &spec)?;
    let oracle = graded_oracle_betti(k, spec.max_weight, spec.max_degree);
    let oracle_ok = oracle
        .iter()
        .all(|e| e.dim_h == expected_graded_betti(k, e.weight, e.degree));
    let bound = spec.max_degree.min(spec.max_weight).saturating_sub(1);
    let table: Vec<CohomologyLine> = rows
        .iter()
        .map(|r| {
            let oracle_dim = oracle.iter().filter(|e| e.degree == r.degree).map(|e| e.dim_h).sum();
            CohomologyLine {
                degree: r.degree,
                dim: r.dim_h,
                dim_cochains: r.dim_cochains,
                dim_ker: r.dim_ker,
                dim_im: r.dim_im,
                oracle_dim,
                decided: r.degree <= bound,
                agrees: r.dim_h == oracle_dim,
            }
        })
        .collect();
    let passed = oracle_ok && table.iter().all(|l| !l.decided || l.agrees);
    let mut text = header(cfg, dc.pair(), "cohomology");
    let _ = writeln!(text, "  total weight ≤ {}", spec.max_weight);
    for l in &table {
        let _ = writeln!(
            text,
            "  H^{} = {}   (cochains {}, ker {}, im {}; graded oracle {}{})",
            l.degree,
            l.dim,
            l.dim_cochains,
            l.dim_ker,
            l.dim_im,
            l.oracle_dim,
            if l.decided { "" } else { ", outside decided range" }
        );
    }
    let _ = writeln!(text, "  graded oracle Betti = δ(n, w')·C(k, n): {}", verdict(oracle_ok));
    let _ = writeln!(text, "verdict: {}", verdict(passed));
    let json = json!({
        "spec": to_value(&spec),
        "table": to_value(&table),
        "oracle": to_value(&oracle),
        "oracle_matches_binomial": oracle_ok,
        "all_pass": passed,
    });
    Ok(Outcome { passed, text, json })
}

const ATIYAH_SAMPLES: usize = 4;

pub fn cmd_atiyah(cfg: &RunConfig) -> Result<Outcome> {
    let pair = cfg.load()?;
    let r = atiyah_report(&pair, cfg.seed, ATIYAH_SAMPLES)?;
    let mut text = header(cfg, &pair, "Atiyah class");
    for e in &r.cocycle {
        let rows: Vec<String> = e.matrix.iter().map(|row| format!("[{}]", row.join(", "))).collect();
        let _ = writeln!(text, "  R[{}]({}) = [{}]", e.x, e.b, rows.join(", "));
    }
    let _ = writeln!(text, "  cocycle: {}", verdict(r.is_cocycle));
    let _ = writeln!(text, "  class nonzero: {}", r.class_nonzero);
    if let Some(w) = &r.witness {
        for e in w {
            let rows: Vec<String> = e.matrix.iter().map(|row| format!("[{}]", row.join(", "))).collect();
            let _ = writeln!(text, "  primitive: φ({}) = [{}]", e.b, rows.join(", "));
        }
    }
    let _ = writeln!(text, "  dim H¹(h; (g/h)*⊗End(g/h)) = {}", r.h1_dim);
    let found = r.independence.iter().filter(|e| e.witness_found).count();
    let _ = writeln!(
        text,
        "  connection independence (seed {}): {found}/{} witnesses",
        cfg.seed,
        r.independence.len()
    );
    let _ = writeln!(text, "verdict: {}", verdict(r.all_pass));
    Ok(Outcome {
        passed: r.all_pass,
        text,
        json: to_value(&r),
    })
}

pub fn cmd_freelie(cfg: &RunConfig) -> Result<Outcome> {
    let pair = cfg.load()?;
    let spec = cfg.spec()?;
    let dc = DComplex::new(pair);
    let r = free_lie_report(&dc, &spec, cfg.seed)?;
    let mut text = header(cfg, dc.pair(), "free Lie algebra");
    for row in &r.iso {
        let _ = writeln!(
            text,
            "  I in degree {}: rank {} ({} symmetric monomials, tensor dim {}) {}",
            row.degree,
            row.rank,
            row.sym_monomials,
            row.tensor_dim,
            verdict(row.iso_pass)
        );
    }
    for row in &r.d_stability {
        let _ = writeln!(
            text,
            "  degree {} basis ({} words): d-stable {}, h-stable {}",
            row.degree,
            row.words,
            verdict(row.d_member_pass),
            verdict(row.action_member_pass)
        );
        if let Some(o) = &row.offending {
            let _ = writeln!(text, "      offending: {o}");
        }
    }
    for (name, s) in [("graded Jacobi", &r.jacobi), ("bracket chain map", &r.chain_map)] {
        let _ = writeln!(
            text,
            "  {name}: {} samples (seed {}) {}",
            s.sampled,
            s.seed,
            verdict(s.pass)
        );
        if let Some(o) = &s.offending {
            let _ = writeln!(text, "      offending: {o}");
        }
    }
    let c = &r.compatibility;
    let sign = c.sign.map_or("none".to_string(), |s| s.to_string());
    let failed = c.rows.iter().filter(|row| !row.residual_zero).count();
    let _ = writeln!(
        text,
        "  bracket compatibility: {} identities, {failed} nonzero residuals, ε′ = {sign} {}",
        c.rows.len(),
        verdict(c.all_pass)
    );
    if let Some(f) = &c.failure {
        let _ = writeln!(text, "      failure: {f}");
    }
    let _ = writeln!(text, "verdict: {}", verdict(r.all_pass));
    Ok(Outcome {
        passed: r.all_pass,
        text,
        json: to_value(&r),
    })
}

type Suite = fn(&RunConfig) -> Result<Outcome>;

const SUITES: [(&str, Suite); 6] = [
    ("validate", cmd_validate),
    ("cohomology", cmd_cohomology),
    ("hopf", cmd_hopf),
    ("hkr", cmd_hkr),
    ("atiyah", cmd_atiyah),
    ("freelie", cmd_freelie),
];

/// Every suite, run in parallel and assembled in a fixed order.
pub fn cmd_report(cfg: &RunConfig) -> Result<Outcome> {
    use rayon::prelude::*;
    let validation = cmd_validate(cfg)?;
    if !validation.passed {
        return Ok(validation);
    }
    let results: Vec<Result<Outcome>> = SUITES.par_iter().map(|(_, f)| f(cfg)).collect();
    let mut text = String::new();
    let mut json = serde_json::Map::new();
    let mut summary = serde_json::Map::new();
    let mut passed = true;
    for ((name, _), r) in SUITES.iter().zip(results) {
        let o = r?;
        text.push_str(&o.text);
        text.push('\n');
        json.insert((*name).to_string(), o.json);
        summary.insert((*name).to_string(), Value::Bool(o.passed));
        passed &= o.passed;
    }
    text.push_str("== summary ==\n");
    for (name, _) in SUITES {
        let _ = writeln!(text, "  {name:<11} {}", verdict(summary[name] == Value::Bool(true)));
    }
    let _ = writeln!(text, "verdict: {}", verdict(passed));
    summary.insert("all_pass".into(), Value::Bool(passed));
    json.insert("config".into(), to_value(cfg));
    json.insert("summary".into(), Value::Object(summary));
    Ok(Outcome {
        passed,
        text,
        json: Value::Object(json),
    })
}

pub fn dispatch(command: Command, cfg: &RunConfig) -> Result<Outcome> {
    match command {
        Command::Validate => cmd_validate(cfg),
        Command::Hopf => cmd_hopf(cfg),
        Command::Hkr => cmd_hkr(cfg),
        Command::Cohomology => cmd_cohomology(cfg),
        Command::Atiyah => cmd_atiyah(cfg),
        Command::Freelie => cmd_freelie(cfg),
        Command::Report => cmd_report(cfg),
    }
}

/// Exit status for an error: 2 for input and usage problems, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) | Error::Json(_) | Error::Format(_) | Error::BadRational(_) | Error::InvalidTruncation(_) => 2,
        _ => 1,
    }
}

pub fn render(o: &Outcome, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => o.text.clone(),
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&o.json).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}

/// Parses `args`, runs the command and writes its report; returns the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, &cli.config) {
        Ok(o) => {
            let _ = out.write_all(render(&o, cli.config.output_format).as_bytes());
            i32::from(!o.passed)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corpus_file(name: &str) -> String {
        format!("{}/corpus/{name}.json", env!("CARGO_MANIFEST_DIR"))
    }

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(
            std::iter::once("liehopf").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn validate_exit_codes() {
        let (code, out, _) = run_str(&["validate", "--pair", &corpus_file("sl2_borel")]);
        assert_eq!(code, 0);
        assert!(out.contains("valid Lie pair"));
        let (code, out, _) = run_str(&["validate", "--pair", &corpus_file("jacobi_broken")]);
        assert_eq!(code, 1);
        assert!(
            out.contains("Jacobi identity fails on triple (0, 1, 2) = (x1, x2, x3)"),
            "{out}"
        );
        let (code, _, err) = run_str(&["validate", "--pair", "/nonexistent/pair.json"]);
        assert_eq!(code, 2);
        assert!(err.contains("error"));
        assert_eq!(run_str(&["validate"]).0, 2);
        assert_eq!(run_str(&["frobnicate"]).0, 2);
        assert_eq!(
            run_str(&["hopf", "--pair", &corpus_file("sl2_borel"), "--max-degree", "0"]).0,
            2
        );
        assert_eq!(run_str(&["--help"]).0, 0);
    }

    #[test]
    fn json_validate_names_triple() {
        let (code, out, _) = run_str(&["validate", "--format", "json", "--pair", &corpus_file("jacobi_broken")]);
        assert_eq!(code, 1);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["valid"], false);
        assert_eq!(v["violations"][0]["kind"], "jacobi");
        assert_eq!(v["violations"][0]["triple"], json!([0, 1, 2]));
    }

    #[test]
    fn cohomology_borel() {
        let mut cfg = RunConfig::new(corpus_file("sl2_borel"));
        cfg.max_weight = 4;
        let o = cmd_cohomology(&cfg).unwrap();
        assert!(o.passed);
        let dims: Vec<u64> = o.json["table"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["dim"].as_u64().unwrap())
            .collect();
        assert_eq!(dims, vec![1, 1, 0, 0]);
    }

    #[test]
    fn atiyah_classes() {
        let o = cmd_atiyah(&RunConfig::new(corpus_file("abelian2_sub1"))).unwrap();
        assert_eq!(o.json["class_nonzero"], false);
        let o = cmd_atiyah(&RunConfig::new(corpus_file("sl2_borel"))).unwrap();
        assert!(o.passed);
        assert_eq!(o.json["class_nonzero"], true);
    }

    #[test]
    fn hopf_conventions() {
        for (conv, selected) in [("standard", "standard"), ("paper", "paper"), ("auto", "standard")] {
            let (code, out, _) = run_str(&[
                "hopf",
                "--pair",
                &corpus_file("sl2_borel"),
                "--max-weight",
                "2",
                "--max-degree",
                "2",
                "--antipode",
                conv,
                "--format",
                "json",
            ]);
            assert_eq!(code, 0, "{conv}");
            let v: Value = serde_json::from_str(&out).unwrap();
            assert_eq!(v["selected_convention"], selected);
        }
    }
}
