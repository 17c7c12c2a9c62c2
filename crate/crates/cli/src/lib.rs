//! Batch front end: reads hypergraph JSON files, runs sweeps and
//! verification suites, and writes CSV and JSON reports.
//!
//! Every command returns an [`Outcome`] holding the text printed to stdout,
//! the report files to write and whether all checks passed. Reports contain
//! no timestamps or paths, so repeated runs produce identical bytes.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use coverreg::checks::{CheckLog, Verdict};
use coverreg::cohomology::{
    ai_patterns_all, ai_table, fit_linear, verify_theorems, AiTable, CohomologyError, HomologyCache, TheoremReport,
    DEFAULT_SCAN_BUDGET,
};
use coverreg::hypergraph::{is_totally_unimodular, TuVerdict, TuWitness, DEFAULT_TU_CAP};
use coverreg::monomial::{cover_ideal, krull_dim_quotient, symbolic_power_cover};
use coverreg::polytopes::{default_dual_pair, delta_sequence, dual_fit, DeltaSequence, DualFit, EdgePattern};
use coverreg::{Field, Hypergraph, Method, MonomialIdeal};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "coverreg", version, about = "a_i-invariants and regularity of powers of cover ideals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Test the incidence matrix for total unimodularity.
    CheckTu(CommonArgs),
    /// List the minimal generators of the cover ideal.
    CoverIdeal(CommonArgs),
    /// Tabulate a_p(R/J^s) for s = 1..=s-max.
    AiTable(CommonArgs),
    /// Tabulate reg J^s for s = 1..=s-max and fit it.
    RegTable(CommonArgs),
    /// Sweep delta(P_t) for one edge pattern.
    DeltaTable(DeltaArgs),
    /// Run every check: theorems, method agreement, symbolic powers, polytopes.
    Verify(CommonArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodChoice {
    Oracle,
    Patterns,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Hypergraph JSON files, or directories of them.
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    #[arg(long, default_value_t = 6)]
    pub s_max: u32,
    #[arg(long, default_value_t = 12)]
    pub t_max: u32,
    /// `q` for the rationals, `fp:<p>` for a prime field.
    #[arg(long, default_value = "q", value_parser = parse_field)]
    pub field: Field,
    #[arg(long, value_enum)]
    pub method: Option<MethodChoice>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "csv,json")]
    pub format: Vec<Format>,
    /// Largest row or column count accepted by the unimodularity check.
    #[arg(long, default_value_t = DEFAULT_TU_CAP)]
    pub tu_cap: usize,
    /// Largest number of degrees the oracle may scan per power.
    #[arg(long, default_value_t = DEFAULT_SCAN_BUDGET)]
    pub scan_budget: u64,
}

#[derive(Debug, Clone, Args)]
pub struct DeltaArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// 0-based indices of the lower edges; the rest are upper.
    #[arg(long, value_delimiter = ',', required = true)]
    pub lower: Vec<usize>,
    /// Assert `P_n != ∅`, as for patterns that carry cohomology.
    #[arg(long)]
    pub realized: bool,
}

pub fn parse_field(s: &str) -> Result<Field, String> {
    match s {
        "q" | "Q" => Ok(Field::Rationals),
        _ => {
            let p = s
                .strip_prefix("fp:")
                .ok_or_else(|| format!("expected `q` or `fp:<prime>`, got `{s}`"))?;
            let p: u64 = p.parse().map_err(|_| format!("`{p}` is not an integer"))?;
            Field::prime(p).map_err(|e| e.to_string())
        }
    }
}

/// Usage or input problem; maps to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError(pub String);

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CliError {}

impl From<CohomologyError> for CliError {
    fn from(e: CohomologyError) -> Self {
        CliError(e.to_string())
    }
}

fn err(e: impl std::fmt::Display) -> CliError {
    CliError(e.to_string())
}

/// Result of a command before anything is written.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub stdout: String,
    /// `(file name, contents)` to be placed in the output directory.
    pub files: Vec<(String, String)>,
    pub passed: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            EXIT_PASS
        } else {
            EXIT_CHECK_FAILED
        }
    }
}

/// An input file after parsing; `id` is the file stem.
#[derive(Debug, Clone)]
pub struct Input {
    pub id: String,
    pub hypergraph: Hypergraph,
}

/// Expands directories to their `.json` entries (sorted) and parses every file.
pub fn load_inputs(paths: &[PathBuf]) -> Result<Vec<Input>, CliError> {
    let mut files = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut entries: Vec<PathBuf> = fs::read_dir(p)
                .map_err(|e| CliError(format!("{}: {e}", p.display())))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|q| q.extension().is_some_and(|x| x == "json"))
                .collect();
            entries.sort();
            files.extend(entries);
        } else {
            files.push(p.clone());
        }
    }
    if files.is_empty() {
        return Err(CliError("no input files".into()));
    }
    files
        .iter()
        .map(|f| {
            let text = fs::read_to_string(f).map_err(|e| CliError(format!("{}: {e}", f.display())))?;
            let hypergraph = Hypergraph::from_json_str(&text).map_err(|e| CliError(format!("{}: {e}", f.display())))?;
            let id = f.file_stem().map_or_else(|| f.display().to_string(), |s| s.to_string_lossy().into_owned());
            Ok(Input { id, hypergraph })
        })
        .collect()
}

fn tu_verdict(h: &Hypergraph, cap: usize) -> Result<TuVerdict, CliError> {
    is_totally_unimodular(&h.incidence_matrix(), cap).map_err(err)
}

fn require_tu(input: &Input, cap: usize) -> Result<(), CliError> {
    match tu_verdict(&input.hypergraph, cap)? {
        TuVerdict::TotallyUnimodular if input.hypergraph.is_simple() => Ok(()),
        TuVerdict::TotallyUnimodular => Err(CliError(format!("{}: hypergraph is not simple", input.id))),
        TuVerdict::Violated(w) => Err(CliError(format!(
            "{}: not totally unimodular (minor rows {:?} cols {:?} has determinant {})",
            input.id, w.rows, w.cols, w.det
        ))),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn wants(args: &CommonArgs, f: Format) -> bool {
    args.format.contains(&f)
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::CheckTu(a) => cmd_check_tu(a),
        Command::CoverIdeal(a) => cmd_cover_ideal(a),
        Command::AiTable(a) => cmd_ai_table(a),
        Command::RegTable(a) => cmd_reg_table(a),
        Command::DeltaTable(a) => cmd_delta_table(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

/// Writes every report file into `dir`, each through a temporary file and a rename.
pub fn write_outputs(dir: &Path, files: &[(String, String)]) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError(format!("{}: {e}", dir.display())))?;
    for (name, contents) in files {
        let target = dir.join(name);
        let tmp = dir.join(format!(".{name}.tmp"));
        let mut f = fs::File::create(&tmp).map_err(|e| CliError(format!("{}: {e}", tmp.display())))?;
        f.write_all(contents.as_bytes())
            .and_then(|_| f.sync_all())
            .map_err(|e| CliError(format!("{}: {e}", tmp.display())))?;
        fs::rename(&tmp, &target).map_err(|e| CliError(format!("{}: {e}", target.display())))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct TuReport<'a> {
    hypergraph: &'a str,
    totally_unimodular: bool,
    witness: Option<&'a TuWitness>,
}

pub fn cmd_check_tu(args: &CommonArgs) -> Result<Outcome, CliError> {
    let inputs = load_inputs(&args.inputs)?;
    let mut out = Outcome { passed: true, ..Default::default() };
    let mut csv = String::from("hypergraph,totally_unimodular,witness_rows,witness_cols,det\n");
    let mut reports = Vec::new();
    let verdicts: Vec<TuVerdict> = inputs.iter().map(|i| tu_verdict(&i.hypergraph, args.tu_cap)).collect::<Result<_, _>>()?;
    for (input, verdict) in inputs.iter().zip(&verdicts) {
        let ok = verdict.is_unimodular();
        out.passed &= ok;
        let _ = writeln!(out.stdout, "{}: totally unimodular: {ok}", input.id);
        match verdict.witness() {
            Some(w) => {
                let _ = writeln!(out.stdout, "  witness rows {:?} cols {:?} det {}", w.rows, w.cols, w.det);
                let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
                let _ = writeln!(csv, "{},false,{},{},{}", input.id, join(&w.rows), join(&w.cols), w.det);
            }
            None => {
                let _ = writeln!(csv, "{},true,,,", input.id);
            }
        }
        reports.push(TuReport { hypergraph: &input.id, totally_unimodular: ok, witness: verdict.witness() });
    }
    if wants(args, Format::Json) {
        out.files.push(("check-tu.json".into(), to_json(&reports)));
    }
    if wants(args, Format::Csv) {
        out.files.push(("check-tu.csv".into(), csv));
    }
    Ok(out)
}

#[derive(Serialize)]
struct CoverReport {
    hypergraph: String,
    n: usize,
    ideal: String,
    generators: Vec<Vec<u32>>,
    max_generator_degree: u32,
    dim_quotient: usize,
}

fn cover_report(input: &Input) -> Result<CoverReport, CliError> {
    let j = cover_ideal(&input.hypergraph).map_err(err)?;
    Ok(CoverReport {
        hypergraph: input.id.clone(),
        n: j.n(),
        ideal: j.to_string(),
        generators: j.gens().iter().map(|g| g.exponents().to_vec()).collect(),
        max_generator_degree: j.max_gen_degree().map_err(err)?,
        dim_quotient: krull_dim_quotient(&input.hypergraph).map_err(err)?,
    })
}

pub fn cmd_cover_ideal(args: &CommonArgs) -> Result<Outcome, CliError> {
    let inputs = load_inputs(&args.inputs)?;
    let mut out = Outcome { passed: true, ..Default::default() };
    let reports: Vec<CoverReport> = inputs.iter().map(cover_report).collect::<Result<_, _>>()?;
    let mut csv = String::from("hypergraph,generator\n");
    for r in &reports {
        let _ = writeln!(out.stdout, "{}: J = {}", r.hypergraph, r.ideal);
        for g in &r.generators {
            let exps: Vec<String> = g.iter().map(|e| e.to_string()).collect();
            let _ = writeln!(csv, "{},{}", r.hypergraph, exps.join(" "));
        }
    }
    if wants(args, Format::Json) {
        out.files.push(("cover-ideal.json".into(), to_json(&reports)));
    }
    if wants(args, Format::Csv) {
        out.files.push(("cover-ideal.csv".into(), csv));
    }
    Ok(out)
}

const TABLE_HEADER: &str = "hypergraph,p,s,value,method,field\n";

fn methods(choice: MethodChoice) -> Vec<Method> {
    match choice {
        MethodChoice::Oracle => vec![Method::Oracle],
        MethodChoice::Patterns => vec![Method::Patterns],
        MethodChoice::Both => vec![Method::Oracle, Method::Patterns],
    }
}

/// Tables for every requested method; with both, a list of disagreements.
fn tables(input: &Input, args: &CommonArgs, choice: MethodChoice) -> Result<(Vec<AiTable>, Vec<String>), CliError> {
    require_tu(input, args.tu_cap)?;
    let powers: Vec<u32> = (1..=args.s_max).collect();
    let tables: Vec<AiTable> = methods(choice)
        .into_iter()
        .map(|m| ai_table(&input.hypergraph, &input.id, &powers, args.field, m, args.scan_budget))
        .collect::<Result<_, _>>()?;
    let mut diffs = Vec::new();
    if let [a, b] = tables.as_slice() {
        for (i, &s) in a.powers.iter().enumerate() {
            for p in 0..=a.dim {
                if a.rows[i][p] != b.rows[i][p] {
                    diffs.push(format!(
                        "{}: p={p} s={s} {}={} {}={}",
                        input.id, a.method, a.rows[i][p], b.method, b.rows[i][p]
                    ));
                }
            }
        }
    }
    Ok((tables, diffs))
}

fn table_csv(csv: &mut String, t: &AiTable) {
    for (i, &s) in t.powers.iter().enumerate() {
        for p in 0..=t.dim {
            let _ = writeln!(csv, "{},{p},{s},{},{},{}", t.hypergraph, t.rows[i][p], t.method, t.field.tag());
        }
    }
}

fn table_runs(args: &CommonArgs, default: MethodChoice) -> Result<Vec<(Input, Vec<AiTable>, Vec<String>)>, CliError> {
    let inputs = load_inputs(&args.inputs)?;
    let choice = args.method.unwrap_or(default);
    inputs
        .into_par_iter()
        .map(|input| tables(&input, args, choice).map(|(t, d)| (input, t, d)))
        .collect()
}

pub fn cmd_ai_table(args: &CommonArgs) -> Result<Outcome, CliError> {
    let runs = table_runs(args, MethodChoice::Patterns)?;
    let mut out = Outcome { passed: true, ..Default::default() };
    let mut csv = String::from(TABLE_HEADER);
    let mut all = Vec::new();
    for (input, tabs, diffs) in &runs {
        for t in tabs {
            let _ = writeln!(out.stdout, "{} [{}]", input.id, t.method);
            for (i, &s) in t.powers.iter().enumerate() {
                let row: Vec<String> = t.rows[i].iter().map(|a| a.to_string()).collect();
                let _ = writeln!(out.stdout, "  s={s}: {}", row.join(" "));
            }
            table_csv(&mut csv, t);
            all.push(t.clone());
        }
        report_diffs(&mut out, diffs);
    }
    if wants(args, Format::Json) {
        out.files.push(("ai-table.json".into(), to_json(&all)));
    }
    if wants(args, Format::Csv) {
        out.files.push(("ai-table.csv".into(), csv));
    }
    Ok(out)
}

fn report_diffs(out: &mut Outcome, diffs: &[String]) {
    if !diffs.is_empty() {
        out.passed = false;
        let _ = writeln!(out.stdout, "methods disagree:");
        for d in diffs {
            let _ = writeln!(out.stdout, "  {d}");
        }
    }
}

/// `reg J^s = d s + e` from `onset` on.
#[derive(Debug, Clone, Serialize)]
struct RegFit {
    d: i64,
    e: i64,
    onset: u32,
}

#[derive(Serialize)]
struct RegReport {
    hypergraph: String,
    method: Method,
    field: String,
    d_j: u32,
    regularity: Vec<(u32, i64)>,
    fit: Option<RegFit>,
    fit_failure: Option<String>,
}

pub fn cmd_reg_table(args: &CommonArgs) -> Result<Outcome, CliError> {
    let runs = table_runs(args, MethodChoice::Patterns)?;
    let mut out = Outcome { passed: true, ..Default::default() };
    let mut csv = String::from(TABLE_HEADER);
    let mut reports = Vec::new();
    for (input, tabs, diffs) in &runs {
        let d_j = cover_ideal(&input.hypergraph).map_err(err)?.max_gen_degree().map_err(err)?;
        for t in tabs {
            let reg = t.regularity()?;
            let map = reg.iter().copied().collect();
            let (fit, fit_failure) = match fit_linear(&map, Some(i64::from(d_j))) {
                Ok(f) => (Some(RegFit { d: f.d, e: f.intercept(), onset: f.onset }), None),
                Err(f) => {
                    out.passed = false;
                    (None, Some(f.reason))
                }
            };
            let values: Vec<String> = reg.iter().map(|(_, r)| r.to_string()).collect();
            let _ = writeln!(out.stdout, "{} [{}]: reg = {}", input.id, t.method, values.join(" "));
            match (&fit, &fit_failure) {
                (Some(f), _) => {
                    let _ = writeln!(out.stdout, "  fit: d={} e={} onset={}", f.d, f.e, f.onset);
                }
                (_, Some(reason)) => {
                    let _ = writeln!(out.stdout, "  fit failed: {reason}");
                }
                _ => {}
            }
            for (s, r) in &reg {
                let _ = writeln!(csv, "{},reg,{s},{r},{},{}", input.id, t.method, t.field.tag());
            }
            reports.push(RegReport {
                hypergraph: input.id.clone(),
                method: t.method,
                field: t.field.tag(),
                d_j,
                regularity: reg,
                fit,
                fit_failure,
            });
        }
        report_diffs(&mut out, diffs);
    }
    if wants(args, Format::Json) {
        out.files.push(("reg-table.json".into(), to_json(&reports)));
    }
    if wants(args, Format::Csv) {
        out.files.push(("reg-table.csv".into(), csv));
    }
    Ok(out)
}

#[derive(Serialize)]
struct DeltaReport {
    hypergraph: String,
    pattern: EdgePattern,
    sequence: DeltaSequence,
    dual_fit: Option<DualFit>,
}

pub fn cmd_delta_table(args: &DeltaArgs) -> Result<Outcome, CliError> {
    let common = &args.common;
    let inputs = load_inputs(&common.inputs)?;
    let mut out = Outcome { passed: true, ..Default::default() };
    let mut csv = String::from("hypergraph,t,delta,defect\n");
    let mut reports = Vec::new();
    for input in inputs {
        let unimodular = tu_verdict(&input.hypergraph, common.tu_cap)?.is_unimodular();
        let pattern = EdgePattern::new(input.hypergraph.clone(), &args.lower)
            .map_err(|e| CliError(format!("{}: {e}", input.id)))?
            .with_unimodular_base(unimodular);
        let seq = delta_sequence(&pattern, 1..=common.t_max, args.realized).map_err(err)?;
        let dual = match (seq.d, seq.stabilization) {
            (Some(d), Some(st)) => Some(dual_fit(&pattern, default_dual_pair(st.onset), Some((d, st.e))).map_err(err)?),
            _ => None,
        };
        out.passed &= seq.checks.passed() && dual.as_ref().is_none_or(|f| f.checks.passed());
        let _ = writeln!(out.stdout, "{} lower={:?} upper={:?}", input.id, pattern.lower(), pattern.upper());
        for (i, v) in seq.values.iter().enumerate() {
            let t = seq.t_start + i as u32;
            let shown = v.value().map_or_else(|| "empty".to_string(), |x| x.to_string());
            let defect = seq.defects[i].map_or_else(String::new, |e| e.to_string());
            let _ = writeln!(out.stdout, "  t={t}: delta={shown} e_t={defect}");
            let _ = writeln!(csv, "{},{t},{shown},{defect}", input.id);
        }
        if let (Some(d), Some(st)) = (seq.d, seq.stabilization) {
            let _ = writeln!(out.stdout, "  d={d} e={} onset={}", st.e, st.onset);
        }
        if let Some(f) = &dual {
            let _ = writeln!(out.stdout, "  dual: a={} b={}", f.a, f.b);
        }
        write_failures(&mut out.stdout, &seq.checks);
        reports.push(DeltaReport { hypergraph: input.id, pattern, sequence: seq, dual_fit: dual });
    }
    if wants(common, Format::Json) {
        out.files.push(("delta-table.json".into(), to_json(&reports)));
    }
    if wants(common, Format::Csv) {
        out.files.push(("delta-table.csv".into(), csv));
    }
    Ok(out)
}

fn write_failures(stdout: &mut String, log: &CheckLog) {
    for c in &log.counterexamples {
        let _ = writeln!(
            stdout,
            "  FAIL {} ({}): expected {}, got {}",
            c.check, c.hypergraph, c.expected, c.got
        );
    }
}

#[derive(Serialize)]
struct PatternCheck {
    removed: Vec<usize>,
    pattern: EdgePattern,
    sequence: DeltaSequence,
    dual_fit: DualFit,
}

#[derive(Serialize)]
struct SymbolicCheck {
    s: u32,
    equal: bool,
}

/// Per-hypergraph verification report.
#[derive(Serialize)]
pub struct VerifyReport {
    hypergraph: String,
    field: String,
    method: MethodChoice,
    totally_unimodular: bool,
    witness: Option<TuWitness>,
    cover_ideal: String,
    d_j: u32,
    dim_quotient: usize,
    symbolic_powers: Vec<SymbolicCheck>,
    theorems: Option<TheoremReport>,
    method_diffs: Vec<String>,
    patterns: Vec<PatternCheck>,
    checks: CheckLog,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.passed()
    }
}

fn verify_one(input: &Input, args: &CommonArgs) -> Result<VerifyReport, CliError> {
    let h = &input.hypergraph;
    let id = input.id.as_str();
    let choice = args.method.unwrap_or(MethodChoice::Both);
    let verdict = tu_verdict(h, args.tu_cap)?;
    let tu = verdict.is_unimodular() && h.is_simple();
    let j = cover_ideal(h).map_err(err)?;
    let mut checks = CheckLog::default();

    let sym_max = args.s_max.min(3);
    let mut symbolic_powers = Vec::new();
    for s in 1..=sym_max {
        let ordinary: MonomialIdeal = j.power(s).map_err(err)?;
        let symbolic = symbolic_power_cover(h, s).map_err(err)?;
        let equal = ordinary.contains_ideal(&symbolic) && symbolic.contains_ideal(&ordinary);
        if tu {
            checks.expect(equal, &format!("symbolic-equals-ordinary-s{s}"), id, None, Some(s), "equal", "strictly larger");
        }
        symbolic_powers.push(SymbolicCheck { s, equal });
    }

    let (theorems, method_diffs, patterns) = if tu {
        let primary = if choice == MethodChoice::Oracle { Method::Oracle } else { Method::Patterns };
        let report = verify_theorems(h, id, args.s_max, args.field, primary, args.scan_budget)?;
        checks.merge(report.checks.clone());
        let diffs = if choice == MethodChoice::Both {
            let (_, diffs) = tables(input, args, MethodChoice::Both)?;
            checks.expect(diffs.is_empty(), "methods-agree", id, None, None, "identical tables", diffs.join("; "));
            diffs
        } else {
            Vec::new()
        };
        let patterns = pattern_checks(h, args, &mut checks)?;
        (Some(report), diffs, patterns)
    } else {
        let reason = "input is not totally unimodular";
        for name in ["theorems", "methods-agree", "patterns", "symbolic-equals-ordinary"] {
            checks.skip(name, reason);
        }
        (None, Vec::new(), Vec::new())
    };

    Ok(VerifyReport {
        hypergraph: id.to_string(),
        field: args.field.tag(),
        method: choice,
        totally_unimodular: tu,
        witness: verdict.witness().cloned(),
        cover_ideal: j.to_string(),
        d_j: j.max_gen_degree().map_err(err)?,
        dim_quotient: krull_dim_quotient(h).map_err(err)?,
        symbolic_powers,
        theorems,
        method_diffs,
        patterns,
        checks,
    })
}

/// Delta sequences and dual fits for every distinct realized pattern up to `s_max`.
fn pattern_checks(h: &Hypergraph, args: &CommonArgs, checks: &mut CheckLog) -> Result<Vec<PatternCheck>, CliError> {
    let cache = HomologyCache::new();
    let mut seen: Vec<(Vec<usize>, EdgePattern)> = Vec::new();
    for s in 1..=args.s_max {
        for r in ai_patterns_all(h, s, args.field, &cache)?.realized {
            if !seen.iter().any(|(g, p)| *g == r.removed && p == &r.pattern) {
                seen.push((r.removed, r.pattern));
            }
        }
    }
    seen.sort_by(|a, b| (&a.0, a.1.lower()).cmp(&(&b.0, b.1.lower())));
    let mut out = Vec::new();
    for (removed, pattern) in seen {
        let t_end = args.t_max.max(pattern.stabilization_threshold() + 2);
        let sequence = delta_sequence(&pattern, 1..=t_end, true).map_err(err)?;
        let (Some(d), Some(st)) = (sequence.d, sequence.stabilization) else {
            checks.skip("pattern-fit", format!("pattern {removed:?}/{:?} did not stabilize", pattern.lower()));
            continue;
        };
        let fit = dual_fit(&pattern, default_dual_pair(st.onset), Some((d, st.e))).map_err(err)?;
        checks.merge(prefixed(&sequence.checks, "pattern"));
        checks.merge(prefixed(&fit.checks, "pattern"));
        out.push(PatternCheck { removed, pattern, sequence, dual_fit: fit });
    }
    Ok(out)
}

fn prefixed(log: &CheckLog, prefix: &str) -> CheckLog {
    let mut log = log.clone();
    for c in &mut log.checks {
        c.name = format!("{prefix}-{}", c.name);
    }
    for c in &mut log.counterexamples {
        c.check = format!("{prefix}-{}", c.check);
    }
    log
}

pub fn cmd_verify(args: &CommonArgs) -> Result<Outcome, CliError> {
    let inputs = load_inputs(&args.inputs)?;
    let reports: Vec<VerifyReport> = inputs
        .par_iter()
        .map(|i| verify_one(i, args))
        .collect::<Result<_, _>>()?;
    let mut out = Outcome { passed: true, ..Default::default() };
    let mut csv = String::from("hypergraph,check,status,reason\n");
    for r in &reports {
        out.passed &= r.passed();
        let total = r.checks.checks.len();
        let failed = r.checks.checks.iter().filter(|c| c.verdict == Verdict::Fail).count();
        let skipped = r.checks.checks.iter().filter(|c| matches!(c.verdict, Verdict::Skipped(_))).count();
        let status = if r.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out.stdout,
            "{status} {}: TU={} checks={total} failed={failed} skipped={skipped}",
            r.hypergraph, r.totally_unimodular
        );
        if let Some(fit) = r.theorems.as_ref().and_then(|t| t.regularity_fit) {
            let _ = writeln!(out.stdout, "  reg J^s = {}s + {} from s={}", fit.d, fit.intercept(), fit.onset);
        }
        write_failures(&mut out.stdout, &r.checks);
        for c in &r.checks.checks {
            let (st, reason) = match &c.verdict {
                Verdict::Pass => ("pass", String::new()),
                Verdict::Fail => ("fail", String::new()),
                Verdict::Skipped(why) => ("skipped", why.replace(',', ";")),
            };
            let _ = writeln!(csv, "{},{},{st},{reason}", r.hypergraph, c.name);
        }
    }
    if wants(args, Format::Json) {
        out.files.push(("verify.json".into(), to_json(&reports)));
    }
    if wants(args, Format::Csv) {
        out.files.push(("verify.csv".into(), csv));
    }
    Ok(out)
}

/// Parses `argv`, runs the command, writes outputs and returns the exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let out_dir = match &cli.command {
        Command::DeltaTable(a) => a.common.out.clone(),
        Command::CheckTu(a)
        | Command::CoverIdeal(a)
        | Command::AiTable(a)
        | Command::RegTable(a)
        | Command::Verify(a) => a.out.clone(),
    };
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    print!("{}", outcome.stdout);
    if let Some(dir) = out_dir {
        if let Err(e) = write_outputs(&dir, &outcome.files) {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    }
    outcome.exit_code()
}
