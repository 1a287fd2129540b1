//! Command-line front end: `cosets`, `construct` and `table`.

use std::fmt::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bch::{
    construct, reproduce_table_with, table_certify_options, CertifyOptions, ConstructionError, ConstructionRequest,
    ConstructionResult, DistanceReport, RowStatus, TableReport, Theorem,
};
use crate::codes::DEFAULT_BUDGET;
use crate::cosets::CosetTable;
use crate::enlarge::A0Style;

pub const SCHEMA_VERSION: &str = "1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_CERTIFICATION: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "eaqecc", version, about = "Entanglement-assisted quantum codes from BCH codes")]
pub struct Cli {
    /// Directory for cached field log tables (safe to delete)
    #[arg(long, global = true, env = "EAQ_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Include wall-clock timing in the output (makes output nondeterministic)
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Style {
    Standard,
    Eta,
}

impl From<Style> for A0Style {
    fn from(s: Style) -> A0Style {
        match s {
            Style::Standard => A0Style::Standard,
            Style::Eta => A0Style::Eta,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cyclotomic cosets of p^s modulo p^m - 1
    Cosets {
        /// characteristic (prime)
        #[arg(long)]
        p: u64,
        /// code length is p^m - 1
        #[arg(long)]
        m: u32,
        /// codes live over GF(p^s); s divides m
        #[arg(long)]
        s: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Parameters of one construction, optionally certified from matrices
    Construct {
        /// bch, bchcase1, corthree, corone, reciprocal, bchcase2, reciprocal2i, reciprocal2ii
        #[arg(long)]
        theorem: Theorem,
        /// characteristic (prime)
        #[arg(long)]
        p: u64,
        /// code length is p^m - 1
        #[arg(long)]
        m: u32,
        /// codes live over GF(p^s); s divides m
        #[arg(long)]
        s: u32,
        /// minimal representative a_l1 (a_l for single-coset constructions)
        #[arg(long = "a1")]
        a1: Option<u64>,
        /// minimal representative a_l2
        #[arg(long = "a2")]
        a2: Option<u64>,
        /// A_0 choice for bchcase2 and the reciprocal2 variants: standard
        /// maximises rank(A_0 - A_0^T), eta takes t_l - 2
        #[arg(long, value_enum, default_value_t = Style::Standard)]
        style: Style,
        /// Build the matrices and re-derive every parameter
        #[arg(long)]
        certify: bool,
        /// Largest number of codewords a distance enumeration may visit
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Exit 3 instead of reporting a bound when the exact distance is over budget
        #[arg(long)]
        require_exact: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Recompute one of the reference tables
    Table {
        /// 1: binary, 2: quaternary, 3: GF(9)
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        id: u8,
        /// Also rebuild the small rows from generator matrices
        #[arg(long)]
        certify_small: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

/// What a run printed and how it should exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Outcome {
        Outcome { code, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: String) -> Outcome {
        Outcome { code, stdout: String::new(), stderr }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsRecord {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub d_lower: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_exact: Option<u64>,
    pub c: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificationRecord {
    pub performed: bool,
    pub checks_passed: Vec<String>,
    #[serde(default)]
    pub checks_failed: Vec<String>,
    /// `exact`, `bound_only` or `not_requested`
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance: Option<DistanceReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a0_fallback: Option<bool>,
}

/// JSON emitted by `construct`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema_version: String,
    pub request: ConstructionRequest,
    pub params: ParamsRecord,
    pub certification: CertificationRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl OutputRecord {
    pub fn from_result(res: &ConstructionResult, timing_ms: Option<u64>) -> OutputRecord {
        let p = res.params;
        let mut cert = CertificationRecord {
            performed: false,
            checks_passed: Vec::new(),
            checks_failed: Vec::new(),
            distance: None,
            a0_fallback: None,
        };
        let mut d_exact = None;
        if let Some(c) = &res.certification {
            cert.performed = true;
            for check in &c.checks {
                let list = if check.passed { &mut cert.checks_passed } else { &mut cert.checks_failed };
                list.push(check.name.clone());
            }
            if c.params.is_none() && cert.checks_failed.is_empty() {
                cert.checks_failed.push("construction".into());
            }
            if let DistanceReport::Exact { value } = c.distance {
                d_exact = Some(value);
            }
            cert.distance = Some(c.distance.clone());
            cert.a0_fallback = c.a0_fallback;
        }
        OutputRecord {
            schema_version: SCHEMA_VERSION.into(),
            request: res.request.clone(),
            params: ParamsRecord { q: p.q, n: p.n, k: p.k, d_lower: p.d_lower, d_exact, c: p.c },
            certification: cert,
            timing_ms,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetRecord {
    pub index: usize,
    pub min_rep: u64,
    pub size: usize,
    pub symmetric: bool,
    pub reciprocal_min: u64,
    pub elements: Vec<u64>,
}

/// JSON emitted by `cosets`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetsOutput {
    pub schema_version: String,
    pub p: u64,
    pub m: u32,
    pub s: u32,
    pub n: u64,
    pub z: usize,
    pub bound_b: u64,
    pub cosets: Vec<CosetRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

/// JSON emitted by `table`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableOutput {
    pub schema_version: String,
    pub matches: usize,
    pub mismatches: usize,
    pub errata: usize,
    pub report: TableReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output types serialize");
    s.push('\n');
    s
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK { Outcome::ok(code, text) } else { Outcome::fail(code, text) };
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> Outcome {
    crate::galois::set_table_cache_dir(cli.cache_dir.clone());
    let start = Instant::now();
    let elapsed = || cli.timing.then(|| start.elapsed().as_millis() as u64);
    match &cli.command {
        Command::Cosets { p, m, s, format } => cmd_cosets(*p, *m, *s, *format, elapsed),
        Command::Construct { theorem, p, m, s, a1, a2, style, certify, budget, require_exact, format } => {
            let req =
                ConstructionRequest::new(*p, *m, *s, *theorem).reps(*a1, *a2).style((*style).into()).certify(*certify);
            let opts = CertifyOptions { budget: *budget, require_exact: *require_exact, ..CertifyOptions::default() };
            cmd_construct(&req, &opts, *format, elapsed)
        }
        Command::Table { id, certify_small, format } => cmd_table(*id, *certify_small, *format, elapsed),
    }
}

fn cmd_cosets(p: u64, m: u32, s: u32, format: Format, elapsed: impl Fn() -> Option<u64>) -> Outcome {
    let table = match CosetTable::new(p, m, s) {
        Ok(t) => t,
        Err(e) => return Outcome::fail(EXIT_INVALID, format!("error: {e}\n")),
    };
    let cosets: Vec<CosetRecord> = table
        .cosets()
        .iter()
        .enumerate()
        .map(|(index, c)| CosetRecord {
            index,
            min_rep: c.min_rep,
            size: c.size(),
            symmetric: c.symmetric,
            reciprocal_min: c.reciprocal_min,
            elements: c.elements.clone(),
        })
        .collect();
    let out = CosetsOutput {
        schema_version: SCHEMA_VERSION.into(),
        p,
        m,
        s,
        n: table.n(),
        z: table.z(),
        bound_b: table.bound_b(),
        cosets,
        timing_ms: elapsed(),
    };
    let text = match format {
        Format::Json => to_json(&out),
        Format::Csv => {
            let mut t = String::from("index,min_rep,size,symmetric,reciprocal_min\n");
            for c in &out.cosets {
                let _ = writeln!(t, "{},{},{},{},{}", c.index, c.min_rep, c.size, c.symmetric, c.reciprocal_min);
            }
            t
        }
        Format::Md => {
            let mut t = format!("n = {}, B(p,m,s) = {}, z = {}\n\n", out.n, out.bound_b, out.z);
            t.push_str("| index | a | size | symmetric | reciprocal |\n|---|---|---|---|---|\n");
            for c in &out.cosets {
                let _ = writeln!(
                    t,
                    "| {} | {} | {} | {} | {} |",
                    c.index, c.min_rep, c.size, c.symmetric, c.reciprocal_min
                );
            }
            t
        }
    };
    Outcome::ok(EXIT_OK, text)
}

fn cmd_construct(
    req: &ConstructionRequest,
    opts: &CertifyOptions,
    format: Format,
    elapsed: impl Fn() -> Option<u64>,
) -> Outcome {
    let res = match construct(req, opts) {
        Ok(r) => r,
        Err(ConstructionError::InvalidRequest(msg)) => {
            return Outcome::fail(EXIT_INVALID, format!("error: invalid request: {msg}\n"))
        }
        Err(e @ ConstructionError::BudgetExceeded(_)) => return Outcome::fail(EXIT_BUDGET, format!("error: {e}\n")),
        Err(ConstructionError::Library(e)) => {
            return Outcome::fail(EXIT_CERTIFICATION, format!("error: construction failed: {e}\n"))
        }
    };
    let record = OutputRecord::from_result(&res, elapsed());
    let code = if res.certified_ok() { EXIT_OK } else { EXIT_CERTIFICATION };
    let text = match format {
        Format::Json => to_json(&record),
        Format::Csv => {
            let mut t = String::from("theorem,p,m,s,a_l1,a_l2,style,q,n,k,d_lower,d_exact,c,certified\n");
            let r = &record.request;
            let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
            let certified = match (record.certification.performed, code) {
                (false, _) => "",
                (true, EXIT_OK) => "pass",
                _ => "fail",
            };
            let p = &record.params;
            let _ = writeln!(
                t,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{certified}",
                r.theorem,
                r.p,
                r.m,
                r.s,
                opt(r.a_l1),
                opt(r.a_l2),
                style_name(r.a0_style),
                p.q,
                p.n,
                p.k,
                p.d_lower,
                opt(p.d_exact),
                p.c
            );
            t
        }
        Format::Md => {
            let p = &record.params;
            let mut t = format!("[[{}, {}, ≥{}; {}]]_{}", p.n, p.k, p.d_lower, p.c, p.q);
            if let Some(d) = p.d_exact {
                let _ = write!(t, " (exact d = {d})");
            }
            t.push('\n');
            if record.certification.performed {
                t.push_str("\n| check | result |\n|---|---|\n");
                if let Some(c) = &res.certification {
                    for check in &c.checks {
                        let mark = if check.passed { "pass" } else { "FAIL" };
                        let _ = writeln!(t, "| {} | {mark}: {} |", check.name, check.detail);
                    }
                }
            }
            t
        }
    };
    Outcome::ok(code, text)
}

fn style_name(s: A0Style) -> &'static str {
    match s {
        A0Style::Standard => "standard",
        A0Style::Eta => "eta",
    }
}

fn cmd_table(id: u8, certify_small: bool, format: Format, elapsed: impl Fn() -> Option<u64>) -> Outcome {
    let Some(report) = reproduce_table_with(id, certify_small, &table_certify_options()) else {
        return Outcome::fail(EXIT_INVALID, format!("error: unknown table {id}\n"));
    };
    let code = if report.ok() { EXIT_OK } else { EXIT_CERTIFICATION };
    let text = match format {
        Format::Json => to_json(&TableOutput {
            schema_version: SCHEMA_VERSION.into(),
            matches: report.count(RowStatus::Match),
            mismatches: report.count(RowStatus::Mismatch),
            errata: report.count(RowStatus::Erratum),
            timing_ms: elapsed(),
            report,
        }),
        Format::Csv => report.to_csv(),
        Format::Md => {
            let mut t = report.to_markdown();
            for r in report.rows.iter().filter(|r| !r.note.is_empty()) {
                let _ = writeln!(t, "\nRow {}: {}", r.expected.position, r.note);
            }
            t
        }
    };
    Outcome::ok(code, text)
}
