//! Command-line front end. [`run`] takes arguments and an environment
//! lookup and returns the exit code and captured output, so the binary is a
//! thin wrapper and every subcommand can be driven from tests.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 size cap
//! refusal.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::asymptotics::{self, LimitFamily};
use crate::decimal;
use crate::genfun::SeriesFamily;
use crate::oracle::{Enumerator, OracleError, RankTally, DEFAULT_SIZE_CAP};
use crate::report::VerificationReport;
use crate::series::BigRational;
use crate::verify::{self, Suite};

pub const DEFAULT_ORDER: usize = 60;
pub const DEFAULT_TOL: &str = "1e-6";

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Bfile,
}

#[derive(Debug, Parser)]
#[command(name = "rankgen", version, about = "Exact series, tallies and limits for k-protected vertices in plane trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Coefficients of a generating function.
    Series {
        /// T, V, L, R, Tk, ER or ET.
        #[arg(long)]
        family: String,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Exhaustive rank tally over all trees of one size.
    Oracle {
        #[arg(long)]
        n: usize,
        /// Size cap for enumeration.
        #[arg(long)]
        cap: Option<usize>,
        /// Ignore the size cap.
        #[arg(long)]
        force: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Limit values and convergence of exact ratios.
    Asym {
        /// pk, rk, rankk, ER or ET.
        #[arg(long)]
        what: String,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        tol: Option<String>,
        /// Also emit exact ratios for n = 1..=N.
        #[arg(long)]
        converge: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run a verification suite: identities, oracle, paper50 or all.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Emit the report as json or csv instead of text.
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: impl Into<String>) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: stderr.into(),
        }
    }
}

/// Defaults after applying `RANKGEN_ORDER`, `RANKGEN_CAP` and `RANKGEN_TOL`.
/// Flags override these.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub order: usize,
    pub cap: usize,
    pub tol: BigRational,
}

impl Config {
    pub fn from_env(env: impl Fn(&str) -> Option<String>) -> Result<Config, String> {
        let order = match env("RANKGEN_ORDER") {
            Some(v) => v
                .trim()
                .parse()
                .map_err(|_| format!("RANKGEN_ORDER: not a nonnegative integer: {v:?}"))?,
            None => DEFAULT_ORDER,
        };
        let cap = match env("RANKGEN_CAP") {
            Some(v) => v
                .trim()
                .parse()
                .map_err(|_| format!("RANKGEN_CAP: not a nonnegative integer: {v:?}"))?,
            None => DEFAULT_SIZE_CAP,
        };
        let tol = match env("RANKGEN_TOL") {
            Some(v) => parse_tol(&v).map_err(|e| format!("RANKGEN_TOL: {e}"))?,
            None => parse_tol(DEFAULT_TOL).expect("default tolerance parses"),
        };
        Ok(Config { order, cap, tol })
    }
}

fn parse_tol(s: &str) -> Result<BigRational, String> {
    let tol = decimal::parse_rational(s).ok_or_else(|| format!("not a number: {s:?}"))?;
    if tol <= BigRational::from_integer(0.into()) {
        return Err(format!("tolerance must be positive: {s:?}"));
    }
    Ok(tol)
}

/// Machine-readable output. Exact values are decimal strings (`"42"`,
/// `"1/22"`), never floats.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OutputRecord {
    pub command: String,
    pub params: BTreeMap<String, String>,
    pub rows: Vec<Row>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub n: u64,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approx: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Row {
    fn new(n: u64, value: impl Into<String>) -> Self {
        Row {
            field: None,
            n,
            value: value.into(),
            approx: None,
            detail: None,
        }
    }

    fn field(mut self, f: impl Into<String>) -> Self {
        self.field = Some(f.into());
        self
    }

    fn approx(mut self, a: impl Into<String>) -> Self {
        self.approx = Some(a.into());
        self
    }

    fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }
}

impl OutputRecord {
    fn new(command: &str) -> Self {
        OutputRecord {
            command: command.to_string(),
            params: BTreeMap::new(),
            rows: Vec::new(),
        }
    }

    fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("record serializes");
        s.push('\n');
        s
    }

    /// `index,value,decimal_approx`, with a leading `field` column when rows
    /// carry field names.
    pub fn to_csv(&self) -> String {
        let with_field = self.rows.iter().any(|r| r.field.is_some());
        let mut out = String::new();
        if with_field {
            out.push_str("field,");
        }
        out.push_str("index,value,decimal_approx\n");
        for r in &self.rows {
            if with_field {
                let _ = write!(out, "{},", csv_escape(r.field.as_deref().unwrap_or("")));
            }
            let _ = writeln!(out, "{},{},{}", r.n, r.value, r.approx.as_deref().unwrap_or(""));
        }
        out
    }

    /// One `index value` pair per row.
    pub fn to_bfile(&self) -> String {
        self.rows
            .iter()
            .map(|r| format!("{} {}\n", r.n, r.value))
            .collect()
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn exact_string(q: &BigRational) -> String {
    q.to_string()
}

fn approx_string(q: &BigRational) -> String {
    decimal::to_significant(q, 15)
}

/// Run one invocation. `args` includes the program name.
pub fn run<I, S>(args: I, env: impl Fn(&str) -> Option<String>) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome::fail(EXIT_USAGE, text),
            };
        }
    };
    let config = match Config::from_env(env) {
        Ok(c) => c,
        Err(e) => return Outcome::fail(EXIT_USAGE, format!("error: {e}\n")),
    };
    match cli.command {
        Command::Series { family, k, order, format } => {
            cmd_series(&family, k, order.unwrap_or(config.order), format)
        }
        Command::Oracle { n, cap, force, format } => {
            let cap = if force { usize::MAX } else { cap.unwrap_or(config.cap) };
            cmd_oracle(n, cap, format)
        }
        Command::Asym { what, k, tol, converge, format } => {
            let tol = match tol {
                Some(t) => match parse_tol(&t) {
                    Ok(t) => t,
                    Err(e) => return Outcome::fail(EXIT_USAGE, format!("error: --tol: {e}\n")),
                },
                None => config.tol,
            };
            cmd_asym(&what, k, &tol, converge, format)
        }
        Command::Verify { suite, format } => cmd_verify(&suite, format),
    }
}

fn render(record: &OutputRecord, format: Format) -> String {
    match format {
        Format::Json => record.to_json(),
        Format::Csv => record.to_csv(),
        Format::Bfile => record.to_bfile(),
    }
}

pub fn cmd_series(family: &str, k: Option<u32>, order: usize, format: Format) -> Outcome {
    let family = match SeriesFamily::from_tag(family, k) {
        Ok(f) => f,
        Err(e) => return Outcome::fail(EXIT_USAGE, format!("error: {e}\n")),
    };
    let series = family.series(order);
    let mut record = OutputRecord::new("series")
        .param("family", family.tag())
        .param("order", order);
    if let Some(k) = family.k() {
        record = record.param("k", k);
    }
    // b-files are 1-indexed.
    let start = if format == Format::Bfile { 1 } else { 0 };
    for (n, c) in series.coeffs().iter().enumerate().skip(start) {
        let mut row = Row::new(n as u64, exact_string(c));
        if !c.is_integer() {
            row = row.approx(approx_string(c));
        }
        record.rows.push(row);
    }
    Outcome::ok(render(&record, format))
}

fn tally_record(t: &RankTally) -> OutputRecord {
    let mut record = OutputRecord::new("oracle").param("n", t.n);
    let n = t.n as u64;
    for (name, v) in [
        ("trees", &t.trees),
        ("leaf_total", &t.leaf_total),
        ("root_rank_sum", &t.root_rank_sum),
        ("vertex_rank_sum", &t.vertex_rank_sum),
    ] {
        record.rows.push(Row::new(n, v.to_string()).field(name));
    }
    for (name, map) in [
        ("vertex_counts", &t.vertex_counts),
        ("root_counts", &t.root_counts),
        ("rank_histogram", &t.rank_histogram),
        ("bivariate", &t.bivariate),
    ] {
        for (k, v) in map {
            record.rows.push(Row::new(*k as u64, v.to_string()).field(name));
        }
    }
    record
}

pub fn cmd_oracle(n: usize, cap: usize, format: Format) -> Outcome {
    if format == Format::Bfile {
        return Outcome::fail(EXIT_USAGE, "error: oracle output has several fields; use json or csv\n");
    }
    match Enumerator::with_cap(cap).tally(n) {
        Ok(t) => Outcome::ok(render(&tally_record(&t), format)),
        Err(e @ OracleError::SizeCapExceeded { .. }) => {
            Outcome::fail(EXIT_CAP, format!("error: {e}; pass --force or raise --cap\n"))
        }
        Err(e) => Outcome::fail(EXIT_USAGE, format!("error: {e}\n")),
    }
}

pub fn cmd_asym(what: &str, k: Option<u32>, tol: &BigRational, converge: Option<usize>, format: Format) -> Outcome {
    let family: LimitFamily = match what.parse() {
        Ok(f) => f,
        Err(e) => return Outcome::fail(EXIT_USAGE, format!("error: {e}\n")),
    };
    let k = match (family.needs_k(), k) {
        (true, None) => return Outcome::fail(EXIT_USAGE, format!("error: --what {what} needs --k\n")),
        (true, Some(0)) if family == LimitFamily::RootProtected => {
            return Outcome::fail(EXIT_USAGE, "error: rk needs k >= 1\n")
        }
        (_, k) => k.unwrap_or(0),
    };
    let limit = match family.limit(k, tol) {
        Ok(l) => l,
        Err(e) => return Outcome::fail(EXIT_USAGE, format!("error: {e}\n")),
    };
    let mut record = OutputRecord::new("asym").param("what", family.tag());
    if family.needs_k() {
        record = record.param("k", k);
    }
    let limit_row = match &limit.exact {
        Some(v) => Row::new(k as u64, exact_string(v)).approx(approx_string(v)),
        None => {
            record = record.param("tol", decimal::to_significant(tol, 6));
            let places = decimal::places_for_tolerance(tol);
            let shown = asymptotics::certified_constant_decimal(family, places)
                .unwrap_or_else(|| limit.decimal(places));
            Row::new(limit.terms as u64, shown)
                .approx(decimal::to_fixed(&limit.partial_sum, places + 6))
                .detail(format!(
                    "{} terms, tail <= {}",
                    limit.terms,
                    decimal::to_significant(&limit.tail_bound, 6)
                ))
        }
    };
    let mut rows = vec![limit_row.field("limit")];
    if let Some(n_max) = converge {
        record = record.param("converge", n_max);
        match asymptotics::convergence_report(family, k, n_max) {
            Ok(table) => rows.extend(table.iter().map(|r| {
                Row::new(r.n as u64, exact_string(&r.exact_ratio))
                    .field("ratio")
                    .approx(decimal::to_significant(&r.exact_ratio, 12))
                    .detail(format!("gap {}", decimal::to_significant(&r.abs_gap, 6)))
            })),
            Err(e) => return Outcome::fail(EXIT_USAGE, format!("error: {e}\n")),
        }
    }
    if format == Format::Bfile && converge.is_some() {
        rows.retain(|r| r.field.as_deref() == Some("ratio"));
    }
    record.rows = rows;
    Outcome::ok(render(&record, format))
}

fn report_record(suite: &str, report: &VerificationReport) -> OutputRecord {
    let mut record = OutputRecord::new("verify").param("suite", suite);
    record.rows = report
        .checks
        .iter()
        .enumerate()
        .map(|(i, c)| {
            Row::new(i as u64, if c.passed { "pass" } else { "fail" })
                .field(c.name.clone())
                .detail(c.detail.clone())
        })
        .collect();
    record
}

pub fn cmd_verify(suite: &str, format: Option<Format>) -> Outcome {
    let parsed: Suite = match suite.parse() {
        Ok(s) => s,
        Err(e) => return Outcome::fail(EXIT_USAGE, format!("error: {e}\n")),
    };
    if format == Some(Format::Bfile) {
        return Outcome::fail(EXIT_USAGE, "error: verify reports support text, json or csv\n");
    }
    let report = verify::run_suite(parsed);
    let stdout = match format {
        None => format!("{report}\n"),
        Some(f) => render(&report_record(suite, &report), f),
    };
    Outcome {
        code: if report.all_passed() { EXIT_OK } else { EXIT_MISMATCH },
        stdout,
        stderr: String::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_env(_: &str) -> Option<String> {
        None
    }

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("rankgen").chain(args.iter().copied()), no_env)
    }

    #[test]
    fn config_precedence() {
        let c = Config::from_env(no_env).unwrap();
        assert_eq!(c.order, 60);
        assert_eq!(c.cap, 15);
        assert_eq!(c.tol, decimal::parse_decimal("1e-6").unwrap());
        let env = |k: &str| match k {
            "RANKGEN_ORDER" => Some("12".to_string()),
            "RANKGEN_TOL" => Some("1e-3".to_string()),
            _ => None,
        };
        let c = Config::from_env(env).unwrap();
        assert_eq!((c.order, c.cap), (12, 15));
        assert!(Config::from_env(|_| Some("x".into())).is_err());
        assert!(Config::from_env(|k| (k == "RANKGEN_TOL").then(|| "0".into())).is_err());
    }

    #[test]
    fn env_order_applies_and_flag_wins() {
        let env = |k: &str| (k == "RANKGEN_ORDER").then(|| "3".to_string());
        let out = run(["rankgen", "series", "--family", "T", "--format", "bfile"], env);
        assert_eq!(out.stdout, "1 1\n2 1\n3 2\n");
        let out = run(
            ["rankgen", "series", "--family", "T", "--order", "4", "--format", "bfile"],
            env,
        );
        assert_eq!(out.stdout, "1 1\n2 1\n3 2\n4 5\n");
        let bad = |k: &str| (k == "RANKGEN_CAP").then(|| "many".to_string());
        assert_eq!(run(["rankgen", "oracle", "--n", "3"], bad).code, EXIT_USAGE);
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_args(&["series"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["series", "--family", "R", "--order", "5"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["series", "--family", "Z"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["asym", "--what", "pk"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["asym", "--what", "ER", "--tol", "-1"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["verify", "--suite", "nope"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["oracle", "--n", "0"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["bogus"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["--help"]).code, EXIT_OK);
    }

    #[test]
    fn csv_layout() {
        let out = run_args(&["series", "--family", "V", "--order", "3", "--format", "csv"]);
        assert_eq!(out.stdout, "index,value,decimal_approx\n0,0,\n1,1,\n2,2,\n3,6,\n");
        let out = run_args(&["oracle", "--n", "2", "--format", "csv"]);
        assert!(out.stdout.starts_with("field,index,value,decimal_approx\ntrees,2,1,\n"));
    }

    #[test]
    fn oracle_bfile_is_refused() {
        assert_eq!(run_args(&["oracle", "--n", "3", "--format", "bfile"]).code, EXIT_USAGE);
    }

    #[test]
    fn asym_converge_bfile_lists_ratios() {
        let out = run_args(&["asym", "--what", "ER", "--converge", "4", "--format", "bfile"]);
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout, "1 0\n2 1\n3 3/2\n4 8/5\n");
    }
}
