//! The `ringlab` command line.

use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::dsl::{self, ExpectValue};
use crate::props::{self, CheckOptions, Verdict};
use crate::radical;
use crate::report::RingReport;
use crate::search::{self, SearchConfig};
use crate::suite::{self, SuiteOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_BUILD: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_TIME: i32 = 3;

/// Overrides every time budget, in seconds.
pub const BUDGET_ENV: &str = "RINGLAB_TIME_BUDGET_SECS";

const TIMEOUT_REASON: &str = "time budget exceeded";

#[derive(Debug, Parser)]
#[command(name = "ringlab", version, about = "Property checks for finite rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the last ring in a file and report its properties.
    Check {
        file: PathBuf,
        /// Assertions such as `reflexive=true,order=256`, added to the file's own.
        #[arg(long)]
        expect: Option<String>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        threads: Option<usize>,
        /// Decide the symmetric property on rings with 2^13 or more elements.
        #[arg(long)]
        long: bool,
    },
    /// Run the numbered acceptance criteria.
    PaperSuite {
        #[arg(long)]
        long: bool,
        #[arg(long)]
        json: bool,
    },
    /// Find the smallest rings of a family satisfying a predicate.
    Search {
        config: PathBuf,
        /// Hits as JSON lines; the census goes to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Order and radical filtration only.
    Info { file: PathBuf },
}

fn budget_override() -> Result<Option<Duration>, String> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .map(|s| Some(Duration::from_secs(s)))
            .map_err(|_| format!("{BUDGET_ENV} must be a whole number of seconds, got `{v}`")),
        Err(_) => Ok(None),
    }
}

/// Parses arguments and runs, returning the exit code.
pub fn main_with<I, T>(args: I, out: &mut (dyn std::io::Write + Send), err: &mut (dyn std::io::Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_BUILD;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    let budget = match budget_override() {
        Ok(b) => b,
        Err(m) => {
            let _ = writeln!(err, "error: {m}");
            return EXIT_BUILD;
        }
    };
    match cli.command {
        Command::Check { file, expect, json, threads, long } => {
            let mut run = || check(&file, expect.as_deref(), json, long, budget, out, err);
            match threads {
                Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
                    Ok(pool) => pool.install(run),
                    Err(e) => {
                        let _ = writeln!(err, "error: cannot start {n} threads: {e}");
                        EXIT_BUILD
                    }
                },
                None => run(),
            }
        }
        Command::PaperSuite { long, json } => paper_suite(long, json, budget, out),
        Command::Search { config, out: path } => run_search(&config, path.as_deref(), budget, out, err),
        Command::Info { file } => info(&file, out, err),
    }
}

fn load(file: &Path, err: &mut (dyn std::io::Write + Send)) -> Result<(dsl::RingSpecFile, crate::algebra::FiniteAlgebra), i32> {
    let text = std::fs::read_to_string(file).map_err(|e| {
        let _ = writeln!(err, "error: cannot read {}: {e}", file.display());
        EXIT_BUILD
    })?;
    let spec = dsl::parse(&text).map_err(|e| {
        let _ = writeln!(err, "error: {}:{e}", file.display());
        EXIT_BUILD
    })?;
    let base = file.parent().unwrap_or(Path::new("."));
    let alg = spec.build(base).map_err(|e| {
        let _ = writeln!(err, "error: {}: {e}", file.display());
        EXIT_BUILD
    })?;
    Ok((spec, alg))
}

fn check(
    file: &Path,
    expect: Option<&str>,
    json: bool,
    long: bool,
    budget: Option<Duration>,
    out: &mut (dyn std::io::Write + Send),
    err: &mut (dyn std::io::Write + Send),
) -> i32 {
    let (spec, alg) = match load(file, err) {
        Ok(x) => x,
        Err(code) => return code,
    };
    let mut expectations: Vec<(String, ExpectValue)> = spec.primary().map(|s| s.expect.clone()).unwrap_or_default();
    if let Some(e) = expect {
        match dsl::parse_expectations(e) {
            Ok(extra) => {
                for (k, v) in extra {
                    expectations.retain(|(key, _)| *key != k);
                    expectations.push((k, v));
                }
            }
            Err(e) => {
                let _ = writeln!(err, "error: --expect: {e}");
                return EXIT_BUILD;
            }
        }
    }
    let opts = CheckOptions { long, budget: budget.unwrap_or(props::DEFAULT_BUDGET), ..CheckOptions::default() };
    let report = match props::property_report(&alg, &opts) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_BUILD;
        }
    };
    let timed_out = report.results.values().any(|r| matches!(&r.verdict, Verdict::Skipped(w) if w == TIMEOUT_REASON));
    let ring = RingReport::new(&alg, &report);
    if json {
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&ring).expect("serializable"));
    } else {
        let _ = write!(out, "{}", ring.to_text());
    }
    let mismatches = ring.check(&expectations);
    for m in &mismatches {
        let _ = writeln!(err, "expectation failed: {m}");
    }
    if mismatches.iter().any(|m| !m.is_undecided()) {
        EXIT_MISMATCH
    } else if timed_out || !mismatches.is_empty() {
        EXIT_TIME
    } else {
        EXIT_OK
    }
}

fn paper_suite(long: bool, json: bool, budget: Option<Duration>, out: &mut (dyn std::io::Write + Send)) -> i32 {
    let opts = SuiteOptions { long, budget: budget.unwrap_or(props::DEFAULT_BUDGET) };
    let report = suite::run(&opts);
    if json {
        let _ = writeln!(out, "{}", report.to_json());
    } else {
        let _ = write!(out, "{}", report.to_text());
    }
    if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    }
}

#[derive(Serialize)]
struct SearchSummary<'a> {
    family: &'a str,
    predicate: &'a str,
    min_order: Option<u64>,
    hits: usize,
    hit_orders: &'a std::collections::BTreeMap<u64, usize>,
    census: &'a search::Census,
    complete: bool,
}

fn run_search(
    config: &Path,
    path: Option<&Path>,
    budget: Option<Duration>,
    out: &mut (dyn std::io::Write + Send),
    err: &mut (dyn std::io::Write + Send),
) -> i32 {
    let cfg = match SearchConfig::load(config) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", config.display());
            return EXIT_BUILD;
        }
    };
    let limit = budget.unwrap_or(Duration::from_secs(cfg.time_budget_secs));
    let res = match search::find_minimal_with_budget(&cfg, limit) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_BUILD;
        }
    };
    let lines = search::hits_jsonl(&res.hits);
    let summary = SearchSummary {
        family: &res.family,
        predicate: &res.predicate,
        min_order: res.min_order,
        hits: res.hits.len(),
        hit_orders: &res.hit_orders,
        census: &res.census,
        complete: res.complete,
    };
    let summary = serde_json::to_string(&summary).expect("serializable");
    match path {
        Some(p) => {
            if let Err(e) = std::fs::write(p, lines) {
                let _ = writeln!(err, "error: cannot write {}: {e}", p.display());
                return EXIT_BUILD;
            }
            let _ = writeln!(out, "{summary}");
        }
        None => {
            let _ = write!(out, "{lines}");
            let _ = writeln!(err, "{summary}");
        }
    }
    if res.complete {
        EXIT_OK
    } else {
        let _ = writeln!(err, "search stopped at the time budget; results are partial");
        EXIT_TIME
    }
}

fn info(file: &Path, out: &mut (dyn std::io::Write + Send), err: &mut (dyn std::io::Write + Send)) -> i32 {
    let (_, alg) = match load(file, err) {
        Ok(x) => x,
        Err(code) => return code,
    };
    let s = match radical::analyze(&alg) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_BUILD;
        }
    };
    let _ = writeln!(out, "ring {}: order {} = {}^{}", alg.name(), alg.order(), alg.field().name(), alg.dim());
    match s.residue_field_size(alg.lanes().p()) {
        Ok(q) => {
            let _ = writeln!(out, "local, residue field of order {q}{}", if s.is_chain() { ", chain ring" } else { "" });
        }
        Err(_) => {
            let _ = writeln!(out, "not local");
        }
    }
    let _ = writeln!(
        out,
        "radical filtration dims {:?}, nilpotency index {}",
        s.dims(&alg),
        s.filtration.nilpotency_index
    );
    EXIT_OK
}
