//! Command-line front end. Parsing is done by clap into [`RunConfig`]; [`run`]
//! writes reports to the given streams and returns the process exit status.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::json;

use crate::closed_forms::family_aggregates;
use crate::engine::ColoringEngine;
use crate::error::{Error, Result};
use crate::graph::{FamilySpec, Graph};
use crate::rational::ExactRational;
use crate::selftest;
use crate::sequences::BigSeqCache;
use crate::verifier::{explore, failures, scan, InequalityId, InequalityReport};

/// Exit status when an in-range inequality or a selftest check fails.
pub const EXIT_VERIFICATION_FAILED: i32 = 4;

/// Graphs above this order get a warning before the exponential computation.
pub const LARGE_GRAPH_WARNING: usize = 20;

#[derive(Parser, Debug)]
#[command(
    name = "graphbell",
    version,
    about = "Exact graphical Bell numbers and Bell-number inequalities"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a prefix of a classical sequence.
    Seq(SeqArgs),
    /// Stirling profile and aggregates of a graph via deletion-contraction.
    Compute(ComputeArgs),
    /// Aggregates of a named family via closed forms.
    Family(FamilyArgs),
    /// Scan one inequality over a grid of (n, p).
    Verify(VerifyArgs),
    /// Run the built-in consistency suite.
    Selftest(SelftestArgs),
}

#[derive(Args, Debug, Clone, Copy)]
pub struct FormatArgs {
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    #[arg(long)]
    pub csv: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl FormatArgs {
    pub fn format(self) -> Format {
        match (self.json, self.csv) {
            (true, _) => Format::Json,
            (_, true) => Format::Csv,
            _ => Format::Text,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeqKind {
    Bell,
    Stirling2,
    TwoBell,
    AvgBlocks,
}

#[derive(Args, Debug)]
pub struct SeqArgs {
    #[arg(long, value_enum)]
    pub kind: SeqKind,
    /// Last index (for stirling2: the row).
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub format: FormatArgs,
}

#[derive(Args, Debug)]
#[group(id = "input", required = true, multiple = false, args = ["family", "edges"])]
pub struct ComputeArgs {
    /// Family spec such as `cycle:5` or `h:4,2,1`.
    #[arg(long)]
    pub family: Option<FamilySpec>,
    /// Edge-list file: header `n m`, then one `u v` pair per line.
    #[arg(long)]
    pub edges: Option<PathBuf>,
    #[arg(long)]
    pub no_memo: bool,
    #[command(flatten)]
    pub format: FormatArgs,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    #[arg(long)]
    pub family: FamilySpec,
    #[command(flatten)]
    pub format: FormatArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub id: InequalityId,
    #[arg(long)]
    pub n_max: usize,
    #[arg(long, default_value_t = 0)]
    pub p_max: usize,
    /// Also evaluate points below the validity range; reported on stderr.
    #[arg(long)]
    pub explore: bool,
    /// Worker threads for the scan (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
    #[command(flatten)]
    pub format: FormatArgs,
}

#[derive(Args, Debug)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = selftest::DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(&config, out, err),
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            if e.use_stderr() {
                1
            } else {
                let _ = write!(out, "{}", e.render());
                0
            }
        }
    }
}

/// Runs a parsed configuration; returns the exit status.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &config.command {
        Command::Seq(a) => run_seq(a, out),
        Command::Compute(a) => run_compute(a, out, err),
        Command::Family(a) => run_family(a, out),
        Command::Verify(a) => run_verify(a, out, err),
        Command::Selftest(a) => run_selftest(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn emit_json(out: &mut dyn Write, value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(std::io::Error::other)?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn run_seq(a: &SeqArgs, out: &mut dyn Write) -> Result<i32> {
    let cache = BigSeqCache::global();
    // two_bell(n) reads Stirling row n + 1
    cache.check_capacity(a.n + 1)?;
    let (first, values): (usize, Vec<String>) = match a.kind {
        SeqKind::Bell => (0, (0..=a.n).map(|i| cache.bell(i).to_string()).collect()),
        SeqKind::TwoBell => (
            0,
            (0..=a.n).map(|i| cache.two_bell(i).to_string()).collect(),
        ),
        SeqKind::Stirling2 => (
            0,
            cache
                .stirling_row(a.n)
                .iter()
                .map(|v| v.to_string())
                .collect(),
        ),
        SeqKind::AvgBlocks => {
            if a.n == 0 {
                return Err(Error::Domain("average block count needs n >= 1".into()));
            }
            let vals = (1..=a.n)
                .map(|i| cache.avg_blocks(i).map(|r| r.to_string()))
                .collect::<Result<_>>()?;
            (1, vals)
        }
    };
    let kind = a.kind.to_possible_value().expect("no skipped variants");
    match a.format.format() {
        Format::Text => writeln!(out, "{}", values.join(","))?,
        Format::Json => emit_json(
            out,
            &json!({ "kind": kind.get_name(), "n": a.n, "values": values }),
        )?,
        Format::Csv => {
            writeln!(
                out,
                "{},value",
                if a.kind == SeqKind::Stirling2 {
                    "k"
                } else {
                    "n"
                }
            )?;
            for (i, v) in values.iter().enumerate() {
                writeln!(out, "{},{v}", first + i)?;
            }
        }
    }
    Ok(0)
}

/// Aggregates of one graph as reported by `compute` and `family`.
#[derive(Serialize)]
struct AggregateReport {
    n: usize,
    counts: Option<Vec<String>>,
    b: String,
    t: String,
    a: String,
    method: &'static str,
}

impl AggregateReport {
    fn new(
        n: usize,
        counts: Option<&[BigUint]>,
        b: &BigUint,
        t: &BigUint,
        method: &'static str,
    ) -> Result<AggregateReport> {
        Ok(AggregateReport {
            n,
            counts: counts.map(|c| c.iter().map(|v| v.to_string()).collect()),
            b: b.to_string(),
            t: t.to_string(),
            a: ExactRational::from_biguints(t, b)?.to_string(),
            method,
        })
    }

    fn write(&self, format: Format, out: &mut dyn Write) -> Result<()> {
        let counts = self.counts.as_ref().map(|c| c.join(","));
        match format {
            Format::Json => emit_json(out, self)?,
            Format::Csv => {
                writeln!(out, "n,b,t,a,method,counts")?;
                writeln!(
                    out,
                    "{},{},{},{},{},\"{}\"",
                    self.n,
                    self.b,
                    self.t,
                    self.a,
                    self.method,
                    counts.unwrap_or_default()
                )?;
            }
            Format::Text => {
                writeln!(out, "n: {}", self.n)?;
                if let Some(c) = counts {
                    writeln!(out, "counts: {c}")?;
                }
                writeln!(out, "b: {}", self.b)?;
                writeln!(out, "t: {}", self.t)?;
                writeln!(out, "a: {}", self.a)?;
            }
        }
        Ok(())
    }
}

fn run_compute(a: &ComputeArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let g = match (&a.family, &a.edges) {
        (Some(spec), None) => spec.build()?,
        (None, Some(path)) => Graph::parse_edge_list(&std::fs::read_to_string(path)?)?,
        _ => {
            return Err(Error::Usage(
                "give exactly one of --family or --edges".into(),
            ))
        }
    };
    if g.order() == 0 {
        return Err(Error::Domain(
            "average colour count of the null graph".into(),
        ));
    }
    if g.order() > LARGE_GRAPH_WARNING {
        writeln!(
            err,
            "warning: {} vertices; deletion-contraction is exponential and may take a long time",
            g.order()
        )?;
    }
    let engine = if a.no_memo {
        ColoringEngine::without_memo()
    } else {
        ColoringEngine::new()
    };
    let prof = engine.profile(&g);
    AggregateReport::new(
        g.order(),
        Some(prof.counts()),
        &prof.bell(),
        &prof.total(),
        "deletion_contraction",
    )?
    .write(a.format.format(), out)?;
    Ok(0)
}

fn run_family(a: &FamilyArgs, out: &mut dyn Write) -> Result<i32> {
    a.family.validate()?;
    BigSeqCache::global().check_capacity(a.family.order() + 2)?;
    let agg = family_aggregates(&a.family)?;
    AggregateReport::new(a.family.order(), None, &agg.b, &agg.t, "closed_form")?
        .write(a.format.format(), out)?;
    Ok(0)
}

fn write_reports(reports: &[InequalityReport], format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Json => emit_json(out, &reports)?,
        Format::Csv => {
            writeln!(out, "{}", InequalityReport::CSV_HEADER)?;
            for r in reports {
                writeln!(out, "{}", r.csv_row())?;
            }
        }
        Format::Text => {
            for r in reports {
                writeln!(
                    out,
                    "{} n={} p={} lhs={} rhs={} margin={} {}",
                    r.id,
                    r.n,
                    r.p,
                    r.lhs,
                    r.rhs,
                    r.margin,
                    if r.holds_strict { "holds" } else { "FAILS" }
                )?;
            }
        }
    }
    Ok(())
}

fn run_verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    if a.n_max == 0 {
        return Err(Error::Usage("--n-max must be positive".into()));
    }
    let pool = {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(jobs) = a.jobs {
            if jobs == 0 {
                return Err(Error::Usage("--jobs must be positive".into()));
            }
            builder = builder.num_threads(jobs);
        }
        builder
            .build()
            .map_err(|e| Error::Resource(format!("thread pool: {e}")))?
    };
    let reports = pool.install(|| scan(a.id, a.n_max, a.p_max))?;
    write_reports(&reports, a.format.format(), out)?;
    if a.explore {
        let below = pool.install(|| explore(a.id, a.n_max, a.p_max))?;
        writeln!(
            err,
            "# outside the validity range ({})",
            a.id.validity().statement
        )?;
        write_reports(&below, a.format.format(), err)?;
    }
    let bad = failures(&reports);
    if bad > 0 {
        writeln!(err, "{bad} in-range violation(s) of {}", a.id)?;
        return Ok(EXIT_VERIFICATION_FAILED);
    }
    Ok(0)
}

fn run_selftest(a: &SelftestArgs, out: &mut dyn Write) -> Result<i32> {
    let report = selftest::run(a.seed)?;
    if a.json {
        emit_json(out, &report)?;
    } else {
        for c in &report.checks {
            let status = if c.failed == 0 { "PASS" } else { "FAIL" };
            writeln!(
                out,
                "{status} {} passed={} failed={}",
                c.name, c.passed, c.failed
            )?;
        }
        writeln!(
            out,
            "total passed={} failed={}",
            report.passed, report.failed
        )?;
    }
    Ok(if report.all_passed() {
        0
    } else {
        EXIT_VERIFICATION_FAILED
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["graphbell"];
        full.extend_from_slice(args);
        let code = main_with_args(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn bell_prefix_text() {
        assert_eq!(
            call(&["seq", "--kind", "bell", "--n", "6"]),
            (0, "1,1,2,5,15,52,203\n".into(), String::new())
        );
    }

    #[test]
    fn compute_c5_json() {
        let (code, out, _) = call(&["compute", "--family", "cycle:5", "--json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["counts"], json!(["0", "0", "0", "5", "5", "1"]));
        assert_eq!(
            (v["b"].as_str(), v["t"].as_str(), v["a"].as_str()),
            (Some("11"), Some("40"), Some("40/11"))
        );
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["seq", "--kind", "bell"]).0, 1);
        assert_eq!(
            call(&["compute", "--family", "cycle:5", "--edges", "x"]).0,
            1
        );
        assert_eq!(call(&["compute", "--family", "cycle:2"]).0, 1);
        assert_eq!(call(&["family", "--family", "empty:0"]).0, 2);
        assert_eq!(call(&["seq", "--kind", "bell", "--n", "100000"]).0, 3);
        assert_eq!(call(&["verify", "--id", "I3", "--n-max", "5"]).0, 0);
        assert_eq!(
            call(&["verify", "--id", "I4", "--n-max", "5"]).0,
            EXIT_VERIFICATION_FAILED
        );
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn explore_goes_to_stderr() {
        let (code, out, err) =
            call(&["verify", "--id", "I5", "--n-max", "6", "--explore", "--csv"]);
        assert_eq!(code, 0);
        assert_eq!(out, "id,n,p,lhs,rhs,margin,holds_strict\nI5,5,0,572,600,28,true\nI5,6,0,8323,8476,153,true\n");
        assert!(err.contains("I5,4,0,"));
    }
}
