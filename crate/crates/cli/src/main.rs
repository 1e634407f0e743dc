mod degrees;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use qsymk_core::composition::{check_degree, set_max_degree};
use qsymk_core::kernel::{
    describe_check, dimension_row, is_known_check, kernel_space, parse_relation_set,
    relation_edges, run_check, CheckOptions, CheckReport, CHECK_NAMES, RELATION_SET_NAMES,
};
use qsymk_core::statistics::check_shuffle_compatible;
use qsymk_core::{Error, StatisticId};

use degrees::DegreeRange;

const SCHEMA_VERSION: u32 = 1;
const MAX_SHUFFLE_LEN: usize = 9;

#[derive(Parser)]
#[command(
    name = "qsymk",
    version,
    about = "Kernels of descent statistics in QSym"
)]
struct Args {
    /// Largest degree any command may touch.
    #[arg(long, global = true, env = "QSYMK_MAX_DEGREE")]
    max_degree: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named check at every degree in the range.
    Verify {
        check: String,
        #[arg(long)]
        deg: Option<DegreeRange>,
        /// Default to degrees 1..10 instead of 1..8.
        #[arg(long)]
        deep: bool,
        #[arg(long)]
        stat: Option<String>,
        #[arg(long)]
        rels: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Kernel and quotient dimensions per statistic and degree.
    Dims {
        /// Comma-separated statistics; all of them by default.
        #[arg(long)]
        stat: Option<String>,
        #[arg(long)]
        deg: Option<DegreeRange>,
        #[arg(long)]
        deep: bool,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the relation graph on compositions.
    Graph {
        #[arg(long)]
        rels: String,
        #[arg(long)]
        deg: DegreeRange,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Brute-force shuffle-compatibility test of a statistic.
    Shufflecheck {
        stat: String,
        max_total_len: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduced kernel basis in fundamental coordinates.
    Matrix {
        #[arg(long)]
        stat: String,
        #[arg(long)]
        deg: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List check names, relation sets and statistics.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
    Csv,
}

/// Bad invocation; maps to exit status 2.
#[derive(Debug)]
struct Usage(String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn parse_stat(s: &str) -> Result<StatisticId> {
    s.parse::<StatisticId>().map_err(|e| usage(e.to_string()))
}

fn default_range(deg: Option<DegreeRange>, deep: bool) -> DegreeRange {
    deg.unwrap_or(DegreeRange::new(1, if deep { 10 } else { 8 }))
}

// Rejects the whole range before any degree is computed.
fn checked(range: DegreeRange) -> Result<DegreeRange> {
    check_degree(range.hi)?;
    Ok(range)
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json_text(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
    s.push('\n');
    s
}

fn verify(
    check: &str,
    range: DegreeRange,
    stat: Option<&str>,
    rels: Option<&str>,
    out: Option<&PathBuf>,
) -> Result<bool> {
    if !is_known_check(check) {
        return Err(usage(format!(
            "unknown check {check:?}; known checks: {}",
            CHECK_NAMES.join(", ")
        )));
    }
    let opts = CheckOptions {
        stat: stat.map(parse_stat).transpose()?,
        rels: rels
            .map(|r| parse_relation_set(r).map_err(|e| usage(e.to_string())))
            .transpose()?,
    };
    let per_degree: Vec<Vec<CheckReport>> = range
        .degrees()
        .into_par_iter()
        .map(|n| run_check(check, &opts, n))
        .collect::<std::result::Result<_, _>>()?;
    let reports: Vec<CheckReport> = per_degree.into_iter().flatten().collect();
    let pass = reports.iter().all(|r| r.pass);
    for r in &reports {
        let stat = r
            .stat
            .as_deref()
            .map(|s| format!(" {s}"))
            .unwrap_or_default();
        let verdict = if r.pass { "pass" } else { "FAIL" };
        match &r.witness {
            Some(w) => eprintln!("{check}{stat} n={}: {verdict} ({w})", r.degree),
            None => eprintln!("{check}{stat} n={}: {verdict}", r.degree),
        }
    }
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "check": check,
        "degrees": [range.lo, range.hi],
        "pass": pass,
        "reports": serde_json::to_value(&reports)?,
    });
    emit(&json_text(&doc), out)?;
    Ok(pass)
}

fn dims(
    stats: Option<&str>,
    range: DegreeRange,
    format: TableFormat,
    out: Option<&PathBuf>,
) -> Result<bool> {
    let stats: Vec<StatisticId> = match stats {
        Some(list) => list
            .split(',')
            .map(|s| parse_stat(s.trim()))
            .collect::<Result<_>>()?,
        None => StatisticId::ALL.to_vec(),
    };
    let jobs: Vec<(StatisticId, usize)> = stats
        .iter()
        .flat_map(|&s| range.degrees().into_iter().map(move |n| (s, n)))
        .collect();
    let rows = jobs
        .into_par_iter()
        .map(|(s, n)| dimension_row(&s, n))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let law = rows.iter().all(|r| r.degree == 0 || r.law_holds());
    let text = match format {
        TableFormat::Csv => {
            let mut s = String::from("statistic,degree,kernel_dim,quotient_dim,compositions\n");
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.statistic, r.degree, r.kernel_dim, r.quotient_dim, r.compositions
                ));
            }
            s
        }
        TableFormat::Json => json_text(&json!({
            "schema_version": SCHEMA_VERSION,
            "degrees": [range.lo, range.hi],
            "rows": serde_json::to_value(&rows)?,
        })),
    };
    emit(&text, out)?;
    Ok(law)
}

fn graph(
    rels: &str,
    range: DegreeRange,
    format: GraphFormat,
    out: Option<&PathBuf>,
) -> Result<bool> {
    let rels = parse_relation_set(rels).map_err(|e| usage(e.to_string()))?;
    let graphs = range
        .degrees()
        .into_iter()
        .map(|n| relation_edges(&rels, n))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let text = match format {
        GraphFormat::Dot => graphs.iter().map(|g| g.to_dot()).collect::<String>(),
        GraphFormat::Csv => {
            let mut s = String::from("from,to,label\n");
            for g in &graphs {
                s.extend(g.to_csv().lines().skip(1).map(|l| format!("{l}\n")));
            }
            s
        }
        GraphFormat::Json => json_text(&json!({
            "schema_version": SCHEMA_VERSION,
            "relations": rels.iter().map(|r| r.name()).collect::<Vec<_>>(),
            "graphs": graphs.iter().map(|g| g.to_json()).collect::<Vec<_>>(),
        })),
    };
    emit(&text, out)?;
    Ok(true)
}

fn shufflecheck(stat: &str, max_total_len: usize, out: Option<&PathBuf>) -> Result<bool> {
    let stat = parse_stat(stat)?;
    if max_total_len > MAX_SHUFFLE_LEN {
        return Err(usage(format!(
            "max total length {max_total_len} exceeds {MAX_SHUFFLE_LEN}"
        )));
    }
    let report = check_shuffle_compatible(&stat, max_total_len)?;
    let mut doc = serde_json::to_value(&report)?;
    doc["schema_version"] = json!(SCHEMA_VERSION);
    doc["pass"] = json!(report.compatible);
    eprintln!(
        "shufflecheck {stat} up to length {max_total_len}: {}",
        if report.compatible { "pass" } else { "FAIL" }
    );
    emit(&json_text(&doc), out)?;
    Ok(report.compatible)
}

fn matrix(stat: &str, n: usize, format: TableFormat, out: Option<&PathBuf>) -> Result<bool> {
    let stat = parse_stat(stat)?;
    let kernel = kernel_space(&stat, n)?;
    let text = match format {
        TableFormat::Csv => kernel.basis.to_csv(),
        TableFormat::Json => {
            let rows: Vec<Value> = kernel
                .basis
                .rows()
                .iter()
                .map(|r| qsymk_core::QSymElement::from_f_vector(r).to_json())
                .collect();
            json_text(&json!({
                "schema_version": SCHEMA_VERSION,
                "statistic": stat.as_str(),
                "degree": n,
                "dim": kernel.dim,
                "rows": rows,
            }))
        }
    };
    emit(&text, out)?;
    Ok(true)
}

fn list() -> Result<bool> {
    println!("checks:");
    for name in CHECK_NAMES {
        println!("  {name:<8} {}", describe_check(name).unwrap_or(""));
    }
    println!("relation sets: {}", RELATION_SET_NAMES.join(", "));
    let stats: Vec<&str> = StatisticId::ALL.iter().map(|s| s.as_str()).collect();
    println!("statistics: {}", stats.join(", "));
    Ok(true)
}

fn run(args: Args) -> Result<bool> {
    if let Some(max) = args.max_degree {
        set_max_degree(max).map_err(|e| usage(e.to_string()))?;
    }
    match args.command {
        Command::Verify {
            check,
            deg,
            deep,
            stat,
            rels,
            out,
        } => verify(
            &check,
            checked(default_range(deg, deep))?,
            stat.as_deref(),
            rels.as_deref(),
            out.as_ref(),
        ),
        Command::Dims {
            stat,
            deg,
            deep,
            format,
            out,
        } => dims(
            stat.as_deref(),
            checked(default_range(deg, deep))?,
            format,
            out.as_ref(),
        ),
        Command::Graph {
            rels,
            deg,
            format,
            out,
        } => graph(&rels, checked(deg)?, format, out.as_ref()),
        Command::Shufflecheck {
            stat,
            max_total_len,
            out,
        } => shufflecheck(&stat, max_total_len, out.as_ref()),
        Command::Matrix {
            stat,
            deg,
            format,
            out,
        } => matrix(&stat, deg, format, out.as_ref()),
        Command::List => list(),
    }
}

fn is_usage(err: &anyhow::Error) -> bool {
    err.downcast_ref::<Usage>().is_some()
        || matches!(
            err.downcast_ref::<Error>(),
            Some(
                Error::DegreeTooLarge { .. }
                    | Error::Precondition(_)
                    | Error::Parse(_)
                    | Error::UnknownCheck(_)
                    | Error::UnsupportedStatistic(_)
            )
        )
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(if is_usage(&err) { 2 } else { 1 })
        }
    }
}
