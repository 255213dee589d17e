use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use spectral_turan::bounds::{largest_root, PolySpec};
use spectral_turan::enumerate::{
    cache_load, cache_store, enumerate_classes, extremal_rho, CacheEntry, EnumFilter, EnumOptions,
};
use spectral_turan::families::FamilySpec;
use spectral_turan::graph::DEFAULT_MAX_VERTICES;
use spectral_turan::motifs::MotifKind;
use spectral_turan::spectral::{char_poly, equitable_partition, spectral_radius, QuotientMatrix, DEFAULT_TOL};
use spectral_turan::verify::{run_suite, Status, Suite, SuiteOptions};
use spectral_turan::{graph6, Error, Graph};

mod exit {
    pub const CLAIM_FAILURE: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const RESOURCE: u8 = 3;
}

#[derive(Parser, Debug)]
#[command(name = "spturan", version, about = "Spectral Turán-type graph toolkit")]
struct Cli {
    #[command(flatten)]
    config: CliConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
struct CliConfig {
    /// Largest accepted graph order.
    #[arg(long, global = true, env = "ST_MAX_VERTICES", default_value_t = DEFAULT_MAX_VERTICES)]
    max_vertices: usize,
    /// Width of certified root brackets.
    #[arg(long, global = true, env = "ST_TOL", default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Worker threads for enumeration (default: all cores).
    #[arg(long, global = true, env = "ST_THREADS")]
    threads: Option<usize>,
    /// Directory holding one JSON cache file per enumeration filter.
    #[arg(long, global = true, env = "ST_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Output {
    Json,
    Plain,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a named graph and print its graph6.
    Family(FamilyArgs),
    /// Certified spectral radius and Perron vector.
    Rho {
        /// graph6, or "-" for stdin.
        graph: String,
    },
    /// Exact characteristic polynomial.
    Charpoly { graph: String },
    /// Quotient matrix of an equitable partition.
    Quotient {
        graph: String,
        /// Cells separated by ';', vertices by ',' (e.g. "0;1,2,3;4").
        /// Defaults to the coarsest equitable partition.
        #[arg(long)]
        cells: Option<String>,
    },
    /// Look for a forbidden motif and print a witness.
    Motif {
        graph: String,
        /// c3, c4, c5+, ct:<t> or ct+:<t>.
        #[arg(long)]
        find: String,
    },
    /// A named polynomial, optionally with its largest root.
    Poly(PolyArgs),
    /// Isomorphism-free enumeration by edge count.
    Enumerate(EnumerateArgs),
    /// Exact comparison of two spectral radii.
    Compare { a: String, b: String },
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct FamilyArgs {
    name: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    h: Option<usize>,
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    /// Print a JSON record instead of bare graph6.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct PolyArgs {
    /// lemma22, g, h, h1, h2, h3 or f.
    name: String,
    #[arg(long)]
    m: i64,
    #[arg(long)]
    k: Option<i64>,
    #[arg(long)]
    t: Option<i64>,
    /// Include the certified largest root.
    #[arg(long)]
    root: bool,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    m: usize,
    /// Comma-separated: c3free, c4free, c4plusfree, c5plusfree,
    /// nonbipartite, connected.
    #[arg(long, default_value = "")]
    filter: String,
    /// Print every class instead of a summary.
    #[arg(long, value_parser = ["g6"])]
    emit: Option<String>,
    /// Find the maximiser of the spectral radius.
    #[arg(long)]
    extremal: bool,
    /// Allow sizes above the soft limit.
    #[arg(long)]
    allow_large: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    suite: String,
    #[arg(long, conflicts_with = "m_range")]
    m: Option<usize>,
    /// Inclusive range, e.g. 51..120.
    #[arg(long)]
    m_range: Option<String>,
    /// Allow enumeration sizes above the soft limit.
    #[arg(long)]
    allow_large: bool,
}

/// A usage problem detected after argument parsing.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(Usage(msg.into()))
}

/// What a command produced: a JSON record, its plain rendering, and
/// whether a verified claim failed.
struct Outcome {
    record: Value,
    plain: String,
    failed: bool,
    /// Print `plain` even under `--output json` (graph6 streams).
    raw: bool,
}

impl Outcome {
    fn new(record: Value, plain: impl Into<String>) -> Self {
        Outcome {
            record,
            plain: plain.into(),
            failed: false,
            raw: false,
        }
    }

    fn raw(plain: impl Into<String>) -> Self {
        Outcome {
            raw: true,
            ..Outcome::new(Value::Null, plain)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let output = cli.config.output;
    match run(cli) {
        Ok(out) => {
            match output {
                _ if out.raw => println!("{}", out.plain),
                Output::Json => println!("{}", serde_json::to_string_pretty(&out.record).expect("serialisable")),
                Output::Plain => println!("{}", out.plain),
            }
            if out.failed {
                ExitCode::from(exit::CLAIM_FAILURE)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<Usage>().is_some() {
        return exit::USAGE;
    }
    match e.downcast_ref::<Error>() {
        Some(Error::ResourceCap(_)) => exit::RESOURCE,
        Some(Error::Reconstruction { .. }) | Some(Error::EmptyFamily(_)) => exit::CLAIM_FAILURE,
        Some(_) => exit::USAGE,
        None => exit::CLAIM_FAILURE,
    }
}

fn read_graph(arg: &str, config: &CliConfig) -> anyhow::Result<Graph> {
    let text = if arg == "-" {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf).context("reading stdin")?;
        buf.lines()
            .map(str::trim)
            .find(|l| !l.is_empty())
            .ok_or_else(|| usage("no graph on stdin"))?
            .to_string()
    } else {
        arg.trim().to_string()
    };
    let g = graph6::decode(&text)?;
    if g.n() > config.max_vertices {
        return Err(Error::ResourceCap(format!(
            "graph has {} vertices, limit is {}",
            g.n(),
            config.max_vertices
        ))
        .into());
    }
    Ok(g)
}

fn enum_options(config: &CliConfig, allow_large: bool) -> EnumOptions {
    let threads = config
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    EnumOptions {
        threads: threads.max(1),
        allow_large,
    }
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let config = &cli.config;
    if !(config.tol > 0.0) {
        return Err(usage(format!("--tol must be positive, got {}", config.tol)));
    }
    match cli.command {
        Command::Family(args) => family(args),
        Command::Rho { graph } => {
            let g = read_graph(&graph, config)?;
            let r = spectral_radius(&g, config.tol)?;
            let plain = format!("{}", r.rho);
            Ok(Outcome::new(serde_json::to_value(&r)?, plain))
        }
        Command::Charpoly { graph } => {
            let g = read_graph(&graph, config)?;
            let p = char_poly(&g);
            Ok(Outcome::new(
                json!({ "coeffs": p, "poly": p.to_string() }),
                p.to_string(),
            ))
        }
        Command::Quotient { graph, cells } => quotient(&read_graph(&graph, config)?, cells, config),
        Command::Motif { graph, find } => {
            let g = read_graph(&graph, config)?;
            let kind: MotifKind = find.parse().map_err(|e: Error| usage(e.to_string()))?;
            let witness = kind.find(&g);
            if let Some(w) = &witness {
                debug_assert!(w.verify(&g));
            }
            let plain = match &witness {
                Some(w) => format!("found {kind}: {:?}", w.vertices),
                None => format!("no {kind}"),
            };
            Ok(Outcome::new(
                json!({ "motif": kind, "found": witness.is_some(), "witness": witness.map(|w| w.vertices) }),
                plain,
            ))
        }
        Command::Poly(args) => poly(args, config),
        Command::Enumerate(args) => enumerate(args, config),
        Command::Compare { a, b } => {
            let ga = read_graph(&a, config)?;
            let gb = read_graph(&b, config)?;
            let ra = spectral_radius(&ga, config.tol)?;
            let rb = spectral_radius(&gb, config.tol)?;
            let (word, sym) = match ra.cmp_rho(&rb) {
                std::cmp::Ordering::Less => ("less", "<"),
                std::cmp::Ordering::Equal => ("equal", "="),
                std::cmp::Ordering::Greater => ("greater", ">"),
            };
            let side = |r: &spectral_turan::spectral::SpectralResult| {
                json!({ "rho": r.rho, "bracket": r.bracket, "certificate": r.certificate })
            };
            Ok(Outcome::new(
                json!({ "order": word, "symbol": sym, "a": side(&ra), "b": side(&rb) }),
                format!("rho(a) {sym} rho(b)"),
            ))
        }
        Command::Verify(args) => verify(args, config),
    }
}

fn family(args: FamilyArgs) -> anyhow::Result<Outcome> {
    let param = |key: &str| match key {
        "n" => args.n,
        "m" => args.m,
        "k" => args.k,
        "t" => args.t,
        "r" => args.r,
        "h" => args.h,
        "a" => args.a,
        "b" => args.b,
        _ => None,
    };
    let spec = FamilySpec::from_name(&args.name, param)?;
    let g = spec.build()?;
    let g6 = graph6::encode(&g);
    let record = json!({
        "family": spec,
        "name": spec.to_string(),
        "graph6": g6,
        "n": g.n(),
        "m": g.m(),
        "degree_sequence": g.degree_sequence(),
    });
    Ok(if args.json {
        Outcome::new(record, g6)
    } else {
        Outcome::raw(g6)
    })
}

fn parse_cells(spec: &str) -> anyhow::Result<Vec<Vec<usize>>> {
    spec.split(';')
        .filter(|c| !c.trim().is_empty())
        .map(|cell| {
            cell.split(',')
                .map(|v| {
                    v.trim()
                        .parse::<usize>()
                        .map_err(|_| usage(format!("bad vertex {v:?} in --cells")))
                })
                .collect()
        })
        .collect()
}

fn quotient(g: &Graph, cells: Option<String>, config: &CliConfig) -> anyhow::Result<Outcome> {
    let q: QuotientMatrix = match cells {
        Some(spec) => QuotientMatrix::from_cells(g, parse_cells(&spec)?)?,
        None => equitable_partition(g, None)?,
    };
    let cp = q.char_poly();
    let divides = cp.divides(&char_poly(g));
    let root = q.largest_eigenvalue(config.tol)?;
    let plain = q
        .b
        .iter()
        .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Outcome::new(
        json!({
            "cells": q.cells,
            "B": q.b,
            "charpoly_B": cp,
            "charpoly_B_text": cp.to_string(),
            "divides": divides,
            "largest_eigenvalue": root.value_f64(),
            "bracket": root.bracket_f64(),
        }),
        plain,
    ))
}

fn poly_spec(args: &PolyArgs) -> anyhow::Result<PolySpec> {
    let m = args.m;
    let need = |v: Option<i64>, name: &str| v.ok_or_else(|| usage(format!("poly {} needs --{name}", args.name)));
    Ok(match args.name.to_ascii_lowercase().as_str() {
        "lemma22" | "cubic" => PolySpec::Lemma22(m, need(args.k, "k")?),
        "g" | "g10" | "g10g" => PolySpec::G10g(m),
        "h" | "subcaseh" => PolySpec::SubcaseH(m),
        "h1" => PolySpec::Eq9h1(m),
        "h2" => PolySpec::Eq9h2(m),
        "h3" => PolySpec::Eq9h3(m),
        "f" | "lemma47f" | "g14" => PolySpec::Lemma47f(m, need(args.t, "t")?),
        other => return Err(usage(format!("unknown polynomial {other:?}"))),
    })
}

fn poly(args: PolyArgs, config: &CliConfig) -> anyhow::Result<Outcome> {
    let spec = poly_spec(&args)?;
    let p = spec.authoritative()?;
    let printed = spec.printed()?;
    let mut record = json!({
        "name": spec.to_string(),
        "coeffs": p,
        "poly": p.to_string(),
        "printed": printed.to_string(),
        "warnings": spec.warnings()?,
    });
    let mut plain = p.to_string();
    if args.root {
        let r = largest_root(&spec, config.tol)?;
        record["largest_root"] = json!(r.value_f64());
        record["bracket"] = json!(r.bracket_f64());
        plain = format!("{plain}\n{}", r.value_f64());
    }
    Ok(Outcome::new(record, plain))
}

fn enumerate(args: EnumerateArgs, config: &CliConfig) -> anyhow::Result<Outcome> {
    let filter = EnumFilter::parse(args.m, &args.filter).map_err(|e| usage(e.to_string()))?;
    let opts = enum_options(config, args.allow_large);
    if args.emit.is_some() {
        let classes = enumerate_classes(&filter, &opts)?;
        let lines: Vec<String> = classes.iter().map(|c| c.form.cert.clone()).collect();
        return Ok(Outcome::raw(lines.join("\n")));
    }
    let cached = config.cache_dir.as_deref().and_then(|d| cache_load(d, &filter));
    if let Some(entry) = &cached {
        if !args.extremal || entry.extremal.is_some() {
            return Ok(summary(entry, true, None));
        }
    }
    let (entry, extremal) = if args.extremal {
        let ext = extremal_rho(&filter, &opts, config.tol)?;
        let entry = CacheEntry {
            filter: filter.clone(),
            count: ext.count,
            extremal: Some(ext.graph.clone()),
            bracket: Some(ext.result.bracket),
        };
        (entry, Some(ext))
    } else {
        let count = enumerate_classes(&filter, &opts)?.len();
        let entry = CacheEntry {
            filter: filter.clone(),
            count,
            extremal: None,
            bracket: None,
        };
        (entry, None)
    };
    if let Some(dir) = &config.cache_dir {
        cache_store(dir, &entry)?;
    }
    Ok(summary(&entry, false, extremal.as_ref()))
}

fn summary(entry: &CacheEntry, cached: bool, ext: Option<&spectral_turan::enumerate::Extremal>) -> Outcome {
    let mut record = json!({
        "m": entry.filter.m,
        "filter": entry.filter.key(),
        "count": entry.count,
        "cached": cached,
    });
    let mut plain = format!("{}", entry.count);
    if let (Some(cert), Some(bracket)) = (&entry.extremal, entry.bracket) {
        record["extremal"] = json!(cert);
        record["bracket"] = json!(bracket);
        plain = format!("{plain}\n{cert} [{}, {}]", bracket[0], bracket[1]);
    }
    if let Some(ext) = ext {
        record["rho"] = json!(ext.result.rho);
        record["ties"] = json!(ext.ties);
        record["runners_up"] = json!(ext.runners_up);
    }
    Outcome::new(record, plain)
}

fn parse_range(s: &str) -> anyhow::Result<Vec<usize>> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| usage(format!("--m-range expects a..b, got {s:?}")))?;
    let b = b.trim_start_matches('=');
    let lo: usize = a.trim().parse().map_err(|_| usage(format!("bad range start {a:?}")))?;
    let hi: usize = b.trim().parse().map_err(|_| usage(format!("bad range end {b:?}")))?;
    if lo > hi {
        return Err(usage(format!("empty range {s:?}")));
    }
    Ok((lo..=hi).collect())
}

fn verify(args: VerifyArgs, config: &CliConfig) -> anyhow::Result<Outcome> {
    let suite: Suite = args.suite.parse().map_err(|e: Error| usage(e.to_string()))?;
    let ms = match (args.m, &args.m_range) {
        (Some(m), None) => vec![m],
        (None, Some(r)) => parse_range(r)?,
        _ => return Err(usage("verify needs --m or --m-range")),
    };
    let opts = SuiteOptions {
        enumeration: enum_options(config, args.allow_large),
    };
    let report = run_suite(suite, &ms, &opts)?.param("config", config);
    let status = report.status();
    let mut plain = format!("{}: {}", report.suite, status_word(status));
    for c in &report.claims {
        plain.push_str(&format!("\n{:<17} {}", status_word(c.status), c.statement));
    }
    for w in &report.warnings {
        plain.push_str(&format!("\nwarning {}: {}", w.code, w.message));
    }
    let mut record = serde_json::to_value(&report)?;
    record["status"] = serde_json::to_value(status)?;
    Ok(Outcome {
        failed: report.has_failures(),
        ..Outcome::new(record, plain)
    })
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Holds => "holds",
        Status::Fails => "fails",
        Status::OutOfHypothesis => "out-of-hypothesis",
    }
}
