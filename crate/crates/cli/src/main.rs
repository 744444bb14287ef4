use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use matchavg::enumerate::{free_trees, shard, small_graphs};
use matchavg::graph6::{parse_edge_list, parse_graph6, write_graph6};
use matchavg::harness::{
    self, default_alphas, parse_alpha, parse_range, render, search_weighted_counterexamples, CorpusKind, Format,
    Partition, RunConfig, Settings, Theorem, EXIT_IO, EXIT_USAGE,
};
use matchavg::ratio::json_uint;
use matchavg::spectral::{
    check_count_bounds, check_energy_bound, matching_energy, matching_polynomial, real_roots,
    DEFAULT_ROOT_TOLERANCE,
};
use matchavg::stats::{average_size, matching_number, partial_stats, total_count, total_size, weighted_stats};
use matchavg::{matching_profile, BigRational as Rational, Family, Graph};

#[derive(Parser)]
#[command(name = "matchavg", version, about = "Exact average matching size of graphs and theorem sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Matching profile, totals and averages of one graph.
    Stats(StatsArgs),
    /// Matching polynomial and its zeros.
    Poly(PolyArgs),
    /// Matching energy and the Hosoya-index bounds for one graph.
    Energy(EnergyArgs),
    /// Dump a corpus of trees or graphs.
    Enumerate(EnumerateArgs),
    /// Verify theorems over exhaustive corpora.
    Verify(VerifyArgs),
    /// Scan trees for weighted averages above the path when alpha > 1.
    Search(SearchArgs),
}

#[derive(Args)]
struct GraphInput {
    /// Graph in graph6 format.
    #[arg(long)]
    graph6: Option<String>,
    /// File in edge-list format: `n m` then one `u v` per line.
    #[arg(long)]
    edge_list: Option<PathBuf>,
    /// Named family: path, star, cycle, complete, edgeless, spider.
    #[arg(long)]
    family: Option<Family>,
    /// Order of the named family (leg count for spiders).
    #[arg(long = "n")]
    n: Option<usize>,
}

#[derive(Args)]
struct Output {
    /// json or csv.
    #[arg(long)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct StatsArgs {
    #[command(flatten)]
    input: GraphInput,
    /// Weights for the weighted averages, e.g. `1/2,2`.
    #[arg(long, value_delimiter = ',', value_parser = parse_alpha)]
    alpha: Vec<Rational>,
    /// Also report partial sums up to this matching size.
    #[arg(long)]
    k: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct PolyArgs {
    #[command(flatten)]
    input: GraphInput,
    /// Root isolation tolerance.
    #[arg(long, default_value_t = DEFAULT_ROOT_TOLERANCE)]
    tol: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct EnergyArgs {
    #[command(flatten)]
    input: GraphInput,
    #[arg(long, value_delimiter = ',', value_parser = parse_alpha)]
    alpha: Vec<Rational>,
    #[arg(long, default_value_t = DEFAULT_ROOT_TOLERANCE)]
    tol: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Order of the generated graphs.
    #[arg(long)]
    n: usize,
    /// trees, graphs or connected.
    #[arg(long, default_value = "trees", value_parser = parse_kind)]
    corpus: CorpusKind,
    /// Output format; only graph6 is supported.
    #[arg(long, default_value = "graph6", value_parser = ["graph6"])]
    emit: String,
    /// Print only the number of graphs.
    #[arg(long)]
    count: bool,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long)]
    worker_id: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Theorem id, or `all`.
    #[arg(long)]
    theorem: Option<String>,
    /// Order range such as `2..10`.
    #[arg(long = "n")]
    n: Option<String>,
    /// graphs, connected or trees.
    #[arg(long)]
    corpus: Option<String>,
    #[arg(long, value_delimiter = ',')]
    alpha: Option<Vec<String>>,
    #[arg(long)]
    tol: Option<f64>,
    /// Largest decimal precision for certified comparisons.
    #[arg(long)]
    precision: Option<u32>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    worker_id: Option<usize>,
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// TOML file with the same keys; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long = "n", default_value = "2..14", value_parser = parse_range)]
    n: std::ops::RangeInclusive<usize>,
    #[arg(long, value_delimiter = ',', value_parser = parse_alpha)]
    alpha: Vec<Rational>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long)]
    worker_id: Option<usize>,
    #[command(flatten)]
    output: Output,
}

/// Keys accepted in a `--config` file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct FileConfig {
    theorem: Option<String>,
    n: Option<String>,
    corpus: Option<String>,
    alpha: Option<Vec<String>>,
    tol: Option<f64>,
    precision: Option<u32>,
    workers: Option<usize>,
    #[serde(alias = "worker_id")]
    worker_id: Option<usize>,
    format: Option<String>,
    out: Option<PathBuf>,
}

fn parse_kind(s: &str) -> Result<CorpusKind, String> {
    CorpusKind::parse(s).ok_or_else(|| format!("unknown corpus `{s}` (expected trees, graphs or connected)"))
}

enum Failure {
    Usage(String),
    Io(String),
}

impl From<matchavg::GraphError> for Failure {
    fn from(e: matchavg::GraphError) -> Failure {
        Failure::Usage(e.to_string())
    }
}

fn read_graph(input: &GraphInput) -> Result<Graph, Failure> {
    match (&input.graph6, &input.edge_list, input.family) {
        (Some(g6), None, None) => Ok(parse_graph6(g6)?),
        (None, Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            Ok(parse_edge_list(&text)?)
        }
        (None, None, Some(family)) => {
            let n = input.n.ok_or_else(|| Failure::Usage("--family needs --n".into()))?;
            Ok(Graph::named(family, n)?)
        }
        _ => Err(Failure::Usage("give exactly one of --graph6, --edge-list, --family".into())),
    }
}

fn g6(g: &Graph) -> String {
    write_graph6(g).unwrap_or_default()
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::Io(e.to_string())),
    }
}

fn emit_records(records: &[Value], output: &Output) -> Result<(), Failure> {
    let text = match output.format.unwrap_or_default() {
        Format::Json if records.len() == 1 => serde_json::to_string(&records[0]).expect("json") + "\n",
        Format::Json => serde_json::to_string(records).expect("json") + "\n",
        Format::Csv => csv(records),
    };
    emit(&text, output.out.as_deref())
}

/// Flat CSV of the scalar fields. Ratios are written as `p/q`, other nested
/// values as JSON.
fn csv(records: &[Value]) -> String {
    let Some(Value::Object(first)) = records.first() else {
        return String::new();
    };
    let keys: Vec<&String> = first.keys().collect();
    let mut out = keys.iter().map(|k| k.as_str()).collect::<Vec<_>>().join(",") + "\n";
    for r in records {
        let cells: Vec<String> = keys
            .iter()
            .map(|k| match &r[k.as_str()] {
                Value::String(s) => s.clone(),
                Value::Null => String::new(),
                Value::Object(o) if o.len() == 2 && o.contains_key("num") && o.contains_key("den") => {
                    let part = |v: &Value| v.as_str().map_or_else(|| v.to_string(), str::to_string);
                    format!("{}/{}", part(&o["num"]), part(&o["den"]))
                }
                v => v.to_string(),
            })
            .map(|c| if c.contains([',', '"', '\n']) { format!("\"{}\"", c.replace('"', "\"\"")) } else { c })
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn ratio_json(r: &matchavg::ExactRatio) -> Value {
    serde_json::to_value(r).expect("json")
}

fn stats(args: StatsArgs) -> Result<i32, Failure> {
    let g = read_graph(&args.input)?;
    let p = matching_profile(&g);
    let mut record = json!({
        "graph6": g6(&g),
        "n": g.n(),
        "profile": p.counts().iter().map(json_uint).collect::<Vec<_>>(),
        "M": json_uint(&total_count(&p)),
        "S": json_uint(&total_size(&p)),
        "av": ratio_json(&average_size(&p)),
        "mu": matching_number(&p),
    });
    if let Some(k) = args.k {
        let ps = partial_stats(&p, k);
        record["partial"] = json!({ "k": k, "M_k": json_uint(&ps.m_k), "S_k": json_uint(&ps.s_k), "av_k": ratio_json(&ps.av_k) });
    }
    if !args.alpha.is_empty() {
        let weighted: Vec<Value> = args
            .alpha
            .iter()
            .map(|a| {
                let w = weighted_stats(&p, a).expect("positive alpha");
                json!({
                    "alpha": a.to_string(),
                    "M_alpha": ratio_json(&w.m_alpha.clone().into()),
                    "S_alpha": ratio_json(&w.s_alpha.clone().into()),
                    "av_alpha": ratio_json(&w.av_alpha),
                })
            })
            .collect();
        record["weighted"] = Value::Array(weighted);
    }
    emit_records(&[record], &args.output)?;
    Ok(0)
}

fn poly(args: PolyArgs) -> Result<i32, Failure> {
    let g = read_graph(&args.input)?;
    let p = matching_profile(&g);
    let phi = matching_polynomial(&p, g.n()).map_err(|e| Failure::Usage(e.to_string()))?;
    let spectrum = real_roots(&phi, args.tol).map_err(|e| Failure::Usage(e.to_string()))?;
    let record = json!({
        "graph6": g6(&g),
        "n": g.n(),
        "polynomial": phi.to_sparse_text(),
        "roots": spectrum.roots,
        "tolerance": spectrum.tolerance,
        "zero_count": spectrum.zero_count,
        "matching_energy": matching_energy(&spectrum),
    });
    emit_records(&[record], &args.output)?;
    Ok(0)
}

fn energy(args: EnergyArgs) -> Result<i32, Failure> {
    let g = read_graph(&args.input)?;
    let mut reports = vec![check_energy_bound(&g, None, args.tol).map_err(|e| Failure::Usage(e.to_string()))?];
    for a in &args.alpha {
        reports.push(check_energy_bound(&g, Some(a), args.tol).map_err(|e| Failure::Usage(e.to_string()))?);
    }
    reports.extend(check_count_bounds(&g));
    let violated = reports.iter().any(|r| r.slack < -matchavg::spectral::DEFAULT_INEQUALITY_TOLERANCE);
    let records: Vec<Value> = reports.iter().map(|r| serde_json::to_value(r).expect("json")).collect();
    emit_records(&records, &args.output)?;
    Ok(if violated { 1 } else { 0 })
}

fn enumerate(args: EnumerateArgs) -> Result<i32, Failure> {
    let usage = |e: matchavg::EnumerationError| Failure::Usage(e.to_string());
    let stream: Box<dyn Iterator<Item = Graph>> = match args.corpus {
        CorpusKind::Trees => Box::new(free_trees(args.n).map_err(usage)?),
        CorpusKind::Graphs => Box::new(small_graphs(args.n, false).map_err(usage)?),
        CorpusKind::Connected => Box::new(small_graphs(args.n, true).map_err(usage)?),
    };
    let stream: Box<dyn Iterator<Item = Graph>> = match args.worker_id {
        Some(id) => Box::new(shard(stream, args.workers, id).map_err(usage)?),
        None if args.workers == 1 => stream,
        None => return Err(Failure::Usage("--workers needs --worker-id".into())),
    };
    let mut sink: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(std::io::BufWriter::new(
            std::fs::File::create(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
        )),
        None => Box::new(std::io::BufWriter::new(std::io::stdout().lock())),
    };
    let io = |e: std::io::Error| Failure::Io(e.to_string());
    if args.count {
        writeln!(sink, "{}", stream.count()).map_err(io)?;
    } else {
        for g in stream {
            let line = write_graph6(&g).map_err(|e| Failure::Usage(e.to_string()))?;
            writeln!(sink, "{line}").map_err(io)?;
        }
    }
    sink.flush().map_err(io)?;
    Ok(0)
}

fn verify(args: VerifyArgs) -> Result<i32, Failure> {
    let file = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            toml::from_str::<FileConfig>(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
        }
        None => FileConfig::default(),
    };
    let usage = Failure::Usage;
    let mut config = RunConfig::default();
    match args.theorem.or(file.theorem).as_deref() {
        None | Some("all") => {}
        Some(id) => config.theorems = vec![id.parse::<Theorem>().map_err(usage)?],
    }
    if let Some(n) = args.n.or(file.n) {
        config.n_range = Some(parse_range(&n).map_err(usage)?);
    }
    if let Some(c) = args.corpus.or(file.corpus) {
        config.corpus = Some(parse_kind(&c).map_err(usage)?);
    }
    if let Some(alphas) = args.alpha.or(file.alpha) {
        config.alphas = Some(alphas.iter().map(|a| parse_alpha(a)).collect::<Result<_, _>>().map_err(usage)?);
    }
    config.tolerance = args.tol.or(file.tol);
    if let Some(p) = args.precision.or(file.precision) {
        config.precision = p;
    }
    if let Some(w) = args.workers.or(file.workers) {
        config.workers = w;
    }
    config.worker_id = args.worker_id.or(file.worker_id);
    if let Some(f) = args.format.or(file.format) {
        config.format = f.parse().map_err(usage)?;
    }
    config.output_path = args.out.or(file.out);
    Ok(harness::run(&config))
}

fn search(args: SearchArgs) -> Result<i32, Failure> {
    let alphas = if args.alpha.is_empty() {
        default_alphas().into_iter().filter(|a| a > &Rational::from_integer(1.into())).collect()
    } else {
        args.alpha
    };
    if args.workers == 0 || args.worker_id.is_some_and(|id| id >= args.workers) {
        return Err(Failure::Usage("worker id out of range".into()));
    }
    if *args.n.start() < 1 || *args.n.end() > 22 {
        return Err(Failure::Usage("tree order range must lie in 1..22".into()));
    }
    let settings = Settings { partition: Partition { workers: args.workers, worker_id: args.worker_id }, ..Settings::default() };
    let report = search_weighted_counterexamples(args.n, &alphas, &settings).map_err(|e| Failure::Usage(e.to_string()))?;
    let text = render(std::slice::from_ref(&report), args.output.format.unwrap_or_default());
    emit(&text, args.output.out.as_deref())?;
    eprintln!("{} trees scanned, {} findings", report.corpus_size, report.observations.len());
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Stats(a) => stats(a),
        Command::Poly(a) => poly(a),
        Command::Energy(a) => energy(a),
        Command::Enumerate(a) => enumerate(a),
        Command::Verify(a) => verify(a),
        Command::Search(a) => search(a),
    };
    let code = match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            EXIT_IO
        }
    };
    ExitCode::from(code as u8)
}
