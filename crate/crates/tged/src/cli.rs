//! Command-line front end.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use tged_core::contraction::t_centrality_node_contraction;
use tged_core::ged::{brute_force_ged, ged, t_centrality_ged_per_graph};
use tged_core::{CentralityMeasure, GedResult, Graph, SearchSpec, SlotPolicy};

use crate::config::{CostConfig, HeuristicChoice, SearchChoice};
use crate::dataset::{
    corpus_stats, data_root_from_env, parse_graph_text, parse_gxl, pooled_stats, synthesize_split, write_graph, Corpus,
    CorpusStats, KnownDataset, Schema, Split, SynthParams, DATA_ROOT_ENV,
};
use crate::eval::{
    harness_contraction_options, nn_classify, run_timing_benchmark, search_label, summarize, write_csv,
    BenchmarkConfig, BenchmarkSummary, ClassificationResult, ClassifyConfig, TLevel,
};

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const RUNTIME: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const PARSE: u8 = 3;
    pub const CONFIG: u8 = 4;
    pub const DATASET: u8 = 5;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Dataset(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Parse(_) => exit::PARSE,
            CliError::Config(_) => exit::CONFIG,
            CliError::Dataset(_) => exit::DATASET,
            CliError::Runtime(_) => exit::RUNTIME,
        }
    }
}

fn runtime(e: impl std::fmt::Display) -> CliError {
    CliError::Runtime(e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "tged",
    version,
    about = "Graph edit distance with centrality-based node contraction"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Contract the least central nodes of one graph.
    ///
    /// The contracted graph is written in the text format (stdout unless
    /// --out is given); the contraction report is written as JSON to
    /// --report, or to stderr.
    Contract(ContractArgs),
    /// Edit distance between two graphs, optionally after contraction.
    Ged(GedArgs),
    /// Exact edit distance by exhaustive enumeration (small graphs only).
    #[command(hide = true)]
    Oracle(OracleArgs),
    /// Timing benchmark over sampled graph pairs, per measure and level.
    #[command(after_help = BENCHMARK_EXAMPLES)]
    Benchmark(BenchmarkArgs),
    /// Nearest-neighbour classification of a test split against a train split.
    #[command(after_help = CLASSIFY_EXAMPLES)]
    Classify(ClassifyArgs),
    /// Graph counts, average order and size, and class histograms.
    Stats(StatsArgs),
}

const BENCHMARK_EXAMPLES: &str = "\
Examples:
  # Letter (HIGH distortion), exact search, CSV of every run plus a JSON summary
  tged benchmark --dataset letter-high --data-root /data/iam --csv letter.csv --summary letter.json

  # AIDS, beam search with w = 10, 200 pairs, degree and PageRank only
  TGED_DATA_ROOT=/data/iam tged benchmark --dataset aids --search beam --width 10 --sample 200 --measures degree,pagerank

  # Synthetic Letter-like corpus, no download needed
  tged benchmark --dataset synthetic --distortion 0.3 --sample 100 --seed 7 --workers 4";

const CLASSIFY_EXAMPLES: &str = "\
Examples:
  tged classify --dataset letter-high --data-root /data/iam --levels T0,T1* --out letter-acc.json
  TGED_DATA_ROOT=/data/iam tged classify --dataset aids --measures degree --max-test 300
  tged classify --dataset synthetic --distortion 0.3 --workers 4";

fn parse_measure(s: &str) -> Result<CentralityMeasure, String> {
    s.parse()
        .map_err(|_| format!("unknown measure '{s}' (degree, betweenness, eigenvector, pagerank)"))
}

fn parse_level(s: &str) -> Result<TLevel, String> {
    s.parse()
}

#[derive(Debug, Args)]
pub struct GraphInput {
    /// How GXL node attributes are read.
    #[arg(long, value_enum, default_value_t = Schema::Auto)]
    pub schema: Schema,
}

#[derive(Debug, Args)]
pub struct Budget {
    /// Number of nodes to contract on each side.
    #[arg(long, conflicts_with = "level")]
    pub t: Option<usize>,
    /// Contraction level (T0, T1*, T2*, T3*); t is then computed per graph.
    #[arg(long, value_parser = parse_level)]
    pub level: Option<TLevel>,
}

impl Budget {
    fn t_for(&self, g: &Graph) -> Option<usize> {
        match (self.t, self.level) {
            (Some(t), _) => Some(t),
            (None, Some(l)) => Some(l.t_for(g)),
            (None, None) => None,
        }
    }
}

#[derive(Debug, Args)]
pub struct ContractArgs {
    /// Graph file (GXL or text format).
    pub graph: PathBuf,
    #[arg(long, value_parser = parse_measure, default_value = "degree")]
    pub measure: CentralityMeasure,
    #[command(flatten)]
    pub budget: Budget,
    /// Re-rank the remaining nodes after every deletion.
    #[arg(long)]
    pub recompute: bool,
    /// Count skipped cut vertices against the budget.
    #[arg(long)]
    pub strict: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[command(flatten)]
    pub input: GraphInput,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// TOML file with cost and search settings; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub search: Option<SearchChoice>,
    /// Beam width (used with --search beam).
    #[arg(long)]
    pub width: Option<usize>,
    #[arg(long, value_enum)]
    pub heuristic: Option<HeuristicChoice>,
}

impl SearchArgs {
    fn resolve(&self, default_search: SearchChoice) -> Result<CostConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => CostConfig::load(path).map_err(|e| CliError::Config(e.to_string()))?,
            None => CostConfig {
                search: default_search,
                ..CostConfig::default()
            },
        };
        if let Some(s) = self.search {
            cfg.search = s;
        }
        if let Some(w) = self.width {
            cfg.beam_width = w;
        }
        if let Some(h) = self.heuristic {
            cfg.heuristic = h;
        }
        cfg.validate().map_err(|e| CliError::Config(e.to_string()))?;
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
pub struct GedArgs {
    pub graph1: PathBuf,
    pub graph2: PathBuf,
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long, value_parser = parse_measure, default_value = "degree")]
    pub measure: CentralityMeasure,
    #[command(flatten)]
    pub budget: Budget,
    /// Print the result as JSON.
    #[arg(long)]
    pub json: bool,
    #[command(flatten)]
    pub input: GraphInput,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    pub graph1: PathBuf,
    pub graph2: PathBuf,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub input: GraphInput,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum DatasetChoice {
    LetterHigh,
    Aids,
    Synthetic,
}

#[derive(Debug, Args)]
pub struct DatasetArgs {
    #[arg(long, value_enum)]
    pub dataset: DatasetChoice,
    /// Directory containing Letter/ and AIDS/.
    #[arg(long, env = DATA_ROOT_ENV)]
    pub data_root: Option<PathBuf>,
    /// Keep only graphs of this class.
    #[arg(long)]
    pub class: Option<String>,
    /// Synthetic corpus: number of classes.
    #[arg(long, default_value_t = 15)]
    pub classes: usize,
    /// Synthetic corpus: graphs per class in each split.
    #[arg(long, default_value_t = 10)]
    pub per_class: usize,
    /// Synthetic corpus: coordinate noise and edge-edit probability.
    #[arg(long, default_value_t = 0.3)]
    pub distortion: f64,
}

impl DatasetArgs {
    fn load(&self, split: Split, seed: u64) -> Result<Corpus, CliError> {
        let corpus = match self.dataset {
            DatasetChoice::Synthetic => {
                if self.classes == 0 || self.per_class == 0 {
                    return Err(CliError::Usage("--classes and --per-class must be at least 1".into()));
                }
                if !(self.distortion.is_finite() && self.distortion >= 0.0) {
                    return Err(CliError::Usage("--distortion must be non-negative".into()));
                }
                let (train, test) = synthesize_split(SynthParams {
                    seed,
                    classes: self.classes,
                    distortion: self.distortion,
                    train_per_class: self.per_class,
                    test_per_class: self.per_class,
                });
                match split {
                    Split::Train => train,
                    Split::Test => test,
                    Split::Validation => {
                        return Err(CliError::Usage("the synthetic corpus has no validation split".into()))
                    }
                }
            }
            DatasetChoice::LetterHigh => self.load_known(KnownDataset::LetterHigh, split)?,
            DatasetChoice::Aids => self.load_known(KnownDataset::Aids, split)?,
        };
        Ok(match &self.class {
            Some(c) => corpus.filter_class(c),
            None => corpus,
        })
    }

    fn load_known(&self, which: KnownDataset, split: Split) -> Result<Corpus, CliError> {
        let root = self.data_root.clone().or_else(data_root_from_env).ok_or_else(|| {
            CliError::Dataset(format!(
                "no dataset root: pass --data-root or set {DATA_ROOT_ENV} (or use --dataset synthetic)"
            ))
        })?;
        let index = which.index_path(&root, split);
        if !index.is_file() {
            return Err(CliError::Dataset(format!(
                "{} index not found at {} (check --data-root / {DATA_ROOT_ENV})",
                which.name(),
                index.display()
            )));
        }
        which.load(&root, split).map_err(|e| CliError::Dataset(e.to_string()))
    }
}

#[derive(Debug, Args)]
pub struct BenchmarkArgs {
    #[command(flatten)]
    pub data: DatasetArgs,
    #[arg(long, value_enum, default_value_t = Split::Test)]
    pub split: Split,
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long, value_parser = parse_measure, value_delimiter = ',', default_value = "degree,betweenness,eigenvector,pagerank")]
    pub measures: Vec<CentralityMeasure>,
    #[arg(long, value_parser = parse_level, value_delimiter = ',', default_value = "T0,T1*,T2*,T3*")]
    pub levels: Vec<TLevel>,
    /// Number of graph pairs to sample.
    #[arg(long, default_value_t = 100)]
    pub sample: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (0: one per core).
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    /// Write one row per run here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Write the per measure/level means here as JSON.
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub data: DatasetArgs,
    #[arg(long, value_enum, default_value_t = Split::Train)]
    pub train_split: Split,
    #[arg(long, value_enum, default_value_t = Split::Test)]
    pub test_split: Split,
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long, value_parser = parse_measure, value_delimiter = ',', default_value = "degree,betweenness,eigenvector,pagerank")]
    pub measures: Vec<CentralityMeasure>,
    #[arg(long, value_parser = parse_level, value_delimiter = ',', default_value = "T0,T1*,T2*,T3*")]
    pub levels: Vec<TLevel>,
    /// Neighbours consulted per prediction.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Classify only the first N test graphs.
    #[arg(long)]
    pub max_test: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    /// Write the full result (predictions, confusion, accuracy table) here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[command(flatten)]
    pub data: DatasetArgs,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "train,validation,test")]
    pub splits: Vec<Split>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Reads a graph file: GXL when the extension is `.gxl` or the content
/// starts with `<`, the text format otherwise.
pub fn read_graph(path: &Path, schema: Schema) -> Result<Graph, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let is_xml = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("gxl"))
        || bytes.iter().find(|b| !b.is_ascii_whitespace()) == Some(&b'<');
    let parsed = if is_xml {
        parse_gxl(&bytes, schema).map_err(|e| e.to_string())
    } else {
        std::str::from_utf8(&bytes)
            .map_err(|e| e.to_string())
            .and_then(|text| parse_graph_text(text).map_err(|e| e.to_string()))
    };
    parsed.map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| runtime(format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(runtime),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("outputs serialize");
    s.push('\n');
    s
}

fn cmd_contract(a: &ContractArgs) -> Result<(), CliError> {
    let g = read_graph(&a.graph, a.input.schema)?;
    let t = a.budget.t_for(&g).unwrap_or(0);
    let mut opts = harness_contraction_options();
    opts.recompute = a.recompute;
    opts.slots = if a.strict {
        SlotPolicy::Strict
    } else {
        SlotPolicy::Permissive
    };
    let (contracted, report) = t_centrality_node_contraction(&g, t, a.measure, &opts).map_err(runtime)?;
    write_output(a.out.as_deref(), &write_graph(&contracted))?;
    let json = to_json(&report);
    match &a.report {
        Some(p) => write_output(Some(p), &json),
        None => std::io::stderr().write_all(json.as_bytes()).map_err(runtime),
    }
}

#[derive(Serialize)]
struct GedOutput<'a> {
    search: String,
    measure: Option<CentralityMeasure>,
    t1: Option<usize>,
    t2: Option<usize>,
    elapsed_ms: f64,
    #[serde(flatten)]
    result: &'a GedResult,
}

fn cmd_ged(a: &GedArgs) -> Result<(), CliError> {
    let g1 = read_graph(&a.graph1, a.input.schema)?;
    let g2 = read_graph(&a.graph2, a.input.schema)?;
    let cfg = a.search.resolve(SearchChoice::Astar)?;
    let cm = cfg.cost_model().map_err(|e| CliError::Config(e.to_string()))?;
    let spec = cfg.search_spec();
    let (t1, t2) = (a.budget.t_for(&g1), a.budget.t_for(&g2));
    let start = Instant::now();
    let result = match (t1, t2) {
        (Some(t1), Some(t2)) => {
            t_centrality_ged_per_graph(&g1, t1, &g2, t2, a.measure, &cm, &spec, &harness_contraction_options())
        }
        _ => ged(&g1, &g2, &cm, &spec),
    }
    .map_err(runtime)?;
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let out = GedOutput {
        search: search_label(&spec),
        measure: t1.map(|_| a.measure),
        t1,
        t2,
        elapsed_ms,
        result: &result,
    };
    if a.json {
        return write_output(None, &to_json(&out));
    }
    let mut text = format!(
        "cost: {}\nsearch: {}\nexpanded_nodes: {}\nelapsed_ms: {:.3}\n",
        result.cost, out.search, result.expanded_nodes, elapsed_ms
    );
    if let Some((r1, r2)) = &result.contraction {
        text += &format!(
            "contracted: {} of t1={} / {} of t2={} ({})\n",
            r1.removed.len(),
            r1.t_requested,
            r2.removed.len(),
            r2.t_requested,
            a.measure
        );
    }
    text += "operations:\n";
    for op in &result.path.operations {
        text += &format!("  {:<9} {:<24} {}\n", op_name(&op.kind), op.kind.to_string(), op.cost);
    }
    write_output(None, &text)
}

fn op_name(k: &tged_core::EditKind) -> &'static str {
    use tged_core::EditKind::*;
    match k {
        NodeSub { .. } => "node_sub",
        NodeDel { .. } => "node_del",
        NodeIns { .. } => "node_ins",
        EdgeSub { .. } => "edge_sub",
        EdgeDel { .. } => "edge_del",
        EdgeIns { .. } => "edge_ins",
    }
}

fn cmd_oracle(a: &OracleArgs) -> Result<(), CliError> {
    let g1 = read_graph(&a.graph1, a.input.schema)?;
    let g2 = read_graph(&a.graph2, a.input.schema)?;
    let cfg = match &a.config {
        Some(p) => CostConfig::load(p).map_err(|e| CliError::Config(e.to_string()))?,
        None => CostConfig::default(),
    };
    let cm = cfg.cost_model().map_err(|e| CliError::Config(e.to_string()))?;
    let cost = brute_force_ged(&g1, &g2, &cm).map_err(|e| CliError::Usage(e.to_string()))?;
    write_output(None, &format!("{cost}\n"))
}

fn cmd_benchmark(a: &BenchmarkArgs) -> Result<(), CliError> {
    let corpus = a.data.load(a.split, a.seed)?;
    let cfg = a.search.resolve(SearchChoice::Astar)?;
    let bench = BenchmarkConfig {
        measures: a.measures.clone(),
        levels: a.levels.clone(),
        search: cfg.search_spec(),
        cost: cfg.cost_model().map_err(|e| CliError::Config(e.to_string()))?,
        contraction: harness_contraction_options(),
        sample: a.sample,
        seed: a.seed,
        workers: a.workers,
    };
    if bench.sample == 0 {
        return Err(CliError::Usage("--sample must be at least 1".into()));
    }
    let records = run_timing_benchmark(&corpus, &bench).map_err(|e| match e {
        crate::eval::EvalError::EmptyCorpus(_) => CliError::Dataset(e.to_string()),
        other => runtime(other),
    })?;
    if let Some(p) = &a.csv {
        let file = std::fs::File::create(p).map_err(|e| runtime(format!("{}: {e}", p.display())))?;
        write_csv(&records, std::io::BufWriter::new(file)).map_err(runtime)?;
    }
    let summary = BenchmarkSummary {
        dataset: corpus.name.clone(),
        search: search_label(&bench.search),
        sample: bench.sample,
        seed: bench.seed,
        rows: summarize(&records),
    };
    if let Some(p) = &a.summary {
        write_output(Some(p), &to_json(&summary))?;
    }
    let mut text = format!(
        "dataset {} ({} graphs), {} pairs, search {}\n{:<12} {:<5} {:>6} {:>16} {:>14} {:>12} {:>12}\n",
        corpus.name,
        corpus.len(),
        bench.sample,
        summary.search,
        "measure",
        "level",
        "runs",
        "mean_expanded",
        "mean_ms",
        "mean_cost",
        "mean_removed"
    );
    for r in &summary.rows {
        text += &format!(
            "{:<12} {:<5} {:>6} {:>16.2} {:>14.4} {:>12.4} {:>12.2}\n",
            r.measure.name(),
            r.level.name(),
            r.runs,
            r.mean_expanded_nodes,
            r.mean_elapsed_ms,
            r.mean_cost,
            r.mean_removed
        );
    }
    write_output(None, &text)
}

#[derive(Serialize)]
pub struct AccuracyRow {
    pub measure: CentralityMeasure,
    pub level: TLevel,
    pub accuracy: f64,
}

#[derive(Serialize)]
pub struct ClassificationReport {
    pub dataset: String,
    pub search: String,
    pub k: usize,
    pub train_size: usize,
    pub test_size: usize,
    pub accuracy: Vec<AccuracyRow>,
    pub results: Vec<ClassificationResult>,
}

fn cmd_classify(a: &ClassifyArgs) -> Result<(), CliError> {
    let train = a.data.load(a.train_split, a.seed)?;
    let mut test = a.data.load(a.test_split, a.seed)?;
    if let Some(n) = a.max_test {
        test.graphs.truncate(n);
    }
    if train.is_empty() {
        return Err(CliError::Dataset(format!(
            "training split of '{}' is empty",
            train.name
        )));
    }
    if a.k == 0 {
        return Err(CliError::Usage("--k must be at least 1".into()));
    }
    let cfg = a.search.resolve(SearchChoice::Beam)?;
    let spec: SearchSpec = cfg.search_spec();
    let cost = cfg.cost_model().map_err(|e| CliError::Config(e.to_string()))?;
    let mut results = Vec::new();
    for &measure in &a.measures {
        for &level in &a.levels {
            let c = ClassifyConfig {
                measure,
                level,
                search: spec,
                cost,
                contraction: harness_contraction_options(),
                k: a.k,
                workers: a.workers,
            };
            results.push(nn_classify(&train, &test, &c).map_err(runtime)?);
        }
    }
    let report = ClassificationReport {
        dataset: train.name.clone(),
        search: search_label(&spec),
        k: a.k,
        train_size: train.len(),
        test_size: test.len(),
        accuracy: results
            .iter()
            .map(|r| AccuracyRow {
                measure: r.measure,
                level: r.level,
                accuracy: r.accuracy,
            })
            .collect(),
        results,
    };
    if let Some(p) = &a.out {
        write_output(Some(p), &to_json(&report))?;
    }
    let mut text = format!(
        "dataset {}: {} train, {} test, search {}, k = {}\n",
        report.dataset, report.train_size, report.test_size, report.search, report.k
    );
    for r in &report.accuracy {
        text += &format!(
            "{:<12} {:<4} accuracy {:.4}\n",
            r.measure.name(),
            r.level.name(),
            r.accuracy
        );
    }
    write_output(None, &text)
}

#[derive(Serialize)]
struct SplitStats {
    split: Split,
    #[serde(flatten)]
    stats: CorpusStats,
}

#[derive(Serialize)]
struct StatsReport {
    dataset: String,
    splits: Vec<SplitStats>,
    pooled: CorpusStats,
}

fn cmd_stats(a: &StatsArgs) -> Result<(), CliError> {
    let corpora = a
        .splits
        .iter()
        .map(|&s| a.data.load(s, a.seed))
        .collect::<Result<Vec<_>, _>>()?;
    let report = StatsReport {
        dataset: corpora.first().map(|c| c.name.clone()).unwrap_or_default(),
        splits: corpora
            .iter()
            .map(|c| SplitStats {
                split: c.split,
                stats: corpus_stats(c),
            })
            .collect(),
        pooled: pooled_stats(&corpora),
    };
    write_output(None, &to_json(&report))
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Contract(a) => cmd_contract(a),
        Command::Ged(a) => cmd_ged(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Benchmark(a) => cmd_benchmark(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Stats(a) => cmd_stats(a),
    }
}

/// Parses arguments, runs the command, and maps failures to exit codes.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::from(exit::OK),
        Err(e) => {
            eprintln!("tged: {e}");
            ExitCode::from(e.code())
        }
    }
}
