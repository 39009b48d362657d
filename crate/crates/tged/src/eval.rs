//! Experiment harness: per-pair timing benchmarks across centrality measures
//! and t* levels, and nearest-neighbour classification.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use tged_core::contraction::t_star_value;
use tged_core::ged::t_centrality_ged_per_graph;
use tged_core::{CentralityMeasure, ContractionOptions, CostModel, GedError, Graph, SearchKind, SearchSpec};

use crate::dataset::Corpus;

/// Contraction budget expressed as a k*-degree level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum TLevel {
    #[serde(rename = "T0")]
    T0,
    #[serde(rename = "T1*")]
    T1Star,
    #[serde(rename = "T2*")]
    T2Star,
    #[serde(rename = "T3*")]
    T3Star,
}

impl TLevel {
    pub const ALL: [TLevel; 4] = [TLevel::T0, TLevel::T1Star, TLevel::T2Star, TLevel::T3Star];

    pub fn k(self) -> usize {
        match self {
            TLevel::T0 => 0,
            TLevel::T1Star => 1,
            TLevel::T2Star => 2,
            TLevel::T3Star => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TLevel::T0 => "T0",
            TLevel::T1Star => "T1*",
            TLevel::T2Star => "T2*",
            TLevel::T3Star => "T3*",
        }
    }

    /// The contraction budget this level assigns to `g`.
    pub fn t_for(self, g: &Graph) -> usize {
        match self.k() {
            0 => 0,
            k => t_star_value(g, k),
        }
    }
}

impl fmt::Display for TLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TLevel {
    type Err = String;

    /// Accepts `T0`, `T1*`, `1*`, `t1star`, `1` and so on.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        let digits = lower
            .trim_start_matches('t')
            .trim_end_matches("star")
            .trim_end_matches('*');
        match digits {
            "0" => Ok(TLevel::T0),
            "1" => Ok(TLevel::T1Star),
            "2" => Ok(TLevel::T2Star),
            "3" => Ok(TLevel::T3Star),
            _ => Err(format!("unknown level '{s}' (expected T0, T1*, T2* or T3*)")),
        }
    }
}

pub fn t_star_levels(g: &Graph) -> BTreeMap<TLevel, usize> {
    TLevel::ALL.iter().map(|&l| (l, l.t_for(g))).collect()
}

/// Short label for a search spec, used in outputs: `astar` or `beam10`.
pub fn search_label(spec: &SearchSpec) -> String {
    match spec.kind {
        SearchKind::AStar => "astar".into(),
        SearchKind::Beam { width } => format!("beam{width}"),
    }
}

/// Contraction options used by the harness: eigenvector iteration is given
/// a much larger budget, since long path-like molecules converge slowly.
pub fn harness_contraction_options() -> ContractionOptions {
    let mut opts = ContractionOptions::default();
    opts.centrality.eigenvector.max_iter = 100_000;
    opts
}

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error("corpus '{0}' has fewer than two graphs")]
    EmptyCorpus(String),
    #[error("training corpus is empty")]
    EmptyTrain,
    #[error("sample size must be at least 1")]
    InvalidSample,
    #[error("k must be at least 1")]
    InvalidK,
    #[error("graph edit distance failed: {0}")]
    Ged(#[from] GedError),
    #[error("worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

/// Runs `f` on a pool of `workers` threads (0 means rayon's default).
fn with_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T, EvalError> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build()?;
    Ok(pool.install(f))
}

#[derive(Clone, Debug)]
pub struct BenchmarkConfig {
    pub measures: Vec<CentralityMeasure>,
    pub levels: Vec<TLevel>,
    pub search: SearchSpec,
    pub cost: CostModel,
    pub contraction: ContractionOptions,
    pub sample: usize,
    pub seed: u64,
    pub workers: usize,
}

impl Default for BenchmarkConfig {
    fn default() -> Self {
        BenchmarkConfig {
            measures: CentralityMeasure::ALL.to_vec(),
            levels: TLevel::ALL.to_vec(),
            search: SearchSpec::astar(),
            cost: CostModel::default(),
            contraction: harness_contraction_options(),
            sample: 100,
            seed: 0,
            workers: 0,
        }
    }
}

/// One GED run. CSV columns, in order:
/// `pair,g1,g2,measure,level,t1,t2,removed1,removed2,search,cost,elapsed_ms,expanded_nodes`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchmarkRecord {
    pub pair: usize,
    pub g1: String,
    pub g2: String,
    pub measure: CentralityMeasure,
    pub level: TLevel,
    /// Budgets requested on each side.
    pub t1: usize,
    pub t2: usize,
    /// Nodes actually contracted on each side.
    pub removed1: usize,
    pub removed2: usize,
    pub search: String,
    pub cost: f64,
    /// Wall time of contraction plus search.
    pub elapsed_ms: f64,
    pub expanded_nodes: usize,
}

fn graph_name(c: &Corpus, i: usize) -> String {
    c.graphs[i].name.clone().unwrap_or_else(|| format!("#{i}"))
}

/// Seeded sample of ordered pairs of distinct graph indices.
pub fn sample_pairs(n: usize, sample: usize, seed: u64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..sample)
        .map(|_| {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            (i, j)
        })
        .collect()
}

/// Runs every sampled pair under every measure and level. Records come back
/// ordered by pair, then measure, then level, regardless of worker count.
pub fn run_timing_benchmark(corpus: &Corpus, cfg: &BenchmarkConfig) -> Result<Vec<BenchmarkRecord>, EvalError> {
    if corpus.len() < 2 {
        return Err(EvalError::EmptyCorpus(corpus.name.clone()));
    }
    if cfg.sample == 0 {
        return Err(EvalError::InvalidSample);
    }
    let pairs = sample_pairs(corpus.len(), cfg.sample, cfg.seed);
    let mut jobs = Vec::new();
    for (p, &(i, j)) in pairs.iter().enumerate() {
        for &m in &cfg.measures {
            for &l in &cfg.levels {
                jobs.push((p, i, j, m, l));
            }
        }
    }
    let label = search_label(&cfg.search);
    let results: Vec<Result<BenchmarkRecord, GedError>> = with_pool(cfg.workers, || {
        jobs.par_iter()
            .map(|&(pair, i, j, measure, level)| {
                let (g1, g2) = (&corpus.graphs[i], &corpus.graphs[j]);
                let (t1, t2) = (level.t_for(g1), level.t_for(g2));
                let start = Instant::now();
                let r = t_centrality_ged_per_graph(g1, t1, g2, t2, measure, &cfg.cost, &cfg.search, &cfg.contraction)?;
                let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
                let (r1, r2) = r.contraction.as_ref().expect("contracted pipeline reports");
                Ok(BenchmarkRecord {
                    pair,
                    g1: graph_name(corpus, i),
                    g2: graph_name(corpus, j),
                    measure,
                    level,
                    t1,
                    t2,
                    removed1: r1.removed.len(),
                    removed2: r2.removed.len(),
                    search: label.clone(),
                    cost: r.cost,
                    elapsed_ms,
                    expanded_nodes: r.expanded_nodes,
                })
            })
            .collect()
    })?;
    Ok(results.into_iter().collect::<Result<_, _>>()?)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummaryRow {
    pub measure: CentralityMeasure,
    pub level: TLevel,
    pub runs: usize,
    pub mean_cost: f64,
    pub mean_elapsed_ms: f64,
    pub mean_expanded_nodes: f64,
    pub mean_removed: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchmarkSummary {
    pub dataset: String,
    pub search: String,
    pub sample: usize,
    pub seed: u64,
    pub rows: Vec<SummaryRow>,
}

/// Means per `(measure, level)`, sorted by measure then level.
pub fn summarize(records: &[BenchmarkRecord]) -> Vec<SummaryRow> {
    let mut groups: BTreeMap<(CentralityMeasure, TLevel), Vec<&BenchmarkRecord>> = BTreeMap::new();
    for r in records {
        groups.entry((r.measure, r.level)).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|((measure, level), rs)| {
            let n = rs.len() as f64;
            let mean = |f: &dyn Fn(&BenchmarkRecord) -> f64| rs.iter().map(|r| f(r)).sum::<f64>() / n;
            SummaryRow {
                measure,
                level,
                runs: rs.len(),
                mean_cost: mean(&|r| r.cost),
                mean_elapsed_ms: mean(&|r| r.elapsed_ms),
                mean_expanded_nodes: mean(&|r| r.expanded_nodes as f64),
                mean_removed: mean(&|r| (r.removed1 + r.removed2) as f64 / 2.0),
            }
        })
        .collect()
}

pub fn write_csv<W: Write>(records: &[BenchmarkRecord], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Clone, Debug)]
pub struct ClassifyConfig {
    pub measure: CentralityMeasure,
    pub level: TLevel,
    pub search: SearchSpec,
    pub cost: CostModel,
    pub contraction: ContractionOptions,
    /// Neighbours consulted; 1 is plain nearest neighbour.
    pub k: usize,
    pub workers: usize,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            measure: CentralityMeasure::Degree,
            level: TLevel::T0,
            search: SearchSpec::beam(crate::config::DEFAULT_BEAM_WIDTH),
            cost: CostModel::default(),
            contraction: harness_contraction_options(),
            k: 1,
            workers: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Prediction {
    pub test_index: usize,
    pub name: String,
    pub true_label: String,
    pub predicted: String,
    /// Distance to the nearest training graph.
    pub distance: f64,
    pub neighbour: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationResult {
    pub measure: CentralityMeasure,
    pub level: TLevel,
    pub search: String,
    pub k: usize,
    pub correct: usize,
    pub total: usize,
    pub accuracy: f64,
    pub predictions: Vec<Prediction>,
    /// `confusion[true][predicted]`.
    pub confusion: BTreeMap<String, BTreeMap<String, usize>>,
}

fn class_of(g: &Graph) -> String {
    g.class_label.clone().unwrap_or_default()
}

/// Majority class among `neighbours` (sorted nearest first); a tied vote
/// goes to the tied class whose best neighbour is nearest.
fn vote(neighbours: &[(f64, usize)], train: &Corpus) -> String {
    let mut counts: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for (rank, &(_, idx)) in neighbours.iter().enumerate() {
        let e = counts.entry(class_of(&train.graphs[idx])).or_insert((0, rank));
        e.0 += 1;
    }
    counts
        .into_iter()
        .max_by(|a, b| a.1 .0.cmp(&b.1 .0).then(b.1 .1.cmp(&a.1 .1)))
        .map(|(c, _)| c)
        .unwrap_or_default()
}

/// k-nearest-neighbour classification of `test` against `train` under the
/// contracted GED. Distance ties go to the lowest training index.
pub fn nn_classify(train: &Corpus, test: &Corpus, cfg: &ClassifyConfig) -> Result<ClassificationResult, EvalError> {
    if train.is_empty() {
        return Err(EvalError::EmptyTrain);
    }
    if cfg.k == 0 {
        return Err(EvalError::InvalidK);
    }
    let train_t: Vec<usize> = train.graphs.iter().map(|g| cfg.level.t_for(g)).collect();
    let rows: Vec<Result<Vec<(f64, usize)>, GedError>> = with_pool(cfg.workers, || {
        test.graphs
            .par_iter()
            .map(|g| {
                let t = cfg.level.t_for(g);
                let mut dists = Vec::with_capacity(train.len());
                for (j, h) in train.graphs.iter().enumerate() {
                    let r = t_centrality_ged_per_graph(
                        g,
                        t,
                        h,
                        train_t[j],
                        cfg.measure,
                        &cfg.cost,
                        &cfg.search,
                        &cfg.contraction,
                    )?;
                    dists.push((r.cost, j));
                }
                dists.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
                dists.truncate(cfg.k);
                Ok(dists)
            })
            .collect()
    })?;

    let mut predictions = Vec::with_capacity(test.len());
    let mut confusion: BTreeMap<String, BTreeMap<String, usize>> = BTreeMap::new();
    for (i, row) in rows.into_iter().enumerate() {
        let neighbours = row?;
        let predicted = vote(&neighbours, train);
        let true_label = class_of(&test.graphs[i]);
        *confusion
            .entry(true_label.clone())
            .or_default()
            .entry(predicted.clone())
            .or_insert(0) += 1;
        predictions.push(Prediction {
            test_index: i,
            name: graph_name(test, i),
            true_label,
            predicted,
            distance: neighbours[0].0,
            neighbour: neighbours[0].1,
        });
    }
    let correct = predictions.iter().filter(|p| p.predicted == p.true_label).count();
    let total = predictions.len();
    Ok(ClassificationResult {
        measure: cfg.measure,
        level: cfg.level,
        search: search_label(&cfg.search),
        k: cfg.k,
        correct,
        total,
        accuracy: if total == 0 { 0.0 } else { correct as f64 / total as f64 },
        predictions,
        confusion,
    })
}
