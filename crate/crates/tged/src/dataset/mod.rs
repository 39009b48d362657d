//! Graph corpora: IAM GXL/CXL ingestion, a plain-text graph format, and a
//! synthetic Letter-like generator for when the real data is not around.

mod gxl;
mod synth;
mod text;

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use tged_core::Graph;

pub use gxl::{parse_gxl, GxlError, Schema};
pub use synth::{synthesize_letter_like, synthesize_split, SynthParams};
pub use text::{parse_graph_text, write_graph, TextError};

/// Environment variable naming the directory that holds `Letter/` and `AIDS/`.
pub const DATA_ROOT_ENV: &str = "TGED_DATA_ROOT";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Validation,
    Test,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Corpus {
    pub name: String,
    pub split: Split,
    pub graphs: Vec<Graph>,
}

impl Corpus {
    pub fn new(name: impl Into<String>, split: Split) -> Self {
        Corpus {
            name: name.into(),
            split,
            graphs: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    /// Keeps only graphs of the given class.
    pub fn filter_class(mut self, class: &str) -> Self {
        self.graphs.retain(|g| g.class_label.as_deref() == Some(class));
        self
    }

    /// Checks that every graph is labelled and valid, and names are unique.
    pub fn validate(&self) -> Result<(), String> {
        let mut names = HashSet::new();
        for (i, g) in self.graphs.iter().enumerate() {
            if g.class_label.is_none() {
                return Err(format!("graph {i} has no class label"));
            }
            if let Some(name) = &g.name {
                if !names.insert(name) {
                    return Err(format!("duplicate graph name '{name}'"));
                }
            }
            g.validate().map_err(|e| format!("graph {i}: {e}"))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusStats {
    pub graph_count: usize,
    pub avg_nodes: f64,
    pub avg_edges: f64,
    pub class_histogram: BTreeMap<String, usize>,
}

pub fn corpus_stats(c: &Corpus) -> CorpusStats {
    stats_of(c.graphs.iter())
}

/// Statistics over several corpora pooled together.
pub fn pooled_stats<'a>(corpora: impl IntoIterator<Item = &'a Corpus>) -> CorpusStats {
    stats_of(corpora.into_iter().flat_map(|c| c.graphs.iter()))
}

fn stats_of<'a>(graphs: impl Iterator<Item = &'a Graph>) -> CorpusStats {
    let (mut count, mut nodes, mut edges) = (0usize, 0usize, 0usize);
    let mut class_histogram = BTreeMap::new();
    for g in graphs {
        count += 1;
        nodes += g.node_count();
        edges += g.edge_count();
        let class = g.class_label.clone().unwrap_or_default();
        *class_histogram.entry(class).or_insert(0) += 1;
    }
    let mean = |total: usize| if count == 0 { 0.0 } else { total as f64 / count as f64 };
    CorpusStats {
        graph_count: count,
        avg_nodes: mean(nodes),
        avg_edges: mean(edges),
        class_histogram,
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("cannot read index {path}: {source}")]
    Index { path: PathBuf, source: std::io::Error },
    #[error("malformed index: {0}")]
    MalformedIndex(String),
    #[error("{}", MemberList(.0))]
    Members(Vec<MemberFailure>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct MemberFailure {
    pub path: PathBuf,
    pub reason: String,
}

struct MemberList<'a>(&'a [MemberFailure]);

impl fmt::Display for MemberList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} corpus member(s) failed to load:", self.0.len())?;
        for m in self.0 {
            write!(f, "\n  {}: {}", m.path.display(), m.reason)?;
        }
        Ok(())
    }
}

/// `(file, class)` entries of a CXL index, in document order.
pub fn parse_cxl_entries(bytes: &[u8]) -> Result<Vec<(String, String)>, CorpusError> {
    let text = std::str::from_utf8(bytes).map_err(|e| CorpusError::MalformedIndex(e.to_string()))?;
    let opts = roxmltree::ParsingOptions {
        allow_dtd: true,
        ..Default::default()
    };
    let doc =
        roxmltree::Document::parse_with_options(text, opts).map_err(|e| CorpusError::MalformedIndex(e.to_string()))?;
    doc.descendants()
        .filter(|n| n.has_tag_name("print"))
        .map(|n| match (n.attribute("file"), n.attribute("class")) {
            (Some(file), Some(class)) => Ok((file.to_owned(), class.trim().to_owned())),
            _ => Err(CorpusError::MalformedIndex(format!(
                "<print> at byte {} lacks file or class",
                n.range().start
            ))),
        })
        .collect()
}

/// Loads every graph listed in a CXL index, resolving files against
/// `base_path`. All member failures are collected before reporting.
pub fn parse_cxl_index(
    bytes: &[u8],
    base_path: &Path,
    name: &str,
    split: Split,
    schema: Schema,
) -> Result<Corpus, CorpusError> {
    let entries = parse_cxl_entries(bytes)?;
    let loaded: Vec<Result<Graph, MemberFailure>> = entries
        .par_iter()
        .map(|(file, class)| {
            let path = base_path.join(file);
            let fail = |reason: String| MemberFailure {
                path: path.clone(),
                reason,
            };
            let data = std::fs::read(&path).map_err(|e| fail(e.to_string()))?;
            let mut g = parse_gxl(&data, schema).map_err(|e| fail(e.to_string()))?;
            g.name = Some(file.trim_end_matches(".gxl").to_owned());
            g.class_label = Some(class.clone());
            Ok(g)
        })
        .collect();
    let mut corpus = Corpus::new(name, split);
    let mut failures = Vec::new();
    for r in loaded {
        match r {
            Ok(g) => corpus.graphs.push(g),
            Err(f) => failures.push(f),
        }
    }
    if failures.is_empty() {
        Ok(corpus)
    } else {
        Err(CorpusError::Members(failures))
    }
}

pub fn load_cxl(path: &Path, name: &str, split: Split, schema: Schema) -> Result<Corpus, CorpusError> {
    let bytes = std::fs::read(path).map_err(|source| CorpusError::Index {
        path: path.to_owned(),
        source,
    })?;
    let base = path.parent().unwrap_or(Path::new("."));
    parse_cxl_index(&bytes, base, name, split, schema)
}

/// The IAM corpora this harness knows how to find under a data root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum KnownDataset {
    /// `Letter/HIGH/{train,validation,test}.cxl`
    LetterHigh,
    /// `AIDS/data/{train,valid,test}.cxl`
    Aids,
}

impl KnownDataset {
    pub fn name(self) -> &'static str {
        match self {
            KnownDataset::LetterHigh => "letter-high",
            KnownDataset::Aids => "aids",
        }
    }

    pub fn index_path(self, root: &Path, split: Split) -> PathBuf {
        match (self, split) {
            (KnownDataset::LetterHigh, Split::Train) => root.join("Letter/HIGH/train.cxl"),
            (KnownDataset::LetterHigh, Split::Validation) => root.join("Letter/HIGH/validation.cxl"),
            (KnownDataset::LetterHigh, Split::Test) => root.join("Letter/HIGH/test.cxl"),
            (KnownDataset::Aids, Split::Train) => root.join("AIDS/data/train.cxl"),
            (KnownDataset::Aids, Split::Validation) => root.join("AIDS/data/valid.cxl"),
            (KnownDataset::Aids, Split::Test) => root.join("AIDS/data/test.cxl"),
        }
    }

    pub fn schema(self) -> Schema {
        match self {
            KnownDataset::LetterHigh => Schema::Points,
            KnownDataset::Aids => Schema::Symbols,
        }
    }

    /// True when every split index exists under `root`.
    pub fn present(self, root: &Path) -> bool {
        [Split::Train, Split::Validation, Split::Test]
            .iter()
            .all(|s| self.index_path(root, *s).is_file())
    }

    pub fn load(self, root: &Path, split: Split) -> Result<Corpus, CorpusError> {
        load_cxl(&self.index_path(root, split), self.name(), split, self.schema())
    }
}

/// Data root from the environment, if set.
pub fn data_root_from_env() -> Option<PathBuf> {
    std::env::var_os(DATA_ROOT_ENV).map(PathBuf::from)
}
