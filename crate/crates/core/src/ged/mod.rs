//! Graph edit distance: cost model, exact best-first search, beam search,
//! and the contract-then-match pipeline.

mod cost;
mod oracle;
mod search;

use core::fmt;

pub use cost::{op_cost, CostModel, EdgeDistance, EdgeKey, EditKind, EditOperation, EditPath, NodeDistance};
pub use oracle::{brute_force_ged, ORACLE_MAX_NODES};
pub use search::{Heuristic, SearchKind, SearchSpec};

use crate::centrality::{CentralityError, CentralityMeasure};
use crate::contraction::{t_centrality_node_contraction, ContractionOptions, ContractionReport};
use crate::graph::{Graph, NodeId};

#[derive(Clone, Debug, PartialEq)]
pub enum GedError {
    MissingOperand(NodeId),
    MissingEdge(EdgeKey),
    OracleTooLarge(usize),
    InvalidCostModel(&'static str),
    InvalidBeamWidth,
    Centrality(CentralityError),
}

impl fmt::Display for GedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GedError::MissingOperand(u) => write!(f, "node {u} is not present in its graph"),
            GedError::MissingEdge((a, b)) => write!(f, "edge ({a}, {b}) is not present in its graph"),
            GedError::OracleTooLarge(n) => write!(
                f,
                "brute-force oracle limited to {ORACLE_MAX_NODES} nodes in total, got {n}"
            ),
            GedError::InvalidCostModel(msg) => write!(f, "invalid cost model: {msg}"),
            GedError::InvalidBeamWidth => f.write_str("beam width must be at least 1"),
            GedError::Centrality(e) => write!(f, "contraction failed: {e}"),
        }
    }
}

impl core::error::Error for GedError {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            GedError::Centrality(e) => Some(e),
            _ => None,
        }
    }
}

impl From<CentralityError> for GedError {
    fn from(e: CentralityError) -> Self {
        GedError::Centrality(e)
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GedResult {
    pub cost: f64,
    pub path: EditPath,
    /// Search states popped from the open set and expanded.
    pub expanded_nodes: usize,
    /// Reports for `(g1, g2)` when the pair was contracted first.
    pub contraction: Option<(ContractionReport, ContractionReport)>,
}

/// Exact GED by best-first search.
pub fn astar_ged(g1: &Graph, g2: &Graph, cm: &CostModel, heuristic: Heuristic) -> Result<GedResult, GedError> {
    search::run(g1, g2, cm, &SearchSpec::astar().with_heuristic(heuristic))
}

/// Beam search with width `w`; an upper bound on the exact GED.
pub fn beam_ged(g1: &Graph, g2: &Graph, cm: &CostModel, w: usize) -> Result<GedResult, GedError> {
    search::run(g1, g2, cm, &SearchSpec::beam(w))
}

pub fn ged(g1: &Graph, g2: &Graph, cm: &CostModel, spec: &SearchSpec) -> Result<GedResult, GedError> {
    search::run(g1, g2, cm, spec)
}

/// Contracts `t` least-central nodes of each graph, then matches what is
/// left. Contracted nodes and their edges contribute nothing to the cost.
pub fn t_centrality_ged(
    g1: &Graph,
    g2: &Graph,
    t: usize,
    measure: CentralityMeasure,
    cm: &CostModel,
    spec: &SearchSpec,
    opts: &ContractionOptions,
) -> Result<GedResult, GedError> {
    t_centrality_ged_per_graph(g1, t, g2, t, measure, cm, spec, opts)
}

/// As [`t_centrality_ged`] with a separate budget for each side.
#[allow(clippy::too_many_arguments)]
pub fn t_centrality_ged_per_graph(
    g1: &Graph,
    t1: usize,
    g2: &Graph,
    t2: usize,
    measure: CentralityMeasure,
    cm: &CostModel,
    spec: &SearchSpec,
    opts: &ContractionOptions,
) -> Result<GedResult, GedError> {
    let (c1, r1) = t_centrality_node_contraction(g1, t1, measure, opts)?;
    let (c2, r2) = t_centrality_node_contraction(g2, t2, measure, opts)?;
    let mut result = search::run(&c1, &c2, cm, spec)?;
    result.contraction = Some((r1, r2));
    Ok(result)
}
