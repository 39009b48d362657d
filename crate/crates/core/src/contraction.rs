//! Node contraction: deleting low-importance nodes (and their edges) as long
//! as doing so never disconnects anything.
//!
//! Every variant walks an ordered candidate list once. A candidate is deleted
//! iff it is not a cut vertex of the *current* graph and it is not isolated;
//! the latter guard keeps the component count fixed and means a lone
//! remaining node is never removed.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::centrality::{self, CentralityConfig, CentralityError, CentralityMeasure};
use crate::graph::{Graph, NodeId};

/// How the `t` budget is consumed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum SlotPolicy {
    /// Only successful deletions count; skipped candidates are free.
    #[default]
    Permissive,
    /// Each examined candidate uses one of the `t` slots, deleted or not.
    Strict,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ContractionOptions {
    /// Re-rank the remaining nodes on the current graph after each deletion.
    pub recompute: bool,
    pub slots: SlotPolicy,
    pub centrality: CentralityConfig,
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Removal {
    pub node: NodeId,
    pub score: f64,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ContractionReport {
    pub measure: CentralityMeasure,
    pub t_requested: usize,
    /// Deleted nodes in deletion order, with the score they were ranked by.
    pub removed: Vec<Removal>,
    pub skipped_cut_vertices: Vec<NodeId>,
    /// Candidates left alone because they had no neighbours left.
    pub skipped_isolated: Vec<NodeId>,
    /// Node count of the contracted graph.
    pub result_order: usize,
}

impl ContractionReport {
    pub fn empty(measure: CentralityMeasure, g: &Graph) -> Self {
        ContractionReport {
            measure,
            t_requested: 0,
            removed: Vec::new(),
            skipped_cut_vertices: Vec::new(),
            skipped_isolated: Vec::new(),
            result_order: g.node_count(),
        }
    }

    pub fn removed_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.removed.iter().map(|r| r.node)
    }
}

enum Verdict {
    Removed,
    Cut,
    Isolated,
}

fn try_contract(current: &mut Graph, u: NodeId) -> Verdict {
    if current.degree(u).unwrap_or(0) == 0 {
        return Verdict::Isolated;
    }
    if current.is_cut_vertex(u).unwrap_or(true) {
        return Verdict::Cut;
    }
    current.delete_node(u).expect("candidate present");
    Verdict::Removed
}

/// Contracts up to `t` nodes of least centrality under `measure`.
///
/// Candidates are visited in `(score, id)` ascending order, each at most once.
/// With `opts.recompute` the order is rebuilt from the current graph after
/// every deletion.
pub fn t_centrality_node_contraction(
    g: &Graph,
    t: usize,
    measure: CentralityMeasure,
    opts: &ContractionOptions,
) -> Result<(Graph, ContractionReport), CentralityError> {
    let mut report = ContractionReport::empty(measure, g);
    report.t_requested = t;
    let mut current = g.clone();
    if t == 0 || g.is_empty() {
        return Ok((current, report));
    }

    let rank = |h: &Graph| -> Result<Vec<(NodeId, f64)>, CentralityError> {
        let scores = centrality::compute(h, measure, &opts.centrality)?;
        Ok(centrality::rank_ascending(&scores)
            .into_iter()
            .map(|u| (u, scores.scores[&u]))
            .collect())
    };

    let mut ranking = rank(&current)?;
    let mut cursor = 0;
    let mut considered = BTreeSet::new();
    let mut slots_used = 0;

    while report.removed.len() < t && !(opts.slots == SlotPolicy::Strict && slots_used >= t) {
        while cursor < ranking.len() && considered.contains(&ranking[cursor].0) {
            cursor += 1;
        }
        let Some(&(u, score)) = ranking.get(cursor) else {
            break;
        };
        considered.insert(u);
        slots_used += 1;
        match try_contract(&mut current, u) {
            Verdict::Removed => {
                report.removed.push(Removal { node: u, score });
                if opts.recompute && report.removed.len() < t && !current.is_empty() {
                    ranking = rank(&current)?;
                    cursor = 0;
                }
            }
            Verdict::Cut => report.skipped_cut_vertices.push(u),
            Verdict::Isolated => report.skipped_isolated.push(u),
        }
    }

    report.result_order = current.node_count();
    Ok((current, report))
}

/// Contracts the nodes whose degree in `g` equals `k`, in ascending id order.
pub fn k_degree_node_contraction(g: &Graph, k: usize) -> (Graph, ContractionReport) {
    let candidates: Vec<NodeId> = g.node_ids().filter(|&u| g.degree(u) == Ok(k)).collect();
    let mut report = ContractionReport::empty(CentralityMeasure::Degree, g);
    report.t_requested = candidates.len();
    let mut current = g.clone();
    for u in candidates {
        match try_contract(&mut current, u) {
            Verdict::Removed => report.removed.push(Removal {
                node: u,
                score: k as f64,
            }),
            Verdict::Cut => report.skipped_cut_vertices.push(u),
            Verdict::Isolated => report.skipped_isolated.push(u),
        }
    }
    report.result_order = current.node_count();
    (current, report)
}

/// `k`-degree contraction applied for degrees `1, 2, ..., k` in sequence.
pub fn k_star_node_contraction(g: &Graph, k: usize) -> (Graph, ContractionReport) {
    let mut current = g.clone();
    let mut report = ContractionReport::empty(CentralityMeasure::Degree, g);
    for i in 1..=k {
        let (next, pass) = k_degree_node_contraction(&current, i);
        current = next;
        report.t_requested += pass.t_requested;
        report.removed.extend(pass.removed);
        report.skipped_cut_vertices.extend(pass.skipped_cut_vertices);
        report.skipped_isolated.extend(pass.skipped_isolated);
    }
    report.result_order = current.node_count();
    (current, report)
}

/// Number of nodes a `k*`-degree contraction would delete from `g`.
pub fn t_star_value(g: &Graph, k: usize) -> usize {
    k_star_node_contraction(g, k).1.removed.len()
}
