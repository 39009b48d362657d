//! Best-first tree search over node mappings.
//!
//! Nodes of `g1` are processed in ascending id order. A search state fixes
//! the images of the first `depth` of them (a node of `g2`, or deletion);
//! edge operations are charged as soon as both endpoints are decided. Once
//! all of `g1` is mapped, one more step inserts the unused `g2` nodes and
//! the edges touching them, producing a complete state. The first complete
//! state popped is returned.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::cost::{edge_key, CostModel, EditKind, EditPath};
use super::{GedError, GedResult};
use crate::graph::{EdgeLabel, Graph, NodeId, NodeLabel};

/// Lower bound added to the accumulated cost when ordering the open set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Heuristic {
    /// Plain cheapest-first (uniform cost).
    #[default]
    Zero,
    /// `|r1 - r2| * x_node + |er1 - er2| * x_edge` over the unprocessed
    /// nodes and the edges lying entirely among them.
    CountBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum SearchKind {
    AStar,
    /// Keep only the `width` best open entries after every expansion.
    Beam {
        width: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SearchSpec {
    pub kind: SearchKind,
    pub heuristic: Heuristic,
}

impl SearchSpec {
    pub fn astar() -> Self {
        SearchSpec {
            kind: SearchKind::AStar,
            heuristic: Heuristic::Zero,
        }
    }

    pub fn beam(width: usize) -> Self {
        SearchSpec {
            kind: SearchKind::Beam { width },
            heuristic: Heuristic::Zero,
        }
    }

    pub fn with_heuristic(self, heuristic: Heuristic) -> Self {
        SearchSpec { heuristic, ..self }
    }
}

const DELETED: u32 = u32::MAX;

/// Dense, index-based copy of one graph pair plus precomputed prices.
struct Problem<'a> {
    cm: &'a CostModel,
    ids1: Vec<NodeId>,
    ids2: Vec<NodeId>,
    adj1: Vec<Option<EdgeLabel>>,
    adj2: Vec<Option<EdgeLabel>>,
    node_sub: Vec<f64>,
    /// `inner_edges1[k]`: edges of `g1` with both endpoints at index >= k.
    inner_edges1: Vec<usize>,
    edges2: usize,
}

impl<'a> Problem<'a> {
    fn new(g1: &Graph, g2: &Graph, cm: &'a CostModel) -> Self {
        let ids1: Vec<NodeId> = g1.node_ids().collect();
        let ids2: Vec<NodeId> = g2.node_ids().collect();
        let (n1, n2) = (ids1.len(), ids2.len());
        let adj1 = dense_adjacency(g1, &ids1);
        let adj2 = dense_adjacency(g2, &ids2);
        let labels1: Vec<&NodeLabel> = ids1.iter().map(|u| g1.label(*u).expect("present")).collect();
        let labels2: Vec<&NodeLabel> = ids2.iter().map(|v| g2.label(*v).expect("present")).collect();
        let mut node_sub = Vec::with_capacity(n1 * n2);
        for a in &labels1 {
            for b in &labels2 {
                node_sub.push(cm.node_sub(a, b));
            }
        }
        let mut inner_edges1 = vec![0; n1 + 1];
        for k in (0..n1).rev() {
            let new = (k + 1..n1).filter(|&j| adj1[k * n1 + j].is_some()).count();
            inner_edges1[k] = inner_edges1[k + 1] + new;
        }
        Problem {
            cm,
            node_sub,
            inner_edges1,
            edges2: g2.edge_count(),
            ids1,
            ids2,
            adj1,
            adj2,
        }
    }

    fn n1(&self) -> usize {
        self.ids1.len()
    }

    fn n2(&self) -> usize {
        self.ids2.len()
    }

    fn e1(&self, i: usize, j: usize) -> Option<&EdgeLabel> {
        self.adj1[i * self.n1() + j].as_ref()
    }

    fn e2(&self, a: usize, b: usize) -> Option<&EdgeLabel> {
        self.adj2[a * self.n2() + b].as_ref()
    }

    /// Edge operations induced between g1 node `k` (mapped to `target`) and
    /// every earlier node, reported through `emit`.
    fn induced_edges(&self, mapping: &[u32], k: usize, target: u32, mut emit: impl FnMut(EditKind, f64)) {
        let cm = self.cm;
        for (i, &m) in mapping.iter().enumerate().take(k) {
            let e1 = self.e1(k, i);
            let e2 = if target != DELETED && m != DELETED {
                self.e2(target as usize, m as usize)
            } else {
                None
            };
            let key1 = || edge_key(self.ids1[i], self.ids1[k]);
            let key2 = || edge_key(self.ids2[m as usize], self.ids2[target as usize]);
            match (e1, e2) {
                (Some(a), Some(b)) => emit(
                    EditKind::EdgeSub {
                        from: key1(),
                        to: key2(),
                    },
                    cm.edge_sub(a, b),
                ),
                (Some(_), None) => emit(EditKind::EdgeDel { edge: key1() }, cm.x_edge),
                (None, Some(_)) => emit(EditKind::EdgeIns { edge: key2() }, cm.x_edge),
                (None, None) => {}
            }
        }
    }

    /// Insertions that finish a state whose `g1` side is fully mapped.
    fn completion(&self, used: &Bitset, mut emit: impl FnMut(EditKind, f64)) {
        let n2 = self.n2();
        for b in 0..n2 {
            if !used.get(b) {
                emit(EditKind::NodeIns { node: self.ids2[b] }, self.cm.x_node);
            }
        }
        for a in 0..n2 {
            for b in a + 1..n2 {
                if self.e2(a, b).is_some() && !(used.get(a) && used.get(b)) {
                    emit(
                        EditKind::EdgeIns {
                            edge: edge_key(self.ids2[a], self.ids2[b]),
                        },
                        self.cm.x_edge,
                    );
                }
            }
        }
    }

    fn heuristic(&self, h: Heuristic, depth: usize, used_count: usize, inner_edges2: usize) -> f64 {
        match h {
            Heuristic::Zero => 0.0,
            Heuristic::CountBound => {
                let r1 = self.n1() - depth;
                let r2 = self.n2() - used_count;
                let er1 = self.inner_edges1[depth];
                r1.abs_diff(r2) as f64 * self.cm.x_node + er1.abs_diff(inner_edges2) as f64 * self.cm.x_edge
            }
        }
    }

    fn path_for(&self, mapping: &[u32], used: &Bitset) -> EditPath {
        let mut path = EditPath::default();
        let n2 = self.n2();
        for (k, &m) in mapping.iter().enumerate() {
            let u = self.ids1[k];
            if m == DELETED {
                path.push(EditKind::NodeDel { node: u }, self.cm.x_node);
            } else {
                let cost = self.node_sub[k * n2 + m as usize];
                path.push(
                    EditKind::NodeSub {
                        from: u,
                        to: self.ids2[m as usize],
                    },
                    cost,
                );
            }
            self.induced_edges(mapping, k, m, |kind, cost| path.push(kind, cost));
        }
        self.completion(used, |kind, cost| path.push(kind, cost));
        path.complete = true;
        path
    }
}

fn dense_adjacency(g: &Graph, ids: &[NodeId]) -> Vec<Option<EdgeLabel>> {
    let n = ids.len();
    let mut index = vec![usize::MAX; g.id_bound()];
    for (i, u) in ids.iter().enumerate() {
        index[u.index()] = i;
    }
    let mut adj = vec![None; n * n];
    for (u, v, l) in g.edges() {
        let (i, j) = (index[u.index()], index[v.index()]);
        adj[i * n + j] = Some(*l);
        adj[j * n + i] = Some(*l);
    }
    adj
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bitset(Vec<u64>);

impl Bitset {
    fn new(n: usize) -> Self {
        Bitset(vec![0; n.div_ceil(64)])
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
}

#[derive(Clone, Debug)]
struct State {
    mapping: Vec<u32>,
    used: Bitset,
    used_count: usize,
    /// Edges of g2 with both endpoints still unused.
    inner_edges2: usize,
    g: f64,
    f: f64,
    complete: bool,
}

impl State {
    fn depth(&self) -> usize {
        self.mapping.len()
    }
}

// Max-heap order: the greatest state is the one to expand next, i.e. lowest
// f, then deepest, then lexicographically smallest mapping.
impl Ord for State {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .f
            .total_cmp(&self.f)
            .then(self.depth().cmp(&other.depth()))
            .then(other.mapping.cmp(&self.mapping))
            .then(self.complete.cmp(&other.complete))
    }
}

impl PartialOrd for State {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for State {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for State {}

pub(crate) fn run(g1: &Graph, g2: &Graph, cm: &CostModel, spec: &SearchSpec) -> Result<GedResult, GedError> {
    cm.validate()?;
    let width = match spec.kind {
        SearchKind::AStar => None,
        SearchKind::Beam { width: 0 } => return Err(GedError::InvalidBeamWidth),
        SearchKind::Beam { width } => Some(width),
    };
    let p = Problem::new(g1, g2, cm);
    let (n1, n2) = (p.n1(), p.n2());

    let mut open = BinaryHeap::new();
    let root_h = p.heuristic(spec.heuristic, 0, 0, p.edges2);
    open.push(State {
        mapping: Vec::new(),
        used: Bitset::new(n2),
        used_count: 0,
        inner_edges2: p.edges2,
        g: 0.0,
        f: root_h,
        complete: false,
    });
    let mut expanded = 0usize;

    while let Some(state) = open.pop() {
        if state.complete {
            let path = p.path_for(&state.mapping, &state.used);
            return Ok(GedResult {
                cost: path.total_cost,
                path,
                expanded_nodes: expanded,
                contraction: None,
            });
        }
        expanded += 1;
        let k = state.depth();

        if k == n1 {
            let mut extra = 0.0;
            p.completion(&state.used, |_, c| extra += c);
            let g = state.g + extra;
            open.push(State {
                g,
                f: g,
                complete: true,
                ..state
            });
        } else {
            for b in (0..n2).filter(|&b| !state.used.get(b)) {
                let mut step = p.node_sub[k * n2 + b];
                p.induced_edges(&state.mapping, k, b as u32, |_, c| step += c);
                let mut used = state.used.clone();
                used.set(b);
                let lost = (0..n2)
                    .filter(|&j| j != b && !used.get(j) && p.e2(b, j).is_some())
                    .count();
                let inner_edges2 = state.inner_edges2 - lost;
                let g = state.g + step;
                let mut mapping = Vec::with_capacity(n1);
                mapping.extend_from_slice(&state.mapping);
                mapping.push(b as u32);
                open.push(State {
                    f: g + p.heuristic(spec.heuristic, k + 1, state.used_count + 1, inner_edges2),
                    mapping,
                    used,
                    used_count: state.used_count + 1,
                    inner_edges2,
                    g,
                    complete: false,
                });
            }
            let mut step = cm.x_node;
            p.induced_edges(&state.mapping, k, DELETED, |_, c| step += c);
            let g = state.g + step;
            let mut mapping = state.mapping;
            mapping.push(DELETED);
            open.push(State {
                f: g + p.heuristic(spec.heuristic, k + 1, state.used_count, state.inner_edges2),
                mapping,
                g,
                complete: false,
                ..state
            });
        }

        if let Some(w) = width {
            if open.len() > w {
                let mut entries = core::mem::take(&mut open).into_sorted_vec();
                let drop = entries.len() - w;
                entries.drain(..drop);
                open = BinaryHeap::from(entries);
            }
        }
    }
    unreachable!("the search tree always contains a complete state")
}
