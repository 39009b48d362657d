//! Undirected, simple, labeled graphs with stable node ids.
//!
//! Node ids are dense integers handed out in insertion order and never
//! reused: deleting a node leaves a hole, so a contracted graph keeps the
//! ids of the graph it was derived from. All iteration is in ascending id
//! order, which makes every downstream algorithm deterministic.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Stable identifier of a node within one graph lineage.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Label attached to a node: plane coordinates (Letter-style) or a symbol
/// token (molecule-style).
#[derive(Clone, Debug, PartialEq)]
pub enum NodeLabel {
    Point2D { x: f64, y: f64 },
    Symbolic(String),
}

impl NodeLabel {
    pub fn point(x: f64, y: f64) -> Result<Self, GraphError> {
        let label = NodeLabel::Point2D { x, y };
        label.validate()?;
        Ok(label)
    }

    pub fn symbol(token: impl Into<String>) -> Result<Self, GraphError> {
        let label = NodeLabel::Symbolic(token.into());
        label.validate()?;
        Ok(label)
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        match self {
            NodeLabel::Point2D { x, y } if !(x.is_finite() && y.is_finite()) => {
                Err(GraphError::InvalidLabel("point coordinates must be finite"))
            }
            NodeLabel::Symbolic(s) if s.is_empty() => Err(GraphError::InvalidLabel("symbol token must be non-empty")),
            _ => Ok(()),
        }
    }
}

/// Label attached to an edge.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub enum EdgeLabel {
    #[default]
    Unlabeled,
    Numeric(f64),
}

impl EdgeLabel {
    pub fn validate(&self) -> Result<(), GraphError> {
        match self {
            EdgeLabel::Numeric(v) if !v.is_finite() => {
                Err(GraphError::InvalidLabel("numeric edge label must be finite"))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    SelfLoop(NodeId),
    MissingNode(NodeId),
    DuplicateEdge(NodeId, NodeId),
    IdInUse(NodeId),
    InvalidLabel(&'static str),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::SelfLoop(u) => write!(f, "self-loop on node {u}"),
            GraphError::MissingNode(u) => write!(f, "node {u} is not present"),
            GraphError::DuplicateEdge(u, v) => write!(f, "edge {{{u}, {v}}} already present"),
            GraphError::IdInUse(u) => write!(f, "node id {u} was already issued"),
            GraphError::InvalidLabel(msg) => write!(f, "invalid label: {msg}"),
        }
    }
}

impl core::error::Error for GraphError {}

#[derive(Clone, Debug, PartialEq)]
struct Node {
    label: NodeLabel,
    adjacency: BTreeMap<NodeId, EdgeLabel>,
}

/// Undirected simple graph `(V, E, mu, nu)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Graph {
    slots: Vec<Option<Node>>,
    live: usize,
    edges: usize,
    pub name: Option<String>,
    pub class_label: Option<String>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn named(name: impl Into<String>) -> Self {
        Graph {
            name: Some(name.into()),
            ..Self::default()
        }
    }

    pub fn add_node(&mut self, label: NodeLabel) -> NodeId {
        let id = NodeId(self.slots.len() as u32);
        self.slots.push(Some(Node {
            label,
            adjacency: BTreeMap::new(),
        }));
        self.live += 1;
        id
    }

    /// Inserts a node under an explicit id, which must not have been issued
    /// yet. Ids skipped over become permanent holes; loaders use this to
    /// restore graphs that were saved after contraction.
    pub fn add_node_with_id(&mut self, id: NodeId, label: NodeLabel) -> Result<(), GraphError> {
        if id.index() < self.slots.len() {
            return Err(GraphError::IdInUse(id));
        }
        self.slots.resize(id.index(), None);
        self.slots.push(Some(Node {
            label,
            adjacency: BTreeMap::new(),
        }));
        self.live += 1;
        Ok(())
    }

    pub fn add_edge(&mut self, u: NodeId, v: NodeId, label: EdgeLabel) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.node(u)?;
        self.node(v)?;
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        self.node_mut(u).adjacency.insert(v, label);
        self.node_mut(v).adjacency.insert(u, label);
        self.edges += 1;
        Ok(())
    }

    /// Removes `u` together with every incident edge.
    pub fn delete_node(&mut self, u: NodeId) -> Result<(), GraphError> {
        self.node(u)?;
        let node = self.slots[u.index()].take().expect("checked above");
        for v in node.adjacency.keys() {
            self.node_mut(*v).adjacency.remove(&u);
        }
        self.edges -= node.adjacency.len();
        self.live -= 1;
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.live
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    /// One past the largest id ever issued by this graph.
    pub fn id_bound(&self) -> usize {
        self.slots.len()
    }

    pub fn contains(&self, u: NodeId) -> bool {
        matches!(self.slots.get(u.index()), Some(Some(_)))
    }

    pub fn label(&self, u: NodeId) -> Option<&NodeLabel> {
        self.slots.get(u.index())?.as_ref().map(|n| &n.label)
    }

    pub fn edge(&self, u: NodeId, v: NodeId) -> Option<&EdgeLabel> {
        self.slots.get(u.index())?.as_ref()?.adjacency.get(&v)
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.edge(u, v).is_some()
    }

    pub fn degree(&self, u: NodeId) -> Result<usize, GraphError> {
        Ok(self.node(u)?.adjacency.len())
    }

    pub fn neighbors(&self, u: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.slots
            .get(u.index())
            .and_then(Option::as_ref)
            .into_iter()
            .flat_map(|n| n.adjacency.keys().copied())
    }

    /// Present node ids in ascending order.
    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes().map(|(id, _)| id)
    }

    pub fn nodes(&self) -> impl Iterator<Item = (NodeId, &NodeLabel)> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.as_ref().map(|n| (NodeId(i as u32), &n.label)))
    }

    /// Edges as `(u, v, label)` with `u < v`, ascending by `(u, v)`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, &EdgeLabel)> + '_ {
        self.slots.iter().enumerate().flat_map(|(i, s)| {
            let u = NodeId(i as u32);
            s.iter()
                .flat_map(move |n| n.adjacency.range(NodeId(u.0 + 1)..).map(move |(v, l)| (u, *v, l)))
        })
    }

    pub fn max_degree(&self) -> usize {
        self.slots
            .iter()
            .flatten()
            .map(|n| n.adjacency.len())
            .max()
            .unwrap_or(0)
    }

    /// Checks the structural and label invariants.
    pub fn validate(&self) -> Result<(), GraphError> {
        for (u, label) in self.nodes() {
            label.validate()?;
            for (v, el) in &self.node(u)?.adjacency {
                if *v == u {
                    return Err(GraphError::SelfLoop(u));
                }
                el.validate()?;
                if self.edge(*v, u) != Some(el) {
                    return Err(GraphError::MissingNode(*v));
                }
            }
        }
        Ok(())
    }

    /// Connected components, each sorted ascending, ordered by smallest id.
    pub fn connected_components(&self) -> Vec<Vec<NodeId>> {
        let mut seen = vec![false; self.slots.len()];
        let mut blocks = Vec::new();
        for start in self.node_ids() {
            if seen[start.index()] {
                continue;
            }
            let mut block = self.reach(start, None, &mut seen);
            block.sort_unstable();
            blocks.push(block);
        }
        blocks
    }

    pub fn component_count(&self) -> usize {
        self.connected_components().len()
    }

    /// True iff deleting `u` strictly increases the number of connected
    /// components. Answered by a traversal that avoids `u` and checks whether
    /// all of its neighbours are still mutually reachable.
    pub fn is_cut_vertex(&self, u: NodeId) -> Result<bool, GraphError> {
        let node = self.node(u)?;
        let mut nbrs = node.adjacency.keys().copied();
        let Some(first) = nbrs.next() else {
            return Ok(false);
        };
        let mut seen = vec![false; self.slots.len()];
        self.reach(first, Some(u), &mut seen);
        Ok(nbrs.any(|v| !seen[v.index()]))
    }

    /// All articulation points, via a single iterative depth-first lowlink
    /// pass.
    pub fn articulation_points(&self) -> BTreeSet<NodeId> {
        let n = self.slots.len();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut cut = BTreeSet::new();
        let mut timer = 0;

        for root in self.node_ids() {
            if disc[root.index()] != usize::MAX {
                continue;
            }
            disc[root.index()] = timer;
            low[root.index()] = timer;
            timer += 1;
            let mut root_children = 0;
            // (node, parent, neighbour cursor)
            let mut stack: Vec<(NodeId, Option<NodeId>, Vec<NodeId>)> =
                vec![(root, None, self.neighbors(root).collect())];

            while let Some((v, parent, pending)) = stack.last_mut() {
                let v = *v;
                let parent = *parent;
                if let Some(w) = pending.pop() {
                    if Some(w) == parent {
                        continue;
                    }
                    if disc[w.index()] == usize::MAX {
                        disc[w.index()] = timer;
                        low[w.index()] = timer;
                        timer += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((w, Some(v), self.neighbors(w).collect()));
                    } else {
                        low[v.index()] = low[v.index()].min(disc[w.index()]);
                    }
                } else {
                    stack.pop();
                    if let Some(p) = parent {
                        low[p.index()] = low[p.index()].min(low[v.index()]);
                        if p != root && low[v.index()] >= disc[p.index()] {
                            cut.insert(p);
                        }
                    }
                }
            }
            if root_children > 1 {
                cut.insert(root);
            }
        }
        cut
    }

    /// Breadth-first reach from `start`, never entering `banned`. Marks
    /// `seen` and returns the visited nodes.
    fn reach(&self, start: NodeId, banned: Option<NodeId>, seen: &mut [bool]) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut queue = VecDeque::from([start]);
        seen[start.index()] = true;
        while let Some(v) = queue.pop_front() {
            out.push(v);
            for w in self.neighbors(v) {
                if Some(w) != banned && !seen[w.index()] {
                    seen[w.index()] = true;
                    queue.push_back(w);
                }
            }
        }
        out
    }

    fn node(&self, u: NodeId) -> Result<&Node, GraphError> {
        self.slots
            .get(u.index())
            .and_then(Option::as_ref)
            .ok_or(GraphError::MissingNode(u))
    }

    fn node_mut(&mut self, u: NodeId) -> &mut Node {
        self.slots[u.index()].as_mut().expect("node presence checked by caller")
    }
}
