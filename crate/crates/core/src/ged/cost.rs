use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::GedError;
use crate::graph::{EdgeLabel, Graph, NodeId, NodeLabel};

/// How node labels are compared when a node is substituted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum NodeDistance {
    /// Euclidean distance between points; 0/1 for symbols.
    #[default]
    Euclidean,
    /// 0 when labels are identical, 1 otherwise.
    Discrete,
}

/// How edge labels are compared when an edge is substituted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum EdgeDistance {
    /// `|a - b|` for numeric labels; unlabeled edges match for free.
    #[default]
    Absolute,
    Discrete,
}

impl FromStr for NodeDistance {
    type Err = GedError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "euclidean" => Ok(NodeDistance::Euclidean),
            "discrete" => Ok(NodeDistance::Discrete),
            _ => Err(GedError::InvalidCostModel("unknown node distance policy")),
        }
    }
}

impl FromStr for EdgeDistance {
    type Err = GedError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "absolute" => Ok(EdgeDistance::Absolute),
            "discrete" => Ok(EdgeDistance::Discrete),
            _ => Err(GedError::InvalidCostModel("unknown edge distance policy")),
        }
    }
}

/// Edit costs: constant insert/delete prices and scaled label distances for
/// substitutions.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CostModel {
    pub x_node: f64,
    pub y_node: f64,
    pub x_edge: f64,
    pub y_edge: f64,
    pub node_distance: NodeDistance,
    pub edge_distance: EdgeDistance,
}

impl Default for CostModel {
    fn default() -> Self {
        CostModel {
            x_node: 1.0,
            y_node: 1.0,
            x_edge: 1.0,
            y_edge: 1.0,
            node_distance: NodeDistance::Euclidean,
            edge_distance: EdgeDistance::Absolute,
        }
    }
}

impl CostModel {
    pub fn new(x_node: f64, y_node: f64, x_edge: f64, y_edge: f64) -> Result<Self, GedError> {
        let cm = CostModel {
            x_node,
            y_node,
            x_edge,
            y_edge,
            ..Default::default()
        };
        cm.validate()?;
        Ok(cm)
    }

    pub fn validate(&self) -> Result<(), GedError> {
        let ok = [self.x_node, self.y_node, self.x_edge, self.y_edge]
            .iter()
            .all(|c| c.is_finite() && *c >= 0.0);
        if ok {
            Ok(())
        } else {
            Err(GedError::InvalidCostModel(
                "cost constants must be finite and non-negative",
            ))
        }
    }

    pub fn node_label_distance(&self, a: &NodeLabel, b: &NodeLabel) -> f64 {
        match (self.node_distance, a, b) {
            (NodeDistance::Euclidean, NodeLabel::Point2D { x: x1, y: y1 }, NodeLabel::Point2D { x: x2, y: y2 }) => {
                libm::hypot(x1 - x2, y1 - y2)
            }
            _ => discrete(a == b),
        }
    }

    pub fn edge_label_distance(&self, a: &EdgeLabel, b: &EdgeLabel) -> f64 {
        match (self.edge_distance, a, b) {
            (EdgeDistance::Absolute, EdgeLabel::Numeric(p), EdgeLabel::Numeric(q)) => (p - q).abs(),
            _ => discrete(a == b),
        }
    }

    pub fn node_sub(&self, a: &NodeLabel, b: &NodeLabel) -> f64 {
        self.y_node * self.node_label_distance(a, b)
    }

    pub fn edge_sub(&self, a: &EdgeLabel, b: &EdgeLabel) -> f64 {
        self.y_edge * self.edge_label_distance(a, b)
    }
}

fn discrete(equal: bool) -> f64 {
    if equal {
        0.0
    } else {
        1.0
    }
}

/// An undirected edge named by its endpoints, smaller id first.
pub type EdgeKey = (NodeId, NodeId);

pub(crate) fn edge_key(a: NodeId, b: NodeId) -> EdgeKey {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "op", rename_all = "snake_case"))]
pub enum EditKind {
    NodeSub { from: NodeId, to: NodeId },
    NodeDel { node: NodeId },
    NodeIns { node: NodeId },
    EdgeSub { from: EdgeKey, to: EdgeKey },
    EdgeDel { edge: EdgeKey },
    EdgeIns { edge: EdgeKey },
}

impl fmt::Display for EditKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EditKind::NodeSub { from, to } => write!(f, "{from} -> {to}"),
            EditKind::NodeDel { node } => write!(f, "{node} -> eps"),
            EditKind::NodeIns { node } => write!(f, "eps -> {node}"),
            EditKind::EdgeSub { from, to } => {
                write!(f, "({}, {}) -> ({}, {})", from.0, from.1, to.0, to.1)
            }
            EditKind::EdgeDel { edge } => write!(f, "({}, {}) -> eps", edge.0, edge.1),
            EditKind::EdgeIns { edge } => write!(f, "eps -> ({}, {})", edge.0, edge.1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EditOperation {
    #[cfg_attr(feature = "serde", serde(flatten))]
    pub kind: EditKind,
    pub cost: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EditPath {
    pub operations: Vec<EditOperation>,
    pub total_cost: f64,
    pub complete: bool,
}

impl EditPath {
    pub(crate) fn push(&mut self, kind: EditKind, cost: f64) {
        self.operations.push(EditOperation { kind, cost });
        self.total_cost += cost;
    }
}

/// Price of a single edit operation; `g1` owns the source side, `g2` the
/// target side.
pub fn op_cost(kind: &EditKind, cm: &CostModel, g1: &Graph, g2: &Graph) -> Result<f64, GedError> {
    let node1 = |u: NodeId| g1.label(u).ok_or(GedError::MissingOperand(u));
    let node2 = |v: NodeId| g2.label(v).ok_or(GedError::MissingOperand(v));
    let edge1 = |e: EdgeKey| g1.edge(e.0, e.1).ok_or(GedError::MissingEdge(e));
    let edge2 = |e: EdgeKey| g2.edge(e.0, e.1).ok_or(GedError::MissingEdge(e));
    Ok(match *kind {
        EditKind::NodeSub { from, to } => cm.node_sub(node1(from)?, node2(to)?),
        EditKind::NodeDel { node } => {
            node1(node)?;
            cm.x_node
        }
        EditKind::NodeIns { node } => {
            node2(node)?;
            cm.x_node
        }
        EditKind::EdgeSub { from, to } => cm.edge_sub(edge1(from)?, edge2(to)?),
        EditKind::EdgeDel { edge } => {
            edge1(edge)?;
            cm.x_edge
        }
        EditKind::EdgeIns { edge } => {
            edge2(edge)?;
            cm.x_edge
        }
    })
}
