//! Line-oriented graph text format.
//!
//! ```text
//! # comment
//! graph AP1_0000
//! class A
//! node 0 point 0.5 1.5
//! node 2 symbol Cl
//! node 3 point 2 0
//! edge 0 2
//! edge 2 3 1.5
//! ```
//!
//! Node ids are kept as written, so a contracted graph round-trips with its
//! holes. Ids must be ascending; every edge line must name declared nodes.

use std::fmt::Write as _;

use tged_core::{EdgeLabel, Graph, GraphError, NodeId, NodeLabel};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TextError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    if let Some(name) = &g.name {
        writeln!(out, "graph {name}").unwrap();
    }
    if let Some(class) = &g.class_label {
        writeln!(out, "class {class}").unwrap();
    }
    for (u, label) in g.nodes() {
        match label {
            NodeLabel::Point2D { x, y } => writeln!(out, "node {u} point {x} {y}"),
            NodeLabel::Symbolic(s) => writeln!(out, "node {u} symbol {s}"),
        }
        .unwrap();
    }
    for (u, v, label) in g.edges() {
        match label {
            EdgeLabel::Unlabeled => writeln!(out, "edge {u} {v}"),
            EdgeLabel::Numeric(w) => writeln!(out, "edge {u} {v} {w}"),
        }
        .unwrap();
    }
    out
}

pub fn parse_graph_text(text: &str) -> Result<Graph, TextError> {
    let mut g = Graph::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let syntax = |message: &str| TextError::Syntax {
            line,
            message: message.to_owned(),
        };
        let graph_err = |source| TextError::Graph { line, source };
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        match keyword {
            "graph" => g.name = Some(rest.to_owned()),
            "class" => g.class_label = Some(rest.to_owned()),
            "node" => {
                let mut parts = rest.splitn(3, char::is_whitespace);
                let id = parse_id(parts.next()).ok_or_else(|| syntax("bad node id"))?;
                let kind = parts.next().ok_or_else(|| syntax("missing label kind"))?;
                let value = parts.next().unwrap_or("").trim();
                let label = match kind {
                    "point" => {
                        let mut xy = value.split_whitespace().map(str::parse::<f64>);
                        match (xy.next(), xy.next(), xy.next()) {
                            (Some(Ok(x)), Some(Ok(y)), None) => NodeLabel::point(x, y).map_err(graph_err)?,
                            _ => return Err(syntax("point needs two numbers")),
                        }
                    }
                    "symbol" => NodeLabel::symbol(value).map_err(graph_err)?,
                    _ => return Err(syntax("label kind must be 'point' or 'symbol'")),
                };
                g.add_node_with_id(id, label).map_err(graph_err)?;
            }
            "edge" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let (u, v) = match parts.as_slice() {
                    [a, b] | [a, b, _] => (
                        parse_id(Some(a)).ok_or_else(|| syntax("bad edge endpoint"))?,
                        parse_id(Some(b)).ok_or_else(|| syntax("bad edge endpoint"))?,
                    ),
                    _ => return Err(syntax("edge needs two endpoints and an optional value")),
                };
                let label = match parts.get(2) {
                    Some(w) => EdgeLabel::Numeric(w.parse().map_err(|_| syntax("bad edge value"))?),
                    None => EdgeLabel::Unlabeled,
                };
                label.validate().map_err(graph_err)?;
                g.add_edge(u, v, label).map_err(graph_err)?;
            }
            _ => return Err(syntax("unknown keyword")),
        }
    }
    Ok(g)
}

fn parse_id(s: Option<&str>) -> Option<NodeId> {
    s?.parse().ok().map(NodeId)
}
