//! GXL graph files as distributed with the IAM graph database.
//!
//! Letter graphs carry `x`/`y` float attributes on nodes; AIDS graphs carry
//! a `symbol` string (plus `chem`, `charge`, `x`, `y`, which are ignored)
//! and a `valence` attribute on edges.

use std::collections::HashMap;
use std::str::FromStr;

use roxmltree::{Document, Node, ParsingOptions};
use tged_core::{EdgeLabel, Graph, GraphError, NodeId, NodeLabel};

/// Which node attributes become the label.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Schema {
    /// `symbol`/`chem` if present, otherwise `x`/`y`.
    #[default]
    Auto,
    /// Always read `x`/`y` coordinates.
    Points,
    /// Always read the `symbol` (or `chem`) token.
    Symbols,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GxlError {
    #[error("malformed GXL at {line}:{col}: {message}")]
    Malformed { line: u32, col: u32, message: String },
    #[error("node '{node}' at line {line}: no usable label attributes for schema {schema:?}")]
    UnknownSchema { node: String, line: u32, schema: Schema },
    #[error("edge at line {line} references undeclared node '{endpoint}'")]
    DanglingEndpoint { endpoint: String, line: u32 },
    #[error("invalid graph at line {line}: {source}")]
    Graph { line: u32, source: GraphError },
}

pub fn parse_gxl(bytes: &[u8], schema: Schema) -> Result<Graph, GxlError> {
    let text = std::str::from_utf8(bytes).map_err(|e| GxlError::Malformed {
        line: 0,
        col: 0,
        message: format!("not UTF-8: {e}"),
    })?;
    let opts = ParsingOptions {
        allow_dtd: true,
        ..Default::default()
    };
    let doc = Document::parse_with_options(text, opts).map_err(|e| {
        let pos = e.pos();
        GxlError::Malformed {
            line: pos.row,
            col: pos.col,
            message: e.to_string(),
        }
    })?;
    let line_of = |n: Node| doc.text_pos_at(n.range().start).row;
    let malformed = |n: Node, message: String| {
        let pos = doc.text_pos_at(n.range().start);
        GxlError::Malformed {
            line: pos.row,
            col: pos.col,
            message,
        }
    };

    let mut graphs = doc.descendants().filter(|n| n.has_tag_name("graph"));
    let graph_el = graphs
        .next()
        .ok_or_else(|| malformed(doc.root_element(), "no <graph> element".into()))?;
    if let Some(extra) = graphs.next() {
        return Err(malformed(extra, "more than one <graph> element".into()));
    }

    let mut g = Graph::new();
    g.name = graph_el.attribute("id").map(str::to_owned);
    let mut ids: HashMap<&str, NodeId> = HashMap::new();

    for el in graph_el.children().filter(|n| n.has_tag_name("node")) {
        let name = el
            .attribute("id")
            .ok_or_else(|| malformed(el, "node without id".into()))?;
        let attrs = attributes(el).map_err(|m| malformed(el, m))?;
        let label = node_label(&attrs, schema).ok_or_else(|| GxlError::UnknownSchema {
            node: name.to_owned(),
            line: line_of(el),
            schema,
        })?;
        label.validate().map_err(|source| GxlError::Graph {
            line: line_of(el),
            source,
        })?;
        if ids.contains_key(name) {
            return Err(malformed(el, format!("duplicate node id '{name}'")));
        }
        ids.insert(name, g.add_node(label));
    }

    for el in graph_el.children().filter(|n| n.has_tag_name("edge")) {
        let endpoint = |attr: &str| -> Result<NodeId, GxlError> {
            let key = el
                .attribute(attr)
                .ok_or_else(|| malformed(el, format!("edge without '{attr}'")))?;
            ids.get(key).copied().ok_or_else(|| GxlError::DanglingEndpoint {
                endpoint: key.to_owned(),
                line: line_of(el),
            })
        };
        let (u, v) = (endpoint("from")?, endpoint("to")?);
        let attrs = attributes(el).map_err(|m| malformed(el, m))?;
        let label = match attrs.iter().find(|(k, _)| *k == "valence") {
            Some((_, value)) => {
                EdgeLabel::Numeric(f64::from_str(value).map_err(|_| malformed(el, format!("bad valence '{value}'")))?)
            }
            None => EdgeLabel::Unlabeled,
        };
        match g.add_edge(u, v, label) {
            Ok(()) => {}
            // some corpora list an undirected edge in both directions
            Err(GraphError::DuplicateEdge(..)) => {}
            Err(source) => {
                return Err(GxlError::Graph {
                    line: line_of(el),
                    source,
                })
            }
        }
    }
    Ok(g)
}

/// `(name, value)` for every `<attr name=..><type>value</type></attr>` child.
fn attributes<'a>(el: Node<'a, '_>) -> Result<Vec<(&'a str, &'a str)>, String> {
    el.children()
        .filter(|n| n.has_tag_name("attr"))
        .map(|a| {
            let name = a.attribute("name").ok_or("attr without name")?;
            let value = a
                .children()
                .find(|c| c.is_element())
                .and_then(|c| c.text())
                .unwrap_or("")
                .trim();
            Ok((name, value))
        })
        .collect()
}

fn node_label(attrs: &[(&str, &str)], schema: Schema) -> Option<NodeLabel> {
    let get = |key: &str| attrs.iter().find(|(k, _)| *k == key).map(|(_, v)| *v);
    let symbol = || {
        get("symbol")
            .or_else(|| get("chem"))
            .filter(|s| !s.is_empty())
            .map(|s| NodeLabel::Symbolic(s.to_owned()))
    };
    let point = || {
        let x = get("x")?.parse().ok()?;
        let y = get("y")?.parse().ok()?;
        Some(NodeLabel::Point2D { x, y })
    };
    match schema {
        Schema::Auto => symbol().or_else(point),
        Schema::Points => point(),
        Schema::Symbols => symbol(),
    }
}
