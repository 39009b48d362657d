//! Exhaustive GED for tiny graphs. Shares nothing with the tree search
//! beyond the cost model: it prices each complete node mapping from scratch.

use alloc::vec;
use alloc::vec::Vec;

use super::cost::CostModel;
use super::GedError;
use crate::graph::{Graph, NodeId};

/// Largest `|V1| + |V2|` accepted by [`brute_force_ged`].
pub const ORACLE_MAX_NODES: usize = 9;

/// Minimum cost over every injective partial mapping `V1 -> V2`.
pub fn brute_force_ged(g1: &Graph, g2: &Graph, cm: &CostModel) -> Result<f64, GedError> {
    let total = g1.node_count() + g2.node_count();
    if total > ORACLE_MAX_NODES {
        return Err(GedError::OracleTooLarge(total));
    }
    cm.validate()?;
    let v1: Vec<NodeId> = g1.node_ids().collect();
    let v2: Vec<NodeId> = g2.node_ids().collect();
    let mut image: Vec<Option<NodeId>> = Vec::with_capacity(v1.len());
    let mut taken = vec![false; v2.len()];
    let mut best = f64::INFINITY;
    enumerate(g1, g2, cm, &v1, &v2, &mut image, &mut taken, &mut best);
    Ok(best)
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    g1: &Graph,
    g2: &Graph,
    cm: &CostModel,
    v1: &[NodeId],
    v2: &[NodeId],
    image: &mut Vec<Option<NodeId>>,
    taken: &mut [bool],
    best: &mut f64,
) {
    if image.len() == v1.len() {
        let cost = mapping_cost(g1, g2, cm, v1, image);
        if cost < *best {
            *best = cost;
        }
        return;
    }
    for j in 0..v2.len() {
        if !taken[j] {
            taken[j] = true;
            image.push(Some(v2[j]));
            enumerate(g1, g2, cm, v1, v2, image, taken, best);
            image.pop();
            taken[j] = false;
        }
    }
    image.push(None);
    enumerate(g1, g2, cm, v1, v2, image, taken, best);
    image.pop();
}

fn mapping_cost(g1: &Graph, g2: &Graph, cm: &CostModel, v1: &[NodeId], image: &[Option<NodeId>]) -> f64 {
    let mut cost = 0.0;
    for (u, m) in v1.iter().zip(image) {
        cost += match m {
            Some(v) => cm.node_sub(g1.label(*u).unwrap(), g2.label(*v).unwrap()),
            None => cm.x_node,
        };
    }
    let hit: Vec<NodeId> = image.iter().flatten().copied().collect();
    cost += cm.x_node * g2.node_ids().filter(|v| !hit.contains(v)).count() as f64;

    // every pair of g1 nodes: compare the edge there with the edge between
    // their images
    for i in 0..v1.len() {
        for j in i + 1..v1.len() {
            let e1 = g1.edge(v1[i], v1[j]);
            let e2 = match (image[i], image[j]) {
                (Some(a), Some(b)) => g2.edge(a, b),
                _ => None,
            };
            cost += match (e1, e2) {
                (Some(a), Some(b)) => cm.edge_sub(a, b),
                (Some(_), None) | (None, Some(_)) => cm.x_edge,
                (None, None) => 0.0,
            };
        }
    }
    // g2 edges not between two images are inserted
    for (a, b, _) in g2.edges() {
        if !(hit.contains(&a) && hit.contains(&b)) {
            cost += cm.x_edge;
        }
    }
    cost
}
