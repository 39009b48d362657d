//! Random graph generators and independent reference computations used by
//! the property tests. Nothing here calls into the algorithms it checks.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, VecDeque};

use rand::Rng;
use tged_core::{EdgeLabel, Graph, NodeId, NodeLabel};

#[derive(Clone, Copy, Debug)]
pub enum Labels {
    /// Points on a small integer grid, unlabeled edges.
    Points,
    /// Symbols from {C, N, O}, numeric edge labels in {1, 2, 3}.
    Symbols,
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64, labels: Labels) -> Graph {
    let mut g = Graph::new();
    for _ in 0..n {
        let label = match labels {
            Labels::Points => NodeLabel::point(rng.gen_range(0..4) as f64, rng.gen_range(0..4) as f64).unwrap(),
            Labels::Symbols => NodeLabel::symbol(["C", "N", "O"][rng.gen_range(0..3)]).unwrap(),
        };
        g.add_node(label);
    }
    for i in 0..n as u32 {
        for j in i + 1..n as u32 {
            if rng.gen_bool(p) {
                let label = match labels {
                    Labels::Points => EdgeLabel::Unlabeled,
                    Labels::Symbols => EdgeLabel::Numeric(rng.gen_range(1..=3) as f64),
                };
                g.add_edge(NodeId(i), NodeId(j), label).unwrap();
            }
        }
    }
    g
}

/// Random connected graph: a random spanning tree plus extra edges.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, extra_p: f64) -> Graph {
    let mut g = random_graph(rng, n, 0.0, Labels::Points);
    for i in 1..n as u32 {
        let parent = rng.gen_range(0..i);
        g.add_edge(NodeId(parent), NodeId(i), EdgeLabel::Unlabeled).unwrap();
    }
    for i in 0..n as u32 {
        for j in i + 1..n as u32 {
            if !g.has_edge(NodeId(i), NodeId(j)) && rng.gen_bool(extra_p) {
                g.add_edge(NodeId(i), NodeId(j), EdgeLabel::Unlabeled).unwrap();
            }
        }
    }
    g
}

/// Component count by union-find over an explicit edge list, optionally
/// ignoring one node.
pub fn components_without(g: &Graph, banned: Option<NodeId>) -> usize {
    let nodes: Vec<NodeId> = g.node_ids().filter(|u| Some(*u) != banned).collect();
    let mut parent: BTreeMap<NodeId, NodeId> = nodes.iter().map(|u| (*u, *u)).collect();
    fn find(p: &mut BTreeMap<NodeId, NodeId>, x: NodeId) -> NodeId {
        let mut r = x;
        while p[&r] != r {
            r = p[&r];
        }
        p.insert(x, r);
        r
    }
    for (a, b, _) in g.edges() {
        if Some(a) == banned || Some(b) == banned {
            continue;
        }
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent.insert(ra, rb);
        }
    }
    nodes.iter().filter(|u| find(&mut parent, **u) == **u).count()
}

fn bfs_dist(g: &Graph, s: NodeId) -> BTreeMap<NodeId, usize> {
    let mut dist = BTreeMap::from([(s, 0)]);
    let mut q = VecDeque::from([s]);
    while let Some(v) = q.pop_front() {
        for w in g.neighbors(v) {
            if !dist.contains_key(&w) {
                dist.insert(w, dist[&v] + 1);
                q.push_back(w);
            }
        }
    }
    dist
}

/// Every shortest s-t path, listed explicitly.
fn shortest_paths(g: &Graph, s: NodeId, t: NodeId) -> Vec<Vec<NodeId>> {
    let dist = bfs_dist(g, s);
    let Some(&target) = dist.get(&t) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut stack = vec![vec![s]];
    while let Some(path) = stack.pop() {
        let last = *path.last().unwrap();
        if last == t {
            out.push(path);
            continue;
        }
        if path.len() > target {
            continue;
        }
        for w in g.neighbors(last) {
            if dist.get(&w) == Some(&path.len()) {
                let mut next = path.clone();
                next.push(w);
                stack.push(next);
            }
        }
    }
    out
}

/// Betweenness by enumerating every shortest path between every pair.
pub fn brute_betweenness(g: &Graph) -> BTreeMap<NodeId, f64> {
    let ids: Vec<NodeId> = g.node_ids().collect();
    let mut score: BTreeMap<NodeId, f64> = ids.iter().map(|u| (*u, 0.0)).collect();
    for (i, &s) in ids.iter().enumerate() {
        for &t in &ids[i + 1..] {
            let paths = shortest_paths(g, s, t);
            if paths.is_empty() {
                continue;
            }
            let total = paths.len() as f64;
            for path in &paths {
                for u in &path[1..path.len() - 1] {
                    *score.get_mut(u).unwrap() += 1.0 / total;
                }
            }
        }
    }
    score
}

/// Solves `M x = b` by Gaussian elimination with partial pivoting.
pub fn solve(mut m: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&a, &c| m[a][col].abs().total_cmp(&m[c][col].abs()))
            .unwrap();
        m.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = m[row][col] / m[col][col];
            for k in col..n {
                m[row][k] -= f * m[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| m[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / m[row][row];
    }
    x
}

/// PageRank by the direct solve `(I - alpha A D^-1) x = gamma 1`, where
/// isolated columns are zero.
pub fn dense_pagerank(g: &Graph, alpha: f64, gamma: f64) -> BTreeMap<NodeId, f64> {
    let ids: Vec<NodeId> = g.node_ids().collect();
    let n = ids.len();
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        m[i][i] = 1.0;
        for j in 0..n {
            if g.has_edge(ids[i], ids[j]) {
                let kj = g.degree(ids[j]).unwrap() as f64;
                m[i][j] -= alpha / kj;
            }
        }
    }
    ids.into_iter().zip(solve(m, vec![gamma; n])).collect()
}

/// Cyclic Jacobi eigen-decomposition of a symmetric matrix. Returns the
/// eigenvalues and the matching eigenvectors (as columns, one Vec each).
pub fn jacobi_eigen(a: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut a = a.to_vec();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-24 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vkp, vkq) = (row[p], row[q]);
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let values = (0..n).map(|i| a[i][i]).collect();
    let vectors = (0..n).map(|j| (0..n).map(|i| v[i][j]).collect()).collect();
    (values, vectors)
}

/// Principal eigenvector of the adjacency matrix of a connected graph, sign
/// fixed non-negative and unit length.
pub fn dense_principal_eigenvector(g: &Graph) -> (f64, BTreeMap<NodeId, f64>) {
    let ids: Vec<NodeId> = g.node_ids().collect();
    let a: Vec<Vec<f64>> = ids
        .iter()
        .map(|u| ids.iter().map(|v| if g.has_edge(*u, *v) { 1.0 } else { 0.0 }).collect())
        .collect();
    let (values, vectors) = jacobi_eigen(&a);
    let top = (0..values.len())
        .max_by(|&i, &j| values[i].total_cmp(&values[j]))
        .unwrap();
    let mut x = vectors[top].clone();
    if x.iter().sum::<f64>() < 0.0 {
        x.iter_mut().for_each(|v| *v = -*v);
    }
    (values[top], ids.into_iter().zip(x).collect())
}
