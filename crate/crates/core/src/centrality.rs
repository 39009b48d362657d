//! Node centrality: degree, betweenness, eigenvector and PageRank, plus the
//! deterministic ascending ranking that drives contraction.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::graph::{Graph, NodeId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum CentralityMeasure {
    Degree,
    Betweenness,
    Eigenvector,
    PageRank,
}

impl CentralityMeasure {
    pub const ALL: [CentralityMeasure; 4] = [
        CentralityMeasure::Degree,
        CentralityMeasure::Betweenness,
        CentralityMeasure::Eigenvector,
        CentralityMeasure::PageRank,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CentralityMeasure::Degree => "degree",
            CentralityMeasure::Betweenness => "betweenness",
            CentralityMeasure::Eigenvector => "eigenvector",
            CentralityMeasure::PageRank => "pagerank",
        }
    }
}

impl fmt::Display for CentralityMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CentralityMeasure {
    type Err = CentralityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "degree" | "dc" => Ok(CentralityMeasure::Degree),
            "betweenness" | "bc" => Ok(CentralityMeasure::Betweenness),
            "eigenvector" | "ev" => Ok(CentralityMeasure::Eigenvector),
            "pagerank" | "pr" => Ok(CentralityMeasure::PageRank),
            _ => Err(CentralityError::InvalidConfig("unknown centrality measure")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenvectorConfig {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for EigenvectorConfig {
    fn default() -> Self {
        EigenvectorConfig {
            tol: 1e-8,
            max_iter: 1000,
        }
    }
}

/// Parameters of `x_i = alpha * sum_j A_ij x_j / k_j + gamma`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PageRankConfig {
    pub alpha: f64,
    /// Additive constant; `None` means `(1 - alpha) / n`.
    pub gamma: Option<f64>,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for PageRankConfig {
    fn default() -> Self {
        PageRankConfig {
            alpha: 0.85,
            gamma: None,
            tol: 1e-10,
            max_iter: 1000,
        }
    }
}

/// Solver settings for every measure, bundled so callers can pass one value.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CentralityConfig {
    pub eigenvector: EigenvectorConfig,
    pub pagerank: PageRankConfig,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CentralityError {
    EmptyGraph,
    NotConverged {
        measure: CentralityMeasure,
        iterations: usize,
        residual: f64,
    },
    InvalidConfig(&'static str),
}

impl fmt::Display for CentralityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CentralityError::EmptyGraph => f.write_str("centrality requires at least one node"),
            CentralityError::NotConverged {
                measure,
                iterations,
                residual,
            } => write!(
                f,
                "{measure} centrality did not converge after {iterations} iterations (residual {residual:e})"
            ),
            CentralityError::InvalidConfig(msg) => write!(f, "invalid centrality config: {msg}"),
        }
    }
}

impl core::error::Error for CentralityError {}

#[derive(Clone, Debug, PartialEq)]
pub struct CentralityScores {
    pub measure: CentralityMeasure,
    pub scores: BTreeMap<NodeId, f64>,
    pub iterations_used: usize,
    pub residual: f64,
}

impl CentralityScores {
    pub fn score(&self, u: NodeId) -> Option<f64> {
        self.scores.get(&u).copied()
    }

    fn exact(measure: CentralityMeasure, scores: BTreeMap<NodeId, f64>) -> Self {
        CentralityScores {
            measure,
            scores,
            iterations_used: 0,
            residual: 0.0,
        }
    }
}

pub fn compute(
    g: &Graph,
    measure: CentralityMeasure,
    cfg: &CentralityConfig,
) -> Result<CentralityScores, CentralityError> {
    match measure {
        CentralityMeasure::Degree => Ok(degree_centrality(g)),
        CentralityMeasure::Betweenness => Ok(betweenness_centrality(g)),
        CentralityMeasure::Eigenvector => eigenvector_centrality(g, &cfg.eigenvector),
        CentralityMeasure::PageRank => pagerank_centrality(g, &cfg.pagerank),
    }
}

pub fn degree_centrality(g: &Graph) -> CentralityScores {
    let scores = g.node_ids().map(|u| (u, g.neighbors(u).count() as f64)).collect();
    CentralityScores::exact(CentralityMeasure::Degree, scores)
}

/// Unweighted shortest-path betweenness with endpoints excluded and each
/// unordered pair counted once (Brandes accumulation, halved).
pub fn betweenness_centrality(g: &Graph) -> CentralityScores {
    let n = g.id_bound();
    let mut acc = vec![0.0f64; n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![usize::MAX; n];
    let mut delta = vec![0.0f64; n];
    let mut preds: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(g.node_count());
    let mut queue = VecDeque::new();

    for s in g.node_ids() {
        for u in g.node_ids() {
            sigma[u.index()] = 0.0;
            dist[u.index()] = usize::MAX;
            delta[u.index()] = 0.0;
            preds[u.index()].clear();
        }
        order.clear();
        sigma[s.index()] = 1.0;
        dist[s.index()] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for w in g.neighbors(v) {
                if dist[w.index()] == usize::MAX {
                    dist[w.index()] = dist[v.index()] + 1;
                    queue.push_back(w);
                }
                if dist[w.index()] == dist[v.index()] + 1 {
                    sigma[w.index()] += sigma[v.index()];
                    preds[w.index()].push(v);
                }
            }
        }
        while let Some(w) = order.pop() {
            let coeff = (1.0 + delta[w.index()]) / sigma[w.index()];
            for &v in &preds[w.index()] {
                delta[v.index()] += sigma[v.index()] * coeff;
            }
            if w != s {
                acc[w.index()] += delta[w.index()];
            }
        }
    }

    let scores = g.node_ids().map(|u| (u, acc[u.index()] / 2.0)).collect();
    CentralityScores::exact(CentralityMeasure::Betweenness, scores)
}

/// Principal eigenvector of the adjacency matrix, computed separately on each
/// connected component and normalised to unit Euclidean length there.
///
/// Iterates with `A + I` so bipartite components (where `-kappa_1` is also an
/// eigenvalue) still converge; the eigenvectors are the same. Isolated nodes
/// get score 1.
pub fn eigenvector_centrality(g: &Graph, cfg: &EigenvectorConfig) -> Result<CentralityScores, CentralityError> {
    if g.is_empty() {
        return Err(CentralityError::EmptyGraph);
    }
    if cfg.tol.is_nan() || cfg.tol <= 0.0 || cfg.max_iter == 0 {
        return Err(CentralityError::InvalidConfig(
            "eigenvector tol and max_iter must be positive",
        ));
    }

    let mut scores = BTreeMap::new();
    let mut iterations_used = 0;
    let mut worst_residual = 0.0f64;

    for block in g.connected_components() {
        if block.len() == 1 {
            scores.insert(block[0], 1.0);
            continue;
        }
        let local = LocalAdjacency::new(g, &block);
        let m = block.len();
        let mut x = vec![1.0 / libm::sqrt(m as f64); m];
        let mut ax = vec![0.0; m];
        let mut converged = None;

        for it in 1..=cfg.max_iter {
            local.multiply(&x, &mut ax);
            let kappa: f64 = x.iter().zip(&ax).map(|(a, b)| a * b).sum();
            let residual = x
                .iter()
                .zip(&ax)
                .map(|(xi, axi)| (axi - kappa * xi).abs())
                .fold(0.0, f64::max);
            if residual <= cfg.tol {
                converged = Some((it - 1, residual));
                break;
            }
            for (xi, axi) in x.iter_mut().zip(&ax) {
                *xi += axi;
            }
            normalize(&mut x);
            if it == cfg.max_iter {
                return Err(CentralityError::NotConverged {
                    measure: CentralityMeasure::Eigenvector,
                    iterations: it,
                    residual,
                });
            }
        }
        let (its, residual) = converged.expect("loop returns on exhaustion");
        iterations_used = iterations_used.max(its);
        worst_residual = worst_residual.max(residual);
        for (u, xi) in block.iter().zip(&x) {
            scores.insert(*u, *xi);
        }
    }

    Ok(CentralityScores {
        measure: CentralityMeasure::Eigenvector,
        scores,
        iterations_used,
        residual: worst_residual,
    })
}

/// Fixed point of `x_i = alpha * sum_j A_ij x_j / k_j + gamma` by Jacobi
/// iteration. Isolated nodes pass nothing on and settle at `gamma`.
pub fn pagerank_centrality(g: &Graph, cfg: &PageRankConfig) -> Result<CentralityScores, CentralityError> {
    if g.is_empty() {
        return Err(CentralityError::EmptyGraph);
    }
    if !(cfg.alpha > 0.0 && cfg.alpha < 1.0) {
        return Err(CentralityError::InvalidConfig("pagerank alpha must lie in (0, 1)"));
    }
    if cfg.tol.is_nan() || cfg.tol <= 0.0 || cfg.max_iter == 0 {
        return Err(CentralityError::InvalidConfig(
            "pagerank tol and max_iter must be positive",
        ));
    }
    let n = g.node_count();
    let gamma = cfg.gamma.unwrap_or((1.0 - cfg.alpha) / n as f64);
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(CentralityError::InvalidConfig("pagerank gamma must be positive"));
    }

    let ids: Vec<NodeId> = g.node_ids().collect();
    let local = LocalAdjacency::new(g, &ids);
    let inv_degree: Vec<f64> = local
        .neighbors
        .iter()
        .map(|nb| if nb.is_empty() { 0.0 } else { 1.0 / nb.len() as f64 })
        .collect();

    let mut x = vec![1.0 / n as f64; n];
    let mut share = vec![0.0; n];
    let mut next = vec![0.0; n];
    for it in 1..=cfg.max_iter {
        for i in 0..n {
            share[i] = x[i] * inv_degree[i];
        }
        local.multiply(&share, &mut next);
        let mut residual = 0.0f64;
        for i in 0..n {
            next[i] = cfg.alpha * next[i] + gamma;
            residual = residual.max((next[i] - x[i]).abs());
        }
        if residual <= cfg.tol {
            return Ok(CentralityScores {
                measure: CentralityMeasure::PageRank,
                scores: ids.iter().copied().zip(x).collect(),
                iterations_used: it - 1,
                residual,
            });
        }
        if it == cfg.max_iter {
            return Err(CentralityError::NotConverged {
                measure: CentralityMeasure::PageRank,
                iterations: it,
                residual,
            });
        }
        core::mem::swap(&mut x, &mut next);
    }
    unreachable!("max_iter > 0 was checked")
}

/// Node ids ordered by `(score ascending, id ascending)`.
pub fn rank_ascending(s: &CentralityScores) -> Vec<NodeId> {
    let mut ranked: Vec<(NodeId, f64)> = s.scores.iter().map(|(u, x)| (*u, *x)).collect();
    ranked.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
    ranked.into_iter().map(|(u, _)| u).collect()
}

/// Adjacency lists over a subset of nodes, re-indexed densely.
struct LocalAdjacency {
    neighbors: Vec<Vec<usize>>,
}

impl LocalAdjacency {
    fn new(g: &Graph, members: &[NodeId]) -> Self {
        let mut index = vec![usize::MAX; g.id_bound()];
        for (i, u) in members.iter().enumerate() {
            index[u.index()] = i;
        }
        let neighbors = members
            .iter()
            .map(|u| {
                g.neighbors(*u)
                    .map(|v| index[v.index()])
                    .filter(|&j| j != usize::MAX)
                    .collect()
            })
            .collect();
        LocalAdjacency { neighbors }
    }

    fn multiply(&self, x: &[f64], out: &mut [f64]) {
        for (o, nb) in out.iter_mut().zip(&self.neighbors) {
            *o = nb.iter().map(|&j| x[j]).sum();
        }
    }
}

fn normalize(x: &mut [f64]) {
    let norm = libm::sqrt(x.iter().map(|v| v * v).sum::<f64>());
    if norm > 0.0 {
        for v in x.iter_mut() {
            *v /= norm;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{EdgeLabel, NodeLabel};

    fn graph(n: usize, edges: &[(u32, u32)]) -> Graph {
        let mut g = Graph::new();
        for i in 0..n {
            g.add_node(NodeLabel::point(i as f64, 0.0).unwrap());
        }
        for &(u, v) in edges {
            g.add_edge(NodeId(u), NodeId(v), EdgeLabel::Unlabeled).unwrap();
        }
        g
    }

    fn values(s: &CentralityScores) -> Vec<f64> {
        s.scores.values().copied().collect()
    }

    fn p3() -> Graph {
        graph(3, &[(0, 1), (1, 2)])
    }

    fn c4() -> Graph {
        graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])
    }

    fn k14() -> Graph {
        graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)])
    }

    #[test]
    fn degree_examples() {
        assert_eq!(values(&degree_centrality(&p3())), vec![1.0, 2.0, 1.0]);
        assert_eq!(values(&degree_centrality(&c4())), vec![2.0; 4]);
        assert!(degree_centrality(&Graph::new()).scores.is_empty());
    }

    #[test]
    fn betweenness_examples() {
        assert_eq!(values(&betweenness_centrality(&p3())), vec![0.0, 1.0, 0.0]);
        assert_eq!(values(&betweenness_centrality(&c4())), vec![0.5; 4]);
        let star = betweenness_centrality(&k14());
        assert_eq!(star.score(NodeId(0)), Some(6.0));
        assert_eq!(star.score(NodeId(3)), Some(0.0));
    }

    #[test]
    fn eigenvector_examples() {
        let cfg = EigenvectorConfig::default();
        let c4 = eigenvector_centrality(&c4(), &cfg).unwrap();
        assert_eq!(values(&c4), vec![0.5; 4]);

        let single = eigenvector_centrality(&graph(1, &[]), &cfg).unwrap();
        assert_eq!(values(&single), vec![1.0]);

        let p3 = eigenvector_centrality(&p3(), &cfg).unwrap();
        let (leaf, centre) = (p3.score(NodeId(0)).unwrap(), p3.score(NodeId(1)).unwrap());
        assert!((centre - core::f64::consts::SQRT_2 * leaf).abs() < 1e-7);
        assert!(p3.residual <= cfg.tol);

        assert_eq!(
            eigenvector_centrality(&Graph::new(), &cfg),
            Err(CentralityError::EmptyGraph)
        );
    }

    #[test]
    fn eigenvector_is_per_component() {
        // triangle + disjoint edge: each block normalised on its own
        let g = graph(5, &[(0, 1), (1, 2), (2, 0), (3, 4)]);
        let s = eigenvector_centrality(&g, &EigenvectorConfig::default()).unwrap();
        let tri: f64 = (0..3).map(|i| s.score(NodeId(i)).unwrap().powi(2)).sum();
        let pair: f64 = (3..5).map(|i| s.score(NodeId(i)).unwrap().powi(2)).sum();
        assert!((tri - 1.0).abs() < 1e-9);
        assert!((pair - 1.0).abs() < 1e-9);
    }

    #[test]
    fn eigenvector_reports_non_convergence() {
        let cfg = EigenvectorConfig {
            tol: 1e-14,
            max_iter: 2,
        };
        let err = eigenvector_centrality(&graph(4, &[(0, 1), (1, 2), (2, 3)]), &cfg).unwrap_err();
        assert!(matches!(err, CentralityError::NotConverged { iterations: 2, .. }));
    }

    #[test]
    fn pagerank_examples() {
        let cfg = PageRankConfig::default();
        let reg = pagerank_centrality(&c4(), &cfg).unwrap();
        assert!(values(&reg).iter().all(|&x| x == values(&reg)[0]));

        let lone = PageRankConfig {
            gamma: Some(0.05),
            ..cfg
        };
        let s = pagerank_centrality(&graph(1, &[]), &lone).unwrap();
        assert_eq!(values(&s), vec![0.05]);

        let bad = PageRankConfig { alpha: 1.0, ..cfg };
        assert!(matches!(
            pagerank_centrality(&c4(), &bad),
            Err(CentralityError::InvalidConfig(_))
        ));
        let slow = PageRankConfig { max_iter: 3, ..cfg };
        assert!(matches!(
            pagerank_centrality(&graph(3, &[(0, 1), (1, 2)]), &slow),
            Err(CentralityError::NotConverged { .. })
        ));
    }

    #[test]
    fn pagerank_p3_matches_direct_solve() {
        // x = (I - alpha A D^-1)^-1 gamma 1 for P3, alpha = 0.85, gamma = 0.05:
        // leaf  l = alpha * c / 2 + gamma
        // centre c = 2 * alpha * l + gamma
        // => c = (2 * alpha * gamma + gamma) / (1 - alpha^2)
        let (alpha, gamma) = (0.85f64, 0.05f64);
        let c = (2.0 * alpha * gamma + gamma) / (1.0 - alpha * alpha);
        let l = alpha * c / 2.0 + gamma;
        let cfg = PageRankConfig {
            alpha,
            gamma: Some(gamma),
            tol: 1e-12,
            max_iter: 10_000,
        };
        let s = pagerank_centrality(&p3(), &cfg).unwrap();
        assert!((s.score(NodeId(1)).unwrap() - c).abs() < 1e-10);
        assert!((s.score(NodeId(0)).unwrap() - l).abs() < 1e-10);
        assert!((s.score(NodeId(2)).unwrap() - l).abs() < 1e-10);
    }

    #[test]
    fn ranking_tie_breaks_by_id() {
        let s = degree_centrality(&p3());
        assert_eq!(rank_ascending(&s), vec![NodeId(0), NodeId(2), NodeId(1)]);
        let s = degree_centrality(&c4());
        assert_eq!(rank_ascending(&s), (0..4).map(NodeId).collect::<Vec<_>>());
        assert!(rank_ascending(&degree_centrality(&Graph::new())).is_empty());
    }

    #[test]
    fn measure_names_round_trip() {
        for m in CentralityMeasure::ALL {
            assert_eq!(m.name().parse::<CentralityMeasure>(), Ok(m));
        }
        assert!("closeness".parse::<CentralityMeasure>().is_err());
    }
}
