mod common;

use common::Labels;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tged_core::contraction::{k_star_node_contraction, t_centrality_node_contraction};
use tged_core::{CentralityMeasure, ContractionOptions, SlotPolicy};

fn option_grid() -> Vec<ContractionOptions> {
    let mut out = Vec::new();
    for recompute in [false, true] {
        for slots in [SlotPolicy::Permissive, SlotPolicy::Strict] {
            out.push(ContractionOptions {
                recompute,
                slots,
                ..Default::default()
            });
        }
    }
    out
}

#[test]
fn invariants_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let grid = option_grid();
    for i in 0..500 {
        let n = rng.gen_range(0..11);
        let p = rng.gen_range(0.1..0.6);
        let g = common::random_graph(&mut rng, n, p, Labels::Points);
        let t = rng.gen_range(0..=n + 1);
        let measure = CentralityMeasure::ALL[i % 4];
        let opts = &grid[i % grid.len()];
        let (out, rep) = t_centrality_node_contraction(&g, t, measure, opts).unwrap();

        assert_eq!(out.component_count(), g.component_count(), "graph {i}");
        assert!(rep.removed.len() <= t);
        assert_eq!(out.node_count(), g.node_count() - rep.removed.len());
        assert_eq!(rep.result_order, out.node_count());
        for u in rep.removed_ids() {
            assert!(!out.contains(u));
            assert!(!rep.skipped_cut_vertices.contains(&u));
        }
        for u in g.node_ids().filter(|u| !rep.removed_ids().any(|r| r == *u)) {
            assert!(out.contains(u));
            assert_eq!(out.label(u), g.label(u));
        }
        for (a, b, l) in out.edges() {
            assert_eq!(g.edge(a, b), Some(l));
        }

        let again = t_centrality_node_contraction(&g, t, measure, opts).unwrap();
        assert_eq!(again, (out, rep), "determinism");
    }
}

#[test]
fn large_budget_exhausts_candidates() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..200 {
        let n = rng.gen_range(1..10);
        let g = common::random_connected(&mut rng, n, 0.2);
        for m in CentralityMeasure::ALL {
            let (out, rep) = t_centrality_node_contraction(&g, n, m, &Default::default()).unwrap();
            // every survivor was examined and refused, or one node is left
            if out.node_count() > 1 {
                let mut refused = rep.skipped_cut_vertices.clone();
                refused.extend(&rep.skipped_isolated);
                refused.sort();
                assert_eq!(refused, out.node_ids().collect::<Vec<_>>());
                for u in &rep.skipped_cut_vertices {
                    assert!(out.degree(*u).unwrap() >= 1);
                }
            }
        }
    }
}

#[test]
fn k_star_iterates_to_a_fixed_point() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..200 {
        let n = rng.gen_range(0..11);
        let g = common::random_graph(&mut rng, n, 0.3, Labels::Points);
        let k = g.max_degree().max(1);
        let mut current = g.clone();
        let mut rounds = 0;
        loop {
            let (next, rep) = k_star_node_contraction(&current, k);
            if rep.removed.is_empty() {
                assert_eq!(next, current);
                break;
            }
            current = next;
            rounds += 1;
            assert!(rounds <= n, "no fixed point after {rounds} rounds");
        }
        assert_eq!(current.component_count(), g.component_count());
        // at the fixed point every node with degree <= k is a cut vertex or isolated
        for u in current.node_ids() {
            let d = current.degree(u).unwrap();
            assert!(d == 0 || d > k || current.is_cut_vertex(u).unwrap());
        }
    }
}

#[test]
fn p4_k_star_is_not_idempotent() {
    let mut g = tged_core::Graph::new();
    for i in 0..4 {
        g.add_node(tged_core::NodeLabel::point(i as f64, 0.0).unwrap());
    }
    for i in 0..3 {
        g.add_edge(tged_core::NodeId(i), tged_core::NodeId(i + 1), Default::default())
            .unwrap();
    }
    let (once, _) = k_star_node_contraction(&g, 2);
    assert_eq!(once.node_count(), 2);
    let (twice, _) = k_star_node_contraction(&once, 2);
    assert_eq!(twice.node_count(), 1);
}
