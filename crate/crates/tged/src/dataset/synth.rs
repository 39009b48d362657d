//! Synthetic Letter-like corpora: one small plane graph per class, with
//! instances that jitter coordinates and occasionally gain or lose an edge.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use tged_core::{EdgeLabel, Graph, NodeId, NodeLabel};

use super::{Corpus, Split};

/// Coordinates of prototype nodes are drawn from `[0, EXTENT]^2`.
const EXTENT: f64 = 3.0;

fn class_name(idx: usize) -> String {
    if idx < 26 {
        char::from(b'A' + idx as u8).to_string()
    } else {
        format!("C{idx}")
    }
}

fn prototype(rng: &mut ChaCha8Rng) -> Graph {
    let n = rng.gen_range(4..=6);
    let mut g = Graph::new();
    for _ in 0..n {
        g.add_node(NodeLabel::point(rng.gen_range(0.0..EXTENT), rng.gen_range(0.0..EXTENT)).unwrap());
    }
    for i in 1..n as u32 {
        let parent = rng.gen_range(0..i);
        g.add_edge(NodeId(parent), NodeId(i), EdgeLabel::Unlabeled).unwrap();
    }
    for i in 0..n as u32 {
        for j in i + 1..n as u32 {
            if !g.has_edge(NodeId(i), NodeId(j)) && rng.gen_bool(0.2) {
                g.add_edge(NodeId(i), NodeId(j), EdgeLabel::Unlabeled).unwrap();
            }
        }
    }
    g
}

fn distort(proto: &Graph, distortion: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = proto.clone();
    if distortion == 0.0 {
        return g;
    }
    let noise = Normal::new(0.0, distortion).expect("distortion is finite and positive");
    let mut out = Graph::new();
    for (_, label) in g.nodes() {
        let NodeLabel::Point2D { x, y } = label else {
            unreachable!("prototypes carry points")
        };
        out.add_node(NodeLabel::point(x + noise.sample(rng), y + noise.sample(rng)).unwrap());
    }
    for (u, v, label) in g.edges() {
        out.add_edge(u, v, *label).unwrap();
    }
    g = out;
    if rng.gen_bool(distortion.min(1.0)) {
        let ids: Vec<NodeId> = g.node_ids().collect();
        let present: Vec<(NodeId, NodeId)> = g.edges().map(|(u, v, _)| (u, v)).collect();
        let absent: Vec<(NodeId, NodeId)> = ids
            .iter()
            .enumerate()
            .flat_map(|(i, &u)| ids[i + 1..].iter().map(move |&v| (u, v)))
            .filter(|&(u, v)| !g.has_edge(u, v))
            .collect();
        let remove = absent.is_empty() || (!present.is_empty() && rng.gen_bool(0.5));
        if remove {
            let &(u, v) = present.choose(rng).expect("prototypes have edges");
            remove_edge(&mut g, u, v);
        } else {
            let &(u, v) = absent.choose(rng).unwrap();
            g.add_edge(u, v, EdgeLabel::Unlabeled).unwrap();
        }
    }
    g
}

fn remove_edge(g: &mut Graph, a: NodeId, b: NodeId) {
    let mut out = Graph::new();
    for (_, label) in g.nodes() {
        out.add_node(label.clone());
    }
    for (u, v, label) in g.edges() {
        if (u, v) != (a, b) {
            out.add_edge(u, v, *label).unwrap();
        }
    }
    *g = out;
}

/// Instances of `classes` random prototypes. Instance `i` belongs to class
/// `i % classes`; classes are named `A`, `B`, ... (then `C26`, `C27`, ...).
pub fn synthesize_letter_like(seed: u64, count: usize, classes: usize, distortion: f64) -> Corpus {
    assert!(classes >= 1, "need at least one class");
    assert!(
        distortion.is_finite() && distortion >= 0.0,
        "distortion must be finite and non-negative"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let protos: Vec<Graph> = (0..classes).map(|_| prototype(&mut rng)).collect();
    let mut corpus = Corpus::new("synthetic", Split::Train);
    for i in 0..count {
        let class = i % classes;
        let mut g = distort(&protos[class], distortion, &mut rng);
        g.name = Some(format!("synthetic-{}-{i:04}", class_name(class)));
        g.class_label = Some(class_name(class));
        corpus.graphs.push(g);
    }
    corpus
}

/// Parameters for a synthetic train/test pair sharing one set of prototypes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SynthParams {
    pub seed: u64,
    pub classes: usize,
    pub distortion: f64,
    pub train_per_class: usize,
    pub test_per_class: usize,
}

impl Default for SynthParams {
    fn default() -> Self {
        SynthParams {
            seed: 0,
            classes: 15,
            distortion: 0.3,
            train_per_class: 5,
            test_per_class: 5,
        }
    }
}

/// Train and test corpora drawn from the same prototypes. The first
/// `train_per_class` instances of each class go to training.
pub fn synthesize_split(p: SynthParams) -> (Corpus, Corpus) {
    let count = p.classes * (p.train_per_class + p.test_per_class);
    let all = synthesize_letter_like(p.seed, count, p.classes, p.distortion);
    let mut train = Corpus::new("synthetic", Split::Train);
    let mut test = Corpus::new("synthetic", Split::Test);
    for (i, g) in all.graphs.into_iter().enumerate() {
        if i / p.classes < p.train_per_class {
            train.graphs.push(g);
        } else {
            test.graphs.push(g);
        }
    }
    (train, test)
}
