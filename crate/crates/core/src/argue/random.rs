use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{EquivDungModel, ATTACKS};
use crate::graph::AnnotatedGraph;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomParams {
    pub min_nodes: usize,
    pub max_nodes: usize,
    /// Probability of each ordered pair (self-loops included) being an attack.
    pub edge_prob: f64,
}

impl RandomParams {
    pub fn up_to(max_nodes: usize) -> Self {
        RandomParams {
            min_nodes: 1,
            max_nodes,
            edge_prob: 0.3,
        }
    }
}

fn build(rng: &mut impl Rng, p: RandomParams, distinct: bool) -> EquivDungModel {
    let n = rng.gen_range(p.min_nodes..=p.max_nodes.max(p.min_nodes));
    let ids = if distinct { n } else { rng.gen_range(1..=n.max(1)) };
    let mut g = AnnotatedGraph::new();
    for i in 0..n {
        let id = if distinct { i } else { rng.gen_range(0..ids) };
        g.add_node(format!("u{}", i + 1), [format!("ID{}", id + 1)])
            .unwrap();
    }
    for a in 1..=n {
        for b in 1..=n {
            if rng.gen_bool(p.edge_prob) {
                g.add_edge(format!("u{a}"), format!("u{b}"), [ATTACKS.to_string()])
                    .unwrap();
            }
        }
    }
    EquivDungModel::new(g).expect("generated models are valid")
}

/// A random model: node count uniform in the given range, ID alphabet size
/// uniform in `1..=n`, IDs uniform over the alphabet.
pub fn random_model(rng: &mut impl Rng, p: RandomParams) -> EquivDungModel {
    build(rng, p, false)
}

/// A random model where all IDs differ, i.e. a plain Dung framework.
pub fn random_distinct_model(rng: &mut impl Rng, p: RandomParams) -> EquivDungModel {
    build(rng, p, true)
}

/// `count` models drawn in sequence from one ChaCha8 stream seeded with `seed`.
pub fn seeded_models(seed: u64, count: usize, p: RandomParams) -> Vec<EquivDungModel> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_model(&mut rng, p)).collect()
}

/// As [`seeded_models`], with all IDs distinct.
pub fn seeded_distinct_models(seed: u64, count: usize, p: RandomParams) -> Vec<EquivDungModel> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_distinct_model(&mut rng, p)).collect()
}
