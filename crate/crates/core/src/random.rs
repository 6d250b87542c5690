//! Seeded random instances for tests, verification and benchmarks.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, VertexId, Weight, WeightedGraph};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős-Rényi graph on vertices `0..n`, isolated vertices included.
pub fn gnp<R: Rng>(rng: &mut R, n: u64, p: f64) -> Graph {
    let mut g = Graph::new();
    for v in 0..n {
        g.add_vertex(v);
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Gives every edge an independent uniform weight in `lo..=hi`.
pub fn with_random_weights<R: Rng>(rng: &mut R, g: &Graph, lo: Weight, hi: Weight) -> WeightedGraph {
    let mut wg = WeightedGraph::new();
    for v in g.vertices() {
        wg.add_vertex(v);
    }
    for e in g.edges() {
        wg.add_edge(e.u(), e.v(), rng.gen_range(lo..=hi));
    }
    wg
}

pub fn weighted_gnp<R: Rng>(rng: &mut R, n: u64, p: f64, max_weight: Weight) -> WeightedGraph {
    let g = gnp(rng, n, p);
    with_random_weights(rng, &g, 1, max_weight)
}

/// Random forest on `0..n`: every vertex after the first either starts a new
/// tree or attaches to an earlier vertex.
pub fn random_forest<R: Rng>(rng: &mut R, n: u64) -> Graph {
    let mut g = Graph::new();
    for v in 0..n {
        g.add_vertex(v);
        if v > 0 && rng.gen_bool(0.85) {
            g.add_edge(v, rng.gen_range(0..v));
        }
    }
    g
}

/// A uniformly random bijection of the vertex set onto itself.
pub fn vertex_permutation<R: Rng>(rng: &mut R, vertices: impl Iterator<Item = VertexId>) -> HashMap<VertexId, VertexId> {
    let from: Vec<VertexId> = vertices.collect();
    let mut to = from.clone();
    to.shuffle(rng);
    from.into_iter().zip(to).collect()
}
