//! Exhaustive oracles for small graphs.
//!
//! All three search over vertex subsets encoded as bitmasks, always branching
//! on the lowest remaining vertex, with memoization on the remaining set.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId, Weight, WeightedGraph};
use crate::matching::Matching;

pub const MCM_LIMIT: usize = 20;
pub const MWM_LIMIT: usize = 18;
pub const VC_LIMIT: usize = 20;

struct Indexed {
    ids: Vec<VertexId>,
    // adjacency bitmask and per-neighbor weights
    adj: Vec<u32>,
    weight: Vec<Vec<(usize, Weight)>>,
}

fn index_graph(g: &Graph, weights: Option<&WeightedGraph>) -> Indexed {
    let ids: Vec<VertexId> = g.vertices().collect();
    let index: HashMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj = vec![0u32; ids.len()];
    let mut weight = vec![Vec::new(); ids.len()];
    for e in g.edges() {
        let (a, b) = (index[&e.u()], index[&e.v()]);
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
        let w = weights.map_or(1, |wg| wg.weight(e.u(), e.v()).expect("edge weight"));
        weight[a].push((b, w));
        weight[b].push((a, w));
    }
    Indexed { ids, adj, weight }
}

fn guard(what: &'static str, n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::GuardExceeded { what, n, limit })
    } else {
        Ok(())
    }
}

fn best_matching(ix: &Indexed, mask: u32, memo: &mut HashMap<u32, u128>) -> u128 {
    if mask == 0 {
        return 0;
    }
    if let Some(&value) = memo.get(&mask) {
        return value;
    }
    let v = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << v);
    let mut best = best_matching(ix, rest, memo);
    for &(u, w) in &ix.weight[v] {
        if rest & (1 << u) != 0 {
            best = best.max(w as u128 + best_matching(ix, rest & !(1 << u), memo));
        }
    }
    memo.insert(mask, best);
    best
}

fn witness(ix: &Indexed, memo: &mut HashMap<u32, u128>) -> Vec<(Edge, Weight)> {
    let mut mask: u32 = if ix.ids.is_empty() {
        0
    } else {
        u32::MAX >> (32 - ix.ids.len())
    };
    let mut edges = Vec::new();
    while mask != 0 {
        let target = best_matching(ix, mask, memo);
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        if best_matching(ix, rest, memo) == target {
            mask = rest;
            continue;
        }
        let &(u, w) = ix.weight[v]
            .iter()
            .find(|&&(u, w)| {
                rest & (1 << u) != 0
                    && w as u128 + best_matching(ix, rest & !(1 << u), memo) == target
            })
            .expect("optimal choice exists");
        edges.push((Edge::new(ix.ids[v], ix.ids[u]), w));
        mask = rest & !(1 << u);
    }
    edges
}

/// Maximum-cardinality matching by exhaustive search (n ≤ 20).
pub fn brute_force_mcm(g: &Graph) -> Result<(usize, Matching)> {
    guard("brute_force_mcm", g.n(), MCM_LIMIT)?;
    let ix = index_graph(g, None);
    let mut memo = HashMap::new();
    let edges = witness(&ix, &mut memo);
    let size = edges.len();
    Ok((size, edges.into_iter().map(|(e, _)| (e, 0)).collect()))
}

/// Maximum-weight matching by exhaustive search (n ≤ 18).
pub fn brute_force_mwm(g: &WeightedGraph) -> Result<(u128, Matching)> {
    guard("brute_force_mwm", g.n(), MWM_LIMIT)?;
    let ix = index_graph(g.graph(), Some(g));
    let mut memo = HashMap::new();
    let edges = witness(&ix, &mut memo);
    let matching: Matching = edges.into_iter().collect();
    Ok((matching.weight(), matching))
}

fn independence(adj: &[u32], mask: u32, memo: &mut HashMap<u32, usize>) -> usize {
    if mask == 0 {
        return 0;
    }
    if let Some(&value) = memo.get(&mask) {
        return value;
    }
    let v = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << v);
    let take = 1 + independence(adj, rest & !adj[v], memo);
    let best = if adj[v] & rest == 0 {
        take
    } else {
        take.max(independence(adj, rest, memo))
    };
    memo.insert(mask, best);
    best
}

/// Vertex cover number τ = n − α by exhaustive search (n ≤ 20).
pub fn brute_force_vc(g: &Graph) -> Result<usize> {
    guard("brute_force_vc", g.n(), VC_LIMIT)?;
    let ix = index_graph(g, None);
    let n = ix.ids.len();
    let full = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    Ok(n - independence(&ix.adj, full, &mut HashMap::new()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete_bipartite(a: u64, b: u64) -> Graph {
        let mut g = Graph::new();
        for i in 0..a {
            for j in 0..b {
                g.add_edge(i, a + j);
            }
        }
        g
    }

    fn cycle(n: u64) -> Graph {
        Graph::from_edges((0..n).map(|i| (i, (i + 1) % n)))
    }

    #[test]
    fn cardinality_examples() {
        assert_eq!(brute_force_mcm(&cycle(4)).unwrap().0, 2);
        let k4 = Graph::from_edges([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(brute_force_mcm(&k4).unwrap().0, 2);
        let (size, witness) = brute_force_mcm(&complete_bipartite(3, 5)).unwrap();
        assert_eq!(size, 3);
        witness.validate(&complete_bipartite(3, 5)).unwrap();
    }

    #[test]
    fn weighted_examples() {
        let single = WeightedGraph::from_edges([(0, 1, 7)]);
        assert_eq!(brute_force_mwm(&single).unwrap().0, 7);
        let p3 = WeightedGraph::from_edges([(0, 1, 2), (1, 2, 5)]);
        assert_eq!(brute_force_mwm(&p3).unwrap().0, 5);
        // v=0 u=1 a=2 b=3 c=4
        let g = WeightedGraph::from_edges([
            (0, 1, 5),
            (1, 2, 6),
            (1, 3, 9),
            (1, 4, 3),
            (3, 4, 4),
        ]);
        let (w, m) = brute_force_mwm(&g).unwrap();
        assert_eq!(w, 10);
        m.validate_weighted(&g).unwrap();
        assert!(m.contains(Edge::new(1, 2)) && m.contains(Edge::new(3, 4)));
    }

    #[test]
    fn vertex_cover_examples() {
        assert_eq!(brute_force_vc(&cycle(5)).unwrap(), 3);
        assert_eq!(brute_force_vc(&complete_bipartite(1, 3)).unwrap(), 1);
        let k4 = Graph::from_edges([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(brute_force_vc(&k4).unwrap(), 3);
        assert_eq!(brute_force_vc(&Graph::new()).unwrap(), 0);
    }

    #[test]
    fn guards_refuse_large_graphs() {
        let big = cycle(21);
        assert!(matches!(
            brute_force_mcm(&big),
            Err(Error::GuardExceeded { .. })
        ));
        assert!(brute_force_vc(&big).is_err());
        assert!(brute_force_mwm(&WeightedGraph::uniform(&cycle(19), 1)).is_err());
    }
}
