//! Simple undirected graphs with stable vertex identifiers.
//!
//! Every construction site drops self-loops and collapses parallel edges, so
//! the simplicity and symmetry invariants hold after any sequence of
//! mutations. Fresh vertices (merge results and the replacement vertices of
//! the weighted rules) are drawn from a counter that always stays above every
//! identifier the graph has ever seen.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::ops::Bound::{Excluded, Unbounded};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = u64;
pub type Weight = u64;

/// An undirected edge, stored with its smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(VertexId, VertexId);

impl Edge {
    pub fn new(a: VertexId, b: VertexId) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn u(&self) -> VertexId {
        self.0
    }

    pub fn v(&self) -> VertexId {
        self.1
    }

    pub fn contains(&self, x: VertexId) -> bool {
        self.0 == x || self.1 == x
    }

    /// The endpoint opposite to `x`, if `x` is an endpoint.
    pub fn other(&self, x: VertexId) -> Option<VertexId> {
        if self.0 == x {
            Some(self.1)
        } else if self.1 == x {
            Some(self.0)
        } else {
            None
        }
    }
}

impl std::fmt::Display for Edge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// Which of the two merged vertices a neighbor of the merge result was
/// adjacent to before the merge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    First,
    Second,
    Both,
}

impl Provenance {
    pub fn has_first(self) -> bool {
        matches!(self, Provenance::First | Provenance::Both)
    }

    pub fn has_second(self) -> bool {
        matches!(self, Provenance::Second | Provenance::Both)
    }
}

/// Result of [`Graph::merge_vertices`]: the fresh vertex and, for each of its
/// neighbors, which original endpoints were adjacent to that neighbor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Merge {
    pub merged: VertexId,
    pub provenance: BTreeMap<VertexId, Provenance>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
    m: usize,
    next_id: VertexId,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_edges<I: IntoIterator<Item = (VertexId, VertexId)>>(edges: I) -> Self {
        let mut g = Graph::new();
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// The smallest identifier that has never been used in this graph.
    pub fn next_id(&self) -> VertexId {
        self.next_id
    }

    /// Reserves identifiers so that fresh vertices start at `id` or later.
    pub fn reserve_ids(&mut self, id: VertexId) {
        self.next_id = self.next_id.max(id);
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj.get(&u).is_some_and(|nb| nb.contains(&v))
    }

    pub fn degree(&self, v: VertexId) -> Option<usize> {
        self.adj.get(&v).map(BTreeSet::len)
    }

    pub fn neighbors(&self, v: VertexId) -> Option<&BTreeSet<VertexId>> {
        self.adj.get(&v)
    }

    /// Vertices in ascending order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    /// Edges in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().flat_map(|(&u, nb)| {
            nb.range((Excluded(u), Unbounded)).map(move |&v| Edge(u, v))
        })
    }

    pub fn add_vertex(&mut self, v: VertexId) -> bool {
        self.next_id = self.next_id.max(v.saturating_add(1));
        if self.adj.contains_key(&v) {
            return false;
        }
        self.adj.insert(v, BTreeSet::new());
        true
    }

    /// Adds a vertex with an identifier never used before in this graph.
    pub fn add_fresh_vertex(&mut self) -> VertexId {
        let z = self.next_id;
        self.add_vertex(z);
        z
    }

    /// Inserts `uv`, creating missing endpoints. Returns `false` for
    /// self-loops and edges that are already present.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> bool {
        self.add_vertex(u);
        self.add_vertex(v);
        if u == v {
            return false;
        }
        let inserted = self.adj.get_mut(&u).expect("endpoint").insert(v);
        if inserted {
            self.adj.get_mut(&v).expect("endpoint").insert(u);
            self.m += 1;
        }
        inserted
    }

    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> bool {
        let removed = self.adj.get_mut(&u).is_some_and(|nb| nb.remove(&v));
        if removed {
            self.adj.get_mut(&v).expect("symmetric adjacency").remove(&u);
            self.m -= 1;
        }
        removed
    }

    /// Removes `v` and its incident edges, returning its former neighbors.
    pub fn remove_vertex(&mut self, v: VertexId) -> Result<BTreeSet<VertexId>> {
        let nb = self.adj.remove(&v).ok_or(Error::UnknownVertex(v))?;
        for x in &nb {
            let removed = self.adj.get_mut(x).expect("symmetric adjacency").remove(&v);
            debug_assert!(removed, "asymmetric adjacency at {x}-{v}");
        }
        self.m -= nb.len();
        Ok(nb)
    }

    /// Replaces `u` and `w` by a fresh vertex adjacent to
    /// `(N(u) ∪ N(w)) \ {u, w}`. The edge `uw`, if present, disappears.
    pub fn merge_vertices(&mut self, u: VertexId, w: VertexId) -> Result<Merge> {
        if u == w {
            return Err(Error::Precondition(format!("cannot merge {u} with itself")));
        }
        if !self.contains_vertex(u) {
            return Err(Error::UnknownVertex(u));
        }
        if !self.contains_vertex(w) {
            return Err(Error::UnknownVertex(w));
        }
        let nu = self.remove_vertex(u)?;
        let nw = self.remove_vertex(w)?;
        let mut provenance = BTreeMap::new();
        for &x in nu.iter().filter(|&&x| x != w) {
            provenance.insert(x, Provenance::First);
        }
        for &x in nw.iter().filter(|&&x| x != u) {
            provenance
                .entry(x)
                .and_modify(|p| *p = Provenance::Both)
                .or_insert(Provenance::Second);
        }
        let z = self.add_fresh_vertex();
        for &x in provenance.keys() {
            self.add_edge(z, x);
        }
        debug_assert!(self.locally_consistent(z));
        Ok(Merge {
            merged: z,
            provenance,
        })
    }

    /// Symmetry check restricted to `v` and its neighborhood.
    fn locally_consistent(&self, v: VertexId) -> bool {
        match self.adj.get(&v) {
            None => true,
            Some(nb) => nb
                .iter()
                .all(|x| *x != v && self.adj.get(x).is_some_and(|nx| nx.contains(&v))),
        }
    }

    /// Full check of simplicity, symmetry and the cached edge count.
    pub fn check_invariants(&self) -> Result<()> {
        let mut degree_sum = 0usize;
        for (&v, nb) in &self.adj {
            if nb.contains(&v) {
                return Err(Error::Internal(format!("self-loop at {v}")));
            }
            if v >= self.next_id {
                return Err(Error::Internal(format!("vertex {v} above id counter")));
            }
            for x in nb {
                if !self.adj.get(x).is_some_and(|nx| nx.contains(&v)) {
                    return Err(Error::Internal(format!("asymmetric edge {v}-{x}")));
                }
            }
            degree_sum += nb.len();
        }
        if degree_sum != 2 * self.m {
            return Err(Error::Internal(format!(
                "edge count {} disagrees with degree sum {degree_sum}",
                self.m
            )));
        }
        Ok(())
    }

    /// Induced subgraph on the given vertices; unknown ids are ignored.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> Graph {
        let mut g = Graph::new();
        g.next_id = self.next_id;
        for &v in keep {
            if let Some(nb) = self.adj.get(&v) {
                g.add_vertex(v);
                for &x in nb.range((Excluded(v), Unbounded)) {
                    if keep.contains(&x) {
                        g.add_edge(v, x);
                    }
                }
            }
        }
        g
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut components = Vec::new();
        for start in self.vertices() {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &x in &self.adj[&v] {
                    if seen.insert(x) {
                        comp.push(x);
                        queue.push_back(x);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components
    }

    /// Size of a minimum feedback edge set: `m - n + c`.
    pub fn feedback_edge_number(&self) -> usize {
        self.m + self.connected_components().len() - self.n()
    }

    /// Maps every vertex id through `f`, which must be injective on the
    /// vertex set.
    pub fn relabel<F: Fn(VertexId) -> VertexId>(&self, f: F) -> Graph {
        let mut g = Graph::new();
        g.next_id = self.next_id;
        for v in self.vertices() {
            g.add_vertex(f(v));
        }
        for e in self.edges() {
            g.add_edge(f(e.u()), f(e.v()));
        }
        g
    }
}

/// A graph with a non-negative integer weight on every edge.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightedGraph {
    graph: Graph,
    weights: HashMap<Edge, Weight>,
}

impl WeightedGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_edges<I: IntoIterator<Item = (VertexId, VertexId, Weight)>>(edges: I) -> Self {
        let mut g = WeightedGraph::new();
        for (u, v, w) in edges {
            g.add_edge(u, v, w);
        }
        g
    }

    /// Gives every edge of `g` the same weight.
    pub fn uniform(g: &Graph, weight: Weight) -> Self {
        let weights = g.edges().map(|e| (e, weight)).collect();
        WeightedGraph {
            graph: g.clone(),
            weights,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn m(&self) -> usize {
        self.graph.m()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.graph.contains_vertex(v)
    }

    pub fn degree(&self, v: VertexId) -> Option<usize> {
        self.graph.degree(v)
    }

    pub fn neighbors(&self, v: VertexId) -> Option<&BTreeSet<VertexId>> {
        self.graph.neighbors(v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.graph.vertices()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Edge, Weight)> + '_ {
        self.graph.edges().map(|e| (e, self.weights[&e]))
    }

    pub fn weight(&self, u: VertexId, v: VertexId) -> Option<Weight> {
        self.weights.get(&Edge::new(u, v)).copied()
    }

    pub fn total_weight(&self) -> u128 {
        self.weights.values().map(|&w| w as u128).sum()
    }

    pub fn add_vertex(&mut self, v: VertexId) -> bool {
        self.graph.add_vertex(v)
    }

    pub fn add_fresh_vertex(&mut self) -> VertexId {
        self.graph.add_fresh_vertex()
    }

    pub fn next_id(&self) -> VertexId {
        self.graph.next_id()
    }

    pub fn reserve_ids(&mut self, id: VertexId) {
        self.graph.reserve_ids(id);
    }

    /// Inserts `uv` with weight `w`. An existing edge keeps its first weight.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId, w: Weight) -> bool {
        if self.graph.add_edge(u, v) {
            self.weights.insert(Edge::new(u, v), w);
            true
        } else {
            false
        }
    }

    /// Sets the weight of an existing edge.
    pub fn set_weight(&mut self, u: VertexId, v: VertexId, w: Weight) -> Result<()> {
        match self.weights.get_mut(&Edge::new(u, v)) {
            Some(slot) => {
                *slot = w;
                Ok(())
            }
            None => Err(Error::InvalidStructure(format!("no edge {u}-{v}"))),
        }
    }

    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> Option<Weight> {
        if self.graph.remove_edge(u, v) {
            self.weights.remove(&Edge::new(u, v))
        } else {
            None
        }
    }

    pub fn remove_vertex(&mut self, v: VertexId) -> Result<BTreeSet<VertexId>> {
        let nb = self.graph.remove_vertex(v)?;
        for &x in &nb {
            self.weights.remove(&Edge::new(v, x));
        }
        Ok(nb)
    }

    pub fn check_invariants(&self) -> Result<()> {
        self.graph.check_invariants()?;
        if self.weights.len() != self.graph.m() {
            return Err(Error::Internal(format!(
                "{} weights for {} edges",
                self.weights.len(),
                self.graph.m()
            )));
        }
        for e in self.graph.edges() {
            if !self.weights.contains_key(&e) {
                return Err(Error::Internal(format!("edge {e} has no weight")));
            }
        }
        Ok(())
    }

    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        self.graph.connected_components()
    }

    pub fn feedback_edge_number(&self) -> usize {
        self.graph.feedback_edge_number()
    }

    pub fn relabel<F: Fn(VertexId) -> VertexId>(&self, f: F) -> WeightedGraph {
        let mut g = WeightedGraph::new();
        g.graph.reserve_ids(self.graph.next_id());
        for v in self.vertices() {
            g.add_vertex(f(v));
        }
        for (e, w) in self.edges() {
            g.add_edge(f(e.u()), f(e.v()), w);
        }
        g
    }
}

/// A graph whose maximum-weight matchings are exactly half of the
/// maximum-weight perfect matchings of [`PerfectMatchingInstance::graph`].
#[derive(Clone, Debug)]
pub struct PerfectMatchingInstance {
    pub graph: WeightedGraph,
    /// Original vertex to its copy.
    pub copy_of: BTreeMap<VertexId, VertexId>,
}

/// Doubles the input: two copies of every edge plus a weight-zero edge from
/// each vertex to its copy. The linking edges alone form a perfect matching.
pub fn export_perfect_matching_instance(g: &WeightedGraph) -> PerfectMatchingInstance {
    let shift = g.next_id();
    let copy = |v: VertexId| v + shift;
    let mut out = WeightedGraph::new();
    let mut copy_of = BTreeMap::new();
    for v in g.vertices() {
        out.add_vertex(v);
        out.add_vertex(copy(v));
        copy_of.insert(v, copy(v));
    }
    for (e, w) in g.edges() {
        out.add_edge(e.u(), e.v(), w);
        out.add_edge(copy(e.u()), copy(e.v()), w);
    }
    for v in g.vertices() {
        out.add_edge(v, copy(v), 0);
    }
    PerfectMatchingInstance {
        graph: out,
        copy_of,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u64) -> Graph {
        Graph::from_edges((0..n).map(|i| (i, (i + 1) % n)))
    }

    fn complete(n: u64) -> Graph {
        let mut g = Graph::new();
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    #[test]
    fn insertion_drops_loops_and_duplicates() {
        let mut g = Graph::new();
        assert!(g.add_edge(0, 1));
        assert!(!g.add_edge(1, 0));
        assert!(!g.add_edge(2, 2));
        assert_eq!((g.n(), g.m()), (3, 1));
        g.check_invariants().unwrap();
    }

    #[test]
    fn remove_vertex_examples() {
        let mut tri = complete(3);
        tri.remove_vertex(0).unwrap();
        assert_eq!((tri.n(), tri.m()), (2, 1));

        let mut star = Graph::from_edges([(0, 1), (0, 2), (0, 3)]);
        star.remove_vertex(0).unwrap();
        assert_eq!((star.n(), star.m()), (3, 0));

        let mut path = Graph::from_edges([(0, 1), (1, 2)]);
        path.remove_vertex(1).unwrap();
        assert_eq!((path.n(), path.m()), (2, 0));

        assert!(matches!(path.remove_vertex(9), Err(Error::UnknownVertex(9))));
    }

    #[test]
    fn merge_opposite_corners_of_c4() {
        // a=0 b=1 c=2 d=3
        let mut g = cycle(4);
        let merge = g.merge_vertices(0, 2).unwrap();
        let z = merge.merged;
        assert!(z >= 4);
        // b and d both become z's neighbors, each adjacent to a and c before.
        assert_eq!(g.m(), 2);
        assert_eq!(merge.provenance[&1], Provenance::Both);
        assert_eq!(merge.provenance[&3], Provenance::Both);
        g.check_invariants().unwrap();

        // Merging with a vertex adjacent to both collapses to K2.
        let mut g = cycle(4);
        g.remove_vertex(1).unwrap();
        let merge = g.merge_vertices(0, 2).unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
        assert!(g.has_edge(merge.merged, 3));
        assert_eq!(merge.provenance[&3], Provenance::Both);
    }

    #[test]
    fn merge_drops_the_joining_edge() {
        let mut g = complete(3);
        let merge = g.merge_vertices(0, 1).unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
        assert_eq!(merge.provenance[&2], Provenance::Both);
        g.check_invariants().unwrap();
    }

    #[test]
    fn merge_joins_two_edges_into_a_path() {
        let mut g = Graph::from_edges([(0, 1), (2, 3)]);
        let merge = g.merge_vertices(1, 2).unwrap();
        let z = merge.merged;
        assert!(g.has_edge(0, z) && g.has_edge(z, 3));
        assert_eq!(merge.provenance[&0], Provenance::First);
        assert_eq!(merge.provenance[&3], Provenance::Second);
        assert!(g.merge_vertices(0, 0).is_err());
        assert!(g.merge_vertices(0, 17).is_err());
    }

    #[test]
    fn components() {
        assert!(Graph::new().connected_components().is_empty());
        let g = Graph::from_edges([(0, 1), (2, 3)]);
        assert_eq!(g.connected_components(), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(cycle(5).connected_components().len(), 1);
    }

    #[test]
    fn feedback_edge_numbers() {
        let forest = Graph::from_edges([(0, 1), (1, 2), (1, 3), (5, 6)]);
        assert_eq!(forest.feedback_edge_number(), 0);
        assert_eq!(cycle(5).feedback_edge_number(), 1);
        assert_eq!(complete(4).feedback_edge_number(), 3);
    }

    #[test]
    fn perfect_matching_export_sizes() {
        let single = WeightedGraph::from_edges([(0, 1, 5)]);
        let out = export_perfect_matching_instance(&single);
        assert_eq!((out.graph.n(), out.graph.m()), (4, 4));
        let heavy: Vec<_> = out.graph.edges().filter(|(_, w)| *w == 5).collect();
        assert_eq!(heavy.len(), 2);

        let mut empty = WeightedGraph::new();
        for v in 0..3 {
            empty.add_vertex(v);
        }
        let out = export_perfect_matching_instance(&empty);
        assert_eq!((out.graph.n(), out.graph.m()), (6, 3));
        assert!(out.graph.edges().all(|(_, w)| w == 0));

        let p3 = WeightedGraph::uniform(&Graph::from_edges([(0, 1), (1, 2)]), 1);
        let out = export_perfect_matching_instance(&p3);
        assert_eq!((out.graph.n(), out.graph.m()), (6, 7));
        for (v, c) in &out.copy_of {
            assert_eq!(out.graph.weight(*v, *c), Some(0));
        }
    }

    #[test]
    fn weighted_first_weight_wins() {
        let mut g = WeightedGraph::new();
        assert!(g.add_edge(0, 1, 5));
        assert!(!g.add_edge(1, 0, 9));
        assert_eq!(g.weight(1, 0), Some(5));
        g.check_invariants().unwrap();
        g.remove_vertex(0).unwrap();
        assert_eq!(g.m(), 0);
        g.check_invariants().unwrap();
    }
}
