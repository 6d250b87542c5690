use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId, Weight, WeightedGraph};

/// A set of pairwise vertex-disjoint edges together with their weights.
///
/// Unweighted matchings carry weight zero on every edge.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Matching {
    edges: BTreeMap<Edge, Weight>,
    covered: HashMap<VertexId, VertexId>,
}

impl Matching {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a matching of `g` from unweighted edges, checking disjointness
    /// and edge membership.
    pub fn in_graph<I: IntoIterator<Item = Edge>>(g: &Graph, edges: I) -> Result<Self> {
        let mut m = Matching::new();
        for e in edges {
            if !g.has_edge(e.u(), e.v()) {
                return Err(Error::InvalidMatching(format!("{e} is not an edge")));
            }
            m.insert(e, 0)?;
        }
        Ok(m)
    }

    /// Like [`Matching::in_graph`], taking weights from `g`.
    pub fn in_weighted_graph<I: IntoIterator<Item = Edge>>(
        g: &WeightedGraph,
        edges: I,
    ) -> Result<Self> {
        let mut m = Matching::new();
        for e in edges {
            let w = g
                .weight(e.u(), e.v())
                .ok_or_else(|| Error::InvalidMatching(format!("{e} is not an edge")))?;
            m.insert(e, w)?;
        }
        Ok(m)
    }

    /// Adds an edge, rejecting it when an endpoint is already matched.
    pub fn insert(&mut self, e: Edge, w: Weight) -> Result<()> {
        if let Some(x) = [e.u(), e.v()].into_iter().find(|&x| self.covers(x)) {
            return Err(Error::InvalidMatching(format!(
                "vertex {x} would be matched twice by {e}"
            )));
        }
        self.edges.insert(e, w);
        self.covered.insert(e.u(), e.v());
        self.covered.insert(e.v(), e.u());
        Ok(())
    }

    /// Removes `e` if present, returning its weight.
    pub fn remove(&mut self, e: Edge) -> Option<Weight> {
        let w = self.edges.remove(&e)?;
        self.covered.remove(&e.u());
        self.covered.remove(&e.v());
        Some(w)
    }

    pub fn covers(&self, x: VertexId) -> bool {
        self.covered.contains_key(&x)
    }

    pub fn mate(&self, x: VertexId) -> Option<VertexId> {
        self.covered.get(&x).copied()
    }

    pub fn cardinality(&self) -> usize {
        self.edges.len()
    }

    pub fn weight(&self) -> u128 {
        self.edges.values().map(|&w| w as u128).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.keys().copied()
    }

    pub fn weighted_edges(&self) -> impl Iterator<Item = (Edge, Weight)> + '_ {
        self.edges.iter().map(|(&e, &w)| (e, w))
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.contains_key(&e)
    }

    /// Checks disjointness and that every edge exists in `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let mut seen = HashMap::new();
        for e in self.edges.keys() {
            if !g.has_edge(e.u(), e.v()) {
                return Err(Error::InvalidMatching(format!("{e} is not an edge")));
            }
            for x in [e.u(), e.v()] {
                if let Some(prev) = seen.insert(x, *e) {
                    return Err(Error::InvalidMatching(format!(
                        "vertex {x} is covered by both {prev} and {e}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Like [`Matching::validate`], also checking the recorded weights.
    pub fn validate_weighted(&self, g: &WeightedGraph) -> Result<()> {
        self.validate(g.graph())?;
        for (e, w) in &self.edges {
            let actual = g.weight(e.u(), e.v()).expect("validated edge");
            if actual != *w {
                return Err(Error::InvalidMatching(format!(
                    "{e} recorded with weight {w}, graph says {actual}"
                )));
            }
        }
        Ok(())
    }
}

impl FromIterator<(Edge, Weight)> for Matching {
    /// Collects edges without checks; callers validate afterwards.
    fn from_iter<I: IntoIterator<Item = (Edge, Weight)>>(iter: I) -> Self {
        let edges: BTreeMap<Edge, Weight> = iter.into_iter().collect();
        let mut covered = HashMap::with_capacity(2 * edges.len());
        for e in edges.keys() {
            covered.insert(e.u(), e.v());
            covered.insert(e.v(), e.u());
        }
        Matching { edges, covered }
    }
}
