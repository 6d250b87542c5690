//! Degree-zero, degree-one and degree-two rules for maximum-cardinality
//! matching.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::matching::Matching;
use crate::trace::{self, Event, Reduced, Trace};

/// Worklists keyed by degree class, each drained in ascending id order.
#[derive(Default)]
struct Worklist {
    low: BTreeSet<VertexId>,
    two: BTreeSet<VertexId>,
}

impl Worklist {
    fn enqueue(&mut self, g: &Graph, v: VertexId) {
        match g.degree(v) {
            Some(0 | 1) => {
                self.low.insert(v);
            }
            Some(2) => {
                self.two.insert(v);
            }
            _ => {}
        }
    }
}

/// Applies the degree rules in place until every vertex has degree at least
/// three. Degree zero and one are always drained before any degree-two fold.
pub fn reduce_degree_rules(g: &mut Graph, trace: &mut Trace) -> Result<bool> {
    let mut work = Worklist::default();
    for v in g.vertices() {
        work.enqueue(g, v);
    }
    let mut changed = false;
    loop {
        if let Some(v) = work.low.pop_first() {
            match g.degree(v) {
                Some(0) => {
                    g.remove_vertex(v)?;
                    trace.push(Event::IsolatedVertex { v })?;
                }
                Some(1) => {
                    let u = *g.neighbors(v).and_then(|nb| nb.first()).expect("one neighbor");
                    g.remove_vertex(v)?;
                    let touched = g.remove_vertex(u)?;
                    trace.push(Event::DegreeOneMatch { v, u })?;
                    for x in touched {
                        work.enqueue(g, x);
                    }
                }
                _ => continue,
            }
            changed = true;
            continue;
        }
        let Some(v) = work.two.pop_first() else { break };
        if g.degree(v) != Some(2) {
            continue;
        }
        let nb = g.remove_vertex(v)?;
        let mut it = nb.into_iter();
        let (u, w) = (it.next().expect("neighbor"), it.next().expect("neighbor"));
        let merge = g.merge_vertices(u, w)?;
        let z = merge.merged;
        work.enqueue(g, z);
        for &x in merge.provenance.keys() {
            work.enqueue(g, x);
        }
        trace.push(Event::DegreeTwoFold {
            v,
            u,
            w,
            z,
            provenance: merge.provenance.into_iter().collect(),
        })?;
        changed = true;
    }
    debug_assert!(g.check_invariants().is_ok());
    Ok(changed)
}

pub fn apply_degree_rules_exhaustive(g: &Graph) -> Result<Reduced<Graph>> {
    let mut kernel = g.clone();
    let mut trace = Trace::new();
    reduce_degree_rules(&mut kernel, &mut trace)?;
    Ok(Reduced { kernel, trace })
}

/// Lifts a matching of an unweighted kernel to the original graph.
pub fn lift_matching_unweighted(
    original: &Graph,
    reduced: &Reduced<Graph>,
    kernel_matching: &Matching,
) -> Result<Matching> {
    trace::lift_unweighted(original, &reduced.kernel, &reduced.trace, kernel_matching)
}

/// Measured kernel size against `a·k` vertices and `b·k` edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub k: usize,
    pub vertices: usize,
    pub edges: usize,
    pub vertex_bound: usize,
    pub edge_bound: usize,
}

impl BoundReport {
    pub fn new(k: usize, vertices: usize, edges: usize, a: usize, b: usize) -> Self {
        BoundReport {
            k,
            vertices,
            edges,
            vertex_bound: a * k,
            edge_bound: b * k,
        }
    }

    pub fn holds(&self) -> bool {
        self.vertices <= self.vertex_bound && self.edges <= self.edge_bound
    }

    pub fn vertex_slack(&self) -> i64 {
        self.vertex_bound as i64 - self.vertices as i64
    }

    pub fn edge_slack(&self) -> i64 {
        self.edge_bound as i64 - self.edges as i64
    }

    pub fn check(self) -> Result<Self> {
        if self.holds() {
            Ok(self)
        } else {
            Err(Error::BoundViolation(format!(
                "kernel has {} vertices and {} edges, bound is {} and {} for k = {}",
                self.vertices, self.edges, self.vertex_bound, self.edge_bound, self.k
            )))
        }
    }
}

/// Checks the degree-rule kernel against `2k` vertices and `3k` edges.
pub fn check_fes_kernel_bound(g: &Graph, kernel: &Graph) -> Result<BoundReport> {
    BoundReport::new(g.feedback_edge_number(), kernel.n(), kernel.m(), 2, 3).check()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::{blossom_mcm, brute_force_mcm};

    fn cycle(n: u64) -> Graph {
        Graph::from_edges((0..n).map(|i| (i, (i + 1) % n)))
    }

    fn k4() -> Graph {
        Graph::from_edges([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    fn solve_and_lift(g: &Graph) -> (Reduced<Graph>, Matching) {
        let r = apply_degree_rules_exhaustive(g).unwrap();
        let m = blossom_mcm(&r.kernel);
        let lifted = lift_matching_unweighted(g, &r, &m).unwrap();
        (r, lifted)
    }

    #[test]
    fn c5_vanishes() {
        let g = cycle(5);
        let (r, lifted) = solve_and_lift(&g);
        assert!(r.kernel.is_empty());
        assert_eq!(r.trace.cardinality_offset(), 2);
        assert_eq!(lifted.cardinality(), 2);
    }

    #[test]
    fn k4_is_a_fixpoint() {
        let r = apply_degree_rules_exhaustive(&k4()).unwrap();
        assert_eq!(r.kernel, k4());
        assert_eq!(r.trace.cardinality_offset(), 0);
        let report = check_fes_kernel_bound(&k4(), &r.kernel).unwrap();
        assert_eq!((report.k, report.vertex_bound, report.edge_bound), (3, 6, 9));
    }

    #[test]
    fn paths_and_even_cycles() {
        let p3 = Graph::from_edges([(0, 1), (1, 2)]);
        let (r, lifted) = solve_and_lift(&p3);
        assert!(r.kernel.is_empty());
        assert_eq!(lifted.cardinality(), 1);
        let (_, lifted) = solve_and_lift(&cycle(4));
        assert_eq!(lifted.cardinality(), 2);
        lifted.validate(&cycle(4)).unwrap();
    }

    #[test]
    fn merge_provenance_is_used() {
        // two triangles sharing vertex 0, plus a pendant path
        let g = Graph::from_edges([(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0), (4, 5), (5, 6), (6, 7), (7, 4)]);
        let (r, lifted) = solve_and_lift(&g);
        assert_eq!(lifted.cardinality(), brute_force_mcm(&g).unwrap().0);
        assert_eq!(
            brute_force_mcm(&r.kernel).unwrap().0 as u64 + r.trace.cardinality_offset(),
            brute_force_mcm(&g).unwrap().0 as u64
        );
    }

    #[test]
    fn idempotent() {
        let g = Graph::from_edges([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 3)]);
        let r = apply_degree_rules_exhaustive(&g).unwrap();
        let again = apply_degree_rules_exhaustive(&r.kernel).unwrap();
        assert_eq!(again.kernel, r.kernel);
        assert!(again.trace.is_empty());
    }

    #[test]
    fn bound_violation_is_reported() {
        let tree = Graph::from_edges([(0, 1)]);
        assert!(matches!(
            check_fes_kernel_bound(&tree, &tree),
            Err(Error::BoundViolation(_))
        ));
    }
}
