use std::collections::VecDeque;

use crate::graph::{Edge, Graph, VertexId};
use crate::matching::Matching;

const NONE: usize = usize::MAX;

/// Edmonds' augmenting-path search with blossom contraction on `0..n`.
struct Edmonds<'a> {
    adj: &'a [Vec<usize>],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    on_path: Vec<bool>,
    // Vertices whose search state differs from the reset state.
    touched: Vec<usize>,
    is_touched: Vec<bool>,
}

impl<'a> Edmonds<'a> {
    fn new(adj: &'a [Vec<usize>]) -> Self {
        let n = adj.len();
        Edmonds {
            adj,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            on_path: vec![false; n],
            touched: Vec::new(),
            is_touched: vec![false; n],
        }
    }

    fn touch(&mut self, v: usize) {
        if !self.is_touched[v] {
            self.is_touched[v] = true;
            self.touched.push(v);
        }
    }

    fn reset(&mut self) {
        for &v in &self.touched {
            self.parent[v] = NONE;
            self.base[v] = v;
            self.used[v] = false;
            self.is_touched[v] = false;
        }
        self.touched.clear();
    }

    fn lca(&mut self, mut a: usize, mut b: usize) -> usize {
        let mut path = Vec::new();
        loop {
            a = self.base[a];
            self.on_path[a] = true;
            path.push(a);
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        let found = loop {
            b = self.base[b];
            if self.on_path[b] {
                break b;
            }
            b = self.parent[self.mate[b]];
        };
        for v in path {
            self.on_path[v] = false;
        }
        found
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize, marked: &mut Vec<usize>) {
        while self.base[v] != b {
            let mv = self.mate[v];
            for x in [self.base[v], self.base[mv]] {
                if !self.in_blossom[x] {
                    self.in_blossom[x] = true;
                    marked.push(x);
                }
            }
            self.parent[v] = child;
            self.touch(v);
            child = mv;
            v = self.parent[mv];
        }
    }

    /// Returns the free endpoint of an augmenting path from `root`, with the
    /// path encoded in `parent`/`mate`.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        self.reset();
        self.used[root] = true;
        self.touch(root);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for i in 0..self.adj[v].len() {
                let to = self.adj[v][i];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    let mut marked = Vec::new();
                    self.mark_path(v, cur, to, &mut marked);
                    self.mark_path(to, cur, v, &mut marked);
                    let tree = self.touched.clone();
                    for x in tree {
                        if self.in_blossom[self.base[x]] {
                            self.base[x] = cur;
                            if !self.used[x] {
                                self.used[x] = true;
                                queue.push_back(x);
                            }
                        }
                    }
                    for x in marked {
                        self.in_blossom[x] = false;
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    self.touch(to);
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.touch(next);
                    queue.push_back(next);
                }
            }
        }
        None
    }

    fn run(mut self) -> Vec<usize> {
        let n = self.adj.len();
        // Greedy start; augmentations fix any suboptimal choices.
        for v in 0..n {
            if self.mate[v] == NONE {
                if let Some(&u) = self.adj[v].iter().find(|&&u| self.mate[u] == NONE) {
                    self.mate[v] = u;
                    self.mate[u] = v;
                }
            }
        }
        for root in 0..n {
            if self.mate[root] != NONE {
                continue;
            }
            if let Some(mut v) = self.find_path(root) {
                while v != NONE {
                    let pv = self.parent[v];
                    let ppv = self.mate[pv];
                    self.mate[v] = pv;
                    self.mate[pv] = v;
                    v = ppv;
                }
            }
        }
        self.mate
    }
}

/// Maximum-cardinality matching of a general graph.
pub fn blossom_mcm(g: &Graph) -> Matching {
    let ids: Vec<VertexId> = g.vertices().collect();
    let index: std::collections::HashMap<VertexId, usize> =
        ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let adj: Vec<Vec<usize>> = ids
        .iter()
        .map(|v| g.neighbors(*v).unwrap().iter().map(|x| index[x]).collect())
        .collect();
    let mate = Edmonds::new(&adj).run();
    mate.iter()
        .enumerate()
        .filter(|&(v, &u)| u != NONE && v < u)
        .map(|(v, &u)| (Edge::new(ids[v], ids[u]), 0))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(edges)
    }

    #[test]
    fn odd_cycle() {
        let c5 = Graph::from_edges((0..5).map(|i| (i, (i + 1) % 5)));
        let m = blossom_mcm(&c5);
        assert_eq!(m.cardinality(), 2);
        m.validate(&c5).unwrap();
    }

    #[test]
    fn petersen_is_perfect() {
        let g = petersen();
        let m = blossom_mcm(&g);
        assert_eq!(m.cardinality(), 5);
        m.validate(&g).unwrap();
    }

    #[test]
    fn blossom_must_be_contracted() {
        // Triangle 0-1-2 with stems 2-3 and 0-4 (greedy picks 0-1 first).
        let g = Graph::from_edges([(0, 1), (1, 2), (2, 0), (2, 3), (1, 5), (0, 4)]);
        let m = blossom_mcm(&g);
        assert_eq!(m.cardinality(), 3);
        m.validate(&g).unwrap();
    }
}
