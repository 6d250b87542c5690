use std::collections::VecDeque;

/// Bipartite graph on `left` and `right` index ranges with adjacency from
/// the left side. Neighbor lists are kept sorted and deduplicated.
#[derive(Clone, Debug, Default)]
pub struct BipartiteGraph {
    right: usize,
    adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize) -> Self {
        BipartiteGraph {
            right,
            adj: vec![Vec::new(); left],
        }
    }

    pub fn from_adjacency(right: usize, mut adj: Vec<Vec<usize>>) -> Self {
        for nb in &mut adj {
            nb.sort_unstable();
            nb.dedup();
            assert!(nb.iter().all(|&r| r < right), "right index out of range");
        }
        BipartiteGraph { right, adj }
    }

    pub fn add_edge(&mut self, l: usize, r: usize) {
        assert!(r < self.right, "right index out of range");
        let nb = &mut self.adj[l];
        if let Err(pos) = nb.binary_search(&r) {
            nb.insert(pos, r);
        }
    }

    pub fn left_len(&self) -> usize {
        self.adj.len()
    }

    pub fn right_len(&self) -> usize {
        self.right
    }

    pub fn neighbors(&self, l: usize) -> &[usize] {
        &self.adj[l]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteMatching {
    pub left_mate: Vec<Option<usize>>,
    pub right_mate: Vec<Option<usize>>,
}

impl BipartiteMatching {
    pub fn empty(left: usize, right: usize) -> Self {
        BipartiteMatching {
            left_mate: vec![None; left],
            right_mate: vec![None; right],
        }
    }

    pub fn size(&self) -> usize {
        self.left_mate.iter().flatten().count()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.left_mate
            .iter()
            .enumerate()
            .filter_map(|(l, r)| r.map(|r| (l, r)))
    }

    /// Checks that the mate arrays agree and every pair is an edge of `b`.
    pub fn is_valid_in(&self, b: &BipartiteGraph) -> bool {
        if self.left_mate.len() != b.left_len() || self.right_mate.len() != b.right_len() {
            return false;
        }
        let left_ok = self.pairs().all(|(l, r)| {
            self.right_mate[r] == Some(l) && b.neighbors(l).binary_search(&r).is_ok()
        });
        let right_ok = self
            .right_mate
            .iter()
            .enumerate()
            .all(|(r, l)| l.is_none_or(|l| self.left_mate[l] == Some(r)));
        left_ok && right_ok
    }
}

const UNREACHED: usize = usize::MAX;

/// Maximum-cardinality matching by BFS layering and DFS augmentation along
/// vertex-disjoint shortest augmenting paths. Neighbors are scanned in
/// ascending index order.
pub fn hopcroft_karp(b: &BipartiteGraph) -> BipartiteMatching {
    let left = b.left_len();
    let mut m = BipartiteMatching::empty(left, b.right_len());
    let mut dist = vec![UNREACHED; left];
    let mut next = vec![0usize; left];
    let mut queue = VecDeque::new();

    loop {
        // Layer the left side by alternating distance from free vertices.
        queue.clear();
        for (l, (d, mate)) in dist.iter_mut().zip(&m.left_mate).enumerate() {
            if mate.is_none() {
                *d = 0;
                queue.push_back(l);
            } else {
                *d = UNREACHED;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in b.neighbors(l) {
                match m.right_mate[r] {
                    None => found = true,
                    Some(l2) if dist[l2] == UNREACHED => {
                        dist[l2] = dist[l] + 1;
                        queue.push_back(l2);
                    }
                    Some(_) => {}
                }
            }
        }
        if !found {
            return m;
        }

        next.iter_mut().for_each(|i| *i = 0);
        for root in 0..left {
            if m.left_mate[root].is_none() {
                augment(b, &mut m, &mut dist, &mut next, root);
            }
        }
    }
}

/// Iterative layered DFS from `root`; flips the first augmenting path found.
fn augment(
    b: &BipartiteGraph,
    m: &mut BipartiteMatching,
    dist: &mut [usize],
    next: &mut [usize],
    root: usize,
) -> bool {
    let mut stack = vec![root];
    while let Some(&l) = stack.last() {
        let nb = b.neighbors(l);
        if next[l] == nb.len() {
            dist[l] = UNREACHED;
            stack.pop();
            if let Some(&parent) = stack.last() {
                next[parent] += 1;
            }
            continue;
        }
        let r = nb[next[l]];
        match m.right_mate[r] {
            None => {
                for &x in stack.iter().rev() {
                    let y = b.neighbors(x)[next[x]];
                    m.left_mate[x] = Some(y);
                    m.right_mate[y] = Some(x);
                }
                return true;
            }
            Some(l2) if dist[l2] == dist[l].wrapping_add(1) => stack.push(l2),
            Some(_) => next[l] += 1,
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_two_by_two() {
        let b = BipartiteGraph::from_adjacency(2, vec![vec![0, 1], vec![0, 1]]);
        let m = hopcroft_karp(&b);
        assert_eq!(m.size(), 2);
        assert!(m.is_valid_in(&b));
    }

    #[test]
    fn star() {
        let b = BipartiteGraph::from_adjacency(5, vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(hopcroft_karp(&b).size(), 1);
    }

    #[test]
    fn needs_augmentation_through_matched_vertices() {
        // Greedy on ascending ids would pick 0-0 and then strand left 1.
        let b = BipartiteGraph::from_adjacency(2, vec![vec![0, 1], vec![0]]);
        let m = hopcroft_karp(&b);
        assert_eq!(m.size(), 2);
        assert_eq!(m.left_mate, vec![Some(1), Some(0)]);
    }

    #[test]
    fn empty_sides() {
        assert_eq!(hopcroft_karp(&BipartiteGraph::new(0, 3)).size(), 0);
        assert_eq!(hopcroft_karp(&BipartiteGraph::new(3, 0)).size(), 0);
    }
}
