/// Directed graph on `0..n` with deduplicated out-arcs.
#[derive(Clone, Debug, Default)]
pub struct Digraph {
    out: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph {
            out: vec![Vec::new(); n],
        }
    }

    pub fn add_arc(&mut self, from: usize, to: usize) {
        self.out[from].push(to);
    }

    pub fn len(&self) -> usize {
        self.out.len()
    }

    pub fn is_empty(&self) -> bool {
        self.out.is_empty()
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    /// Sorts and deduplicates every arc list.
    pub fn normalize(&mut self) {
        for arcs in &mut self.out {
            arcs.sort_unstable();
            arcs.dedup();
        }
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(v, arcs)| arcs.iter().map(move |&w| (v, w)))
    }

    fn transpose(&self) -> Digraph {
        let mut t = Digraph::new(self.len());
        for (v, w) in self.arcs() {
            t.out[w].push(v);
        }
        t
    }
}

/// Post-order of an iterative DFS over all vertices in ascending order.
fn finish_order(g: &Digraph) -> Vec<usize> {
    let n = g.len();
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for start in 0..n {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        stack.push((start, 0));
        while let Some((v, i)) = stack.last_mut() {
            let v = *v;
            if let Some(&w) = g.out[v].get(*i) {
                *i += 1;
                if !visited[w] {
                    visited[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(v);
                stack.pop();
            }
        }
    }
    order
}

/// Strongly connected components in reverse topological order: whenever an
/// arc leads from component `A` to a different component `B`, `B` is listed
/// before `A`.
pub fn kosaraju_scc(g: &Digraph) -> Vec<Vec<usize>> {
    // Finishing order on the transpose, then sweeps on the original graph:
    // the first sweep starts inside a sink component of `g`.
    let order = finish_order(&g.transpose());
    let n = g.len();
    let mut assigned = vec![false; n];
    let mut components = Vec::new();
    let mut stack = Vec::new();
    for &start in order.iter().rev() {
        if assigned[start] {
            continue;
        }
        assigned[start] = true;
        let mut comp = vec![start];
        stack.push(start);
        while let Some(v) = stack.pop() {
            for &w in &g.out[v] {
                if !assigned[w] {
                    assigned[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        components.push(comp);
    }
    components
}

/// Component index of every vertex, given components as returned by
/// [`kosaraju_scc`].
pub fn component_index(n: usize, components: &[Vec<usize>]) -> Vec<usize> {
    let mut index = vec![usize::MAX; n];
    for (i, comp) in components.iter().enumerate() {
        for &v in comp {
            index[v] = i;
        }
    }
    index
}

#[cfg(test)]
mod tests {
    use super::*;

    fn digraph(n: usize, arcs: &[(usize, usize)]) -> Digraph {
        let mut g = Digraph::new(n);
        for &(a, b) in arcs {
            g.add_arc(a, b);
        }
        g.normalize();
        g
    }

    #[test]
    fn path_comes_out_sink_first() {
        let g = digraph(3, &[(0, 1), (1, 2)]);
        assert_eq!(kosaraju_scc(&g), vec![vec![2], vec![1], vec![0]]);
    }

    #[test]
    fn cycle_is_one_component() {
        let g = digraph(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(kosaraju_scc(&g), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn joined_two_cycles() {
        let g = digraph(4, &[(0, 1), (1, 0), (2, 3), (3, 2), (1, 2)]);
        assert_eq!(kosaraju_scc(&g), vec![vec![2, 3], vec![0, 1]]);
    }

    #[test]
    fn duplicate_arcs_collapse() {
        let mut g = Digraph::new(2);
        g.add_arc(0, 1);
        g.add_arc(0, 1);
        g.normalize();
        assert_eq!(g.arcs().count(), 1);
    }
}
