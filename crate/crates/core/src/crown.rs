//! Crown reductions through the vertex cover LP.
//!
//! The LP is solved on the bipartite double cover: a maximum matching gives
//! a Kőnig cover, the cover gives a half-integral optimum, and strongly
//! connected components of the residual orientation push as many variables
//! as possible away from one half. Removing the integral part removes every
//! crown at once.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};
use crate::matching::Matching;
use crate::solvers::{hopcroft_karp, kosaraju_scc, BipartiteGraph, BipartiteMatching, Digraph};
use crate::trace::{self, Event, Reduced, Trace};
use crate::unweighted::reduce_degree_rules;

/// Largest graph the exhaustive crown searches accept.
pub const CROWN_SEARCH_LIMIT: usize = 16;

/// Bipartite double cover: left index `i` is `ids[i]_L`, right index `j` is
/// `ids[j]_R`, and `i_L j_R` is an edge whenever `ids[i] ids[j]` is.
#[derive(Clone, Debug)]
pub struct BipartiteDouble {
    pub ids: Vec<VertexId>,
    pub graph: BipartiteGraph,
}

pub fn build_bipartite_double(g: &Graph) -> BipartiteDouble {
    let ids: Vec<VertexId> = g.vertices().collect();
    let index: HashMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let adj = ids
        .iter()
        .map(|v| g.neighbors(*v).expect("vertex").iter().map(|x| index[x]).collect())
        .collect();
    BipartiteDouble {
        graph: BipartiteGraph::from_adjacency(ids.len(), adj),
        ids,
    }
}

/// A vertex cover of a bipartite double, as membership flags per side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCover {
    pub left: Vec<bool>,
    pub right: Vec<bool>,
}

impl DoubleCover {
    pub fn size(&self) -> usize {
        self.left.iter().chain(&self.right).filter(|&&x| x).count()
    }

    fn covers_all(&self, b: &BipartiteGraph) -> bool {
        (0..b.left_len()).all(|l| self.left[l] || b.neighbors(l).iter().all(|&r| self.right[r]))
    }
}

/// Kőnig's construction: with `Z` the vertices reachable from free left
/// vertices by alternating paths, the cover is `(L \ Z) ∪ (R ∩ Z)`.
pub fn konig_vertex_cover(b: &BipartiteDouble, m: &BipartiteMatching) -> Result<DoubleCover> {
    let bg = &b.graph;
    if !m.is_valid_in(bg) {
        return Err(Error::Precondition("not a matching of the double cover".into()));
    }
    let mut z_left = vec![false; bg.left_len()];
    let mut z_right = vec![false; bg.right_len()];
    let mut queue: VecDeque<usize> = (0..bg.left_len()).filter(|&l| m.left_mate[l].is_none()).collect();
    for &l in &queue {
        z_left[l] = true;
    }
    while let Some(l) = queue.pop_front() {
        for &r in bg.neighbors(l) {
            if m.left_mate[l] == Some(r) || z_right[r] {
                continue;
            }
            z_right[r] = true;
            match m.right_mate[r] {
                None => {
                    return Err(Error::Precondition(
                        "matching is not maximum: an augmenting path exists".into(),
                    ))
                }
                Some(l2) if !z_left[l2] => {
                    z_left[l2] = true;
                    queue.push_back(l2);
                }
                Some(_) => {}
            }
        }
    }
    let cover = DoubleCover {
        left: z_left.iter().map(|&z| !z).collect(),
        right: z_right,
    };
    if cover.size() != m.size() || !cover.covers_all(bg) {
        return Err(Error::Internal("Kőnig cover is not a minimum cover".into()));
    }
    Ok(cover)
}

/// Half-integral vertex cover LP solution.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LpSolution {
    pub zeros: BTreeSet<VertexId>,
    pub halves: BTreeSet<VertexId>,
    pub ones: BTreeSet<VertexId>,
}

impl LpSolution {
    /// Twice the objective value, to stay integral.
    pub fn doubled_value(&self) -> usize {
        2 * self.ones.len() + self.halves.len()
    }

    pub fn value(&self, v: VertexId) -> Option<f64> {
        if self.ones.contains(&v) {
            Some(1.0)
        } else if self.halves.contains(&v) {
            Some(0.5)
        } else if self.zeros.contains(&v) {
            Some(0.0)
        } else {
            None
        }
    }

    /// Every vertex is classified and every edge is covered to at least one.
    pub fn check_feasible(&self, g: &Graph) -> Result<()> {
        if self.zeros.len() + self.halves.len() + self.ones.len() != g.n() {
            return Err(Error::InvalidCover("solution does not partition the vertices".into()));
        }
        for e in g.edges() {
            match (self.value(e.u()), self.value(e.v())) {
                (Some(a), Some(b)) if a + b >= 1.0 => {}
                _ => return Err(Error::InvalidCover(format!("edge {e} is not covered"))),
            }
        }
        Ok(())
    }
}

/// `x_v` is 1 when both copies of `v` are in the cover, 0 when neither is,
/// and one half otherwise.
pub fn lp_solution_from_cover(b: &BipartiteDouble, cover: &DoubleCover) -> Result<LpSolution> {
    let n = b.ids.len();
    if cover.left.len() != n || cover.right.len() != n {
        return Err(Error::InvalidCover("cover has the wrong shape".into()));
    }
    if !cover.covers_all(&b.graph) {
        return Err(Error::InvalidCover("an edge of the double is uncovered".into()));
    }
    let mut sol = LpSolution::default();
    for (i, &v) in b.ids.iter().enumerate() {
        match (cover.left[i], cover.right[i]) {
            (true, true) => sol.ones.insert(v),
            (false, false) => sol.zeros.insert(v),
            _ => sol.halves.insert(v),
        };
    }
    Ok(sol)
}

/// For a perfect matching of the double, finds another optimum with some
/// integral vertices, or `None` when all-half is the unique optimum.
///
/// Minimum covers pick exactly one end of every matching edge. Let `S` be the
/// left vertices outside the cover and `p(v)` the left mate of `v_R`. An edge
/// `a_L b_R` forces `a ∈ S ⇒ p(b) ∈ S`, so covers are the successor-closed
/// sets of that digraph, and `x_v` is integral exactly when one of `v`,
/// `p(v)` is in `S`. Unions of a prefix of the components in reverse
/// topological order are closed; the first prefix not closed under `p`
/// yields the solution.
fn persistent_split(b: &BipartiteDouble, m: &BipartiteMatching) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = b.ids.len();
    let p: Vec<usize> = m.right_mate.iter().map(|l| l.expect("perfect matching")).collect();
    let mut inverse = vec![0; n];
    for (v, &pv) in p.iter().enumerate() {
        inverse[pv] = v;
    }
    let mut d = Digraph::new(n);
    for l in 0..n {
        for &r in b.graph.neighbors(l) {
            if m.left_mate[l] != Some(r) && p[r] != l {
                d.add_arc(l, p[r]);
            }
        }
    }
    d.normalize();
    let comps = kosaraju_scc(&d);
    let mut in_s = vec![false; n];
    // number of v in S with p(v) outside S
    let mut open = 0usize;
    for comp in &comps {
        for &x in comp {
            in_s[x] = true;
            if !in_s[p[x]] {
                open += 1;
            }
            let y = inverse[x];
            if y != x && in_s[y] {
                open -= 1;
            }
        }
        if open > 0 {
            let zeros = (0..n).filter(|&v| in_s[v] && !in_s[p[v]]).collect();
            let ones = (0..n).filter(|&v| !in_s[v] && in_s[p[v]]).collect();
            return Some((ones, zeros));
        }
    }
    None
}

/// The optimal LP solution with the fewest half-valued vertices. Its
/// half-valued part induces a crown-free graph.
pub fn maximal_persistency(g: &Graph) -> Result<LpSolution> {
    let mut ones = BTreeSet::new();
    let mut zeros = BTreeSet::new();
    let mut rest = g.clone();
    loop {
        let b = build_bipartite_double(&rest);
        let m = hopcroft_karp(&b.graph);
        let cover = konig_vertex_cover(&b, &m)?;
        let sol = lp_solution_from_cover(&b, &cover)?;
        let (new_ones, new_zeros): (Vec<VertexId>, Vec<VertexId>) = if sol.ones.is_empty() && sol.zeros.is_empty() {
            match persistent_split(&b, &m) {
                Some((o, z)) => (o.into_iter().map(|i| b.ids[i]).collect(), z.into_iter().map(|i| b.ids[i]).collect()),
                None => break,
            }
        } else {
            (sol.ones.into_iter().collect(), sol.zeros.into_iter().collect())
        };
        for &v in new_ones.iter().chain(&new_zeros) {
            rest.remove_vertex(v)?;
        }
        ones.extend(new_ones);
        zeros.extend(new_zeros);
    }
    Ok(LpSolution {
        zeros,
        halves: rest.vertices().collect(),
        ones,
    })
}

/// Maximum matching between `left` and `right` along edges of `g`.
fn side_matching(g: &Graph, left: &[VertexId], right: &[VertexId]) -> Vec<Edge> {
    let index: HashMap<VertexId, usize> = right.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let adj = left
        .iter()
        .map(|v| {
            g.neighbors(*v)
                .map(|nb| nb.iter().filter_map(|x| index.get(x).copied()).collect())
                .unwrap_or_default()
        })
        .collect();
    let b = BipartiteGraph::from_adjacency(right.len(), adj);
    hopcroft_karp(&b)
        .pairs()
        .map(|(l, r)| Edge::new(left[l], right[r]))
        .collect()
}

/// Removes `V0 ∪ V1` and records a matching saturating `V1` into `V0`.
pub fn apply_lp_rule(g: &mut Graph, sol: &LpSolution, trace: &mut Trace) -> Result<bool> {
    if sol.ones.is_empty() && sol.zeros.is_empty() {
        return Ok(false);
    }
    let ones: Vec<VertexId> = sol.ones.iter().copied().collect();
    let zeros: Vec<VertexId> = sol.zeros.iter().copied().collect();
    let matching = side_matching(g, &ones, &zeros);
    if matching.len() != ones.len() {
        return Err(Error::Internal(format!(
            "only {} of {} persistent-one vertices can be matched into the zeros",
            matching.len(),
            ones.len()
        )));
    }
    for &v in ones.iter().chain(&zeros) {
        g.remove_vertex(v)?;
    }
    trace.push(Event::LpRemoval { ones, zeros, matching })?;
    Ok(true)
}

fn neighborhood(g: &Graph, set: &BTreeSet<VertexId>) -> Result<BTreeSet<VertexId>> {
    let mut out = BTreeSet::new();
    for &v in set {
        out.extend(g.neighbors(v).ok_or(Error::UnknownVertex(v))?);
    }
    Ok(out)
}

fn reject(msg: impl Into<String>) -> Error {
    Error::WitnessRejected(msg.into())
}

/// Checks that `edges` is a matching of `g` between `side` and `other` that
/// covers all of `side`.
fn check_saturating(
    g: &Graph,
    edges: &[Edge],
    side: &BTreeSet<VertexId>,
    other: &BTreeSet<VertexId>,
) -> Result<()> {
    let m = Matching::in_graph(g, edges.iter().copied()).map_err(|e| reject(e.to_string()))?;
    for e in edges {
        let ok = (side.contains(&e.u()) && other.contains(&e.v())) || (side.contains(&e.v()) && other.contains(&e.u()));
        if !ok {
            return Err(reject(format!("matching edge {e} does not join head and independent set")));
        }
    }
    if let Some(h) = side.iter().find(|&&h| !m.covers(h)) {
        return Err(reject(format!("head vertex {h} is not saturated")));
    }
    Ok(())
}

fn check_independent_with_head(g: &Graph, independent: &BTreeSet<VertexId>, head: &BTreeSet<VertexId>) -> Result<()> {
    if independent.is_empty() {
        return Err(reject("empty independent set"));
    }
    let nb = neighborhood(g, independent)?;
    if let Some(x) = independent.iter().find(|x| nb.contains(x)) {
        return Err(reject(format!("{x} has a neighbor inside the independent set")));
    }
    if nb != *head {
        return Err(reject("head is not the neighborhood of the independent set"));
    }
    Ok(())
}

/// Independent `I` with `H = N(I)` and a matching saturating `H` into `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crown {
    pub head: BTreeSet<VertexId>,
    pub independent: BTreeSet<VertexId>,
    pub matching: Vec<Edge>,
}

impl Crown {
    pub fn validate(&self, g: &Graph) -> Result<()> {
        check_independent_with_head(g, &self.independent, &self.head)?;
        check_saturating(g, &self.matching, &self.head, &self.independent)
    }
}

pub fn apply_crown(g: &mut Graph, c: &Crown, trace: &mut Trace) -> Result<()> {
    c.validate(g)?;
    for &v in c.head.iter().chain(&c.independent) {
        g.remove_vertex(v)?;
    }
    trace.push(Event::CrownRemoval {
        head: c.head.iter().copied().collect(),
        independent: c.independent.iter().copied().collect(),
        matching: c.matching.clone(),
    })
}

/// Like a crown, but only `H \ {h}` needs saturating, for every `h ∈ H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelaxedCrown {
    pub head: BTreeSet<VertexId>,
    pub independent: BTreeSet<VertexId>,
    pub matchings: BTreeMap<VertexId, Vec<Edge>>,
}

impl RelaxedCrown {
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.head.is_empty() {
            return Err(reject("empty head"));
        }
        check_independent_with_head(g, &self.independent, &self.head)?;
        if self.head.len() > self.independent.len() + 1 {
            return Err(reject("head is more than one larger than the independent set"));
        }
        for &h in &self.head {
            let edges = self
                .matchings
                .get(&h)
                .ok_or_else(|| reject(format!("no matching for head vertex {h}")))?;
            let mut rest = self.head.clone();
            rest.remove(&h);
            check_saturating(g, edges, &rest, &self.independent)?;
        }
        Ok(())
    }
}

/// Whether [`apply_relaxed_crown`] verifies that the graph is crown-free.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrownCheck {
    /// Run [`find_crown_bruteforce`]; only for small graphs.
    Exhaustive,
    /// The caller guarantees the graph has no crown.
    Assumed,
}

/// Replaces `H ∪ I` by a fresh vertex adjacent to `N(H) \ (H ∪ I)`.
pub fn apply_relaxed_crown(g: &mut Graph, rc: &RelaxedCrown, check: CrownCheck, trace: &mut Trace) -> Result<VertexId> {
    rc.validate(g)?;
    if check == CrownCheck::Exhaustive {
        if let Some(c) = find_crown_bruteforce(g)? {
            return Err(reject(format!(
                "graph contains a crown with head {:?} and independent set {:?}",
                c.head, c.independent
            )));
        }
    }
    let inside: BTreeSet<VertexId> = rc.head.union(&rc.independent).copied().collect();
    let external: Vec<Vec<VertexId>> = rc
        .head
        .iter()
        .map(|h| g.neighbors(*h).expect("vertex").difference(&inside).copied().collect())
        .collect();
    for &v in &inside {
        g.remove_vertex(v)?;
    }
    let z = g.add_fresh_vertex();
    for &x in external.iter().flatten() {
        g.add_edge(z, x);
    }
    trace.push(Event::RelaxedCrownFold {
        head: rc.head.iter().copied().collect(),
        independent: rc.independent.iter().copied().collect(),
        z,
        external,
        matchings: rc.head.iter().map(|h| rc.matchings[h].clone()).collect(),
    })?;
    Ok(z)
}

/// Bitmask view of a small graph.
struct Masks {
    ids: Vec<VertexId>,
    adj: Vec<u32>,
}

impl Masks {
    fn new(g: &Graph, what: &'static str) -> Result<Self> {
        if g.n() > CROWN_SEARCH_LIMIT {
            return Err(Error::GuardExceeded {
                what,
                n: g.n(),
                limit: CROWN_SEARCH_LIMIT,
            });
        }
        let ids: Vec<VertexId> = g.vertices().collect();
        let index: HashMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj = ids
            .iter()
            .map(|v| g.neighbors(*v).expect("vertex").iter().fold(0u32, |m, x| m | 1 << index[x]))
            .collect();
        Ok(Masks { ids, adj })
    }

    fn set(&self, mask: u32) -> BTreeSet<VertexId> {
        (0..self.ids.len()).filter(|i| mask >> i & 1 == 1).map(|i| self.ids[i]).collect()
    }

    /// Matching saturating every vertex of `side` into `into`, by
    /// augmenting paths.
    fn saturate(&self, side: u32, into: u32) -> Option<Vec<Edge>> {
        let mut owner = [usize::MAX; 32];
        for h in bits(side) {
            let mut seen = 0u32;
            if !self.augment(h, into, &mut owner, &mut seen) {
                return None;
            }
        }
        Some(
            bits(into)
                .filter(|&i| owner[i] != usize::MAX)
                .map(|i| Edge::new(self.ids[owner[i]], self.ids[i]))
                .collect(),
        )
    }

    fn augment(&self, h: usize, into: u32, owner: &mut [usize; 32], seen: &mut u32) -> bool {
        for i in bits(self.adj[h] & into & !*seen) {
            *seen |= 1 << i;
            if owner[i] == usize::MAX || self.augment(owner[i], into, owner, seen) {
                owner[i] = h;
                return true;
            }
        }
        false
    }

    /// Independent non-empty sets with their neighborhoods, in mask order.
    fn candidates(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        let n = self.ids.len();
        (1u32..(1u64 << n) as u32).filter_map(move |mask| {
            let nb = bits(mask).fold(0u32, |acc, v| acc | self.adj[v]);
            (nb & mask == 0).then_some((mask, nb))
        })
    }
}

fn bits(mut mask: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            i
        })
    })
}

/// Exhaustive crown search over all independent sets (n ≤ 16). A crown may
/// have an empty head, so isolated vertices count.
pub fn find_crown_bruteforce(g: &Graph) -> Result<Option<Crown>> {
    let masks = Masks::new(g, "find_crown_bruteforce")?;
    for (i_mask, h_mask) in masks.candidates() {
        if h_mask.count_ones() > i_mask.count_ones() {
            continue;
        }
        if let Some(matching) = masks.saturate(h_mask, i_mask) {
            return Ok(Some(Crown {
                head: masks.set(h_mask),
                independent: masks.set(i_mask),
                matching,
            }));
        }
    }
    Ok(None)
}

/// Exhaustive search for relaxed crowns (n ≤ 16), in independent-set mask
/// order.
pub fn find_relaxed_crowns_bruteforce(g: &Graph) -> Result<Vec<RelaxedCrown>> {
    let masks = Masks::new(g, "find_relaxed_crowns_bruteforce")?;
    let mut found = Vec::new();
    'outer: for (i_mask, h_mask) in masks.candidates() {
        if h_mask == 0 || h_mask.count_ones() > i_mask.count_ones() + 1 {
            continue;
        }
        let mut matchings = BTreeMap::new();
        for h in bits(h_mask) {
            match masks.saturate(h_mask & !(1 << h), i_mask) {
                Some(m) => matchings.insert(masks.ids[h], m),
                None => continue 'outer,
            };
        }
        found.push(RelaxedCrown {
            head: masks.set(h_mask),
            independent: masks.set(i_mask),
            matchings,
        });
    }
    Ok(found)
}

/// Degree rules and the LP rule alternated until neither changes the graph.
pub fn crown_kernelize(g: &Graph) -> Result<Reduced<Graph>> {
    let mut kernel = g.clone();
    let mut trace = Trace::new();
    loop {
        reduce_degree_rules(&mut kernel, &mut trace)?;
        let sol = maximal_persistency(&kernel)?;
        if !apply_lp_rule(&mut kernel, &sol, &mut trace)? {
            break;
        }
    }
    Ok(Reduced { kernel, trace })
}

/// Which unweighted rules a reduction uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RuleSet {
    /// Degree-zero, -one and -two rules.
    Degree,
    /// A single LP persistency pass.
    Crown,
    /// Both, alternated to a joint fixpoint.
    #[default]
    All,
}

pub fn reduce_unweighted(g: &Graph, rules: RuleSet) -> Result<Reduced<Graph>> {
    match rules {
        RuleSet::Degree => crate::unweighted::apply_degree_rules_exhaustive(g),
        RuleSet::Crown => {
            let mut kernel = g.clone();
            let mut trace = Trace::new();
            let sol = maximal_persistency(&kernel)?;
            apply_lp_rule(&mut kernel, &sol, &mut trace)?;
            Ok(Reduced { kernel, trace })
        }
        RuleSet::All => crown_kernelize(g),
    }
}

/// Lifts a matching of a crown kernel to the original graph.
pub fn lift_matching_crown(original: &Graph, reduced: &Reduced<Graph>, kernel_matching: &Matching) -> Result<Matching> {
    trace::lift_unweighted(original, &reduced.kernel, &reduced.trace, kernel_matching)
}
