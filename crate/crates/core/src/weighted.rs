//! Weighted reduction rules: zero-weight cleanup, the degree-one rule via
//! per-vertex counters, and replacement of maximal paths and pending cycles.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Edge, VertexId, Weight, WeightedGraph};
use crate::matching::Matching;
use crate::trace::{
    self, maximal_path_weights, Event, PathValues, PathWitnesses, PendantStep, Reduced, Trace,
};
use crate::unweighted::BoundReport;

/// Maximum-weight matching of a path given by its edge weights, as a value
/// and the ascending indices of the chosen edges. Ties prefer skipping the
/// later edge.
fn best_on_path(weights: &[Weight]) -> Result<(Weight, Vec<usize>)> {
    let n = weights.len();
    let mut best = vec![0u64; n + 1];
    let mut take = vec![false; n + 1];
    for i in 0..n {
        let skip = best[i];
        let with = if i == 0 { 0 } else { best[i - 1] }
            .checked_add(weights[i])
            .ok_or(Error::Overflow("path optimum"))?;
        if with > skip {
            best[i + 1] = with;
            take[i + 1] = true;
        } else {
            best[i + 1] = skip;
        }
    }
    let mut chosen = Vec::new();
    let mut i = n;
    while i > 0 {
        if take[i] {
            chosen.push(i - 1);
            i = i.saturating_sub(2);
        } else {
            i -= 1;
        }
    }
    chosen.reverse();
    Ok((best[n], chosen))
}

fn shifted(indices: Vec<usize>, by: usize) -> Vec<usize> {
    indices.into_iter().map(|i| i + by).collect()
}

/// The four endpoint-restricted optima of a path `u = v_0, ..., v_l = v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSolution {
    pub values: PathValues,
    /// Edge indices for `P`, `P - u`, `P - v`, `P - u - v`.
    pub full: Vec<usize>,
    pub without_first: Vec<usize>,
    pub without_last: Vec<usize>,
    pub without_both: Vec<usize>,
}

/// Solves a path with the given edge weights. An empty path is all zero.
pub fn mwm_on_path(weights: &[Weight]) -> Result<PathSolution> {
    let l = weights.len();
    let (full, full_w) = best_on_path(weights)?;
    if l == 0 {
        return Ok(PathSolution {
            values: PathValues::default(),
            full: vec![],
            without_first: vec![],
            without_last: vec![],
            without_both: vec![],
        });
    }
    let (wf, wf_w) = best_on_path(&weights[1..])?;
    let (wl, wl_w) = best_on_path(&weights[..l - 1])?;
    let (wb, wb_w) = if l >= 2 {
        best_on_path(&weights[1..l - 1])?
    } else {
        (0, vec![])
    };
    Ok(PathSolution {
        values: PathValues {
            full,
            without_first: wf,
            without_last: wl,
            without_both: wb,
        },
        full: full_w,
        without_first: shifted(wf_w, 1),
        without_last: wl_w,
        without_both: shifted(wb_w, 1),
    })
}

/// Optimum of a cycle whose edge `i` joins `v_i` and `v_{i+1}` (cyclically),
/// and of the cycle with the anchor `v_0` deleted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleSolution {
    pub value: Weight,
    pub without_anchor: Weight,
    pub witness: Vec<usize>,
    pub without_anchor_witness: Vec<usize>,
}

pub fn mwm_on_cycle(weights: &[Weight]) -> Result<CycleSolution> {
    let l = weights.len();
    if l < 3 {
        return Err(Error::InvalidStructure(format!(
            "a cycle needs at least 3 edges, got {l}"
        )));
    }
    // Either edge 0 is matched (edges 1 and l-1 are then blocked) or not.
    let (rest, rest_w) = best_on_path(&weights[2..l - 1])?;
    let with_first = weights[0]
        .checked_add(rest)
        .ok_or(Error::Overflow("cycle optimum"))?;
    let (without_first, without_first_w) = best_on_path(&weights[1..])?;
    let (value, witness) = if with_first > without_first {
        let mut w = vec![0];
        w.extend(shifted(rest_w, 2));
        (with_first, w)
    } else {
        (without_first, shifted(without_first_w, 1))
    };
    let (without_anchor, wa) = best_on_path(&weights[1..l - 1])?;
    Ok(CycleSolution {
        value,
        without_anchor,
        witness,
        without_anchor_witness: shifted(wa, 1),
    })
}

fn path_edges(vertices: &[VertexId], indices: &[usize]) -> Vec<Edge> {
    let n = vertices.len();
    indices
        .iter()
        .map(|&i| Edge::new(vertices[i], vertices[(i + 1) % n]))
        .collect()
}

/// A maximal path `v_0, ..., v_l` with `l >= 3`, distinct endpoints of
/// degree other than two, and inner vertices of degree two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSpec {
    pub vertices: Vec<VertexId>,
    pub weights: Vec<Weight>,
}

/// A pending cycle: `vertices[0]` is the anchor, all other vertices have
/// degree two, and `weights[i]` joins `vertices[i]` to `vertices[i + 1]`
/// (cyclically).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleSpec {
    pub vertices: Vec<VertexId>,
    pub weights: Vec<Weight>,
}

/// Deletes weight-zero edges, then degree-zero vertices.
pub fn apply_zero_rules(g: &mut WeightedGraph, trace: &mut Trace) -> Result<bool> {
    let zero: Vec<Edge> = g.edges().filter(|&(_, w)| w == 0).map(|(e, _)| e).collect();
    for e in &zero {
        g.remove_edge(e.u(), e.v());
        trace.push(Event::ZeroWeightEdge { u: e.u(), v: e.v() })?;
    }
    let isolated = drop_isolated(g, trace)?;
    Ok(!zero.is_empty() || isolated)
}

fn drop_isolated(g: &mut WeightedGraph, trace: &mut Trace) -> Result<bool> {
    let isolated: Vec<VertexId> = g.vertices().filter(|&v| g.degree(v) == Some(0)).collect();
    for &v in &isolated {
        g.remove_vertex(v)?;
        trace.push(Event::IsolatedVertex { v })?;
    }
    Ok(!isolated.is_empty())
}

/// Exhaustive weighted degree-one rule in linear time.
///
/// Instead of re-weighting all edges at `u` whenever a pendant `v` of `u` is
/// deleted, a counter `c(u)` collects the decrements; the effective weight of
/// `xy` is `max(0, w(xy) - c(x) - c(y))` throughout. One final pass writes the
/// effective weights back.
pub fn apply_deg1_weighted_exhaustive(g: &mut WeightedGraph, trace: &mut Trace) -> Result<bool> {
    let queue = g.vertices().filter(|&v| g.degree(v) == Some(1)).collect();
    pendant_sweep(g, queue, true, trace)
}

/// A single application of the degree-one rule at the pendant `v`.
pub fn apply_deg1_weighted_at(g: &mut WeightedGraph, v: VertexId, trace: &mut Trace) -> Result<()> {
    if g.degree(v) != Some(1) {
        return Err(Error::WitnessRejected(format!("{v} does not have degree one")));
    }
    pendant_sweep(g, VecDeque::from([v]), false, trace)?;
    Ok(())
}

fn pendant_sweep(g: &mut WeightedGraph, mut queue: VecDeque<VertexId>, follow: bool, trace: &mut Trace) -> Result<bool> {
    let mut counter: HashMap<VertexId, Weight> = HashMap::new();
    let mut before: Vec<(Edge, Weight)> = Vec::new();
    let mut steps = Vec::new();
    while let Some(v) = queue.pop_front() {
        if g.degree(v) != Some(1) {
            continue;
        }
        let u = *g.neighbors(v).and_then(|nb| nb.first()).expect("one neighbor");
        let c = |x| counter.get(&x).copied().unwrap_or(0);
        let w = g.weight(u, v).expect("edge weight");
        let d = w.saturating_sub(c(u)).saturating_sub(c(v));
        if d > 0 && c(u) == 0 {
            // First positive counter at u: its edges still carry their
            // weights from the start of the sweep.
            for &x in g.neighbors(u).expect("vertex") {
                before.push((Edge::new(u, x), g.weight(u, x).expect("edge weight")));
            }
        }
        if d > 0 {
            *counter.entry(u).or_insert(0) += d;
        }
        g.remove_vertex(v)?;
        steps.push(PendantStep { v, u, decrement: d });
        if follow && g.degree(u) == Some(1) {
            queue.push_back(u);
        }
    }
    if steps.is_empty() {
        return Ok(false);
    }
    let mut rewrite = BTreeSet::new();
    for (&x, _) in counter.iter().filter(|&(_, &c)| c > 0) {
        for &y in g.neighbors(x).into_iter().flatten() {
            rewrite.insert(Edge::new(x, y));
        }
    }
    for e in rewrite {
        let c = |x| counter.get(&x).copied().unwrap_or(0);
        let w = g.weight(e.u(), e.v()).expect("edge weight");
        g.set_weight(e.u(), e.v(), w.saturating_sub(c(e.u())).saturating_sub(c(e.v())))?;
    }
    // Keep only weights of edges that can still matter when lifting.
    before.sort_unstable();
    before.dedup();
    trace.push(Event::WeightedDegreeOne { steps, before })?;
    Ok(true)
}

/// Reference implementation of the degree-one rule that re-weights every
/// edge at `u` immediately. Quadratic on stars; the counter sweep must agree
/// with it exactly. Returns the offset.
pub fn deg1_naive(g: &mut WeightedGraph) -> Result<u64> {
    let mut offset = 0u64;
    let mut queue: VecDeque<VertexId> = g.vertices().filter(|&v| g.degree(v) == Some(1)).collect();
    while let Some(v) = queue.pop_front() {
        if g.degree(v) != Some(1) {
            continue;
        }
        let u = *g.neighbors(v).and_then(|nb| nb.first()).expect("one neighbor");
        let a = g.remove_edge(u, v).expect("edge weight");
        g.remove_vertex(v)?;
        let nb: Vec<VertexId> = g.neighbors(u).expect("vertex").iter().copied().collect();
        for x in nb {
            let w = g.weight(u, x).expect("edge weight");
            g.set_weight(u, x, w.saturating_sub(a))?;
        }
        offset = offset.checked_add(a).ok_or(Error::Overflow("naive offset"))?;
        if g.degree(u) == Some(1) {
            queue.push_back(u);
        }
    }
    Ok(offset)
}

/// Orders the vertices of a component whose degrees are all at most two:
/// paths from their smaller endpoint, cycles from their smallest vertex
/// towards its smaller neighbor.
fn walk_component(g: &WeightedGraph, comp: &[VertexId]) -> (Vec<VertexId>, bool) {
    let start = comp
        .iter()
        .copied()
        .find(|&v| g.degree(v) == Some(1))
        .unwrap_or(comp[0]);
    let cyclic = g.degree(start) == Some(2);
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = *g.neighbors(start).and_then(|nb| nb.first()).expect("neighbor");
    while cur != start {
        order.push(cur);
        let next = g.neighbors(cur).expect("vertex").iter().copied().find(|&x| x != prev);
        match next {
            Some(x) => {
                prev = cur;
                cur = x;
            }
            None => break,
        }
    }
    (order, cyclic)
}

fn chain_weights(g: &WeightedGraph, vertices: &[VertexId], cyclic: bool) -> Vec<Weight> {
    let n = vertices.len();
    let edges = if cyclic { n } else { n - 1 };
    (0..edges)
        .map(|i| g.weight(vertices[i], vertices[(i + 1) % n]).expect("chain edge"))
        .collect()
}

/// Solves every component that is a bare path or cycle and deletes it.
pub fn solve_isolated_paths_cycles(g: &mut WeightedGraph, trace: &mut Trace) -> Result<bool> {
    let mut changed = false;
    for comp in g.connected_components() {
        if comp.iter().any(|&v| g.degree(v).unwrap_or(0) > 2) {
            continue;
        }
        changed = true;
        if comp.len() == 1 {
            g.remove_vertex(comp[0])?;
            trace.push(Event::IsolatedVertex { v: comp[0] })?;
            continue;
        }
        let (order, cyclic) = walk_component(g, &comp);
        let weights = chain_weights(g, &order, cyclic);
        let indices = if cyclic {
            mwm_on_cycle(&weights)?.witness
        } else {
            mwm_on_path(&weights)?.full
        };
        let matching = indices
            .iter()
            .map(|&i| (Edge::new(order[i], order[(i + 1) % order.len()]), weights[i]))
            .collect();
        for &v in &comp {
            g.remove_vertex(v)?;
        }
        trace.push(Event::IsolatedComponent {
            vertices: order,
            matching,
        })?;
    }
    Ok(changed)
}

/// Maximal paths and pending cycles of `g`, each with inner vertices
/// disjoint from all others. Paths are oriented from the smaller endpoint.
pub fn enumerate_chains(g: &WeightedGraph) -> (Vec<PathSpec>, Vec<CycleSpec>) {
    let mut seen = BTreeSet::new();
    let mut paths = Vec::new();
    let mut cycles = Vec::new();
    for s in g.vertices() {
        if g.degree(s) != Some(2) || seen.contains(&s) {
            continue;
        }
        seen.insert(s);
        let nb: Vec<VertexId> = g.neighbors(s).expect("vertex").iter().copied().collect();
        let mut sides = Vec::new();
        let mut closed = false;
        for &first in &nb {
            let mut run = Vec::new();
            let (mut prev, mut cur) = (s, first);
            while cur != s && g.degree(cur) == Some(2) {
                seen.insert(cur);
                run.push(cur);
                let next = g.neighbors(cur).expect("vertex").iter().copied().find(|&x| x != prev);
                prev = cur;
                cur = next.expect("second neighbor");
            }
            if cur == s {
                closed = true;
                break;
            }
            sides.push((run, cur));
        }
        if closed {
            // whole component is a cycle; solved elsewhere
            continue;
        }
        let (left_run, a) = sides.swap_remove(0);
        let (right_run, b) = sides.swap_remove(0);
        let mut inner: Vec<VertexId> = left_run.into_iter().rev().collect();
        inner.push(s);
        inner.extend(right_run);
        if a == b {
            let mut vertices = vec![a];
            vertices.extend(inner);
            let weights = chain_weights(g, &vertices, true);
            cycles.push(CycleSpec { vertices, weights });
        } else if inner.len() >= 2 {
            let mut vertices = vec![a];
            vertices.extend(inner);
            vertices.push(b);
            if a > b {
                vertices.reverse();
            }
            let weights = chain_weights(g, &vertices, false);
            paths.push(PathSpec { vertices, weights });
        }
    }
    (paths, cycles)
}

fn validate_chain(g: &WeightedGraph, vertices: &[VertexId], weights: &[Weight], cyclic: bool) -> Result<()> {
    trace::check_chain(g, vertices, weights, cyclic)
        .map_err(|e| Error::WitnessRejected(e.to_string()))?;
    let ends: &[VertexId] = if cyclic {
        &vertices[..1]
    } else {
        &[vertices[0], vertices[vertices.len() - 1]]
    };
    if let Some(x) = ends.iter().find(|&&x| g.degree(x) == Some(2)) {
        return Err(Error::WitnessRejected(format!("endpoint {x} has degree two")));
    }
    Ok(())
}

/// Replaces a pending cycle by a single edge from its anchor to a fresh
/// vertex. Returns the fresh vertex.
pub fn apply_pending_cycle(g: &mut WeightedGraph, c: &CycleSpec, trace: &mut Trace) -> Result<VertexId> {
    validate_chain(g, &c.vertices, &c.weights, true)?;
    let sol = mwm_on_cycle(&c.weights)?;
    for &x in &c.vertices[1..] {
        g.remove_vertex(x)?;
    }
    let anchor = c.vertices[0];
    let z = g.add_fresh_vertex();
    g.add_edge(anchor, z, sol.value - sol.without_anchor);
    trace.push(Event::PendingCycle {
        vertices: c.vertices.clone(),
        weights: c.weights.clone(),
        z,
        value: sol.value,
        without_anchor: sol.without_anchor,
        with_anchor_witness: path_edges(&c.vertices, &sol.witness),
        without_anchor_witness: path_edges(&c.vertices, &sol.without_anchor_witness),
    })?;
    Ok(z)
}

/// Replaces a maximal path `u ... v` by `u-z-v` and the edge `uv`. Returns
/// the fresh vertex.
pub fn apply_max_path(g: &mut WeightedGraph, p: &PathSpec, trace: &mut Trace) -> Result<VertexId> {
    let n = p.vertices.len();
    if n < 4 {
        return Err(Error::WitnessRejected(format!(
            "a maximal path needs at least 3 edges, got {}",
            n.saturating_sub(1)
        )));
    }
    let (u, v) = (p.vertices[0], p.vertices[n - 1]);
    if u == v {
        return Err(Error::WitnessRejected("path endpoints coincide".into()));
    }
    validate_chain(g, &p.vertices, &p.weights, false)?;
    let sol = mwm_on_path(&p.weights)?;
    let uv_before = g.weight(u, v);
    for &x in &p.vertices[1..n - 1] {
        g.remove_vertex(x)?;
    }
    let z = g.add_fresh_vertex();
    let (uz, vz, uv) = maximal_path_weights(&sol.values, uv_before);
    g.add_edge(u, z, uz);
    g.add_edge(v, z, vz);
    if !g.add_edge(u, v, uv) {
        g.set_weight(u, v, uv)?;
    }
    let edges = |idx: &[usize]| path_edges(&p.vertices[..], idx);
    trace.push(Event::MaximalPath {
        path: p.vertices.clone(),
        weights: p.weights.clone(),
        z,
        uv_before,
        values: sol.values,
        witnesses: PathWitnesses {
            full: edges(&sol.full),
            without_first: edges(&sol.without_first),
            without_last: edges(&sol.without_last),
            without_both: edges(&sol.without_both),
        },
    })?;
    Ok(z)
}

/// Enumerates chains once, then applies all maximal paths before all
/// pending cycles.
fn apply_chains(g: &mut WeightedGraph, trace: &mut Trace) -> Result<bool> {
    let (paths, cycles) = enumerate_chains(g);
    for p in &paths {
        apply_max_path(g, p, trace)?;
    }
    for c in &cycles {
        apply_pending_cycle(g, c, trace)?;
    }
    Ok(!paths.is_empty() || !cycles.is_empty())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    /// Zero rules, one degree-one sweep, then path and cycle replacement
    /// until none is left. Carries the 7k / 9k size guarantee.
    #[default]
    Prescribed,
    /// All rules until none applies.
    Exhaustive,
}

/// Which rules an exhaustive round tries first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RuleOrder {
    #[default]
    DegreeOneFirst,
    PathsFirst,
}

pub fn weighted_kernel_pipeline(g: &WeightedGraph, mode: Mode) -> Result<Reduced<WeightedGraph>> {
    weighted_kernel_pipeline_ordered(g, mode, RuleOrder::default())
}

pub fn weighted_kernel_pipeline_ordered(
    g: &WeightedGraph,
    mode: Mode,
    order: RuleOrder,
) -> Result<Reduced<WeightedGraph>> {
    let mut kernel = g.clone();
    let mut trace = Trace::new();
    match mode {
        Mode::Prescribed => {
            apply_zero_rules(&mut kernel, &mut trace)?;
            apply_deg1_weighted_exhaustive(&mut kernel, &mut trace)?;
            drop_isolated(&mut kernel, &mut trace)?;
            loop {
                solve_isolated_paths_cycles(&mut kernel, &mut trace)?;
                if !apply_chains(&mut kernel, &mut trace)? {
                    break;
                }
            }
        }
        Mode::Exhaustive => loop {
            let mut changed = false;
            match order {
                RuleOrder::DegreeOneFirst => {
                    changed |= apply_deg1_weighted_exhaustive(&mut kernel, &mut trace)?;
                    changed |= apply_zero_rules(&mut kernel, &mut trace)?;
                    changed |= solve_isolated_paths_cycles(&mut kernel, &mut trace)?;
                    changed |= apply_chains(&mut kernel, &mut trace)?;
                }
                RuleOrder::PathsFirst => {
                    changed |= solve_isolated_paths_cycles(&mut kernel, &mut trace)?;
                    changed |= apply_chains(&mut kernel, &mut trace)?;
                    changed |= apply_deg1_weighted_exhaustive(&mut kernel, &mut trace)?;
                    changed |= apply_zero_rules(&mut kernel, &mut trace)?;
                }
            }
            if !changed {
                break;
            }
        },
    }
    debug_assert!(kernel.check_invariants().is_ok());
    Ok(Reduced { kernel, trace })
}

/// Lifts a matching of a weighted kernel to the original graph.
pub fn lift_matching_weighted(
    original: &WeightedGraph,
    reduced: &Reduced<WeightedGraph>,
    kernel_matching: &Matching,
) -> Result<Matching> {
    trace::lift_weighted(original, &reduced.kernel, &reduced.trace, kernel_matching)
}

/// Checks the prescribed-mode kernel against `7k` vertices and `9k` edges,
/// where `k` is the feedback edge number of the input.
pub fn check_weighted_kernel_bound(g: &WeightedGraph, kernel: &WeightedGraph) -> Result<BoundReport> {
    BoundReport::new(g.feedback_edge_number(), kernel.n(), kernel.m(), 7, 9).check()
}
