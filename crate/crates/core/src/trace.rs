//! Reduction traces: the ordered record of every rule application.
//!
//! A trace is enough to (a) replay the reduction forward from the original
//! graph and reproduce the kernel exactly, and (b) lift any matching of the
//! kernel back to the original graph.
//!
//! Text format: a `# matchkern trace v1` header, one `offset <card> <weight>`
//! line, then one event per line as `<Kind> <json payload>`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Provenance, VertexId, Weight, WeightedGraph};
use crate::matching::Matching;
use crate::weighted::{mwm_on_cycle, mwm_on_path};

/// One step of the weighted degree-one sweep: `v` (degree one, neighbor `u`)
/// was deleted and `decrement` added to the counter of `u` and to the offset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PendantStep {
    pub v: VertexId,
    pub u: VertexId,
    pub decrement: Weight,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data")]
pub enum Event {
    /// Degree-zero vertex deleted.
    IsolatedVertex { v: VertexId },
    /// Degree-one vertex `v` matched to its neighbor `u`; both deleted.
    DegreeOneMatch { v: VertexId, u: VertexId },
    /// Degree-two vertex `v` deleted and its neighbors `u`, `w` merged into `z`.
    DegreeTwoFold {
        v: VertexId,
        u: VertexId,
        w: VertexId,
        z: VertexId,
        provenance: Vec<(VertexId, Provenance)>,
    },
    /// Crown `(head, independent)` deleted; `matching` saturates the head.
    CrownRemoval {
        head: Vec<VertexId>,
        independent: Vec<VertexId>,
        matching: Vec<Edge>,
    },
    /// LP-persistent vertices deleted; `matching` saturates `ones` into `zeros`.
    LpRemoval {
        ones: Vec<VertexId>,
        zeros: Vec<VertexId>,
        matching: Vec<Edge>,
    },
    /// Relaxed crown replaced by `z`. `external[i]` lists the outside
    /// neighbors of `head[i]`; `matchings[i]` saturates the rest of the head.
    RelaxedCrownFold {
        head: Vec<VertexId>,
        independent: Vec<VertexId>,
        z: VertexId,
        external: Vec<Vec<VertexId>>,
        matchings: Vec<Vec<Edge>>,
    },
    /// Weight-zero edge deleted.
    ZeroWeightEdge { u: VertexId, v: VertexId },
    /// One exhaustive counter sweep of the weighted degree-one rule. `before`
    /// holds the weights, at the start of the sweep, of every edge incident
    /// to a vertex whose counter ended up positive.
    WeightedDegreeOne {
        steps: Vec<PendantStep>,
        before: Vec<(Edge, Weight)>,
    },
    /// Pending cycle `vertices[0..]` (anchor first) replaced by the edge
    /// anchor-`z`. `weights[i]` is the weight of the edge from `vertices[i]`
    /// to `vertices[i + 1]` (cyclically).
    PendingCycle {
        vertices: Vec<VertexId>,
        weights: Vec<Weight>,
        z: VertexId,
        value: Weight,
        without_anchor: Weight,
        with_anchor_witness: Vec<Edge>,
        without_anchor_witness: Vec<Edge>,
    },
    /// Maximal path replaced by `u-z-v` plus the edge `uv`.
    MaximalPath {
        path: Vec<VertexId>,
        weights: Vec<Weight>,
        z: VertexId,
        uv_before: Option<Weight>,
        values: PathValues,
        witnesses: PathWitnesses,
    },
    /// Whole path or cycle component solved and deleted.
    IsolatedComponent {
        vertices: Vec<VertexId>,
        matching: Vec<(Edge, Weight)>,
    },
}

/// Optimum values of a path and its endpoint-deleted variants.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathValues {
    pub full: Weight,
    pub without_first: Weight,
    pub without_last: Weight,
    pub without_both: Weight,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathWitnesses {
    pub full: Vec<Edge>,
    pub without_first: Vec<Edge>,
    pub without_last: Vec<Edge>,
    pub without_both: Vec<Edge>,
}

impl Event {
    pub fn kind(&self) -> &'static str {
        match self {
            Event::IsolatedVertex { .. } => "IsolatedVertex",
            Event::DegreeOneMatch { .. } => "DegreeOneMatch",
            Event::DegreeTwoFold { .. } => "DegreeTwoFold",
            Event::CrownRemoval { .. } => "CrownRemoval",
            Event::LpRemoval { .. } => "LpRemoval",
            Event::RelaxedCrownFold { .. } => "RelaxedCrownFold",
            Event::ZeroWeightEdge { .. } => "ZeroWeightEdge",
            Event::WeightedDegreeOne { .. } => "WeightedDegreeOne",
            Event::PendingCycle { .. } => "PendingCycle",
            Event::MaximalPath { .. } => "MaximalPath",
            Event::IsolatedComponent { .. } => "IsolatedComponent",
        }
    }

    /// Contribution to the cardinality offset.
    pub fn cardinality_offset(&self) -> u64 {
        match self {
            Event::DegreeOneMatch { .. } | Event::DegreeTwoFold { .. } => 1,
            Event::CrownRemoval { head, .. } => head.len() as u64,
            Event::LpRemoval { ones, .. } => ones.len() as u64,
            Event::RelaxedCrownFold { head, .. } => head.len().saturating_sub(1) as u64,
            _ => 0,
        }
    }

    /// Contribution to the weight offset.
    pub fn weight_offset(&self) -> Result<u64> {
        fn sum(mut it: impl Iterator<Item = Weight>) -> Result<u64> {
            it.try_fold(0u64, |acc, w| acc.checked_add(w))
                .ok_or(Error::Overflow("weight offset"))
        }
        match self {
            Event::WeightedDegreeOne { steps, .. } => sum(steps.iter().map(|s| s.decrement)),
            Event::PendingCycle { without_anchor, .. } => Ok(*without_anchor),
            Event::MaximalPath { values, .. } => Ok(values.without_both),
            Event::IsolatedComponent { matching, .. } => sum(matching.iter().map(|&(_, w)| w)),
            _ => Ok(0),
        }
    }
}

/// A kernel together with the trace that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduced<G> {
    pub kernel: G,
    pub trace: Trace,
}

/// Ordered reduction events plus the accumulated offsets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trace {
    events: Vec<Event>,
    cardinality_offset: u64,
    weight_offset: u64,
}

impl Trace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, event: Event) -> Result<()> {
        let w = event.weight_offset()?;
        self.weight_offset = self
            .weight_offset
            .checked_add(w)
            .ok_or(Error::Overflow("weight offset"))?;
        self.cardinality_offset += event.cardinality_offset();
        self.events.push(event);
        Ok(())
    }

    pub fn extend(&mut self, other: Trace) -> Result<()> {
        for e in other.events {
            self.push(e)?;
        }
        Ok(())
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn cardinality_offset(&self) -> u64 {
        self.cardinality_offset
    }

    pub fn weight_offset(&self) -> u64 {
        self.weight_offset
    }

    /// Number of events of each kind, keyed by kind name.
    pub fn counts(&self) -> BTreeMap<&'static str, usize> {
        let mut counts = BTreeMap::new();
        for e in &self.events {
            *counts.entry(e.kind()).or_insert(0) += 1;
        }
        counts
    }

    pub fn write<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{HEADER}")?;
        writeln!(out, "offset {} {}", self.cardinality_offset, self.weight_offset)?;
        for e in &self.events {
            let value = serde_json::to_value(e).map_err(|err| Error::Internal(err.to_string()))?;
            writeln!(out, "{} {}", e.kind(), value["data"])?;
        }
        Ok(())
    }

    pub fn read<R: BufRead>(reader: R) -> Result<Trace> {
        let mut trace = Trace::new();
        let mut declared = None;
        let mut saw_header = false;
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let lineno = i + 1;
            let err = |message: String| Error::Trace { line: lineno, message };
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if !saw_header {
                if line != HEADER {
                    return Err(err(format!("expected header {HEADER:?}")));
                }
                saw_header = true;
                continue;
            }
            let (kind, payload) = line.split_once(' ').unwrap_or((line, "null"));
            if kind == "offset" {
                let parts: Vec<u64> = payload
                    .split_whitespace()
                    .map(str::parse)
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|e| err(format!("bad offset line: {e}")))?;
                if parts.len() != 2 {
                    return Err(err("offset line needs two values".into()));
                }
                declared = Some((parts[0], parts[1]));
                continue;
            }
            let data: serde_json::Value =
                serde_json::from_str(payload).map_err(|e| err(e.to_string()))?;
            let event: Event = serde_json::from_value(serde_json::json!({"kind": kind, "data": data}))
                .map_err(|e| err(e.to_string()))?;
            trace.push(event).map_err(|e| err(e.to_string()))?;
        }
        if !saw_header {
            return Err(Error::Trace {
                line: 0,
                message: "empty trace".into(),
            });
        }
        if let Some((card, weight)) = declared {
            if (card, weight) != (trace.cardinality_offset, trace.weight_offset) {
                return Err(Error::Trace {
                    line: 2,
                    message: format!(
                        "declared offsets ({card}, {weight}) disagree with events ({}, {})",
                        trace.cardinality_offset, trace.weight_offset
                    ),
                });
            }
        }
        Ok(trace)
    }
}

const HEADER: &str = "# matchkern trace v1";

fn structure(msg: String) -> Error {
    Error::InvalidStructure(msg)
}

fn expect_fresh(got: VertexId, want: VertexId) -> Result<()> {
    if got == want {
        Ok(())
    } else {
        Err(structure(format!("fresh vertex is {got}, trace says {want}")))
    }
}

/// Replays an unweighted trace from `original`, returning the kernel.
pub fn replay_unweighted(original: &Graph, trace: &Trace) -> Result<Graph> {
    let mut g = original.clone();
    for event in trace.events() {
        match event {
            Event::IsolatedVertex { v } => {
                if g.degree(*v) != Some(0) {
                    return Err(structure(format!("{v} is not isolated")));
                }
                g.remove_vertex(*v)?;
            }
            Event::DegreeOneMatch { v, u } => {
                if g.degree(*v) != Some(1) || !g.has_edge(*v, *u) {
                    return Err(structure(format!("{v} is not a pendant of {u}")));
                }
                g.remove_vertex(*v)?;
                g.remove_vertex(*u)?;
            }
            Event::DegreeTwoFold {
                v,
                u,
                w,
                z,
                provenance,
            } => {
                let nb = g.neighbors(*v).ok_or(Error::UnknownVertex(*v))?;
                if nb.len() != 2 || !nb.contains(u) || !nb.contains(w) {
                    return Err(structure(format!("{v} is not a degree-two vertex between {u} and {w}")));
                }
                g.remove_vertex(*v)?;
                let merge = g.merge_vertices(*u, *w)?;
                expect_fresh(merge.merged, *z)?;
                if merge.provenance.into_iter().collect::<Vec<_>>() != *provenance {
                    return Err(structure(format!("provenance of {z} differs")));
                }
            }
            Event::CrownRemoval {
                head,
                independent,
                matching,
            } => {
                check_edges(&g, matching)?;
                for x in head.iter().chain(independent) {
                    g.remove_vertex(*x)?;
                }
            }
            Event::LpRemoval {
                ones,
                zeros,
                matching,
            } => {
                check_edges(&g, matching)?;
                for x in ones.iter().chain(zeros) {
                    g.remove_vertex(*x)?;
                }
            }
            Event::RelaxedCrownFold {
                head,
                independent,
                z,
                external,
                ..
            } => {
                for x in head.iter().chain(independent) {
                    g.remove_vertex(*x)?;
                }
                expect_fresh(g.add_fresh_vertex(), *z)?;
                for x in external.iter().flatten() {
                    if !g.contains_vertex(*x) {
                        return Err(Error::UnknownVertex(*x));
                    }
                    g.add_edge(*z, *x);
                }
            }
            other => {
                return Err(Error::Precondition(format!(
                    "{} event in an unweighted replay",
                    other.kind()
                )))
            }
        }
    }
    Ok(g)
}

fn check_edges(g: &Graph, edges: &[Edge]) -> Result<()> {
    match edges.iter().find(|e| !g.has_edge(e.u(), e.v())) {
        Some(e) => Err(structure(format!("stored matching edge {e} is missing"))),
        None => Ok(()),
    }
}

fn weight_of(g: &WeightedGraph, a: VertexId, b: VertexId) -> Result<Weight> {
    g.weight(a, b)
        .ok_or_else(|| structure(format!("missing edge {a}-{b}")))
}

/// Replays a weighted trace from `original`, returning the kernel.
pub fn replay_weighted(original: &WeightedGraph, trace: &Trace) -> Result<WeightedGraph> {
    let mut g = original.clone();
    for event in trace.events() {
        match event {
            Event::IsolatedVertex { v } => {
                if g.degree(*v) != Some(0) {
                    return Err(structure(format!("{v} is not isolated")));
                }
                g.remove_vertex(*v)?;
            }
            Event::ZeroWeightEdge { u, v } => {
                if weight_of(&g, *u, *v)? != 0 {
                    return Err(structure(format!("edge {u}-{v} has positive weight")));
                }
                g.remove_edge(*u, *v);
            }
            Event::WeightedDegreeOne { steps, before } => {
                let mut counter: HashMap<VertexId, Weight> = HashMap::new();
                for s in steps {
                    if g.degree(s.v) != Some(1) || g.weight(s.v, s.u).is_none() {
                        return Err(structure(format!("{} is not a pendant of {}", s.v, s.u)));
                    }
                    let c = |x| counter.get(&x).copied().unwrap_or(0);
                    let w = weight_of(&g, s.v, s.u)?;
                    let d = w.saturating_sub(c(s.u)).saturating_sub(c(s.v));
                    if d != s.decrement {
                        return Err(structure(format!(
                            "decrement at {} is {d}, trace says {}",
                            s.v, s.decrement
                        )));
                    }
                    g.remove_vertex(s.v)?;
                    *counter.entry(s.u).or_insert(0) += d;
                }
                counter.retain(|_, c| *c > 0);
                let mut rewritten = BTreeSet::new();
                for &x in counter.keys() {
                    for &y in g.neighbors(x).into_iter().flatten() {
                        rewritten.insert(Edge::new(x, y));
                    }
                }
                let before: HashMap<Edge, Weight> = before.iter().copied().collect();
                for e in rewritten {
                    let w = weight_of(&g, e.u(), e.v())?;
                    if before.get(&e) != Some(&w) {
                        return Err(structure(format!("stored weight of {e} differs")));
                    }
                    let c = |x| counter.get(&x).copied().unwrap_or(0);
                    g.set_weight(e.u(), e.v(), w.saturating_sub(c(e.u())).saturating_sub(c(e.v())))?;
                }
            }
            Event::PendingCycle {
                vertices,
                weights,
                z,
                value,
                without_anchor,
                ..
            } => {
                let anchor = vertices[0];
                check_chain(&g, vertices, weights, true)?;
                let sol = mwm_on_cycle(weights)?;
                if (sol.value, sol.without_anchor) != (*value, *without_anchor) {
                    return Err(structure("pending-cycle values differ".into()));
                }
                for &x in &vertices[1..] {
                    g.remove_vertex(x)?;
                }
                expect_fresh(g.add_fresh_vertex(), *z)?;
                g.add_edge(anchor, *z, value - without_anchor);
            }
            Event::MaximalPath {
                path,
                weights,
                z,
                uv_before,
                values,
                ..
            } => {
                let (u, v) = (path[0], path[path.len() - 1]);
                check_chain(&g, path, weights, false)?;
                if g.weight(u, v) != *uv_before {
                    return Err(structure(format!("stored weight of {u}-{v} differs")));
                }
                let sol = mwm_on_path(weights)?;
                if sol.values != *values {
                    return Err(structure("maximal-path values differ".into()));
                }
                for &x in &path[1..path.len() - 1] {
                    g.remove_vertex(x)?;
                }
                expect_fresh(g.add_fresh_vertex(), *z)?;
                let (uz, vz, uv) = maximal_path_weights(values, *uv_before);
                g.add_edge(u, *z, uz);
                g.add_edge(v, *z, vz);
                if g.add_edge(u, v, uv) {
                    debug_assert!(uv_before.is_none());
                } else {
                    g.set_weight(u, v, uv)?;
                }
            }
            Event::IsolatedComponent { vertices, matching } => {
                let inside: BTreeSet<VertexId> = vertices.iter().copied().collect();
                for &x in vertices {
                    let nb = g.neighbors(x).ok_or(Error::UnknownVertex(x))?;
                    if !nb.is_subset(&inside) {
                        return Err(structure(format!("component of {x} is not closed")));
                    }
                }
                for &(e, w) in matching {
                    if g.weight(e.u(), e.v()) != Some(w) {
                        return Err(structure(format!("stored matching edge {e} differs")));
                    }
                }
                for &x in vertices {
                    g.remove_vertex(x)?;
                }
            }
            other => {
                return Err(Error::Precondition(format!(
                    "{} event in a weighted replay",
                    other.kind()
                )))
            }
        }
    }
    Ok(g)
}

/// Weights of `uz`, `vz` and `uv` after replacing a maximal path.
pub(crate) fn maximal_path_weights(values: &PathValues, uv_before: Option<Weight>) -> (Weight, Weight, Weight) {
    let base = values.without_both;
    (
        values.without_last - base,
        values.without_first - base,
        uv_before.unwrap_or(0).max(values.full - base),
    )
}

/// Checks that `chain` is a run of degree-two vertices with the given edge
/// weights. For cycles the first vertex is the anchor and the chain closes.
pub(crate) fn check_chain(g: &WeightedGraph, chain: &[VertexId], weights: &[Weight], cyclic: bool) -> Result<()> {
    let expected_edges = if cyclic { chain.len() } else { chain.len() - 1 };
    if weights.len() != expected_edges || chain.len() < 3 {
        return Err(structure("malformed chain".into()));
    }
    for (i, &w) in weights.iter().enumerate() {
        let (a, b) = (chain[i], chain[(i + 1) % chain.len()]);
        if weight_of(g, a, b)? != w {
            return Err(structure(format!("stored weight of {a}-{b} differs")));
        }
    }
    let inner = if cyclic { &chain[1..] } else { &chain[1..chain.len() - 1] };
    for &x in inner {
        if g.degree(x) != Some(2) {
            return Err(structure(format!("{x} does not have degree two")));
        }
    }
    Ok(())
}

fn insert_all(m: &mut Matching, edges: &[Edge]) -> Result<()> {
    for &e in edges {
        m.insert(e, 0)?;
    }
    Ok(())
}

fn take_edge(m: &mut Matching, a: VertexId, b: VertexId) -> bool {
    m.remove(Edge::new(a, b)).is_some()
}

/// Reverse replay: turns a matching of the kernel into a matching of the
/// original graph. Weights of the result are zero; callers re-attach them.
pub fn lift_edges(trace: &Trace, kernel_matching: &Matching) -> Result<Matching> {
    let mut m: Matching = kernel_matching.edges().map(|e| (e, 0)).collect();
    for event in trace.events().iter().rev() {
        match event {
            Event::IsolatedVertex { .. } | Event::ZeroWeightEdge { .. } => {}
            Event::DegreeOneMatch { v, u } => m.insert(Edge::new(*v, *u), 0)?,
            Event::DegreeTwoFold {
                v,
                u,
                w,
                z,
                provenance,
            } => match m.mate(*z) {
                Some(x) => {
                    take_edge(&mut m, *z, x);
                    let p = provenance
                        .iter()
                        .find(|(y, _)| *y == x)
                        .map(|&(_, p)| p)
                        .ok_or_else(|| Error::Internal(format!("{z}-{x} has no provenance")))?;
                    if p.has_first() {
                        m.insert(Edge::new(*u, x), 0)?;
                        m.insert(Edge::new(*v, *w), 0)?;
                    } else {
                        m.insert(Edge::new(*w, x), 0)?;
                        m.insert(Edge::new(*v, *u), 0)?;
                    }
                }
                None => m.insert(Edge::new(*v, *u), 0)?,
            },
            Event::CrownRemoval { matching, .. } | Event::LpRemoval { matching, .. } => {
                insert_all(&mut m, matching)?
            }
            Event::RelaxedCrownFold {
                head,
                z,
                external,
                matchings,
                ..
            } => {
                let chosen = match m.mate(*z) {
                    Some(x) => {
                        take_edge(&mut m, *z, x);
                        // head is sorted, so the first hit is the smallest id
                        let i = external
                            .iter()
                            .position(|nb| nb.contains(&x))
                            .ok_or_else(|| Error::Internal(format!("no head vertex adjacent to {x}")))?;
                        m.insert(Edge::new(head[i], x), 0)?;
                        i
                    }
                    None => 0,
                };
                insert_all(&mut m, &matchings[chosen])?;
            }
            Event::WeightedDegreeOne { steps, before } => lift_pendant_sweep(&mut m, steps, before)?,
            Event::PendingCycle {
                vertices,
                z,
                with_anchor_witness,
                without_anchor_witness,
                ..
            } => {
                if take_edge(&mut m, vertices[0], *z) {
                    insert_all(&mut m, with_anchor_witness)?;
                } else {
                    insert_all(&mut m, without_anchor_witness)?;
                }
            }
            Event::MaximalPath {
                path,
                z,
                uv_before,
                values,
                witnesses,
                ..
            } => {
                let (u, v) = (path[0], path[path.len() - 1]);
                let witness = if take_edge(&mut m, u, *z) {
                    &witnesses.without_last
                } else if take_edge(&mut m, v, *z) {
                    &witnesses.without_first
                } else if m.contains(Edge::new(u, v)) {
                    let gain = values.full - values.without_both;
                    if uv_before.is_some_and(|w| w > gain) {
                        &witnesses.without_both
                    } else {
                        take_edge(&mut m, u, v);
                        &witnesses.full
                    }
                } else {
                    &witnesses.without_both
                };
                insert_all(&mut m, witness)?;
            }
            Event::IsolatedComponent { matching, .. } => {
                for &(e, _) in matching {
                    m.insert(e, 0)?;
                }
            }
        }
    }
    Ok(m)
}

/// Undoes one counter sweep step by step, newest first. After step `t` the
/// effective weight of an edge `xy` is `before(xy) - c(x) - c(y)` (clamped),
/// with counters as they stood right after that step.
fn lift_pendant_sweep(m: &mut Matching, steps: &[PendantStep], before: &[(Edge, Weight)]) -> Result<()> {
    let before: HashMap<Edge, Weight> = before.iter().copied().collect();
    let mut counter: HashMap<VertexId, Weight> = HashMap::new();
    for s in steps {
        *counter.entry(s.u).or_insert(0) += s.decrement;
    }
    for s in steps.iter().rev() {
        if s.decrement > 0 {
            match m.mate(s.u) {
                Some(x) => {
                    let e = Edge::new(s.u, x);
                    let w0 = *before
                        .get(&e)
                        .ok_or_else(|| Error::Internal(format!("no stored weight for {e}")))?;
                    let c = |y| counter.get(&y).copied().unwrap_or(0);
                    if w0.saturating_sub(c(s.u)).saturating_sub(c(x)) == 0 {
                        m.remove(e);
                        m.insert(Edge::new(s.u, s.v), 0)?;
                    }
                }
                None => m.insert(Edge::new(s.u, s.v), 0)?,
            }
        } else if !m.covers(s.u) {
            m.insert(Edge::new(s.u, s.v), 0)?;
        }
        *counter.get_mut(&s.u).expect("counter") -= s.decrement;
    }
    Ok(())
}

/// Lifts an unweighted kernel matching and checks the result against the
/// original graph and the cardinality offset.
pub fn lift_unweighted(original: &Graph, kernel: &Graph, trace: &Trace, matching: &Matching) -> Result<Matching> {
    matching.validate(kernel)?;
    let lifted = lift_edges(trace, matching)?;
    let lifted = Matching::in_graph(original, lifted.edges())?;
    let expected = matching.cardinality() as u64 + trace.cardinality_offset();
    if lifted.cardinality() as u64 != expected {
        return Err(Error::Internal(format!(
            "lifted matching has {} edges, expected {expected}",
            lifted.cardinality()
        )));
    }
    Ok(lifted)
}

/// Lifts a weighted kernel matching and checks the result against the
/// original graph and the weight offset.
pub fn lift_weighted(
    original: &WeightedGraph,
    kernel: &WeightedGraph,
    trace: &Trace,
    matching: &Matching,
) -> Result<Matching> {
    let matching = Matching::in_weighted_graph(kernel, matching.edges())?;
    let lifted = lift_edges(trace, &matching)?;
    let lifted = Matching::in_weighted_graph(original, lifted.edges())?;
    let expected = matching.weight() + trace.weight_offset() as u128;
    if lifted.weight() != expected {
        return Err(Error::Internal(format!(
            "lifted matching weighs {}, expected {expected}",
            lifted.weight()
        )));
    }
    Ok(lifted)
}
