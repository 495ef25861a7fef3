// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Random edge selections that separate the colour sets of adjacent
//! high-degree vertices.
//!
//! `X` keeps each edge touching a high-degree vertex with probability `p`;
//! `E1` drops from `X` every edge at a vertex meeting more than `M` edges of
//! `X`. The `L` vertices (high degree, fewer than `m` edges of `E1`) then
//! each draw `B` edges to non-`L` neighbours to form `E2`.
//!
//! Existence of good selections is only guaranteed for huge `Δ`, so both
//! searches run Moser–Tardos resampling against explicit bad-event checkers
//! and report failure, with the best selection seen, when the round cap is
//! reached. The checkers are written against the definitions directly and
//! are the only certificate of success.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::index;
use rand::Rng;
use thiserror::Error;

use crate::analysis::{derive_constants_with, AnalysisError, Constants};
use crate::coloring::{is_proper, Color, ColoringError, TotalColoring};
use crate::graph::{degree_split, DegreeSplit, EdgeId, Graph, Vertex};
use crate::rng::{substream, PhaseRng, Stream};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HighDegreeError {
    #[error("invalid parameters: {0}")]
    Params(&'static str),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("input is not a proper total colouring")]
    Improper,
    #[error("vertex {vertex} has {available} selectable edges, needs {needed}")]
    Infeasible {
        vertex: Vertex,
        available: usize,
        needed: usize,
    },
    #[error("vertex {0} in L does not exceed the degree threshold αΔ")]
    BelowAlpha(Vertex),
    #[error("invalid selection: {0}")]
    InvalidSelection(&'static str),
}

/// Selection and resampling parameters. Defaults: `ε = 1/3, m = 8, d = 4,
/// α = 1/2, β = 1/3, B = 2`, with `λ` and `M` from their formulas.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineParams {
    pub eps: f64,
    pub m: u32,
    pub d: u32,
    pub alpha: f64,
    pub beta: f64,
    pub b: u32,
    /// Replaces `2(1+√2)(m + ln(3/ε))`.
    pub lambda: Option<f64>,
    /// Replaces `⌈2eλ⌉`.
    pub big_m: Option<u32>,
    pub seed: u64,
    pub max_rounds: u32,
}

impl Default for PipelineParams {
    fn default() -> Self {
        PipelineParams {
            eps: 1.0 / 3.0,
            m: 8,
            d: 4,
            alpha: 0.5,
            beta: 1.0 / 3.0,
            b: 2,
            lambda: None,
            big_m: None,
            seed: 0,
            max_rounds: 10_000,
        }
    }
}

impl PipelineParams {
    /// Defaults with the sharpened constants `λ = 34`, `M = 81`.
    pub fn sharpened() -> Self {
        PipelineParams {
            lambda: Some(34.0),
            big_m: Some(81),
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), HighDegreeError> {
        if self.m < self.d + 4 {
            return Err(HighDegreeError::Params("need m ≥ d + 4"));
        }
        if !(self.alpha > self.beta && self.beta > 0.0) {
            return Err(HighDegreeError::Params("need α > β > 0"));
        }
        if self.b < 2 {
            return Err(HighDegreeError::Params("need B ≥ 2"));
        }
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(HighDegreeError::Params("need ε ∈ (0, 1)"));
        }
        Ok(())
    }

    /// `λ`, `M` and `p` for a graph of maximum degree `delta` (taken as at
    /// least 1).
    pub fn constants(&self, delta: usize) -> Result<Constants, HighDegreeError> {
        self.validate()?;
        Ok(derive_constants_with(
            self.m,
            self.d,
            self.eps,
            delta.max(1),
            self.lambda,
            self.big_m,
        )?)
    }
}

/// A set of edges with per-vertex incidence counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSelection {
    edges: Vec<EdgeId>,
    per_vertex_count: Vec<usize>,
    member: Vec<bool>,
}

impl EdgeSelection {
    pub fn empty(g: &Graph) -> Self {
        EdgeSelection {
            edges: Vec::new(),
            per_vertex_count: vec![0; g.n()],
            member: vec![false; g.num_edges()],
        }
    }

    /// Builds a selection from edge ids; order and repeats are ignored.
    pub fn from_ids<I: IntoIterator<Item = EdgeId>>(g: &Graph, ids: I) -> Self {
        let mut s = Self::empty(g);
        for id in ids {
            if !s.member[id] {
                s.member[id] = true;
                let (u, v) = g.edge(id);
                s.per_vertex_count[u] += 1;
                s.per_vertex_count[v] += 1;
            }
        }
        s.edges = (0..g.num_edges()).filter(|&e| s.member[e]).collect();
        s
    }

    /// Ascending edge ids.
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.member[e]
    }

    pub fn count(&self, v: Vertex) -> usize {
        self.per_vertex_count[v]
    }

    pub fn max_count(&self) -> usize {
        self.per_vertex_count.iter().copied().max().unwrap_or(0)
    }

    pub fn union(&self, g: &Graph, other: &EdgeSelection) -> EdgeSelection {
        Self::from_ids(g, self.edges.iter().chain(other.edges.iter()).copied())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BadEventKind {
    /// Adjacent equal-degree high vertices `(u, v)` where `u` meets at least
    /// `m` edges of `E1` but the trimmed sets differ in fewer than `d` colours.
    APair,
    /// High vertex with more than `εΔ` neighbours meeting fewer than `m`
    /// edges of `E1`.
    BVertex,
    /// Vertex outside `L` above the `αΔ` threshold meeting `B` or more `E2`
    /// edges. Witness: the vertex, then the `L` vertices whose draws hit it.
    A2Overload,
    /// Adjacent `L` vertices with equal sets once `E1 ∪ E2` is removed.
    B2Pair,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BadEvent {
    pub kind: BadEventKind,
    pub witness: Vec<Vertex>,
}

/// Result of [`find_e1`] or [`find_e2`].
#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    /// On failure, the selection with the fewest bad events seen.
    pub selection: EdgeSelection,
    pub success: bool,
    /// Selections checked.
    pub rounds: u32,
    /// Bad events of `selection`.
    pub events: Vec<BadEvent>,
}

/// Edges with at least one high-degree endpoint, ascending.
pub fn high_incident_edges(g: &Graph, split: &DegreeSplit) -> Vec<EdgeId> {
    (0..g.num_edges())
        .filter(|&e| {
            let (u, v) = g.edge(e);
            split.is_high(u) || split.is_high(v)
        })
        .collect()
}

pub fn sample_x(g: &Graph, p: f64, rng: &mut PhaseRng) -> EdgeSelection {
    let split = degree_split(g);
    let p = p.clamp(0.0, 1.0);
    let picked: Vec<EdgeId> = high_incident_edges(g, &split)
        .into_iter()
        .filter(|_| rng.gen_bool(p))
        .collect();
    EdgeSelection::from_ids(g, picked)
}

/// Drops every edge of `x` with an endpoint meeting more than `big_m`
/// edges of `x`.
pub fn build_e1(g: &Graph, x: &EdgeSelection, big_m: u32) -> EdgeSelection {
    let cap = big_m as usize;
    EdgeSelection::from_ids(
        g,
        x.edges().iter().copied().filter(|&e| {
            let (u, v) = g.edge(e);
            x.count(u) <= cap && x.count(v) <= cap
        }),
    )
}

/// High-degree vertices meeting fewer than `m` edges of `e1`.
pub fn low_e1_vertices(g: &Graph, e1: &EdgeSelection, m: u32) -> Vec<Vertex> {
    let split = degree_split(g);
    split
        .high
        .iter()
        .copied()
        .filter(|&v| e1.count(v) < m as usize)
        .collect()
}

// Colour sets as bitsets, one row per vertex.
struct SetTable {
    words: usize,
    bits: Vec<u64>,
}

impl SetTable {
    fn new(n: usize, k: Color) -> Self {
        let words = k as usize / 64 + 1;
        SetTable {
            words,
            bits: vec![0; n * words],
        }
    }

    fn row(&self, v: Vertex) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    /// `C(v)` with the edges in `removed` dropped, for each vertex in `which`.
    fn fill<F>(&mut self, g: &Graph, phi: &TotalColoring, which: &[Vertex], removed: F)
    where
        F: Fn(EdgeId) -> bool,
    {
        for &v in which {
            let w = self.words;
            let row = &mut self.bits[v * w..(v + 1) * w];
            row.iter_mut().for_each(|x| *x = 0);
            let mut set = |c: Color| row[c as usize / 64] |= 1u64 << (c % 64);
            set(phi.vertex_color(v));
            for &(_, e) in g.incident(v) {
                if !removed(e) {
                    set(phi.edge_color(e));
                }
            }
        }
    }

    fn sym_diff(&self, u: Vertex, v: Vertex) -> u32 {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a ^ b).count_ones())
            .sum()
    }
}

fn ensure_proper(g: &Graph, phi: &TotalColoring) -> Result<(), HighDegreeError> {
    phi.check_shape(g)?;
    if is_proper(g, phi) {
        Ok(())
    } else {
        Err(HighDegreeError::Improper)
    }
}

/// Bad events of `e1`. `phi` must be proper.
pub fn e1_violations(
    g: &Graph,
    phi: &TotalColoring,
    e1: &EdgeSelection,
    params: &PipelineParams,
) -> Result<Vec<BadEvent>, HighDegreeError> {
    ensure_proper(g, phi)?;
    params.validate()?;
    let split = degree_split(g);
    let mut table = SetTable::new(g.n(), phi.k());
    Ok(check_e1(g, &split, phi, e1, params, &mut table))
}

fn check_e1(
    g: &Graph,
    split: &DegreeSplit,
    phi: &TotalColoring,
    e1: &EdgeSelection,
    params: &PipelineParams,
    table: &mut SetTable,
) -> Vec<BadEvent> {
    let m = params.m as usize;
    let d = params.d;
    table.fill(g, phi, &split.high, |e| e1.contains(e));

    let mut events = Vec::new();
    for &(u, v) in g.edges() {
        if !(split.is_high(u) && split.is_high(v)) || g.degree(u) != g.degree(v) {
            continue;
        }
        if (e1.count(u) >= m || e1.count(v) >= m) && table.sym_diff(u, v) < d {
            for (a, b) in [(u, v), (v, u)] {
                if e1.count(a) >= m {
                    events.push(BadEvent {
                        kind: BadEventKind::APair,
                        witness: vec![a, b],
                    });
                }
            }
        }
    }
    let limit = params.eps * g.max_degree() as f64;
    for &v in &split.high {
        let short = g.neighbors(v).filter(|&u| e1.count(u) < m).count();
        if short as f64 > limit {
            events.push(BadEvent {
                kind: BadEventKind::BVertex,
                witness: vec![v],
            });
        }
    }
    events.sort();
    events
}

/// Marks items once per round, keeping first-seen order.
struct Stamp {
    seen: Vec<u32>,
    round: u32,
    order: Vec<usize>,
}

impl Stamp {
    fn new(len: usize) -> Self {
        Stamp {
            seen: vec![0; len],
            round: 0,
            order: Vec::new(),
        }
    }

    fn next_round(&mut self) {
        self.round += 1;
        self.order.clear();
    }

    fn mark(&mut self, i: usize) {
        if self.seen[i] != self.round {
            self.seen[i] = self.round;
            self.order.push(i);
        }
    }
}

/// Searches for `E1` by resampling the edge indicators of `X` around each
/// bad event (edges meeting the closed neighbourhood of a witness vertex).
pub fn find_e1(
    g: &Graph,
    phi: &TotalColoring,
    params: &PipelineParams,
) -> Result<SearchOutcome, HighDegreeError> {
    ensure_proper(g, phi)?;
    params.validate()?;
    let split = degree_split(g);
    if split.high.is_empty() || g.num_edges() == 0 {
        return Ok(SearchOutcome {
            selection: EdgeSelection::empty(g),
            success: true,
            rounds: 0,
            events: Vec::new(),
        });
    }
    let consts = params.constants(g.max_degree())?;
    let p = consts.p;
    let mut rng = substream(params.seed, Stream::SampleX);

    let domain = high_incident_edges(g, &split);
    let mut in_domain = vec![false; g.num_edges()];
    domain.iter().for_each(|&e| in_domain[e] = true);
    let mut x_bits: Vec<bool> = vec![false; g.num_edges()];
    for &e in &domain {
        x_bits[e] = rng.gen_bool(p);
    }
    let frozen = p <= 0.0 || p >= 1.0;

    let mut table = SetTable::new(g.n(), phi.k());
    let mut stamp = Stamp::new(g.num_edges());
    let mut best: Option<(EdgeSelection, Vec<BadEvent>)> = None;
    let mut rounds = 0;
    while rounds < params.max_rounds.max(1) {
        rounds += 1;
        let x = EdgeSelection::from_ids(g, domain.iter().copied().filter(|&e| x_bits[e]));
        let e1 = build_e1(g, &x, consts.big_m);
        let events = check_e1(g, &split, phi, &e1, params, &mut table);
        let done = events.is_empty();
        if best.as_ref().is_none_or(|(_, b)| events.len() < b.len()) {
            best = Some((e1, events.clone()));
        }
        if done || frozen {
            break;
        }
        stamp.next_round();
        for ev in &events {
            for &w in &ev.witness {
                for x in core::iter::once(w).chain(g.neighbors(w)) {
                    for &(_, e) in g.incident(x) {
                        if in_domain[e] {
                            stamp.mark(e);
                        }
                    }
                }
            }
        }
        for &e in &stamp.order {
            x_bits[e] = rng.gen_bool(p);
        }
    }
    let (selection, events) = best.expect("at least one round");
    Ok(SearchOutcome {
        success: events.is_empty(),
        selection,
        rounds,
        events,
    })
}

// Edges `u` may draw: not in E1, other endpoint outside L.
fn available_edges(g: &Graph, e1: &EdgeSelection, in_l: &[bool], u: Vertex) -> Vec<EdgeId> {
    g.incident(u)
        .iter()
        .filter(|&&(w, e)| !in_l[w] && !e1.contains(e))
        .map(|&(_, e)| e)
        .collect()
}

struct E2Setup {
    in_l: Vec<bool>,
    l: Vec<Vertex>,
    available: Vec<Vec<EdgeId>>,
}

fn prepare_e2(
    g: &Graph,
    e1: &EdgeSelection,
    l: &[Vertex],
    params: &PipelineParams,
) -> Result<E2Setup, HighDegreeError> {
    params.validate()?;
    let mut in_l = vec![false; g.n()];
    let mut sorted: Vec<Vertex> = l.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let threshold = params.alpha * g.max_degree() as f64;
    for &u in &sorted {
        if u >= g.n() {
            return Err(ColoringError::UnknownVertex(u).into());
        }
        if !(g.degree(u) as f64 > threshold) {
            return Err(HighDegreeError::BelowAlpha(u));
        }
        in_l[u] = true;
    }
    let mut available = Vec::with_capacity(sorted.len());
    for &u in &sorted {
        let av = available_edges(g, e1, &in_l, u);
        if av.len() < params.b as usize {
            return Err(HighDegreeError::Infeasible {
                vertex: u,
                available: av.len(),
                needed: params.b as usize,
            });
        }
        available.push(av);
    }
    Ok(E2Setup {
        in_l,
        l: sorted,
        available,
    })
}

fn draw(available: &[EdgeId], b: usize, rng: &mut PhaseRng) -> Vec<EdgeId> {
    let mut picked: Vec<EdgeId> = index::sample(rng, available.len(), b)
        .into_iter()
        .map(|i| available[i])
        .collect();
    picked.sort_unstable();
    picked
}

/// Each `u ∈ L` (ascending) draws a uniform `B`-subset of its edges outside
/// `e1` that lead out of `L`.
pub fn select_e2(
    g: &Graph,
    e1: &EdgeSelection,
    l: &[Vertex],
    params: &PipelineParams,
    rng: &mut PhaseRng,
) -> Result<EdgeSelection, HighDegreeError> {
    let setup = prepare_e2(g, e1, l, params)?;
    let b = params.b as usize;
    let ids: Vec<EdgeId> = setup
        .available
        .iter()
        .flat_map(|av| draw(av, b, rng))
        .collect();
    Ok(EdgeSelection::from_ids(g, ids))
}

/// Bad events of `e2`. Fails if `e2` meets `e1` or some `u ∈ L` does not
/// meet exactly `B` edges of `e2`.
pub fn e2_violations(
    g: &Graph,
    phi: &TotalColoring,
    e1: &EdgeSelection,
    e2: &EdgeSelection,
    l: &[Vertex],
    params: &PipelineParams,
) -> Result<Vec<BadEvent>, HighDegreeError> {
    ensure_proper(g, phi)?;
    params.validate()?;
    let mut in_l = vec![false; g.n()];
    for &u in l {
        if u >= g.n() {
            return Err(ColoringError::UnknownVertex(u).into());
        }
        in_l[u] = true;
    }
    if e2.edges().iter().any(|&e| e1.contains(e)) {
        return Err(HighDegreeError::InvalidSelection("E2 meets E1"));
    }
    if l.iter().any(|&u| e2.count(u) != params.b as usize) {
        return Err(HighDegreeError::InvalidSelection("an L vertex does not meet exactly B edges of E2"));
    }
    let mut l_sorted = l.to_vec();
    l_sorted.sort_unstable();
    l_sorted.dedup();
    let mut table = SetTable::new(g.n(), phi.k());
    Ok(check_e2(g, phi, e1, e2, &l_sorted, &in_l, params, &mut table))
}

#[allow(clippy::too_many_arguments)]
fn check_e2(
    g: &Graph,
    phi: &TotalColoring,
    e1: &EdgeSelection,
    e2: &EdgeSelection,
    l: &[Vertex],
    in_l: &[bool],
    params: &PipelineParams,
    table: &mut SetTable,
) -> Vec<BadEvent> {
    let b = params.b as usize;
    let threshold = params.alpha * g.max_degree() as f64;
    let mut events = Vec::new();
    for v in g.vertices() {
        if in_l[v] || !(g.degree(v) as f64 > threshold) || e2.count(v) < b {
            continue;
        }
        let mut witness = vec![v];
        witness.extend(
            g.incident(v)
                .iter()
                .filter(|&&(u, e)| in_l[u] && e2.contains(e))
                .map(|&(u, _)| u),
        );
        events.push(BadEvent {
            kind: BadEventKind::A2Overload,
            witness,
        });
    }
    table.fill(g, phi, l, |e| e1.contains(e) || e2.contains(e));
    for &u in l {
        for w in g.neighbors(u) {
            if w > u && in_l[w] && table.sym_diff(u, w) == 0 {
                events.push(BadEvent {
                    kind: BadEventKind::B2Pair,
                    witness: vec![u, w],
                });
            }
        }
    }
    events.sort();
    events
}

/// Searches for `E2` by redrawing the `B`-subsets of the `L` vertices in
/// the closed neighbourhood of each bad event's witnesses.
pub fn find_e2(
    g: &Graph,
    phi: &TotalColoring,
    e1: &EdgeSelection,
    l: &[Vertex],
    params: &PipelineParams,
) -> Result<SearchOutcome, HighDegreeError> {
    ensure_proper(g, phi)?;
    let setup = prepare_e2(g, e1, l, params)?;
    if setup.l.is_empty() {
        return Ok(SearchOutcome {
            selection: EdgeSelection::empty(g),
            success: true,
            rounds: 0,
            events: Vec::new(),
        });
    }
    let b = params.b as usize;
    let mut rng = substream(params.seed, Stream::SelectE2);
    let mut slot = vec![usize::MAX; g.n()];
    for (i, &u) in setup.l.iter().enumerate() {
        slot[u] = i;
    }
    let mut draws: Vec<Vec<EdgeId>> = setup.available.iter().map(|av| draw(av, b, &mut rng)).collect();
    let frozen = setup.available.iter().all(|av| av.len() == b);

    let mut table = SetTable::new(g.n(), phi.k());
    let mut stamp = Stamp::new(setup.l.len());
    let mut best: Option<(EdgeSelection, Vec<BadEvent>)> = None;
    let mut rounds = 0;
    while rounds < params.max_rounds.max(1) {
        rounds += 1;
        let e2 = EdgeSelection::from_ids(g, draws.iter().flatten().copied());
        let events = check_e2(g, phi, e1, &e2, &setup.l, &setup.in_l, params, &mut table);
        let done = events.is_empty();
        if best.as_ref().is_none_or(|(_, prev)| events.len() < prev.len()) {
            best = Some((e2, events.clone()));
        }
        if done || frozen {
            break;
        }
        stamp.next_round();
        for ev in &events {
            for &w in &ev.witness {
                for x in core::iter::once(w).chain(g.neighbors(w)) {
                    if setup.in_l[x] {
                        stamp.mark(slot[x]);
                    }
                }
            }
        }
        for &i in &stamp.order {
            draws[i] = draw(&setup.available[i], b, &mut rng);
        }
    }
    let (selection, events) = best.expect("at least one round");
    Ok(SearchOutcome {
        success: events.is_empty(),
        selection,
        rounds,
        events,
    })
}
