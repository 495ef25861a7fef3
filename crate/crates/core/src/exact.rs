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

//! Exact χ', χ'' and χ_at by backtracking, for small graphs.
//!
//! Elements are placed in a fixed order (most constrained first, then the
//! element with the most already-placed conflicts) and coloured with
//! canonical first use: an element may take an already used colour or the
//! next unused one. The AVD rule is checked as soon as both colour sets of
//! an edge are complete.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::coloring::{Color, Element, TotalColoring};
use crate::graph::{Graph, Vertex};

/// Largest supported element count (edges for χ', vertices plus edges
/// otherwise).
pub const MAX_ELEMENTS: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("graph has {elements} elements, exact search supports at most {MAX_ELEMENTS}")]
    Capacity { elements: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stat {
    ChiPrime,
    ChiTotal,
    ChiAt,
}

struct Search {
    // placement order
    elems: Vec<Element>,
    // earlier positions in conflict with each position
    earlier: Vec<Vec<usize>>,
    colors: Vec<Color>,
    k: Color,
    canonical: bool,
    // AVD bookkeeping: vertices whose closed set completes at a position,
    // the positions making up each vertex's set, and its neighbours.
    completes_at: Vec<Vec<Vertex>>,
    closed: Vec<Vec<usize>>,
    adjacent: Vec<Vec<Vertex>>,
    degree: Vec<usize>,
    masks: Vec<u64>,
    complete: Vec<bool>,
}

impl Search {
    fn new(g: &Graph, edges_only: bool, avd: bool) -> Self {
        let mut items: Vec<Element> = Vec::new();
        if !edges_only {
            items.extend(g.vertices().map(Element::Vertex));
        }
        items.extend(g.edges().iter().map(|&(u, v)| Element::Edge(u, v)));

        let conflict = |a: Element, b: Element| -> bool {
            match (a, b) {
                (Element::Vertex(x), Element::Vertex(y)) => g.has_edge(x, y),
                (Element::Vertex(x), Element::Edge(u, v))
                | (Element::Edge(u, v), Element::Vertex(x)) => x == u || x == v,
                (Element::Edge(a, b), Element::Edge(c, d)) => {
                    (a, b) != (c, d) && (a == c || a == d || b == c || b == d)
                }
            }
        };
        let n = items.len();
        let adj: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).filter(|&j| j != i && conflict(items[i], items[j])).collect())
            .collect();

        // static order
        let mut placed = vec![false; n];
        let mut links = vec![0usize; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let next = (0..n)
                .filter(|&i| !placed[i])
                .max_by(|&a, &b| {
                    (links[a], adj[a].len(), core::cmp::Reverse(a))
                        .cmp(&(links[b], adj[b].len(), core::cmp::Reverse(b)))
                })
                .expect("unplaced element");
            placed[next] = true;
            order.push(next);
            for &j in &adj[next] {
                links[j] += 1;
            }
        }
        let mut pos = vec![0; n];
        for (p, &i) in order.iter().enumerate() {
            pos[i] = p;
        }
        let elems: Vec<Element> = order.iter().map(|&i| items[i]).collect();
        let earlier: Vec<Vec<usize>> = order
            .iter()
            .enumerate()
            .map(|(p, &i)| adj[i].iter().map(|&j| pos[j]).filter(|&q| q < p).collect())
            .collect();

        let mut completes_at = vec![Vec::new(); n];
        let mut closed = vec![Vec::new(); g.n()];
        if avd {
            for (p, el) in elems.iter().enumerate() {
                match *el {
                    Element::Vertex(v) => closed[v].push(p),
                    Element::Edge(u, v) => {
                        closed[u].push(p);
                        closed[v].push(p);
                    }
                }
            }
            for v in g.vertices() {
                let last = *closed[v].iter().max().expect("vertex is its own element");
                completes_at[last].push(v);
            }
        }
        Search {
            elems,
            earlier,
            colors: vec![0; n],
            k: 0,
            canonical: true,
            completes_at,
            closed,
            adjacent: g.vertices().map(|v| g.neighbors(v).collect()).collect(),
            degree: g.vertices().map(|v| g.degree(v)).collect(),
            masks: vec![0; g.n()],
            complete: vec![false; g.n()],
        }
    }

    fn avd_ok(&mut self, p: usize) -> bool {
        for idx in 0..self.completes_at[p].len() {
            let v = self.completes_at[p][idx];
            let mask = self.closed[v]
                .iter()
                .fold(0u64, |m, &q| m | 1u64 << self.colors[q]);
            for &w in &self.adjacent[v] {
                if self.complete[w] && self.degree[w] == self.degree[v] && self.masks[w] == mask {
                    for &u in &self.completes_at[p][..idx] {
                        self.complete[u] = false;
                    }
                    return false;
                }
            }
            self.masks[v] = mask;
            self.complete[v] = true;
        }
        true
    }

    fn undo_avd(&mut self, p: usize) {
        for &v in &self.completes_at[p] {
            self.complete[v] = false;
        }
    }

    /// Depth-first over positions; `visit` returns `false` to stop.
    fn run<F: FnMut(&[Element], &[Color]) -> bool>(&mut self, p: usize, max_used: Color, visit: &mut F) -> bool {
        if p == self.elems.len() {
            return visit(&self.elems, &self.colors);
        }
        let mut blocked = 0u64;
        for &q in &self.earlier[p] {
            blocked |= 1u64 << self.colors[q];
        }
        let top = if self.canonical {
            self.k.min(max_used + 1)
        } else {
            self.k
        };
        for c in 1..=top {
            if blocked & (1u64 << c) != 0 {
                continue;
            }
            self.colors[p] = c;
            if self.avd_ok(p) {
                let keep_going = self.run(p + 1, max_used.max(c), visit);
                self.undo_avd(p);
                if !keep_going {
                    self.colors[p] = 0;
                    return false;
                }
            }
        }
        self.colors[p] = 0;
        true
    }
}

fn guard(elements: usize) -> Result<(), ExactError> {
    if elements > MAX_ELEMENTS {
        Err(ExactError::Capacity { elements })
    } else {
        Ok(())
    }
}

fn to_total(g: &Graph, elems: &[Element], colors: &[Color], k: Color) -> TotalColoring {
    let mut vc = vec![0; g.n()];
    let mut ec = vec![0; g.num_edges()];
    for (el, &c) in elems.iter().zip(colors) {
        match *el {
            Element::Vertex(v) => vc[v] = c,
            Element::Edge(u, v) => ec[g.edge_id(u, v).expect("edge")] = c,
        }
    }
    TotalColoring::new(g, vc, ec, k).expect("search colours every element from 1..=k")
}

/// A proper edge colouring with colours `1..=k` (by edge id), if any.
pub fn edge_witness(g: &Graph, k: Color) -> Result<Option<Vec<Color>>, ExactError> {
    guard(g.num_edges())?;
    let mut s = Search::new(g, true, false);
    s.k = k;
    let mut found = None;
    s.run(0, 0, &mut |elems, colors| {
        let mut ec = vec![0; g.num_edges()];
        for (el, &c) in elems.iter().zip(colors) {
            if let Element::Edge(u, v) = *el {
                ec[g.edge_id(u, v).expect("edge")] = c;
            }
        }
        found = Some(ec);
        false
    });
    Ok(found)
}

/// A proper total colouring from `1..=k`, AVD if `avd` is set, if any.
pub fn total_witness(g: &Graph, k: Color, avd: bool) -> Result<Option<TotalColoring>, ExactError> {
    guard(g.n() + g.num_edges())?;
    let mut s = Search::new(g, false, avd);
    s.k = k;
    let mut found = None;
    s.run(0, 0, &mut |elems, colors| {
        found = Some(to_total(g, elems, colors, k));
        false
    });
    Ok(found)
}

/// Calls `visit` on proper total colourings from `1..=k` until it returns
/// `false`. With `canonical` set, only one colouring per permutation class
/// of the colours is produced; otherwise all of them.
pub fn for_each_total_coloring<F>(g: &Graph, k: Color, canonical: bool, mut visit: F) -> Result<(), ExactError>
where
    F: FnMut(&TotalColoring) -> bool,
{
    guard(g.n() + g.num_edges())?;
    let mut s = Search::new(g, false, false);
    s.k = k;
    s.canonical = canonical;
    s.run(0, 0, &mut |elems, colors| visit(&to_total(g, elems, colors, k)));
    Ok(())
}

pub fn chi_prime_exact(g: &Graph) -> Result<Color, ExactError> {
    guard(g.num_edges())?;
    if g.num_edges() == 0 {
        return Ok(0);
    }
    let mut k = g.max_degree() as Color;
    while edge_witness(g, k)?.is_none() {
        k += 1;
    }
    Ok(k)
}

pub fn chi_total_exact(g: &Graph) -> Result<Color, ExactError> {
    min_total(g, false).map(|(k, _)| k)
}

pub fn chi_at_exact(g: &Graph) -> Result<Color, ExactError> {
    min_total(g, true).map(|(k, _)| k)
}

/// Smallest `k` with a proper (AVD if `avd`) total colouring, plus one
/// such colouring.
pub fn min_total(g: &Graph, avd: bool) -> Result<(Color, Option<TotalColoring>), ExactError> {
    guard(g.n() + g.num_edges())?;
    if g.n() == 0 {
        return Ok((0, None));
    }
    let mut k = g.max_degree() as Color + 1;
    loop {
        if let Some(w) = total_witness(g, k, avd)? {
            return Ok((k, Some(w)));
        }
        k += 1;
    }
}

pub fn exact_stat(g: &Graph, stat: Stat) -> Result<Color, ExactError> {
    match stat {
        Stat::ChiPrime => chi_prime_exact(g),
        Stat::ChiTotal => chi_total_exact(g),
        Stat::ChiAt => chi_at_exact(g),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureEntry {
    /// Position in the corpus.
    pub index: usize,
    pub n: usize,
    pub edges: usize,
    pub max_degree: usize,
    pub chi_at: Color,
    /// `Δ + 3 − χ_at`; negative means a counterexample.
    pub slack: i64,
}

pub fn conjecture_entry(index: usize, g: &Graph) -> Result<ConjectureEntry, ExactError> {
    let chi_at = chi_at_exact(g)?;
    Ok(ConjectureEntry {
        index,
        n: g.n(),
        edges: g.num_edges(),
        max_degree: g.max_degree(),
        chi_at,
        slack: g.max_degree() as i64 + 3 - chi_at as i64,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConjectureReport {
    pub entries: Vec<ConjectureEntry>,
    /// Corpus indices with `χ_at > Δ + 3`.
    pub violations: Vec<usize>,
    /// Corpus indices with `χ_at = Δ + 3`.
    pub tight: Vec<usize>,
}

impl ConjectureReport {
    pub fn from_entries(entries: Vec<ConjectureEntry>) -> Self {
        let violations = entries.iter().filter(|e| e.slack < 0).map(|e| e.index).collect();
        let tight = entries.iter().filter(|e| e.slack == 0).map(|e| e.index).collect();
        ConjectureReport {
            entries,
            violations,
            tight,
        }
    }
}

/// Checks `χ_at ≤ Δ + 3` on every graph. A capacity error carries the
/// index of the offending graph.
pub fn check_conjecture<'a, I>(corpus: I) -> Result<ConjectureReport, (usize, ExactError)>
where
    I: IntoIterator<Item = &'a Graph>,
{
    let mut entries = Vec::new();
    for (i, g) in corpus.into_iter().enumerate() {
        entries.push(conjecture_entry(i, g).map_err(|e| (i, e))?);
    }
    Ok(ConjectureReport::from_entries(entries))
}
