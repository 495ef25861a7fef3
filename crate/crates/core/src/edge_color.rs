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

//! Proper edge colouring with at most `Δ + 1` colours.
//!
//! Misra–Gries: edges are inserted in id order; each insertion builds a
//! maximal fan at the lower endpoint, flips one alternating two-colour path
//! and rotates a prefix of the fan. Ties go to the smallest colour and the
//! smallest neighbour id, so the result is a pure function of the graph.

use alloc::vec;
use alloc::vec::Vec;

use crate::coloring::Color;
use crate::graph::{EdgeId, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    /// Colour of each edge, indexed by edge id, in `1..=palette_bound`.
    pub colors: Vec<Color>,
    /// `Δ + 1` of the coloured graph (0 for an edgeless graph).
    pub palette_bound: Color,
}

impl EdgeColoring {
    pub fn num_colors_used(&self) -> usize {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    /// Adjacent edges sharing a colour, as edge-id pairs.
    pub fn conflicts(&self, g: &Graph) -> Vec<(EdgeId, EdgeId)> {
        let mut out = Vec::new();
        for v in g.vertices() {
            let inc = g.incident(v);
            for (i, &(_, e)) in inc.iter().enumerate() {
                for &(_, f) in &inc[i + 1..] {
                    if self.colors[e] == self.colors[f] {
                        out.push((e.min(f), e.max(f)));
                    }
                }
            }
        }
        out
    }
}

struct MisraGries<'g> {
    g: &'g Graph,
    palette: usize,
    colors: Vec<Color>,
    // at[v][c]: edge at v carrying colour c, if any
    at: Vec<Vec<Option<EdgeId>>>,
}

impl<'g> MisraGries<'g> {
    fn new(g: &'g Graph) -> Self {
        let palette = g.max_degree() + 1;
        MisraGries {
            g,
            palette,
            colors: vec![0; g.num_edges()],
            at: vec![vec![None; palette + 1]; g.n()],
        }
    }

    fn is_free(&self, v: Vertex, c: Color) -> bool {
        self.at[v][c as usize].is_none()
    }

    fn smallest_free(&self, v: Vertex) -> Color {
        (1..=self.palette as Color)
            .find(|&c| self.is_free(v, c))
            .expect("a vertex of degree ≤ Δ always misses a colour of Δ+1")
    }

    fn uncolor(&mut self, e: EdgeId) {
        let c = self.colors[e];
        if c != 0 {
            let (a, b) = self.g.edge(e);
            self.at[a][c as usize] = None;
            self.at[b][c as usize] = None;
            self.colors[e] = 0;
        }
    }

    fn color(&mut self, e: EdgeId, c: Color) {
        let (a, b) = self.g.edge(e);
        debug_assert!(self.is_free(a, c) && self.is_free(b, c));
        self.at[a][c as usize] = Some(e);
        self.at[b][c as usize] = Some(e);
        self.colors[e] = c;
    }

    fn maximal_fan(&self, u: Vertex, v: Vertex) -> Vec<(Vertex, EdgeId)> {
        let first = self.g.edge_id(u, v).expect("fan root is an edge");
        let mut fan = vec![(v, first)];
        loop {
            let last = fan.last().expect("non-empty").0;
            let next = self.g.incident(u).iter().copied().find(|&(w, e)| {
                self.colors[e] != 0
                    && self.is_free(last, self.colors[e])
                    && !fan.iter().any(|&(f, _)| f == w)
            });
            match next {
                Some(step) => fan.push(step),
                None => return fan,
            }
        }
    }

    /// Swaps `c` and `d` along the maximal path from `u` that starts with
    /// an edge coloured `d`.
    fn invert_path(&mut self, u: Vertex, c: Color, d: Color) {
        let mut path = Vec::new();
        let mut cur = u;
        let mut want = d;
        while let Some(e) = self.at[cur][want as usize] {
            path.push(e);
            let (a, b) = self.g.edge(e);
            cur = if a == cur { b } else { a };
            want = if want == d { c } else { d };
            if cur == u {
                break;
            }
        }
        let flipped: Vec<(EdgeId, Color)> = path
            .iter()
            .map(|&e| (e, if self.colors[e] == c { d } else { c }))
            .collect();
        for &(e, _) in &flipped {
            self.uncolor(e);
        }
        for (e, col) in flipped {
            self.color(e, col);
        }
    }

    fn insert(&mut self, e: EdgeId) {
        let (u, v) = self.g.edge(e);
        let fan = self.maximal_fan(u, v);
        let c = self.smallest_free(u);
        let d = self.smallest_free(fan.last().expect("non-empty").0);
        if c != d {
            self.invert_path(u, c, d);
        }
        let w = fan
            .iter()
            .position(|&(x, _)| self.is_free(x, d))
            .expect("some fan vertex misses d after the inversion");

        let shifted: Vec<Color> = (0..w).map(|i| self.colors[fan[i + 1].1]).collect();
        for &(_, f) in &fan[1..=w] {
            self.uncolor(f);
        }
        for (i, col) in shifted.into_iter().enumerate() {
            self.color(fan[i].1, col);
        }
        self.color(fan[w].1, d);
    }
}

pub fn vizing_color(g: &Graph) -> EdgeColoring {
    let mut mg = MisraGries::new(g);
    for e in 0..g.num_edges() {
        mg.insert(e);
    }
    EdgeColoring {
        colors: mg.colors,
        palette_bound: if g.num_edges() == 0 {
            0
        } else {
            mg.palette as Color
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, Family};

    fn check(g: &Graph) -> EdgeColoring {
        let ec = vizing_color(g);
        assert!(ec.conflicts(g).is_empty(), "conflicts in {:?}", g.edges());
        assert!(ec.colors.iter().all(|&c| c >= 1 && c <= ec.palette_bound));
        ec
    }

    #[test]
    fn small_families() {
        let p3 = generate(&Family::Path { n: 3 }).unwrap();
        assert!(check(&p3).num_colors_used() <= 3);
        let k3 = generate(&Family::Complete { n: 3 }).unwrap();
        assert_eq!(check(&k3).num_colors_used(), 3);
        let star = generate(&Family::Star { leaves: 4 }).unwrap();
        assert_eq!(check(&star).num_colors_used(), 4);
        let empty = Graph::empty(4);
        assert_eq!(check(&empty).palette_bound, 0);
    }

    #[test]
    fn dense_and_regular_graphs() {
        for n in 2..12 {
            check(&generate(&Family::Complete { n }).unwrap());
        }
        for seed in 0..40 {
            check(&generate(&Family::RandomGnp { n: 25, p: 0.4, seed }).unwrap());
            check(&generate(&Family::RandomRegular { n: 20, d: 7, seed }).unwrap());
        }
    }

    #[test]
    fn deterministic() {
        let g = generate(&Family::RandomGnp { n: 30, p: 0.3, seed: 5 }).unwrap();
        assert_eq!(vizing_color(&g), vizing_color(&g));
    }
}
