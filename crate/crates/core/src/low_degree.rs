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

//! Distinguishing low-degree vertices by recolouring vertices only.
//!
//! A vertex `u` with `2·deg(u) ≤ Δ` can always be given a new colour that
//! keeps the colouring proper and makes `C(u)` differ from every neighbour's
//! set: at most `2·deg(u) ≤ Δ < k` colours are ruled out. Recolouring `u`
//! changes no other colour set, because a vertex colour only appears in its
//! own set. Edge colours and high-degree vertex colours are never touched.

use alloc::vec::Vec;

use thiserror::Error;

use crate::coloring::{closed_colors, is_proper, Color, ColoringError, TotalColoring};
use crate::graph::{degree_split, DegreeSplit, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LowDegreeError {
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("input is not a proper total colouring")]
    Improper,
    #[error("budget k = {k} does not exceed Δ = {delta}")]
    BudgetTooSmall { k: Color, delta: usize },
    #[error("vertex {0} is not a low-degree vertex")]
    NotLowDegree(Vertex),
    #[error("no admissible colour for vertex {0}")]
    NoFreeColor(Vertex),
    #[error("recolouring did not converge within {0} steps")]
    NoProgress(usize),
}

/// Colours `u` may not take: neighbour vertex colours, incident edge colours,
/// and every `i` for which some neighbour's set equals `{i} ∪ (edge colours
/// at u)`.
pub fn forbidden_colors(
    g: &Graph,
    phi: &TotalColoring,
    u: Vertex,
) -> Result<Vec<Color>, LowDegreeError> {
    phi.check_shape(g)?;
    if u >= g.n() {
        return Err(ColoringError::UnknownVertex(u).into());
    }
    if 2 * g.degree(u) > g.max_degree() {
        return Err(LowDegreeError::NotLowDegree(u));
    }
    Ok(forbidden_unchecked(g, phi, u, |v| closed_colors(g, phi, v)))
}

fn forbidden_unchecked<F>(g: &Graph, phi: &TotalColoring, u: Vertex, set_of: F) -> Vec<Color>
where
    F: Fn(Vertex) -> Vec<Color>,
{
    let mut edge_colors: Vec<Color> = g.incident(u).iter().map(|&(_, e)| phi.edge_color(e)).collect();
    edge_colors.sort_unstable();

    let mut out: Vec<Color> = Vec::with_capacity(2 * g.degree(u));
    for &(v, e) in g.incident(u) {
        out.push(phi.vertex_color(v));
        out.push(phi.edge_color(e));
        let cv = set_of(v);
        if cv.len() != edge_colors.len() + 1 {
            continue;
        }
        // cv ⊇ edge_colors with exactly one colour left over
        let mut extra = None;
        let mut j = 0;
        let mut ok = true;
        for &c in &cv {
            if j < edge_colors.len() && edge_colors[j] == c {
                j += 1;
            } else if extra.is_none() {
                extra = Some(c);
            } else {
                ok = false;
                break;
            }
        }
        if ok && j == edge_colors.len() {
            if let Some(i) = extra {
                out.push(i);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Result of [`distinguish_low_degree_traced`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowDegreeOutcome {
    pub coloring: TotalColoring,
    /// `(vertex, new colour)` in the order the steps were taken.
    pub steps: Vec<(Vertex, Color)>,
}

pub fn distinguish_low_degree(
    g: &Graph,
    phi: &TotalColoring,
) -> Result<TotalColoring, LowDegreeError> {
    distinguish_low_degree_traced(g, phi).map(|o| o.coloring)
}

/// Repeatedly recolours the first low-degree vertex (ascending id) that has
/// a neighbour with the same colour set, using the smallest colour in
/// `1..=k` outside [`forbidden_colors`].
pub fn distinguish_low_degree_traced(
    g: &Graph,
    phi: &TotalColoring,
) -> Result<LowDegreeOutcome, LowDegreeError> {
    phi.check_shape(g)?;
    if !is_proper(g, phi) {
        return Err(LowDegreeError::Improper);
    }
    let delta = g.max_degree();
    if g.n() > 0 && (phi.k() as usize) <= delta {
        return Err(LowDegreeError::BudgetTooSmall { k: phi.k(), delta });
    }
    let split = degree_split(g);
    let mut out = phi.clone();
    let mut sets: Vec<Vec<Color>> = g.vertices().map(|v| closed_colors(g, &out, v)).collect();
    let mut steps = Vec::new();

    while let Some(u) = first_undistinguished(g, &split, &sets) {
        if steps.len() >= split.low.len() {
            return Err(LowDegreeError::NoProgress(steps.len()));
        }
        let forbidden = forbidden_unchecked(g, &out, u, |v| sets[v].clone());
        debug_assert!(forbidden.len() <= 2 * g.degree(u));
        let color = (1..=out.k())
            .find(|c| forbidden.binary_search(c).is_err())
            .ok_or(LowDegreeError::NoFreeColor(u))?;
        out.set_vertex_color(u, color);
        sets[u] = closed_colors(g, &out, u);
        steps.push((u, color));
    }
    Ok(LowDegreeOutcome {
        coloring: out,
        steps,
    })
}

fn first_undistinguished(g: &Graph, split: &DegreeSplit, sets: &[Vec<Color>]) -> Option<Vertex> {
    split
        .low
        .iter()
        .copied()
        .find(|&u| g.neighbors(u).any(|v| sets[u] == sets[v]))
}
