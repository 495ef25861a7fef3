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

//! Total colourings, colour sets, and the two verifiers (properness and
//! adjacent-vertex distinction).
//!
//! A [`TotalColoring`] assigns a colour in `1..=k` to every vertex and every
//! edge of one particular graph. Colours are opaque labels; `k` is the budget.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{EdgeId, Graph, Vertex};

pub type Color = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("{what}: expected {expected} entries, found {found}")]
    Shape {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{element:?} has colour {color}, outside 1..={k}")]
    OutOfPalette { element: Element, color: Color, k: Color },
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("colouring is not a proper total colouring ({0} violations)")]
    Improper(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalColoring {
    vertex_colors: Vec<Color>,
    edge_colors: Vec<Color>,
    k: Color,
}

impl TotalColoring {
    /// Checks that every vertex and edge of `g` is coloured from `1..=k`.
    pub fn new(
        g: &Graph,
        vertex_colors: Vec<Color>,
        edge_colors: Vec<Color>,
        k: Color,
    ) -> Result<Self, ColoringError> {
        let c = TotalColoring {
            vertex_colors,
            edge_colors,
            k,
        };
        c.check_shape(g)?;
        for v in g.vertices() {
            if !(1..=k).contains(&c.vertex_colors[v]) {
                return Err(ColoringError::OutOfPalette {
                    element: Element::Vertex(v),
                    color: c.vertex_colors[v],
                    k,
                });
            }
        }
        for (id, &(u, v)) in g.edges().iter().enumerate() {
            if !(1..=k).contains(&c.edge_colors[id]) {
                return Err(ColoringError::OutOfPalette {
                    element: Element::Edge(u, v),
                    color: c.edge_colors[id],
                    k,
                });
            }
        }
        Ok(c)
    }

    /// Like [`TotalColoring::new`] with `k` set to the largest colour used.
    pub fn with_tight_budget(
        g: &Graph,
        vertex_colors: Vec<Color>,
        edge_colors: Vec<Color>,
    ) -> Result<Self, ColoringError> {
        let k = vertex_colors
            .iter()
            .chain(edge_colors.iter())
            .copied()
            .max()
            .unwrap_or(0);
        Self::new(g, vertex_colors, edge_colors, k)
    }

    pub(crate) fn check_shape(&self, g: &Graph) -> Result<(), ColoringError> {
        if self.vertex_colors.len() != g.n() {
            return Err(ColoringError::Shape {
                what: "vertex colours",
                expected: g.n(),
                found: self.vertex_colors.len(),
            });
        }
        if self.edge_colors.len() != g.num_edges() {
            return Err(ColoringError::Shape {
                what: "edge colours",
                expected: g.num_edges(),
                found: self.edge_colors.len(),
            });
        }
        Ok(())
    }

    pub fn k(&self) -> Color {
        self.k
    }

    pub fn vertex_color(&self, v: Vertex) -> Color {
        self.vertex_colors[v]
    }

    pub fn edge_color(&self, e: EdgeId) -> Color {
        self.edge_colors[e]
    }

    pub fn vertex_colors(&self) -> &[Color] {
        &self.vertex_colors
    }

    pub fn edge_colors(&self) -> &[Color] {
        &self.edge_colors
    }

    /// Largest colour actually used (0 for the empty graph).
    pub fn max_color(&self) -> Color {
        self.vertex_colors
            .iter()
            .chain(self.edge_colors.iter())
            .copied()
            .max()
            .unwrap_or(0)
    }

    pub(crate) fn set_vertex_color(&mut self, v: Vertex, c: Color) {
        debug_assert!(c >= 1 && c <= self.k);
        self.vertex_colors[v] = c;
    }

    pub(crate) fn set_edge_color(&mut self, e: EdgeId, c: Color) {
        debug_assert!(c >= 1 && c <= self.k);
        self.edge_colors[e] = c;
    }

    pub(crate) fn grow_budget(&mut self, extra: Color) {
        self.k += extra;
    }
}

/// A graph element: a vertex or an edge `(u, v)` with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Vertex(Vertex),
    Edge(Vertex, Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorSet {
    pub owner: Vertex,
    /// Sorted, without repeats.
    pub colors: Vec<Color>,
}

pub fn color_set(g: &Graph, phi: &TotalColoring, v: Vertex) -> Result<ColorSet, ColoringError> {
    phi.check_shape(g)?;
    if v >= g.n() {
        return Err(ColoringError::UnknownVertex(v));
    }
    Ok(ColorSet {
        owner: v,
        colors: closed_colors(g, phi, v),
    })
}

pub(crate) fn closed_colors(g: &Graph, phi: &TotalColoring, v: Vertex) -> Vec<Color> {
    let mut colors: Vec<Color> = core::iter::once(phi.vertex_color(v))
        .chain(g.incident(v).iter().map(|&(_, e)| phi.edge_color(e)))
        .collect();
    colors.sort_unstable();
    colors.dedup();
    colors
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ViolationKind {
    VertexVertex,
    VertexEdge,
    EdgeEdge,
    UndistinguishedPair,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witness: (Element, Element),
}

/// Every adjacent vertex pair, incident vertex/edge pair and adjacent edge
/// pair sharing a colour. Empty iff `phi` is a proper total colouring.
pub fn properness_violations(
    g: &Graph,
    phi: &TotalColoring,
) -> Result<Vec<Violation>, ColoringError> {
    phi.check_shape(g)?;
    let mut out = Vec::new();
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        let ce = phi.edge_color(id);
        if phi.vertex_color(u) == phi.vertex_color(v) {
            out.push(Violation {
                kind: ViolationKind::VertexVertex,
                witness: (Element::Vertex(u), Element::Vertex(v)),
            });
        }
        for x in [u, v] {
            if phi.vertex_color(x) == ce {
                out.push(Violation {
                    kind: ViolationKind::VertexEdge,
                    witness: (Element::Vertex(x), Element::Edge(u, v)),
                });
            }
        }
    }
    for x in g.vertices() {
        let inc = g.incident(x);
        for (i, &(_, e)) in inc.iter().enumerate() {
            for &(_, f) in &inc[i + 1..] {
                if phi.edge_color(e) == phi.edge_color(f) {
                    let (a, b) = g.edge(e);
                    let (c, d) = g.edge(f);
                    out.push(Violation {
                        kind: ViolationKind::EdgeEdge,
                        witness: (Element::Edge(a, b), Element::Edge(c, d)),
                    });
                }
            }
        }
    }
    Ok(out)
}

pub fn is_proper(g: &Graph, phi: &TotalColoring) -> bool {
    matches!(properness_violations(g, phi), Ok(v) if v.is_empty())
}

/// One violation per edge `uv` (reported with `u < v`) whose endpoints have
/// equal colour sets. Requires `phi` to be proper.
pub fn avd_violations(g: &Graph, phi: &TotalColoring) -> Result<Vec<Violation>, ColoringError> {
    let improper = properness_violations(g, phi)?;
    if !improper.is_empty() {
        return Err(ColoringError::Improper(improper.len()));
    }
    Ok(undistinguished_edges(g, phi)
        .into_iter()
        .map(|(u, v)| Violation {
            kind: ViolationKind::UndistinguishedPair,
            witness: (Element::Vertex(u), Element::Vertex(v)),
        })
        .collect())
}

/// Edges whose endpoints have equal colour sets, without the properness check.
pub(crate) fn undistinguished_edges(g: &Graph, phi: &TotalColoring) -> Vec<(Vertex, Vertex)> {
    let sets: Vec<Vec<Color>> = g.vertices().map(|v| closed_colors(g, phi, v)).collect();
    g.edges()
        .iter()
        .copied()
        .filter(|&(u, v)| g.degree(u) == g.degree(v) && sets[u] == sets[v])
        .collect()
}

pub fn is_avd(g: &Graph, phi: &TotalColoring) -> bool {
    matches!(avd_violations(g, phi), Ok(v) if v.is_empty())
}

/// Number of distinct colours in use.
pub fn palette_size(phi: &TotalColoring) -> usize {
    let mut seen = vec![false; phi.max_color() as usize + 1];
    let mut count = 0;
    for &c in phi.vertex_colors.iter().chain(phi.edge_colors.iter()) {
        if !seen[c as usize] {
            seen[c as usize] = true;
            count += 1;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    // a=0, b=1, c=2 ; edges ab=0, bc=1
    fn p3() -> (Graph, TotalColoring) {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let phi = TotalColoring::new(&g, vec![1, 2, 1], vec![3, 4], 4).unwrap();
        (g, phi)
    }

    #[test]
    fn color_sets_of_p3() {
        let (g, phi) = p3();
        assert_eq!(color_set(&g, &phi, 1).unwrap().colors, vec![2, 3, 4]);
        assert_eq!(color_set(&g, &phi, 0).unwrap().colors, vec![1, 3]);
        assert_eq!(
            color_set(&g, &phi, 3),
            Err(ColoringError::UnknownVertex(3))
        );
    }

    #[test]
    fn isolated_vertex_set() {
        let g = Graph::empty(1);
        let phi = TotalColoring::new(&g, vec![5], vec![], 5).unwrap();
        assert_eq!(color_set(&g, &phi, 0).unwrap().colors, vec![5]);
        assert!(properness_violations(&g, &phi).unwrap().is_empty());
        assert_eq!(palette_size(&phi), 1);
    }

    #[test]
    fn p3_is_proper_and_avd() {
        let (g, phi) = p3();
        assert!(properness_violations(&g, &phi).unwrap().is_empty());
        assert!(avd_violations(&g, &phi).unwrap().is_empty());
        assert_eq!(palette_size(&phi), 4);
    }

    #[test]
    fn vertex_edge_clash_detected() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let phi = TotalColoring::new(&g, vec![1, 2, 1], vec![1, 4], 4).unwrap();
        let v = properness_violations(&g, &phi).unwrap();
        assert_eq!(
            v,
            vec![Violation {
                kind: ViolationKind::VertexEdge,
                witness: (Element::Vertex(0), Element::Edge(0, 1)),
            }]
        );
        assert_eq!(avd_violations(&g, &phi), Err(ColoringError::Improper(1)));
    }

    #[test]
    fn k2_distinguished() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let phi = TotalColoring::new(&g, vec![1, 2], vec![3], 3).unwrap();
        assert!(avd_violations(&g, &phi).unwrap().is_empty());
    }

    #[test]
    fn shape_and_palette_errors() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert!(matches!(
            TotalColoring::new(&g, vec![1, 2], vec![], 3),
            Err(ColoringError::Shape { .. })
        ));
        assert!(matches!(
            TotalColoring::new(&g, vec![1, 0], vec![3], 3),
            Err(ColoringError::OutOfPalette { .. })
        ));
        let other = Graph::from_edges(3, [(0, 1)]).unwrap();
        let phi = TotalColoring::new(&g, vec![1, 2], vec![3], 3).unwrap();
        assert!(properness_violations(&other, &phi).is_err());
    }

    #[test]
    fn edge_edge_clash_reported_once() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let phi = TotalColoring::new(&g, vec![1, 2, 1], vec![3, 3], 3).unwrap();
        let v = properness_violations(&g, &phi).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::EdgeEdge);
    }
}
