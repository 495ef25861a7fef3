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

//! Simple undirected graphs with dense `0..n` vertex labels.
//!
//! Edges are stored once as sorted pairs `(u, v)` with `u < v`, in
//! lexicographic order; an edge's index in that list is its [`EdgeId`].
//! Every vertex keeps its neighbours in ascending order together with the
//! id of the connecting edge, so per-vertex scans are deterministic.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

/// Dense vertex label.
pub type Vertex = usize;

/// Index of an edge in [`Graph::edges`].
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("edge endpoint {vertex} out of range for {n} vertices")]
    OutOfRange { vertex: Vertex, n: usize },
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
}

/// A simple graph. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    // (neighbour, edge id), sorted by neighbour
    adjacency: Vec<Vec<(Vertex, EdgeId)>>,
    max_degree: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); n],
            max_degree: 0,
        }
    }

    /// Builds a graph from an edge list. Orientation and duplicates are
    /// ignored; loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut list = Vec::new();
        for (a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::OutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            list.push(if a < b { (a, b) } else { (b, a) });
        }
        list.sort_unstable();
        list.dedup();

        let mut adjacency = vec![Vec::new(); n];
        for (id, &(u, v)) in list.iter().enumerate() {
            adjacency[u].push((v, id));
            adjacency[v].push((u, id));
        }
        for nbrs in adjacency.iter_mut() {
            nbrs.sort_unstable();
        }
        let max_degree = adjacency.iter().map(Vec::len).max().unwrap_or(0);
        Ok(Graph {
            n,
            edges: list,
            adjacency,
            max_degree,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order, each as `(u, v)` with `u < v`.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> (Vertex, Vertex) {
        self.edges[id]
    }

    /// Maximum degree; 0 for edgeless graphs.
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    /// Neighbours of `v` in ascending order.
    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adjacency[v].iter().map(|&(w, _)| w)
    }

    /// `(neighbour, edge id)` pairs of `v`, ascending by neighbour.
    pub fn incident(&self, v: Vertex) -> &[(Vertex, EdgeId)] {
        &self.adjacency[v]
    }

    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        if u >= self.n || v >= self.n {
            return None;
        }
        let nbrs = &self.adjacency[u];
        nbrs.binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| nbrs[i].1)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_id(u, v).is_some()
    }

    pub fn vertices(&self) -> core::ops::Range<Vertex> {
        0..self.n
    }

    /// Spanning subgraph on the same vertex set with only the given edges.
    pub fn edge_subgraph(&self, ids: &[EdgeId]) -> Graph {
        Graph::from_edges(self.n, ids.iter().map(|&id| self.edges[id]))
            .expect("edges of a valid graph")
    }
}

/// Low/high degree partition: `v` is low iff `2·deg(v) ≤ Δ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSplit {
    pub low: Vec<Vertex>,
    pub high: Vec<Vertex>,
    is_high: Vec<bool>,
}

impl DegreeSplit {
    pub fn is_high(&self, v: Vertex) -> bool {
        self.is_high[v]
    }

    pub fn is_low(&self, v: Vertex) -> bool {
        !self.is_high[v]
    }
}

pub fn degree_split(g: &Graph) -> DegreeSplit {
    let delta = g.max_degree();
    let is_high: Vec<bool> = g.vertices().map(|v| 2 * g.degree(v) > delta).collect();
    let (mut low, mut high) = (Vec::new(), Vec::new());
    for v in g.vertices() {
        if is_high[v] {
            high.push(v);
        } else {
            low.push(v);
        }
    }
    DegreeSplit { low, high, is_high }
}
