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


//! The JSON colouring document.
//!
//! ```json
//! {"n": 2, "edges": [[0, 1]], "k": 3, "vertex_colors": [1, 2],
//!  "edge_colors": [{"u": 0, "v": 1, "c": 3}],
//!  "verified": {"proper": true, "avd": true}}
//! ```
//!
//! Documents written by `avd color` also carry a `report` object, which
//! readers ignore.

use std::collections::BTreeMap;

use avd_core::coloring::{is_avd, is_proper, Color, ColoringError, TotalColoring};
use avd_core::graph::{Graph, GraphError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verified {
    pub proper: bool,
    pub avd: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeColor {
    pub u: usize,
    pub v: usize,
    pub c: Color,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColoringDocument {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub k: Color,
    pub vertex_colors: Vec<Color>,
    pub edge_colors: Vec<EdgeColor>,
    pub verified: Verified,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<serde_json::Value>,
}

#[derive(Debug, Error)]
pub enum ImportError {
    #[error("document has n = {found}, graph has {expected} vertices")]
    VertexCount { expected: usize, found: usize },
    #[error("document edge list differs from the graph")]
    EdgeSet,
    #[error("edge ({u}, {v}) has no colour")]
    MissingEdgeColor { u: usize, v: usize },
    #[error("edge ({u}, {v}) is coloured more than once")]
    DuplicateEdgeColor { u: usize, v: usize },
    #[error("colour given for ({u}, {v}), which is not an edge")]
    UnknownEdge { u: usize, v: usize },
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("malformed document")]
    Json(#[from] serde_json::Error),
}

/// A colouring read from a document; improper colourings are accepted and
/// flagged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Imported {
    pub coloring: TotalColoring,
    pub proper: bool,
}

pub fn verdict(g: &Graph, phi: &TotalColoring) -> Verified {
    let proper = is_proper(g, phi);
    Verified {
        proper,
        avd: proper && is_avd(g, phi),
    }
}

pub fn export_total(g: &Graph, phi: &TotalColoring) -> ColoringDocument {
    ColoringDocument {
        n: g.n(),
        edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
        k: phi.k(),
        vertex_colors: phi.vertex_colors().to_vec(),
        edge_colors: g
            .edges()
            .iter()
            .zip(phi.edge_colors())
            .map(|(&(u, v), &c)| EdgeColor { u, v, c })
            .collect(),
        verified: verdict(g, phi),
        report: None,
    }
}

/// Graph described by the document's `n` and `edges`.
pub fn document_graph(doc: &ColoringDocument) -> Result<Graph, ImportError> {
    Ok(Graph::from_edges(doc.n, doc.edges.iter().map(|e| (e[0], e[1])))?)
}

pub fn import_total(g: &Graph, doc: &ColoringDocument) -> Result<Imported, ImportError> {
    if doc.n != g.n() {
        return Err(ImportError::VertexCount {
            expected: g.n(),
            found: doc.n,
        });
    }
    if document_graph(doc)?.edges() != g.edges() {
        return Err(ImportError::EdgeSet);
    }
    let mut by_edge: BTreeMap<usize, Color> = BTreeMap::new();
    for ec in &doc.edge_colors {
        let id = g
            .edge_id(ec.u, ec.v)
            .ok_or(ImportError::UnknownEdge { u: ec.u, v: ec.v })?;
        if by_edge.insert(id, ec.c).is_some() {
            let (u, v) = g.edge(id);
            return Err(ImportError::DuplicateEdgeColor { u, v });
        }
    }
    let edge_colors = (0..g.num_edges())
        .map(|id| {
            by_edge.get(&id).copied().ok_or_else(|| {
                let (u, v) = g.edge(id);
                ImportError::MissingEdgeColor { u, v }
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let coloring = TotalColoring::new(g, doc.vertex_colors.clone(), edge_colors, doc.k)?;
    let proper = is_proper(g, &coloring);
    Ok(Imported { coloring, proper })
}

pub fn parse_document(text: &str) -> Result<ColoringDocument, ImportError> {
    Ok(serde_json::from_str(text)?)
}
