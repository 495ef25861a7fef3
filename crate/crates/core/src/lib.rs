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

//! Adjacent-vertex-distinguishing (AVD) total colouring.
//!
//! The crate starts from any proper total colouring and recolours it into
//! one where adjacent vertices always see different colour sets, spending
//! only a bounded number of extra colours:
//!
//! 1. [`high_degree`] picks random edge sets `E1` and `E2` whose removal
//!    separates the colour sets of adjacent high-degree vertices, resampling
//!    until the checkers accept;
//! 2. [`pipeline::recolor_union`] gives `E1 ∪ E2` a fresh palette through
//!    [`edge_color::vizing_color`];
//! 3. [`low_degree::distinguish_low_degree`] fixes the low-degree vertices by
//!    recolouring vertices only;
//! 4. [`pipeline::repair_fallback`] spends one fresh colour per leftover
//!    conflict, so the output is always verified AVD.
//!
//! [`exact`] holds backtracking oracles for χ', χ'' and χ_at on small graphs
//! and [`analysis`] evaluates the tail bounds and local-lemma conditions
//! behind the randomized phase.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
// NaN must fail parameter checks
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod analysis;
pub mod coloring;
pub mod edge_color;
pub mod exact;
pub mod generate;
pub mod graph;
pub mod high_degree;
pub mod low_degree;
pub mod pipeline;
pub mod rng;
pub mod seed;

pub use coloring::{
    avd_violations, color_set, palette_size, properness_violations, Color, ColorSet,
    ColoringError, Element, TotalColoring, Violation, ViolationKind,
};
pub use graph::{degree_split, DegreeSplit, EdgeId, Graph, GraphError, Vertex};
