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


//! Std companion of `avd-core`: graph6/DIMACS formats, the JSON colouring
//! document and JSON renderings of reports. The `avd` binary is built on
//! top of these.

pub mod document;
pub mod formats;
pub mod report;

use avd_core::graph::Graph;
use formats::FormatError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Graph6,
    Dimacs,
}

/// Reads a single graph. graph6 input must hold exactly one non-blank line.
pub fn read_graph(text: &str, format: Format) -> Result<Graph, FormatError> {
    match format {
        Format::Dimacs => formats::parse_dimacs(text),
        Format::Graph6 => {
            let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
            let first = lines.next().unwrap_or("");
            let g = formats::parse_graph6(first)?;
            if lines.next().is_some() {
                return Err(FormatError::Graph6 {
                    offset: first.len(),
                    reason: "expected a single graph",
                });
            }
            Ok(g)
        }
    }
}
