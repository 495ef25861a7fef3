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

//! Graph families. Every family labels its vertices `0..n`; the random ones
//! are a pure function of their parameters and seed.

use alloc::vec::Vec;

use rand::Rng;
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::rng::{substream, Stream};

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Cycle { n: usize },
    Path { n: usize },
    Complete { n: usize },
    CompleteBipartite { a: usize, b: usize },
    /// `K_{1,leaves}`; vertex 0 is the centre.
    Star { leaves: usize },
    RandomGnp { n: usize, p: f64, seed: u64 },
    RandomRegular { n: usize, d: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("invalid parameters for {family}: {reason}")]
    InvalidParameters {
        family: &'static str,
        reason: &'static str,
    },
}

fn invalid(family: &'static str, reason: &'static str) -> GenerateError {
    GenerateError::InvalidParameters { family, reason }
}

pub fn generate(family: &Family) -> Result<Graph, GenerateError> {
    let edges: Vec<(Vertex, Vertex)> = match *family {
        Family::Cycle { n } => {
            if n < 3 {
                return Err(invalid("cycle", "length must be at least 3"));
            }
            (0..n).map(|i| (i, (i + 1) % n)).collect()
        }
        Family::Path { n } => (1..n).map(|i| (i - 1, i)).collect(),
        Family::Complete { n } => complete_edges(n),
        Family::CompleteBipartite { a, b } => (0..a)
            .flat_map(|i| (0..b).map(move |j| (i, a + j)))
            .collect(),
        Family::Star { leaves } => (1..=leaves).map(|i| (0, i)).collect(),
        Family::RandomGnp { n, p, seed } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(invalid("random_gnp", "edge probability must lie in [0, 1]"));
            }
            let mut rng = substream(seed, Stream::Generate);
            complete_edges(n)
                .into_iter()
                .filter(|_| rng.gen_bool(p))
                .collect()
        }
        Family::RandomRegular { n, d, seed } => random_regular_edges(n, d, seed)?,
    };
    let n = match *family {
        Family::Cycle { n }
        | Family::Path { n }
        | Family::Complete { n }
        | Family::RandomGnp { n, .. }
        | Family::RandomRegular { n, .. } => n,
        Family::CompleteBipartite { a, b } => a + b,
        Family::Star { leaves } => leaves + 1,
    };
    Ok(Graph::from_edges(n, edges).expect("generated edges are simple"))
}

fn complete_edges(n: usize) -> Vec<(Vertex, Vertex)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

/// Circulant `d`-regular graph randomized by degree-preserving double-edge
/// swaps (10 attempted swaps per edge). Approximately uniform.
fn random_regular_edges(
    n: usize,
    d: usize,
    seed: u64,
) -> Result<Vec<(Vertex, Vertex)>, GenerateError> {
    if d >= n.max(1) && !(n == 0 && d == 0) {
        return Err(invalid("random_regular", "degree must be smaller than n"));
    }
    if (n * d) % 2 == 1 {
        return Err(invalid("random_regular", "n·d must be even"));
    }
    let mut edges = Vec::with_capacity(n * d / 2);
    for i in 0..n {
        for off in 1..=d / 2 {
            edges.push(norm(i, (i + off) % n));
        }
        if d % 2 == 1 && i < n / 2 {
            edges.push(norm(i, i + n / 2));
        }
    }
    if edges.len() < 2 {
        return Ok(edges);
    }

    let mut present: alloc::collections::BTreeSet<(Vertex, Vertex)> =
        edges.iter().copied().collect();
    let mut rng = substream(seed, Stream::Generate);
    for _ in 0..10 * edges.len() {
        let i = rng.gen_range(0..edges.len());
        let j = rng.gen_range(0..edges.len());
        if i == j {
            continue;
        }
        let (a, b) = edges[i];
        let (c, dd) = edges[j];
        // a-b, c-d  ->  a-d, c-b  or  a-c, b-d
        let (x, y) = if rng.gen_bool(0.5) {
            (norm(a, dd), norm(c, b))
        } else {
            (norm(a, c), norm(b, dd))
        };
        if x.0 == x.1 || y.0 == y.1 || x == y || present.contains(&x) || present.contains(&y) {
            continue;
        }
        present.remove(&edges[i]);
        present.remove(&edges[j]);
        present.insert(x);
        present.insert(y);
        edges[i] = x;
        edges[j] = y;
    }
    Ok(edges)
}

fn norm(a: Vertex, b: Vertex) -> (Vertex, Vertex) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}
