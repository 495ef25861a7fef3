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

//! Greedy seed colourings.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::coloring::{Color, Element, TotalColoring};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeedError {
    #[error("element order must list every vertex and edge exactly once; bad entry {0:?}")]
    BadOrder(Element),
    #[error("element order has {found} entries, graph has {expected} elements")]
    OrderLength { expected: usize, found: usize },
}

/// Vertices ascending, then edges lexicographically.
pub fn default_order(g: &Graph) -> Vec<Element> {
    g.vertices()
        .map(Element::Vertex)
        .chain(g.edges().iter().map(|&(u, v)| Element::Edge(u, v)))
        .collect()
}

/// Colours elements one at a time with the smallest colour not used by an
/// already coloured adjacent or incident element. Each element has at most
/// `2Δ` such neighbours, so the budget never exceeds `2Δ + 1`.
pub fn greedy_total(g: &Graph, order: Option<&[Element]>) -> Result<TotalColoring, SeedError> {
    let default;
    let order = match order {
        Some(o) => o,
        None => {
            default = default_order(g);
            &default
        }
    };
    let expected = g.n() + g.num_edges();
    if order.len() != expected {
        return Err(SeedError::OrderLength {
            expected,
            found: order.len(),
        });
    }

    let mut vc: Vec<Color> = vec![0; g.n()];
    let mut ec: Vec<Color> = vec![0; g.num_edges()];
    let mut taken: Vec<Color> = Vec::new();
    for &el in order {
        taken.clear();
        match el {
            Element::Vertex(v) => {
                if v >= g.n() || vc[v] != 0 {
                    return Err(SeedError::BadOrder(el));
                }
                for &(w, e) in g.incident(v) {
                    taken.push(vc[w]);
                    taken.push(ec[e]);
                }
                vc[v] = smallest_missing(&mut taken);
            }
            Element::Edge(a, b) => {
                let id = match g.edge_id(a, b) {
                    Some(id) if ec[id] == 0 => id,
                    _ => return Err(SeedError::BadOrder(el)),
                };
                taken.push(vc[a]);
                taken.push(vc[b]);
                for x in [a, b] {
                    taken.extend(g.incident(x).iter().map(|&(_, f)| ec[f]));
                }
                ec[id] = smallest_missing(&mut taken);
            }
        }
    }
    Ok(TotalColoring::with_tight_budget(g, vc, ec).expect("every element was coloured"))
}

fn smallest_missing(taken: &mut Vec<Color>) -> Color {
    taken.sort_unstable();
    taken.dedup();
    let mut c = 1;
    for &t in taken.iter() {
        if t == c {
            c += 1;
        } else if t > c {
            break;
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::properness_violations;
    use crate::generate::{generate, Family};

    #[test]
    fn k2_needs_three() {
        let g = generate(&Family::Complete { n: 2 }).unwrap();
        let phi = greedy_total(&g, None).unwrap();
        assert_eq!(phi.k(), 3);
        assert_eq!(phi.vertex_colors(), &[1, 2]);
        assert_eq!(phi.edge_colors(), &[3]);
    }

    #[test]
    fn star_default_order() {
        let g = generate(&Family::Star { leaves: 3 }).unwrap();
        let phi = greedy_total(&g, None).unwrap();
        assert_eq!(phi.vertex_colors(), &[1, 2, 2, 2]);
        assert_eq!(phi.edge_colors(), &[3, 4, 5]);
        assert_eq!(phi.k(), 5);
        assert_eq!(greedy_total(&g, None).unwrap(), phi);
    }

    #[test]
    fn custom_order_and_bad_orders() {
        let g = generate(&Family::Complete { n: 2 }).unwrap();
        let order = [Element::Edge(0, 1), Element::Vertex(1), Element::Vertex(0)];
        let phi = greedy_total(&g, Some(&order)).unwrap();
        assert_eq!(phi.edge_colors(), &[1]);
        assert_eq!(phi.vertex_colors(), &[3, 2]);

        let dup = [Element::Vertex(0), Element::Vertex(0), Element::Edge(0, 1)];
        assert_eq!(
            greedy_total(&g, Some(&dup)),
            Err(SeedError::BadOrder(Element::Vertex(0)))
        );
        assert!(matches!(
            greedy_total(&g, Some(&order[..2])),
            Err(SeedError::OrderLength { .. })
        ));
    }

    #[test]
    fn greedy_is_proper_within_bound() {
        for seed in 0..30 {
            let g = generate(&Family::RandomGnp { n: 30, p: 0.25, seed }).unwrap();
            let phi = greedy_total(&g, None).unwrap();
            assert!(properness_violations(&g, &phi).unwrap().is_empty());
            assert!(phi.k() as usize <= 2 * g.max_degree() + 1);
        }
    }
}
