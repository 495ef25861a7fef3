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


use avd_core::coloring::{color_set, is_avd, is_proper, properness_violations};
use avd_core::edge_color::vizing_color;
use avd_core::graph::{degree_split, Graph};
use avd_core::high_degree::{build_e1, sample_x, EdgeSelection, PipelineParams};
use avd_core::low_degree::distinguish_low_degree_traced;
use avd_core::pipeline::{recolor_union, repair_fallback, run_pipeline};
use avd_core::rng::{substream, Stream};
use avd_core::seed::greedy_total;
use proptest::prelude::*;

fn graphs(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut it = bits.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap() {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn adjacency_matches_edge_list(g in graphs(12)) {
        let sum: usize = g.vertices().map(|v| g.degree(v)).sum();
        prop_assert_eq!(sum, 2 * g.num_edges());
        for (id, &(u, v)) in g.edges().iter().enumerate() {
            prop_assert!(u < v);
            prop_assert_eq!(g.edge_id(v, u), Some(id));
        }
        prop_assert!(g.edges().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn split_is_a_partition(g in graphs(12)) {
        let s = degree_split(&g);
        prop_assert_eq!(s.low.len() + s.high.len(), g.n());
        for v in g.vertices() {
            prop_assert_eq!(s.is_low(v), 2 * g.degree(v) <= g.max_degree());
        }
    }

    #[test]
    fn greedy_is_proper_and_small(g in graphs(12)) {
        let phi = greedy_total(&g, None).unwrap();
        prop_assert!(properness_violations(&g, &phi).unwrap().is_empty());
        prop_assert!(phi.k() as usize <= 2 * g.max_degree() + 1);
        for v in g.vertices() {
            prop_assert_eq!(color_set(&g, &phi, v).unwrap().colors.len(), g.degree(v) + 1);
        }
    }

    #[test]
    fn vizing_uses_at_most_delta_plus_one(g in graphs(12)) {
        let ec = vizing_color(&g);
        prop_assert!(ec.conflicts(&g).is_empty());
        prop_assert!(ec.num_colors_used() <= g.max_degree() + 1);
        prop_assert!(ec.colors.iter().all(|&c| c >= 1));
    }

    #[test]
    fn low_degree_phase_distinguishes_low_vertices(g in graphs(12)) {
        let phi = greedy_total(&g, None).unwrap();
        let out = distinguish_low_degree_traced(&g, &phi).unwrap();
        let psi = &out.coloring;
        prop_assert!(is_proper(&g, psi));
        prop_assert_eq!(psi.k(), phi.k());
        prop_assert_eq!(psi.edge_colors(), phi.edge_colors());
        let split = degree_split(&g);
        let mut seen = std::collections::BTreeSet::new();
        for &(v, _) in &out.steps {
            prop_assert!(split.is_low(v));
            prop_assert!(seen.insert(v), "vertex {} recoloured twice", v);
        }
        for &v in &split.high {
            prop_assert_eq!(psi.vertex_color(v), phi.vertex_color(v));
        }
        for &u in &split.low {
            let cu = color_set(&g, psi, u).unwrap();
            for w in g.neighbors(u) {
                prop_assert_ne!(&cu.colors, &color_set(&g, psi, w).unwrap().colors);
            }
        }
    }

    #[test]
    fn union_recolour_keeps_properness(g in graphs(12), seed in any::<u64>()) {
        let phi = greedy_total(&g, None).unwrap();
        let mut rng = substream(seed, Stream::SampleX);
        let x = sample_x(&g, 0.5, &mut rng);
        let e1 = build_e1(&g, &x, 3);
        prop_assert!(e1.max_count() <= 3);
        let out = recolor_union(&g, &phi, &e1, &EdgeSelection::empty(&g)).unwrap();
        prop_assert!(is_proper(&g, &out));
        let used: std::collections::BTreeSet<_> = e1.edges().iter().map(|&e| out.edge_color(e)).collect();
        prop_assert_eq!((out.k() - phi.k()) as usize, used.len());
        prop_assert!(used.iter().all(|&c| c > phi.k()));
        for e in 0..g.num_edges() {
            if !e1.contains(e) {
                prop_assert_eq!(out.edge_color(e), phi.edge_color(e));
            }
        }
    }

    #[test]
    fn repair_yields_avd(g in graphs(10)) {
        let phi = greedy_total(&g, None).unwrap();
        let r = repair_fallback(&g, &phi).unwrap();
        prop_assert!(is_avd(&g, &r.coloring));
        prop_assert_eq!(r.coloring.k(), phi.k() + r.recolored.len() as u32);
        prop_assert!(r.recolored.len() <= g.n());
    }

    #[test]
    fn pipeline_output_verifies(g in graphs(12), seed in any::<u64>()) {
        let params = PipelineParams { seed, ..PipelineParams::default() };
        let (out, report) = run_pipeline(&g, None, &params).unwrap();
        prop_assert!(is_proper(&g, &out) && is_avd(&g, &out));
        prop_assert!(report.verified.proper && report.verified.avd);
        prop_assert_eq!(out.k(), report.final_k);
        prop_assert_eq!(
            report.final_k,
            report.input_k + report.fresh_palette_size + report.fallback_repairs
        );
        prop_assert!(out.max_color() <= out.k());
    }
}
