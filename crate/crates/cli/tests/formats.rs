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


use avd_core::graph::Graph;
use avd_total::formats::{parse_dimacs, parse_graph6, write_dimacs, write_graph6};
use proptest::prelude::*;

fn graphs(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |bits| {
            Graph::from_edges(n, pairs.iter().zip(bits).filter(|(_, b)| *b).map(|(&e, _)| e)).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn graph6_round_trip(g in graphs(70)) {
        let s = write_graph6(&g).unwrap();
        prop_assert!(s.bytes().all(|b| (63..=126).contains(&b)));
        prop_assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn dimacs_round_trip(g in graphs(20)) {
        prop_assert_eq!(parse_dimacs(&write_dimacs(&g)).unwrap(), g);
    }
}

#[test]
fn corpus_lines_re_encode_identically() {
    let text = include_str!("data/connected_le6.g6");
    for line in text.lines() {
        let g = parse_graph6(line).unwrap();
        assert_eq!(write_graph6(&g).unwrap(), line);
    }
}
