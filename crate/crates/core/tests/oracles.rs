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


use avd_core::analysis::{binom_lower_tail_bound, binom_upper_tail_bound};
use avd_core::coloring::{avd_violations, is_avd, is_proper, TotalColoring, ViolationKind};
use avd_core::exact::{chi_at_exact, chi_prime_exact, chi_total_exact, for_each_total_coloring};
use avd_core::generate::{generate, Family};
use avd_core::graph::Graph;
use avd_core::high_degree::{sample_x, PipelineParams};
use avd_core::pipeline::{repair_fallback, run_pipeline};
use avd_core::rng::{substream, Stream};
use avd_core::seed::greedy_total;

fn binom_pmf(n: u64, p: f64) -> Vec<f64> {
    // log-space with lgamma-free running products
    let mut ln_choose = vec![0.0f64; n as usize + 1];
    for k in 1..=n as usize {
        ln_choose[k] = ln_choose[k - 1] + ((n as usize - k + 1) as f64).ln() - (k as f64).ln();
    }
    (0..=n as usize)
        .map(|k| (ln_choose[k] + k as f64 * p.ln() + (n as usize - k) as f64 * (1.0 - p).ln()).exp())
        .collect()
}

#[test]
fn tail_bounds_dominate_exact_tails() {
    let slack = 1e-12;
    let mut checked = 0;
    for n in 2..=30u64 {
        for i in 1..=9 {
            let p = i as f64 / 10.0;
            let pmf = binom_pmf(n, p);
            let np = n as f64 * p;
            for m in 1..n {
                let mf = m as f64;
                if mf > np {
                    let exact: f64 = pmf[m as usize..].iter().sum();
                    let bound = binom_upper_tail_bound(n, p, mf).unwrap().value();
                    assert!(exact <= bound + slack, "upper n={n} p={p} m={m}: {exact} > {bound}");
                    checked += 1;
                }
                if mf < np {
                    let exact: f64 = pmf[..m as usize].iter().sum();
                    let bound = binom_lower_tail_bound(n, p, mf).unwrap().value();
                    assert!(exact <= bound + slack, "lower n={n} p={p} m={m}: {exact} > {bound}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn tail_bounds_reject_bad_domains() {
    assert!(binom_upper_tail_bound(10, 0.5, 5.0).is_err());
    assert!(binom_upper_tail_bound(10, 0.5, 10.0).is_err());
    assert!(binom_lower_tail_bound(10, 0.5, 0.0).is_err());
    assert!(binom_lower_tail_bound(10, 1.0, 3.0).is_err());
}

#[test]
fn sampled_degrees_respect_upper_tail() {
    let delta = 50;
    let g = generate(&Family::RandomRegular { n: 100, d: delta, seed: 7 }).unwrap();
    let (p, big_m) = (0.2, 15u32);
    let bound = binom_upper_tail_bound(delta as u64, p, big_m as f64).unwrap().value();
    let trials = 200;
    let (mut hits, mut hits_default) = (0usize, 0usize);
    for t in 0..trials {
        let mut rng = substream(t, Stream::SampleX);
        let x = sample_x(&g, p, &mut rng);
        for v in g.vertices() {
            hits += (x.count(v) >= big_m as usize) as usize;
            hits_default += (x.count(v) >= 268) as usize;
        }
    }
    let freq = hits as f64 / (trials as usize * g.n()) as f64;
    assert!(freq <= bound, "frequency {freq} above bound {bound}");
    assert!(freq > 0.0);
    assert_eq!(hits_default, 0);
}

fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u32..1 << pairs.len()).map(move |mask| {
        Graph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e))
            .unwrap()
    })
}

fn chromatic_number(g: &Graph) -> u32 {
    if g.n() == 0 {
        return 0;
    }
    (1..=g.n() as u32)
        .find(|&k| {
            let total = (k as u64).pow(g.n() as u32);
            (0..total).any(|mut code| {
                let colors: Vec<u64> = (0..g.n())
                    .map(|_| {
                        let c = code % k as u64;
                        code /= k as u64;
                        c
                    })
                    .collect();
                g.edges().iter().all(|&(u, v)| colors[u] != colors[v])
            })
        })
        .unwrap()
}

#[test]
fn exact_values_are_consistent_on_small_graphs() {
    for n in 1..=5 {
        for g in all_graphs(n) {
            let delta = g.max_degree() as u32;
            let cp = chi_prime_exact(&g).unwrap();
            let ct = chi_total_exact(&g).unwrap();
            let ca = chi_at_exact(&g).unwrap();
            let chi = chromatic_number(&g);
            assert!(cp == delta || cp == delta + 1);
            assert!(ct > delta && ct <= delta + 2);
            assert!(ca >= ct && ca <= delta + 3);
            assert!(ca <= chi + cp, "{g:?}");
            let seed = greedy_total(&g, None).unwrap();
            assert!(seed.k() >= ct);
            let (out, _) = run_pipeline(&g, None, &PipelineParams::default()).unwrap();
            assert!(out.k() >= ca);
        }
    }
}

#[test]
fn four_cycle_with_one_undistinguished_pair() {
    let g = generate(&Family::Cycle { n: 4 }).unwrap();
    let mut witness: Option<TotalColoring> = None;
    for_each_total_coloring(&g, 5, true, |phi| {
        let v = avd_violations(&g, phi).unwrap();
        if v.len() == 1 {
            witness = Some(phi.clone());
            false
        } else {
            true
        }
    })
    .unwrap();
    let phi = witness.expect("C_4 has a 5-total-colouring with exactly one equal pair");
    let v = avd_violations(&g, &phi).unwrap();
    assert_eq!(v[0].kind, ViolationKind::UndistinguishedPair);

    let r = repair_fallback(&g, &phi).unwrap();
    assert_eq!(r.recolored.len(), 1);
    assert!(is_proper(&g, &r.coloring) && is_avd(&g, &r.coloring));
    assert_eq!(r.coloring.k(), 6);
}

/// Vertex colourings by enumeration, edges by plain backtracking; sets are
/// compared only once everything is coloured.
fn brute_chi_at(g: &Graph) -> u32 {
    fn edges(g: &Graph, vc: &[u32], ec: &mut Vec<u32>, k: u32) -> bool {
        let i = ec.len();
        if i == g.num_edges() {
            let set = |v: usize| {
                let mut s: Vec<u32> = g.incident(v).iter().map(|&(_, e)| ec[e]).collect();
                s.push(vc[v]);
                s.sort();
                s
            };
            return g.edges().iter().all(|&(u, v)| set(u) != set(v));
        }
        let (u, v) = g.edge(i);
        for c in 1..=k {
            let clash = (0..i).any(|j| {
                let (a, b) = g.edge(j);
                ec[j] == c && (a == u || a == v || b == u || b == v)
            });
            if c != vc[u] && c != vc[v] && !clash {
                ec.push(c);
                if edges(g, vc, ec, k) {
                    return true;
                }
                ec.pop();
            }
        }
        false
    }
    let n = g.n() as u32;
    (1..)
        .find(|&k: &u32| {
            (0..k.pow(n)).any(|mut code| {
                let vc: Vec<u32> = (0..n)
                    .map(|_| {
                        let c = code % k + 1;
                        code /= k;
                        c
                    })
                    .collect();
                g.edges().iter().all(|&(u, v)| vc[u] != vc[v]) && edges(g, &vc, &mut Vec::new(), k)
            })
        })
        .unwrap()
}

#[test]
fn chi_at_agrees_with_brute_force() {
    let mut graphs: Vec<Graph> = (1..=4).flat_map(all_graphs).collect();
    for f in [
        Family::Cycle { n: 5 },
        Family::Cycle { n: 6 },
        Family::CompleteBipartite { a: 2, b: 3 },
        Family::Star { leaves: 4 },
    ] {
        graphs.push(generate(&f).unwrap());
    }
    for g in &graphs {
        assert_eq!(chi_at_exact(g).unwrap(), brute_chi_at(g), "{g:?}");
    }
}
