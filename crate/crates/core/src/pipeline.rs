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

//! End-to-end construction of an AVD proper total colouring.
//!
//! Phase order: seed, select `E1` and `E2`, recolour `E1 ∪ E2` with a fresh
//! palette, distinguish the low-degree vertices, then repair whatever the
//! randomized phase left undistinguished. The last step makes the output
//! AVD unconditionally; the report says how many colours each phase cost.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::analysis::Constants;
use crate::coloring::{is_proper, undistinguished_edges, Color, ColoringError, TotalColoring};
use crate::edge_color::vizing_color;
use crate::graph::{Graph, Vertex};
use crate::high_degree::{
    find_e1, find_e2, low_e1_vertices, EdgeSelection, HighDegreeError, PipelineParams,
};
use crate::low_degree::{distinguish_low_degree_traced, LowDegreeError};
use crate::seed::greedy_total;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("supplied colouring is not a proper total colouring")]
    Improper,
    #[error(transparent)]
    HighDegree(#[from] HighDegreeError),
    #[error(transparent)]
    LowDegree(#[from] LowDegreeError),
    #[error(transparent)]
    Repair(#[from] RepairError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepairError {
    #[error("input is not a proper total colouring")]
    Improper,
    #[error("repair did not finish within {0} rounds")]
    RoundLimit(usize),
}

/// Gives the edges of `e1 ∪ e2` a proper edge colouring from colours
/// `k+1..`, where `k` is `phi`'s budget; everything else keeps its colour.
/// The budget grows by the number of fresh colours used, at most
/// `Δ(G[E1 ∪ E2]) + 1`.
pub fn recolor_union(
    g: &Graph,
    phi: &TotalColoring,
    e1: &EdgeSelection,
    e2: &EdgeSelection,
) -> Result<TotalColoring, ColoringError> {
    phi.check_shape(g)?;
    let union = e1.union(g, e2);
    let mut out = phi.clone();
    if union.is_empty() {
        return Ok(out);
    }
    let sub = g.edge_subgraph(union.edges());
    let ec = vizing_color(&sub);

    // compact the used colours to 1..=q, keeping their order
    let mut used: Vec<Color> = ec.colors.clone();
    used.sort_unstable();
    used.dedup();
    let mut rank = vec![0; ec.palette_bound as usize + 1];
    for (i, &c) in used.iter().enumerate() {
        rank[c as usize] = i as Color + 1;
    }
    let base = phi.k();
    out.grow_budget(used.len() as Color);
    for (sub_id, &(u, v)) in sub.edges().iter().enumerate() {
        let id = g.edge_id(u, v).expect("subgraph edge");
        out.set_edge_color(id, base + rank[ec.colors[sub_id] as usize]);
    }
    Ok(out)
}

/// Result of [`repair_fallback`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Repair {
    pub coloring: TotalColoring,
    /// Vertices that received a brand-new colour, in order.
    pub recolored: Vec<Vertex>,
}

/// While some edge has endpoints with equal colour sets, gives one endpoint
/// a brand-new colour (the vertex in most such edges, smallest id on ties).
/// A unique vertex colour appears in no other vertex's set, so each round
/// removes every conflict at that vertex and creates none.
pub fn repair_fallback(g: &Graph, phi: &TotalColoring) -> Result<Repair, RepairError> {
    if phi.check_shape(g).is_err() || !is_proper(g, phi) {
        return Err(RepairError::Improper);
    }
    let mut out = phi.clone();
    let mut recolored = Vec::new();
    let mut hits = vec![0usize; g.n()];
    loop {
        let bad = undistinguished_edges(g, &out);
        if bad.is_empty() {
            break;
        }
        if recolored.len() >= g.n() {
            return Err(RepairError::RoundLimit(recolored.len()));
        }
        hits.iter_mut().for_each(|h| *h = 0);
        for &(u, v) in &bad {
            hits[u] += 1;
            hits[v] += 1;
        }
        let mut pick = 0;
        for v in g.vertices() {
            if hits[v] > hits[pick] {
                pick = v;
            }
        }
        out.grow_budget(1);
        let fresh = out.k();
        out.set_vertex_color(pick, fresh);
        recolored.push(pick);
    }
    Ok(Repair {
        coloring: out,
        recolored,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum E2Status {
    Succeeded,
    Failed,
    /// Some `L` vertex had fewer than `B` selectable edges.
    Infeasible,
    /// `E1` failed or was not needed.
    Skipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Seed,
    SelectE1,
    SelectE2,
    Recolor,
    LowDegree,
    Repair,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdict {
    pub proper: bool,
    pub avd: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineReport {
    pub input_k: Color,
    /// The input was already AVD and was returned as is.
    pub short_circuit: bool,
    pub constants: Option<Constants>,
    pub e1_rounds: u32,
    pub e1_success: bool,
    pub e1_size: usize,
    pub l_size: usize,
    pub e2_rounds: u32,
    pub e2_status: E2Status,
    pub e2_size: usize,
    pub fresh_palette_size: Color,
    pub low_degree_steps: usize,
    pub fallback_repairs: Color,
    pub final_k: Color,
    pub verified: Verdict,
    /// Clock readings per phase; all zero without a clock.
    pub phase_timings: Vec<(Phase, u64)>,
}

impl PipelineReport {
    /// Both randomized phases certified their selections and no repair
    /// was needed.
    pub fn clean(&self) -> bool {
        self.e1_success
            && matches!(self.e2_status, E2Status::Succeeded)
            && self.fallback_repairs == 0
    }
}

/// Runs the pipeline without timing.
pub fn run_pipeline(
    g: &Graph,
    seed_coloring: Option<&TotalColoring>,
    params: &PipelineParams,
) -> Result<(TotalColoring, PipelineReport), PipelineError> {
    run_pipeline_timed(g, seed_coloring, params, &|| 0)
}

/// Runs the pipeline; `clock` returns a monotonic reading (any unit) and
/// each phase records the difference.
pub fn run_pipeline_timed(
    g: &Graph,
    seed_coloring: Option<&TotalColoring>,
    params: &PipelineParams,
    clock: &dyn Fn() -> u64,
) -> Result<(TotalColoring, PipelineReport), PipelineError> {
    params.validate()?;
    let mut timings = Vec::new();
    let mut mark = clock();
    let mut lap = |phase: Phase, timings: &mut Vec<(Phase, u64)>| {
        let now = clock();
        timings.push((phase, now.saturating_sub(mark)));
        mark = now;
    };

    let phi = match seed_coloring {
        Some(c) => {
            c.check_shape(g)?;
            if !is_proper(g, c) {
                return Err(PipelineError::Improper);
            }
            c.clone()
        }
        None => greedy_total(g, None).expect("default order is complete"),
    };
    lap(Phase::Seed, &mut timings);

    let mut report = PipelineReport {
        input_k: phi.k(),
        short_circuit: false,
        constants: None,
        e1_rounds: 0,
        e1_success: true,
        e1_size: 0,
        l_size: 0,
        e2_rounds: 0,
        e2_status: E2Status::Skipped,
        e2_size: 0,
        fresh_palette_size: 0,
        low_degree_steps: 0,
        fallback_repairs: 0,
        final_k: phi.k(),
        verified: Verdict {
            proper: true,
            avd: true,
        },
        phase_timings: Vec::new(),
    };

    if undistinguished_edges(g, &phi).is_empty() {
        report.short_circuit = true;
        lap(Phase::Verify, &mut timings);
        report.phase_timings = timings;
        return Ok((phi, report));
    }
    if g.max_degree() > 0 {
        report.constants = Some(params.constants(g.max_degree())?);
    }

    let e1 = find_e1(g, &phi, params)?;
    report.e1_rounds = e1.rounds;
    report.e1_success = e1.success;
    report.e1_size = e1.selection.len();
    lap(Phase::SelectE1, &mut timings);

    let mut e2 = EdgeSelection::empty(g);
    if e1.success {
        let l = low_e1_vertices(g, &e1.selection, params.m);
        report.l_size = l.len();
        match find_e2(g, &phi, &e1.selection, &l, params) {
            Ok(out) => {
                report.e2_rounds = out.rounds;
                report.e2_status = if out.success {
                    E2Status::Succeeded
                } else {
                    E2Status::Failed
                };
                e2 = out.selection;
            }
            Err(HighDegreeError::Infeasible { .. }) | Err(HighDegreeError::BelowAlpha(_)) => {
                report.e2_status = E2Status::Infeasible;
            }
            Err(e) => return Err(e.into()),
        }
    }
    report.e2_size = e2.len();
    lap(Phase::SelectE2, &mut timings);

    let recolored = recolor_union(g, &phi, &e1.selection, &e2)?;
    report.fresh_palette_size = recolored.k() - phi.k();
    lap(Phase::Recolor, &mut timings);

    let low = distinguish_low_degree_traced(g, &recolored)?;
    report.low_degree_steps = low.steps.len();
    lap(Phase::LowDegree, &mut timings);

    let repaired = repair_fallback(g, &low.coloring)?;
    report.fallback_repairs = repaired.recolored.len() as Color;
    lap(Phase::Repair, &mut timings);

    let out = repaired.coloring;
    let proper = is_proper(g, &out);
    report.verified = Verdict {
        proper,
        avd: proper && undistinguished_edges(g, &out).is_empty(),
    };
    report.final_k = out.k();
    lap(Phase::Verify, &mut timings);
    report.phase_timings = timings;
    Ok((out, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{avd_violations, properness_violations};
    use crate::generate::{generate, Family};
    use crate::graph::degree_split;

    #[test]
    fn recolor_empty_is_identity() {
        let g = generate(&Family::Complete { n: 4 }).unwrap();
        let phi = greedy_total(&g, None).unwrap();
        let e = EdgeSelection::empty(&g);
        assert_eq!(recolor_union(&g, &phi, &e, &e).unwrap(), phi);
    }

    #[test]
    fn recolor_single_edge() {
        let g = generate(&Family::Complete { n: 4 }).unwrap();
        let phi = greedy_total(&g, None).unwrap();
        let e1 = EdgeSelection::from_ids(&g, [2]);
        let out = recolor_union(&g, &phi, &e1, &EdgeSelection::empty(&g)).unwrap();
        assert_eq!(out.edge_color(2), phi.k() + 1);
        assert_eq!(out.k(), phi.k() + 1);
        for e in 0..g.num_edges() {
            if e != 2 {
                assert_eq!(out.edge_color(e), phi.edge_color(e));
            }
        }
        assert!(is_proper(&g, &out));
    }

    #[test]
    fn recolor_growth_within_vizing_bound() {
        let g = generate(&Family::RandomGnp { n: 40, p: 0.4, seed: 2 }).unwrap();
        let phi = greedy_total(&g, None).unwrap();
        let e1 = EdgeSelection::from_ids(&g, (0..g.num_edges()).step_by(3));
        let e2 = EdgeSelection::from_ids(&g, (1..g.num_edges()).step_by(7));
        let out = recolor_union(&g, &phi, &e1, &e2).unwrap();
        let union = e1.union(&g, &e2);
        assert!(is_proper(&g, &out));
        assert!((out.k() - phi.k()) as usize <= union.max_count() + 1);
    }

    #[test]
    fn repair_fixed_points() {
        let g = generate(&Family::Complete { n: 2 }).unwrap();
        let phi = TotalColoring::new(&g, vec![1, 2], vec![3], 3).unwrap();
        let r = repair_fallback(&g, &phi).unwrap();
        assert_eq!(r.coloring, phi);
        assert!(r.recolored.is_empty());

        let bad = TotalColoring::new(&g, vec![1, 1], vec![3], 3).unwrap();
        assert_eq!(repair_fallback(&g, &bad), Err(RepairError::Improper));
    }

    #[test]
    fn repair_resolves_every_conflict() {
        // C_6 walked as v0 e01 v1 e12 ... coloured 1,2,3,1,2,3,...: every
        // colour set is {1, 2, 3}
        let g = generate(&Family::Cycle { n: 6 }).unwrap();
        // edge order: 01 05 12 23 34 45
        let phi = TotalColoring::new(&g, vec![1, 3, 2, 1, 3, 2], vec![2, 3, 1, 3, 2, 1], 3).unwrap();
        assert_eq!(avd_violations(&g, &phi).unwrap().len(), 6);
        let r = repair_fallback(&g, &phi).unwrap();
        assert!(avd_violations(&g, &r.coloring).unwrap().is_empty());
        assert_eq!(r.recolored, vec![0, 2, 4]);
        assert_eq!(r.coloring.k(), phi.k() + 3);
    }

    #[test]
    fn already_avd_short_circuits() {
        let g = generate(&Family::Path { n: 3 }).unwrap();
        let phi = greedy_total(&g, None).unwrap();
        let (out, rep) = run_pipeline(&g, Some(&phi), &PipelineParams::default()).unwrap();
        assert_eq!(out, phi);
        assert!(rep.short_circuit);
        assert_eq!(rep.final_k, rep.input_k);
    }

    #[test]
    fn improper_seed_rejected() {
        let g = generate(&Family::Path { n: 3 }).unwrap();
        let bad = TotalColoring::new(&g, vec![1, 1, 2], vec![2, 3], 3).unwrap();
        assert_eq!(
            run_pipeline(&g, Some(&bad), &PipelineParams::default()),
            Err(PipelineError::Improper)
        );
    }

    #[test]
    fn star_needs_only_the_low_phase() {
        let g = generate(&Family::Star { leaves: 9 }).unwrap();
        let split = degree_split(&g);
        assert_eq!(split.high, vec![0]);
        let (out, rep) = run_pipeline(&g, None, &PipelineParams::default()).unwrap();
        assert!(avd_violations(&g, &out).unwrap().is_empty());
        assert_eq!(rep.fallback_repairs, 0);
    }

    #[test]
    fn random_graph_run_is_verified_and_accounted() {
        let g = generate(&Family::RandomGnp { n: 60, p: 0.5, seed: 1 }).unwrap();
        let params = PipelineParams { seed: 1, max_rounds: 500, ..Default::default() };
        let (out, rep) = run_pipeline(&g, None, &params).unwrap();
        assert!(properness_violations(&g, &out).unwrap().is_empty());
        assert!(avd_violations(&g, &out).unwrap().is_empty());
        assert!(rep.verified.proper && rep.verified.avd);
        assert_eq!(rep.final_k - rep.input_k, rep.fresh_palette_size + rep.fallback_repairs);
        assert_eq!(rep.phase_timings.len(), 7);
        let again = run_pipeline(&g, None, &params).unwrap();
        assert_eq!(again.0, out);
        assert_eq!(again.1, rep);
    }
}
