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


//! JSON renderings of core results.

use avd_core::analysis::{C0Report, Constants, LllReport};
use avd_core::graph::Graph;
use avd_core::high_degree::{BadEvent, BadEventKind, EdgeSelection, PipelineParams};
use avd_core::pipeline::{E2Status, Phase, PipelineReport};
use serde_json::{json, Value};

pub fn phase_name(p: Phase) -> &'static str {
    match p {
        Phase::Seed => "seed",
        Phase::SelectE1 => "select_e1",
        Phase::SelectE2 => "select_e2",
        Phase::Recolor => "recolor",
        Phase::LowDegree => "low_degree",
        Phase::Repair => "repair",
        Phase::Verify => "verify",
    }
}

pub fn e2_status_name(s: E2Status) -> &'static str {
    match s {
        E2Status::Succeeded => "succeeded",
        E2Status::Failed => "failed",
        E2Status::Infeasible => "infeasible",
        E2Status::Skipped => "skipped",
    }
}

pub fn event_kind_name(k: BadEventKind) -> &'static str {
    match k {
        BadEventKind::APair => "A_pair",
        BadEventKind::BVertex => "B_vertex",
        BadEventKind::A2Overload => "A2_overload",
        BadEventKind::B2Pair => "B2_pair",
    }
}

pub fn params_json(p: &PipelineParams) -> Value {
    json!({
        "eps": p.eps,
        "m": p.m,
        "d": p.d,
        "alpha": p.alpha,
        "beta": p.beta,
        "B": p.b,
        "lambda": p.lambda,
        "M": p.big_m,
        "seed": p.seed,
        "max_rounds": p.max_rounds,
    })
}

pub fn constants_json(c: &Constants) -> Value {
    json!({ "lambda": c.lambda, "M": c.big_m, "p": c.p })
}

pub fn edges_json(g: &Graph, sel: &EdgeSelection) -> Value {
    Value::Array(
        sel.edges()
            .iter()
            .map(|&e| {
                let (u, v) = g.edge(e);
                json!([u, v])
            })
            .collect(),
    )
}

pub fn events_json(events: &[BadEvent]) -> Value {
    Value::Array(
        events
            .iter()
            .map(|e| json!({ "kind": event_kind_name(e.kind), "witness": e.witness }))
            .collect(),
    )
}

/// Pipeline report; phase timings only when `timings` is set, so the
/// default output is reproducible byte for byte.
pub fn report_json(r: &PipelineReport, timings: bool) -> Value {
    let mut v = json!({
        "input_k": r.input_k,
        "short_circuit": r.short_circuit,
        "constants": r.constants.as_ref().map(constants_json),
        "e1_rounds": r.e1_rounds,
        "e1_success": r.e1_success,
        "e1_size": r.e1_size,
        "l_size": r.l_size,
        "e2_rounds": r.e2_rounds,
        "e2_status": e2_status_name(r.e2_status),
        "e2_size": r.e2_size,
        "fresh_palette_size": r.fresh_palette_size,
        "low_degree_steps": r.low_degree_steps,
        "fallback_repairs": r.fallback_repairs,
        "final_k": r.final_k,
        "clean": r.clean(),
        "verified": { "proper": r.verified.proper, "avd": r.verified.avd },
    });
    if timings {
        v["phase_timings_ns"] = Value::Object(
            r.phase_timings
                .iter()
                .map(|&(p, t)| (phase_name(p).to_string(), json!(t)))
                .collect(),
        );
    }
    v
}

pub fn c0_json(c: &C0Report) -> Value {
    json!({
        "ln_c0": c.ln_c0,
        "c0": c.c0(),
        "ln_terms": c.ln_terms,
        "deficits": c.deficits,
        "dominant": c.dominant,
        "case3_squared_exponent": c.case3_squared_exponent,
    })
}

pub fn lll_json(r: &LllReport) -> Value {
    json!({
        "ln_delta": r.ln_delta,
        "margin_pair": r.margin_pair,
        "margin_vertex": r.margin_vertex,
        "pair_holds": r.pair_holds(),
        "vertex_holds": r.vertex_holds(),
        "holds": r.holds(),
        "c0": c0_json(&r.c0),
    })
}
