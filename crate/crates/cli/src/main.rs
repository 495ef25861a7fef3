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


use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use avd_core::analysis::{
    binom_lower_tail_bound, binom_upper_tail_bound, compute_c0, lll_asymmetric_check_ln, LllParams,
};
use avd_core::coloring::{avd_violations, properness_violations, Element, TotalColoring, Violation, ViolationKind};
use avd_core::edge_color::vizing_color;
use avd_core::exact::{conjecture_entry, exact_stat, ConjectureReport, Stat};
use avd_core::generate::{generate, Family};
use avd_core::graph::Graph;
use avd_core::high_degree::{find_e1, find_e2, low_e1_vertices, PipelineParams};
use avd_core::low_degree::distinguish_low_degree_traced;
use avd_core::pipeline::{run_pipeline, run_pipeline_timed};
use avd_core::rng::{seed_sequence, Stream};
use avd_core::seed::greedy_total;

use avd_total::document::{document_graph, export_total, import_total, parse_document, verdict};
use avd_total::formats::{parse_graph6_lines, write_dimacs, write_graph6};
use avd_total::report::{c0_json, constants_json, edges_json, events_json, lll_json, params_json, report_json};
use avd_total::{read_graph, Format};

#[derive(Parser)]
#[command(name = "avd", version, about = "Adjacent-vertex-distinguishing total colouring")]
struct Cli {
    /// Machine-readable JSON on standard out.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every randomized phase.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Graph6,
    Dimacs,
}

#[derive(Args)]
struct Input {
    /// Input file; standard in when absent.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "graph6")]
    format: FormatArg,
}

#[derive(Args, Default)]
struct Params {
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long = "B")]
    b: Option<u32>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long = "M")]
    big_m: Option<u32>,
    #[arg(long)]
    max_rounds: Option<u32>,
    /// Use λ = 34, M = 81 unless overridden.
    #[arg(long)]
    sharpened: bool,
}

impl Params {
    fn resolve(&self, seed: Option<u64>) -> Result<PipelineParams> {
        let mut p = if self.sharpened {
            PipelineParams::sharpened()
        } else {
            PipelineParams::default()
        };
        p.eps = self.eps.unwrap_or(p.eps);
        p.m = self.m.unwrap_or(p.m);
        p.d = self.d.unwrap_or(p.d);
        p.alpha = self.alpha.unwrap_or(p.alpha);
        p.beta = self.beta.unwrap_or(p.beta);
        p.b = self.b.unwrap_or(p.b);
        p.lambda = self.lambda.or(p.lambda);
        p.big_m = self.big_m.or(p.big_m);
        p.max_rounds = self.max_rounds.unwrap_or(p.max_rounds);
        p.seed = seed.unwrap_or(0);
        p.validate()?;
        Ok(p)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum StatArg {
    #[value(name = "chi_at")]
    At,
    #[value(name = "chi_total")]
    Total,
    #[value(name = "chi_prime")]
    Prime,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundsCmd {
    Tail,
    Constants,
    C0,
    Lll,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Cycle,
    Path,
    Complete,
    CompleteBipartite,
    Star,
    RandomGnp,
    RandomRegular,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline: seed, E1/E2 selection, recolouring, low-degree phase, repair.
    Color {
        #[command(flatten)]
        input: Input,
        /// Proper total colouring document to start from.
        #[arg(long)]
        seed_coloring: Option<PathBuf>,
        #[command(flatten)]
        params: Params,
        /// Include per-phase wall-clock times.
        #[arg(long)]
        timings: bool,
    },
    /// Check a colouring document; exit 1 on any violation.
    Verify {
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Low-degree recolouring of a colouring document.
    DistinguishLow {
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Search for the E1 edge set.
    SelectE1 {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        seed_coloring: Option<PathBuf>,
        #[command(flatten)]
        params: Params,
    },
    /// Search for E1, then the E2 edge set.
    SelectE2 {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        seed_coloring: Option<PathBuf>,
        #[command(flatten)]
        params: Params,
    },
    /// Vizing edge colouring.
    EdgeColor {
        #[command(flatten)]
        input: Input,
    },
    /// Greedy proper total colouring.
    SeedColor {
        #[command(flatten)]
        input: Input,
    },
    /// Exact χ', χ'' or χ_at of each input graph.
    Exact {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        stat: StatArg,
    },
    /// χ_at ≤ Δ + 3 over a graph6 corpus.
    CheckConjecture {
        #[arg(long)]
        corpus: PathBuf,
    },
    /// Probability bounds and resampling constants.
    Bounds {
        #[arg(long, value_enum)]
        cmd: BoundsCmd,
        /// Trials for `tail`.
        #[arg(long)]
        n: Option<u64>,
        /// Success probability for `tail`.
        #[arg(long)]
        p: Option<f64>,
        /// Tail threshold for `tail`.
        #[arg(long)]
        threshold: Option<f64>,
        /// Maximum degree for `constants` and `lll`.
        #[arg(long)]
        delta: Option<f64>,
        /// `ln Δ` for `lll`, for degrees too large for f64.
        #[arg(long)]
        ln_delta: Option<f64>,
        #[command(flatten)]
        params: Params,
    },
    /// Pipeline over seeded random graphs.
    Bench {
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 60)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        prob: f64,
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        timings: bool,
    },
    /// Write a graph from a standard family.
    Generate {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, value_enum, default_value = "graph6")]
        format: FormatArg,
    },
}

/// Failure of a verification step, reported with exit status 1.
struct Unverified;

fn read_source(path: &Option<PathBuf>) -> Result<String> {
    match path {
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("reading standard in")?;
            Ok(s)
        }
    }
}

fn load_graph(input: &Input) -> Result<Graph> {
    let text = read_source(&input.input)?;
    let format = match input.format {
        FormatArg::Graph6 => Format::Graph6,
        FormatArg::Dimacs => Format::Dimacs,
    };
    Ok(read_graph(&text, format)?)
}

fn load_seed(g: &Graph, path: &Option<PathBuf>) -> Result<Option<TotalColoring>> {
    let Some(path) = path else { return Ok(None) };
    let doc = parse_document(&read_source(&Some(path.clone()))?)?;
    let imported = import_total(g, &doc)?;
    if !imported.proper {
        bail!("seed colouring {} is not proper", path.display());
    }
    Ok(Some(imported.coloring))
}

fn seed_or_greedy(g: &Graph, path: &Option<PathBuf>) -> Result<TotalColoring> {
    Ok(match load_seed(g, path)? {
        Some(c) => c,
        None => greedy_total(g, None)?,
    })
}

fn element_json(e: Element) -> Value {
    match e {
        Element::Vertex(v) => json!({ "vertex": v }),
        Element::Edge(u, v) => json!({ "edge": [u, v] }),
    }
}

fn violation_json(v: &Violation) -> Value {
    let kind = match v.kind {
        ViolationKind::VertexVertex => "vertex_vertex",
        ViolationKind::VertexEdge => "vertex_edge",
        ViolationKind::EdgeEdge => "edge_edge",
        ViolationKind::UndistinguishedPair => "undistinguished_pair",
    };
    json!({ "kind": kind, "witness": [element_json(v.witness.0), element_json(v.witness.1)] })
}

struct Out {
    json: bool,
    stdout: io::StdoutLock<'static>,
}

impl Out {
    fn doc(&mut self, v: &Value, human: impl FnOnce() -> String) -> Result<()> {
        if self.json {
            writeln!(self.stdout, "{}", serde_json::to_string_pretty(v)?)?;
        } else {
            write!(self.stdout, "{}", human())?;
        }
        Ok(())
    }

    fn line(&mut self, v: &Value, human: impl FnOnce() -> String) -> Result<()> {
        if self.json {
            writeln!(self.stdout, "{}", serde_json::to_string(v)?)?;
        } else {
            writeln!(self.stdout, "{}", human())?;
        }
        Ok(())
    }
}

fn warn_unseeded(seed: Option<u64>, name: &str) {
    if seed.is_some() {
        eprintln!("warning: `{name}` has no randomness; --seed is ignored");
    }
}

fn run(cli: Cli) -> Result<std::result::Result<(), Unverified>> {
    let mut out = Out {
        json: cli.json,
        stdout: io::stdout().lock(),
    };
    let seed = cli.seed;
    match cli.command {
        Command::Color {
            input,
            seed_coloring,
            params,
            timings,
        } => {
            let g = load_graph(&input)?;
            let params = params.resolve(seed)?;
            let start = load_seed(&g, &seed_coloring)?;
            let (phi, report) = if timings {
                let t0 = Instant::now();
                run_pipeline_timed(&g, start.as_ref(), &params, &|| t0.elapsed().as_nanos() as u64)?
            } else {
                run_pipeline(&g, start.as_ref(), &params)?
            };
            let mut doc = export_total(&g, &phi);
            doc.report = Some(json!({
                "params": params_json(&params),
                "pipeline": report_json(&report, timings),
            }));
            out.doc(&serde_json::to_value(&doc)?, || {
                format!(
                    "n {}  edges {}  Δ {}\ninput k {}  fresh {}  repairs {}  final k {}\nproper {}  avd {}\n",
                    g.n(),
                    g.num_edges(),
                    g.max_degree(),
                    report.input_k,
                    report.fresh_palette_size,
                    report.fallback_repairs,
                    report.final_k,
                    report.verified.proper,
                    report.verified.avd
                )
            })?;
            if !(doc.verified.proper && doc.verified.avd) {
                return Ok(Err(Unverified));
            }
        }
        Command::Verify { input } => {
            warn_unseeded(seed, "verify");
            let doc = parse_document(&read_source(&input)?)?;
            let g = document_graph(&doc)?;
            let imported = import_total(&g, &doc)?;
            let phi = &imported.coloring;
            let mut violations = properness_violations(&g, phi)?;
            if imported.proper {
                violations = avd_violations(&g, phi)?;
            }
            let v = verdict(&g, phi);
            let claimed = doc.verified == v;
            out.doc(
                &json!({
                    "verified": { "proper": v.proper, "avd": v.avd },
                    "matches_document": claimed,
                    "k": phi.k(),
                    "violations": violations.iter().map(violation_json).collect::<Vec<_>>(),
                }),
                || {
                    let mut s = format!("proper {}  avd {}  k {}\n", v.proper, v.avd, phi.k());
                    for x in &violations {
                        s.push_str(&format!("  {:?} {:?} {:?}\n", x.kind, x.witness.0, x.witness.1));
                    }
                    s
                },
            )?;
            if !(v.proper && v.avd) {
                return Ok(Err(Unverified));
            }
        }
        Command::DistinguishLow { input } => {
            warn_unseeded(seed, "distinguish-low");
            let doc = parse_document(&read_source(&input)?)?;
            let g = document_graph(&doc)?;
            let imported = import_total(&g, &doc)?;
            if !imported.proper {
                bail!("input colouring is not proper");
            }
            let res = distinguish_low_degree_traced(&g, &imported.coloring)?;
            let mut doc = export_total(&g, &res.coloring);
            doc.report = Some(json!({
                "steps": res.steps.iter().map(|&(v, c)| json!({ "vertex": v, "color": c })).collect::<Vec<_>>(),
            }));
            out.doc(&serde_json::to_value(&doc)?, || {
                let mut s = format!("{} recolouring steps\n", res.steps.len());
                for (v, c) in &res.steps {
                    s.push_str(&format!("  vertex {v} -> {c}\n"));
                }
                s.push_str(&format!("proper {}  avd {}\n", doc.verified.proper, doc.verified.avd));
                s
            })?;
        }
        Command::SelectE1 {
            input,
            seed_coloring,
            params,
        } => {
            let g = load_graph(&input)?;
            let params = params.resolve(seed)?;
            let phi = seed_or_greedy(&g, &seed_coloring)?;
            let e1 = find_e1(&g, &phi, &params)?;
            let constants = if g.max_degree() > 0 {
                Some(constants_json(&params.constants(g.max_degree())?))
            } else {
                None
            };
            out.doc(
                &json!({
                    "params": params_json(&params),
                    "constants": constants,
                    "success": e1.success,
                    "rounds": e1.rounds,
                    "e1": edges_json(&g, &e1.selection),
                    "violations": events_json(&e1.events),
                }),
                || {
                    format!(
                        "E1: {} edges after {} rounds, success {}, {} bad events\n",
                        e1.selection.len(),
                        e1.rounds,
                        e1.success,
                        e1.events.len()
                    )
                },
            )?;
        }
        Command::SelectE2 {
            input,
            seed_coloring,
            params,
        } => {
            let g = load_graph(&input)?;
            let params = params.resolve(seed)?;
            let phi = seed_or_greedy(&g, &seed_coloring)?;
            let e1 = find_e1(&g, &phi, &params)?;
            let l = low_e1_vertices(&g, &e1.selection, params.m);
            let e2 = find_e2(&g, &phi, &e1.selection, &l, &params);
            let (e2_json, human) = match &e2 {
                Ok(o) => (
                    json!({
                        "status": if o.success { "succeeded" } else { "failed" },
                        "success": o.success,
                        "rounds": o.rounds,
                        "e2": edges_json(&g, &o.selection),
                        "violations": events_json(&o.events),
                    }),
                    format!(
                        "E2: {} edges after {} rounds, success {}, {} bad events\n",
                        o.selection.len(),
                        o.rounds,
                        o.success,
                        o.events.len()
                    ),
                ),
                Err(e) => (
                    json!({ "status": "infeasible", "success": false, "reason": e.to_string() }),
                    format!("E2 infeasible: {e}\n"),
                ),
            };
            out.doc(
                &json!({
                    "params": params_json(&params),
                    "e1": {
                        "success": e1.success,
                        "rounds": e1.rounds,
                        "edges": edges_json(&g, &e1.selection),
                    },
                    "l": l,
                    "e2": e2_json,
                }),
                || {
                    format!(
                        "E1: {} edges, success {}\nL: {} vertices\n{human}",
                        e1.selection.len(),
                        e1.success,
                        l.len()
                    )
                },
            )?;
        }
        Command::EdgeColor { input } => {
            warn_unseeded(seed, "edge-color");
            let g = load_graph(&input)?;
            let ec = vizing_color(&g);
            let colors: Vec<Value> = g
                .edges()
                .iter()
                .zip(&ec.colors)
                .map(|(&(u, v), &c)| json!({ "u": u, "v": v, "c": c }))
                .collect();
            out.doc(
                &json!({
                    "n": g.n(),
                    "max_degree": g.max_degree(),
                    "palette_bound": ec.palette_bound,
                    "colors_used": ec.num_colors_used(),
                    "edge_colors": colors,
                }),
                || {
                    let mut s = format!("Δ {}  colours used {}\n", g.max_degree(), ec.num_colors_used());
                    for (&(u, v), c) in g.edges().iter().zip(&ec.colors) {
                        s.push_str(&format!("  {u}-{v}: {c}\n"));
                    }
                    s
                },
            )?;
        }
        Command::SeedColor { input } => {
            warn_unseeded(seed, "seed-color");
            let g = load_graph(&input)?;
            let phi = greedy_total(&g, None)?;
            let doc = export_total(&g, &phi);
            out.doc(&serde_json::to_value(&doc)?, || {
                format!(
                    "k {}\nvertex colours {:?}\nedge colours {:?}\nproper {}  avd {}\n",
                    phi.k(),
                    phi.vertex_colors(),
                    phi.edge_colors(),
                    doc.verified.proper,
                    doc.verified.avd
                )
            })?;
        }
        Command::Exact { input, stat } => {
            warn_unseeded(seed, "exact");
            let (stat, name) = match stat {
                StatArg::At => (Stat::ChiAt, "chi_at"),
                StatArg::Total => (Stat::ChiTotal, "chi_total"),
                StatArg::Prime => (Stat::ChiPrime, "chi_prime"),
            };
            let graphs: Vec<(usize, Graph)> = match input.format {
                FormatArg::Graph6 => parse_graph6_lines(&read_source(&input.input)?)
                    .map_err(|(line, e)| anyhow!("line {line}: {e}"))?,
                FormatArg::Dimacs => vec![(1, load_graph(&input)?)],
            };
            for (line, g) in graphs {
                let value = exact_stat(&g, stat).map_err(|e| anyhow!("line {line}: {e}"))?;
                out.line(
                    &json!({
                        "line": line,
                        "n": g.n(),
                        "edges": g.num_edges(),
                        "max_degree": g.max_degree(),
                        "stat": name,
                        "value": value,
                    }),
                    || format!("{name} = {value}  (line {line}, n {}, Δ {})", g.n(), g.max_degree()),
                )?;
            }
        }
        Command::CheckConjecture { corpus } => {
            warn_unseeded(seed, "check-conjecture");
            let text = read_source(&Some(corpus))?;
            let graphs = parse_graph6_lines(&text).map_err(|(line, e)| anyhow!("line {line}: {e}"))?;
            let entries = graphs
                .par_iter()
                .enumerate()
                .map(|(i, (line, g))| conjecture_entry(i, g).map_err(|e| anyhow!("line {line}: {e}")))
                .collect::<Result<Vec<_>>>()?;
            let report = ConjectureReport::from_entries(entries);
            let g6 = |i: usize| write_graph6(&graphs[i].1).expect("corpus graphs re-encode");
            for e in &report.entries {
                out.line(
                    &json!({
                        "line": graphs[e.index].0,
                        "graph6": g6(e.index),
                        "n": e.n,
                        "edges": e.edges,
                        "max_degree": e.max_degree,
                        "chi_at": e.chi_at,
                        "slack": e.slack,
                    }),
                    || {
                        format!(
                            "{:<12} n {:>2}  Δ {:>2}  χ_at {:>2}  slack {}",
                            g6(e.index),
                            e.n,
                            e.max_degree,
                            e.chi_at,
                            e.slack
                        )
                    },
                )?;
            }
            let tight: Vec<String> = report.tight.iter().map(|&i| g6(i)).collect();
            let violations: Vec<String> = report.violations.iter().map(|&i| g6(i)).collect();
            out.line(
                &json!({ "summary": {
                    "graphs": report.entries.len(),
                    "violations": violations,
                    "tight": tight,
                }}),
                || {
                    format!(
                        "{} graphs, {} violations, {} tight: {}",
                        report.entries.len(),
                        violations.len(),
                        tight.len(),
                        tight.join(" ")
                    )
                },
            )?;
        }
        Command::Bounds {
            cmd,
            n,
            p,
            threshold,
            delta,
            ln_delta,
            params,
        } => {
            warn_unseeded(seed, "bounds");
            let pp = params.resolve(None)?;
            let base = pp.constants(1)?;
            let lambda = base.lambda;
            let big_m = base.big_m;
            let value = match cmd {
                BoundsCmd::Tail => {
                    let (n, p, t) = match (n, p, threshold) {
                        (Some(n), Some(p), Some(t)) => (n, p, t),
                        _ => bail!("`bounds --cmd tail` needs --n, --p and --threshold"),
                    };
                    let side = |r: std::result::Result<avd_core::analysis::LogValue, _>| match r {
                        Ok(l) => json!({ "ln": l.ln, "value": l.value() }),
                        Err(_) => Value::Null,
                    };
                    let upper = side(binom_upper_tail_bound(n, p, t));
                    let lower = side(binom_lower_tail_bound(n, p, t));
                    if upper.is_null() && lower.is_null() {
                        bail!("threshold {t} lies outside both tail domains for n = {n}, p = {p}");
                    }
                    json!({ "n": n, "p": p, "threshold": t, "upper": upper, "lower": lower })
                }
                BoundsCmd::Constants => {
                    let delta = delta.unwrap_or(1.0);
                    if !(delta >= 1.0 && delta.fract() == 0.0) {
                        bail!("--delta must be a positive integer here");
                    }
                    let c = pp.constants(delta as usize)?;
                    json!({
                        "m": pp.m, "d": pp.d, "eps": pp.eps, "delta": delta,
                        "formula": pp.lambda.is_none() && pp.big_m.is_none(),
                        "constants": constants_json(&c),
                        "palette_growth_bound": avd_core::analysis::palette_growth_bound(c.big_m, pp.b),
                    })
                }
                BoundsCmd::C0 => {
                    let r = compute_c0(pp.m, pp.eps, lambda, big_m)?;
                    json!({ "m": pp.m, "eps": pp.eps, "lambda": lambda, "M": big_m, "c0": c0_json(&r) })
                }
                BoundsCmd::Lll => {
                    let ln_delta = match (ln_delta, delta) {
                        (Some(l), _) => l,
                        (None, Some(d)) if d > 1.0 => d.ln(),
                        _ => bail!("`bounds --cmd lll` needs --delta > 1 or --ln-delta"),
                    };
                    let lp = LllParams {
                        m: pp.m,
                        d: pp.d,
                        eps: pp.eps,
                        lambda,
                        big_m,
                    };
                    let r = lll_asymmetric_check_ln(&lp, ln_delta)?;
                    json!({ "lambda": lambda, "M": big_m, "report": lll_json(&r) })
                }
            };
            out.doc(&value, || format!("{}\n", serde_json::to_string_pretty(&value).unwrap_or_default()))?;
        }
        Command::Bench {
            count,
            n,
            prob,
            params,
            timings,
        } => {
            let params = params.resolve(seed)?;
            let seeds = seed_sequence(params.seed, Stream::Bench, count);
            let rows = seeds
                .par_iter()
                .enumerate()
                .map(|(i, &s)| -> Result<Value> {
                    let g = generate(&Family::RandomGnp { n, p: prob, seed: s })?;
                    let run_params = PipelineParams { seed: s, ..params.clone() };
                    let t0 = Instant::now();
                    let (_, r) = run_pipeline_timed(&g, None, &run_params, &|| t0.elapsed().as_nanos() as u64)?;
                    let mut row = json!({
                        "index": i,
                        "graph_seed": s,
                        "n": g.n(),
                        "edges": g.num_edges(),
                        "max_degree": g.max_degree(),
                        "input_k": r.input_k,
                        "final_k": r.final_k,
                        "fresh_palette_size": r.fresh_palette_size,
                        "fallback_repairs": r.fallback_repairs,
                        "e1_success": r.e1_success,
                        "e2_status": avd_total::report::e2_status_name(r.e2_status),
                        "clean": r.clean(),
                        "verified": r.verified.proper && r.verified.avd,
                    });
                    if timings {
                        row["total_ns"] = json!(r.phase_timings.iter().map(|&(_, t)| t).sum::<u64>());
                    }
                    Ok(row)
                })
                .collect::<Result<Vec<_>>>()?;
            let clean = rows.iter().filter(|r| r["clean"] == json!(true)).count();
            for row in &rows {
                out.line(row, || {
                    format!(
                        "#{:<3} n {:>3}  Δ {:>3}  k {:>3} -> {:>3}  clean {}",
                        row["index"], row["n"], row["max_degree"], row["input_k"], row["final_k"], row["clean"]
                    )
                })?;
            }
            out.line(&json!({ "summary": { "runs": rows.len(), "clean": clean } }), || {
                format!("{} runs, {clean} clean", rows.len())
            })?;
            if rows.iter().any(|r| r["verified"] != json!(true)) {
                return Ok(Err(Unverified));
            }
        }
        Command::Generate {
            family,
            n,
            a,
            b,
            p,
            degree,
            format,
        } => {
            let need = |x: Option<usize>, flag: &str| x.ok_or_else(|| anyhow!("this family needs --{flag}"));
            let s = seed.unwrap_or(0);
            let fam = match family {
                FamilyArg::Cycle => Family::Cycle { n: need(n, "n")? },
                FamilyArg::Path => Family::Path { n: need(n, "n")? },
                FamilyArg::Complete => Family::Complete { n: need(n, "n")? },
                FamilyArg::CompleteBipartite => Family::CompleteBipartite {
                    a: need(a, "a")?,
                    b: need(b, "b")?,
                },
                FamilyArg::Star => Family::Star { leaves: need(n, "n")? },
                FamilyArg::RandomGnp => Family::RandomGnp {
                    n: need(n, "n")?,
                    p: p.ok_or_else(|| anyhow!("random-gnp needs --p"))?,
                    seed: s,
                },
                FamilyArg::RandomRegular => Family::RandomRegular {
                    n: need(n, "n")?,
                    d: need(degree, "degree")?,
                    seed: s,
                },
            };
            if !matches!(family, FamilyArg::RandomGnp | FamilyArg::RandomRegular) {
                warn_unseeded(seed, "generate");
            }
            let g = generate(&fam)?;
            match format {
                FormatArg::Graph6 => writeln!(out.stdout, "{}", write_graph6(&g)?)?,
                FormatArg::Dimacs => write!(out.stdout, "{}", write_dimacs(&g))?,
            }
        }
    }
    Ok(Ok(()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Unverified)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
