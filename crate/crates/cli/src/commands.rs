use std::fs::{self, File, OpenOptions};
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use triwheel::analysis::classify as classify_graph;
use triwheel::chromatic::{brute_force_count, ChromaticEngine, EngineError};
use triwheel::report::bigint_value;
use triwheel::triangulation::{
    generate_all, read_adjlist, read_planar_code, write_planar_code, MAX_GENERATION_ORDER, PLANAR_CODE_HEADER,
};
use triwheel::wheel::{
    equality_pattern_counts_with_rim, four_color, obstruction_record, theorem1_check_with_rim, theorem2_check_with_rim,
};
use triwheel::{ContractionOutcome, Graph, Triangulation, Wheel};

use crate::{Format, GlobalOpts, InputOpts};

#[derive(Serialize)]
struct Failure {
    form: Option<String>,
    reason: String,
}

#[derive(Serialize)]
struct RunReport {
    command: &'static str,
    inputs: Value,
    results: Value,
    timing_ms: u128,
    failures: Vec<Failure>,
}

struct Run<'w, W: Write> {
    command: &'static str,
    inputs: Value,
    started: Instant,
    failures: Vec<Failure>,
    out: &'w mut W,
}

impl<'w, W: Write> Run<'w, W> {
    fn new(command: &'static str, inputs: Value, out: &'w mut W) -> Self {
        Run {
            command,
            inputs,
            started: Instant::now(),
            failures: Vec::new(),
            out,
        }
    }

    fn fail(&mut self, form: Option<String>, reason: impl Into<String>) {
        self.failures.push(Failure {
            form,
            reason: reason.into(),
        });
    }

    fn line(&mut self, value: &impl Serialize) -> Result<()> {
        serde_json::to_writer(&mut *self.out, value)?;
        writeln!(self.out)?;
        Ok(())
    }

    fn finish(mut self, results: Value) -> Result<bool> {
        let ok = self.failures.is_empty();
        let report = RunReport {
            command: self.command,
            inputs: std::mem::take(&mut self.inputs),
            results,
            timing_ms: self.started.elapsed().as_millis(),
            failures: std::mem::take(&mut self.failures),
        };
        self.line(&json!({ "report": report }))?;
        self.out.flush()?;
        Ok(ok)
    }
}

fn engine(global: &GlobalOpts) -> Result<ChromaticEngine> {
    let engine = ChromaticEngine::new();
    if let Some(path) = &global.cache {
        if path.exists() {
            let file = File::open(path).with_context(|| format!("opening cache {}", path.display()))?;
            engine
                .load_cache(BufReader::new(file))
                .with_context(|| format!("reading cache {}", path.display()))?;
        }
    }
    Ok(engine)
}

fn save_cache(global: &GlobalOpts, engine: &ChromaticEngine) -> Result<()> {
    if let Some(path) = &global.cache {
        let file = File::create(path).with_context(|| format!("writing cache {}", path.display()))?;
        let mut w = BufWriter::new(file);
        engine.save_cache(&mut w)?;
        w.flush()?;
    }
    Ok(())
}

fn sniff(bytes: &[u8]) -> Format {
    let binary = bytes.first().is_some_and(|&b| b < 0x20 && !b.is_ascii_whitespace());
    if bytes.starts_with(PLANAR_CODE_HEADER) || binary {
        Format::PlanarCode
    } else {
        Format::Adjlist
    }
}

enum Loaded {
    Embedded(Vec<Triangulation>),
    Plain(Vec<Graph>),
}

fn load(input: &InputOpts) -> Result<Loaded, String> {
    let bytes = fs::read(&input.input).map_err(|e| format!("cannot read {}: {e}", input.input.display()))?;
    match input.format.unwrap_or_else(|| sniff(&bytes)) {
        Format::PlanarCode => read_planar_code(&bytes).map(Loaded::Embedded).map_err(|e| e.to_string()),
        Format::Adjlist => {
            let text = String::from_utf8(bytes).map_err(|_| "adjacency list is not UTF-8".to_string())?;
            read_adjlist(&text).map(Loaded::Plain).map_err(|e| e.to_string())
        }
    }
}

fn load_graphs(input: &InputOpts) -> Result<Vec<Graph>, String> {
    Ok(match load(input)? {
        Loaded::Embedded(ts) => ts.into_iter().map(|t| t.graph().clone()).collect(),
        Loaded::Plain(gs) => gs,
    })
}

/// Triangulations, or per-graph embedding errors.
fn load_triangulations(input: &InputOpts) -> Result<Vec<Result<Triangulation, (Graph, String)>>, String> {
    Ok(match load(input)? {
        Loaded::Embedded(ts) => ts.into_iter().map(Ok).collect(),
        Loaded::Plain(gs) => gs
            .into_iter()
            .map(|g| Triangulation::from_graph(&g).map_err(|e| (g, e.to_string())))
            .collect(),
    })
}

fn input_json(input: &InputOpts) -> Value {
    json!({
        "input": input.input.display().to_string(),
        "format": input.format.map(|f| format!("{f:?}")),
    })
}

pub fn poly<W: Write>(global: &GlobalOpts, input: &InputOpts, eval_at: Option<i64>, out: &mut W) -> Result<bool> {
    let mut inputs = input_json(input);
    inputs["eval"] = json!(eval_at);
    inputs["oracle"] = json!(global.oracle);
    let mut run = Run::new("poly", inputs, out);
    let graphs = match load_graphs(input) {
        Ok(gs) => gs,
        Err(e) => {
            run.fail(None, e);
            return run.finish(json!({ "graphs": 0 }));
        }
    };
    let engine = engine(global)?;
    let rows: Vec<(Value, Option<String>)> = graphs
        .par_iter()
        .enumerate()
        .map(|(index, g)| {
            let form = g.canonical_form().to_hex();
            let p = engine.chromatic_polynomial(g);
            let mut row = json!({
                "index": index,
                "form": form,
                "order": g.order(),
                "size": g.size(),
                "polynomial": p.to_string(),
                "coefficients": p.coeffs().iter().map(bigint_value).collect::<Vec<_>>(),
            });
            let mut problem = None;
            if let Some(t) = eval_at {
                row["value"] = bigint_value(&p.eval_i64(t));
            }
            if global.oracle {
                let t = eval_at.unwrap_or(4);
                match u32::try_from(t) {
                    Ok(t) => match brute_force_count(g, t) {
                        Ok(count) => {
                            let agrees = count == p.eval_i64(t as i64);
                            row["oracle"] = json!({ "t": t, "agrees": agrees });
                            if !agrees {
                                problem = Some(format!("oracle disagrees at t = {t}"));
                            }
                        }
                        Err(EngineError::OracleTooLarge { .. }) => row["oracle"] = json!("skipped"),
                        Err(e) => problem = Some(e.to_string()),
                    },
                    Err(_) => row["oracle"] = json!("skipped"),
                }
            }
            (row, problem)
        })
        .collect();
    for (row, problem) in &rows {
        run.line(row)?;
        if let Some(reason) = problem {
            run.fail(row["form"].as_str().map(String::from), reason.clone());
        }
    }
    save_cache(global, &engine)?;
    run.finish(json!({ "graphs": rows.len(), "memo_entries": engine.memo_len() }))
}

struct GraphChecks {
    line: Value,
    checks: usize,
    violations: Vec<(String, String)>,
}

fn wheels(t: &Triangulation, degree: usize, all_rims: bool) -> Vec<Wheel> {
    let mut out = Vec::new();
    for v in (0..t.order()).filter(|&v| t.degree(v) == degree) {
        let wheel = t.link_cycle(v).expect("order at least 4");
        if all_rims {
            out.extend(wheel.relabelings().into_iter().map(|rim| Wheel { center: v, rim }));
        } else {
            out.push(wheel);
        }
    }
    out
}

fn check_graph(engine: &ChromaticEngine, t: &Triangulation, theorem: u8, all_rims: bool, oracle: bool) -> (usize, Vec<String>) {
    let mut checks = 0;
    let mut problems = Vec::new();
    let degree = if theorem == 1 { 4 } else { 5 };
    for wheel in wheels(t, degree, all_rims) {
        checks += 1;
        let v = wheel.center;
        if theorem == 1 {
            match theorem1_check_with_rim(engine, t, wheel, oracle) {
                Ok(r) if r.holds => {}
                Ok(r) => problems.push(format!(
                    "vertex {v} rim {:?}: {} + {} != {}",
                    r.rim, r.term1, r.term2, r.total
                )),
                Err(e) => problems.push(format!("vertex {v}: {e}")),
            }
        } else {
            match theorem2_check_with_rim(engine, t, wheel.clone(), oracle) {
                Ok(r) => {
                    if !r.holds {
                        problems.push(format!("vertex {v} rim {:?}: bracket sum differs from {}", r.rim, r.total));
                    }
                    if !r.nonnegative {
                        problems.push(format!("vertex {v} rim {:?}: negative bracket", r.rim));
                    }
                    if oracle {
                        match equality_pattern_counts_with_rim(t, wheel) {
                            Ok(p) => {
                                let sums = p.bracket_sums();
                                let agree = p.overlaps == 0
                                    && num_bigint::BigInt::from(p.sum()) == r.total
                                    && (0..3).all(|i| num_bigint::BigInt::from(sums[i]) == r.brackets[i].value);
                                if !agree {
                                    problems.push(format!("vertex {v}: rim pattern counts disagree"));
                                }
                            }
                            Err(e) => problems.push(format!("vertex {v}: {e}")),
                        }
                    }
                }
                Err(e) => problems.push(format!("vertex {v}: {e}")),
            }
        }
    }
    (checks, problems)
}

pub fn verify<W: Write>(
    global: &GlobalOpts,
    theorem: u8,
    order_max: usize,
    all_rims: bool,
    permutations: usize,
    out: &mut W,
) -> Result<bool> {
    let inputs = json!({
        "theorem": theorem,
        "order_max": order_max,
        "all_rims": all_rims,
        "permutations": permutations,
        "seed": global.seed,
        "oracle": global.oracle,
    });
    let mut run = Run::new("verify", inputs, out);
    if !(4..=MAX_GENERATION_ORDER).contains(&order_max) {
        run.fail(
            None,
            format!("order_max {order_max} outside the supported range 4..={MAX_GENERATION_ORDER}"),
        );
        return run.finish(json!({ "graphs": 0, "checks": 0, "violations": 0 }));
    }
    let engine = engine(global)?;
    let mut corpus = Vec::new();
    for n in 4..=order_max {
        corpus.extend(generate_all(n, None)?.graphs);
    }
    let results: Vec<GraphChecks> = corpus
        .par_iter()
        .enumerate()
        .map(|(index, t)| {
            let form = t.canonical_form().to_hex();
            let (mut checks, problems) = check_graph(&engine, t, theorem, all_rims, global.oracle);
            let mut violations: Vec<(String, String)> = problems.into_iter().map(|p| (form.clone(), p)).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(global.seed ^ index as u64);
            for _ in 0..permutations {
                let mut perm: Vec<usize> = (0..t.order()).collect();
                perm.shuffle(&mut rng);
                let relabeled = t.permute(&perm).with_fresh_provenance();
                let (c, problems) = check_graph(&engine, &relabeled, theorem, false, false);
                checks += c;
                violations.extend(problems.into_iter().map(|p| (form.clone(), format!("relabeled {perm:?}: {p}"))));
            }
            GraphChecks {
                line: json!({
                    "index": index,
                    "form": form,
                    "order": t.order(),
                    "min_degree": t.min_degree(),
                    "checks": checks,
                    "violations": violations.iter().map(|(_, r)| r).collect::<Vec<_>>(),
                }),
                checks,
                violations,
            }
        })
        .collect();
    let mut checks = 0;
    let mut violations = 0;
    for r in results {
        run.line(&r.line)?;
        checks += r.checks;
        violations += r.violations.len();
        for (form, reason) in r.violations {
            run.fail(Some(form), reason);
        }
    }
    save_cache(global, &engine)?;
    run.finish(json!({ "graphs": corpus.len(), "checks": checks, "violations": violations }))
}

pub fn color<W: Write>(global: &GlobalOpts, input: &InputOpts, out: &mut W) -> Result<bool> {
    let _ = global;
    let mut run = Run::new("color", input_json(input), out);
    let items = match load_triangulations(input) {
        Ok(items) => items,
        Err(e) => {
            run.fail(None, e);
            return run.finish(json!({ "graphs": 0 }));
        }
    };
    let rows: Vec<Result<(String, Value, bool), (Option<String>, String)>> = items
        .par_iter()
        .enumerate()
        .map(|(index, item)| {
            let t = item
                .as_ref()
                .map_err(|(g, e)| (Some(g.canonical_form().to_hex()), format!("graph {index}: {e}")))?;
            let form = t.canonical_form().to_hex();
            let cert = four_color(t).map_err(|e| (Some(form.clone()), format!("graph {index}: {e}")))?;
            let fallback = cert.fallback;
            Ok((
                form.clone(),
                json!({ "index": index, "form": form, "order": t.order(), "certificate": cert }),
                fallback,
            ))
        })
        .collect();
    let mut colored = 0;
    let mut fallbacks = Vec::new();
    for row in rows {
        match row {
            Ok((form, line, fallback)) => {
                run.line(&line)?;
                colored += 1;
                if fallback {
                    fallbacks.push(form);
                }
            }
            Err((form, reason)) => run.fail(form, reason),
        }
    }
    run.finish(json!({ "graphs": colored, "fallbacks": fallbacks }))
}

pub fn generate<W: Write>(
    global: &GlobalOpts,
    n: usize,
    min_degree: Option<usize>,
    path: &Path,
    out: &mut W,
) -> Result<bool> {
    let _ = global;
    let inputs = json!({ "n": n, "min_degree": min_degree, "out": path.display().to_string() });
    let mut run = Run::new("generate", inputs, out);
    let report = match generate_all(n, min_degree) {
        Ok(r) => r,
        Err(e) => {
            run.fail(None, e.to_string());
            return run.finish(json!({ "graphs": 0 }));
        }
    };
    fs::write(path, write_planar_code(&report.graphs)).with_context(|| format!("writing {}", path.display()))?;
    let mut summary = report.summary_json();
    summary["graphs"] = json!(report.graphs.len());
    summary["forms"] = json!(report.forms.iter().map(|f| f.to_hex()).collect::<Vec<_>>());
    run.finish(summary)
}

pub fn classify<W: Write>(
    global: &GlobalOpts,
    input: &InputOpts,
    cap: Option<usize>,
    obstruction_log: Option<&Path>,
    out: &mut W,
) -> Result<bool> {
    let mut inputs = input_json(input);
    inputs["cap"] = json!(cap);
    inputs["obstruction_log"] = json!(obstruction_log.map(|p| p.display().to_string()));
    let mut run = Run::new("classify", inputs, out);
    let graphs = match load_graphs(input) {
        Ok(gs) => gs,
        Err(e) => {
            run.fail(None, e);
            return run.finish(json!({ "graphs": 0 }));
        }
    };
    let engine = engine(global)?;
    let rows: Vec<(Value, Option<Value>, Vec<String>)> = graphs
        .par_iter()
        .enumerate()
        .map(|(index, g)| {
            let form = g.canonical_form().to_hex();
            let mut problems = Vec::new();
            let mut line = json!({ "index": index, "form": form, "order": g.order() });
            match classify_graph(g, cap) {
                Ok(c) => {
                    if global.oracle {
                        let f4 = engine
                            .count_colorings(&ContractionOutcome::Graph(g.clone()), 4, true)
                            .map(|r| r.value);
                        match f4 {
                            Ok(f4) if g.contains_clique(3) && num_bigint::BigInt::from(c.partitions) * 24 != f4 => {
                                problems.push(format!("{} partitions but f(G,4) = {f4}", c.partitions))
                            }
                            Err(e) => problems.push(e.to_string()),
                            _ => {}
                        }
                    }
                    line["classification"] = json!(c);
                }
                Err(e) => problems.push(e.to_string()),
            }
            let mut record = None;
            if let Ok(t) = Triangulation::from_graph(g) {
                if t.min_degree() == 5 {
                    match obstruction_record(&t) {
                        Ok(r) => {
                            line["funnels"] = json!(r);
                            record = Some(json!(r));
                        }
                        Err(e) => problems.push(e.to_string()),
                    }
                }
            }
            (line, record, problems)
        })
        .collect();
    let mut log = match obstruction_log {
        Some(p) => Some(BufWriter::new(
            OpenOptions::new()
                .create(true)
                .append(true)
                .open(p)
                .with_context(|| format!("opening {}", p.display()))?,
        )),
        None => None,
    };
    let mut obstructed = Vec::new();
    for (line, record, problems) in &rows {
        run.line(line)?;
        let form = line["form"].as_str().map(String::from);
        for p in problems {
            run.fail(form.clone(), p.clone());
        }
        if let Some(r) = record {
            if r["all_obstructed"] == json!(true) {
                obstructed.push(r["form"].clone());
            }
            if let Some(w) = log.as_mut() {
                serde_json::to_writer(&mut *w, r)?;
                writeln!(w)?;
            }
        }
    }
    if let Some(mut w) = log {
        w.flush()?;
    }
    run.finish(json!({ "graphs": rows.len(), "fully_obstructed": obstructed }))
}
