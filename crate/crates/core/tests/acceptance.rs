//! Acceptance run: one PASS/FAIL line per criterion, with pinned time
//! limits. All comparisons are exact integer equality.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use triwheel::analysis::{enumerate_partitions, enumerate_partitions_unanchored, partition_count_identity};
use triwheel::chromatic::{brute_force_count, clique_separator_split, ChromaticEngine, Polynomial};
use triwheel::planarity::is_planar;
use triwheel::triangulation::catalog::icosahedron;
use triwheel::triangulation::generate_all;
use triwheel::wheel::{
    equality_pattern_counts_with_rim, four_color, obstruction_record, theorem1_check_with_rim,
    theorem2_check_with_rim, wheel4_equality_counts,
};
use triwheel::{CanonicalForm, Graph, Triangulation};

const SEED: u64 = 0x5eed;
const RANDOM_GRAPHS: usize = 200;

const LIMIT_ORACLE: Duration = Duration::from_secs(120);
const LIMIT_THEOREM1: Duration = Duration::from_secs(600);
const LIMIT_THEOREM2: Duration = Duration::from_secs(900);
const LIMIT_GENERATE_13: Duration = Duration::from_secs(1800);
// Criteria without a stated budget still get one so a hang fails loudly.
const LIMIT_DEFAULT: Duration = Duration::from_secs(900);

type Outcome = Result<String, String>;

fn corpus(lo: usize, hi: usize) -> Vec<Triangulation> {
    (lo..=hi).flat_map(|n| generate_all(n, None).expect("generation").graphs).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle_equivalence() -> Outcome {
    let engine = ChromaticEngine::new();
    let pool = corpus(4, 9);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut graphs: Vec<Graph> = corpus(4, 8).iter().map(|t| t.graph().clone()).collect();
    let triangulations = graphs.len();
    ensure(triangulations == 23, || format!("{triangulations} triangulations with n <= 8, expected 23"))?;
    while graphs.len() < triangulations + RANDOM_GRAPHS {
        let host = &pool[rng.gen_range(0..pool.len())];
        if !(5..=9).contains(&host.order()) {
            continue;
        }
        let p = rng.gen_range(0.3..0.9);
        let edges: Vec<(usize, usize)> = host.graph().edges().into_iter().filter(|_| rng.gen_bool(p)).collect();
        let g = Graph::build(host.order(), &edges).map_err(|e| e.to_string())?;
        ensure(is_planar(g.adjacency()), || "random subgraph not planar".into())?;
        graphs.push(g);
    }
    let mismatches: Vec<String> = graphs
        .par_iter()
        .flat_map_iter(|g| {
            let p = engine.chromatic_polynomial(g);
            (1..=6u32)
                .filter_map(|t| {
                    let oracle = brute_force_count(g, t).expect("oracle");
                    (p.eval_i64(t as i64) != oracle).then(|| format!("{} at t={t}", g.canonical_form()))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    ensure(mismatches.is_empty(), || format!("mismatches: {mismatches:?}"))?;
    Ok(format!("{} graphs x 6 evaluations", graphs.len()))
}

fn theorem1_identity() -> Outcome {
    let engine = ChromaticEngine::new();
    let graphs = corpus(5, 10);
    let results: Vec<Result<usize, String>> = graphs
        .par_iter()
        .map(|t| {
            let mut checks = 0;
            let f4 = engine.chromatic_polynomial(t.graph()).eval_i64(4);
            for v in (0..t.order()).filter(|&v| t.degree(v) == 4) {
                let wheel = t.link_cycle(v).map_err(|e| e.to_string())?;
                for rim in wheel.relabelings() {
                    let w = triwheel::Wheel { center: v, rim };
                    let r = theorem1_check_with_rim(&engine, t, w, false).map_err(|e| e.to_string())?;
                    ensure(r.holds, || format!("violation at {} vertex {v} rim {:?}", r.form, r.rim))?;
                    checks += 1;
                }
                let wc = wheel4_equality_counts(t, v).map_err(|e| e.to_string())?;
                ensure(BigInt::from(wc.extensions()) == f4, || {
                    format!("rim double count disagrees at {} vertex {v}", t.canonical_form())
                })?;
            }
            Ok(checks)
        })
        .collect();
    let checks = results.into_iter().sum::<Result<usize, String>>()?;
    ensure(checks > 0, || "no degree-4 vertices found".into())?;
    Ok(format!("{} graphs, {checks} vertex/rim checks, 0 violations", graphs.len()))
}

/// Theorem 2 and the pattern partition share the same vertex set.
struct FiveWheelSweep {
    graphs: usize,
    checks: usize,
    pattern_checks: usize,
    elapsed: Duration,
}

fn five_wheel_sweep() -> Result<FiveWheelSweep, String> {
    let start = Instant::now();
    let engine = ChromaticEngine::new();
    let mut graphs = corpus(6, 10);
    graphs.push(icosahedron());
    let results: Vec<Result<(usize, usize), String>> = graphs
        .par_iter()
        .map(|t| {
            let (mut checks, mut pattern_checks) = (0, 0);
            let f4 = engine.chromatic_polynomial(t.graph()).eval_i64(4);
            for v in (0..t.order()).filter(|&v| t.degree(v) == 5) {
                let wheel = t.link_cycle(v).map_err(|e| e.to_string())?;
                for rim in wheel.relabelings() {
                    let w = triwheel::Wheel { center: v, rim };
                    let r = theorem2_check_with_rim(&engine, t, w.clone(), false).map_err(|e| e.to_string())?;
                    ensure(r.holds, || format!("violation at {} vertex {v} rim {:?}", r.form, r.rim))?;
                    ensure(r.nonnegative, || format!("negative bracket at {} vertex {v}", r.form))?;
                    let pc = equality_pattern_counts_with_rim(t, w).map_err(|e| e.to_string())?;
                    ensure(pc.overlaps == 0, || format!("overlapping patterns at {} vertex {v}", r.form))?;
                    ensure(BigInt::from(pc.sum()) == f4, || format!("pattern sum != f(G,4) at {} vertex {v}", r.form))?;
                    let sums = pc.bracket_sums();
                    ensure((0..3).all(|i| BigInt::from(sums[i]) == r.brackets[i].value), || {
                        format!("bracket value differs from its pattern count at {} vertex {v}", r.form)
                    })?;
                    checks += 1;
                    pattern_checks += 1;
                }
            }
            Ok((checks, pattern_checks))
        })
        .collect();
    let (mut checks, mut pattern_checks) = (0, 0);
    for r in results {
        let (a, b) = r?;
        checks += a;
        pattern_checks += b;
    }
    Ok(FiveWheelSweep {
        graphs: graphs.len(),
        checks,
        pattern_checks,
        elapsed: start.elapsed(),
    })
}

fn degree3_reduction() -> Outcome {
    let engine = ChromaticEngine::new();
    let graphs = corpus(4, 10);
    let mut checks = 0;
    for t in &graphs {
        let f = engine.chromatic_polynomial(t.graph());
        for v in (0..t.order()).filter(|&v| t.degree(v) == 3) {
            let rest = engine.chromatic_polynomial(&t.graph().delete_vertex(v).map_err(|e| e.to_string())?);
            ensure(rest.mul_linear(3) == f, || format!("reduction fails at {} vertex {v}", t.canonical_form()))?;
            checks += 1;
        }
    }
    Ok(format!("{} graphs, {checks} degree-3 vertices", graphs.len()))
}

fn product_rule() -> Outcome {
    let with = ChromaticEngine::new();
    let direct = ChromaticEngine::without_separators();
    let graphs = corpus(5, 10);
    let mut separated = 0;
    for t in &graphs {
        let Some(split) = clique_separator_split(t.graph()) else {
            continue;
        };
        let k = split.clique.len();
        ensure(split.g1.order() < t.order() && split.g2.order() < t.order(), || "trivial split".into())?;
        ensure(split.g1.order() + split.g2.order() - k == t.order(), || "split does not cover".into())?;
        let product: Polynomial = &with.chromatic_polynomial(&split.g1) * &with.chromatic_polynomial(&split.g2);
        let formula = product
            .div_falling_factorial(k)
            .ok_or_else(|| format!("product not divisible at {}", t.canonical_form()))?;
        let expected = direct.chromatic_polynomial(t.graph());
        ensure(formula == expected, || format!("product rule fails at {}", t.canonical_form()))?;
        ensure(with.chromatic_polynomial(t.graph()) == expected, || "engines disagree".into())?;
        separated += 1;
    }
    ensure(separated > 0, || "no separating cliques found".into())?;
    Ok(format!("{separated} graphs with a separating clique"))
}

/// All simple graphs with `3n - 6` edges and minimum degree 3 that pass
/// the planarity test, up to isomorphism.
fn brute_force_classes(n: usize) -> BTreeSet<CanonicalForm> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let m = 3 * n - 6;
    let mut classes = BTreeSet::new();
    let mut mask: u64 = (1u64 << m) - 1;
    while mask < 1u64 << pairs.len() {
        let mut adj = vec![0u64; n];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                adj[a] |= 1 << b;
                adj[b] |= 1 << a;
            }
        }
        if adj.iter().all(|r| r.count_ones() >= 3) && is_planar(&adj) {
            classes.insert(Graph::from_adjacency(adj).unwrap().canonical_form());
        }
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    classes
}

fn generator() -> Outcome {
    for (n, expected) in [(4, 1), (5, 1), (6, 2), (7, 5), (8, 14)] {
        let oracle = brute_force_classes(n);
        let got: BTreeSet<CanonicalForm> = generate_all(n, None).map_err(|e| e.to_string())?.forms.into_iter().collect();
        ensure(oracle.len() == expected, || format!("oracle finds {} classes at n={n}", oracle.len()))?;
        ensure(got == oracle, || format!("generator finds {} classes at n={n}", got.len()))?;
    }
    let twelve = generate_all(12, Some(5)).map_err(|e| e.to_string())?;
    ensure(twelve.graphs.len() == 1, || format!("{} graphs at n=12, min degree 5", twelve.graphs.len()))?;
    ensure(twelve.forms[0] == icosahedron().canonical_form(), || "n=12 graph is not the icosahedron".into())?;
    let start = Instant::now();
    let thirteen = generate_all(13, None).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    let five = thirteen.counts_by_min_degree.get(&5).copied().unwrap_or(0);
    ensure(five == 0, || format!("{five} graphs at n=13, min degree 5"))?;
    ensure(took < LIMIT_GENERATE_13, || format!("n=13 run took {took:?}"))?;
    Ok(format!(
        "1,1,2,5,14 match; icosahedron unique; n=13: {} classes, none of min degree 5, {:.1}s",
        thirteen.graphs.len(),
        took.as_secs_f64()
    ))
}

fn partition_identity() -> Outcome {
    let engine = ChromaticEngine::new();
    let graphs = corpus(4, 10);
    let failures: Vec<String> = graphs
        .par_iter()
        .filter_map(|t| {
            let f4 = engine.chromatic_polynomial(t.graph()).eval_i64(4);
            let ok = partition_count_identity(t.graph(), &f4).unwrap_or(false);
            let same = t.order() > 7
                || enumerate_partitions(t.graph()).ok().map(|p| p.into_iter().collect::<BTreeSet<_>>())
                    == enumerate_partitions_unanchored(t.graph()).ok().map(|p| p.into_iter().collect());
            (!ok || !same).then(|| t.canonical_form().to_string())
        })
        .collect();
    ensure(failures.is_empty(), || format!("fails on {failures:?}"))?;
    Ok(format!("{} graphs", graphs.len()))
}

fn constructive_coloring() -> Outcome {
    let mut graphs = corpus(4, 12);
    graphs.push(icosahedron());
    let results: Vec<Result<bool, String>> = graphs
        .par_iter()
        .map(|t| {
            let cert = four_color(t).map_err(|e| format!("{}: {e}", t.canonical_form()))?;
            cert.validate(t).map_err(|e| format!("{}: {e}", t.canonical_form()))?;
            Ok(cert.fallback)
        })
        .collect();
    let mut fallbacks = 0;
    for r in results {
        fallbacks += r? as usize;
    }
    Ok(format!("{} colorings validated, {fallbacks} used the exhaustive fallback", graphs.len()))
}

fn obstruction_sweep() -> String {
    let mut graphs = Vec::new();
    for n in 12..=13 {
        graphs.extend(generate_all(n, Some(5)).expect("generation").graphs);
    }
    let mut obstructed_vertices = 0;
    let mut all = 0;
    for t in &graphs {
        let r = obstruction_record(t).expect("sweep");
        obstructed_vertices += r.vertices.iter().filter(|f| f.obstruction).count();
        all += r.all_obstructed as usize;
    }
    format!(
        "obstruction sweep (n <= 13, min degree 5): {} graphs, {obstructed_vertices} obstructed vertices, {all} fully obstructed graphs",
        graphs.len()
    )
}

fn report(id: usize, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = f();
    finish(id, limit, start.elapsed(), outcome)
}

fn finish(id: usize, limit: Duration, elapsed: Duration, outcome: Outcome) -> bool {
    let outcome = outcome.and_then(|m| {
        ensure(elapsed <= limit, || format!("over time limit {limit:?}"))?;
        Ok(m)
    });
    let (tag, msg) = match &outcome {
        Ok(m) => ("PASS", m),
        Err(m) => ("FAIL", m),
    };
    println!("criterion {id}: {tag} ({:.1}s / limit {}s) {msg}", elapsed.as_secs_f64(), limit.as_secs());
    outcome.is_ok()
}

fn main() -> ExitCode {
    let mut ok = true;
    ok &= report(1, LIMIT_ORACLE, oracle_equivalence);
    ok &= report(2, LIMIT_THEOREM1, theorem1_identity);
    let sweep = five_wheel_sweep();
    let elapsed = sweep.as_ref().map(|s| s.elapsed).unwrap_or_default();
    ok &= finish(
        3,
        LIMIT_THEOREM2,
        elapsed,
        sweep.as_ref().map(|s| format!("{} graphs, {} vertex/rim checks, 0 violations, brackets non-negative", s.graphs, s.checks)).map_err(Clone::clone),
    );
    ok &= report(4, LIMIT_DEFAULT, degree3_reduction);
    ok &= report(5, LIMIT_DEFAULT, product_rule);
    ok &= report(6, LIMIT_GENERATE_13 + LIMIT_DEFAULT, generator);
    ok &= report(7, LIMIT_DEFAULT, partition_identity);
    ok &= report(8, LIMIT_DEFAULT, constructive_coloring);
    ok &= finish(
        9,
        LIMIT_THEOREM2,
        elapsed,
        sweep.as_ref().map(|s| format!("{} vertex/rim pattern checks: disjoint, sum to f(G,4), match bracket values", s.pattern_checks)).map_err(Clone::clone),
    );
    println!("report: {}", obstruction_sweep());
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
