//! Wheel identities at `t = 4` and a certified constructive 4-coloring.
//!
//! For a degree-4 vertex `v` with rim `v1..v4`:
//! `f(G,4) = f((G-v)∘{v1,v3},4) + f((G-v)∘{v2,v4},4)`.
//!
//! For a degree-5 vertex with rim `v1..v5`, with `G1,G2,G3` contracting
//! `{v2,v5}`, `{v2,v4}`, `{v3,v5}` in `G - v`:
//! `f(G,4) = [f(G1) - f(G1+v1v4+v1v3)] + [f(G2) - f(G2+v3v1+v3v5)] + [f(G3) - f(G3+v1v4)]`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::analysis::{enumerate_partitions, AnalysisError, Funnel};
use crate::canon::CanonicalForm;
use crate::chromatic::{ChromaticEngine, EngineError};
use crate::graph::{bit, low_mask, Bits, ContractionOutcome, Graph};
use crate::planarity::is_planar;
use crate::triangulation::{Triangulation, TriangulationError, Wheel};

#[derive(Debug, Error)]
pub enum WheelError {
    #[error(transparent)]
    Triangulation(#[from] TriangulationError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error("minimum degree is {found}, expected {expected}")]
    MinDegree { found: usize, expected: usize },
    #[error("certificate rejected: {0}")]
    Certificate(String),
}

fn count(engine: &ChromaticEngine, outcome: &ContractionOutcome, cross_check: bool) -> Result<BigInt, EngineError> {
    Ok(engine.count_colorings(outcome, 4, cross_check)?.value)
}

fn total(engine: &ChromaticEngine, t: &Triangulation, cross_check: bool) -> Result<BigInt, EngineError> {
    count(engine, &ContractionOutcome::Graph(t.graph().clone()), cross_check)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem1Report {
    pub form: CanonicalForm,
    pub vertex: usize,
    pub rim: Vec<usize>,
    #[serde(serialize_with = "crate::report::bigint_decimal")]
    pub term1: BigInt,
    #[serde(serialize_with = "crate::report::bigint_decimal")]
    pub term2: BigInt,
    #[serde(serialize_with = "crate::report::bigint_decimal")]
    pub total: BigInt,
    pub holds: bool,
    /// Whether each contracted graph is itself maximal planar (markers
    /// report `false`).
    pub maximal: [bool; 2],
}

pub fn theorem1_check(
    engine: &ChromaticEngine,
    t: &Triangulation,
    v: usize,
    cross_check: bool,
) -> Result<Theorem1Report, WheelError> {
    let c = t.contract_wheel4(v)?;
    theorem1_report(engine, t, c, cross_check)
}

/// Same check for an explicit rim labeling.
pub fn theorem1_check_with_rim(
    engine: &ChromaticEngine,
    t: &Triangulation,
    wheel: Wheel,
    cross_check: bool,
) -> Result<Theorem1Report, WheelError> {
    let c = t.contract_wheel4_with_rim(wheel)?;
    theorem1_report(engine, t, c, cross_check)
}

fn theorem1_report(
    engine: &ChromaticEngine,
    t: &Triangulation,
    c: crate::triangulation::Wheel4Contraction,
    cross_check: bool,
) -> Result<Theorem1Report, WheelError> {
    let term1 = count(engine, &c.g1, cross_check)?;
    let term2 = count(engine, &c.g2, cross_check)?;
    let total = total(engine, t, cross_check)?;
    let maximal = |o: &ContractionOutcome| o.graph().is_some_and(Triangulation::is_maximal_planar);
    Ok(Theorem1Report {
        form: t.canonical_form(),
        vertex: c.wheel.center,
        rim: c.wheel.rim.clone(),
        holds: &term1 + &term2 == total,
        maximal: [maximal(&c.g1), maximal(&c.g2)],
        term1,
        term2,
        total,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BracketTerms {
    /// `f(Gi, 4)`
    #[serde(serialize_with = "crate::report::bigint_decimal")]
    pub contracted: BigInt,
    /// `f(Gi + chords, 4)`
    #[serde(serialize_with = "crate::report::bigint_decimal")]
    pub augmented: BigInt,
    #[serde(serialize_with = "crate::report::bigint_decimal")]
    pub value: BigInt,
    pub marker: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem2Report {
    pub form: CanonicalForm,
    pub vertex: usize,
    pub rim: Vec<usize>,
    pub brackets: [BracketTerms; 3],
    #[serde(serialize_with = "crate::report::bigint_decimal")]
    pub total: BigInt,
    pub holds: bool,
    pub nonnegative: bool,
}

pub fn theorem2_check(
    engine: &ChromaticEngine,
    t: &Triangulation,
    v: usize,
    cross_check: bool,
) -> Result<Theorem2Report, WheelError> {
    let c = t.contract_wheel5(v)?;
    theorem2_report(engine, t, c, cross_check)
}

pub fn theorem2_check_with_rim(
    engine: &ChromaticEngine,
    t: &Triangulation,
    wheel: Wheel,
    cross_check: bool,
) -> Result<Theorem2Report, WheelError> {
    let c = t.contract_wheel5_with_rim(wheel)?;
    theorem2_report(engine, t, c, cross_check)
}

fn theorem2_report(
    engine: &ChromaticEngine,
    t: &Triangulation,
    c: crate::triangulation::Wheel5Contraction,
    cross_check: bool,
) -> Result<Theorem2Report, WheelError> {
    let mut brackets = Vec::with_capacity(3);
    for i in 0..3 {
        let contracted = count(engine, &c.contracted[i], cross_check)?;
        let augmented = count(engine, &c.augmented[i], cross_check)?;
        brackets.push(BracketTerms {
            value: &contracted - &augmented,
            contracted,
            augmented,
            marker: c.contracted[i].is_marker(),
        });
    }
    let total = total(engine, t, cross_check)?;
    let sum = brackets.iter().fold(BigInt::zero(), |acc, b| acc + &b.value);
    let nonnegative = brackets.iter().all(|b| b.value >= BigInt::zero());
    Ok(Theorem2Report {
        form: t.canonical_form(),
        vertex: c.wheel.center,
        rim: c.wheel.rim.clone(),
        brackets: brackets.try_into().expect("three brackets"),
        holds: sum == total,
        nonnegative,
        total,
    })
}

/// Calls `f(rim_colors, extensions)` for every proper 4-coloring of the rim
/// (as a cycle), where `extensions` counts the 4-colorings of `G - v`
/// agreeing with it on the rim. Pure backtracking, independent of the
/// polynomial engine.
fn for_each_rim_coloring(t: &Triangulation, wheel: &Wheel, mut f: impl FnMut(&[u8], u64)) {
    let g = t.graph();
    let n = g.order();
    let rim_mask = wheel.rim.iter().fold(0u64, |m, &x| m | bit(x));
    let rest: Vec<usize> = Bits(low_mask(n) & !rim_mask & !bit(wheel.center)).collect();
    let k = wheel.rim.len();
    let mut colors = vec![u8::MAX; n];
    let mut rim_colors = vec![0u8; k];
    let total = 4usize.pow(k as u32);
    for code in 0..total {
        let mut c = code;
        for slot in rim_colors.iter_mut() {
            *slot = (c % 4) as u8;
            c /= 4;
        }
        let rim_ok = (0..k).all(|i| {
            (i + 1..k).all(|j| !g.has_edge(wheel.rim[i], wheel.rim[j]) || rim_colors[i] != rim_colors[j])
        });
        if !rim_ok {
            continue;
        }
        for (i, &x) in wheel.rim.iter().enumerate() {
            colors[x] = rim_colors[i];
        }
        f(&rim_colors, extend_count(g, &rest, 0, &mut colors));
    }
}

fn extend_count(g: &Graph, rest: &[usize], i: usize, colors: &mut [u8]) -> u64 {
    if i == rest.len() {
        return 1;
    }
    let v = rest[i];
    let mut used = 0u8;
    for w in g.neighbors(v) {
        if colors[w] != u8::MAX {
            used |= 1 << colors[w];
        }
    }
    let mut total = 0;
    for c in 0..4u8 {
        if used & (1 << c) == 0 {
            colors[v] = c;
            total += extend_count(g, rest, i + 1, colors);
        }
    }
    colors[v] = u8::MAX;
    total
}

/// The five ways a 3-colored 5-cycle can repeat colors, as pairs of
/// 1-based rim positions.
pub const RIM_PATTERNS: [[(usize, usize); 2]; 5] = [
    [(2, 5), (1, 3)],
    [(2, 5), (1, 4)],
    [(2, 4), (1, 3)],
    [(2, 4), (3, 5)],
    [(3, 5), (1, 4)],
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternCounts {
    pub vertex: usize,
    pub rim: Vec<usize>,
    /// 4-colorings of `G - v` realizing each pattern of [`RIM_PATTERNS`].
    pub counts: [u64; 5],
    /// Colorings whose rim uses all four colors (they do not extend to `v`).
    pub four_colored_rim: u64,
    /// Colorings matching more than one pattern.
    pub overlaps: u64,
}

impl PatternCounts {
    pub fn sum(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Pattern sums that each bracket of the 5-wheel identity should equal.
    pub fn bracket_sums(&self) -> [u64; 3] {
        [
            self.counts[0] + self.counts[1],
            self.counts[2] + self.counts[3],
            self.counts[4],
        ]
    }
}

pub fn equality_pattern_counts(t: &Triangulation, v: usize) -> Result<PatternCounts, WheelError> {
    let wheel = t.link_cycle(v)?;
    equality_pattern_counts_with_rim(t, wheel)
}

pub fn equality_pattern_counts_with_rim(t: &Triangulation, wheel: Wheel) -> Result<PatternCounts, WheelError> {
    if wheel.rim.len() != 5 || t.degree(wheel.center) != 5 {
        return Err(TriangulationError::WrongDegree {
            vertex: wheel.center,
            degree: t.degree(wheel.center),
            expected: 5,
        }
        .into());
    }
    let mut counts = [0u64; 5];
    let mut four = 0;
    let mut overlaps = 0;
    for_each_rim_coloring(t, &wheel, |rc, ext| {
        let eq = |(a, b): (usize, usize)| rc[a - 1] == rc[b - 1];
        let hits: Vec<usize> = (0..5).filter(|&i| RIM_PATTERNS[i].iter().all(|&p| eq(p))).collect();
        let distinct = rc.iter().fold(0u8, |m, &c| m | (1 << c)).count_ones();
        if distinct == 4 {
            four += ext;
        }
        if hits.len() > 1 {
            overlaps += ext;
        }
        for i in hits {
            counts[i] += ext;
        }
    });
    Ok(PatternCounts {
        vertex: wheel.center,
        rim: wheel.rim,
        counts,
        four_colored_rim: four,
        overlaps,
    })
}

/// Rim equality counts around a degree-4 vertex: colorings of `G - v` with
/// `v1 = v3`, with `v2 = v4`, and with both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Wheel4Counts {
    pub first_pair: u64,
    pub second_pair: u64,
    pub both: u64,
}

impl Wheel4Counts {
    /// Colorings of `G` obtained by extending to the center: two ways when
    /// the rim uses two colors, one way when it uses three.
    pub fn extensions(&self) -> u64 {
        2 * self.both + (self.first_pair - self.both) + (self.second_pair - self.both)
    }
}

pub fn wheel4_equality_counts(t: &Triangulation, v: usize) -> Result<Wheel4Counts, WheelError> {
    if t.degree(v) != 4 {
        return Err(TriangulationError::WrongDegree {
            vertex: v,
            degree: t.degree(v),
            expected: 4,
        }
        .into());
    }
    let wheel = t.link_cycle(v)?;
    let mut out = Wheel4Counts {
        first_pair: 0,
        second_pair: 0,
        both: 0,
    };
    for_each_rim_coloring(t, &wheel, |rc, ext| {
        let a = rc[0] == rc[2];
        let b = rc[1] == rc[3];
        out.first_pair += if a { ext } else { 0 };
        out.second_pair += if b { ext } else { 0 };
        out.both += if a && b { ext } else { 0 };
    });
    Ok(out)
}

/// Colors per original label (1..=4); `None` where a label is not present
/// at that level of the reduction.
pub type LabelColors = Vec<Option<u8>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum Step {
    /// Direct coloring of a graph on at most four vertices.
    BaseCase { colors: LabelColors },
    /// A degree-3 vertex (its label set) was deleted.
    Degree3Delete { removed: Vec<usize>, neighbors: Vec<usize> },
    /// The reduction continued in a 4-wheel contraction; `added` edges were
    /// inserted to make it a triangulation again.
    Theorem1Lift {
        removed: Vec<usize>,
        rim: Vec<usize>,
        branch: u8,
        merged: [usize; 2],
        added: usize,
    },
    /// A coloring of a 5-wheel contraction whose funnel is not rainbow.
    Theorem2Lift {
        removed: Vec<usize>,
        rim: Vec<usize>,
        bracket: u8,
        merged: [usize; 2],
        funnel: Funnel,
        colors: LabelColors,
    },
    /// Exhaustive search after every 5-wheel contraction was rainbow-only.
    FallbackExhaustive { colors: LabelColors },
}

impl Step {
    fn terminal_colors(&self) -> Option<&LabelColors> {
        match self {
            Step::BaseCase { colors } | Step::FallbackExhaustive { colors } => Some(colors),
            Step::Theorem2Lift { colors, .. } => Some(colors),
            _ => None,
        }
    }
}

/// Labels are rim or neighbor representatives (smallest original label of
/// each vertex); `removed` lists every label merged into the deleted vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColoringCertificate {
    /// Color of each vertex of the input, in `1..=4`.
    pub coloring: Vec<u8>,
    /// Reductions from the input downward; the last step is terminal.
    pub trace: Vec<Step>,
    pub fallback: bool,
}

impl ColoringCertificate {
    /// Replays the trace from the terminal step upward. Every lift gives the
    /// removed vertex the smallest color missing from its neighbors.
    pub fn replay(&self, order: usize) -> Result<Vec<u8>, WheelError> {
        let bad = |m: String| WheelError::Certificate(m);
        let (last, lifts) = self.trace.split_last().ok_or_else(|| bad("empty trace".into()))?;
        let mut colors = last
            .terminal_colors()
            .ok_or_else(|| bad("trace does not end in a terminal step".into()))?
            .clone();
        if colors.len() != order {
            return Err(bad(format!("terminal coloring covers {} labels, expected {order}", colors.len())));
        }
        // A 5-wheel step carries the coloring of the contraction and still
        // lifts its own center.
        for step in lifts.iter().chain(std::iter::once(last)).rev() {
            let (removed, around) = match step {
                Step::Degree3Delete { removed, neighbors } => (removed, neighbors),
                Step::Theorem1Lift { removed, rim, .. } | Step::Theorem2Lift { removed, rim, .. } => (removed, rim),
                _ if std::ptr::eq(step, last) => continue,
                _ => return Err(bad("terminal step before the end of the trace".into())),
            };
            let mut used = 0u8;
            for &w in around {
                let c = colors
                    .get(w)
                    .copied()
                    .flatten()
                    .ok_or_else(|| bad(format!("neighbor label {w} uncolored")))?;
                used |= 1 << (c - 1);
            }
            let free = (1..=4u8)
                .find(|c| used & (1 << (c - 1)) == 0)
                .ok_or_else(|| bad(format!("no free color for {removed:?}")))?;
            for &l in removed {
                colors[l] = Some(free);
            }
        }
        colors
            .into_iter()
            .enumerate()
            .map(|(l, c)| c.ok_or_else(|| bad(format!("label {l} left uncolored"))))
            .collect()
    }

    /// The coloring is proper on `t` and the trace reproduces it.
    pub fn validate(&self, t: &Triangulation) -> Result<(), WheelError> {
        let n = t.order();
        if self.coloring.len() != n || self.coloring.iter().any(|c| !(1..=4).contains(c)) {
            return Err(WheelError::Certificate("coloring is not a map into 1..=4".into()));
        }
        if !t.graph().is_proper_coloring(&self.coloring) {
            return Err(WheelError::Certificate("coloring is not proper".into()));
        }
        if self.replay(n)? != self.coloring {
            return Err(WheelError::Certificate("replay does not reproduce the coloring".into()));
        }
        Ok(())
    }

    pub fn steps_of(&self, name: &str) -> usize {
        self.trace
            .iter()
            .filter(|s| {
                let kind = match s {
                    Step::BaseCase { .. } => "base-case",
                    Step::Degree3Delete { .. } => "degree3-delete",
                    Step::Theorem1Lift { .. } => "theorem1-lift",
                    Step::Theorem2Lift { .. } => "theorem2-lift",
                    Step::FallbackExhaustive { .. } => "fallback-exhaustive",
                };
                kind == name
            })
            .count()
    }
}

fn rep(g: &Graph, v: usize) -> usize {
    g.provenance(v)[0]
}

/// Paints every label of each vertex of `g` with `colors[v] + 1`.
fn paint(g: &Graph, colors: &[u8], labels: usize) -> LabelColors {
    let mut out = vec![None; labels];
    for v in 0..g.order() {
        for &l in g.provenance(v) {
            out[l] = Some(colors[v] + 1);
        }
    }
    out
}

/// Adds non-edges in lexicographic order whenever planarity survives. A
/// pair rejected once stays rejected, so one pass reaches a maximal planar
/// supergraph.
pub fn complete_to_triangulation(g: &Graph) -> Result<(Triangulation, usize), TriangulationError> {
    let n = g.order();
    let mut h = g.clone();
    let mut added = 0;
    for u in 0..n {
        for w in u + 1..n {
            if h.size() == 3 * n - 6 {
                break;
            }
            if !h.has_edge(u, w) {
                let candidate = h.add_edge(u, w)?;
                if is_planar(candidate.adjacency()) {
                    h = candidate;
                    added += 1;
                }
            }
        }
    }
    Ok((Triangulation::from_graph(&h)?, added))
}

/// First proper 4-coloring in backtracking order (colors 0..=3).
pub fn exhaustive_coloring(g: &Graph) -> Option<Vec<u8>> {
    fn go(g: &Graph, v: usize, colors: &mut Vec<u8>) -> bool {
        if v == g.order() {
            return true;
        }
        let used = g.neighbors(v).filter(|&w| w < v).fold(0u8, |m, w| m | (1 << colors[w]));
        for c in 0..4 {
            if used & (1 << c) == 0 {
                colors[v] = c;
                if go(g, v + 1, colors) {
                    return true;
                }
            }
        }
        false
    }
    let mut colors = vec![0; g.order()];
    go(g, 0, &mut colors).then_some(colors)
}

fn lowest_of_degree(t: &Triangulation, d: usize) -> usize {
    (0..t.order()).find(|&v| t.degree(v) == d).expect("vertex of minimum degree")
}

/// Tries the three 5-wheel contractions at `v` in bracket order and returns
/// the first coloring of some `Gi` whose funnel is not rainbow.
fn theorem2_step(t: &Triangulation, v: usize, labels: usize) -> Result<Option<Step>, WheelError> {
    let c = t.contract_wheel5(v)?;
    let g = t.graph();
    let rim_reps: Vec<usize> = c.wheel.rim.iter().map(|&x| rep(g, x)).collect();
    for (i, b) in crate::triangulation::BRACKETS.iter().enumerate() {
        let Some(gi) = c.contracted[i].graph() else { continue };
        let funnel = c.funnel(i + 1)?;
        let partitions = enumerate_partitions(gi)?;
        if let Some(p) = partitions.iter().find(|p| !p.separates(&funnel.vertices())) {
            let label_funnel = Funnel {
                u: rep(gi, funnel.u),
                x: rep(gi, funnel.x),
                y: rep(gi, funnel.y),
                z: rep(gi, funnel.z),
            };
            return Ok(Some(Step::Theorem2Lift {
                removed: g.provenance(v).to_vec(),
                rim: rim_reps.clone(),
                bracket: (i + 1) as u8,
                merged: [rim_reps[b.pair.0 - 1], rim_reps[b.pair.1 - 1]],
                funnel: label_funnel,
                colors: paint(gi, &p.coloring(gi.order()), labels),
            }));
        }
    }
    Ok(None)
}

/// Reduces by degree-3 deletion, 4-wheel contraction or 5-wheel funnel
/// search (in that order of preference, lowest vertex id first) and lifts
/// the resulting coloring back. Falls back to exhaustive search only when
/// every 5-wheel contraction is rainbow-only on its funnel.
pub fn four_color(t: &Triangulation) -> Result<ColoringCertificate, WheelError> {
    let labels = t.order();
    let mut cur = t.with_fresh_provenance();
    let mut trace = Vec::new();
    let mut fallback = false;
    loop {
        let g = cur.graph().clone();
        if g.order() <= 4 {
            let colors: Vec<u8> = (0..g.order() as u8).collect();
            trace.push(Step::BaseCase {
                colors: paint(&g, &colors, labels),
            });
            break;
        }
        match cur.min_degree() {
            3 => {
                let v = lowest_of_degree(&cur, 3);
                trace.push(Step::Degree3Delete {
                    removed: g.provenance(v).to_vec(),
                    neighbors: g.neighbors(v).map(|w| rep(&g, w)).collect(),
                });
                cur = cur.remove_degree3(v)?;
            }
            4 => {
                let v = lowest_of_degree(&cur, 4);
                let c = cur.contract_wheel4(v)?;
                let branch = if c.g1.is_marker() { 2 } else { 1 };
                let gi = c.branch(branch).graph().expect("a 4-wheel has at most one rim chord");
                let rim: Vec<usize> = c.wheel.rim.iter().map(|&x| rep(&g, x)).collect();
                let merged = if branch == 1 { [rim[0], rim[2]] } else { [rim[1], rim[3]] };
                let (next, added) = if gi.order() <= 4 {
                    (None, 0)
                } else {
                    let (tri, added) = complete_to_triangulation(gi)?;
                    (Some(tri), added)
                };
                trace.push(Step::Theorem1Lift {
                    removed: g.provenance(v).to_vec(),
                    rim,
                    branch: branch as u8,
                    merged,
                    added,
                });
                match next {
                    Some(tri) => cur = tri,
                    None => {
                        let colors: Vec<u8> = (0..gi.order() as u8).collect();
                        trace.push(Step::BaseCase {
                            colors: paint(gi, &colors, labels),
                        });
                        break;
                    }
                }
            }
            5 => {
                let mut step = None;
                for v in (0..cur.order()).filter(|&v| cur.degree(v) == 5) {
                    step = theorem2_step(&cur, v, labels)?;
                    if step.is_some() {
                        break;
                    }
                }
                match step {
                    Some(s) => trace.push(s),
                    None => {
                        fallback = true;
                        let colors = exhaustive_coloring(&g)
                            .ok_or_else(|| WheelError::Certificate("no 4-coloring exists".into()))?;
                        trace.push(Step::FallbackExhaustive {
                            colors: paint(&g, &colors, labels),
                        });
                    }
                }
                break;
            }
            d => return Err(WheelError::MinDegree { found: d, expected: 5 }),
        }
    }
    let mut cert = ColoringCertificate {
        coloring: Vec::new(),
        trace,
        fallback,
    };
    cert.coloring = cert.replay(labels)?;
    cert.validate(t)?;
    Ok(cert)
}

/// Per degree-5 vertex: for each contraction `Gi`, whether every partition
/// of `Gi` is rainbow on its funnel (`None` for an adjacent-pair marker).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FunnelFlags {
    pub vertex: usize,
    pub rim: Vec<usize>,
    pub rainbow_only: [Option<bool>; 3],
    /// No contraction offers a non-rainbow funnel coloring.
    pub obstruction: bool,
}

pub fn find_funnel_obstructions(t: &Triangulation) -> Result<Vec<FunnelFlags>, WheelError> {
    if t.min_degree() != 5 {
        return Err(WheelError::MinDegree {
            found: t.min_degree(),
            expected: 5,
        });
    }
    let mut out = Vec::new();
    for v in (0..t.order()).filter(|&v| t.degree(v) == 5) {
        let c = t.contract_wheel5(v)?;
        let mut flags = [None; 3];
        for (i, flag) in flags.iter_mut().enumerate() {
            if let Some(gi) = c.contracted[i].graph() {
                let funnel = c.funnel(i + 1)?;
                let partitions = enumerate_partitions(gi)?;
                *flag = Some(crate::analysis::is_4chromatic_funnel(gi, &partitions, &funnel)?);
            }
        }
        out.push(FunnelFlags {
            vertex: v,
            rim: c.wheel.rim.clone(),
            obstruction: flags.iter().all(|f| f.unwrap_or(true)),
            rainbow_only: flags,
        });
    }
    Ok(out)
}

/// One JSON-lines record of an obstruction sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionRecord {
    pub form: CanonicalForm,
    pub order: usize,
    pub vertices: Vec<FunnelFlags>,
    /// Every degree-5 vertex is an obstruction.
    pub all_obstructed: bool,
}

pub fn obstruction_record(t: &Triangulation) -> Result<ObstructionRecord, WheelError> {
    let vertices = find_funnel_obstructions(t)?;
    Ok(ObstructionRecord {
        form: t.canonical_form(),
        order: t.order(),
        all_obstructed: vertices.iter().all(|f| f.obstruction),
        vertices,
    })
}
