//! 4-coloring partitions and the classification built on them.
//!
//! A partition is an unordered family of at most four independent classes
//! covering the vertex set. Partitions are generated as restricted-growth
//! strings: each vertex joins an existing class or opens the next one, so
//! every unordered partition appears exactly once and no color symmetry has
//! to be quotiented out afterwards.

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{bit, low_mask, Bits, Graph};

/// Largest order accepted by the partition enumerator.
pub const MAX_PARTITION_ORDER: usize = 40;

const COLORS: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("partition enumeration limited to {max} vertices, got {order}")]
    TooLarge { order: usize, max: usize },
    #[error("funnel {funnel:?} is missing edge {missing:?}")]
    InvalidFunnel { funnel: Funnel, missing: (usize, usize) },
    #[error("funnel {funnel:?} is out of range or repeats a vertex")]
    MalformedFunnel { funnel: Funnel },
}

/// A vertex `u` joined to the apex `x` of a triangle `x, y, z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Funnel {
    pub u: usize,
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

impl Funnel {
    pub fn vertices(&self) -> [usize; 4] {
        [self.u, self.x, self.y, self.z]
    }

    pub fn validate(&self, g: &Graph) -> Result<(), AnalysisError> {
        let vs = self.vertices();
        let distinct = (0..4).all(|i| (i + 1..4).all(|j| vs[i] != vs[j]));
        if !distinct || vs.iter().any(|&v| v >= g.order()) {
            return Err(AnalysisError::MalformedFunnel { funnel: *self });
        }
        for (a, b) in [(self.u, self.x), (self.x, self.y), (self.x, self.z), (self.y, self.z)] {
            if !g.has_edge(a, b) {
                return Err(AnalysisError::InvalidFunnel {
                    funnel: *self,
                    missing: (a, b),
                });
            }
        }
        Ok(())
    }
}

/// Classes as bitmasks, ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorPartition {
    classes: Vec<u64>,
}

impl ColorPartition {
    fn from_masks(masks: &[u64]) -> ColorPartition {
        let mut classes: Vec<u64> = masks.iter().copied().filter(|&m| m != 0).collect();
        classes.sort_by_key(|m| m.trailing_zeros());
        ColorPartition { classes }
    }

    /// Partition induced by a coloring (one entry per vertex).
    pub fn from_coloring(colors: &[u8]) -> ColorPartition {
        let mut masks = [0u64; 256];
        for (v, &c) in colors.iter().enumerate() {
            masks[c as usize] |= bit(v);
        }
        ColorPartition::from_masks(&masks)
    }

    pub fn masks(&self) -> &[u64] {
        &self.classes
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        self.classes.iter().map(|&m| Bits(m).collect()).collect()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.classes
            .iter()
            .position(|&m| m & bit(v) != 0)
            .unwrap_or_else(|| panic!("vertex {v} not covered"))
    }

    /// Coloring with class `i` painted `i` (0-based).
    pub fn coloring(&self, order: usize) -> Vec<u8> {
        (0..order).map(|v| self.class_of(v) as u8).collect()
    }

    /// Whether the given vertices lie in pairwise different classes.
    pub fn separates(&self, vertices: &[usize]) -> bool {
        let mut seen = 0u64;
        for &v in vertices {
            let c = bit(self.class_of(v));
            if seen & c != 0 {
                return false;
            }
            seen |= c;
        }
        true
    }

    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.classes.len() <= COLORS
            && self.classes.iter().fold(0, |a, &m| a | m) == low_mask(g.order())
            && self.classes.iter().map(|m| m.count_ones()).sum::<u32>() as usize == g.order()
            && self.classes.iter().all(|&m| g.is_independent(m))
    }
}

impl Serialize for ColorPartition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.classes().serialize(s)
    }
}

fn first_triangle(g: &Graph) -> Option<[usize; 3]> {
    let adj = g.adjacency();
    for a in 0..g.order() {
        for b in Bits(adj[a] & !low_mask(a + 1)) {
            if let Some(c) = Bits(adj[a] & adj[b] & !low_mask(b + 1)).next() {
                return Some([a, b, c]);
            }
        }
    }
    None
}

/// Anchor triangle first (if any), then repeatedly the vertex with the most
/// already-placed neighbors. Placing constrained vertices early keeps the
/// backtracking narrow.
fn anchored_order(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut order: Vec<usize> = first_triangle(g).map(|t| t.to_vec()).unwrap_or_default();
    let mut placed = order.iter().fold(0u64, |m, &v| m | bit(v));
    while order.len() < n {
        let v = Bits(low_mask(n) & !placed)
            .max_by_key(|&v| ((g.neighbor_mask(v) & placed).count_ones(), std::cmp::Reverse(v)))
            .expect("unplaced vertex");
        order.push(v);
        placed |= bit(v);
    }
    order
}

fn enumerate_in_order(g: &Graph, order: &[usize], limit: Option<usize>) -> Vec<ColorPartition> {
    fn go(
        adj: &[u64],
        order: &[usize],
        i: usize,
        masks: &mut [u64; COLORS],
        used: usize,
        out: &mut Vec<ColorPartition>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if i == order.len() {
            out.push(ColorPartition::from_masks(&masks[..used]));
            return;
        }
        let v = order[i];
        let open = if used < COLORS { used + 1 } else { used };
        for c in 0..open {
            if masks[c] & adj[v] == 0 {
                masks[c] |= bit(v);
                go(adj, order, i + 1, masks, used.max(c + 1), out, limit);
                masks[c] &= !bit(v);
            }
        }
    }
    let mut out = Vec::new();
    go(g.adjacency(), order, 0, &mut [0; COLORS], 0, &mut out, limit.unwrap_or(usize::MAX));
    out.sort();
    out
}

fn check_order(g: &Graph) -> Result<(), AnalysisError> {
    if g.order() > MAX_PARTITION_ORDER {
        return Err(AnalysisError::TooLarge {
            order: g.order(),
            max: MAX_PARTITION_ORDER,
        });
    }
    Ok(())
}

/// All partitions of `V(G)` into at most four independent classes, sorted.
/// A triangle, when present, is placed first so its vertices open classes
/// 0, 1, 2.
pub fn enumerate_partitions(g: &Graph) -> Result<Vec<ColorPartition>, AnalysisError> {
    check_order(g)?;
    Ok(enumerate_in_order(g, &anchored_order(g), None))
}

/// Same set, vertices taken in id order; used to cross-check the anchored
/// search.
pub fn enumerate_partitions_unanchored(g: &Graph) -> Result<Vec<ColorPartition>, AnalysisError> {
    check_order(g)?;
    let order: Vec<usize> = (0..g.order()).collect();
    Ok(enumerate_in_order(g, &order, None))
}

/// Up to `limit` partitions, in search order (then sorted).
pub fn partitions_up_to(g: &Graph, limit: usize) -> Result<Vec<ColorPartition>, AnalysisError> {
    check_order(g)?;
    Ok(enumerate_in_order(g, &anchored_order(g), Some(limit)))
}

/// `|C4(G)| * 24 = f(G, 4)`, valid whenever `G` contains a triangle (every
/// partition then has 3 or 4 classes, each giving `4 * 3 * 2` colorings).
pub fn partition_count_identity(g: &Graph, f4: &num_bigint::BigInt) -> Result<bool, AnalysisError> {
    let count = enumerate_partitions(g)?.len();
    Ok(num_bigint::BigInt::from(count) * 24 == *f4)
}

/// Lexicographically first four vertices lying in pairwise distinct classes
/// of every partition. Absent when there are no partitions or some partition
/// has at most three classes.
pub fn is_coordinated(g: &Graph, partitions: &[ColorPartition]) -> Option<[usize; 4]> {
    if partitions.is_empty() || partitions.iter().any(|p| p.num_classes() < COLORS) {
        return None;
    }
    let n = g.order();
    // apart[u]: vertices never sharing a class with u.
    let apart: Vec<u64> = (0..n)
        .map(|u| {
            partitions
                .iter()
                .fold(low_mask(n) & !bit(u), |acc, p| acc & !p.masks()[p.class_of(u)])
        })
        .collect();
    for a in 0..n {
        for b in Bits(apart[a] & !low_mask(a + 1)) {
            for c in Bits(apart[a] & apart[b] & !low_mask(b + 1)) {
                if let Some(d) = Bits(apart[a] & apart[b] & apart[c] & !low_mask(c + 1)).next() {
                    return Some([a, b, c, d]);
                }
            }
        }
    }
    None
}

/// True iff every partition puts the funnel's four vertices in four
/// distinct classes.
pub fn is_4chromatic_funnel(g: &Graph, partitions: &[ColorPartition], f: &Funnel) -> Result<bool, AnalysisError> {
    f.validate(g)?;
    Ok(partitions.iter().all(|p| p.separates(&f.vertices())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    NotFourColorable,
    NonCoordinated,
    Uniquely,
    QuasiUniquely,
    PseudoUniquely,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// The only partition.
    Partition { partition: ColorPartition },
    /// Four vertices separated by every partition.
    Coordinated { vertices: [usize; 4] },
    /// An induced subgraph with exactly one partition, and that partition.
    Subgraph {
        coordinated: [usize; 4],
        vertices: Vec<usize>,
        partition: ColorPartition,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    /// Largest induced subgraph examined by the quasi-uniqueness search;
    /// `None` when the search did not run.
    pub cap: Option<usize>,
    pub partitions: usize,
}

/// Subsets of `0..n` of size `k` in lexicographic order, as masks.
fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return false;
    }
    loop {
        if f(&idx) {
            return true;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
            if i == 0 {
                return false;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Smallest (then lexicographically first) proper induced subgraph of order
/// `4..=cap` with exactly one partition.
fn find_unique_subgraph(g: &Graph, cap: usize) -> Result<Option<(Vec<usize>, ColorPartition)>, AnalysisError> {
    let top = cap.min(g.order().saturating_sub(1));
    for k in 4..=top {
        let mut found = None;
        let mut error = None;
        for_each_subset(g.order(), k, &mut |vs| {
            let mask = vs.iter().fold(0u64, |m, &v| m | bit(v));
            match partitions_up_to(&g.induced(mask), 2) {
                Ok(ps) if ps.len() == 1 => {
                    let p = &ps[0];
                    // Map the subgraph's classes back to host ids.
                    let classes: Vec<u64> = p
                        .masks()
                        .iter()
                        .map(|&m| Bits(m).fold(0u64, |acc, i| acc | bit(vs[i])))
                        .collect();
                    found = Some((vs.to_vec(), ColorPartition::from_masks(&classes)));
                    true
                }
                Ok(_) => false,
                Err(e) => {
                    error = Some(e);
                    true
                }
            }
        });
        if let Some(e) = error {
            return Err(e);
        }
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Classification by partition count, coordination and a bounded search for
/// a uniquely 4-colorable induced subgraph. `cap` defaults to the order.
pub fn classify(g: &Graph, cap: Option<usize>) -> Result<Classification, AnalysisError> {
    let partitions = enumerate_partitions(g)?;
    let count = partitions.len();
    let done = |verdict, witness| Classification {
        verdict,
        witness,
        cap: None,
        partitions: count,
    };
    match count {
        0 => return Ok(done(Verdict::NotFourColorable, None)),
        1 => {
            return Ok(done(
                Verdict::Uniquely,
                Some(Witness::Partition {
                    partition: partitions[0].clone(),
                }),
            ))
        }
        _ => {}
    }
    let Some(tuple) = is_coordinated(g, &partitions) else {
        return Ok(done(Verdict::NonCoordinated, None));
    };
    let cap = cap.unwrap_or(g.order());
    Ok(match find_unique_subgraph(g, cap)? {
        Some((vertices, partition)) => Classification {
            verdict: Verdict::QuasiUniquely,
            witness: Some(Witness::Subgraph {
                coordinated: tuple,
                vertices,
                partition,
            }),
            cap: Some(cap),
            partitions: count,
        },
        None => Classification {
            verdict: Verdict::PseudoUniquely,
            witness: Some(Witness::Coordinated { vertices: tuple }),
            cap: Some(cap),
            partitions: count,
        },
    })
}
