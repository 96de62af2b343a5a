//! Maximal planar graphs with an explicit rotation system.
//!
//! Rotations are stored so that for every face `(v, a, b)` read around `v`,
//! `b` follows `a` in the rotation of `v`. Tracing the dart `u -> w` then
//! continues with `w -> pred_w(u)`.

mod formats;
mod generate;
mod ops;

pub mod catalog;

pub use formats::{read_adjlist, read_planar_code, write_adjlist, write_planar_code, FormatError, PLANAR_CODE_HEADER};
pub use generate::{generate_all, generate_all_with, GenerationReport, SplitOrder, MAX_GENERATION_ORDER};
pub use ops::{Extension, Wheel4Contraction, Wheel5Contraction, BRACKETS};

use thiserror::Error;

use crate::canon::CanonicalForm;
use crate::graph::{bit, Bits, Graph, GraphError};
use crate::planarity::is_planar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriangulationError {
    #[error("graph is not planar")]
    NonPlanar,
    #[error("planar but not maximal: {edges} edges, a triangulation of order {order} needs {expected}")]
    NotMaximal {
        order: usize,
        edges: usize,
        expected: usize,
    },
    #[error("a triangulation needs at least {min} vertices, got {order}")]
    TooSmall { order: usize, min: usize },
    #[error("order {order} outside supported range {min}..={max}")]
    OrderOutOfRange { order: usize, min: usize, max: usize },
    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),
    #[error("({0}, {1}, {2}) is not a face")]
    NotAFace(usize, usize, usize),
    #[error("vertex {vertex} has degree {degree}, expected {expected}")]
    WrongDegree {
        vertex: usize,
        degree: usize,
        expected: usize,
    },
    #[error("illegal split: {0}")]
    IllegalSplit(String),
    #[error("contraction at rim pair produced an adjacent pair")]
    MarkerContraction,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A wheel: a center and its link cycle.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Wheel {
    pub center: usize,
    pub rim: Vec<usize>,
}

impl Wheel {
    /// All labelings of the rim: every starting point in both directions.
    pub fn relabelings(&self) -> Vec<Vec<usize>> {
        let k = self.rim.len();
        let mut out = Vec::with_capacity(2 * k);
        for s in 0..k {
            out.push((0..k).map(|i| self.rim[(s + i) % k]).collect());
            out.push((0..k).map(|i| self.rim[(s + k - i) % k]).collect());
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    graph: Graph,
    rotation: Vec<Vec<usize>>,
}

impl Triangulation {
    /// Embeds a maximal planar graph. For `n >= 4` the faces are exactly the
    /// triangles whose removal leaves the graph connected; they are oriented
    /// coherently and checked to close up into a sphere.
    pub fn from_graph(graph: &Graph) -> Result<Triangulation, TriangulationError> {
        let n = graph.order();
        if n < 3 {
            return Err(TriangulationError::TooSmall { order: n, min: 3 });
        }
        let m = graph.size();
        let expected = 3 * n - 6;
        if m > expected {
            return Err(TriangulationError::NonPlanar);
        }
        if m < expected {
            return Err(if is_planar(graph.adjacency()) {
                TriangulationError::NotMaximal { order: n, edges: m, expected }
            } else {
                TriangulationError::NonPlanar
            });
        }
        if n == 3 {
            let rotation = vec![vec![1, 2], vec![0, 2], vec![0, 1]];
            return Ok(Triangulation { graph: graph.clone(), rotation });
        }
        let adj = graph.adjacency();
        let all = crate::graph::low_mask(n);
        let mut faces: Vec<[usize; 3]> = Vec::new();
        for a in 0..n {
            for b in Bits(adj[a] & !crate::graph::low_mask(a + 1)) {
                for c in Bits(adj[a] & adj[b] & !crate::graph::low_mask(b + 1)) {
                    let rest = all & !(bit(a) | bit(b) | bit(c));
                    let start = rest.trailing_zeros() as usize;
                    if crate::graph::component_of(adj, start, rest) == rest {
                        faces.push([a, b, c]);
                    }
                }
            }
        }
        if faces.len() != 2 * n - 4 {
            return Err(TriangulationError::NonPlanar);
        }
        let oriented = orient(&faces).ok_or(TriangulationError::NonPlanar)?;
        let rotation = rotation_from_faces(graph, &oriented).ok_or(TriangulationError::NonPlanar)?;
        let t = Triangulation { graph: graph.clone(), rotation };
        t.validate().map_err(|_| TriangulationError::NonPlanar)?;
        Ok(t)
    }

    /// Wraps a graph and rotation system after validating the triangulation
    /// invariants.
    pub fn from_rotation(graph: Graph, rotation: Vec<Vec<usize>>) -> Result<Triangulation, TriangulationError> {
        let t = Triangulation { graph, rotation };
        t.validate()?;
        Ok(t)
    }

    pub(crate) fn from_parts_unchecked(graph: Graph, rotation: Vec<Vec<usize>>) -> Triangulation {
        let t = Triangulation { graph, rotation };
        debug_assert_eq!(t.validate(), Ok(()));
        t
    }

    /// Checks rotation/adjacency agreement, |E| = 3n - 6, and that every
    /// traced face is a triangle.
    pub fn validate(&self) -> Result<(), TriangulationError> {
        let n = self.graph.order();
        let bad = |s: String| Err(TriangulationError::InvalidRotation(s));
        if n < 3 {
            return Err(TriangulationError::TooSmall { order: n, min: 3 });
        }
        if self.rotation.len() != n {
            return bad(format!("{} rotations for {} vertices", self.rotation.len(), n));
        }
        for v in 0..n {
            let mask = self.rotation[v].iter().fold(0u64, |m, &w| m | bit(w));
            if mask != self.graph.neighbor_mask(v) || self.rotation[v].len() != self.graph.degree(v) {
                return bad(format!("rotation at {v} disagrees with its neighborhood"));
            }
        }
        let m = self.graph.size();
        if m != 3 * n - 6 {
            return Err(TriangulationError::NotMaximal {
                order: n,
                edges: m,
                expected: 3 * n - 6,
            });
        }
        if !self.graph.is_connected() {
            return bad("disconnected".into());
        }
        let faces = self.trace_faces();
        if faces.iter().any(|f| f.len() != 3) {
            return bad("face of length other than 3".into());
        }
        if faces.len() != 2 * n - 4 {
            return bad(format!("{} faces, expected {}", faces.len(), 2 * n - 4));
        }
        Ok(())
    }

    /// Traces every face of the rotation system, each as its dart cycle.
    pub fn trace_faces(&self) -> Vec<Vec<usize>> {
        let n = self.graph.order();
        let mut used: Vec<u64> = vec![0; n];
        let mut faces = Vec::new();
        for u in 0..n {
            for &w in &self.rotation[u] {
                if used[u] & bit(w) != 0 {
                    continue;
                }
                let mut face = Vec::new();
                let (mut a, mut b) = (u, w);
                while used[a] & bit(b) == 0 {
                    used[a] |= bit(b);
                    face.push(a);
                    let next = self.pred(b, a);
                    a = b;
                    b = next;
                    if face.len() > 2 * self.graph.size() {
                        break;
                    }
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Faces as oriented triples.
    pub fn faces(&self) -> Vec<[usize; 3]> {
        self.trace_faces()
            .into_iter()
            .map(|f| [f[0], f[1], f[2]])
            .collect()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.graph.min_degree().unwrap_or(0)
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        self.graph.canonical_form()
    }

    fn position(&self, v: usize, w: usize) -> usize {
        self.rotation[v]
            .iter()
            .position(|&x| x == w)
            .unwrap_or_else(|| panic!("{w} is not a neighbor of {v}"))
    }

    /// Neighbor following `w` in the rotation at `v`.
    pub fn succ(&self, v: usize, w: usize) -> usize {
        let r = &self.rotation[v];
        r[(self.position(v, w) + 1) % r.len()]
    }

    /// Neighbor preceding `w` in the rotation at `v`.
    pub fn pred(&self, v: usize, w: usize) -> usize {
        let r = &self.rotation[v];
        r[(self.position(v, w) + r.len() - 1) % r.len()]
    }

    /// The oriented face on `{a, b, c}`, if those three vertices bound one.
    pub fn oriented_face(&self, a: usize, b: usize, c: usize) -> Option<[usize; 3]> {
        let n = self.order();
        if a >= n || b >= n || c >= n || a == b || b == c || a == c {
            return None;
        }
        if !self.graph.has_edge(a, b) || !self.graph.has_edge(a, c) || !self.graph.has_edge(b, c) {
            return None;
        }
        if self.succ(a, b) == c && self.succ(b, c) == a {
            Some([a, b, c])
        } else if self.succ(a, c) == b && self.succ(c, b) == a {
            Some([a, c, b])
        } else {
            None
        }
    }

    /// Link cycle of `v`, starting at the rim vertex with the lowest
    /// original label and turning toward the smaller of its two rim
    /// neighbors.
    pub fn link_cycle(&self, v: usize) -> Result<Wheel, TriangulationError> {
        let n = self.order();
        if n <= 3 {
            return Err(TriangulationError::TooSmall { order: n, min: 4 });
        }
        if v >= n {
            return Err(GraphError::OutOfRange { vertex: v, order: n }.into());
        }
        let label = |x: usize| self.graph.provenance(x)[0];
        let r = &self.rotation[v];
        let k = r.len();
        let start = (0..k).min_by_key(|&i| label(r[i])).expect("non-empty rotation");
        let forward = label(r[(start + 1) % k]) <= label(r[(start + k - 1) % k]);
        let rim = (0..k)
            .map(|i| {
                if forward {
                    r[(start + i) % k]
                } else {
                    r[(start + k - i) % k]
                }
            })
            .collect();
        Ok(Wheel { center: v, rim })
    }

    /// Whether adding any edge would break planarity (diagnostic helper for
    /// plain graphs produced by wheel contractions).
    pub fn is_maximal_planar(graph: &Graph) -> bool {
        Triangulation::from_graph(graph).is_ok()
    }

    /// Same triangulation with vertex `v` renamed to `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Triangulation {
        let graph = self.graph.permute(perm);
        let mut rotation = vec![Vec::new(); self.order()];
        for v in 0..self.order() {
            rotation[perm[v]] = self.rotation[v].iter().map(|&w| perm[w]).collect();
        }
        Triangulation { graph, rotation }
    }

    /// Relabels by the canonical labeling of the underlying graph.
    pub fn canonical(&self) -> (CanonicalForm, Triangulation) {
        let (form, labeling) = crate::canon::canonical_labeling(self.graph.adjacency());
        let mut t = self.permute(&labeling);
        t.graph = t.graph.with_fresh_provenance();
        (form, t)
    }

    /// Same embedding with provenance reset so that labels equal ids.
    pub fn with_fresh_provenance(&self) -> Triangulation {
        Triangulation {
            graph: self.graph.with_fresh_provenance(),
            rotation: self.rotation.clone(),
        }
    }
}

/// Orients a closed triangle list coherently: across every shared edge the
/// two incident faces traverse it in opposite directions.
fn orient(faces: &[[usize; 3]]) -> Option<Vec<[usize; 3]>> {
    use std::collections::HashMap;
    let mut by_edge: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, f) in faces.iter().enumerate() {
        for k in 0..3 {
            let (a, b) = (f[k], f[(k + 1) % 3]);
            by_edge.entry((a.min(b), a.max(b))).or_default().push(i);
        }
    }
    if by_edge.values().any(|v| v.len() != 2) {
        return None;
    }
    let mut oriented: Vec<Option<[usize; 3]>> = vec![None; faces.len()];
    oriented[0] = Some(faces[0]);
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let f = oriented[i].expect("queued faces are oriented");
        for k in 0..3 {
            let (a, b) = (f[k], f[(k + 1) % 3]);
            for &j in &by_edge[&(a.min(b), a.max(b))] {
                if j == i {
                    continue;
                }
                let g = faces[j];
                let c = g.iter().copied().find(|&x| x != a && x != b).expect("triangle");
                // The neighbor must traverse b -> a.
                let want = [b, a, c];
                match oriented[j] {
                    None => {
                        oriented[j] = Some(want);
                        queue.push_back(j);
                    }
                    Some(h) => {
                        if !same_cycle(&h, &want) {
                            return None;
                        }
                    }
                }
            }
        }
    }
    oriented.into_iter().collect()
}

fn same_cycle(a: &[usize; 3], b: &[usize; 3]) -> bool {
    (0..3).any(|s| (0..3).all(|i| a[(s + i) % 3] == b[i]))
}

/// Rotation at each vertex from oriented faces: in face `(v, a, b)`, `b`
/// follows `a`.
fn rotation_from_faces(graph: &Graph, faces: &[[usize; 3]]) -> Option<Vec<Vec<usize>>> {
    let n = graph.order();
    let mut succ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for f in faces {
        for k in 0..3 {
            succ[f[k]].push((f[(k + 1) % 3], f[(k + 2) % 3]));
        }
    }
    let mut rotation = Vec::with_capacity(n);
    for v in 0..n {
        let map = &succ[v];
        let d = graph.degree(v);
        if map.len() != d {
            return None;
        }
        let start = map.iter().map(|&(a, _)| a).min()?;
        let mut cyc = vec![start];
        let mut x = start;
        loop {
            let next = map.iter().find(|&&(a, _)| a == x)?.1;
            if next == start {
                break;
            }
            if cyc.len() >= d {
                return None;
            }
            cyc.push(next);
            x = next;
        }
        if cyc.len() != d {
            return None;
        }
        rotation.push(cyc);
    }
    Some(rotation)
}
