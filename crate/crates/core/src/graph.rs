//! Simple undirected labeled graphs on at most 64 vertices.
//!
//! Adjacency is stored as one `u64` bitset per vertex. Every vertex also
//! carries a provenance set: the labels of the root graph that were merged
//! into it by contractions. Deletion and contraction relabel densely, so ids
//! are always `0..n`, while provenance keeps the original names reachable.

use std::fmt;

use thiserror::Error;

use crate::canon::{canonical_form, CanonicalForm};

/// Largest order a [`Graph`] can hold.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("order {0} exceeds the supported maximum of {MAX_ORDER}")]
    TooLarge(usize),
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    OutOfRange { vertex: usize, order: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertices must be distinct, got {0} twice")]
    SamePair(usize),
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),
}

/// Iterator over the set bits of a `u64`, lowest first.
#[derive(Clone, Copy)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Removes bit `v` and shifts every higher bit down by one.
#[inline]
pub(crate) fn squeeze_bit(set: u64, v: usize) -> u64 {
    let low = set & low_mask(v);
    let high = if v + 1 >= 64 { 0 } else { set >> (v + 1) };
    low | (high << v)
}

/// Result of identifying two vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContractionOutcome {
    Graph(Graph),
    /// The two vertices were adjacent; no proper coloring can give them the
    /// same color, so this stands for the zero-coloring case.
    AdjacentPair,
}

impl ContractionOutcome {
    pub fn graph(&self) -> Option<&Graph> {
        match self {
            ContractionOutcome::Graph(g) => Some(g),
            ContractionOutcome::AdjacentPair => None,
        }
    }

    pub fn into_graph(self) -> Option<Graph> {
        match self {
            ContractionOutcome::Graph(g) => Some(g),
            ContractionOutcome::AdjacentPair => None,
        }
    }

    pub fn is_marker(&self) -> bool {
        matches!(self, ContractionOutcome::AdjacentPair)
    }

    /// Adds an edge between the vertices holding the two original labels.
    /// Markers stay markers.
    pub fn add_edge_by_label(&self, a: usize, b: usize) -> Result<ContractionOutcome, GraphError> {
        match self {
            ContractionOutcome::AdjacentPair => Ok(ContractionOutcome::AdjacentPair),
            ContractionOutcome::Graph(g) => {
                let u = g.id_of_label(a).ok_or(GraphError::OutOfRange {
                    vertex: a,
                    order: g.order(),
                })?;
                let w = g.id_of_label(b).ok_or(GraphError::OutOfRange {
                    vertex: b,
                    order: g.order(),
                })?;
                Ok(ContractionOutcome::Graph(g.add_edge(u, w)?))
            }
        }
    }
}

impl From<Graph> for ContractionOutcome {
    fn from(g: Graph) -> Self {
        ContractionOutcome::Graph(g)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<u64>,
    provenance: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.order())
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate pairs collapse.
    pub fn build(order: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        if order > MAX_ORDER {
            return Err(GraphError::TooLarge(order));
        }
        let mut adj = vec![0u64; order];
        for &(u, w) in edges {
            for x in [u, w] {
                if x >= order {
                    return Err(GraphError::OutOfRange { vertex: x, order });
                }
            }
            if u == w {
                return Err(GraphError::Loop(u));
            }
            adj[u] |= bit(w);
            adj[w] |= bit(u);
        }
        Ok(Graph::from_adjacency_unchecked(adj))
    }

    pub fn empty(order: usize) -> Graph {
        assert!(order <= MAX_ORDER);
        Graph::from_adjacency_unchecked(vec![0; order])
    }

    pub fn complete(order: usize) -> Graph {
        assert!(order <= MAX_ORDER);
        let full = low_mask(order);
        Graph::from_adjacency_unchecked((0..order).map(|v| full & !bit(v)).collect())
    }

    pub fn cycle(order: usize) -> Graph {
        let edges: Vec<_> = (0..order).map(|i| (i, (i + 1) % order)).collect();
        Graph::build(order, &edges).expect("cycle")
    }

    /// Wraps raw bitset rows. Caller guarantees symmetry and no loops.
    pub(crate) fn from_adjacency_unchecked(adj: Vec<u64>) -> Graph {
        let provenance = (0..adj.len()).map(|v| vec![v]).collect();
        let g = Graph { adj, provenance };
        debug_assert!(g.check_symmetric());
        g
    }

    /// Builds from bitset rows, validating symmetry and loops.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Graph, GraphError> {
        let n = adj.len();
        if n > MAX_ORDER {
            return Err(GraphError::TooLarge(n));
        }
        for (v, &row) in adj.iter().enumerate() {
            if row & bit(v) != 0 {
                return Err(GraphError::Loop(v));
            }
            if row & !low_mask(n) != 0 {
                return Err(GraphError::OutOfRange {
                    vertex: 63 - row.leading_zeros() as usize,
                    order: n,
                });
            }
            for w in Bits(row) {
                if adj[w] & bit(v) == 0 {
                    return Err(GraphError::NotAnEdge(w, v));
                }
            }
        }
        Ok(Graph::from_adjacency_unchecked(adj))
    }

    fn check_symmetric(&self) -> bool {
        self.adj.iter().enumerate().all(|(v, &row)| {
            row & bit(v) == 0 && Bits(row).all(|w| w < self.adj.len() && self.adj[w] & bit(v) != 0)
        })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn neighbor_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        Bits(self.adj[v])
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.order()).map(|v| self.degree(v)).min()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, w: usize) -> bool {
        u < self.order() && w < self.order() && self.adj[u] & bit(w) != 0
    }

    /// Edges as `(u, w)` with `u < w`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for u in 0..self.order() {
            for w in Bits(self.adj[u] & !low_mask(u + 1)) {
                out.push((u, w));
            }
        }
        out
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<_> = (0..self.order()).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    /// Original labels merged into `v`, sorted ascending.
    pub fn provenance(&self, v: usize) -> &[usize] {
        &self.provenance[v]
    }

    /// The vertex whose provenance contains `label`.
    pub fn id_of_label(&self, label: usize) -> Option<usize> {
        self.provenance.iter().position(|p| p.binary_search(&label).is_ok())
    }

    /// Same graph with provenance reset to `{id}` for every vertex.
    pub fn with_fresh_provenance(&self) -> Graph {
        Graph::from_adjacency_unchecked(self.adj.clone())
    }

    pub(crate) fn with_provenance(mut self, provenance: Vec<Vec<usize>>) -> Graph {
        assert_eq!(provenance.len(), self.adj.len());
        self.provenance = provenance;
        self
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.order() {
            Ok(())
        } else {
            Err(GraphError::OutOfRange {
                vertex: v,
                order: self.order(),
            })
        }
    }

    pub fn delete_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        let adj = self
            .adj
            .iter()
            .enumerate()
            .filter(|&(u, _)| u != v)
            .map(|(_, &row)| squeeze_bit(row, v))
            .collect();
        let mut provenance = self.provenance.clone();
        provenance.remove(v);
        Ok(Graph { adj, provenance })
    }

    /// Identifies `u` and `w`. The merged vertex takes the smaller id.
    pub fn contract_pair(&self, u: usize, w: usize) -> Result<ContractionOutcome, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(w)?;
        if u == w {
            return Err(GraphError::SamePair(u));
        }
        if self.has_edge(u, w) {
            return Ok(ContractionOutcome::AdjacentPair);
        }
        Ok(ContractionOutcome::Graph(self.merge(u.min(w), u.max(w))))
    }

    /// Contracts the edge `(u, w)`, discarding it.
    pub fn contract_edge(&self, u: usize, w: usize) -> Result<Graph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(w)?;
        if !self.has_edge(u, w) {
            return Err(GraphError::NotAnEdge(u, w));
        }
        Ok(self.merge(u.min(w), u.max(w)))
    }

    /// Merges `hi` into `lo` (`lo < hi`), dropping any `lo`–`hi` edge.
    fn merge(&self, lo: usize, hi: usize) -> Graph {
        let mut adj = self.adj.clone();
        let merged = (adj[lo] | adj[hi]) & !bit(lo) & !bit(hi);
        adj[lo] = merged;
        for w in Bits(merged) {
            adj[w] = (adj[w] & !bit(hi)) | bit(lo);
        }
        adj.remove(hi);
        for row in adj.iter_mut() {
            *row = squeeze_bit(*row, hi);
        }
        let mut provenance = self.provenance.clone();
        let taken = provenance.remove(hi);
        provenance[lo].extend(taken);
        provenance[lo].sort_unstable();
        Graph { adj, provenance }
    }

    /// Adds the edge `u`–`w`; a no-op when it already exists.
    pub fn add_edge(&self, u: usize, w: usize) -> Result<Graph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(w)?;
        if u == w {
            return Err(GraphError::SamePair(u));
        }
        let mut g = self.clone();
        g.adj[u] |= bit(w);
        g.adj[w] |= bit(u);
        Ok(g)
    }

    pub fn remove_edge(&self, u: usize, w: usize) -> Result<Graph, GraphError> {
        if !self.has_edge(u, w) {
            return Err(GraphError::NotAnEdge(u, w));
        }
        let mut g = self.clone();
        g.adj[u] &= !bit(w);
        g.adj[w] &= !bit(u);
        Ok(g)
    }

    /// Subgraph induced by `mask`, relabeled densely in id order.
    pub fn induced(&self, mask: u64) -> Graph {
        let keep: Vec<usize> = Bits(mask & low_mask(self.order())).collect();
        let adj = induced_rows(&self.adj, &keep);
        let provenance = keep.iter().map(|&v| self.provenance[v].clone()).collect();
        Graph { adj, provenance }
    }

    /// Applies a permutation: vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.order());
        let mut adj = vec![0u64; self.order()];
        let mut provenance = vec![Vec::new(); self.order()];
        for v in 0..self.order() {
            adj[perm[v]] = Bits(self.adj[v]).fold(0, |acc, w| acc | bit(perm[w]));
            provenance[perm[v]] = self.provenance[v].clone();
        }
        Graph { adj, provenance }
    }

    /// True iff some `k` vertices are pairwise adjacent.
    pub fn contains_clique(&self, k: usize) -> bool {
        assert!(k >= 1, "clique size must be positive");
        fn grow(adj: &[u64], cand: u64, need: usize) -> bool {
            if need == 0 {
                return true;
            }
            if (cand.count_ones() as usize) < need {
                return false;
            }
            let mut rest = cand;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if grow(adj, rest & adj[v], need - 1) {
                    return true;
                }
            }
            false
        }
        grow(&self.adj, low_mask(self.order()), k)
    }

    pub fn is_connected(&self) -> bool {
        self.order() == 0 || component_of(&self.adj, 0, low_mask(self.order())) == low_mask(self.order())
    }

    pub fn is_complete(&self) -> bool {
        let n = self.order();
        self.size() == n * n.saturating_sub(1) / 2
    }

    /// Whether `mask` is an independent set.
    pub fn is_independent(&self, mask: u64) -> bool {
        Bits(mask).all(|v| self.adj[v] & mask == 0)
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        canonical_form(&self.adj)
    }

    /// Whether `colors` (one entry per vertex) is a proper coloring.
    pub fn is_proper_coloring(&self, colors: &[u8]) -> bool {
        colors.len() == self.order() && self.edges().iter().all(|&(u, w)| colors[u] != colors[w])
    }
}

/// Vertices reachable from `start` inside `within`.
pub(crate) fn component_of(adj: &[u64], start: usize, within: u64) -> u64 {
    let mut seen = bit(start) & within;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for v in Bits(frontier) {
            next |= adj[v];
        }
        next &= within & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

/// Rows of the subgraph induced on `keep` (ascending ids), relabeled densely.
pub(crate) fn induced_rows(adj: &[u64], keep: &[usize]) -> Vec<u64> {
    let mut index = [usize::MAX; 64];
    for (i, &v) in keep.iter().enumerate() {
        index[v] = i;
    }
    let mask = keep.iter().fold(0u64, |m, &v| m | bit(v));
    keep.iter()
        .map(|&v| Bits(adj[v] & mask).fold(0u64, |acc, w| acc | bit(index[w])))
        .collect()
}
