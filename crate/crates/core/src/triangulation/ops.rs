//! Wheel contractions and their inverse extensions.
//!
//! Rim positions are 1-based in the tables below, matching the usual
//! `v1..v5` naming of a wheel's rim.

use serde::Serialize;

use super::{Triangulation, TriangulationError, Wheel};
use crate::analysis::Funnel;
use crate::graph::{ContractionOutcome, Graph};

/// The three brackets of the 5-wheel identity: contracted rim pair, chords
/// added for the augmented graph, and the funnel `(u, merged, y, z)`.
pub struct Bracket {
    pub pair: (usize, usize),
    pub chords: &'static [(usize, usize)],
    pub funnel: (usize, usize, usize),
}

pub const BRACKETS: [Bracket; 3] = [
    Bracket {
        pair: (2, 5),
        chords: &[(1, 4), (1, 3)],
        funnel: (1, 3, 4),
    },
    Bracket {
        pair: (2, 4),
        chords: &[(3, 1), (3, 5)],
        funnel: (3, 1, 5),
    },
    Bracket {
        pair: (3, 5),
        chords: &[(1, 4)],
        funnel: (4, 1, 2),
    },
];

#[derive(Debug, Clone)]
pub struct Wheel4Contraction {
    pub wheel: Wheel,
    /// `(G - v) ∘ {v1, v3}`
    pub g1: ContractionOutcome,
    /// `(G - v) ∘ {v2, v4}`
    pub g2: ContractionOutcome,
}

impl Wheel4Contraction {
    pub fn branch(&self, i: usize) -> &ContractionOutcome {
        match i {
            1 => &self.g1,
            2 => &self.g2,
            _ => panic!("branch must be 1 or 2"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Wheel5Contraction {
    pub wheel: Wheel,
    /// `G1, G2, G3`
    pub contracted: [ContractionOutcome; 3],
    /// `G1 + {v1v4, v1v3}`, `G2 + {v3v1, v3v5}`, `G3 + {v1v4}`
    pub augmented: [ContractionOutcome; 3],
    /// Smallest provenance label of each rim vertex, in rim order.
    pub rim_labels: Vec<usize>,
}

impl Wheel5Contraction {
    /// Funnel `L_i` inside `G_i` (`i` in 1..=3), in the ids of `G_i`.
    pub fn funnel(&self, i: usize) -> Result<Funnel, TriangulationError> {
        let g = self.contracted[i - 1].graph().ok_or(TriangulationError::MarkerContraction)?;
        let b = &BRACKETS[i - 1];
        let at = |pos: usize| self.rim_labels[pos - 1];
        let id = |label: usize| g.id_of_label(label).expect("rim vertex survives contraction");
        Ok(Funnel {
            u: id(at(b.funnel.0)),
            x: id(at(b.pair.0)),
            y: id(at(b.funnel.1)),
            z: id(at(b.funnel.2)),
        })
    }
}

/// Result of an extension: the new triangulation, the new wheel center,
/// and the two vertices a contraction at that center must identify to
/// recover the host.
#[derive(Debug, Clone)]
pub struct Extension {
    pub triangulation: Triangulation,
    pub center: usize,
    pub split: (usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SplitMove {
    pub vertex: usize,
    pub p: usize,
    pub q: usize,
}

fn replace_one(list: &mut Vec<usize>, old: usize, new: &[usize]) {
    let i = list.iter().position(|&x| x == old).expect("neighbor present");
    list.splice(i..=i, new.iter().copied());
}

/// Rotation at `v` rotated so that it starts at `first`.
fn rotated_from(t: &Triangulation, v: usize, first: usize) -> Vec<usize> {
    let r = t.rotation(v);
    let i = r.iter().position(|&x| x == first).expect("neighbor present");
    r[i..].iter().chain(&r[..i]).copied().collect()
}

impl Triangulation {
    fn check_degree(&self, v: usize, expected: usize) -> Result<(), TriangulationError> {
        if v >= self.order() {
            return Err(crate::graph::GraphError::OutOfRange {
                vertex: v,
                order: self.order(),
            }
            .into());
        }
        let degree = self.degree(v);
        if degree != expected {
            return Err(TriangulationError::WrongDegree {
                vertex: v,
                degree,
                expected,
            });
        }
        Ok(())
    }

    /// `(G - v) ∘ {a, b}` for vertices `a, b` of `G` other than `v`; ids in
    /// the result follow the graph module's relabeling, labels follow
    /// provenance.
    pub fn contract_rim_pair(&self, v: usize, a: usize, b: usize) -> Result<ContractionOutcome, TriangulationError> {
        let g = self.graph().delete_vertex(v)?;
        let shift = |x: usize| if x > v { x - 1 } else { x };
        Ok(g.contract_pair(shift(a), shift(b))?)
    }

    /// Theorem-1 contractions at a degree-4 vertex, using the canonical rim.
    pub fn contract_wheel4(&self, v: usize) -> Result<Wheel4Contraction, TriangulationError> {
        self.check_degree(v, 4)?;
        let wheel = self.link_cycle(v)?;
        self.contract_wheel4_with_rim(wheel)
    }

    /// Same, for an explicit labeling of the rim.
    pub fn contract_wheel4_with_rim(&self, wheel: Wheel) -> Result<Wheel4Contraction, TriangulationError> {
        self.check_degree(wheel.center, 4)?;
        let r = &wheel.rim;
        let g1 = self.contract_rim_pair(wheel.center, r[0], r[2])?;
        let g2 = self.contract_rim_pair(wheel.center, r[1], r[3])?;
        Ok(Wheel4Contraction { wheel, g1, g2 })
    }

    /// Theorem-2 contractions at a degree-5 vertex, using the canonical rim.
    pub fn contract_wheel5(&self, v: usize) -> Result<Wheel5Contraction, TriangulationError> {
        self.check_degree(v, 5)?;
        let wheel = self.link_cycle(v)?;
        self.contract_wheel5_with_rim(wheel)
    }

    pub fn contract_wheel5_with_rim(&self, wheel: Wheel) -> Result<Wheel5Contraction, TriangulationError> {
        self.check_degree(wheel.center, 5)?;
        // Work on fresh labels so rim vertices can be found by label after
        // relabeling, then restore the caller's provenance.
        let fresh = self.with_fresh_provenance();
        let at = |pos: usize| wheel.rim[pos - 1];
        let mut contracted = Vec::with_capacity(3);
        let mut augmented = Vec::with_capacity(3);
        for b in &BRACKETS {
            let gi = fresh.contract_rim_pair(wheel.center, at(b.pair.0), at(b.pair.1))?;
            let mut ga = gi.clone();
            for &(x, y) in b.chords {
                ga = ga.add_edge_by_label(at(x), at(y))?;
            }
            contracted.push(self.restore_provenance(gi));
            augmented.push(self.restore_provenance(ga));
        }
        let rim_labels = wheel.rim.iter().map(|&x| self.graph().provenance(x)[0]).collect();
        Ok(Wheel5Contraction {
            wheel,
            rim_labels,
            contracted: contracted.try_into().expect("three brackets"),
            augmented: augmented.try_into().expect("three brackets"),
        })
    }

    fn restore_provenance(&self, outcome: ContractionOutcome) -> ContractionOutcome {
        match outcome {
            ContractionOutcome::AdjacentPair => ContractionOutcome::AdjacentPair,
            ContractionOutcome::Graph(g) => {
                let provenance = (0..g.order())
                    .map(|v| {
                        let mut labels: Vec<usize> = g
                            .provenance(v)
                            .iter()
                            .flat_map(|&id| self.graph().provenance(id).iter().copied())
                            .collect();
                        labels.sort_unstable();
                        labels
                    })
                    .collect();
                ContractionOutcome::Graph(g.with_provenance(provenance))
            }
        }
    }

    /// Funnels `L1, L2, L3` of the three contractions at a degree-5 vertex;
    /// an entry is an error when its contraction is an adjacent-pair marker.
    pub fn funnels_of_contraction(
        &self,
        v: usize,
    ) -> Result<[Result<Funnel, TriangulationError>; 3], TriangulationError> {
        let c = self.contract_wheel5(v)?;
        Ok([c.funnel(1), c.funnel(2), c.funnel(3)])
    }

    /// Inserts a degree-3 vertex into the face on `{a, b, c}`. The new vertex
    /// gets id `n`.
    pub fn extend_wheel3(&self, a: usize, b: usize, c: usize) -> Result<Triangulation, TriangulationError> {
        let [x, y, z] = self.oriented_face(a, b, c).ok_or(TriangulationError::NotAFace(a, b, c))?;
        let n = self.order();
        let mut rotation = self.rotations().to_vec();
        // Face (x, y, z) becomes (x, y, v), (y, z, v), (z, x, v).
        for (p, after) in [(x, y), (y, z), (z, x)] {
            let i = rotation[p].iter().position(|&w| w == after).unwrap();
            rotation[p].insert(i + 1, n);
        }
        rotation.push(vec![x, y, z]);
        let graph = self.extended_graph(&rotation);
        Ok(Triangulation::from_parts_unchecked(graph, rotation))
    }

    /// Graph for a rotation system that extends this one by new vertices.
    fn extended_graph(&self, rotation: &[Vec<usize>]) -> Graph {
        let mut edges = Vec::new();
        for (v, r) in rotation.iter().enumerate() {
            for &w in r {
                if v < w {
                    edges.push((v, w));
                }
            }
        }
        let g = Graph::build(rotation.len(), &edges).expect("rotation ids in range");
        let mut provenance: Vec<Vec<usize>> = (0..self.order()).map(|v| self.graph().provenance(v).to_vec()).collect();
        let mut next_label = provenance.iter().flatten().max().map_or(0, |m| m + 1);
        for _ in self.order()..rotation.len() {
            provenance.push(vec![next_label]);
            next_label += 1;
        }
        g.with_provenance(provenance)
    }

    /// Splits `w` into `w` and a new vertex `n` joined by an edge: `w` keeps
    /// `p`, the arc strictly between `p` and `q`, and `q`; the new vertex
    /// keeps `q`, the other arc, and `p`. Inverse of contracting the new
    /// edge. `p` and `q` must be distinct neighbors of `w`.
    pub fn split_vertex(&self, w: usize, p: usize, q: usize) -> Result<Triangulation, TriangulationError> {
        let (arc1, arc2) = self.arcs(w, p, q)?;
        let n = self.order();
        let (w1, w2) = (w, n);
        let mut rotation = self.rotations().to_vec();
        for &a in &arc2 {
            replace_one(&mut rotation[a], w, &[w2]);
        }
        replace_one(&mut rotation[p], w, &[w1, w2]);
        replace_one(&mut rotation[q], w, &[w2, w1]);
        let mut r1 = vec![p];
        r1.extend(&arc1);
        r1.extend([q, w2]);
        let mut r2 = vec![q];
        r2.extend(&arc2);
        r2.extend([p, w1]);
        rotation[w1] = r1;
        rotation.push(r2);
        let graph = self.extended_graph(&rotation);
        Ok(Triangulation::from_parts_unchecked(graph, rotation))
    }

    /// The two open arcs of `w`'s rotation cut at `p` and `q`: `(p..q, q..p)`.
    fn arcs(&self, w: usize, p: usize, q: usize) -> Result<(Vec<usize>, Vec<usize>), TriangulationError> {
        let n = self.order();
        if w >= n || p == q || !self.graph().has_edge(w, p) || !self.graph().has_edge(w, q) {
            return Err(TriangulationError::IllegalSplit(format!(
                "{p} and {q} must be distinct neighbors of {w}"
            )));
        }
        let r = rotated_from(self, w, p);
        let j = r.iter().position(|&x| x == q).unwrap();
        Ok((r[1..j].to_vec(), r[j + 1..].to_vec()))
    }

    /// Inverse of the 4-wheel contraction: splits `w` along the
    /// non-consecutive neighbors `p, q` into `w'` (keeps `w`'s id) and `w''`
    /// (id `n`), and adds a degree-4 center (id `n + 1`) with rim
    /// `(w', p, w'', q)`.
    pub fn extend_wheel4(&self, w: usize, p: usize, q: usize) -> Result<Extension, TriangulationError> {
        let (arc1, arc2) = self.arcs(w, p, q)?;
        if arc1.is_empty() || arc2.is_empty() {
            return Err(TriangulationError::IllegalSplit(format!(
                "{p} and {q} are consecutive around {w}"
            )));
        }
        let n = self.order();
        let (w1, w2, v) = (w, n, n + 1);
        let mut rotation = self.rotations().to_vec();
        for &b in &arc2 {
            replace_one(&mut rotation[b], w, &[w2]);
        }
        replace_one(&mut rotation[p], w, &[w1, v, w2]);
        replace_one(&mut rotation[q], w, &[w2, v, w1]);
        let mut r1 = vec![p];
        r1.extend(&arc1);
        r1.extend([q, v]);
        let mut r2 = vec![q];
        r2.extend(&arc2);
        r2.extend([p, v]);
        rotation[w1] = r1;
        rotation.push(r2);
        rotation.push(vec![w1, q, w2, p]);
        let graph = self.extended_graph(&rotation);
        Ok(Extension {
            triangulation: Triangulation::from_parts_unchecked(graph, rotation),
            center: v,
            split: (w1, w2),
        })
    }

    /// Inverse of a 5-wheel contraction. `a1` is the neighbor of `u` that
    /// both halves keep; `a2` and its rotation successor `e` form the face
    /// `(u, a2, e)` that the contraction turns into the funnel triangle.
    /// `u'` (keeps `u`'s id) takes the arc from `a1` to `a2`, `u''` (id `n`)
    /// the arc from `e` back to `a1`; both arcs must contain a vertex
    /// strictly inside. The new center (id `n + 1`) has rim
    /// `(a1, u', a2, e, u'')`.
    pub fn extend_wheel5(&self, u: usize, a1: usize, a2: usize) -> Result<Extension, TriangulationError> {
        if u >= self.order() || a1 == a2 || !self.graph().has_edge(u, a1) || !self.graph().has_edge(u, a2) {
            return Err(TriangulationError::IllegalSplit(format!(
                "{a1} and {a2} must be distinct neighbors of {u}"
            )));
        }
        let r = rotated_from(self, u, a1);
        let j = r.iter().position(|&x| x == a2).unwrap();
        if j + 1 >= r.len() {
            return Err(TriangulationError::IllegalSplit(format!(
                "{a2} directly precedes {a1} around {u}"
            )));
        }
        let e = r[j + 1];
        let arc1 = r[1..j].to_vec();
        let arc2 = r[j + 2..].to_vec();
        if arc1.is_empty() || arc2.is_empty() {
            return Err(TriangulationError::IllegalSplit(format!(
                "an arc around {u} between {a1}, {a2} and {e} is empty"
            )));
        }
        let n = self.order();
        let (u1, u2, v) = (u, n, n + 1);
        let mut rotation = self.rotations().to_vec();
        for &x in &arc2 {
            replace_one(&mut rotation[x], u, &[u2]);
        }
        replace_one(&mut rotation[a1], u, &[u1, v, u2]);
        replace_one(&mut rotation[a2], u, &[v, u1]);
        replace_one(&mut rotation[e], u, &[u2, v]);
        let mut r1 = vec![a1];
        r1.extend(&arc1);
        r1.extend([a2, v]);
        let mut r2 = vec![e];
        r2.extend(&arc2);
        r2.extend([a1, v]);
        rotation[u1] = r1;
        rotation.push(r2);
        rotation.push(vec![a1, u1, a2, e, u2]);
        let graph = self.extended_graph(&rotation);
        Ok(Extension {
            triangulation: Triangulation::from_parts_unchecked(graph, rotation),
            center: v,
            split: (u1, u2),
        })
    }

    /// Deletes a degree-3 vertex; the result is again a triangulation.
    pub fn remove_degree3(&self, v: usize) -> Result<Triangulation, TriangulationError> {
        self.check_degree(v, 3)?;
        let graph = self.graph().delete_vertex(v)?;
        let shift = |x: usize| if x > v { x - 1 } else { x };
        let rotation = self
            .rotations()
            .iter()
            .enumerate()
            .filter(|&(u, _)| u != v)
            .map(|(_, r)| r.iter().filter(|&&w| w != v).map(|&w| shift(w)).collect())
            .collect();
        Ok(Triangulation::from_parts_unchecked(graph, rotation))
    }

    /// All legal vertex splits, in a fixed order: each vertex, each
    /// unordered pair of distinct neighbors.
    pub fn split_moves(&self) -> Vec<SplitMove> {
        let mut out = Vec::new();
        for w in 0..self.order() {
            let r = self.rotation(w);
            for i in 0..r.len() {
                for j in i + 1..r.len() {
                    out.push(SplitMove {
                        vertex: w,
                        p: r[i],
                        q: r[j],
                    });
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{b5, octahedron};
    use super::*;

    fn k4() -> Triangulation {
        Triangulation::from_graph(&Graph::complete(4)).unwrap()
    }

    #[test]
    fn wheel4_on_bipyramid() {
        let c = b5().contract_wheel4(1).unwrap();
        assert_eq!(c.wheel.rim, vec![0, 2, 4, 3]);
        let g1 = c.g1.graph().unwrap();
        assert!(g1.is_complete());
        assert_eq!(g1.order(), 3);
        assert!(c.g2.is_marker());
        assert!(matches!(
            b5().contract_wheel4(0),
            Err(TriangulationError::WrongDegree { degree: 3, .. })
        ));
    }

    #[test]
    fn wheel4_on_octahedron() {
        let t = octahedron();
        let k4e = Graph::complete(4).remove_edge(0, 1).unwrap().canonical_form();
        for v in 0..6 {
            let c = t.contract_wheel4(v).unwrap();
            for g in [&c.g1, &c.g2] {
                let g = g.graph().unwrap();
                assert_eq!((g.order(), g.size()), (4, 5));
                assert_eq!(g.canonical_form(), k4e);
                assert!(!Triangulation::is_maximal_planar(g));
            }
        }
    }

    #[test]
    fn extend3_from_k4_gives_bipyramid() {
        for f in k4().faces() {
            let t = k4().extend_wheel3(f[0], f[1], f[2]).unwrap();
            assert_eq!(t.canonical_form(), b5().canonical_form());
            assert_eq!(t.degree(4), 3);
        }
        assert_eq!(
            b5().extend_wheel3(0, 4, 1).unwrap_err(),
            TriangulationError::NotAFace(0, 4, 1)
        );
        let stacked = b5().extend_wheel3(0, 1, 2).unwrap();
        assert_eq!(stacked.graph().degree_sequence(), vec![3, 3, 4, 4, 5, 5]);
    }

    #[test]
    fn extend4_round_trips() {
        for host in [k4(), b5(), octahedron()] {
            let mut tried = 0;
            for w in 0..host.order() {
                let r = host.rotation(w).to_vec();
                for i in 0..r.len() {
                    for j in i + 2..r.len() {
                        if i == 0 && j == r.len() - 1 {
                            continue;
                        }
                        let ext = host.extend_wheel4(w, r[i], r[j]).unwrap();
                        let t = &ext.triangulation;
                        assert_eq!(t.order(), host.order() + 2);
                        assert_eq!(t.degree(ext.center), 4);
                        let back = t.contract_rim_pair(ext.center, ext.split.0, ext.split.1).unwrap();
                        assert_eq!(back.graph().unwrap().canonical_form(), host.canonical_form());
                        tried += 1;
                    }
                }
            }
            assert!(tried > 0 || host.order() == 4);
        }
        // K4 has degree-3 vertices only; every pair of neighbors is consecutive.
        assert!(k4().extend_wheel4(0, 1, 2).is_err());
        // Splitting b5's e1 along the apexes.
        let ext = b5().extend_wheel4(1, 0, 4).unwrap();
        assert_eq!(ext.triangulation.order(), 7);
    }

    #[test]
    fn extend5_round_trips_and_rejects_empty_arcs() {
        // Needs a vertex of degree at least 5; the octahedron has none.
        assert!(octahedron().rotations().iter().all(|r| r.len() == 4));
        let host = octahedron().extend_wheel3(0, 1, 2).unwrap();
        let mut legal = 0;
        for u in 0..host.order() {
            for &a1 in host.rotation(u) {
                for &a2 in host.rotation(u) {
                    match host.extend_wheel5(u, a1, a2) {
                        Ok(ext) => {
                            legal += 1;
                            let t = &ext.triangulation;
                            assert_eq!(t.degree(ext.center), 5);
                            let back = t.contract_rim_pair(ext.center, ext.split.0, ext.split.1).unwrap();
                            assert_eq!(back.graph().unwrap().canonical_form(), host.canonical_form());
                        }
                        Err(e) => assert!(matches!(e, TriangulationError::IllegalSplit(_))),
                    }
                }
            }
        }
        assert!(legal > 0);
        // Every vertex of K4 has degree 3: no split leaves both arcs non-empty.
        for &a2 in k4().rotation(0) {
            assert!(k4().extend_wheel5(0, 1, a2).is_err());
        }
    }

    #[test]
    fn splits_are_valid() {
        let t = octahedron();
        for m in t.split_moves() {
            let s = t.split_vertex(m.vertex, m.p, m.q).unwrap();
            s.validate().unwrap();
            let back = s.graph().contract_edge(m.vertex, t.order()).unwrap();
            assert_eq!(back.canonical_form(), t.canonical_form());
        }
    }

    #[test]
    fn degree3_removal() {
        let t = b5().remove_degree3(0).unwrap();
        assert!(t.graph().is_complete());
        assert_eq!(t.order(), 4);
        assert!(b5().remove_degree3(1).is_err());
    }
}
