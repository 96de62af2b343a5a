//! A few named triangulations used in examples and tests.

use super::Triangulation;
use crate::graph::Graph;

fn embed(n: usize, edges: &[(usize, usize)]) -> Triangulation {
    Triangulation::from_graph(&Graph::build(n, edges).expect("valid edge list")).expect("maximal planar")
}

pub fn tetrahedron() -> Triangulation {
    embed(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
}

/// Triangular bipyramid: apexes 0 and 4 over the equator 1, 2, 3.
pub fn bipyramid() -> Triangulation {
    embed(
        5,
        &[(1, 2), (2, 3), (3, 1), (0, 1), (0, 2), (0, 3), (4, 1), (4, 2), (4, 3)],
    )
}

/// Octahedron with antipodal pairs (0,5), (1,3), (2,4).
pub fn octahedron() -> Triangulation {
    let mut edges = vec![];
    for a in 0..6 {
        for b in a + 1..6 {
            if !matches!((a, b), (0, 5) | (1, 3) | (2, 4)) {
                edges.push((a, b));
            }
        }
    }
    embed(6, &edges)
}

/// Icosahedron: pole 0, upper ring 1..=5, lower ring 6..=10, pole 11.
pub fn icosahedron() -> Triangulation {
    let mut edges = vec![];
    for i in 0..5 {
        let up = 1 + i;
        let up_next = 1 + (i + 1) % 5;
        let low = 6 + i;
        let low_next = 6 + (i + 1) % 5;
        edges.extend([(0, up), (up, up_next), (low, low_next), (low, 11), (up, low), (up_next, low)]);
    }
    embed(12, &edges)
}

/// Stacked triangulation on `n >= 4` vertices: each new vertex goes into a
/// face containing the previous one.
pub fn stacked(n: usize) -> Triangulation {
    assert!(n >= 4, "stacked triangulations start at K4");
    let mut t = tetrahedron();
    while t.order() < n {
        let v = t.order() - 1;
        let a = t.rotation(v)[0];
        let b = t.succ(v, a);
        t = t.extend_wheel3(v, a, b).expect("face at the newest vertex");
    }
    t
}
