//! Planar code (binary) and adjacency-list (text) formats.
//!
//! Planar code: optional header `>>planar_code<<`, then per graph one byte
//! `n`, then for each vertex its neighbors as 1-based bytes in rotation
//! order, each list terminated by `0`.
//!
//! Adjacency list: a line `n m`, then `m` lines `u v` with 0-based ids.
//! Several graphs may follow one another in the same text.

use thiserror::Error;

use super::{Triangulation, TriangulationError};
use crate::graph::{Graph, GraphError};

pub const PLANAR_CODE_HEADER: &[u8] = b">>planar_code<<";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("stream truncated in graph {graph}")]
    Truncated { graph: usize },
    #[error("graph {graph}: neighbor {neighbor} out of range for order {order}")]
    NeighborOutOfRange { graph: usize, neighbor: usize, order: usize },
    #[error("graph {graph}: rotation data not symmetric at ({u}, {w})")]
    NotSymmetric { graph: usize, u: usize, w: usize },
    #[error("graph {graph}: {source}")]
    Invalid {
        graph: usize,
        #[source]
        source: TriangulationError,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("graph {graph}: {source}")]
    Graph {
        graph: usize,
        #[source]
        source: GraphError,
    },
}

/// Decodes a planar-code stream. A rotation that is a valid spherical
/// triangulation is kept as given; otherwise the embedding is recomputed
/// from the adjacency, which must then be maximal planar.
pub fn read_planar_code(bytes: &[u8]) -> Result<Vec<Triangulation>, FormatError> {
    let mut pos = if bytes.starts_with(PLANAR_CODE_HEADER) {
        PLANAR_CODE_HEADER.len()
    } else {
        0
    };
    let mut out = Vec::new();
    while pos < bytes.len() {
        let graph = out.len();
        let n = bytes[pos] as usize;
        pos += 1;
        let mut rotation: Vec<Vec<usize>> = Vec::with_capacity(n);
        for _ in 0..n {
            let mut list = Vec::new();
            loop {
                let &b = bytes.get(pos).ok_or(FormatError::Truncated { graph })?;
                pos += 1;
                if b == 0 {
                    break;
                }
                let w = b as usize;
                if w > n {
                    return Err(FormatError::NeighborOutOfRange { graph, neighbor: w, order: n });
                }
                list.push(w - 1);
            }
            rotation.push(list);
        }
        let mut edges = Vec::new();
        for (u, list) in rotation.iter().enumerate() {
            for &w in list {
                let back = rotation[w].iter().filter(|&&x| x == u).count();
                if back != 1 || list.iter().filter(|&&x| x == w).count() != 1 || w == u {
                    return Err(FormatError::NotSymmetric { graph, u, w });
                }
                if u < w {
                    edges.push((u, w));
                }
            }
        }
        let g = Graph::build(n, &edges).map_err(|source| FormatError::Graph { graph, source })?;
        let t = match Triangulation::from_rotation(g.clone(), rotation) {
            Ok(t) => t,
            Err(_) => Triangulation::from_graph(&g).map_err(|source| FormatError::Invalid { graph, source })?,
        };
        out.push(t);
    }
    Ok(out)
}

/// Encodes triangulations with the header, in their stored rotation order.
pub fn write_planar_code(graphs: &[Triangulation]) -> Vec<u8> {
    let mut out = PLANAR_CODE_HEADER.to_vec();
    for t in graphs {
        assert!(t.order() <= 255, "planar code stores orders up to 255");
        out.push(t.order() as u8);
        for v in 0..t.order() {
            out.extend(t.rotation(v).iter().map(|&w| (w + 1) as u8));
            out.push(0);
        }
    }
    out
}

pub fn read_adjlist(text: &str) -> Result<Vec<Graph>, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let parse_pair = |line: usize, l: &str| -> Result<(usize, usize), FormatError> {
        let mut it = l.split_whitespace().map(|x| x.parse::<usize>());
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
            _ => Err(FormatError::Parse {
                line,
                message: format!("expected two non-negative integers, got {l:?}"),
            }),
        }
    };
    let mut out = Vec::new();
    while let Some((line, header)) = lines.next() {
        let (n, m) = parse_pair(line, header)?;
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let (line, l) = lines.next().ok_or(FormatError::Parse {
                line,
                message: format!("expected {m} edge lines"),
            })?;
            edges.push(parse_pair(line, l)?);
        }
        let graph = out.len();
        out.push(Graph::build(n, &edges).map_err(|source| FormatError::Graph { graph, source })?);
    }
    Ok(out)
}

pub fn write_adjlist(g: &Graph) -> String {
    let edges = g.edges();
    let mut s = format!("{} {}\n", g.order(), edges.len());
    for (u, w) in edges {
        s.push_str(&format!("{u} {w}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::generate_all;

    #[test]
    fn k4_encoding() {
        let k4 = Triangulation::from_graph(&Graph::complete(4)).unwrap();
        let bytes = write_planar_code(std::slice::from_ref(&k4));
        let body = &bytes[PLANAR_CODE_HEADER.len()..];
        assert_eq!(body.len(), 1 + 4 * 4);
        assert_eq!(body[0], 4);
        for v in 0..4 {
            let list = &body[1 + 4 * v..1 + 4 * v + 4];
            assert_eq!(list[3], 0);
            let mut ns: Vec<u8> = list[..3].to_vec();
            ns.sort();
            let expect: Vec<u8> = (1..=4).filter(|&x| x != v as u8 + 1).collect();
            assert_eq!(ns, expect);
        }
        assert_eq!(read_planar_code(&bytes).unwrap(), vec![k4]);
    }

    #[test]
    fn sorted_k4_lists_are_accepted_by_re_embedding() {
        let bytes = [4, 2, 3, 4, 0, 1, 3, 4, 0, 1, 2, 4, 0, 1, 2, 3, 0];
        let ts = read_planar_code(&bytes).unwrap();
        assert_eq!(ts.len(), 1);
        assert!(ts[0].graph().is_complete());
    }

    #[test]
    fn corpus_round_trip() {
        let mut all = vec![];
        for n in 4..=8 {
            all.extend(generate_all(n, None).unwrap().graphs);
        }
        let bytes = write_planar_code(&all);
        assert_eq!(read_planar_code(&bytes).unwrap(), all);
        // Headerless streams decode too.
        assert_eq!(read_planar_code(&bytes[PLANAR_CODE_HEADER.len()..]).unwrap(), all);
    }

    #[test]
    fn planar_code_errors() {
        assert_eq!(
            read_planar_code(&[4, 2, 3, 9, 0]),
            Err(FormatError::NeighborOutOfRange { graph: 0, neighbor: 9, order: 4 })
        );
        assert_eq!(read_planar_code(&[4, 2, 3, 4]), Err(FormatError::Truncated { graph: 0 }));
        assert!(matches!(
            read_planar_code(&[3, 2, 3, 0, 1, 3, 0, 2, 0]),
            Err(FormatError::NotSymmetric { .. })
        ));
        // K5 rotation data: symmetric but not planar.
        let mut k5 = vec![5u8];
        for v in 1..=5u8 {
            k5.extend((1..=5).filter(|&w| w != v));
            k5.push(0);
        }
        assert!(matches!(read_planar_code(&k5), Err(FormatError::Invalid { .. })));
    }

    #[test]
    fn adjlist_round_trip_and_errors() {
        let text = "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n\n3 2\n0 1\n1 2\n";
        let gs = read_adjlist(text).unwrap();
        assert_eq!(gs.len(), 2);
        assert!(gs[0].is_complete());
        assert_eq!(read_adjlist(&write_adjlist(&gs[1])).unwrap(), vec![gs[1].clone()]);
        assert!(matches!(read_adjlist("3 2\n0 1\n"), Err(FormatError::Parse { .. })));
        assert!(matches!(read_adjlist("3 1\n0 x\n"), Err(FormatError::Parse { .. })));
        assert!(matches!(read_adjlist("3 1\n0 5\n"), Err(FormatError::Graph { .. })));
    }
}
