//! Planarity testing by the Demoucron–Malgrange–Pertuiset path-embedding
//! method, run independently on each biconnected block.

use crate::graph::{bit, component_of, Bits};

pub fn is_planar(adj: &[u64]) -> bool {
    let n = adj.len();
    let m: usize = adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2;
    if n <= 4 {
        return true;
    }
    if m > 3 * n - 6 {
        return false;
    }
    blocks(adj).iter().all(|block| block_is_planar(block))
}

/// Biconnected blocks, each as adjacency rows over the original ids.
fn blocks(adj: &[u64]) -> Vec<Vec<u64>> {
    struct State<'a> {
        adj: &'a [u64],
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        out: Vec<Vec<u64>>,
    }
    const UNSEEN: usize = usize::MAX;
    fn visit(s: &mut State, u: usize, parent: usize) {
        s.disc[u] = s.time;
        s.low[u] = s.time;
        s.time += 1;
        for w in Bits(s.adj[u]) {
            if s.disc[w] == UNSEEN {
                s.stack.push((u, w));
                visit(s, w, u);
                s.low[u] = s.low[u].min(s.low[w]);
                if s.low[w] >= s.disc[u] {
                    let mut rows = vec![0u64; s.adj.len()];
                    while let Some((a, b)) = s.stack.pop() {
                        rows[a] |= bit(b);
                        rows[b] |= bit(a);
                        if (a, b) == (u, w) {
                            break;
                        }
                    }
                    s.out.push(rows);
                }
            } else if w != parent && s.disc[w] < s.disc[u] {
                s.stack.push((u, w));
                s.low[u] = s.low[u].min(s.disc[w]);
            }
        }
    }
    let n = adj.len();
    let mut s = State {
        adj,
        disc: vec![UNSEEN; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for v in 0..n {
        if s.disc[v] == UNSEEN {
            visit(&mut s, v, UNSEEN);
        }
    }
    s.out
}

fn block_is_planar(rows: &[u64]) -> bool {
    let verts: u64 = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| **r != 0)
        .fold(0, |m, (v, _)| m | bit(v));
    let k = verts.count_ones() as usize;
    let m: usize = rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2;
    if k <= 4 {
        return true;
    }
    if m > 3 * k - 6 {
        return false;
    }
    let Some(cycle) = find_cycle(rows, verts) else {
        return true;
    };

    let n = rows.len();
    let mut h_rows = vec![0u64; n];
    let mut h_verts = 0u64;
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        h_rows[a] |= bit(b);
        h_rows[b] |= bit(a);
        h_verts |= bit(a);
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle];

    loop {
        let fragments = fragments(rows, verts, &h_rows, h_verts);
        if fragments.is_empty() {
            return true;
        }
        let mut chosen: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, f)| {
                    let fm = f.iter().fold(0u64, |m, &v| m | bit(v));
                    frag.attachments & !fm == 0
                })
                .map(|(i, _)| i)
                .collect();
            match admissible.len() {
                0 => return false,
                1 => {
                    chosen = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if chosen.is_none() {
                        chosen = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_index) = chosen.expect("fragments non-empty");
        let path = fragment_path(rows, &fragments[fi], h_verts);
        for pair in path.windows(2) {
            h_rows[pair[0]] |= bit(pair[1]);
            h_rows[pair[1]] |= bit(pair[0]);
        }
        for &v in &path {
            h_verts |= bit(v);
        }
        let face = faces.swap_remove(face_index);
        let (a, b) = (path[0], *path.last().unwrap());
        let i = face.iter().position(|&v| v == a).expect("attachment on face");
        let j = face.iter().position(|&v| v == b).expect("attachment on face");
        let interior = &path[1..path.len() - 1];
        let walk = |from: usize, to: usize| {
            let mut out = vec![face[from]];
            let mut x = from;
            while x != to {
                x = (x + 1) % face.len();
                out.push(face[x]);
            }
            out
        };
        let mut f1 = walk(i, j);
        f1.extend(interior.iter().rev());
        let mut f2 = walk(j, i);
        f2.extend(interior.iter());
        faces.push(f1);
        faces.push(f2);
    }
}

struct Fragment {
    attachments: u64,
    /// Non-embedded vertices of the fragment; zero for a single chord.
    body: u64,
    chord: Option<(usize, usize)>,
}

fn fragments(rows: &[u64], verts: u64, h_rows: &[u64], h_verts: u64) -> Vec<Fragment> {
    let mut out = Vec::new();
    for u in Bits(h_verts) {
        for w in Bits(rows[u] & h_verts & !h_rows[u]) {
            if u < w {
                out.push(Fragment {
                    attachments: bit(u) | bit(w),
                    body: 0,
                    chord: Some((u, w)),
                });
            }
        }
    }
    let mut rest = verts & !h_verts;
    while rest != 0 {
        let start = rest.trailing_zeros() as usize;
        let comp = component_of(rows, start, verts & !h_verts);
        rest &= !comp;
        let attachments = Bits(comp).fold(0u64, |m, v| m | rows[v]) & h_verts;
        out.push(Fragment {
            attachments,
            body: comp,
            chord: None,
        });
    }
    out
}

/// A path through the fragment between two distinct attachments.
fn fragment_path(rows: &[u64], frag: &Fragment, h_verts: u64) -> Vec<usize> {
    if let Some((u, w)) = frag.chord {
        return vec![u, w];
    }
    let a = frag.attachments.trailing_zeros() as usize;
    let mut prev = [usize::MAX; 64];
    let mut seen = 0u64;
    let mut queue = std::collections::VecDeque::new();
    for c in Bits(rows[a] & frag.body) {
        prev[c] = a;
        seen |= bit(c);
        queue.push_back(c);
    }
    while let Some(c) = queue.pop_front() {
        let exits = rows[c] & h_verts & !bit(a);
        if exits != 0 {
            let b = exits.trailing_zeros() as usize;
            let mut path = vec![b, c];
            let mut x = c;
            while prev[x] != a {
                x = prev[x];
                path.push(x);
            }
            path.push(a);
            path.reverse();
            return path;
        }
        for d in Bits(rows[c] & frag.body & !seen) {
            prev[d] = c;
            seen |= bit(d);
            queue.push_back(d);
        }
    }
    unreachable!("fragments of a biconnected block have two attachments")
}

fn find_cycle(rows: &[u64], verts: u64) -> Option<Vec<usize>> {
    let start = verts.trailing_zeros() as usize;
    let n = rows.len();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut stack = vec![start];
    depth[start] = 0;
    while let Some(u) = stack.pop() {
        for w in Bits(rows[u]) {
            if depth[w] == usize::MAX {
                depth[w] = depth[u] + 1;
                parent[w] = u;
                stack.push(w);
            } else if w != parent[u] && parent[w] != u {
                // Walk both up to the common ancestor.
                let (mut x, mut y) = (u, w);
                let mut left = vec![];
                let mut right = vec![];
                while x != y {
                    if depth[x] >= depth[y] {
                        left.push(x);
                        x = parent[x];
                    } else {
                        right.push(y);
                        y = parent[y];
                    }
                }
                left.push(x);
                left.extend(right.into_iter().rev());
                return Some(left);
            }
        }
    }
    None
}
