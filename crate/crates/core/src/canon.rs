//! Canonical labeling by partition refinement and backtracking.
//!
//! The search individualizes vertices of the first non-singleton cell,
//! refines to an equitable partition, and keeps the lexicographically
//! largest relabeled adjacency matrix over all leaves. Automorphisms found
//! at leaves prune siblings in the same stabilizer orbit, and a leaf that
//! matches the first leaf aborts back to the level where its path left the
//! first path.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::graph::{bit, Bits};

/// Relabeled adjacency rows under the canonical labeling. Two graphs have
/// equal forms iff they are isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    order: u8,
    rows: Vec<u64>,
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.order as usize
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Two hex digits of order, then each row in `ceil(n/4)` hex digits.
    pub fn to_hex(&self) -> String {
        let width = self.order().div_ceil(4);
        let mut s = format!("{:02x}", self.order);
        for &row in &self.rows {
            s.push_str(&format!("{:0width$x}", row, width = width));
        }
        s
    }

    pub fn from_hex(s: &str) -> Option<CanonicalForm> {
        let order = u8::from_str_radix(s.get(..2)?, 16).ok()?;
        let n = order as usize;
        if n > 64 {
            return None;
        }
        let width = n.div_ceil(4);
        let body = &s[2..];
        if body.len() != width * n {
            return None;
        }
        let rows = (0..n)
            .map(|i| u64::from_str_radix(&body[i * width..(i + 1) * width], 16).ok())
            .collect::<Option<Vec<_>>>()?;
        Some(CanonicalForm { order, rows })
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for CanonicalForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CanonicalForm::from_hex(&s).ok_or_else(|| serde::de::Error::custom("malformed canonical form"))
    }
}

pub fn canonical_form(adj: &[u64]) -> CanonicalForm {
    canonical_labeling(adj).0
}

/// Canonical form plus the labeling that produces it: vertex `v` receives
/// canonical label `labeling[v]`.
pub fn canonical_labeling(adj: &[u64]) -> (CanonicalForm, Vec<usize>) {
    let n = adj.len();
    assert!(n <= 64);
    if n == 0 {
        return (CanonicalForm { order: 0, rows: vec![] }, vec![]);
    }
    let mut search = Search {
        adj,
        first: None,
        best: None,
        generators: Vec::new(),
    };
    let mut cells = vec![if n == 64 { u64::MAX } else { (1u64 << n) - 1 }];
    refine(adj, &mut cells);
    let mut path = Vec::new();
    search.dfs(cells, &mut path);
    let (rows, order) = search.best.expect("search visits at least one leaf");
    let mut labeling = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        labeling[v] = i;
    }
    (
        CanonicalForm {
            order: n as u8,
            rows,
        },
        labeling,
    )
}

/// Splits cells until the ordered partition is equitable. Sub-cells are
/// ordered by neighbor count into the splitter, so the result commutes with
/// relabeling.
fn refine(adj: &[u64], cells: &mut Vec<u64>) {
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < cells.len() {
            let splitter = cells[i];
            let mut next = Vec::with_capacity(cells.len() + 4);
            for &cell in cells.iter() {
                if cell.count_ones() == 1 {
                    next.push(cell);
                    continue;
                }
                let mut counted: Vec<(u32, usize)> = Bits(cell)
                    .map(|v| ((adj[v] & splitter).count_ones(), v))
                    .collect();
                counted.sort_unstable();
                let mut current = 0u64;
                let mut last = counted[0].0;
                for &(c, v) in &counted {
                    if c != last {
                        next.push(current);
                        current = 0;
                        last = c;
                        changed = true;
                    }
                    current |= bit(v);
                }
                next.push(current);
            }
            *cells = next;
            i += 1;
        }
        if !changed {
            break;
        }
    }
}

struct Search<'a> {
    adj: &'a [u64],
    first: Option<(Vec<u64>, Vec<usize>, Vec<usize>)>,
    best: Option<(Vec<u64>, Vec<usize>)>,
    generators: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Returns `Some(level)` to abort every node deeper than `level`.
    fn dfs(&mut self, cells: Vec<u64>, path: &mut Vec<usize>) -> Option<usize> {
        let depth = path.len();
        let Some(target) = cells.iter().position(|c| c.count_ones() > 1) else {
            return self.leaf(&cells, path);
        };
        let mut explored: Vec<usize> = Vec::new();
        for v in Bits(cells[target]) {
            if !explored.is_empty() && self.same_orbit(path, v, &explored) {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(bit(v));
            child.push(cells[target] & !bit(v));
            child.extend_from_slice(&cells[target + 1..]);
            refine(self.adj, &mut child);
            path.push(v);
            let jump = self.dfs(child, path);
            path.pop();
            explored.push(v);
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    fn leaf(&mut self, cells: &[u64], path: &[usize]) -> Option<usize> {
        let n = self.adj.len();
        let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let mut pos = [0usize; 64];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let rows: Vec<u64> = order
            .iter()
            .map(|&v| Bits(self.adj[v]).fold(0u64, |acc, w| acc | bit(pos[w])))
            .collect();

        let Some((first_rows, first_order, first_path)) = &self.first else {
            self.first = Some((rows.clone(), order.clone(), path.to_vec()));
            self.best = Some((rows, order));
            return None;
        };
        if rows == *first_rows {
            let mut gamma = vec![0; n];
            for i in 0..n {
                gamma[first_order[i]] = order[i];
            }
            let diverge = first_path.iter().zip(path).take_while(|(a, b)| a == b).count();
            self.generators.push(gamma);
            return Some(diverge);
        }
        let best = self.best.as_mut().expect("set with first leaf");
        match rows.cmp(&best.0) {
            std::cmp::Ordering::Greater => *best = (rows, order),
            std::cmp::Ordering::Equal => {
                let mut gamma = vec![0; n];
                for i in 0..n {
                    gamma[best.1[i]] = order[i];
                }
                self.generators.push(gamma);
            }
            std::cmp::Ordering::Less => {}
        }
        None
    }

    /// Whether `v` shares an orbit with an explored sibling under the known
    /// automorphisms that fix the current path pointwise.
    fn same_orbit(&self, path: &[usize], v: usize, explored: &[usize]) -> bool {
        let n = self.adj.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.generators {
            if path.iter().any(|&p| gamma[p] != p) {
                continue;
            }
            any = true;
            for x in 0..n {
                let (a, b) = (find(&mut parent, x), find(&mut parent, gamma[x]));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, v);
        explored.iter().any(|&e| find(&mut parent, e) == root)
    }
}
