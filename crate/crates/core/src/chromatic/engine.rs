//! Deletion–contraction with clique-separator splitting and a memo keyed by
//! canonical form.

use std::io::{BufRead, Write};
use std::sync::Arc;

use dashmap::DashMap;
use num_bigint::BigInt;
use serde::Serialize;

use super::{brute_force_count, EngineError, Polynomial};
use crate::canon::{canonical_form, CanonicalForm};
use crate::graph::{bit, component_of, induced_rows, low_mask, squeeze_bit, Bits, ContractionOutcome, Graph};

/// Orders at or below this are counted by the oracle when no method is
/// forced.
const ORACLE_ORDER: usize = 5;

/// Largest clique searched as a separator.
const MAX_SEPARATOR: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountMethod {
    Oracle,
    Recursion,
    ProductRule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    /// Absent for an adjacent-pair marker.
    pub form: Option<CanonicalForm>,
    pub t: u32,
    #[serde(serialize_with = "crate::report::bigint_decimal")]
    pub value: BigInt,
    pub method: CountMethod,
}

#[derive(Clone)]
pub struct ChromaticEngine {
    memo: Option<Arc<DashMap<CanonicalForm, Polynomial>>>,
    separators: bool,
}

impl Default for ChromaticEngine {
    fn default() -> Self {
        ChromaticEngine::new()
    }
}

impl std::fmt::Debug for ChromaticEngine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ChromaticEngine")
            .field("memo_entries", &self.memo_len())
            .finish()
    }
}

impl ChromaticEngine {
    /// Engine with an empty shared memo.
    pub fn new() -> ChromaticEngine {
        ChromaticEngine {
            memo: Some(Arc::new(DashMap::new())),
            separators: true,
        }
    }

    pub fn without_memo() -> ChromaticEngine {
        ChromaticEngine {
            memo: None,
            separators: true,
        }
    }

    /// Plain deletion–contraction: no clique-separator splitting. Used as an
    /// independent baseline for the product rule.
    pub fn without_separators() -> ChromaticEngine {
        ChromaticEngine {
            memo: Some(Arc::new(DashMap::new())),
            separators: false,
        }
    }

    pub fn memo_len(&self) -> usize {
        self.memo.as_ref().map_or(0, |m| m.len())
    }

    pub fn chromatic_polynomial(&self, g: &Graph) -> Polynomial {
        self.poly(g.adjacency().to_vec())
    }

    /// Markers stand for the zero polynomial.
    pub fn outcome_polynomial(&self, outcome: &ContractionOutcome) -> Polynomial {
        match outcome {
            ContractionOutcome::Graph(g) => self.chromatic_polynomial(g),
            ContractionOutcome::AdjacentPair => Polynomial::zero(),
        }
    }

    /// Counts proper `t`-colorings. Tiny graphs go to the oracle; with
    /// `cross_check` both routes run and must agree.
    pub fn count_colorings(
        &self,
        outcome: &ContractionOutcome,
        t: u32,
        cross_check: bool,
    ) -> Result<CountReport, EngineError> {
        let g = match outcome {
            ContractionOutcome::AdjacentPair => {
                return Ok(CountReport {
                    form: None,
                    t,
                    value: BigInt::from(0),
                    method: CountMethod::Recursion,
                })
            }
            ContractionOutcome::Graph(g) => g,
        };
        let form = Some(g.canonical_form());
        let use_oracle = cross_check || g.order() <= ORACLE_ORDER;
        let oracle = if use_oracle { Some(brute_force_count(g, t)?) } else { None };
        if let (Some(value), false) = (&oracle, cross_check) {
            return Ok(CountReport {
                form,
                t,
                value: value.clone(),
                method: CountMethod::Oracle,
            });
        }
        let value = self.chromatic_polynomial(g).eval_i64(t as i64);
        if let Some(o) = oracle {
            if o != value {
                return Err(EngineError::OracleMismatch {
                    form: form.expect("graph has a form"),
                    oracle: o,
                    polynomial: value,
                });
            }
            return Ok(CountReport {
                form,
                t,
                value,
                method: CountMethod::Oracle,
            });
        }
        let method = if separator(g.adjacency()).is_some() || !g.is_connected() {
            CountMethod::ProductRule
        } else {
            CountMethod::Recursion
        };
        Ok(CountReport { form, t, value, method })
    }

    fn poly(&self, adj: Vec<u64>) -> Polynomial {
        let n = adj.len();
        if n == 0 {
            return Polynomial::one();
        }
        let m: usize = adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2;
        if m == 0 {
            return Polynomial::power(n);
        }
        if m == n * (n - 1) / 2 {
            return Polynomial::falling_factorial(n);
        }
        let all = low_mask(n);
        let first = component_of(&adj, 0, all);
        if first != all {
            let mut product = Polynomial::one();
            let mut rest = all;
            while rest != 0 {
                let comp = component_of(&adj, rest.trailing_zeros() as usize, rest);
                rest &= !comp;
                let keep: Vec<usize> = Bits(comp).collect();
                product = &product * &self.poly(induced_rows(&adj, &keep));
            }
            return product;
        }
        if m == n - 1 {
            // Tree: t (t - 1)^(n - 1)
            return (1..n).fold(Polynomial::power(1), |p, _| p.mul_linear(1));
        }

        let key = self.memo.as_ref().map(|_| canonical_form(&adj));
        if let (Some(memo), Some(key)) = (&self.memo, &key) {
            if let Some(p) = memo.get(key) {
                return p.clone();
            }
        }

        let split = if self.separators { separator(&adj) } else { None };
        let result = if let Some((side1, side2, k)) = split {
            let p1 = self.poly(induced_rows(&adj, &Bits(side1).collect::<Vec<_>>()));
            let p2 = self.poly(induced_rows(&adj, &Bits(side2).collect::<Vec<_>>()));
            (&p1 * &p2)
                .div_falling_factorial(k)
                .expect("clique-separator product must divide exactly")
        } else {
            let (u, w) = pick_edge(&adj);
            let mut deleted = adj.clone();
            deleted[u] &= !bit(w);
            deleted[w] &= !bit(u);
            let contracted = contract_rows(&adj, u, w);
            &self.poly(deleted) - &self.poly(contracted)
        };

        if let (Some(memo), Some(key)) = (&self.memo, key) {
            memo.insert(key, result.clone());
        }
        result
    }

    /// Writes the memo as lines `<form-hex> <c0> <c1> ...`.
    pub fn save_cache<W: Write>(&self, mut out: W) -> Result<(), EngineError> {
        let Some(memo) = &self.memo else { return Ok(()) };
        let mut entries: Vec<(CanonicalForm, Polynomial)> =
            memo.iter().map(|e| (e.key().clone(), e.value().clone())).collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        for (form, p) in entries {
            write!(out, "{}", form.to_hex())?;
            for c in p.coeffs() {
                write!(out, " {c}")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }

    /// Loads cache lines, returning how many entries were read. Entries are
    /// idempotent: an existing key keeps its value.
    pub fn load_cache<R: BufRead>(&self, input: R) -> Result<usize, EngineError> {
        let Some(memo) = &self.memo else { return Ok(0) };
        let mut count = 0;
        for (i, line) in input.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let bad = |message: &str| EngineError::Cache {
                line: i + 1,
                message: message.to_string(),
            };
            let mut parts = line.split_whitespace();
            let form = parts
                .next()
                .and_then(CanonicalForm::from_hex)
                .ok_or_else(|| bad("malformed canonical form"))?;
            let coeffs = parts
                .map(|c| c.parse::<BigInt>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| bad("malformed coefficient"))?;
            let p = Polynomial::from_coeffs(coeffs);
            if p.degree() != Some(form.order()) && !(form.order() == 0 && p == Polynomial::one()) {
                return Err(bad("degree does not match order"));
            }
            memo.entry(form).or_insert(p);
            count += 1;
        }
        Ok(count)
    }
}

/// Endpoints maximizing the degree sum; ties go to the smallest pair.
fn pick_edge(adj: &[u64]) -> (usize, usize) {
    let mut best = None;
    let mut best_score = 0;
    for u in 0..adj.len() {
        for w in Bits(adj[u] & !low_mask(u + 1)) {
            let score = adj[u].count_ones() + adj[w].count_ones();
            if best.is_none() || score > best_score {
                best = Some((u, w));
                best_score = score;
            }
        }
    }
    best.expect("graph has an edge")
}

fn contract_rows(adj: &[u64], lo: usize, hi: usize) -> Vec<u64> {
    let mut rows = adj.to_vec();
    let merged = (rows[lo] | rows[hi]) & !bit(lo) & !bit(hi);
    rows[lo] = merged;
    for w in Bits(merged) {
        rows[w] = (rows[w] & !bit(hi)) | bit(lo);
    }
    rows.remove(hi);
    rows.iter_mut().for_each(|r| *r = squeeze_bit(*r, hi));
    rows
}

/// First separating clique of size 1..=4 (smallest size, then
/// lexicographic): returns the two sides, each including the clique.
fn separator(adj: &[u64]) -> Option<(u64, u64, usize)> {
    let n = adj.len();
    let all = low_mask(n);
    for k in 1..=MAX_SEPARATOR.min(n.saturating_sub(2)) {
        let mut found = None;
        for_each_clique(adj, k, 0, all, &mut |clique| {
            let rest = all & !clique;
            let comp = component_of(adj, rest.trailing_zeros() as usize, rest);
            if comp != rest {
                found = Some((clique | comp, all & !comp, k));
                true
            } else {
                false
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Calls `f` on each `k`-clique in lexicographic order until it returns true.
fn for_each_clique(adj: &[u64], k: usize, chosen: u64, cand: u64, f: &mut dyn FnMut(u64) -> bool) -> bool {
    if k == 0 {
        return f(chosen);
    }
    let mut rest = cand;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if for_each_clique(adj, k - 1, chosen | bit(v), rest & adj[v], f) {
            return true;
        }
    }
    false
}

/// Two graphs overlapping in a complete graph on `clique`, whose union is
/// the input.
#[derive(Debug, Clone)]
pub struct CliqueSplit {
    pub g1: Graph,
    pub g2: Graph,
    pub clique: Vec<usize>,
}

pub fn clique_separator_split(g: &Graph) -> Option<CliqueSplit> {
    let (side1, side2, _) = separator(g.adjacency())?;
    Some(CliqueSplit {
        g1: g.induced(side1),
        g2: g.induced(side2),
        clique: Bits(side1 & side2).collect(),
    })
}
