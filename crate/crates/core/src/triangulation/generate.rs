//! Isomorph-free generation of triangulations by vertex splitting from K4.
//!
//! Every triangulation other than K4 has an edge whose contraction leaves a
//! triangulation, so splitting every vertex of every `(n-1)`-vertex class
//! along every pair of neighbors reaches all `n`-vertex classes.

use std::collections::BTreeMap;

use dashmap::DashSet;

use rayon::prelude::*;
use serde::Serialize;

use super::{Triangulation, TriangulationError};
use crate::canon::CanonicalForm;
use crate::graph::Graph;

pub const MAX_GENERATION_ORDER: usize = 13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SplitOrder {
    #[default]
    Forward,
    Reverse,
}

#[derive(Debug, Clone)]
pub struct GenerationReport {
    pub order: usize,
    /// One canonically labeled representative per class, sorted by form.
    pub graphs: Vec<Triangulation>,
    pub forms: Vec<CanonicalForm>,
    pub counts_by_min_degree: BTreeMap<usize, usize>,
}

#[derive(Serialize)]
struct CountsView<'a> {
    order: usize,
    total: usize,
    counts_by_min_degree: &'a BTreeMap<usize, usize>,
}

impl GenerationReport {
    pub fn summary_json(&self) -> serde_json::Value {
        serde_json::to_value(CountsView {
            order: self.order,
            total: self.graphs.len(),
            counts_by_min_degree: &self.counts_by_min_degree,
        })
        .expect("plain data")
    }
}

pub fn generate_all(n: usize, min_degree: Option<usize>) -> Result<GenerationReport, TriangulationError> {
    generate_all_with(n, min_degree, SplitOrder::Forward)
}

pub fn generate_all_with(
    n: usize,
    min_degree: Option<usize>,
    order: SplitOrder,
) -> Result<GenerationReport, TriangulationError> {
    if !(4..=MAX_GENERATION_ORDER).contains(&n) {
        return Err(TriangulationError::OrderOutOfRange {
            order: n,
            min: 4,
            max: MAX_GENERATION_ORDER,
        });
    }
    let k4 = Triangulation::from_graph(&Graph::complete(4))?;
    let (form, rep) = k4.canonical();
    let mut level = vec![(form, rep)];
    for _ in 5..=n {
        level = next_level(&level, order);
    }
    let mut counts_by_min_degree = BTreeMap::new();
    for (_, t) in &level {
        *counts_by_min_degree.entry(t.min_degree()).or_insert(0) += 1;
    }
    let (forms, graphs): (Vec<_>, Vec<_>) = level
        .into_iter()
        .filter(|(_, t)| min_degree.is_none_or(|d| t.min_degree() == d))
        .unzip();
    Ok(GenerationReport {
        order: n,
        graphs,
        forms,
        counts_by_min_degree,
    })
}

fn next_level(parents: &[(CanonicalForm, Triangulation)], order: SplitOrder) -> Vec<(CanonicalForm, Triangulation)> {
    let seen: DashSet<CanonicalForm> = DashSet::new();
    let visit = |t: &Triangulation| -> Vec<(CanonicalForm, Triangulation)> {
        let mut moves = t.split_moves();
        if order == SplitOrder::Reverse {
            moves.reverse();
        }
        let mut found = Vec::new();
        for m in moves {
            let child = t.split_vertex(m.vertex, m.p, m.q).expect("legal split");
            let form = child.canonical_form();
            if seen.insert(form.clone()) {
                found.push(child);
            }
        }
        // Representatives are the canonical relabeling, so the output does
        // not depend on which split reached a class first.
        found.into_iter().map(|c| c.canonical()).collect()
    };
    let mut out: Vec<(CanonicalForm, Triangulation)> = match order {
        SplitOrder::Forward => parents.par_iter().flat_map_iter(|(_, t)| visit(t)).collect(),
        SplitOrder::Reverse => parents.par_iter().rev().flat_map_iter(|(_, t)| visit(t)).collect(),
    };
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}
