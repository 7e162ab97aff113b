use serde::{Deserialize, Serialize};

use crate::graph::{OrientedGraph, Vertex};
use crate::labeling::{build_constraints, ConstraintSet};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairClass {
    Gap2,
    Gap1,
    Unconstrained,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub subset_size: usize,
    pub pairs_total: usize,
    pub gap2: usize,
    pub gap1: usize,
    pub unconstrained: usize,
    pub full_coverage: bool,
    /// `subset_size − 1` when every pair is constrained.
    pub certified_lower_bound: Option<usize>,
    pub pairs: Vec<(Vertex, Vertex, PairClass)>,
}

/// Classifies every pair of `subset` by the gap `s` requires between them.
pub fn pair_class_audit(g: &OrientedGraph, subset: &[Vertex], s: ConstraintSet) -> AuditReport {
    let c = build_constraints(g, s);
    let mut pairs = Vec::new();
    let (mut gap2, mut gap1, mut unconstrained) = (0, 0, 0);
    for (i, &u) in subset.iter().enumerate() {
        for &w in &subset[i + 1..] {
            let class = match c.gap(u, w) {
                2 => {
                    gap2 += 1;
                    PairClass::Gap2
                }
                1 => {
                    gap1 += 1;
                    PairClass::Gap1
                }
                _ => {
                    unconstrained += 1;
                    PairClass::Unconstrained
                }
            };
            pairs.push((u, w, class));
        }
    }
    let full = unconstrained == 0;
    AuditReport {
        subset_size: subset.len(),
        pairs_total: pairs.len(),
        gap2,
        gap1,
        unconstrained,
        full_coverage: full,
        certified_lower_bound: full.then(|| subset.len().saturating_sub(1)),
        pairs,
    }
}
