//! Clique lower bounds: pairwise-constrained vertices need pairwise distinct
//! labels, so a clique of size `m` in the constraint graph forces span `m - 1`.

use crate::graph::Vertex;
use crate::labeling::ConstraintGraph;

/// Largest graph (in vertices) searched exhaustively for a maximum clique.
pub const EXACT_CLIQUE_LIMIT: usize = 64;

/// Lower bound on the minimum span: (clique size) - 1.
///
/// Uses the exact maximum clique when the graph has at most
/// [`EXACT_CLIQUE_LIMIT`] vertices, otherwise the best greedy clique.
pub fn span_certificate_clique(c: &ConstraintGraph) -> usize {
    best_clique(c).len().saturating_sub(1)
}

/// A large clique of the constraint graph (maximum when `n <= 64`).
pub fn best_clique(c: &ConstraintGraph) -> Vec<Vertex> {
    let greedy = greedy_clique(c);
    if c.vertex_count() <= EXACT_CLIQUE_LIMIT {
        let exact = max_clique_small(c, greedy.len());
        if exact.len() > greedy.len() {
            return exact;
        }
    }
    greedy
}

/// Best clique among greedy extensions from every start vertex, always
/// adding the candidate with the most constrained partners.
pub fn greedy_clique(c: &ConstraintGraph) -> Vec<Vertex> {
    let n = c.vertex_count();
    let mut best = Vec::new();
    for start in 0..n {
        let mut clique = vec![start];
        let mut candidates: Vec<Vertex> = c.neighbors(start).iter().map(|&(w, _)| w).collect();
        while !candidates.is_empty() {
            let &next = candidates
                .iter()
                .max_by_key(|&&v| (c.constraint_degree(v), std::cmp::Reverse(v)))
                .unwrap();
            clique.push(next);
            candidates.retain(|&v| v != next && c.gap(v, next) > 0);
        }
        if clique.len() > best.len() {
            clique.sort_unstable();
            best = clique;
        }
    }
    best
}

/// Exhaustive maximum clique over u64 bitsets. Returns an empty vector when
/// no clique larger than `known` exists.
fn max_clique_small(c: &ConstraintGraph, known: usize) -> Vec<Vertex> {
    let n = c.vertex_count();
    debug_assert!(n <= 64);
    let adj: Vec<u64> = (0..n)
        .map(|v| c.neighbors(v).iter().fold(0u64, |m, &(w, _)| m | (1 << w)))
        .collect();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut search = CliqueSearch {
        adj: &adj,
        best: Vec::new(),
        best_len: known,
        current: Vec::new(),
    };
    search.expand(all);
    search.best
}

struct CliqueSearch<'a> {
    adj: &'a [u64],
    best: Vec<Vertex>,
    best_len: usize,
    current: Vec<Vertex>,
}

impl CliqueSearch<'_> {
    fn expand(&mut self, mut candidates: u64) {
        if candidates == 0 {
            if self.current.len() > self.best_len {
                self.best_len = self.current.len();
                self.best = self.current.clone();
            }
            return;
        }
        while candidates != 0 {
            if self.current.len() + candidates.count_ones() as usize <= self.best_len {
                return;
            }
            let v = candidates.trailing_zeros() as usize;
            candidates &= !(1 << v);
            self.current.push(v);
            self.expand(candidates & self.adj[v]);
            self.current.pop();
        }
    }
}
