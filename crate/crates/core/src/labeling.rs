//! Constraint sets, constraint graphs, labelings and the greedy labeler.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::LabelingError;
use crate::graph::{pair, OrientedGraph, Pair, PathPattern, Vertex};

/// A subset of `{P1, P2, P3}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct ConstraintSet(u8);

impl ConstraintSet {
    pub const EMPTY: ConstraintSet = ConstraintSet(0);
    pub const FULL: ConstraintSet = ConstraintSet(0b111);

    fn bit(p: PathPattern) -> u8 {
        match p {
            PathPattern::P1 => 1,
            PathPattern::P2 => 2,
            PathPattern::P3 => 4,
        }
    }

    pub fn from_patterns<I: IntoIterator<Item = PathPattern>>(patterns: I) -> Self {
        ConstraintSet(patterns.into_iter().fold(0, |acc, p| acc | Self::bit(p)))
    }

    pub fn only(p: PathPattern) -> Self {
        ConstraintSet(Self::bit(p))
    }

    pub fn contains(self, p: PathPattern) -> bool {
        self.0 & Self::bit(p) != 0
    }

    pub fn is_subset_of(self, other: ConstraintSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn patterns(self) -> impl Iterator<Item = PathPattern> {
        PathPattern::ALL
            .into_iter()
            .filter(move |&p| self.contains(p))
    }

    /// All eight subsets, in bitmask order.
    pub fn all_subsets() -> impl Iterator<Item = ConstraintSet> {
        (0u8..8).map(ConstraintSet)
    }

    /// The set obtained by exchanging P2 and P3 (what arc reversal does).
    pub fn mirrored(self) -> ConstraintSet {
        let p1 = self.0 & 1;
        let p2 = (self.0 >> 1) & 1;
        let p3 = (self.0 >> 2) & 1;
        ConstraintSet(p1 | (p3 << 1) | (p2 << 2))
    }
}

impl fmt::Display for ConstraintSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("none");
        }
        let names: Vec<String> = self.patterns().map(|p| p.to_string()).collect();
        f.write_str(&names.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid constraint set `{0}`: expected a comma list over P1,P2,P3 or `all`/`none`")]
pub struct ParseConstraintSetError(String);

impl FromStr for ConstraintSet {
    type Err = ParseConstraintSetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        match trimmed.to_ascii_lowercase().as_str() {
            "all" => return Ok(ConstraintSet::FULL),
            "none" | "" => return Ok(ConstraintSet::EMPTY),
            _ => {}
        }
        let mut set = ConstraintSet::EMPTY;
        for part in trimmed.split(',') {
            let p = match part.trim().to_ascii_uppercase().as_str() {
                "P1" => PathPattern::P1,
                "P2" => PathPattern::P2,
                "P3" => PathPattern::P3,
                _ => return Err(ParseConstraintSetError(s.to_string())),
            };
            set.0 |= Self::bit(p);
        }
        Ok(set)
    }
}

/// Required label gaps between vertex pairs.
///
/// `gap2` pairs need labels at least 2 apart, `gap1` pairs need distinct
/// labels. The two sets are disjoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintGraph {
    n: usize,
    gap2: BTreeSet<Pair>,
    gap1: BTreeSet<Pair>,
    adj: Vec<Vec<(Vertex, u8)>>,
}

impl ConstraintGraph {
    /// Pairs present in both sets keep only the gap-2 requirement.
    pub fn from_pairs(n: usize, gap2: BTreeSet<Pair>, gap1: BTreeSet<Pair>) -> Self {
        let gap1: BTreeSet<Pair> = gap1.difference(&gap2).copied().collect();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &gap2 {
            adj[u].push((v, 2));
            adj[v].push((u, 2));
        }
        for &(u, v) in &gap1 {
            adj[u].push((v, 1));
            adj[v].push((u, 1));
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        ConstraintGraph { n, gap2, gap1, adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn gap2_pairs(&self) -> &BTreeSet<Pair> {
        &self.gap2
    }

    pub fn gap1_pairs(&self) -> &BTreeSet<Pair> {
        &self.gap1
    }

    /// Constrained partners of `v` with the required gap, sorted by vertex.
    pub fn neighbors(&self, v: Vertex) -> &[(Vertex, u8)] {
        &self.adj[v]
    }

    /// Required gap between `u` and `v` (0 when unconstrained).
    pub fn gap(&self, u: Vertex, v: Vertex) -> u8 {
        match self.adj[u].binary_search_by_key(&v, |&(w, _)| w) {
            Ok(i) => self.adj[u][i].1,
            Err(_) => 0,
        }
    }

    pub fn constraint_degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// Sum of the required gaps over all constrained partners of `v`.
    pub fn weighted_degree(&self, v: Vertex) -> usize {
        self.adj[v].iter().map(|&(_, g)| g as usize).sum()
    }
}

/// Gap-2 pairs are the underlying edges; gap-1 pairs are the pairs joined by
/// some pattern of `s` that are not already adjacent.
pub fn build_constraints(g: &OrientedGraph, s: ConstraintSet) -> ConstraintGraph {
    let gap2: BTreeSet<Pair> = g.arcs().map(|(u, v)| pair(u, v)).collect();
    let mut gap1 = BTreeSet::new();
    for p in s.patterns() {
        gap1.extend(g.two_path_pairs(p));
    }
    ConstraintGraph::from_pairs(g.vertex_count(), gap2, gap1)
}

/// A total labeling `vertex -> label`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Labeling {
    labels: Vec<usize>,
}

impl Labeling {
    pub fn new(labels: Vec<usize>) -> Self {
        Labeling { labels }
    }

    pub fn from_partial(labels: &[Option<usize>]) -> Result<Self, LabelingError> {
        labels
            .iter()
            .enumerate()
            .map(|(v, l)| l.ok_or(LabelingError::PartialLabeling(v)))
            .collect::<Result<Vec<_>, _>>()
            .map(Labeling::new)
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, v: Vertex) -> usize {
        self.labels[v]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Largest label, 0 for the empty labeling.
    pub fn span(&self) -> usize {
        self.labels.iter().copied().max().unwrap_or(0)
    }

    /// One `v label` line per vertex.
    pub fn to_text(&self) -> String {
        self.labels
            .iter()
            .enumerate()
            .map(|(v, l)| format!("{v} {l}\n"))
            .collect()
    }

    pub fn parse_text(text: &str, n: usize) -> Result<Self, LabelingError> {
        let mut labels = vec![None; n];
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_whitespace().map(str::parse::<usize>);
            if let (Some(Ok(v)), Some(Ok(l))) = (fields.next(), fields.next()) {
                if v < n {
                    labels[v] = Some(l);
                    continue;
                }
            }
            return Err(LabelingError::Malformed(line.to_string()));
        }
        Labeling::from_partial(&labels)
    }
}

/// Whether `f` satisfies every gap requirement of `c`.
pub fn is_valid(c: &ConstraintGraph, f: &Labeling) -> Result<bool, LabelingError> {
    if f.len() < c.vertex_count() {
        return Err(LabelingError::PartialLabeling(f.len()));
    }
    if f.len() > c.vertex_count() {
        return Err(LabelingError::SizeMismatch {
            labels: f.len(),
            n: c.vertex_count(),
        });
    }
    let ok = |&(u, v): &Pair, gap: usize| f.label(u).abs_diff(f.label(v)) >= gap;
    Ok(c.gap2.iter().all(|p| ok(p, 2)) && c.gap1.iter().all(|p| ok(p, 1)))
}

/// Least label for `v` compatible with every already-labeled constrained partner.
pub(crate) fn least_free_label(c: &ConstraintGraph, labels: &[Option<usize>], v: Vertex) -> usize {
    let mut forbidden: Vec<usize> = Vec::new();
    for &(w, gap) in c.neighbors(v) {
        if let Some(l) = labels[w] {
            let gap = gap as usize;
            let lo = l.saturating_sub(gap - 1);
            forbidden.extend(lo..=l + gap - 1);
        }
    }
    forbidden.sort_unstable();
    forbidden.dedup();
    let mut candidate = 0;
    for x in forbidden {
        if x == candidate {
            candidate += 1;
        } else if x > candidate {
            break;
        }
    }
    candidate
}

/// Labels `vertices` in the given order, each with the least label that does
/// not conflict with the vertices labeled so far.
pub(crate) fn greedy_extend<I>(c: &ConstraintGraph, labels: &mut [Option<usize>], vertices: I)
where
    I: IntoIterator<Item = Vertex>,
{
    for v in vertices {
        labels[v] = Some(least_free_label(c, labels, v));
    }
}

pub fn greedy_on_constraints(c: &ConstraintGraph, order: &[Vertex]) -> Labeling {
    let mut labels = vec![None; c.vertex_count()];
    greedy_extend(c, &mut labels, order.iter().copied());
    Labeling::from_partial(&labels).expect("order must be a permutation of all vertices")
}

/// Greedy labeling of `g` under `s`, processing vertices in `order`.
///
/// # Panics
///
/// If `order` does not cover every vertex.
pub fn greedy_label(g: &OrientedGraph, s: ConstraintSet, order: &[Vertex]) -> Labeling {
    greedy_on_constraints(&build_constraints(g, s), order)
}

/// Span guaranteed by the greedy labeler for `s` when every in- and
/// out-degree is at most `k`.
///
/// A vertex has at most `2k` neighbors (3 forbidden labels each) plus
/// `2k²` P1-partners, `k(k-1)` P2-partners and `k(k-1)` P3-partners
/// (1 forbidden label each).
pub fn greedy_span_bound(s: ConstraintSet, k: usize) -> usize {
    let mut bound = 6 * k;
    if s.contains(PathPattern::P1) {
        bound += 2 * k * k;
    }
    for p in [PathPattern::P2, PathPattern::P3] {
        if s.contains(p) {
            bound += k * k.saturating_sub(1);
        }
    }
    bound
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexOrder {
    /// Ascending vertex index.
    Identity,
    /// Descending vertex index.
    Reverse,
    /// Uniform shuffle from a seeded ChaCha8 stream.
    Random(u64),
    /// Descending underlying degree, ties by ascending index.
    DegreeDescending,
}

impl VertexOrder {
    pub fn permutation(self, g: &OrientedGraph) -> Vec<Vertex> {
        let n = g.vertex_count();
        let mut order: Vec<Vertex> = (0..n).collect();
        match self {
            VertexOrder::Identity => {}
            VertexOrder::Reverse => order.reverse(),
            VertexOrder::Random(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                order.shuffle(&mut rng);
            }
            VertexOrder::DegreeDescending => {
                order.sort_by_key(|&v| (std::cmp::Reverse(g.in_degree(v) + g.out_degree(v)), v));
            }
        }
        order
    }
}

/// Machine-readable summary of a labeling run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelReport {
    pub span: usize,
    pub labels: Vec<usize>,
    pub valid: bool,
    pub bound: usize,
    pub bound_satisfied: bool,
}

impl LabelReport {
    pub fn new(c: &ConstraintGraph, f: &Labeling, bound: usize) -> Self {
        let span = f.span();
        LabelReport {
            span,
            labels: f.labels().to_vec(),
            valid: is_valid(c, f).unwrap_or(false),
            bound,
            bound_satisfied: span <= bound,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_p1() -> OrientedGraph {
        // u=0 → b=1 → w=2
        OrientedGraph::new(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn constraint_set_parsing() {
        assert_eq!("all".parse::<ConstraintSet>().unwrap(), ConstraintSet::FULL);
        assert_eq!(
            "none".parse::<ConstraintSet>().unwrap(),
            ConstraintSet::EMPTY
        );
        let s: ConstraintSet = "P1,p3".parse().unwrap();
        assert!(s.contains(PathPattern::P1) && s.contains(PathPattern::P3));
        assert!(!s.contains(PathPattern::P2));
        assert_eq!(s.to_string(), "P1,P3");
        assert_eq!(s.mirrored().to_string(), "P1,P2");
        assert!("P4".parse::<ConstraintSet>().is_err());
        assert_eq!(ConstraintSet::all_subsets().count(), 8);
    }

    #[test]
    fn constraints_for_directed_path() {
        let g = path_p1();
        let c = build_constraints(&g, ConstraintSet::only(PathPattern::P1));
        assert_eq!(c.gap2_pairs(), &BTreeSet::from([(0, 1), (1, 2)]));
        assert_eq!(c.gap1_pairs(), &BTreeSet::from([(0, 2)]));
        let c = build_constraints(&g, ConstraintSet::only(PathPattern::P2));
        assert!(c.gap1_pairs().is_empty());
        assert_eq!(c.gap(0, 1), 2);
        assert_eq!(c.gap(0, 2), 0);
    }

    #[test]
    fn adjacency_dominates_two_paths() {
        // 0→1→2 plus 0→2: pair {0,2} is both adjacent and P1-joined
        let g = OrientedGraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let c = build_constraints(&g, ConstraintSet::FULL);
        assert!(c.gap1_pairs().is_empty());
        assert_eq!(c.gap(0, 2), 2);
    }

    #[test]
    fn validity_examples() {
        let arc = OrientedGraph::new(2, [(0, 1)]).unwrap();
        let c = build_constraints(&arc, ConstraintSet::EMPTY);
        assert!(is_valid(&c, &Labeling::new(vec![0, 2])).unwrap());
        assert!(!is_valid(&c, &Labeling::new(vec![0, 1])).unwrap());
        assert_eq!(
            is_valid(&c, &Labeling::new(vec![0])),
            Err(LabelingError::PartialLabeling(1))
        );

        let c = build_constraints(&path_p1(), ConstraintSet::only(PathPattern::P1));
        let f = Labeling::new(vec![2, 0, 3]);
        assert!(is_valid(&c, &f).unwrap());
        assert_eq!(f.span(), 3);
    }

    #[test]
    fn greedy_examples() {
        let f = greedy_label(&path_p1(), ConstraintSet::only(PathPattern::P1), &[0, 1, 2]);
        assert_eq!(f.labels(), &[0, 2, 4]);

        // u=0 → b=1 ← w=2: w is adjacent to b (label 2) and P2-joined to u
        // (label 0), so 0..=3 are all taken
        let g = OrientedGraph::new(3, [(0, 1), (2, 1)]).unwrap();
        let s = ConstraintSet::only(PathPattern::P2);
        let f = greedy_label(&g, s, &[0, 1, 2]);
        assert_eq!(f.labels(), &[0, 2, 4]);
        assert!(is_valid(&build_constraints(&g, s), &f).unwrap());
        assert!(!is_valid(&build_constraints(&g, s), &Labeling::new(vec![0, 2, 1])).unwrap());
    }

    #[test]
    fn empty_graph_has_span_zero() {
        let g = OrientedGraph::empty(0);
        let f = greedy_label(&g, ConstraintSet::FULL, &[]);
        assert_eq!(f.span(), 0);
        assert!(is_valid(&build_constraints(&g, ConstraintSet::FULL), &f).unwrap());
    }

    #[test]
    fn bound_table() {
        let p = |s: &str| s.parse::<ConstraintSet>().unwrap();
        let k = 3;
        assert_eq!(greedy_span_bound(p("none"), k), 18);
        assert_eq!(greedy_span_bound(p("P1"), k), 2 * 9 + 18);
        assert_eq!(greedy_span_bound(p("P2"), k), 9 + 15);
        assert_eq!(greedy_span_bound(p("P3"), k), 9 + 15);
        assert_eq!(greedy_span_bound(p("P2,P3"), k), 2 * 9 + 12);
        assert_eq!(greedy_span_bound(p("P1,P2"), k), 3 * 9 + 15);
        assert_eq!(greedy_span_bound(p("all"), k), 4 * 9 + 12);
    }

    #[test]
    fn labeling_text_roundtrip() {
        let f = Labeling::new(vec![3, 0, 7]);
        assert_eq!(Labeling::parse_text(&f.to_text(), 3).unwrap(), f);
        assert!(Labeling::parse_text("0 1\n", 2).is_err());
    }

    #[test]
    fn orders_are_permutations() {
        let g = path_p1();
        for order in [
            VertexOrder::Identity,
            VertexOrder::Reverse,
            VertexOrder::Random(5),
            VertexOrder::DegreeDescending,
        ] {
            let mut p = order.permutation(&g);
            p.sort_unstable();
            assert_eq!(p, vec![0, 1, 2]);
        }
        assert_eq!(VertexOrder::DegreeDescending.permutation(&g), vec![1, 0, 2]);
        assert_eq!(
            VertexOrder::Random(9).permutation(&g),
            VertexOrder::Random(9).permutation(&g)
        );
    }
}
