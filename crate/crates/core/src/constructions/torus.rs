//! The torus digraph on `Z_k²` and its length-≤2 path witnesses.
//!
//! Vertex `(a, b)` has index `a·k + b`. Arcs out of `ab`, with all coordinate
//! arithmetic mod `k` and comparisons on representatives in `0..k`:
//!
//! * `ab → bc` when `c > a`
//! * `ab → (b+1)c` when `c ≤ a` and `c ≠ a−1`
//! * `ab → a(b+1)` when `a ≠ b+2`
//! * `ab → (a+1)b` when `a ≠ b+1`
//!
//! Any two vertices with all coordinates outside `{0, k−1}` are joined by a
//! directed path of length at most 2 in one direction, so those `(k−2)²`
//! vertices are pairwise P1-constrained.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{ConstructionError, GraphError};
use crate::graph::{OrientedGraph, Vertex};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct TorusVertex {
    pub a: usize,
    pub b: usize,
}

impl TorusVertex {
    pub fn new(a: usize, b: usize) -> Self {
        TorusVertex { a, b }
    }

    pub fn index(self, k: usize) -> Vertex {
        self.a * k + self.b
    }

    pub fn from_index(v: Vertex, k: usize) -> Self {
        TorusVertex { a: v / k, b: v % k }
    }

    /// Both coordinates avoid `0` and `k − 1`.
    pub fn is_inner(self, k: usize) -> bool {
        (1..k - 1).contains(&self.a) && (1..k - 1).contains(&self.b)
    }
}

impl fmt::Display for TorusVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Out-neighbors of `(a, b)` under the four rules, duplicates merged.
///
/// This is the raw rule set; it contains `k` pairs of opposite arcs at the
/// wrap-around (see [`torus_digraph`]).
pub fn rule_out_neighbors(k: usize, a: usize, b: usize) -> BTreeSet<TorusVertex> {
    let inc = |x: usize| (x + 1) % k;
    let dec = |x: usize| (x + k - 1) % k;
    let mut out = BTreeSet::new();
    for c in 0..k {
        if c > a {
            out.insert(TorusVertex::new(b, c));
        } else if c != dec(a) {
            out.insert(TorusVertex::new(inc(b), c));
        }
    }
    if a != (b + 2) % k {
        out.insert(TorusVertex::new(a, inc(b)));
    }
    if a != inc(b) {
        out.insert(TorusVertex::new(inc(a), b));
    }
    out
}

/// `ab → bc` with `c > a`.
fn is_rule_i(from: TorusVertex, to: TorusVertex) -> bool {
    to.a == from.b && to.b > from.a
}

/// Whether `from → to` is an arc of [`torus_digraph`]`(k)`.
pub fn torus_has_arc(k: usize, from: TorusVertex, to: TorusVertex) -> bool {
    rule_out_neighbors(k, from.a, from.b).contains(&to)
        && !(is_rule_i(to, from) && !is_rule_i(from, to))
}

/// Out-neighbors of `(a, b)` in [`torus_digraph`]`(k)`.
pub fn torus_out_neighbors(k: usize, a: usize, b: usize) -> BTreeSet<TorusVertex> {
    let from = TorusVertex::new(a, b);
    rule_out_neighbors(k, a, b)
        .into_iter()
        .filter(|&to| !(is_rule_i(to, from) && !is_rule_i(from, to)))
        .collect()
}

/// Unordered pairs joined by arcs in both directions under the raw rules.
pub fn rule_opposite_pairs(k: usize) -> Vec<(TorusVertex, TorusVertex)> {
    let mut out = Vec::new();
    for a in 0..k {
        for b in 0..k {
            let from = TorusVertex::new(a, b);
            for to in rule_out_neighbors(k, a, b) {
                if from < to && rule_out_neighbors(k, to.a, to.b).contains(&from) {
                    out.push((from, to));
                }
            }
        }
    }
    out
}

/// The torus digraph on `k²` vertices.
///
/// Taken literally, the rules with wrap-around produce `k` opposite pairs
/// `(0,b) → (b,k−1)` (rule i) and `(b,k−1) → (0,b)` (rules ii–iv wrapping
/// past `k−1`). Each such pair keeps only its rule-i arc. Inner vertices
/// never use the dropped arcs.
pub fn torus_digraph(k: usize) -> Result<OrientedGraph, ConstructionError> {
    if k < 4 {
        return Err(ConstructionError::KTooSmall(k));
    }
    let mut arcs = BTreeSet::new();
    for a in 0..k {
        for b in 0..k {
            let from = TorusVertex::new(a, b).index(k);
            for to in torus_out_neighbors(k, a, b) {
                arcs.insert((from, to.index(k)));
            }
        }
    }
    OrientedGraph::new(k * k, arcs).map_err(|e| match e {
        GraphError::SelfLoop(u) => ConstructionError::ConstructionInvalid(u, u),
        GraphError::OppositeArcs(u, v) | GraphError::DuplicateArc(u, v) => {
            ConstructionError::ConstructionInvalid(u, v)
        }
        GraphError::VertexOutOfRange { vertex, .. } => {
            ConstructionError::ConstructionInvalid(vertex, vertex)
        }
        GraphError::Parse { .. } | GraphError::TooManyArcs { .. } => {
            unreachable!("not produced by graph construction")
        }
    })
}

/// Which branch of the case analysis produced a witness path.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum WitnessCase {
    #[serde(rename = "1")]
    C1,
    #[serde(rename = "2")]
    C2,
    #[serde(rename = "3")]
    C3,
    #[serde(rename = "3.i")]
    C3i,
    #[serde(rename = "3.ii")]
    C3ii,
    #[serde(rename = "4")]
    C4,
    #[serde(rename = "4.i")]
    C4i,
    #[serde(rename = "4.ii")]
    C4ii,
    #[serde(rename = "5")]
    C5,
    #[serde(rename = "5.i")]
    C5i,
    #[serde(rename = "5.ii")]
    C5ii,
    #[serde(rename = "6")]
    C6,
    #[serde(rename = "6.i")]
    C6i,
    #[serde(rename = "6.ii")]
    C6ii,
}

impl fmt::Display for WitnessCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            WitnessCase::C1 => "1",
            WitnessCase::C2 => "2",
            WitnessCase::C3 => "3",
            WitnessCase::C3i => "3.i",
            WitnessCase::C3ii => "3.ii",
            WitnessCase::C4 => "4",
            WitnessCase::C4i => "4.i",
            WitnessCase::C4ii => "4.ii",
            WitnessCase::C5 => "5",
            WitnessCase::C5i => "5.i",
            WitnessCase::C5ii => "5.ii",
            WitnessCase::C6 => "6",
            WitnessCase::C6i => "6.i",
            WitnessCase::C6ii => "6.ii",
        };
        f.write_str(s)
    }
}

/// A directed path of length 1 or 2 between the two requested vertices, in
/// whichever direction the case prescribes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathWitness {
    pub case: WitnessCase,
    pub path: Vec<TorusVertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("no case covers {src} and {dst}")]
    CaseAnalysisGap { src: TorusVertex, dst: TorusVertex },
    #[error("case {case} for {src}, {dst} uses missing arc {from} -> {to}")]
    MissingArc {
        src: TorusVertex,
        dst: TorusVertex,
        case: WitnessCase,
        from: TorusVertex,
        to: TorusVertex,
    },
    #[error("{0} is not an inner vertex or coincides with the other endpoint")]
    NotInnerPair(TorusVertex),
}

/// Which table of paths to use for case 4.i (`a = c + 1`, `b < d`).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum CaseTable {
    /// `(c+1)b → (b+1)(c−1) → cd`. The second arc exists only when
    /// `d = b + 1`, so pairs with `d ≥ b + 2` come back as
    /// [`WitnessError::MissingArc`].
    #[default]
    Published,
    /// `cd → (d+1)c → (c+1)b`, the mirror image of case 3.i.
    Amended,
}

/// The path prescribed by the published case analysis for two distinct inner
/// vertices, with every arc checked against [`torus_digraph`].
pub fn torus_path_witness(
    k: usize,
    src: TorusVertex,
    dst: TorusVertex,
) -> Result<PathWitness, WitnessError> {
    torus_path_witness_with(k, src, dst, CaseTable::Published)
}

pub fn torus_path_witness_with(
    k: usize,
    src: TorusVertex,
    dst: TorusVertex,
    table: CaseTable,
) -> Result<PathWitness, WitnessError> {
    for v in [src, dst] {
        if k < 4 || !v.is_inner(k) {
            return Err(WitnessError::NotInnerPair(v));
        }
    }
    if src == dst {
        return Err(WitnessError::NotInnerPair(src));
    }
    let witness = case_path(src, dst, table).ok_or(WitnessError::CaseAnalysisGap { src, dst })?;
    for step in witness.path.windows(2) {
        let (from, to) = (step[0], step[1]);
        if !torus_has_arc(k, from, to) {
            return Err(WitnessError::MissingArc {
                src,
                dst,
                case: witness.case,
                from,
                to,
            });
        }
    }
    let ends = (witness.path[0], *witness.path.last().unwrap());
    if ends != (src, dst) && ends != (dst, src) {
        return Err(WitnessError::CaseAnalysisGap { src, dst });
    }
    Ok(witness)
}

/// Inner coordinates never wrap: `b+1`, `d+1` stay below `k` and `a−1`,
/// `c−1` stay at least 0.
fn case_path(src: TorusVertex, dst: TorusVertex, table: CaseTable) -> Option<PathWitness> {
    use WitnessCase::*;
    let v = TorusVertex::new;
    let (a, b, c, d) = (src.a, src.b, dst.a, dst.b);
    let w = |case, path: Vec<TorusVertex>| Some(PathWitness { case, path });

    if a < c && b < d {
        return w(C1, vec![v(a, b), v(b, c), v(c, d)]);
    }
    if a > c && b > d {
        return w(C2, vec![v(c, d), v(d, a), v(a, b)]);
    }
    if a < c && b > d {
        if c == a + 1 {
            return w(C3i, vec![v(a, b), v(b + 1, a), v(a + 1, d)]);
        }
        if b == d + 1 {
            return w(C3ii, vec![v(c, d), v(d + 1, a - 1), v(a, d + 1)]);
        }
        return w(C3, vec![v(c, d), v(d + 1, a), v(a, b)]);
    }
    if a > c && b < d {
        if a == c + 1 {
            return match table {
                CaseTable::Published => w(C4i, vec![v(c + 1, b), v(b + 1, c - 1), v(c, d)]),
                CaseTable::Amended => w(C4i, vec![v(c, d), v(d + 1, c), v(c + 1, b)]),
            };
        }
        if d == b + 1 {
            return w(C4ii, vec![v(a, b), v(b + 1, c - 1), v(c, b + 1)]);
        }
        return w(C4, vec![v(a, b), v(b + 1, c), v(c, d)]);
    }
    if a == c && b != d {
        // canonical orientation b < d
        let (b, d) = (b.min(d), b.max(d));
        if d == b + 1 && a != b + 2 {
            return w(C5i, vec![v(a, b), v(a, b + 1)]);
        }
        if d == b + 1 && a == b + 2 {
            return w(C5ii, vec![v(a, b + 1), v(a, b)]);
        }
        return w(C5, vec![v(a, b), v(b + 1, a), v(a, d)]);
    }
    if b == d && a != c {
        // canonical orientation a < c
        let (a, c) = (a.min(c), a.max(c));
        if c == a + 1 && a != b + 1 {
            return w(C6i, vec![v(a, b), v(a + 1, b)]);
        }
        if c == a + 1 && a == b + 1 {
            return w(C6ii, vec![v(a + 1, b), v(a, b)]);
        }
        return w(C6, vec![v(a, b), v(b, c - 1), v(c, b)]);
    }
    None
}

/// Coverage of inner pairs by directed paths of length ≤ 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub k: usize,
    pub inner_vertices: usize,
    pub inner_pairs_total: usize,
    pub covered: usize,
    pub uncovered_list: Vec<(TorusVertex, TorusVertex)>,
    /// Path found by the BFS oracle for each covered pair, keyed `"(a,b)-(c,d)"`.
    pub witness_map: BTreeMap<String, Vec<TorusVertex>>,
    /// `(k−2)² − 1` when every pair is covered.
    pub certified_lower_bound: Option<usize>,
}

/// Shortest directed path of length ≤ 2 from `from` to `to`, if any.
pub fn short_path(g: &OrientedGraph, from: Vertex, to: Vertex) -> Option<Vec<Vertex>> {
    if g.has_arc(from, to) {
        return Some(vec![from, to]);
    }
    g.out_neighbors(from)
        .iter()
        .find(|&&mid| g.has_arc(mid, to))
        .map(|&mid| vec![from, mid, to])
}

/// Exhaustive check of every unordered inner pair.
pub fn verify_inner_coverage(k: usize) -> Result<CoverageReport, ConstructionError> {
    let g = torus_digraph(k)?;
    let inner: Vec<TorusVertex> = (0..k * k)
        .map(|v| TorusVertex::from_index(v, k))
        .filter(|t| t.is_inner(k))
        .collect();
    let mut covered = 0;
    let mut uncovered_list = Vec::new();
    let mut witness_map = BTreeMap::new();
    for (i, &s) in inner.iter().enumerate() {
        for &t in &inner[i + 1..] {
            let (si, ti) = (s.index(k), t.index(k));
            match short_path(&g, si, ti).or_else(|| short_path(&g, ti, si)) {
                Some(p) => {
                    covered += 1;
                    let path = p
                        .into_iter()
                        .map(|x| TorusVertex::from_index(x, k))
                        .collect();
                    witness_map.insert(format!("{s}-{t}"), path);
                }
                None => uncovered_list.push((s, t)),
            }
        }
    }
    let m = inner.len();
    Ok(CoverageReport {
        k,
        inner_vertices: m,
        inner_pairs_total: m * m.saturating_sub(1) / 2,
        covered,
        certified_lower_bound: uncovered_list.is_empty().then(|| m.saturating_sub(1)),
        uncovered_list,
        witness_map,
    })
}
