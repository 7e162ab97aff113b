//! Oriented graphs: a directed graph whose underlying graph is simple.
//!
//! Vertices are dense indices `0..n`. Arcs are stored as a sorted set, and
//! sorted in/out adjacency lists are derived once at construction.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

pub type Vertex = usize;

/// Unordered vertex pair, always stored as `(min, max)`.
pub type Pair = (Vertex, Vertex);

#[inline]
pub fn pair(u: Vertex, w: Vertex) -> Pair {
    if u < w {
        (u, w)
    } else {
        (w, u)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrientedGraph {
    n: usize,
    arcs: BTreeSet<(Vertex, Vertex)>,
    out_adj: Vec<Vec<Vertex>>,
    in_adj: Vec<Vec<Vertex>>,
}

impl OrientedGraph {
    /// Validates `arcs` and builds the graph.
    pub fn new<I>(n: usize, arcs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in arcs {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if set.contains(&(v, u)) {
                return Err(GraphError::OppositeArcs(u, v));
            }
            if !set.insert((u, v)) {
                return Err(GraphError::DuplicateArc(u, v));
            }
        }
        Ok(Self::from_valid_set(n, set))
    }

    /// Like [`OrientedGraph::new`] but merges repeated arcs instead of rejecting them.
    pub fn new_merging<I>(n: usize, arcs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let set: BTreeSet<_> = arcs.into_iter().collect();
        Self::new(n, set)
    }

    fn from_valid_set(n: usize, arcs: BTreeSet<(Vertex, Vertex)>) -> Self {
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v) in &arcs {
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        for list in in_adj.iter_mut() {
            list.sort_unstable();
        }
        OrientedGraph {
            n,
            arcs,
            out_adj,
            in_adj,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_valid_set(n, BTreeSet::new())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.arcs.contains(&(u, v))
    }

    /// True if `u` and `v` are joined by an arc in either direction.
    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    pub fn out_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.in_adj[v].len()
    }

    pub fn degrees(&self) -> Degrees {
        let per_vertex: Vec<VertexDegree> = (0..self.n)
            .map(|v| VertexDegree {
                in_degree: self.in_degree(v),
                out_degree: self.out_degree(v),
            })
            .collect();
        let max_in_out = per_vertex
            .iter()
            .map(|d| d.in_degree.max(d.out_degree))
            .max()
            .unwrap_or(0);
        Degrees {
            per_vertex,
            max_in_out,
        }
    }

    /// Max over vertices of `max(in-degree, out-degree)`.
    pub fn max_in_out_degree(&self) -> usize {
        (0..self.n)
            .map(|v| self.in_degree(v).max(self.out_degree(v)))
            .max()
            .unwrap_or(0)
    }

    pub fn reverse(&self) -> OrientedGraph {
        let arcs = self.arcs.iter().map(|&(u, v)| (v, u)).collect();
        Self::from_valid_set(self.n, arcs)
    }

    pub fn underlying(&self) -> UnderlyingGraph {
        UnderlyingGraph::new(self.n, self.arcs.iter().map(|&(u, v)| pair(u, v)))
    }

    /// Sub-digraph induced on `vertices`, keeping the original vertex indices.
    pub fn induced_arcs<'a>(
        &'a self,
        member: &'a [bool],
    ) -> impl Iterator<Item = (Vertex, Vertex)> + 'a {
        self.arcs().filter(move |&(u, v)| member[u] && member[v])
    }

    /// Max in/out degree within the sub-digraph induced on `vertices`.
    pub fn induced_max_in_out_degree(&self, vertices: &[Vertex]) -> usize {
        let mut member = vec![false; self.n];
        for &v in vertices {
            member[v] = true;
        }
        let mut indeg = vec![0usize; self.n];
        let mut outdeg = vec![0usize; self.n];
        for (u, v) in self.induced_arcs(&member) {
            outdeg[u] += 1;
            indeg[v] += 1;
        }
        vertices
            .iter()
            .map(|&v| indeg[v].max(outdeg[v]))
            .max()
            .unwrap_or(0)
    }

    /// Unordered pairs `{u, w}` (u ≠ w) joined by a length-2 path of the given shape.
    ///
    /// The middle vertex is always distinct from both endpoints. Adjacent pairs
    /// are included when they also realize the pattern.
    pub fn two_path_pairs(&self, pattern: PathPattern) -> BTreeSet<Pair> {
        let mut pairs = BTreeSet::new();
        for b in 0..self.n {
            match pattern {
                PathPattern::P1 => {
                    for &u in &self.in_adj[b] {
                        for &w in &self.out_adj[b] {
                            if u != w {
                                pairs.insert(pair(u, w));
                            }
                        }
                    }
                }
                PathPattern::P2 => insert_all_pairs(&self.in_adj[b], &mut pairs),
                PathPattern::P3 => insert_all_pairs(&self.out_adj[b], &mut pairs),
            }
        }
        pairs
    }

    /// Edge-list text: a `n <count>` header followed by one `u v` line per arc.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (u, v) in self.arcs() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut n = None;
        let mut arcs = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_whitespace();
            let first = fields.next().unwrap_or_default();
            let second = fields.next();
            if fields.next().is_some() {
                return Err(GraphError::Parse {
                    line: line_no,
                    message: format!("expected two fields, got `{line}`"),
                });
            }
            let parse_num = |s: &str| {
                s.parse::<usize>().map_err(|_| GraphError::Parse {
                    line: line_no,
                    message: format!("not a non-negative integer: `{s}`"),
                })
            };
            match (n, first, second) {
                (None, "n", Some(count)) => n = Some(parse_num(count)?),
                (None, _, _) => {
                    return Err(GraphError::Parse {
                        line: line_no,
                        message: "missing `n <count>` header".into(),
                    })
                }
                (Some(_), u, Some(v)) => arcs.push((parse_num(u)?, parse_num(v)?)),
                (Some(_), _, None) => {
                    return Err(GraphError::Parse {
                        line: line_no,
                        message: format!("expected `u v`, got `{line}`"),
                    })
                }
            }
        }
        let n = n.ok_or(GraphError::Parse {
            line: 0,
            message: "missing `n <count>` header".into(),
        })?;
        OrientedGraph::new(n, arcs)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph G {\n");
        for v in 0..self.n {
            out.push_str(&format!("  {v};\n"));
        }
        for (u, v) in self.arcs() {
            out.push_str(&format!("  {u} -> {v};\n"));
        }
        out.push_str("}\n");
        out
    }
}

fn insert_all_pairs(list: &[Vertex], pairs: &mut BTreeSet<Pair>) {
    for (i, &u) in list.iter().enumerate() {
        for &w in &list[i + 1..] {
            pairs.insert(pair(u, w));
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct VertexDegree {
    pub in_degree: usize,
    pub out_degree: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Degrees {
    pub per_vertex: Vec<VertexDegree>,
    pub max_in_out: usize,
}

/// Orientation of a length-2 path `u - b - w`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum PathPattern {
    /// `u → b → w`
    P1,
    /// `u → b ← w`
    P2,
    /// `u ← b → w`
    P3,
}

impl PathPattern {
    pub const ALL: [PathPattern; 3] = [PathPattern::P1, PathPattern::P2, PathPattern::P3];
}

impl fmt::Display for PathPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PathPattern::P1 => "P1",
            PathPattern::P2 => "P2",
            PathPattern::P3 => "P3",
        };
        f.write_str(s)
    }
}

/// Simple undirected graph.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnderlyingGraph {
    n: usize,
    edges: BTreeSet<Pair>,
    adj: Vec<Vec<Vertex>>,
}

impl UnderlyingGraph {
    /// Builds from unordered pairs; loops are dropped and repeats merged.
    pub fn new<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = Pair>,
    {
        let edges: BTreeSet<Pair> = edges
            .into_iter()
            .filter(|&(u, v)| u != v)
            .map(|(u, v)| pair(u, v))
            .collect();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        UnderlyingGraph { n, edges, adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<Pair> {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.contains(&pair(u, v))
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Component id per vertex, numbered in order of smallest member.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let mut comp = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (count, comp)
    }

    /// BFS distances from `src`, `None` for unreachable vertices.
    pub fn bfs_distances(&self, src: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = std::collections::VecDeque::new();
        dist[src] = Some(0);
        queue.push_back(src);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap_or(0);
            for &w in &self.adj[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}
