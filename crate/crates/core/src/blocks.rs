//! Biconnected components (blocks), cut vertices and the block–cut tree.

use std::collections::BTreeSet;

use crate::graph::{pair, Pair, UnderlyingGraph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Vertex sets of the blocks, each sorted ascending. Blocks are ordered by
    /// their smallest vertex, then lexicographically.
    pub blocks: Vec<Vec<Vertex>>,
    pub cut_vertices: BTreeSet<Vertex>,
    /// For each block, the cut vertices it contains (the block side of the
    /// bipartite block–cut tree).
    pub block_cut_tree: Vec<Vec<Vertex>>,
}

impl BlockDecomposition {
    /// Blocks containing each vertex, indexed by vertex.
    pub fn blocks_of_vertices(&self, n: usize) -> Vec<Vec<usize>> {
        let mut of = vec![Vec::new(); n];
        for (i, block) in self.blocks.iter().enumerate() {
            for &v in block {
                of[v].push(i);
            }
        }
        of
    }

    /// Whether the graph is connected, has at least 3 vertices and no cut vertex.
    pub fn is_two_connected(&self, n: usize) -> bool {
        n >= 3 && self.blocks.len() == 1 && self.blocks[0].len() == n
    }
}

/// Lowpoint DFS (Hopcroft–Tarjan), iterative. Isolated vertices become
/// singleton blocks and a bridge becomes a 2-vertex block.
pub fn block_decomposition(h: &UnderlyingGraph) -> BlockDecomposition {
    let n = h.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut edge_stack: Vec<Pair> = Vec::new();
    let mut blocks: Vec<Vec<Vertex>> = Vec::new();
    // (vertex, parent, next neighbor position)
    let mut stack: Vec<(Vertex, Option<Vertex>, usize)> = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        if h.neighbors(root).is_empty() {
            blocks.push(vec![root]);
            continue;
        }
        stack.push((root, None, 0));
        while let Some(top) = stack.last_mut() {
            let (v, parent, pos) = *top;
            let nbrs = h.neighbors(v);
            if pos < nbrs.len() {
                top.2 += 1;
                let w = nbrs[pos];
                if Some(w) == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, Some(v), 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(p) = parent {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut members = BTreeSet::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            members.insert(a);
                            members.insert(b);
                            if (a, b) == (p, v) {
                                break;
                            }
                        }
                        blocks.push(members.into_iter().collect());
                    }
                }
            }
        }
    }

    blocks.sort();
    let mut count = vec![0usize; n];
    for block in &blocks {
        for &v in block {
            count[v] += 1;
        }
    }
    let cut_vertices: BTreeSet<Vertex> = (0..n).filter(|&v| count[v] >= 2).collect();
    let block_cut_tree = blocks
        .iter()
        .map(|b| {
            b.iter()
                .copied()
                .filter(|v| cut_vertices.contains(v))
                .collect()
        })
        .collect();
    BlockDecomposition {
        blocks,
        cut_vertices,
        block_cut_tree,
    }
}

/// Edges of `h` with both endpoints inside `block`.
pub fn block_edges(h: &UnderlyingGraph, block: &[Vertex]) -> Vec<Pair> {
    let mut out = Vec::new();
    for (i, &u) in block.iter().enumerate() {
        for &w in &block[i + 1..] {
            if h.has_edge(u, w) {
                out.push(pair(u, w));
            }
        }
    }
    out
}
