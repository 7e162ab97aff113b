//! Seeded random oriented graphs. All generators use ChaCha8 seeded from a
//! `u64`, so a seed fully determines the output.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::GraphError;
use crate::graph::{OrientedGraph, Vertex};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `arcs` arcs drawn uniformly among ordered pairs, rejecting self-loops,
/// duplicates and pairs whose opposite arc is already present.
pub fn random_oriented(n: usize, arcs: usize, seed: u64) -> Result<OrientedGraph, GraphError> {
    let max = n * n.saturating_sub(1) / 2;
    if arcs > max {
        return Err(GraphError::TooManyArcs {
            n,
            requested: arcs,
            max,
        });
    }
    let mut rng = rng(seed);
    let mut set = BTreeSet::new();
    while set.len() < arcs {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v || set.contains(&(u, v)) || set.contains(&(v, u)) {
            continue;
        }
        set.insert((u, v));
    }
    OrientedGraph::new(n, set)
}

/// Random graph with every in- and out-degree at most `k`: `attempts`
/// uniformly drawn ordered pairs, each kept only if it keeps the graph
/// oriented and within the degree cap.
pub fn random_bounded_degree(n: usize, k: usize, attempts: usize, seed: u64) -> OrientedGraph {
    let mut rng = rng(seed);
    let mut set = BTreeSet::new();
    let mut indeg = vec![0; n];
    let mut outdeg = vec![0; n];
    if n >= 2 {
        for _ in 0..attempts {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u == v
                || outdeg[u] >= k
                || indeg[v] >= k
                || set.contains(&(u, v))
                || set.contains(&(v, u))
            {
                continue;
            }
            set.insert((u, v));
            outdeg[u] += 1;
            indeg[v] += 1;
        }
    }
    OrientedGraph::new(n, set).expect("generator keeps the graph oriented")
}

/// Random recursive tree (vertex `i` attaches to a uniform earlier vertex)
/// with each edge oriented by a fair coin.
pub fn random_tree_orientation(n: usize, seed: u64) -> OrientedGraph {
    let mut rng = rng(seed);
    let arcs: Vec<(Vertex, Vertex)> = (1..n)
        .map(|i| {
            let j = rng.gen_range(0..i);
            if rng.gen_bool(0.5) {
                (i, j)
            } else {
                (j, i)
            }
        })
        .collect();
    OrientedGraph::new(n, arcs).expect("a tree has no opposite arcs")
}

/// A tree of 2-connected blocks. Each block is a directed cycle on 3 to 6
/// vertices plus random chords that keep in- and out-degrees within the
/// block at most `k` (`k >= 1`). Each new block is glued at an existing vertex
/// that lies in at most one other block, so global underlying degrees reach
/// up to `4k`.
pub fn random_block_chain(blocks: usize, k: usize, seed: u64) -> OrientedGraph {
    assert!(k >= 1, "a 2-connected block needs in/out degree at least 1");
    let mut rng = rng(seed);
    let mut arcs: Vec<(Vertex, Vertex)> = Vec::new();
    let mut membership: Vec<usize> = Vec::new();
    let mut n = 0;
    for _ in 0..blocks {
        let size = rng.gen_range(3..=6);
        let mut verts = Vec::with_capacity(size);
        if n > 0 {
            let candidates: Vec<Vertex> = (0..n).filter(|&v| membership[v] < 2).collect();
            let glue = candidates[rng.gen_range(0..candidates.len())];
            membership[glue] += 1;
            verts.push(glue);
        }
        while verts.len() < size {
            verts.push(n);
            membership.push(1);
            n += 1;
        }
        let mut local = BTreeSet::new();
        let mut indeg = vec![0; size];
        let mut outdeg = vec![0; size];
        for i in 0..size {
            let j = (i + 1) % size;
            local.insert((i, j));
            outdeg[i] += 1;
            indeg[j] += 1;
        }
        for _ in 0..size * 2 {
            let i = rng.gen_range(0..size);
            let j = rng.gen_range(0..size);
            if i == j
                || local.contains(&(i, j))
                || local.contains(&(j, i))
                || outdeg[i] >= k
                || indeg[j] >= k
            {
                continue;
            }
            local.insert((i, j));
            outdeg[i] += 1;
            indeg[j] += 1;
        }
        arcs.extend(local.into_iter().map(|(i, j)| (verts[i], verts[j])));
    }
    OrientedGraph::new(n, arcs).expect("blocks share at most one vertex")
}
