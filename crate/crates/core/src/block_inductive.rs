//! Block-inductive labeling for `S = {P1}`.
//!
//! The span depends only on `k`, the largest in- or out-degree inside any
//! single block of the underlying graph, not on the global degree. Leaf
//! blocks are peeled off one cut vertex at a time; the remaining core is
//! labeled greedily, then the peeled blocks are re-attached in reverse: the
//! fan of uncolored neighbors around the cut vertex gets labels from a small
//! pool, and the rest of each block is labeled greedily.

use crate::blocks::block_decomposition;
use crate::graph::PathPattern;
use crate::graph::{OrientedGraph, Vertex};
use crate::labeling::{build_constraints, greedy_extend, ConstraintGraph, ConstraintSet, Labeling};

/// Largest in/out degree within the sub-digraph induced on a single block.
pub fn block_degree_bound(g: &OrientedGraph) -> usize {
    block_decomposition(&g.underlying())
        .blocks
        .iter()
        .map(|b| g.induced_max_in_out_degree(b))
        .max()
        .unwrap_or(0)
}

/// `2k² + 6k` for the block degree bound `k`.
pub fn block_span_bound(k: usize) -> usize {
    2 * k * k + 6 * k
}

/// One peeling step: leaf blocks hanging at `cut`.
#[derive(Clone, Debug)]
struct PeelStep {
    cut: Vertex,
    leaf_blocks: Vec<Vec<Vertex>>,
}

#[derive(Clone, Debug)]
pub struct BlockLabeling {
    pub labeling: Labeling,
    /// Block degree bound `k`.
    pub k: usize,
    pub bound: usize,
    /// Cut vertices whose fan step fell back to greedy labeling.
    pub repaired: Vec<Vertex>,
}

pub fn block_inductive_label(g: &OrientedGraph) -> Labeling {
    block_inductive_label_detailed(g).labeling
}

pub fn block_inductive_label_detailed(g: &OrientedGraph) -> BlockLabeling {
    let n = g.vertex_count();
    let decomposition = block_decomposition(&g.underlying());
    let k = decomposition
        .blocks
        .iter()
        .map(|b| g.induced_max_in_out_degree(b))
        .max()
        .unwrap_or(0);
    let bound = block_span_bound(k);
    let c = build_constraints(g, ConstraintSet::only(PathPattern::P1));

    let (core, steps) = peel(n, decomposition.blocks);

    let mut labels: Vec<Option<usize>> = vec![None; n];
    greedy_extend(&c, &mut labels, core);

    let mut repaired = Vec::new();
    for step in steps.iter().rev() {
        if !label_fan(g, &c, &mut labels, step, bound) {
            repaired.push(step.cut);
            for block in &step.leaf_blocks {
                for &x in block {
                    if x != step.cut {
                        labels[x] = None;
                    }
                }
            }
            let rest = step
                .leaf_blocks
                .iter()
                .flatten()
                .copied()
                .filter(|&x| x != step.cut);
            greedy_extend(&c, &mut labels, rest);
        }
    }

    let labeling = Labeling::from_partial(&labels).expect("every vertex lies in some block");
    debug_assert!(
        labeling.span() <= bound,
        "block-inductive span exceeded 2k²+6k"
    );
    BlockLabeling {
        labeling,
        k,
        bound,
        repaired,
    }
}

/// Repeatedly removes the leaf blocks at the smallest qualifying cut vertex
/// until every component is a single block. Returns the vertices of the
/// remaining blocks (ascending) and the peeling steps in order.
fn peel(n: usize, blocks: Vec<Vec<Vertex>>) -> (Vec<Vertex>, Vec<PeelStep>) {
    let mut alive: Vec<Option<Vec<Vertex>>> = blocks.into_iter().map(Some).collect();
    let mut count = vec![0usize; n];
    let mut of: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, b) in alive.iter().enumerate() {
        for &v in b.as_ref().unwrap() {
            count[v] += 1;
            of[v].push(i);
        }
    }
    let mut steps = Vec::new();

    loop {
        let is_cut = |v: Vertex, count: &[usize]| count[v] >= 2;
        let mut chosen = None;
        for v in 0..n {
            if !is_cut(v, &count) {
                continue;
            }
            let with_other_cut = of[v]
                .iter()
                .filter(|&&bi| {
                    alive[bi]
                        .as_ref()
                        .is_some_and(|b| b.iter().any(|&u| u != v && is_cut(u, &count)))
                })
                .count();
            if with_other_cut <= 1 {
                chosen = Some(v);
                break;
            }
        }
        let Some(v) = chosen else { break };

        let mut leaves = Vec::new();
        let mut kept_any = false;
        for &bi in &of[v] {
            let Some(b) = alive[bi].as_ref() else {
                continue;
            };
            if b.iter().any(|&u| u != v && is_cut(u, &count)) {
                kept_any = true;
            } else {
                leaves.push(bi);
            }
        }
        let mut leaf_blocks = Vec::new();
        for bi in leaves {
            let b = alive[bi].take().unwrap();
            for &u in &b {
                count[u] -= 1;
            }
            leaf_blocks.push(b);
        }
        if !kept_any {
            // every block at v was a leaf: v survives alone
            let bi = alive.len();
            alive.push(Some(vec![v]));
            of[v].push(bi);
            count[v] += 1;
        }
        steps.push(PeelStep {
            cut: v,
            leaf_blocks,
        });
    }

    let mut core: Vec<Vertex> = (0..n).filter(|&v| count[v] > 0).collect();
    core.sort_unstable();
    (core, steps)
}

/// Labels the uncolored neighbors of the cut vertex from a pool of `2k`
/// labels, then the remaining leaf-block vertices greedily. Returns `false`
/// (leaving labels partially assigned) if the pool cannot be formed or the
/// budget is exceeded.
///
/// Pool labels are pairwise at least 2 apart. Alternating odd/even picks from
/// consecutive free labels would keep gap 2 within the in-fan and within the
/// out-fan but not between an in-neighbor and an adjacent out-neighbor, so
/// the stronger spacing is used. Within a leaf block, fan vertices on the
/// same side get distinct labels; separate blocks reuse the pool since they
/// are only joined through the cut vertex.
fn label_fan(
    g: &OrientedGraph,
    c: &ConstraintGraph,
    labels: &mut [Option<usize>],
    step: &PeelStep,
    bound: usize,
) -> bool {
    let v = step.cut;
    let Some(fv) = labels[v] else { return false };

    // Labels forbidden for every fan vertex: within 1 of f(v), and the labels
    // of v's colored neighbors (P1 partners through v).
    let mut forbidden = vec![false; bound + 1];
    for x in fv.saturating_sub(1)..=fv + 1 {
        if x <= bound {
            forbidden[x] = true;
        }
    }
    for &w in g.in_neighbors(v).iter().chain(g.out_neighbors(v)) {
        if let Some(l) = labels[w] {
            if l <= bound {
                forbidden[l] = true;
            }
        }
    }

    let mut in_fans: Vec<Vec<Vertex>> = Vec::new();
    let mut out_fans: Vec<Vec<Vertex>> = Vec::new();
    let mut widest = 0;
    for block in &step.leaf_blocks {
        let ins: Vec<Vertex> = block
            .iter()
            .copied()
            .filter(|&x| x != v && labels[x].is_none() && g.has_arc(x, v))
            .collect();
        let outs: Vec<Vertex> = block
            .iter()
            .copied()
            .filter(|&x| x != v && labels[x].is_none() && g.has_arc(v, x))
            .collect();
        widest = widest.max(ins.len()).max(outs.len());
        in_fans.push(ins);
        out_fans.push(outs);
    }

    let mut pool = Vec::with_capacity(2 * widest);
    let mut next = 0;
    while pool.len() < 2 * widest && next <= bound {
        if !forbidden[next] {
            pool.push(next);
            next += 2;
        } else {
            next += 1;
        }
    }
    if pool.len() < 2 * widest {
        return false;
    }
    let odd: Vec<usize> = pool.iter().copied().step_by(2).collect();
    let even: Vec<usize> = pool.iter().copied().skip(1).step_by(2).collect();

    for (ins, outs) in in_fans.iter().zip(&out_fans) {
        for (&x, &l) in ins.iter().zip(&odd) {
            labels[x] = Some(l);
        }
        for (&x, &l) in outs.iter().zip(&even) {
            labels[x] = Some(l);
        }
    }

    for block in &step.leaf_blocks {
        for &x in block {
            if labels[x].is_none() {
                greedy_extend(c, labels, [x]);
                if labels[x].is_some_and(|l| l > bound) {
                    return false;
                }
            }
        }
    }
    true
}
