//! Test-only oracles, independent of the library's constraint machinery.

#![allow(dead_code)]

use olabel::{ConstraintSet, OrientedGraph, PathPattern};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Required gap between `u` and `w` straight from the definition: 2 for an
/// arc either way, 1 for a length-2 path whose orientation is in `s`.
pub fn definitional_gap(g: &OrientedGraph, s: ConstraintSet, u: usize, w: usize) -> usize {
    if g.has_arc(u, w) || g.has_arc(w, u) {
        return 2;
    }
    for b in 0..g.vertex_count() {
        if b == u || b == w {
            continue;
        }
        let p1 = (g.has_arc(u, b) && g.has_arc(b, w)) || (g.has_arc(w, b) && g.has_arc(b, u));
        let p2 = g.has_arc(u, b) && g.has_arc(w, b);
        let p3 = g.has_arc(b, u) && g.has_arc(b, w);
        if (p1 && s.contains(PathPattern::P1))
            || (p2 && s.contains(PathPattern::P2))
            || (p3 && s.contains(PathPattern::P3))
        {
            return 1;
        }
    }
    0
}

pub fn gap_matrix(g: &OrientedGraph, s: ConstraintSet) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    (0..n)
        .map(|u| {
            (0..n)
                .map(|w| {
                    if u == w {
                        0
                    } else {
                        definitional_gap(g, s, u, w)
                    }
                })
                .collect()
        })
        .collect()
}

/// Naive minimum span: for each cap from 0 upward, enumerate labelings
/// vertex by vertex in index order, checking constraints only.
pub fn brute_force_lambda(g: &OrientedGraph, s: ConstraintSet) -> usize {
    brute_force_on_gaps(&gap_matrix(g, s))
}

pub fn brute_force_on_gaps(gaps: &[Vec<usize>]) -> usize {
    let n = gaps.len();
    let mut labels = vec![0usize; n];
    // 3(n-1) always suffices: each vertex has at most n-1 partners forbidding 3 labels
    for cap in 0..=3 * n {
        if extend(gaps, &mut labels, 0, cap) {
            return cap;
        }
    }
    unreachable!("cap 3n is always feasible")
}

fn extend(gaps: &[Vec<usize>], labels: &mut [usize], i: usize, cap: usize) -> bool {
    if i == labels.len() {
        return true;
    }
    for x in 0..=cap {
        if (0..i).all(|j| x.abs_diff(labels[j]) >= gaps[i][j]) {
            labels[i] = x;
            if extend(gaps, labels, i + 1, cap) {
                return true;
            }
        }
    }
    false
}

/// Every oriented graph on `n` labeled vertices: each of the `C(n,2)` pairs
/// is absent, `u→w`, or `w→u`.
pub fn all_oriented_graphs(n: usize) -> impl Iterator<Item = OrientedGraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |w| (u, w)))
        .collect();
    let total = 3usize.pow(pairs.len() as u32);
    (0..total).map(move |mut code| {
        let mut arcs = Vec::new();
        for &(u, w) in &pairs {
            match code % 3 {
                1 => arcs.push((u, w)),
                2 => arcs.push((w, u)),
                _ => {}
            }
            code /= 3;
        }
        OrientedGraph::new(n, arcs).unwrap()
    })
}

/// One representative per isomorphism class of [`all_oriented_graphs`].
pub fn oriented_graphs_up_to_iso(n: usize) -> Vec<OrientedGraph> {
    let perms = permutations(n);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for g in all_oriented_graphs(n) {
        let canon = perms
            .iter()
            .map(|p| {
                let mut arcs: Vec<(usize, usize)> = g.arcs().map(|(u, v)| (p[u], p[v])).collect();
                arcs.sort_unstable();
                arcs
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(g);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Random oriented graph with `n` in `1..=max_n` and up to `2n` arcs.
pub fn random_small_graph(seed: u64, max_n: usize) -> OrientedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_n);
    let max_arcs = (n * (n - 1) / 2).min(2 * n);
    let arcs = rng.gen_range(0..=max_arcs);
    olabel::random::random_oriented(n, arcs, rng.gen()).unwrap()
}

/// Gaps of the undirected L(2,1) problem on the underlying graph, from
/// BFS distances computed here rather than by the library.
pub fn undirected_l21_gaps(g: &OrientedGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let adj = |u: usize, w: usize| g.has_arc(u, w) || g.has_arc(w, u);
    let mut gaps = vec![vec![0; n]; n];
    for src in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[src] = 0;
        let mut queue = std::collections::VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            for y in 0..n {
                if dist[y] == usize::MAX && adj(x, y) {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        for w in 0..n {
            gaps[src][w] = match dist[w] {
                1 => 2,
                2 => 1,
                _ => 0,
            };
        }
    }
    gaps
}

/// Smallest `k` admitting a proper coloring of the underlying graph.
pub fn brute_force_chromatic(g: &OrientedGraph) -> usize {
    let n = g.vertex_count();
    fn color(g: &OrientedGraph, c: &mut [usize], i: usize, k: usize) -> bool {
        if i == c.len() {
            return true;
        }
        for x in 0..k {
            if (0..i).all(|j| c[j] != x || !(g.has_arc(i, j) || g.has_arc(j, i))) {
                c[i] = x;
                if color(g, c, i + 1, k) {
                    return true;
                }
            }
        }
        false
    }
    let mut c = vec![0; n];
    (0..=n).find(|&k| color(g, &mut c, 0, k)).unwrap()
}
