mod common;

use std::collections::BTreeSet;

use olabel::blocks::block_decomposition;
use olabel::certificate::span_certificate_clique;
use olabel::exact::{distance_two_pairs, solve_constraints, undirected_l21_constraints};
use olabel::labeling::greedy_on_constraints;
use olabel::{
    block_inductive_label, build_constraints, exact_lambda, greedy_label, greedy_span_bound,
    is_valid, ConstraintSet, OrientedGraph, PathPattern, VertexOrder,
};
use proptest::prelude::*;

/// Oriented graph on up to `max_n` vertices; each pair absent, forward or backward.
fn oriented_graph(max_n: usize) -> impl Strategy<Value = OrientedGraph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(0u8..3, pairs).prop_map(move |codes| {
            let mut arcs = Vec::new();
            let mut it = codes.into_iter();
            for u in 0..n {
                for w in u + 1..n {
                    match it.next().unwrap() {
                        1 => arcs.push((u, w)),
                        2 => arcs.push((w, u)),
                        _ => {}
                    }
                }
            }
            OrientedGraph::new(n, arcs).unwrap()
        })
    })
}

fn constraint_set() -> impl Strategy<Value = ConstraintSet> {
    (0u8..8).prop_map(|bits| {
        ConstraintSet::from_patterns(
            PathPattern::ALL
                .into_iter()
                .enumerate()
                .filter(move |(i, _)| bits & (1 << i) != 0)
                .map(|(_, p)| p),
        )
    })
}

proptest! {
    #[test]
    fn reversal_is_an_involution(g in oriented_graph(9)) {
        prop_assert_eq!(g.reverse().reverse(), g);
    }

    #[test]
    fn reversal_swaps_p2_and_p3(g in oriented_graph(9)) {
        let r = g.reverse();
        prop_assert_eq!(r.two_path_pairs(PathPattern::P2), g.two_path_pairs(PathPattern::P3));
        prop_assert_eq!(r.two_path_pairs(PathPattern::P3), g.two_path_pairs(PathPattern::P2));
        prop_assert_eq!(r.two_path_pairs(PathPattern::P1), g.two_path_pairs(PathPattern::P1));
    }

    #[test]
    fn pattern_union_is_common_neighbor_pairs(g in oriented_graph(9)) {
        let h = g.underlying();
        let mut expected = BTreeSet::new();
        for b in 0..g.vertex_count() {
            let nb = h.neighbors(b);
            for (i, &u) in nb.iter().enumerate() {
                for &w in &nb[i + 1..] {
                    expected.insert((u.min(w), u.max(w)));
                }
            }
        }
        let union: BTreeSet<_> = PathPattern::ALL
            .into_iter()
            .flat_map(|p| g.two_path_pairs(p))
            .collect();
        prop_assert_eq!(union, expected);
    }

    #[test]
    fn block_sizes_sum_to_n_minus_components(g in oriented_graph(10)) {
        let h = g.underlying();
        let d = block_decomposition(&h);
        let (components, _) = h.components();
        let sum: usize = d.blocks.iter().map(|b| b.len() - 1).sum();
        prop_assert_eq!(sum, g.vertex_count() - components);
        // every edge in exactly one block
        for &(u, v) in h.edges() {
            let holders = d.blocks.iter().filter(|b| b.contains(&u) && b.contains(&v)).count();
            prop_assert_eq!(holders, 1);
        }
        let of = d.blocks_of_vertices(g.vertex_count());
        for v in 0..g.vertex_count() {
            prop_assert_eq!(of[v].len() >= 2, d.cut_vertices.contains(&v));
        }
    }

    #[test]
    fn block_degree_never_exceeds_global(g in oriented_graph(10)) {
        prop_assert!(olabel::block_degree_bound(&g) <= g.max_in_out_degree());
    }

    #[test]
    fn constraints_match_definition(g in oriented_graph(8), s in constraint_set()) {
        let c = build_constraints(&g, s);
        prop_assert!(c.gap1_pairs().is_disjoint(c.gap2_pairs()));
        let gaps = common::gap_matrix(&g, s);
        for u in 0..g.vertex_count() {
            for w in 0..g.vertex_count() {
                if u != w {
                    prop_assert_eq!(c.gap(u, w) as usize, gaps[u][w]);
                }
            }
        }
    }

    #[test]
    fn full_set_is_undirected_distance_two(g in oriented_graph(9)) {
        let c = build_constraints(&g, ConstraintSet::FULL);
        prop_assert_eq!(c.gap1_pairs(), &distance_two_pairs(&g.underlying()));
        prop_assert_eq!(c, undirected_l21_constraints(&g.underlying()));
    }

    #[test]
    fn reversed_constraints_swap_p2_p3(g in oriented_graph(9)) {
        let p2 = ConstraintSet::only(PathPattern::P2);
        let p3 = ConstraintSet::only(PathPattern::P3);
        prop_assert_eq!(build_constraints(&g.reverse(), p2), build_constraints(&g, p3));
    }

    #[test]
    fn greedy_is_valid_deterministic_and_bounded(
        g in oriented_graph(12),
        s in constraint_set(),
        seed in any::<u64>(),
    ) {
        let order = VertexOrder::Random(seed).permutation(&g);
        let f = greedy_label(&g, s, &order);
        prop_assert_eq!(&f, &greedy_label(&g, s, &order));
        prop_assert!(is_valid(&build_constraints(&g, s), &f).unwrap());
        prop_assert!(f.span() <= greedy_span_bound(s, g.max_in_out_degree()));
    }

    #[test]
    fn block_inductive_is_valid_and_bounded(g in oriented_graph(12)) {
        let f = block_inductive_label(&g);
        let c = build_constraints(&g, ConstraintSet::only(PathPattern::P1));
        prop_assert!(is_valid(&c, &f).unwrap());
        let k = olabel::block_degree_bound(&g);
        prop_assert!(f.span() <= olabel::block_span_bound(k));
    }

    #[test]
    fn exact_matches_brute_force(g in oriented_graph(6), s in constraint_set()) {
        let r = exact_lambda(&g, s).unwrap();
        let c = build_constraints(&g, s);
        prop_assert!(is_valid(&c, &r.witness).unwrap());
        prop_assert_eq!(r.witness.span(), r.lambda);
        prop_assert!(r.lambda >= span_certificate_clique(&c));
        prop_assert_eq!(r.lambda, common::brute_force_lambda(&g, s));
    }

    #[test]
    fn exact_is_deterministic(g in oriented_graph(7), s in constraint_set()) {
        let a = exact_lambda(&g, s).unwrap();
        let b = exact_lambda(&g, s).unwrap();
        prop_assert_eq!((a.lambda, a.witness, a.nodes), (b.lambda, b.witness, b.nodes));
    }
}

#[test]
fn greedy_is_suboptimal_on_directed_path() {
    let g = OrientedGraph::new(3, [(0, 1), (1, 2)]).unwrap();
    let s = ConstraintSet::only(PathPattern::P1);
    assert_eq!(greedy_label(&g, s, &[0, 1, 2]).span(), 4);
    assert_eq!(exact_lambda(&g, s).unwrap().lambda, 3);
}

#[test]
fn solver_runs_on_oracle_constraints() {
    // K_{1,4}: undirected λ_{2,1} = Δ + 1 = 5
    let h = olabel::UnderlyingGraph::new(5, (1..5).map(|v| (0, v)));
    let r = solve_constraints(&undirected_l21_constraints(&h), 1_000_000).unwrap();
    assert_eq!(r.lambda, 5);
    let c = undirected_l21_constraints(&h);
    assert_eq!(greedy_on_constraints(&c, &[0, 1, 2, 3, 4]).span(), 5);
}
