use olabel::blocks::block_decomposition;
use olabel::certificate::span_certificate_clique;
use olabel::constructions::plane::ProjectivePlane;
use olabel::constructions::torus::{short_path, torus_path_witness_with, CaseTable};
use olabel::constructions::triple::{Base, Copy3};
use olabel::constructions::{
    pair_class_audit, projective_plane_incidence, torus_digraph, torus_path_witness,
    triple_copy_with_layout, verify_inner_coverage, PairClass, TorusVertex,
};
use olabel::{build_constraints, ConstraintSet, PathPattern};

#[test]
fn torus_invariants_k4_to_k12() {
    for k in 4..=12 {
        let g = torus_digraph(k).unwrap();
        assert_eq!(g.vertex_count(), k * k);
        // k + 2 at row 0 / column k − 1 for k >= 5
        assert!(g.max_in_out_degree() <= k + 2, "k={k}");
        assert!(block_decomposition(&g.underlying()).is_two_connected(k * k));
        let r = verify_inner_coverage(k).unwrap();
        assert!(r.uncovered_list.is_empty(), "k={k}");
        assert_eq!(r.covered, r.inner_pairs_total);
        assert_eq!(r.certified_lower_bound, Some((k - 2) * (k - 2) - 1));
    }
}

#[test]
fn torus_k6_clique_certificate() {
    let g = torus_digraph(6).unwrap();
    let c = build_constraints(&g, ConstraintSet::only(PathPattern::P1));
    assert!(span_certificate_clique(&c) >= 15);
}

#[test]
fn amended_witness_table_agrees_with_bfs() {
    for k in [4, 5, 6, 7, 8, 10] {
        let g = torus_digraph(k).unwrap();
        let inner: Vec<TorusVertex> = (1..k - 1)
            .flat_map(|a| (1..k - 1).map(move |b| TorusVertex::new(a, b)))
            .collect();
        for &s in &inner {
            for &t in &inner {
                if s == t {
                    continue;
                }
                let w = torus_path_witness_with(k, s, t, CaseTable::Amended)
                    .unwrap_or_else(|e| panic!("k={k}: {e}"));
                assert!(w.path.len() <= 3);
                for step in w.path.windows(2) {
                    assert!(g.has_arc(step[0].index(k), step[1].index(k)));
                }
                let (si, ti) = (s.index(k), t.index(k));
                assert!(short_path(&g, si, ti).is_some() || short_path(&g, ti, si).is_some());
            }
        }
    }
}

#[test]
fn published_table_fails_only_in_case_4i() {
    use olabel::constructions::{WitnessCase, WitnessError};
    for k in [6, 8] {
        for a in 1..k - 1 {
            for b in 1..k - 1 {
                for c in 1..k - 1 {
                    for d in 1..k - 1 {
                        let (s, t) = (TorusVertex::new(a, b), TorusVertex::new(c, d));
                        if s == t {
                            continue;
                        }
                        match torus_path_witness(k, s, t) {
                            Ok(_) => {}
                            Err(WitnessError::MissingArc { case, .. }) => {
                                assert_eq!(case, WitnessCase::C4i);
                                assert!(a == c + 1 && d >= b + 2);
                            }
                            Err(e) => panic!("{e}"),
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn projective_plane_axioms() {
    for q in [2, 3, 5, 7] {
        let plane = ProjectivePlane::new(q).unwrap();
        let n = q * q + q + 1;
        assert_eq!(plane.points.len(), n);
        let mut on_line = vec![Vec::new(); n];
        let mut through_point = vec![Vec::new(); n];
        for &(p, l) in &plane.incidences {
            on_line[l].push(p);
            through_point[p].push(l);
        }
        assert!(on_line.iter().all(|ps| ps.len() == q + 1));
        assert!(through_point.iter().all(|ls| ls.len() == q + 1));
        for p in 0..n {
            for r in p + 1..n {
                let common = through_point[p]
                    .iter()
                    .filter(|l| through_point[r].contains(l))
                    .count();
                assert_eq!(common, 1, "points {p},{r} for q={q}");
                let meet = on_line[p].iter().filter(|x| on_line[r].contains(x)).count();
                assert_eq!(meet, 1, "lines {p},{r} for q={q}");
            }
        }
        let g = projective_plane_incidence(q).unwrap();
        assert_eq!(g.vertex_count(), 2 * n);
    }
}

#[test]
fn triple_copy_trichotomy() {
    for q in [2, 3] {
        let (g, layout) = triple_copy_with_layout(q).unwrap();
        let points = layout.point_copies();
        let s = ConstraintSet::from_patterns([PathPattern::P1, PathPattern::P2]);
        let report = pair_class_audit(&g, &points, s);
        assert!(report.full_coverage);
        for &(u, w, class) in &report.pairs {
            let (x, y) = (layout.vertex(u), layout.vertex(w));
            let (Base::Point(p), Base::Point(r)) = (x.base, y.base) else {
                unreachable!()
            };
            let twin_p = x.copy != y.copy && p == r;
            let expected = if twin_p {
                PairClass::Gap2
            } else {
                PairClass::Gap1
            };
            assert_eq!(class, expected);
            // which path shape joins them
            let same_copy = x.copy == y.copy;
            let p2 = g
                .two_path_pairs(PathPattern::P2)
                .contains(&(u.min(w), u.max(w)));
            let p1 = g
                .two_path_pairs(PathPattern::P1)
                .contains(&(u.min(w), u.max(w)));
            if same_copy {
                assert!(p2);
            } else if !twin_p {
                assert!(p1);
            }
        }
        assert_eq!(report.certified_lower_bound, Some(3 * (q * q + q + 1) - 1));
        assert_eq!(g.max_in_out_degree(), q + 2);
        let _ = Copy3::ALL;
    }
}
