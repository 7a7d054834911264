use proptest::prelude::*;

use spanner_lab_core::hst::HstTree;
use spanner_lab_core::io::{spanner_from_text, spanner_to_edgelist, spanner_to_json};
use spanner_lab_core::metric::{mst, verify_metric_axioms, verify_ultrametric};
use spanner_lab_core::nets::{build_nets, verify_net_property};
use spanner_lab_core::spanners::{greedy_spanner, net_tree_spanner, theta_graph, yao_graph};
use spanner_lab_core::verify::stretch;
use spanner_lab_core::weight::{format_ratio, parse_exact};
use spanner_lab_core::{Epsilon, MetricSpace, PointSet2D, SpannerGraph, TableMetric};

/// Distinct integer points in the plane under L1 distance.
fn l1_metric() -> impl Strategy<Value = TableMetric<u64>> {
    prop::collection::btree_set((0u64..40, 0u64..40), 2..24).prop_map(|set| {
        let pts: Vec<_> = set.into_iter().collect();
        TableMetric::from_fn(pts.len(), |i, j| {
            pts[i].0.abs_diff(pts[j].0) + pts[i].1.abs_diff(pts[j].1)
        })
    })
}

fn epsilon() -> impl Strategy<Value = Epsilon> {
    (1u64..=16, 1u64..=16)
        .prop_filter("in (0, 1]", |(p, q)| p <= q)
        .prop_map(|(p, q)| Epsilon::new(p, q).unwrap())
}

fn hst() -> impl Strategy<Value = HstTree> {
    (1u32..=3, 1u32..=4)
        .prop_filter("n <= 1024", |(d, h)| d * h <= 10)
        .prop_map(|(d, h)| HstTree::new(d, h).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mst_weight_is_permutation_invariant(m in l1_metric(), seed in any::<u64>()) {
        let n = m.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed | 1;
        for i in (1..n).rev() {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            perm.swap(i, (s % (i as u64 + 1)) as usize);
        }
        let permuted = TableMetric::from_fn(n, |i, j| m.dist(perm[i], perm[j]));
        prop_assert_eq!(mst(&m).1, mst(&permuted).1);
        prop_assert_eq!(mst(&m).0.edge_count(), n - 1);
    }

    #[test]
    fn hst_is_an_ultrametric(t in hst()) {
        prop_assert!(verify_ultrametric(&t).unwrap().is_pass());
        prop_assert!(verify_metric_axioms(&t).unwrap().is_pass());
    }

    #[test]
    fn forced_edges_match_pair_scan(t in hst(), e in epsilon()) {
        let (num, den) = e.forced_threshold();
        let n = t.n();
        let scan: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| t.dist(u, v) * den < num)
            .collect();
        let mut got = t.forced_edges(e);
        got.sort_unstable();
        prop_assert_eq!(got, scan);
    }

    #[test]
    fn nets_are_valid_and_deterministic(m in l1_metric()) {
        let nh = build_nets(&m);
        prop_assert_eq!(verify_net_property(&nh, &m), None);
        prop_assert_eq!(nh, build_nets(&m));
    }

    #[test]
    fn net_tree_meets_stretch(m in l1_metric(), e in epsilon()) {
        let g = net_tree_spanner(&m, e).unwrap().graph;
        let s = stretch(&m, &g).unwrap();
        prop_assert!(s.within(e.stretch()), "stretch {}", s.ratio_string());
    }

    #[test]
    fn greedy_meets_stretch_and_contains_mst_weight(m in l1_metric(), e in epsilon()) {
        let g = greedy_spanner(&m, e.stretch()).unwrap();
        prop_assert!(stretch(&m, &g).unwrap().within(e.stretch()));
        // a connected spanning graph weighs at least the MST
        prop_assert!(g.total_weight() >= mst(&m).1);
    }

    #[test]
    fn cone_graphs_are_sparse_and_connected(n in 2usize..80, seed in 0u64..1000, k in 6usize..40) {
        let p = PointSet2D::random_unit_square(n, seed);
        for g in [yao_graph(&p, k).unwrap(), theta_graph(&p, k).unwrap()] {
            prop_assert!(g.edge_count() <= k * n);
            prop_assert!(stretch(&p, &g).unwrap().graph_dist.is_some());
        }
    }

    #[test]
    fn spanner_text_round_trips(m in l1_metric()) {
        let g: SpannerGraph<u64> = mst(&m).0;
        prop_assert_eq!(spanner_from_text(&m, &spanner_to_json(&g)).unwrap(), g.clone());
        prop_assert_eq!(spanner_from_text(&m, &spanner_to_edgelist(&g)).unwrap(), g);
    }

    #[test]
    fn exact_decimal_round_trips(num in -10_000i64..10_000, den in 1i64..2_000) {
        let r = num_rational::Ratio::new(num as i128, den as i128);
        prop_assert_eq!(parse_exact(&format_ratio(r)).unwrap(), r);
    }
}

#[test]
fn path_weight_closed_form_grid() {
    for d in 1..=4 {
        for h in 1..=5 {
            let t = HstTree::new(d, h).unwrap();
            assert_eq!(
                t.hamiltonian_path_weight(),
                t.hamiltonian_path_weight_closed_form(),
                "d={d} h={h}"
            );
            let census = t.edge_weight_census();
            assert_eq!(census.values().sum::<u64>(), t.n() as u64 - 1);
        }
    }
}
