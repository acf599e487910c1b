//! Property tests for the structural invariants: graph construction, cover
//! indices, metric bounds, validation symmetry, and file round trips.

use proptest::prelude::*;

use genperm::cover::{self, CommunityFormat, Cover};
use genperm::graph::{self, Graph, UNREACHABLE};
use genperm::metrics;
use genperm::validate;

const MAX_NODES: usize = 20;

fn arb_pairs() -> impl Strategy<Value = Vec<(usize, usize)>> {
    prop::collection::vec((0..MAX_NODES, 0..MAX_NODES), 1..60)
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    arb_pairs().prop_map(|pairs| Graph::build(&pairs, Some(MAX_NODES)).0)
}

fn arb_sets() -> impl Strategy<Value = Vec<Vec<usize>>> {
    prop::collection::vec(prop::collection::vec(0..MAX_NODES, 1..8), 1..6)
}

fn arb_instance() -> impl Strategy<Value = (Graph, Cover)> {
    (arb_graph(), arb_sets()).prop_map(|(g, sets)| {
        let cover = Cover::build(&g, sets).unwrap().0;
        (g, cover)
    })
}

proptest! {
    #[test]
    fn degree_sum_is_twice_edge_count(g in arb_graph()) {
        let degree_sum: usize = (0..g.node_count()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(degree_sum, 2 * g.edge_count());
    }

    #[test]
    fn adjacency_is_sorted_and_symmetric(g in arb_graph()) {
        for v in 0..g.node_count() {
            let neighbors = g.neighbors(v);
            prop_assert!(neighbors.windows(2).all(|w| w[0] < w[1]));
            for &u in neighbors {
                prop_assert!(g.neighbors(u).binary_search(&v).is_ok());
            }
        }
    }

    #[test]
    fn inducing_all_nodes_is_identity(g in arb_graph()) {
        let all: Vec<usize> = (0..g.node_count()).collect();
        let (sub, map) = g.induced_subgraph(&all).unwrap();
        prop_assert_eq!(sub.edges(), g.edges());
        prop_assert_eq!(map.new_to_old, all);
    }

    #[test]
    fn bfs_satisfies_triangle_inequality(g in arb_graph(), a in 0..MAX_NODES, b in 0..MAX_NODES, c in 0..MAX_NODES) {
        let (da, db) = (g.bfs_distances(a).unwrap(), g.bfs_distances(b).unwrap());
        if da[b] != UNREACHABLE && db[c] != UNREACHABLE {
            prop_assert!(da[c] <= da[b] + db[c]);
        }
    }

    #[test]
    fn edge_list_round_trips(g in arb_graph()) {
        let mut buf = Vec::new();
        graph::write_edge_list(&mut buf, &g, false).unwrap();
        if !buf.is_empty() {
            let parsed = graph::parse_edge_list(&buf[..], "mem", false).unwrap();
            prop_assert_eq!(parsed.graph.edges(), g.edges());
        }
    }

    #[test]
    fn membership_sum_matches_community_sizes((g, cover) in arb_instance()) {
        let o_sum: usize = (0..g.node_count()).map(|v| cover.membership_count(v)).sum();
        let n_sum: usize = cover.communities().iter().map(|c| c.len()).sum();
        prop_assert_eq!(o_sum, n_sum);
    }

    #[test]
    fn edge_sharing_bounded_by_memberships((g, cover) in arb_instance()) {
        for (idx, &(u, v)) in g.edges().iter().enumerate() {
            let x = cover.edge_sharing(idx);
            prop_assert!(x <= cover.membership_count(u).min(cover.membership_count(v)));
        }
    }

    #[test]
    fn community_file_round_trips((g, cover) in arb_instance()) {
        let mut buf = Vec::new();
        cover::write_communities(&mut buf, &cover, false).unwrap();
        let parsed =
            cover::parse_communities(&buf[..], "mem", CommunityFormat::CommunityPerLine, false)
                .unwrap();
        let rebuilt = Cover::build(&g, parsed.communities).unwrap().0;
        prop_assert_eq!(rebuilt.communities(), cover.communities());
    }

    #[test]
    fn genperm_terms_stay_in_bounds((g, cover) in arb_instance()) {
        for v in 0..g.node_count() {
            if g.degree(v) == 0 {
                continue;
            }
            for &c in cover.memberships_of(v) {
                let value = metrics::genperm_vc(&g, &cover, v, c).unwrap();
                prop_assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&value), "{value}");
            }
        }
    }

    #[test]
    fn metric_evaluation_is_pure((g, cover) in arb_instance()) {
        if (0..g.node_count()).all(|v| g.degree(v) > 0) && g.edge_count() > 0 {
            let a = metrics::score_all(&g, &cover).unwrap();
            let b = metrics::score_all(&g, &cover).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn validation_metrics_symmetric_and_bounded(
        (g, a) in arb_instance(),
        sets in arb_sets(),
    ) {
        let b = Cover::build(&g, sets).unwrap().0;
        let omega_ab = validate::omega_index(&a, &b).unwrap();
        prop_assert_eq!(omega_ab, validate::omega_index(&b, &a).unwrap());
        prop_assert!((0.0..=1.0).contains(&omega_ab));

        let f_ab = validate::fscore(&a, &b).unwrap();
        prop_assert_eq!(f_ab, validate::fscore(&b, &a).unwrap());
        prop_assert!((0.0..=1.0).contains(&f_ab));

        match (validate::onmi(&a, &b), validate::onmi(&b, &a)) {
            (Ok(x), Ok(y)) => {
                prop_assert!((x - y).abs() < 1e-12);
                prop_assert!((0.0..=1.0).contains(&x));
            }
            (Err(_), Err(_)) => {}
            _ => prop_assert!(false, "onmi degeneracy must be symmetric"),
        }
    }

    #[test]
    fn spearman_invariant_under_monotone_transform(
        values in prop::collection::vec(-100.0f64..100.0, 3..12),
        other in prop::collection::vec(-100.0f64..100.0, 3..12),
    ) {
        let n = values.len().min(other.len());
        let x = &values[..n];
        let y = &other[..n];
        if let Ok(base) = validate::spearman_dense(x, y) {
            let stretched: Vec<f64> = x.iter().map(|v| 3.0 * v + 7.0).collect();
            let cubed: Vec<f64> = y.iter().map(|v| v.powi(3)).collect();
            let transformed = validate::spearman_dense(&stretched, &cubed).unwrap();
            prop_assert!((base - transformed).abs() < 1e-9);
        }
    }
}
