mod common;

use graphbell::engine::{avg_colors, profile};
use graphbell::{brute_force_profile, ColoringEngine, ExactRational, Graph, StirlingProfile};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn engine_matches_oracle(g in arb_graph(8)) {
        prop_assert_eq!(profile(&g), brute_force_profile(&g).unwrap());
    }

    #[test]
    fn relabeling_preserves_profile(g in arb_graph(8), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut order: Vec<usize> = (0..g.order()).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(profile(&g), profile(&g.relabel(&order)));
    }

    #[test]
    fn deletion_contraction_on_edges(g in arb_graph(8), pick in any::<prop::sample::Index>()) {
        let edges = g.edges();
        prop_assume!(!edges.is_empty());
        let (u, v) = edges[pick.index(edges.len())];
        let lhs = profile(&g);
        let rhs = &profile(&g.delete_edge(u, v).unwrap()) - &profile(&g.merge(u, v).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn addition_contraction_on_non_edges(g in arb_graph(8), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let n = g.order();
        let (u, v) = (a.index(n), b.index(n));
        prop_assume!(u != v && !g.has_edge(u, v));
        let rhs = &profile(&g.add_edge(u, v).unwrap()) + &profile(&g.merge(u, v).unwrap());
        prop_assert_eq!(profile(&g), rhs);
    }

    #[test]
    fn isolated_vertex_shifts_profile(g in arb_graph(8)) {
        let with = profile(&g.with_isolated(1));
        let base = profile(&g);
        prop_assert_eq!(&with, &base.with_simplicial_vertex(0));
        // B(G + K1) = B(G) + T(G)
        prop_assert_eq!(with.bell(), base.bell() + base.total());
    }

    #[test]
    fn counts_below_chromatic_number_vanish(g in arb_graph(8)) {
        let p = profile(&g);
        let chi = p.chromatic_number();
        prop_assert!((0..chi).all(|k| p.count(k) == 0u32.into()));
        prop_assert!(p.count(chi) > 0u32.into());
        prop_assert_eq!(p.count(g.order()), 1u32.into());
    }

    #[test]
    fn memo_does_not_change_results(g in arb_graph(9)) {
        prop_assert_eq!(ColoringEngine::new().profile(&g), ColoringEngine::without_memo().profile(&g));
    }

    #[test]
    fn average_is_between_chi_and_n(g in arb_graph(8)) {
        let a = avg_colors(&g).unwrap();
        let chi = profile(&g).chromatic_number();
        prop_assert!(a >= ExactRational::from_integer(chi as i64));
        prop_assert!(a <= ExactRational::from_integer(g.order() as i64));
    }
}

#[test]
fn dominating_vertex_adds_exactly_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        let g = common::random_dominating(&mut rng);
        let v = g.order() - 1;
        let minus = g.remove_vertex(v).unwrap();
        let lhs = avg_colors(&g).unwrap();
        let rhs = &ExactRational::from_integer(1) + &avg_colors(&minus).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn simplicial_vertex_raises_average() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..50 {
        let g = common::random_simplicial(&mut rng);
        let minus = g.remove_vertex(g.order() - 1).unwrap();
        assert!(avg_colors(&minus).unwrap() < avg_colors(&g).unwrap());
    }
}

#[test]
fn reductions_match_vertex_rules() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..30 {
        let g = common::random_simplicial(&mut rng);
        let v = g.order() - 1;
        let minus = profile(&g.remove_vertex(v).unwrap());
        let r = g.degree(v);
        assert_eq!(profile(&g), minus.with_simplicial_vertex(r));
        let d = common::random_dominating(&mut rng);
        let minus = profile(&d.remove_vertex(d.order() - 1).unwrap());
        assert_eq!(profile(&d), minus.with_dominating_vertex());
    }
}

#[test]
fn empty_and_complete_profiles() {
    for n in 0..=8 {
        assert_eq!(profile(&Graph::empty(n)), StirlingProfile::empty_graph(n));
        assert_eq!(
            profile(&Graph::complete(n)),
            StirlingProfile::complete_graph(n)
        );
    }
}
