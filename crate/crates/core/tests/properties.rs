use proptest::prelude::*;

use cwkit_core::bubble::{bubble_to_graph, path_power_bubbles};
use cwkit_core::cwexpr::{check_certificate, evaluate, parse_expr};
use cwkit_core::embed::{check_embedding, find_embedding, EmbedSearch};
use cwkit_core::families::path_power;
use cwkit_core::graph::{canonical_form, is_isomorphic, read_graph, write_graph};
use cwkit_core::solver::{cwd_exact, lcwd_decide, lcwd_exact, Decision};
use cwkit_core::synth::{eager_expression, search_certificate, SynthOutcome};
use cwkit_core::{Budget, Graph};

fn named(mut g: Graph) -> Graph {
    for v in g.ids() {
        g.set_name(v, format!("x{v}")).unwrap();
    }
    g
}

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut i = 0;
            for u in 1..=n {
                for v in u + 1..=n {
                    if bits[i] {
                        g.add_edge(u, v).unwrap();
                    }
                    i += 1;
                }
            }
            named(g)
        })
    })
}

fn graph_and_order(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(max_n).prop_flat_map(|g| {
        let ids: Vec<usize> = g.ids().collect();
        (Just(g), Just(ids).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn graph_files_round_trip(g in graph(12)) {
        prop_assert_eq!(read_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn eager_expression_builds_exactly_its_input((g, order) in graph_and_order(12)) {
        let e = eager_expression(&g, &order).unwrap();
        let check = check_certificate(&e, &g, e.width(), true);
        prop_assert!(check.accepted, "{:?}", check.reason);
    }

    #[test]
    fn expressions_print_and_parse_back((g, order) in graph_and_order(10)) {
        let e = eager_expression(&g, &order).unwrap();
        prop_assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn restriction_certifies_the_induced_subgraph(
        (g, order) in graph_and_order(10),
        keep_bits in any::<u16>(),
    ) {
        let e = eager_expression(&g, &order).unwrap();
        let keep: Vec<usize> = g.ids().filter(|v| keep_bits & (1 << (v - 1)) != 0).collect();
        prop_assume!(!keep.is_empty());
        let sub = g.induced_subgraph(&keep).unwrap().graph;
        let names: Vec<String> = keep.iter().map(|&v| g.display_name(v)).collect();
        let r = e.restrict(&|n| names.iter().any(|m| m == n)).unwrap();
        prop_assert!(r.width() <= e.width());
        let check = check_certificate(&r, &sub, e.width(), true);
        prop_assert!(check.accepted, "{:?}", check.reason);
    }

    #[test]
    fn injective_label_renaming_preserves_the_graph((g, order) in graph_and_order(10), shift in 1u32..50) {
        let e = eager_expression(&g, &order).unwrap();
        let renamed = e.map_labels(&|l| l * 7 + shift);
        let before = evaluate(&e).unwrap().graph;
        let after = evaluate(&renamed).unwrap().graph;
        prop_assert!(before.equal_by_names(&after));
        prop_assert_eq!(renamed.width(), e.width());
    }

    #[test]
    fn canonical_form_ignores_vertex_order((g, perm) in graph_and_order(9)) {
        let p = g.permuted(&perm);
        prop_assert_eq!(canonical_form(&g), canonical_form(&p));
        prop_assert!(is_isomorphic(&g, &p).unwrap());
    }

    #[test]
    fn induced_subgraphs_are_found((g, perm) in graph_and_order(9), keep_bits in any::<u16>()) {
        let keep: Vec<usize> = g.ids().filter(|v| keep_bits & (1 << (v - 1)) != 0).collect();
        prop_assume!(!keep.is_empty());
        let sub = g.induced_subgraph(&keep).unwrap().graph;
        let host = g.permuted(&perm);
        match find_embedding(&sub, &host, Budget::unlimited()) {
            EmbedSearch::Found(e) => prop_assert!(check_embedding(&e)),
            other => prop_assert!(false, "not found: {:?}", other),
        }
    }

    #[test]
    fn path_power_bubble_round_trip(k in 1usize..=5, n in 1usize..=30) {
        let b = bubble_to_graph(&path_power_bubbles(k, n));
        prop_assert_eq!(b.edges(), path_power(k as i64, n as i64).unwrap().edges());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decisions_are_monotone_in_width(g in graph(8)) {
        let r = lcwd_exact(&g, Budget::unlimited()).unwrap();
        let w = r.exact().unwrap();
        for x in 1..=g.n() {
            let d = lcwd_decide(&g, x, Budget::unlimited()).unwrap();
            prop_assert_eq!(d.decision.answer(), Some(x >= w));
            if let Decision::Yes(e) = d.decision {
                prop_assert!(check_certificate(&e, &g, x, true).accepted);
            }
        }
        prop_assert!(cwd_exact(&g, Budget::unlimited()).unwrap().exact().unwrap() <= w);
    }

    #[test]
    fn ordering_search_agrees_with_the_solver(g in graph(9), w in 1usize..=5) {
        let found = matches!(
            search_certificate(&g, w, Budget::unlimited()).unwrap(),
            SynthOutcome::Found { .. }
        );
        let decided = lcwd_decide(&g, w, Budget::unlimited()).unwrap().decision.answer();
        prop_assert_eq!(Some(found), decided);
    }
}
