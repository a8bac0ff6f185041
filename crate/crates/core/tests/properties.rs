//! Generator and structure invariants over randomized parameters.

use proptest::prelude::*;
use trianglebar::classes::*;
use trianglebar::ftg::{base_cycles, build_ftg, ftt};
use trianglebar::graph::{edge, parse_edge_list, parse_json, to_edge_list, to_json, Graph};
use trianglebar::rigidity::{is_globally_rigid, is_rigid, rank_oracle_rigid};
use trianglebar::sim::{run_full, SimConfig};

fn subgraph_of(sub: &Graph, of: &Graph) -> bool {
    sub.n() == of.n() && sub.edges().all(|e| of.has_edge(e.0, e.1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn elementary_bars_are_globally_rigid(m in 4usize..10, kind in 0usize..3) {
        let g = match kind {
            0 => gen_triangle_cycle(m).unwrap().0,
            1 => gen_triangle_circuit(m).unwrap().0,
            _ => gen_triangle_bridge(m).unwrap().0,
        };
        prop_assert!(is_globally_rigid(&g).globally_rigid);
    }

    #[test]
    fn chains_are_rigid_but_not_globally(m in 3usize..12) {
        let (g, ts) = gen_triangle_chain(m).unwrap();
        prop_assert_eq!(g.n(), m + 2);
        prop_assert!(is_rigid(&g).unwrap());
        prop_assert!(rank_oracle_rigid(&g, m as u64, 2));
        prop_assert!(!is_globally_rigid(&g).globally_rigid);
        prop_assert!(is_triangle_chain(ts.triangles()));
    }

    #[test]
    fn cycle_stream_roles(m in 5usize..12) {
        let (_, ts) = gen_triangle_cycle(m).unwrap();
        for role in stream_roles(ts.triangles()) {
            prop_assert_eq!(role.inner_sides.len(), 2);
            prop_assert_eq!(role.outer_sides.len(), 1);
            prop_assert_eq!(role.pendants.len(), 2);
        }
    }

    #[test]
    fn reductions_are_spanning_and_stay_rigid(m in 4usize..10, circuit in any::<bool>()) {
        let (g, ts) = if circuit {
            let (g, ts, _) = gen_triangle_circuit(m).unwrap();
            (g, ts)
        } else {
            gen_triangle_cycle(m).unwrap()
        };
        let r = spanning_reduction(&g, ts.triangles()).unwrap();
        prop_assert!(subgraph_of(&r.graph, &g));
        prop_assert!(is_globally_rigid(&r.graph).globally_rigid);
    }

    #[test]
    fn random_trees_have_acyclic_ftg(m in 1usize..14, seed in any::<u64>()) {
        let (g, ts) = gen_triangle_tree(&TreePlan::random(m, seed)).unwrap();
        let ftg = build_ftg(&g);
        prop_assert_eq!(ftg.len(), m);
        prop_assert_eq!(ftg.edge_count(), m - 1);
        let tree = ftt(&ftg, ts[0]).unwrap();
        prop_assert_eq!(tree.len(), m);
        prop_assert_eq!(base_cycles(&ftg, &tree).cycles.len(), 0);
    }

    #[test]
    fn random_nets_verify_and_are_globally_rigid(m in 8usize..14, ext in 1usize..3, seed in any::<u64>()) {
        if let Ok(net) = gen_random_net(m, ext, seed) {
            prop_assert!(verify_net(&net.graph, &net.tree, &net.extended).is_ok());
            prop_assert!(is_globally_rigid(&net.graph).globally_rigid);
        }
    }

    #[test]
    fn trilateration_graphs_carry_their_ordering(n in 4usize..16, seed in any::<u64>()) {
        let (g, order) = gen_trilateration(n, seed).unwrap();
        prop_assert!(is_trilateration_ordering(&g, &order));
        prop_assert!(is_globally_rigid(&g).globally_rigid);
    }

    #[test]
    fn base_cycle_count_is_the_cycle_rank(n in 5usize..12, p in 0.3f64..0.8, seed in any::<u64>()) {
        let g = random_graph(n, p, seed);
        let ftg = build_ftg(&g);
        prop_assume!(!ftg.is_empty());
        let tree = ftt(&ftg, ftg.triangle(0)).unwrap();
        let comp = ftg.component_of(0);
        let comp_edges = ftg.edges().iter().filter(|(a, _)| comp.contains(&ftg.index_of(*a).unwrap())).count();
        prop_assert_eq!(base_cycles(&ftg, &tree).cycles.len(), comp_edges + 1 - comp.len());
    }

    #[test]
    fn formats_round_trip(n in 3usize..15, p in 0.1f64..0.9, seed in any::<u64>()) {
        let g = random_graph(n, p, seed);
        prop_assert!(parse_json(&serde_json::to_string(&to_json(&g)).unwrap()).unwrap() == g);
        let (h, _) = parse_edge_list(&to_edge_list(&g)).unwrap();
        let mut a: Vec<_> = g.edges().collect();
        let mut b: Vec<_> = h.edges().collect();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn marked_set_is_sound(n in 8usize..14, p in 0.3f64..0.5, seed in 0u64..1000) {
        let g = random_graph(n, p, seed);
        let Some(&t) = g.triangles().first() else { return Ok(()) };
        let config = SimConfig { scheduler_seed: seed, ..SimConfig::default() };
        let (report, _) = run_full(&g, t, config).unwrap();
        let nodes: Vec<_> = report.localizable_nodes.iter().copied().collect();
        prop_assert!(nodes.len() >= 3);
        prop_assert!(is_globally_rigid(&g.induced(&nodes).0).globally_rigid);
    }

    #[test]
    fn adding_an_edge_keeps_global_rigidity(n in 4usize..11, p in 0.4f64..0.9, seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let g = random_graph(n, p, seed);
        let missing: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| !g.has_edge(u, v)).collect();
        prop_assume!(!missing.is_empty());
        let (u, v) = missing[pick.index(missing.len())];
        let h = g.with_edges([edge(u, v)]).unwrap();
        let (before, after) = (is_globally_rigid(&g), is_globally_rigid(&h));
        prop_assert!(!before.globally_rigid || after.globally_rigid);
        prop_assert!(!before.rigid || after.rigid);
    }
}
