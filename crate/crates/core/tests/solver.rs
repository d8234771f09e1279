use chvd_core::dp::{solve, solve_with, verify_invariants, SolveOptions};
use chvd_core::graph::{is_chordal, subdivide_all_edges};
use chvd_core::oracle::{brute_force_chvd, brute_force_fvs, random_instance, RandomSpec};
use chvd_core::treedec::{make_nice, min_fill_decomposition, TreeDecomposition};
use chvd_core::WeightedGraph;
use proptest::prelude::*;

fn instance() -> impl Strategy<Value = WeightedGraph> {
    (2usize..=10, 0.15f64..0.7, any::<u64>()).prop_map(|(n, p, seed)| {
        random_instance(&RandomSpec { n, p, weight_lo: 1, weight_hi: 9, seed })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn matches_oracle_on_min_fill(g in instance()) {
        let sol = solve(&g, &make_nice(&min_fill_decomposition(&g), &g).unwrap()).unwrap();
        prop_assert_eq!(sol.deletion_weight, brute_force_chvd(&g).unwrap().0);
        prop_assert_eq!(g.set_weight_sum(&sol.deletion_set).unwrap(), sol.deletion_weight);
        prop_assert!(is_chordal(&g.remove_vertices(&sol.deletion_set).0));
        prop_assert_eq!(sol.optimum + sol.deletion_weight, g.total_weight().unwrap());
    }

    #[test]
    fn decomposition_does_not_change_the_answer(g in instance()) {
        let a = solve(&g, &make_nice(&min_fill_decomposition(&g), &g).unwrap()).unwrap();
        let b = solve(&g, &make_nice(&TreeDecomposition::trivial(g.n()), &g).unwrap()).unwrap();
        prop_assert_eq!(a.deletion_weight, b.deletion_weight);
    }

    #[test]
    fn raising_a_weight_never_lowers_the_optimum(g in instance(), v in 0usize..10, extra in 1u64..20) {
        let v = v % g.n();
        let nd = make_nice(&min_fill_decomposition(&g), &g).unwrap();
        let before = solve(&g, &nd).unwrap();
        let mut h = g.clone();
        h.set_weight(v, g.weight(v) + extra);
        let after = solve(&h, &nd).unwrap();
        prop_assert!(after.deletion_weight >= before.deletion_weight);
        prop_assert!(after.deletion_weight <= before.deletion_weight + extra);
    }
}

#[test]
fn repeated_runs_are_identical() {
    for seed in 0..30 {
        let g = random_instance(&RandomSpec::unit(9, 0.4, seed));
        let nd = make_nice(&min_fill_decomposition(&g), &g).unwrap();
        assert_eq!(solve(&g, &nd).unwrap(), solve(&g, &nd).unwrap());
    }
}

#[test]
fn every_node_state_satisfies_its_definition() {
    for seed in 0..12 {
        let g = random_instance(&RandomSpec {
            n: 7 + (seed % 3) as usize,
            p: 0.45,
            weight_lo: 1,
            weight_hi: 5,
            seed,
        });
        let nd = make_nice(&min_fill_decomposition(&g), &g).unwrap();
        let run = solve_with(&g, &nd, &SolveOptions { keep_states: true }).unwrap();
        for t in 0..nd.nodes.len() {
            let rep = verify_invariants(&g, &run, t, &run.states[t]).unwrap();
            assert!(rep.is_ok(), "seed {seed} node {t}: {rep:?}");
        }
    }
}

#[test]
fn subdivided_graphs_give_feedback_vertex_sets() {
    for seed in 0..25 {
        let g = random_instance(&RandomSpec::unit(6 + (seed % 4) as usize, 0.45, seed));
        let h = subdivide_all_edges(&g).unwrap();
        let sol = solve(&h, &make_nice(&min_fill_decomposition(&h), &h).unwrap()).unwrap();
        assert_eq!(sol.deletion_weight, brute_force_fvs(&g).unwrap() as u64, "seed {seed}");
    }
}

#[test]
fn cycle_costs_its_lightest_vertex() {
    let mut g = WeightedGraph::cycle(6);
    for (v, w) in [5, 3, 8, 2, 9, 4].into_iter().enumerate() {
        g.set_weight(v, w);
    }
    let sol = solve(&g, &make_nice(&min_fill_decomposition(&g), &g).unwrap()).unwrap();
    assert_eq!(sol.deletion_weight, 2);
    assert_eq!(sol.deletion_set.to_vec(), vec![3]);
}
