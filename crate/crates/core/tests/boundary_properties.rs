mod common;

use chvd_core::boundary::{
    base_index, chordal_by_aux, compatible, condense, glue, glue_is_chordal_via_signatures, sign,
    span, BoundariedGraph,
};
use chvd_core::graph::is_chordal;
use chvd_core::oracle::{random_chordal, rng};
use chvd_core::VertexSet;
use proptest::prelude::*;
use rand::RngCore;

fn side_pair() -> impl Strategy<Value = (BoundariedGraph, BoundariedGraph)> {
    (1usize..=5, any::<u64>(), 0usize..=5, 0usize..=5, 0.1f64..0.7).prop_map(
        |(k, seed, ea, eb, p)| {
            let boundary = random_chordal(k, seed);
            let mut r = rng(seed ^ 0x5eed);
            let a = common::random_side(&boundary, ea, p, &mut r);
            let b = common::random_side(&boundary, eb, p, &mut r);
            (a, b)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn condense_is_idempotent_and_small((a, _) in side_pair()) {
        let c = condense(&a);
        prop_assert_eq!(condense(&c), c.clone());
        prop_assert!(compatible(&a, &c));
        if a.k > 0 {
            prop_assert!(c.graph.n() < 2 * a.k);
        }
        prop_assert_eq!(sign(&c).unwrap(), sign(&a).unwrap());
    }

    #[test]
    fn gluing_verdicts_agree((a, b) in side_pair()) {
        let glued = glue(&a, &b).unwrap();
        let direct = is_chordal(&glued.graph);
        prop_assert_eq!(glue_is_chordal_via_signatures(&a, &b).unwrap().0, direct);
        prop_assert_eq!(chordal_by_aux(&glued).unwrap(), direct);
    }

    #[test]
    fn condensing_either_side_preserves_glue((a, b) in side_pair()) {
        let direct = is_chordal(&glue(&a, &b).unwrap().graph);
        prop_assert_eq!(is_chordal(&glue(&condense(&a), &b).unwrap().graph), direct);
        prop_assert_eq!(is_chordal(&glue(&a, &condense(&b)).unwrap().graph), direct);
        prop_assert_eq!(is_chordal(&glue(&condense(&a), &condense(&b)).unwrap().graph), direct);
    }

    #[test]
    fn signature_of_glue_is_union_when_chordal((a, b) in side_pair()) {
        let (ok, union) = glue_is_chordal_via_signatures(&a, &b).unwrap();
        if ok {
            let glued = glue(&a, &b).unwrap();
            prop_assert_eq!(sign(&glued).unwrap(), union);
        }
    }

    #[test]
    fn span_of_component_nbhd_is_acyclic((a, _) in side_pair()) {
        let idx = base_index(&a.boundary_graph()).unwrap();
        for (_, nb) in a.outside_components() {
            prop_assert!(idx.is_acyclic(span(&idx, &nb)));
        }
        prop_assert!(idx.spanning_forest_size() <= a.k.saturating_sub(1));
    }
}

#[test]
fn empty_neighborhood_spans_nothing() {
    let mut r = rng(7);
    for _ in 0..50 {
        let boundary = random_chordal(1 + (r.next_u64() % 6) as usize, r.next_u64());
        let idx = base_index(&boundary).unwrap();
        assert_eq!(span(&idx, &VertexSet::new(boundary.n())), 0);
    }
}
