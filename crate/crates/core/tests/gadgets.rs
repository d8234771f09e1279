use std::collections::BTreeSet;

use chvd_core::gadgets::{
    choice_gadget, choice_gadget_with_copies, enumerate_minimum_solutions, forward_solution,
    is_interval_deletion_set, lower_bound_audit, p_graph, reduce_permutation_clique,
    untouched_block, PermutationCliqueInstance, ReductionOutcome, P_OBSTRUCTIONS,
};
use chvd_core::graph::is_interval;
use chvd_core::oracle::brute_force_interval_deletion;
use chvd_core::VertexSet;

/// Every minimum solution leaves some block's `g` vertices alone.
fn minimum_solutions_leave_a_block(s: usize, copies: usize) -> usize {
    let cg = choice_gadget_with_copies(s, copies).unwrap();
    let size = 2 * (s + s * copies);
    let mut blocks = BTreeSet::new();
    let count = enumerate_minimum_solutions(&cg, |x| {
        assert_eq!(x.len(), size);
        assert!(is_interval_deletion_set(&cg.graph, x));
        let i = untouched_block(&cg, x).unwrap_or_else(|| panic!("no untouched block in {x:?}"));
        blocks.insert(i);
    })
    .unwrap();
    assert_eq!(blocks, (1..=s).collect(), "every block is left alone by some solution");
    count
}

#[test]
fn full_single_block_solutions() {
    assert_eq!(minimum_solutions_leave_a_block(1, 4), 256);
}

#[test]
fn reduced_copy_solutions() {
    for (s, copies) in [(2, 1), (3, 1), (2, 2)] {
        assert!(minimum_solutions_leave_a_block(s, copies) > 0);
    }
}

#[test]
fn pieces_need_two_deletions_each() {
    let p = p_graph();
    assert_eq!(brute_force_interval_deletion(&p).unwrap().0, 2);
    for obs in P_OBSTRUCTIONS {
        let keep = VertexSet::from_iter(p.n(), obs.iter().copied());
        assert!(!is_interval(&p.induced(&keep).0));
    }
    let cg = choice_gadget(2).unwrap();
    for q in &cg.q {
        let keep = VertexSet::from_iter(cg.graph.n(), q.iter().copied());
        let (qg, _) = cg.graph.induced(&keep);
        assert_eq!(brute_force_interval_deletion(&qg).unwrap().0, 2);
    }
}

#[test]
fn audit_counts_every_piece() {
    for s in 1..=4 {
        let cg = choice_gadget(s).unwrap();
        let audit = lower_bound_audit(&cg);
        assert!(audit.pieces_disjoint);
        assert_eq!((audit.p_copies_certified, audit.q_certified), (4 * s, s));
        assert_eq!(audit.bound, 10 * s);
        let parts = cg.q.iter().map(Vec::len).sum::<usize>()
            + cg.p.iter().map(|b| b.len() * 15).sum::<usize>()
            + cg.connectors.len();
        assert_eq!(parts, cg.graph.n());
    }
}

#[test]
fn forward_direction_for_three_rows() {
    for seed in 0..5 {
        let (inst, pi) = PermutationCliqueInstance::random_with_clique(3, 0.3, seed);
        let ReductionOutcome::Instance(red) = reduce_permutation_clique(&inst).unwrap() else {
            panic!("planted clique must survive");
        };
        let x = forward_solution(&inst, &red, &pi).unwrap().unwrap();
        assert_eq!(x.len(), red.budget);
        assert!(is_interval_deletion_set(&red.graph, &x));
        let round = PermutationCliqueInstance::from_graph(3, &inst.to_graph()).unwrap();
        assert_eq!(round.edges().collect::<Vec<_>>(), inst.edges().collect::<Vec<_>>());
    }
}
