use chvd_core::matroid::{max_representative, representative_oracle_check, FamilyEntry, GraphicMatroid};
use proptest::prelude::*;

fn matroid() -> impl Strategy<Value = GraphicMatroid> {
    (2usize..=6).prop_flat_map(|nv| {
        prop::collection::vec(any::<bool>(), nv * (nv - 1) / 2).prop_map(move |bits| {
            let pairs = (0..nv).flat_map(|u| (u + 1..nv).map(move |v| (u, v)));
            let edges: Vec<_> = pairs.zip(bits).filter(|&(_, b)| b).map(|(e, _)| e).collect();
            GraphicMatroid::from_graph(nv, &edges).unwrap()
        })
    })
}

fn family(m: &GraphicMatroid, raw: &[(u64, u64)]) -> Vec<FamilyEntry> {
    let full = if m.ground_size() == 0 { 0 } else { (1u128 << m.ground_size()) - 1 };
    let mut out: Vec<FamilyEntry> = Vec::new();
    for (i, &(bits, w)) in raw.iter().enumerate() {
        let edges = bits as u128 & full;
        if m.is_independent(edges) && out.iter().all(|f| f.edges != edges) {
            out.push(FamilyEntry { edges, weight: w, payload: i });
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn elimination_matches_union_find(m in matroid(), sets in prop::collection::vec(any::<u64>(), 32)) {
        let full = if m.ground_size() == 0 { 0 } else { (1u128 << m.ground_size()) - 1 };
        for s in sets {
            let s = s as u128 & full;
            prop_assert_eq!(m.is_independent(s), m.is_acyclic(s));
        }
    }

    #[test]
    fn representatives_are_sound_and_bounded(
        m in matroid(),
        raw in prop::collection::vec((any::<u64>(), 0u64..30), 0..24),
    ) {
        let fam = family(&m, &raw);
        let rep = max_representative(&m, &fam).unwrap();
        prop_assert!(rep.len() <= 1 << m.rank);
        prop_assert!(representative_oracle_check(&m, &fam, &rep));
    }

    #[test]
    fn representation_is_transitive(
        m in matroid(),
        raw in prop::collection::vec((any::<u64>(), 0u64..30), 0..24),
    ) {
        let fam = family(&m, &raw);
        let rep = max_representative(&m, &fam).unwrap();
        let rep2 = max_representative(&m, &rep).unwrap();
        prop_assert!(representative_oracle_check(&m, &fam, &rep2));
    }

    #[test]
    fn union_of_representatives_represents_union(
        m in matroid(),
        raw in prop::collection::vec((any::<u64>(), 0u64..30), 0..24),
        split in 0usize..24,
    ) {
        let fam = family(&m, &raw);
        let cut = split.min(fam.len());
        let mut both = max_representative(&m, &fam[..cut]).unwrap();
        both.extend(max_representative(&m, &fam[cut..]).unwrap());
        prop_assert!(representative_oracle_check(&m, &fam, &both));
    }
}
