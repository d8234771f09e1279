use chvd_core::graph::{is_chordal, is_interval, subdivide_all_edges};
use chvd_core::oracle::{
    brute_force_chvd, brute_force_chvd_exhaustive, brute_force_fvs,
    brute_force_interval_deletion, random_instance, RandomSpec,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hole_branching_matches_exhaustive(n in 2usize..=10, p in 0.1f64..0.8, seed in any::<u64>()) {
        let g = random_instance(&RandomSpec { n, p, weight_lo: 1, weight_hi: 9, seed });
        let (w, x) = brute_force_chvd(&g).unwrap();
        let (we, _) = brute_force_chvd_exhaustive(&g).unwrap();
        prop_assert_eq!(w, we);
        prop_assert_eq!(g.set_weight_sum(&x).unwrap(), w);
        prop_assert!(is_chordal(&g.remove_vertices(&x).0));
    }

    #[test]
    fn interval_deletion_is_at_least_chordal_deletion(n in 2usize..=9, p in 0.1f64..0.7, seed in any::<u64>()) {
        let g = random_instance(&RandomSpec::unit(n, p, seed));
        let (k, x) = brute_force_interval_deletion(&g).unwrap();
        prop_assert!(is_interval(&g.remove_vertices(&x).0));
        prop_assert!(k as u64 >= brute_force_chvd(&g).unwrap().0);
    }

    #[test]
    fn chordal_deletion_on_subdivisions_is_fvs(n in 2usize..=6, p in 0.2f64..0.8, seed in any::<u64>()) {
        let g = random_instance(&RandomSpec::unit(n, p, seed));
        let h = subdivide_all_edges(&g).unwrap();
        prop_assert_eq!(brute_force_chvd(&h).unwrap().0, brute_force_fvs(&g).unwrap() as u64);
    }
}
