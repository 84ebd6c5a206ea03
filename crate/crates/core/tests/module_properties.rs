use foliacoh_core::fixtures::{free_module, module_fixtures, quotient_by_power, residue_field};
use foliacoh_core::module::{
    depth_dim_cm, freeness_test, hilbert, koszul_tor, localized_rank, Depth, GradedModule, GradedModulePresentation,
};
use proptest::prelude::*;

/// Free modules, quotients by a power of one variable, residue fields, and
/// direct sums of these.
fn module() -> impl Strategy<Value = GradedModulePresentation> {
    let leaf = (1usize..=2).prop_flat_map(|r| {
        prop_oneof![
            prop::collection::vec(0usize..=3, 1..=2).prop_map(move |d| free_module(r, d)),
            (0..r, 1usize..=2).prop_map(move |(i, k)| quotient_by_power(r, i, k)),
            Just(residue_field(r)),
        ]
    });
    prop::collection::vec(leaf, 1..=2).prop_filter_map("same ring", |parts| {
        parts.iter().skip(1).try_fold(parts[0].clone(), |acc, p| acc.direct_sum(p).ok())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn koszul_euler_characteristic_matches_hilbert_numerator(p in module()) {
        let m = GradedModule::new(&p);
        let tor = koszul_tor(&m);
        let h = hilbert(&m);
        for n in 0..=m.window() {
            let alt: i64 = tor.dims.iter().enumerate().map(|(i, row)| {
                let x = row.get(n).copied().unwrap_or(0) as i64;
                if i % 2 == 0 { x } else { -x }
            }).sum();
            prop_assert_eq!(alt, h.numerator_window[n], "degree {}", n);
        }
    }

    #[test]
    fn free_modules_have_full_depth_and_rank(r in 1usize..=2, degrees in prop::collection::vec(0usize..=3, 1..=3)) {
        let m = GradedModule::new(&free_module(r, degrees.clone()));
        let f = freeness_test(&m);
        prop_assert!(f.free);
        let mut sorted = degrees.clone();
        sorted.sort();
        prop_assert_eq!(f.ranks, sorted);
        let v = depth_dim_cm(&m);
        prop_assert_eq!(v.depth, Depth::Finite(r));
        prop_assert_eq!(v.krull_dim, Some(r));
        prop_assert_eq!(localized_rank(&m).unwrap(), degrees.len());
    }

    #[test]
    fn maximal_cohen_macaulay_iff_free(p in module()) {
        let m = GradedModule::new(&p);
        let v = depth_dim_cm(&m);
        prop_assume!(v.certified);
        let maximal_cm = v.cohen_macaulay == Some(true) && v.krull_dim == Some(p.dim_a());
        prop_assert_eq!(maximal_cm, freeness_test(&m).free);
    }
}

#[test]
fn fixture_modules_match_hand_values() {
    for f in module_fixtures() {
        let m = GradedModule::new(&f.module);
        let v = depth_dim_cm(&m);
        assert_eq!(v.depth, f.depth.map_or(Depth::Infinite, Depth::Finite), "{}", f.name);
        assert_eq!(v.krull_dim, f.krull_dim, "{}", f.name);
        assert_eq!(v.cohen_macaulay, Some(f.cohen_macaulay), "{}", f.name);
        assert_eq!(freeness_test(&m).free, f.free, "{}", f.name);
    }
}
