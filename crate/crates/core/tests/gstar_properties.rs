use foliacoh_core::cartan::{cartan_complex, equivariant_cohomology};
use foliacoh_core::complex::cohomology;
use foliacoh_core::fixtures::gstar_fixtures;
use foliacoh_core::gstar::{check_gstar_axioms, tensor_gstar, weil_algebra, GStarStructure, GradedOperator, LieAlgebraSpec};
use foliacoh_core::linalg::rat;
use proptest::prelude::*;

fn bumped(op: &GradedOperator, dims: &[usize], n: usize, row: usize, col: usize) -> GradedOperator {
    let mut blocks = op.blocks().to_vec();
    blocks[n].add_to(row, col, &rat(1));
    GradedOperator::from_blocks(dims, op.shift(), blocks).unwrap()
}

#[test]
fn fixtures_satisfy_the_identities() {
    for f in gstar_fixtures() {
        let report = check_gstar_axioms(&f.structure);
        assert!(report.all_pass(), "{}: {:?}", f.name, report.failures());
        assert!(cartan_complex(&f.structure, 8).is_ok(), "{}", f.name);
    }
}

/// Moving the unit under `L_X` or `d` breaks the derivation rules.
#[test]
fn mutations_are_detected() {
    for f in gstar_fixtures() {
        let s = &f.structure;
        let dims = s.algebra.dims().to_vec();
        let unit = s.algebra.unit();
        let mut m = s.clone();
        m.l[0] = bumped(&s.l[0], &dims, 0, unit, unit);
        assert!(!check_gstar_axioms(&m).all_pass(), "{}: L on the unit", f.name);
        if dims.get(1).is_some_and(|&d| d > 0) {
            let mut m = s.clone();
            m.d = bumped(&s.d, &dims, 0, 0, unit);
            assert!(!check_gstar_axioms(&m).all_pass(), "{}: d on the unit", f.name);
        }
    }
}

fn tensor_with_point(s: &GStarStructure) -> GStarStructure {
    let point = foliacoh_core::fixtures::point(s.rank());
    tensor_gstar(s, &point, None).unwrap().structure
}

#[test]
fn tensoring_with_the_ground_field_changes_nothing() {
    for f in gstar_fixtures() {
        let t = tensor_with_point(&f.structure);
        let a = equivariant_cohomology(&f.structure, 6).unwrap();
        let b = equivariant_cohomology(&t, 6).unwrap();
        assert_eq!(a.dims, b.dims, "{}", f.name);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn abelian_weil_algebras_are_acyclic(r in 1usize..=2, top in 4usize..=8) {
        let w = weil_algebra(&LieAlgebraSpec::abelian(r), top);
        prop_assert!(check_gstar_axioms(&w).all_pass());
        let h = cohomology(&w.de_rham()).unwrap().dims();
        let stable = w.stable_through();
        prop_assert_eq!(h[0], 1);
        prop_assert!(h[1..=stable].iter().all(|&x| x == 0));
    }
}
