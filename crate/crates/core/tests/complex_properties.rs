use foliacoh_core::complex::{
    alternating_sum, cohomology, les_exactness_check, representatives_are_independent, split_sequence, CochainComplex,
    GradedVectorSpace,
};
use foliacoh_core::linalg::{rat, Rational, RationalMatrix};
use proptest::prelude::*;

/// Complex in standard form, conjugated by unit triangular changes of basis;
/// `(dims, ranks, seeds)` drive the construction.
fn build(dims: &[usize], rank_choice: &[usize], entries: &[i64]) -> (CochainComplex, Vec<usize>) {
    let top = dims.len() - 1;
    let mut ranks = vec![0; top + 1];
    for n in 0..top {
        let prev = if n == 0 { 0 } else { ranks[n - 1] };
        let room = (dims[n] - prev).min(dims[n + 1]);
        ranks[n] = rank_choice[n] % (room + 1);
    }
    let mut next = entries.iter().cycle();
    let mut change = |d: usize| {
        let mut l = RationalMatrix::identity(d);
        let mut u = RationalMatrix::identity(d);
        for i in 0..d {
            for j in 0..i {
                l.set(i, j, rat(*next.next().unwrap()));
                u.set(j, i, rat(*next.next().unwrap()));
            }
        }
        let g = l.mul(&u);
        let inv = g.solve_matrix(&RationalMatrix::identity(d)).unwrap();
        (g, inv)
    };
    let changes: Vec<_> = dims.iter().map(|&d| change(d)).collect();
    let diffs = (0..top)
        .map(|n| {
            let prev = if n == 0 { 0 } else { ranks[n - 1] };
            let mut d = RationalMatrix::zeros(dims[n + 1], dims[n]);
            for k in 0..ranks[n] {
                d.set(k, prev + k, Rational::from_integer(1.into()));
            }
            changes[n + 1].0.mul(&d).mul(&changes[n].1)
        })
        .collect();
    let betti = (0..=top).map(|n| dims[n] - ranks[n] - if n == 0 { 0 } else { ranks[n - 1] }).collect();
    (CochainComplex::new(GradedVectorSpace::new(dims.to_vec()), diffs).unwrap(), betti)
}

fn complex_strategy() -> impl Strategy<Value = (CochainComplex, Vec<usize>)> {
    (1usize..=4)
        .prop_flat_map(|top| {
            (
                prop::collection::vec(0usize..=6, top + 1),
                prop::collection::vec(0usize..=6, top + 1),
                prop::collection::vec(-2i64..=2, 1..40),
            )
        })
        .prop_map(|(dims, ranks, entries)| build(&dims, &ranks, &entries))
}

fn padded(c: &CochainComplex, top: usize) -> CochainComplex {
    let dims: Vec<usize> = (0..=top).map(|n| if n <= c.top() { c.dim(n) } else { 0 }).collect();
    let diffs = (0..top).map(|n| if n < c.top() { c.differential(n) } else { RationalMatrix::zeros(dims[n + 1], dims[n]) }).collect();
    CochainComplex::new(GradedVectorSpace::new(dims), diffs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn euler_characteristic_is_preserved((c, betti) in complex_strategy()) {
        let h = cohomology(&c).unwrap();
        prop_assert_eq!(h.dims(), betti);
        prop_assert_eq!(alternating_sum(c.space().dims()), alternating_sum(&h.dims()));
    }

    #[test]
    fn representatives_are_closed_and_independent((c, _) in complex_strategy()) {
        let h = cohomology(&c).unwrap();
        prop_assert!(representatives_are_independent(&c, &h));
    }

    #[test]
    fn split_sequences_give_exact_long_sequences((a, _) in complex_strategy(), (b, _) in complex_strategy()) {
        let top = a.top().max(b.top());
        let report = les_exactness_check(&split_sequence(&padded(&a, top), &padded(&b, top))).unwrap();
        prop_assert!(report.exact, "fails in degree {:?}", report.failing_degree);
        for n in 0..=top {
            prop_assert_eq!(report.mid_dims[n], report.sub_dims[n] + report.quot_dims[n]);
            prop_assert_eq!(report.connecting_ranks[n], 0);
        }
    }
}
