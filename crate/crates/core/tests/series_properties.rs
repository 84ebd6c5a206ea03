use foliacoh_core::series::{Polynomial, RationalSeries};
use proptest::prelude::*;

fn series() -> impl Strategy<Value = RationalSeries> {
    (prop::collection::vec(-4i64..=4, 0..6), 0u32..=3).prop_map(|(c, k)| RationalSeries::new(Polynomial::new(c), k))
}

fn convolve(a: &[i64], b: &[i64]) -> Vec<i64> {
    (0..a.len()).map(|n| (0..=n).map(|i| a[i] * b[n - i]).sum()).collect()
}

proptest! {
    #[test]
    fn product_expands_to_the_cauchy_product(a in series(), b in series()) {
        let n = 15;
        prop_assert_eq!((&a * &b).expand(n), convolve(&a.expand(n), &b.expand(n)));
    }

    #[test]
    fn sum_expands_termwise(a in series(), b in series()) {
        let n = 12;
        let expected: Vec<i64> = a.expand(n).iter().zip(b.expand(n)).map(|(x, y)| x + y).collect();
        prop_assert_eq!((&a + &b).expand(n), expected);
    }

    #[test]
    fn canonical_form_is_idempotent_and_faithful(a in series()) {
        let c = a.clone().canonical();
        prop_assert_eq!(c.clone().canonical(), c.clone());
        prop_assert_eq!(c.expand(15), a.expand(15));
    }

    #[test]
    fn multiplying_by_the_denominator_clears_it(a in series()) {
        let k = a.den_exp;
        let cleared = a.times_one_minus_t2_pow(k);
        prop_assert!(cleared.clone().canonical().is_polynomial());
        prop_assert_eq!(cleared.canonical().numerator, a.numerator);
    }

    #[test]
    fn euler_evaluation_matches_alternating_sum(c in prop::collection::vec(0i64..=5, 0..8)) {
        let p = Polynomial::new(c.clone());
        let alt: i64 = c.iter().enumerate().map(|(i, x)| if i % 2 == 0 { *x } else { -*x }).sum();
        prop_assert_eq!(foliacoh_core::series::euler_at_minus_one(&p), alt);
    }
}
