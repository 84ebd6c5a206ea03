use num_traits::Zero;
use serde::Serialize;

use super::free::{FreeAlgebra, Generator};
use super::{basic_subcomplex, tensor_gstar, GStarStructure, LieAlgebraSpec};
use crate::complex::cohomology;
use crate::error::Result;
use crate::linalg::{axpy, rat, ratio, zero_vec, Rational};

/// Weil algebra `Λ(𝔤*) ⊗ S(𝔤*)` truncated at `max_degree`.
///
/// Generators `theta_a` (degree 1) and `u_a` (degree 2), with
///
/// ```text
/// d theta_a = u_a - 1/2 Σ c^a_{bc} theta_b theta_c
/// d u_a     = Σ c^a_{bc} u_b theta_c
/// i_b theta_a = δ_ab,              i_b u_a = 0
/// L_b theta_a = -Σ c^a_{bc} theta_c,  L_b u_a = -Σ c^a_{bc} u_c
/// ```
///
/// all extended as derivations.
pub fn weil_algebra(lie: &LieAlgebraSpec, max_degree: usize) -> GStarStructure {
    let r = lie.dim();
    let mut gens: Vec<Generator> = (1..=r).map(|a| Generator::new(format!("theta{a}"), 1)).collect();
    gens.extend((1..=r).map(|a| Generator::new(format!("u{a}"), 2)));
    let f = FreeAlgebra::new(gens, max_degree).expect("Weil generators have positive degree");
    let alg = f.algebra();
    let theta = |a: usize| f.generator_vector(a);
    let u = |a: usize| f.generator_vector(r + a);
    let in_window = |deg: usize| deg <= alg.top();

    let mut d_images = Vec::with_capacity(2 * r);
    for a in 0..r {
        if !in_window(2) {
            d_images.push(Vec::new());
            continue;
        }
        let mut v = u(a);
        for b in 0..r {
            for c in 0..r {
                let k = lie.c(a, b, c);
                if k.is_zero() {
                    continue;
                }
                let prod = alg.mul(1, &theta(b), 1, &theta(c));
                axpy(&mut v, &(k * ratio(-1, 2)), &prod);
            }
        }
        d_images.push(v);
    }
    for a in 0..r {
        if !in_window(3) {
            d_images.push(Vec::new());
            continue;
        }
        let mut v = zero_vec(alg.dim(3));
        for b in 0..r {
            for c in 0..r {
                let k = lie.c(a, b, c);
                if k.is_zero() {
                    continue;
                }
                axpy(&mut v, k, &alg.mul(2, &u(b), 1, &theta(c)));
            }
        }
        d_images.push(v);
    }
    let d = f.derivation(1, &d_images).expect("generator images have matching sizes");

    let mut i_ops = Vec::with_capacity(r);
    let mut l_ops = Vec::with_capacity(r);
    for b in 0..r {
        let mut images = Vec::with_capacity(2 * r);
        for a in 0..r {
            images.push(vec![rat(i64::from(a == b))]);
        }
        images.extend((0..r).map(|_| Vec::new()));
        i_ops.push(f.derivation(-1, &images).expect("contraction images"));

        let mut images = Vec::with_capacity(2 * r);
        for (deg, gen) in [(1usize, &theta as &dyn Fn(usize) -> Vec<Rational>), (2, &u)] {
            for a in 0..r {
                if !in_window(deg) {
                    images.push(Vec::new());
                    continue;
                }
                let mut v = zero_vec(alg.dim(deg));
                for c in 0..r {
                    let k = lie.c(a, b, c);
                    if !k.is_zero() {
                        axpy(&mut v, &-k.clone(), &gen(c));
                    }
                }
                images.push(v);
            }
        }
        l_ops.push(f.derivation(0, &images).expect("Lie derivative images"));
    }
    let algebra = f.algebra().clone();
    GStarStructure::new(algebra, lie.clone(), d, i_ops, l_ops).expect("Weil operators fit the algebra")
}

/// Cohomology of the basic subcomplex of `W(𝔤) ⊗ A`, an independent model
/// of the equivariant cohomology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeilModelCohomology {
    pub dims: Vec<usize>,
    pub stable_through: usize,
}

/// Dims of `H((W(𝔤) ⊗ A)_basic)` through degree `n`, or through the last
/// stable degree if that is lower.
pub fn weil_model_cohomology(s: &GStarStructure, n: usize) -> Result<WeilModelCohomology> {
    super::require_axioms(s)?;
    let top = n + 2;
    let w = weil_algebra(&s.lie, top);
    let t = tensor_gstar(&w, s, Some(top))?;
    let basic = basic_subcomplex(&t.structure)?;
    let h = cohomology(&basic.complex)?;
    let stable_through = n.min(t.structure.stable_through()).min(s.stable_through_for(n));
    Ok(WeilModelCohomology { dims: h.dims()[..=stable_through].to_vec(), stable_through })
}

impl GStarStructure {
    /// Degrees `≤ n` not affected by truncation of this algebra.
    pub fn stable_through_for(&self, n: usize) -> usize {
        match self.algebra.exact_through() {
            Some(e) => e.min(n),
            None => n,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gstar::check_gstar_axioms;

    #[test]
    fn one_dimensional_weil_dims_and_axioms() {
        let w = weil_algebra(&LieAlgebraSpec::abelian(1), 8);
        assert_eq!(w.algebra.dims(), &[1, 1, 1, 1, 1, 1, 1, 1, 1]);
        let report = check_gstar_axioms(&w);
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn so3_weil_passes_axioms() {
        let w = weil_algebra(&LieAlgebraSpec::so3(), 5);
        let report = check_gstar_axioms(&w);
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn weil_is_acyclic_in_stable_window() {
        for (lie, n) in [(LieAlgebraSpec::abelian(1), 8), (LieAlgebraSpec::abelian(2), 6), (LieAlgebraSpec::so3(), 5)] {
            let w = weil_algebra(&lie, n);
            let h = cohomology(&w.de_rham()).unwrap();
            let stable = w.stable_through();
            assert_eq!(stable, n - 2);
            let mut expected = vec![0; stable + 1];
            expected[0] = 1;
            assert_eq!(&h.dims()[..=stable], &expected[..]);
        }
    }
}
