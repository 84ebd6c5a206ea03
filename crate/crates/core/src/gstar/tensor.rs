use std::collections::HashMap;

use num_traits::Zero;

use super::algebra::{sign, target_degree, GradedAlgebra, GradedOperator, SparseVec};
use super::GStarStructure;
use crate::complex::GradedVectorSpace;
use crate::error::{AlgebraError, Result};
use crate::linalg::RationalMatrix;

/// Graded tensor product of two g*-algebras.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    pub structure: GStarStructure,
    /// Some products of the factors fell outside the requested window.
    pub overflow: bool,
}

/// `a ⊗ b` with Koszul signs, cut off at `top` (default: no cut). The
/// operators act by `D(x ⊗ y) = Dx ⊗ y + (-1)^{|D||x|} x ⊗ Dy`.
pub fn tensor_gstar(a: &GStarStructure, b: &GStarStructure, top: Option<usize>) -> Result<TensorProduct> {
    if a.lie != b.lie {
        return Err(AlgebraError::InvalidAlgebra("tensor factors act by different Lie algebras".into()));
    }
    let full = a.top() + b.top();
    let top = top.unwrap_or(full);
    let overflow = top < full;
    let (aa, ba) = (&a.algebra, &b.algebra);

    // basis of degree n: pairs (x, y) with deg x + deg y = n, ordered by deg x
    let mut pairs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); top + 1];
    for (n, list) in pairs.iter_mut().enumerate() {
        for p in 0..=n.min(aa.top()) {
            let q = n - p;
            if q > ba.top() {
                continue;
            }
            for i in 0..aa.dim(p) {
                for j in 0..ba.dim(q) {
                    list.push((aa.flat(p, i), ba.flat(q, j)));
                }
            }
        }
    }
    let index: HashMap<(usize, usize), (usize, usize)> = pairs
        .iter()
        .enumerate()
        .flat_map(|(n, list)| list.iter().enumerate().map(move |(k, &xy)| (xy, (n, k))))
        .collect();
    let labels = pairs
        .iter()
        .map(|list| list.iter().map(|&(x, y)| format!("{}⊗{}", aa.label(x), ba.label(y))).collect())
        .collect();
    let space = GradedVectorSpace::with_labels(labels);

    let mut offsets = vec![0];
    for n in 0..=top {
        offsets.push(offsets[n] + pairs[n].len());
    }
    let flat_pairs: Vec<(usize, usize)> = pairs.iter().flatten().copied().collect();
    let mut products = HashMap::new();
    for (s, &(x, y)) in flat_pairs.iter().enumerate() {
        for (t, &(x2, y2)) in flat_pairs.iter().enumerate() {
            let deg = aa.degree_of(x) + ba.degree_of(y) + aa.degree_of(x2) + ba.degree_of(y2);
            if deg > top {
                products.insert((s, t), SparseVec::new());
                continue;
            }
            // (x⊗y)(x2⊗y2) = (-1)^{|y||x2|} x x2 ⊗ y y2
            let sg = sign(ba.degree_of(y) * aa.degree_of(x2) % 2 == 1);
            let px = aa.basis_product(x, x2);
            let py = ba.basis_product(y, y2);
            let (dx, dy) = (aa.degree_of(x) + aa.degree_of(x2), ba.degree_of(y) + ba.degree_of(y2));
            let mut v = SparseVec::new();
            for (i, c) in px {
                for (j, e) in py {
                    let key = (aa.flat(dx, *i), ba.flat(dy, *j));
                    let (_, k) = index[&key];
                    v.push((k, c * e * &sg));
                }
            }
            v.sort_by_key(|(k, _)| *k);
            products.insert((s, t), v);
        }
    }
    let complete = [aa.complete_through(), ba.complete_through(), overflow.then_some(top)]
        .into_iter()
        .flatten()
        .min();
    let unit = index[&(aa.unit(), ba.unit())].1;
    let algebra = GradedAlgebra::new(space, unit, products, complete)?;

    let extend = |oa: &GradedOperator, ob: &GradedOperator| -> GradedOperator {
        let shift = oa.shift();
        let blocks = (0..=top)
            .map(|n| {
                let target = target_degree(n, shift).filter(|&t| t <= top);
                let rows = target.map_or(0, |t| pairs[t].len());
                let mut m = RationalMatrix::zeros(rows, pairs[n].len());
                if target.is_none() {
                    return m;
                }
                for (col, &(x, y)) in pairs[n].iter().enumerate() {
                    let (px, py) = (aa.degree_of(x), ba.degree_of(y));
                    if let Some(tx) = target_degree(px, shift).filter(|&tx| tx <= aa.top()) {
                        let img = oa.apply(px, &aa.basis_vector(x));
                        for (i, c) in img.iter().enumerate() {
                            if !c.is_zero() {
                                let (_, k) = index[&(aa.flat(tx, i), y)];
                                m.add_to(k, col, c);
                            }
                        }
                    }
                    if let Some(ty) = target_degree(py, shift).filter(|&ty| ty <= ba.top()) {
                        let sg = sign(oa.is_odd() && px % 2 == 1);
                        let img = ob.apply(py, &ba.basis_vector(y));
                        for (j, c) in img.iter().enumerate() {
                            if !c.is_zero() {
                                let (_, k) = index[&(x, ba.flat(ty, j))];
                                m.add_to(k, col, &(c * &sg));
                            }
                        }
                    }
                }
                m
            })
            .collect();
        GradedOperator::from_blocks(algebra.dims(), shift, blocks).expect("tensor operator shapes")
    };
    let d = extend(&a.d, &b.d);
    let i = (0..a.rank()).map(|k| extend(&a.i[k], &b.i[k])).collect();
    let l = (0..a.rank()).map(|k| extend(&a.l[k], &b.l[k])).collect();
    let structure = GStarStructure::new(algebra, a.lie.clone(), d, i, l)?;
    Ok(TensorProduct { structure, overflow })
}

/// Trivial one-dimensional g*-algebra `ℚ` for the given Lie algebra.
pub fn ground_field(lie: &super::LieAlgebraSpec) -> GStarStructure {
    let space = GradedVectorSpace::with_labels(vec![vec!["1".into()]]);
    let algebra = GradedAlgebra::new(space, 0, HashMap::new(), None).expect("ground field");
    let d = GradedOperator::zero(algebra.dims(), 1);
    GStarStructure::trivial_action(algebra, d, lie.clone()).expect("ground field")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::cohomology_dims;
    use crate::gstar::{check_gstar_axioms, weil_algebra, FreeAlgebra, Generator, LieAlgebraSpec};
    use crate::linalg::rat;

    fn exterior(label: &str) -> GStarStructure {
        let f = FreeAlgebra::new(vec![Generator::new(label, 1)], 1).unwrap();
        let d = f.derivation(1, &[vec![]]).unwrap();
        let i = f.derivation(-1, &[vec![rat(1)]]).unwrap();
        let l = f.derivation(0, &[vec![]]).unwrap();
        GStarStructure::new(f.into_algebra(), LieAlgebraSpec::abelian(1), d, vec![i], vec![l]).unwrap()
    }

    #[test]
    fn ground_field_is_a_unit() {
        let a = exterior("theta");
        let t = tensor_gstar(&a, &ground_field(&a.lie), None).unwrap();
        assert_eq!(t.structure.algebra.dims(), a.algebra.dims());
        assert!(!t.overflow);
    }

    #[test]
    fn two_exterior_factors() {
        let t = tensor_gstar(&exterior("a"), &exterior("b"), None).unwrap();
        assert_eq!(t.structure.algebra.dims(), &[1, 2, 1]);
        assert!(check_gstar_axioms(&t.structure).all_pass());
    }

    #[test]
    fn weil_times_exterior_passes_axioms() {
        let w = weil_algebra(&LieAlgebraSpec::abelian(1), 6);
        let t = tensor_gstar(&w, &exterior("theta"), Some(6)).unwrap();
        assert!(t.overflow);
        let report = check_gstar_axioms(&t.structure);
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn tensor_is_associative_on_dims_and_cohomology() {
        let (x, y, z) = (exterior("x"), exterior("y"), exterior("z"));
        let left = tensor_gstar(&tensor_gstar(&x, &y, None).unwrap().structure, &z, None).unwrap().structure;
        let right = tensor_gstar(&x, &tensor_gstar(&y, &z, None).unwrap().structure, None).unwrap().structure;
        assert_eq!(left.algebra.dims(), right.algebra.dims());
        assert_eq!(cohomology_dims(&left.de_rham()).unwrap(), cohomology_dims(&right.de_rham()).unwrap());
    }

    #[test]
    fn mismatched_lie_algebras_are_rejected() {
        let a = exterior("theta");
        let b = ground_field(&LieAlgebraSpec::abelian(2));
        assert!(tensor_gstar(&a, &b, None).is_err());
    }
}
