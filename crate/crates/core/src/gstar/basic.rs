use serde::Serialize;

use super::algebra::GradedAlgebra;
use super::{GStarStructure, GradedOperator};
use crate::complex::{CochainComplex, GradedVectorSpace};
use crate::error::{AlgebraError, Result};
use crate::linalg::{is_zero_vec, EchelonBasis, Rational, RationalMatrix};

/// The subcomplex of elements killed by every `i_X` and `L_X`.
#[derive(Clone, Debug)]
pub struct BasicSubcomplex {
    pub complex: CochainComplex,
    /// `embeddings[n]` has the basic basis vectors of degree `n` as columns.
    pub embeddings: Vec<RationalMatrix>,
    pub stable_through: usize,
}

/// Joint kernel of the operators selected by `which` in every degree.
fn joint_kernel(s: &GStarStructure, which: &[usize]) -> Vec<RationalMatrix> {
    let a = &s.algebra;
    (0..=a.top())
        .map(|n| {
            let mut stacked = RationalMatrix::zeros(0, a.dim(n));
            for &x in which {
                stacked = stacked.vstack(s.i[x].block(n)).vstack(s.l[x].block(n));
            }
            RationalMatrix::from_columns(a.dim(n), &stacked.kernel())
        })
        .collect()
}

/// Basic subcomplex with its embedding into the algebra. The restriction of
/// `d` is verified, not assumed.
pub fn basic_subcomplex(s: &GStarStructure) -> Result<BasicSubcomplex> {
    let all: Vec<usize> = (0..s.rank()).collect();
    let embeddings = joint_kernel(s, &all);
    let d = s
        .d
        .restrict(&embeddings)
        .ok_or_else(|| AlgebraError::AxiomsFailed("d does not preserve basic elements".into()))?;
    let dims: Vec<usize> = embeddings.iter().map(RationalMatrix::cols).collect();
    let top = s.top();
    let diffs = (0..top).map(|n| d.block(n).clone()).collect();
    let complex = CochainComplex::from_parts(GradedVectorSpace::new(dims), diffs);
    Ok(BasicSubcomplex { complex, embeddings, stable_through: s.stable_through() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TypeC {
    pub free: bool,
    pub type_c: bool,
}

/// `free`: `i_{X_j} θ_i = δ_ij`; `type_c`: free and the span of the `θ_i`
/// is stable under every `L_X`. Candidates are degree-1 vectors in the
/// algebra's local coordinates.
pub fn detect_type_c(s: &GStarStructure, candidates: &[Vec<Rational>]) -> Result<TypeC> {
    let a = &s.algebra;
    let r = s.rank();
    if candidates.iter().any(|c| c.len() != a.dim(1)) {
        return Err(AlgebraError::DimensionMismatch("connection candidates must be degree-1 vectors".into()));
    }
    let mut free = candidates.len() == r;
    if free {
        'outer: for (i, theta) in candidates.iter().enumerate() {
            for j in 0..r {
                let v = s.i[j].apply(1, theta);
                let expected = if i == j { crate::linalg::rat(1) } else { crate::linalg::rat(0) };
                if v.len() != 1 || v[0] != expected {
                    free = false;
                    break 'outer;
                }
            }
        }
    }
    let span = EchelonBasis::from_vectors(a.dim(1), candidates);
    let invariant = s.l.iter().all(|l| candidates.iter().all(|theta| span.contains(&l.apply(1, theta))));
    Ok(TypeC { free, type_c: free && invariant })
}

/// The subalgebra of elements basic for the generators `h`, as a g*-algebra
/// for the remaining generators. Those must commute with `h` and preserve
/// the `h`-basic elements.
pub fn relative_basic(s: &GStarStructure, h: &[usize]) -> Result<GStarStructure> {
    let k: Vec<usize> = (0..s.rank()).filter(|x| !h.contains(x)).collect();
    let lie = s.lie.restrict(&k)?;
    let embeddings = joint_kernel(s, h);
    let a = &s.algebra;
    let dims: Vec<usize> = embeddings.iter().map(RationalMatrix::cols).collect();
    let labels: Vec<Vec<String>> = dims
        .iter()
        .enumerate()
        .map(|(n, &m)| (0..m).map(|i| basis_label(a, &embeddings[n], n, i)).collect())
        .collect();
    let space = GradedVectorSpace::with_labels(labels);

    // unit: 1 is basic; find its coordinates
    let unit_vec = a.basis_vector(a.unit());
    let unit_coords = embeddings[0]
        .solve(&unit_vec)
        .ok_or_else(|| AlgebraError::InvalidAlgebra("unit is not basic".into()))?;
    if embeddings[0].cols() != 1 || unit_coords[0] != crate::linalg::rat(1) {
        // rescale the degree-0 basis so that its first vector is the unit
        return Err(AlgebraError::Refused("basic elements of degree 0 must be the constants".into()));
    }

    let mut offsets = vec![0];
    for n in 0..dims.len() {
        offsets.push(offsets[n] + dims[n]);
    }
    let mut products = std::collections::HashMap::new();
    for p in 0..dims.len() {
        for i in 0..dims[p] {
            let x = embeddings[p].column(i);
            for q in 0..dims.len() {
                if p + q > a.top() {
                    continue;
                }
                for j in 0..dims[q] {
                    let y = embeddings[q].column(j);
                    let xy = a.mul(p, &x, q, &y);
                    let coords = embeddings[p + q]
                        .solve(&xy)
                        .ok_or_else(|| AlgebraError::InvalidAlgebra("basic elements are not closed under products".into()))?;
                    products.insert((offsets[p] + i, offsets[q] + j), super::algebra::to_sparse(&coords));
                }
            }
        }
    }
    let algebra = GradedAlgebra::new(space, 0, products, a.complete_through())?;
    let restrict = |op: &GradedOperator, what: &str| -> Result<GradedOperator> {
        op.restrict(&embeddings)
            .ok_or_else(|| AlgebraError::Refused(format!("{what} does not preserve the basic elements")))
    };
    let d = restrict(&s.d, "d")?;
    let i = k.iter().map(|&x| restrict(&s.i[x], "a contraction")).collect::<Result<Vec<_>>>()?;
    let l = k.iter().map(|&x| restrict(&s.l[x], "a Lie derivative")).collect::<Result<Vec<_>>>()?;
    GStarStructure::new(algebra, lie, d, i, l)
}

/// Label of a basic basis vector: the algebra label if it is a single basis
/// element, otherwise a generic name.
fn basis_label(a: &GradedAlgebra, e: &RationalMatrix, n: usize, i: usize) -> String {
    let col = e.column(i);
    let nonzero: Vec<usize> = (0..col.len()).filter(|&k| !is_zero_vec(&col[k..=k])).collect();
    if nonzero.len() == 1 && col[nonzero[0]] == crate::linalg::rat(1) {
        a.label(a.flat(n, nonzero[0])).to_string()
    } else {
        format!("b{n}_{i}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::cohomology_dims;
    use crate::gstar::{weil_algebra, FreeAlgebra, Generator, LieAlgebraSpec};
    use crate::linalg::rat;

    fn exterior() -> GStarStructure {
        let f = FreeAlgebra::new(vec![Generator::new("theta", 1)], 1).unwrap();
        let d = f.derivation(1, &[vec![]]).unwrap();
        let i = f.derivation(-1, &[vec![rat(1)]]).unwrap();
        let l = f.derivation(0, &[vec![]]).unwrap();
        GStarStructure::new(f.into_algebra(), LieAlgebraSpec::abelian(1), d, vec![i], vec![l]).unwrap()
    }

    #[test]
    fn exterior_basic_is_constants() {
        let b = basic_subcomplex(&exterior()).unwrap();
        assert_eq!(b.complex.space().dims(), &[1, 0]);
    }

    #[test]
    fn trivial_action_basic_is_everything() {
        let s = exterior();
        let t = GStarStructure::trivial_action(s.algebra.clone(), s.d.clone(), s.lie.clone()).unwrap();
        assert_eq!(basic_subcomplex(&t).unwrap().complex.space().dims(), &[1, 1]);
    }

    #[test]
    fn weil_basic_is_polynomial_ring() {
        let w = weil_algebra(&LieAlgebraSpec::abelian(1), 8);
        let b = basic_subcomplex(&w).unwrap();
        assert_eq!(b.complex.space().dims(), &[1, 0, 1, 0, 1, 0, 1, 0, 1]);
        assert_eq!(cohomology_dims(&b.complex).unwrap(), vec![1, 0, 1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn type_c_detection() {
        let s = exterior();
        assert_eq!(detect_type_c(&s, &[vec![rat(1)]]).unwrap(), TypeC { free: true, type_c: true });
        let t = GStarStructure::trivial_action(s.algebra.clone(), s.d.clone(), s.lie.clone()).unwrap();
        assert_eq!(detect_type_c(&t, &[vec![rat(1)]]).unwrap(), TypeC { free: false, type_c: false });
    }

    #[test]
    fn two_generator_exterior_is_type_c() {
        let f = FreeAlgebra::new(vec![Generator::new("t1", 1), Generator::new("t2", 1)], 2).unwrap();
        let d = f.derivation(1, &[vec![], vec![]]).unwrap();
        let i1 = f.derivation(-1, &[vec![rat(1)], vec![rat(0)]]).unwrap();
        let i2 = f.derivation(-1, &[vec![rat(0)], vec![rat(1)]]).unwrap();
        let l = f.derivation(0, &[vec![], vec![]]).unwrap();
        let s = GStarStructure::new(f.into_algebra(), LieAlgebraSpec::abelian(2), d, vec![i1, i2], vec![l.clone(), l])
            .unwrap();
        let c = detect_type_c(&s, &[vec![rat(1), rat(0)], vec![rat(0), rat(1)]]).unwrap();
        assert_eq!(c, TypeC { free: true, type_c: true });
    }
}
