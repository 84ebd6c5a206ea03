use std::collections::HashMap;

use num_traits::{One, Zero};

use super::algebra::{sign, to_sparse, GradedAlgebra, GradedOperator, SparseVec};
use crate::complex::GradedVectorSpace;
use crate::error::{AlgebraError, Result};
use crate::linalg::{axpy, zero_vec, Rational, RationalMatrix};

/// Generator of a free graded-commutative algebra. Odd generators square to
/// zero; even ones may be capped by `max_power` (`x^{max_power+1} = 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub degree: usize,
    pub max_power: Option<usize>,
}

impl Generator {
    pub fn new(label: impl Into<String>, degree: usize) -> Self {
        Generator { label: label.into(), degree, max_power: None }
    }

    pub fn capped(label: impl Into<String>, degree: usize, max_power: usize) -> Self {
        Generator { label: label.into(), degree, max_power: Some(max_power) }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }

    fn cap(&self) -> Option<usize> {
        if self.is_odd() {
            Some(1)
        } else {
            self.max_power
        }
    }
}

/// Free graded-commutative algebra on finitely many generators, cut off
/// above `top`. Basis: monomials `x_1^{a_1} ⋯ x_k^{a_k}` in generator order.
#[derive(Clone, Debug)]
pub struct FreeAlgebra {
    generators: Vec<Generator>,
    algebra: GradedAlgebra,
    exponents: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

/// A polynomial in the generators: `(coefficient, exponent vector)` terms.
pub type Polynomial = Vec<(Rational, Vec<usize>)>;

impl FreeAlgebra {
    pub fn new(generators: Vec<Generator>, top: usize) -> Result<Self> {
        if generators.iter().any(|g| g.degree == 0) {
            return Err(AlgebraError::InvalidAlgebra("generators must have positive degree".into()));
        }
        let k = generators.len();
        let mut by_degree: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top + 1];
        let mut current = vec![0usize; k];
        enumerate(&generators, 0, 0, top, &mut current, &mut by_degree);
        for v in &mut by_degree {
            v.sort_by(|a, b| b.cmp(a));
        }
        let truncated = match generators.iter().map(|g| g.cap().map(|c| c * g.degree)).sum::<Option<usize>>() {
            Some(max) => max > top,
            None => true,
        };
        let mut exponents = Vec::new();
        let mut labels = Vec::new();
        for mons in &by_degree {
            labels.push(mons.iter().map(|m| monomial_label(&generators, m)).collect());
            exponents.extend(mons.iter().cloned());
        }
        let index: HashMap<Vec<usize>, usize> = exponents.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let space = GradedVectorSpace::with_labels(labels);
        let degree_of = |e: &[usize]| -> usize { e.iter().zip(&generators).map(|(a, g)| a * g.degree).sum() };
        let mut offsets = vec![0];
        for n in 0..=top {
            offsets.push(offsets[n] + space.dim(n));
        }
        let mut products = HashMap::new();
        for (a, ea) in exponents.iter().enumerate() {
            for (b, eb) in exponents.iter().enumerate() {
                let sum: Vec<usize> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                if let Some(&c) = index.get(&sum) {
                    let s = reorder_sign(&generators, ea, eb);
                    let deg = degree_of(&sum);
                    products.insert((a, b), vec![(c - offsets[deg], s)]);
                } else {
                    products.insert((a, b), SparseVec::new());
                }
            }
        }
        let algebra = GradedAlgebra::new(space, 0, products, truncated.then_some(top))?;
        Ok(FreeAlgebra { generators, algebra, exponents, index })
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        &self.algebra
    }

    pub fn into_algebra(self) -> GradedAlgebra {
        self.algebra
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_index(&self, label: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.label == label)
    }

    fn unit_exponent(&self, g: usize) -> Vec<usize> {
        let mut e = vec![0; self.generators.len()];
        e[g] = 1;
        e
    }

    /// Flat basis index of a monomial, if it is nonzero inside the window.
    pub fn monomial(&self, exponents: &[usize]) -> Option<usize> {
        self.index.get(exponents).copied()
    }

    /// Degree and local coordinates of a homogeneous polynomial in the
    /// generators. Terms above the window are dropped; `degree` is the
    /// degree of the first term.
    pub fn element(&self, poly: &Polynomial) -> Result<(usize, Vec<Rational>)> {
        let Some((_, first)) = poly.first() else {
            return Err(AlgebraError::InvalidAlgebra("empty polynomial has no degree".into()));
        };
        let deg = self.degree(first);
        let mut v = zero_vec(self.algebra.dim(deg));
        for (c, e) in poly {
            if e.len() != self.generators.len() {
                return Err(AlgebraError::InvalidAlgebra("exponent vector has the wrong length".into()));
            }
            if self.degree(e) != deg {
                return Err(AlgebraError::InvalidAlgebra("polynomial is not homogeneous".into()));
            }
            if let Some(f) = self.monomial(e) {
                v[self.algebra.local(f)] += c;
            }
        }
        Ok((deg, v))
    }

    pub fn degree(&self, exponents: &[usize]) -> usize {
        exponents.iter().zip(&self.generators).map(|(a, g)| a * g.degree).sum()
    }

    /// Extend images of the generators to a derivation of degree `shift`.
    /// `images[g]` are local coordinates in degree `deg(g) + shift`; an
    /// empty vector stands for zero.
    pub fn derivation(&self, shift: i32, images: &[Vec<Rational>]) -> Result<GradedOperator> {
        if images.len() != self.generators.len() {
            return Err(AlgebraError::InvalidAlgebra("one image per generator is required".into()));
        }
        let a = &self.algebra;
        let target_dim = |n: usize| -> usize {
            super::algebra::target_degree(n, shift).map_or(0, |t| if t <= a.top() { a.dim(t) } else { 0 })
        };
        for (g, img) in images.iter().enumerate() {
            let want = target_dim(self.generators[g].degree);
            if !img.is_empty() && img.len() != want {
                return Err(AlgebraError::DimensionMismatch(format!(
                    "image of generator {} has {} coordinates, expected {want}",
                    self.generators[g].label,
                    img.len()
                )));
            }
        }
        let mut values: Vec<Vec<Rational>> = Vec::with_capacity(a.size());
        for (flat, e) in self.exponents.iter().enumerate() {
            let n = a.degree_of(flat);
            let dim = target_dim(n);
            let Some(g) = e.iter().position(|&x| x > 0) else {
                values.push(zero_vec(dim));
                continue;
            };
            let mut rest = e.clone();
            rest[g] -= 1;
            let rest_flat = self.index[&rest];
            let rest_deg = a.degree_of(rest_flat);
            let gdeg = self.generators[g].degree;
            let mut out = zero_vec(dim);
            if dim > 0 {
                // D(x_g · m) = D(x_g) m + (-1)^{|D||x_g|} x_g D(m)
                let dg = &images[g];
                if !dg.is_empty() {
                    let t = super::algebra::target_degree(gdeg, shift).expect("image degree");
                    let term = a.mul(t, dg, rest_deg, &a.basis_vector(rest_flat));
                    axpy(&mut out, &Rational::one(), &term);
                }
                let dm = &values[rest_flat];
                if !dm.is_empty() && dm.iter().any(|c| !c.is_zero()) {
                    let t = super::algebra::target_degree(rest_deg, shift).expect("image degree");
                    let gv = a.basis_vector(self.index[&self.unit_exponent(g)]);
                    let term = a.mul(gdeg, &gv, t, dm);
                    let s = sign(shift.rem_euclid(2) == 1 && gdeg % 2 == 1);
                    axpy(&mut out, &s, &term);
                }
            }
            values.push(out);
        }
        let dims = a.dims();
        let blocks = (0..=a.top())
            .map(|n| {
                let cols: Vec<Vec<Rational>> = (0..a.dim(n)).map(|i| values[a.flat(n, i)].clone()).collect();
                RationalMatrix::from_columns(target_dim(n), &cols)
            })
            .collect();
        GradedOperator::from_blocks(dims, shift, blocks)
    }

    /// Sparse local coordinates of a generator; empty if above the window.
    pub fn generator_vector(&self, g: usize) -> Vec<Rational> {
        match self.monomial(&self.unit_exponent(g)) {
            Some(f) => self.algebra.basis_vector(f),
            None => Vec::new(),
        }
    }

    pub fn sparse_generator(&self, g: usize) -> SparseVec {
        to_sparse(&self.generator_vector(g))
    }
}

fn enumerate(
    gens: &[Generator],
    i: usize,
    deg: usize,
    top: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    if i == gens.len() {
        out[deg].push(current.clone());
        return;
    }
    let g = &gens[i];
    let mut a = 0;
    loop {
        let d = deg + a * g.degree;
        if d > top || g.cap().is_some_and(|c| a > c) {
            break;
        }
        current[i] = a;
        enumerate(gens, i + 1, d, top, current, out);
        a += 1;
    }
    current[i] = 0;
}

/// Sign from moving the odd generators of `b` past those of `a`.
fn reorder_sign(gens: &[Generator], a: &[usize], b: &[usize]) -> Rational {
    let mut swaps = 0usize;
    for (j, g) in gens.iter().enumerate() {
        if !g.is_odd() || a[j] == 0 {
            continue;
        }
        for (i, h) in gens.iter().enumerate().take(j) {
            if h.is_odd() && b[i] > 0 {
                swaps += 1;
            }
        }
    }
    sign(swaps % 2 == 1)
}

fn monomial_label(gens: &[Generator], e: &[usize]) -> String {
    let parts: Vec<String> = gens
        .iter()
        .zip(e)
        .filter(|(_, &a)| a > 0)
        .map(|(g, &a)| if a == 1 { g.label.clone() } else { format!("{}^{a}", g.label) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn exterior_on_two_generators() {
        let f = FreeAlgebra::new(vec![Generator::new("a", 1), Generator::new("b", 1)], 4).unwrap();
        assert_eq!(f.algebra().dims(), &[1, 2, 1, 0, 0]);
        assert!(!f.algebra().is_truncated());
        assert!(f.algebra().check().is_ok());
        // b·a = −a·b
        let a = f.generator_vector(0);
        let b = f.generator_vector(1);
        let ab = f.algebra().mul(1, &a, 1, &b);
        let ba = f.algebra().mul(1, &b, 1, &a);
        assert_eq!(ab, vec![rat(1)]);
        assert_eq!(ba, vec![rat(-1)]);
    }

    #[test]
    fn polynomial_generator_is_truncated() {
        let f = FreeAlgebra::new(vec![Generator::new("x", 1), Generator::new("u", 2)], 6).unwrap();
        assert_eq!(f.algebra().dims(), &[1, 1, 1, 1, 1, 1, 1]);
        assert!(f.algebra().is_truncated());
        assert_eq!(f.algebra().exact_through(), Some(4));
        assert!(f.algebra().check().is_ok());
    }

    #[test]
    fn capped_even_generator() {
        let f = FreeAlgebra::new(vec![Generator::new("theta", 1), Generator::capped("omega", 2, 1)], 3).unwrap();
        assert_eq!(f.algebra().dims(), &[1, 1, 1, 1]);
        assert!(!f.algebra().is_truncated());
        assert_eq!(f.algebra().label(3), "theta*omega");
    }

    #[test]
    fn derivation_extends_by_leibniz() {
        // d x = u on Λ(x) ⊗ ℚ[u]: d(x u^k) = u^{k+1}
        let f = FreeAlgebra::new(vec![Generator::new("x", 1), Generator::new("u", 2)], 6).unwrap();
        let d = f.derivation(1, &[vec![rat(1)], vec![]]).unwrap();
        for n in [1, 3] {
            assert_eq!(d.block(n), &RationalMatrix::identity(1));
        }
        assert!(d.block(2).is_zero());
        // i x = 1, odd: i(x u) = u
        let i = f.derivation(-1, &[vec![rat(1)], vec![]]).unwrap();
        assert_eq!(i.block(3), &RationalMatrix::identity(1));
    }

    #[test]
    fn element_rejects_inhomogeneous() {
        let f = FreeAlgebra::new(vec![Generator::new("x", 1), Generator::new("u", 2)], 4).unwrap();
        assert!(f.element(&vec![(rat(1), vec![1, 0]), (rat(1), vec![0, 1])]).is_err());
        assert_eq!(f.element(&vec![(rat(3), vec![1, 1])]).unwrap(), (3, vec![rat(3)]));
    }
}
