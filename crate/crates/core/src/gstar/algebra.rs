use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::complex::GradedVectorSpace;
use crate::error::{AlgebraError, Result};
use crate::linalg::{zero_vec, Rational, RationalMatrix};

/// Sparse vector as sorted `(index, coefficient)` pairs without zeros.
pub type SparseVec = Vec<(usize, Rational)>;

pub fn to_sparse(v: &[Rational]) -> SparseVec {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

pub fn to_dense(v: &SparseVec, dim: usize) -> Vec<Rational> {
    let mut out = zero_vec(dim);
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

pub fn sign(odd: bool) -> Rational {
    if odd {
        -Rational::one()
    } else {
        Rational::one()
    }
}

/// Finite-dimensional graded-commutative algebra concentrated in `[0, top]`.
///
/// Basis elements are addressed by a flat index; the flat basis lists degree
/// 0 first, then degree 1, and so on. Products of basis elements are stored
/// in the local coordinates of the product degree. A truncated algebra is
/// the quotient of a larger one by everything above some degree; its
/// products and spaces are complete only through `complete_through`, and
/// cohomology is trusted only through `exact_through`.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    space: GradedVectorSpace,
    offsets: Vec<usize>,
    degree_of: Vec<usize>,
    table: Vec<SparseVec>,
    unit: usize,
    complete_through: Option<usize>,
}

impl GradedAlgebra {
    /// `products` maps flat pairs to the product in local coordinates of the
    /// product degree. Products with the unit are implied, and a missing
    /// `(b, a)` entry is filled from `(a, b)` by graded commutativity.
    pub fn new(
        space: GradedVectorSpace,
        unit_local: usize,
        products: HashMap<(usize, usize), SparseVec>,
        complete_through: Option<usize>,
    ) -> Result<Self> {
        if space.dim(0) <= unit_local {
            return Err(AlgebraError::InvalidAlgebra("the unit must be a degree-0 basis element".into()));
        }
        let mut offsets = vec![0];
        let mut degree_of = Vec::new();
        for n in 0..=space.top() {
            degree_of.extend(std::iter::repeat_n(n, space.dim(n)));
            offsets.push(offsets[n] + space.dim(n));
        }
        let size = degree_of.len();
        let unit = unit_local;
        let mut table = vec![SparseVec::new(); size * size];
        for (&(a, b), v) in &products {
            if a >= size || b >= size {
                return Err(AlgebraError::InvalidAlgebra(format!("product of unknown basis elements {a}, {b}")));
            }
            let deg = degree_of[a] + degree_of[b];
            if let Some(&(i, _)) = v.iter().find(|(i, _)| *i >= space.dim(deg)) {
                return Err(AlgebraError::InvalidAlgebra(format!(
                    "product of {} and {} has component {i} outside degree {deg}",
                    space.labels(degree_of[a])[a - offsets[degree_of[a]]],
                    space.labels(degree_of[b])[b - offsets[degree_of[b]]],
                )));
            }
            table[a * size + b] = v.iter().filter(|(_, c)| !c.is_zero()).cloned().collect();
        }
        for (&(a, b), v) in &products {
            if !products.contains_key(&(b, a)) {
                let s = sign(degree_of[a] * degree_of[b] % 2 == 1);
                table[b * size + a] = v.iter().map(|(i, c)| (*i, c * &s)).collect();
            }
        }
        for x in 0..size {
            let local = x - offsets[degree_of[x]];
            if !products.contains_key(&(unit, x)) {
                table[unit * size + x] = vec![(local, Rational::one())];
            }
            if !products.contains_key(&(x, unit)) {
                table[x * size + unit] = vec![(local, Rational::one())];
            }
        }
        Ok(GradedAlgebra { space, offsets, degree_of, table, unit, complete_through })
    }

    pub fn space(&self) -> &GradedVectorSpace {
        &self.space
    }

    pub fn top(&self) -> usize {
        self.space.top()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.space.dim(n)
    }

    pub fn dims(&self) -> &[usize] {
        self.space.dims()
    }

    pub fn size(&self) -> usize {
        self.degree_of.len()
    }

    pub fn is_truncated(&self) -> bool {
        self.complete_through.is_some()
    }

    /// Highest degree through which spaces and products agree with the
    /// untruncated algebra; `None` when nothing was cut off.
    pub fn complete_through(&self) -> Option<usize> {
        self.complete_through
    }

    /// Highest degree whose cohomology cannot see the truncation; `None`
    /// when the algebra is not truncated.
    pub fn exact_through(&self) -> Option<usize> {
        self.complete_through.map(|r| r.saturating_sub(2))
    }

    /// `complete_through`, or `top` when nothing was cut off.
    pub fn reliable_top(&self) -> usize {
        self.complete_through.unwrap_or(self.top()).min(self.top())
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn degree_of(&self, flat: usize) -> usize {
        self.degree_of[flat]
    }

    pub fn flat(&self, degree: usize, local: usize) -> usize {
        self.offsets[degree] + local
    }

    pub fn local(&self, flat: usize) -> usize {
        flat - self.offsets[self.degree_of[flat]]
    }

    pub fn label(&self, flat: usize) -> &str {
        &self.space.labels(self.degree_of[flat])[self.local(flat)]
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        (0..self.size()).find(|&x| self.label(x) == label)
    }

    /// Product of two basis elements in local coordinates of the product
    /// degree (empty above the window).
    pub fn basis_product(&self, a: usize, b: usize) -> &SparseVec {
        &self.table[a * self.size() + b]
    }

    /// Product of homogeneous elements given in local coordinates.
    pub fn mul(&self, deg_a: usize, a: &[Rational], deg_b: usize, b: &[Rational]) -> Vec<Rational> {
        let deg = deg_a + deg_b;
        let mut out = zero_vec(self.dim(deg));
        if out.is_empty() {
            return out;
        }
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in self.basis_product(self.flat(deg_a, i), self.flat(deg_b, j)) {
                    out[*k] += &xy * c;
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, flat: usize) -> Vec<Rational> {
        let mut v = zero_vec(self.dim(self.degree_of[flat]));
        v[self.local(flat)] = Rational::one();
        v
    }

    /// Graded commutativity, associativity on triples inside the window,
    /// and the unit. Returns a description of the first failure.
    pub fn check(&self) -> std::result::Result<(), String> {
        let n = self.size();
        for a in 0..n {
            let ea = self.basis_vector(a);
            let u = self.mul(0, &self.basis_vector(self.unit), self.degree_of[a], &ea);
            if u != ea || self.mul(self.degree_of[a], &ea, 0, &self.basis_vector(self.unit)) != ea {
                return Err(format!("unit fails on {}", self.label(a)));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let (da, db) = (self.degree_of[a], self.degree_of[b]);
                if da + db > self.reliable_top() {
                    continue;
                }
                let s = sign(da * db % 2 == 1);
                let ab = self.basis_product(a, b);
                let ba = self.basis_product(b, a);
                let ba_signed: SparseVec = ba.iter().map(|(i, c)| (*i, c * &s)).collect();
                if *ab != ba_signed {
                    return Err(format!("graded commutativity fails on {}, {}", self.label(a), self.label(b)));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let dab = self.degree_of[a] + self.degree_of[b];
                if dab > self.reliable_top() {
                    continue;
                }
                let ab = to_dense(self.basis_product(a, b), self.dim(dab));
                for c in 0..n {
                    let dc = self.degree_of[c];
                    if dab + dc > self.reliable_top() {
                        continue;
                    }
                    let left = self.mul(dab, &ab, dc, &self.basis_vector(c));
                    let bc = to_dense(self.basis_product(b, c), self.dim(self.degree_of[b] + dc));
                    let right = self.mul(self.degree_of[a], &self.basis_vector(a), self.degree_of[b] + dc, &bc);
                    if left != right {
                        return Err(format!(
                            "associativity fails on {}, {}, {}",
                            self.label(a),
                            self.label(b),
                            self.label(c)
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Homogeneous linear operator of degree `shift` stored as one block per
/// source degree: `blocks[n] : A^n -> A^{n + shift}`. Blocks whose target
/// lies outside the window have zero rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedOperator {
    shift: i32,
    blocks: Vec<RationalMatrix>,
}

pub fn target_degree(n: usize, shift: i32) -> Option<usize> {
    usize::try_from(n as i64 + i64::from(shift)).ok()
}

impl GradedOperator {
    pub fn zero(dims: &[usize], shift: i32) -> Self {
        let blocks = (0..dims.len())
            .map(|n| {
                let rows = target_degree(n, shift).and_then(|t| dims.get(t)).copied().unwrap_or(0);
                RationalMatrix::zeros(rows, dims[n])
            })
            .collect();
        GradedOperator { shift, blocks }
    }

    /// Checks block shapes against `dims`.
    pub fn from_blocks(dims: &[usize], shift: i32, blocks: Vec<RationalMatrix>) -> Result<Self> {
        if blocks.len() != dims.len() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "operator of degree {shift} has {} blocks for {} degrees",
                blocks.len(),
                dims.len()
            )));
        }
        for (n, b) in blocks.iter().enumerate() {
            let rows = target_degree(n, shift).and_then(|t| dims.get(t)).copied().unwrap_or(0);
            if b.rows() != rows || b.cols() != dims[n] {
                return Err(AlgebraError::DimensionMismatch(format!(
                    "operator of degree {shift} in degree {n} is {}x{}, expected {rows}x{}",
                    b.rows(),
                    b.cols(),
                    dims[n]
                )));
            }
        }
        Ok(GradedOperator { shift, blocks })
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn is_odd(&self) -> bool {
        self.shift.rem_euclid(2) == 1
    }

    pub fn block(&self, n: usize) -> &RationalMatrix {
        &self.blocks[n]
    }

    pub fn blocks(&self) -> &[RationalMatrix] {
        &self.blocks
    }

    pub fn top(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(RationalMatrix::is_zero)
    }

    /// Image of a degree-`n` vector; empty if the target is outside the window.
    pub fn apply(&self, n: usize, v: &[Rational]) -> Vec<Rational> {
        match self.blocks.get(n) {
            Some(b) => b.mul_vec(v),
            None => Vec::new(),
        }
    }

    /// `self ∘ other` on degree `n` as a matrix, zero if out of range.
    pub fn compose_at(&self, other: &GradedOperator, n: usize) -> RationalMatrix {
        let mid = target_degree(n, other.shift);
        let first = &other.blocks[n];
        match mid.and_then(|m| self.blocks.get(m)) {
            Some(second) if first.rows() == second.cols() => second.mul(first),
            _ => {
                let rows = target_degree(n, self.shift + other.shift)
                    .and_then(|t| self.blocks.get(t))
                    .map_or(0, RationalMatrix::cols);
                RationalMatrix::zeros(rows, first.cols())
            }
        }
    }

    /// Graded commutator `[self, other] = self∘other - (-1)^{|self||other|} other∘self`
    /// on degree `n`.
    pub fn commutator_at(&self, other: &GradedOperator, n: usize) -> RationalMatrix {
        let ab = self.compose_at(other, n);
        let ba = other.compose_at(self, n);
        if self.is_odd() && other.is_odd() {
            ab.add(&ba)
        } else {
            ab.sub(&ba)
        }
    }

    pub fn linear_combination(terms: &[(Rational, &GradedOperator)], dims: &[usize], shift: i32) -> GradedOperator {
        let mut out = GradedOperator::zero(dims, shift);
        for (c, op) in terms {
            if c.is_zero() {
                continue;
            }
            for n in 0..out.blocks.len() {
                out.blocks[n] = out.blocks[n].add(&op.blocks[n].scale(c));
            }
        }
        out
    }

    /// Restrict to subspaces: `embed[n]` spans an invariant subspace in
    /// degree `n`. Fails if the image leaves the subspace.
    pub fn restrict(&self, embed: &[RationalMatrix]) -> Option<GradedOperator> {
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for (n, e) in embed.iter().enumerate() {
            match target_degree(n, self.shift).and_then(|t| embed.get(t)) {
                Some(target) => blocks.push(target.solve_matrix(&self.blocks[n].mul(e))?),
                None => blocks.push(RationalMatrix::zeros(0, e.cols())),
            }
        }
        Some(GradedOperator { shift: self.shift, blocks })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    /// Λ(θ): basis 1, θ.
    fn exterior() -> GradedAlgebra {
        let space = GradedVectorSpace::with_labels(vec![vec!["1".into()], vec!["theta".into()]]);
        GradedAlgebra::new(space, 0, HashMap::new(), None).unwrap()
    }

    #[test]
    fn unit_products_are_implied() {
        let a = exterior();
        assert!(a.check().is_ok());
        assert_eq!(a.mul(0, &[rat(2)], 1, &[rat(3)]), vec![rat(6)]);
        assert_eq!(a.find_label("theta"), Some(1));
    }

    #[test]
    fn broken_commutativity_is_caught() {
        // x in degree 1 with x·y = z, y·x = z (should be −z)
        let space = GradedVectorSpace::with_labels(vec![
            vec!["1".into()],
            vec!["x".into(), "y".into()],
            vec!["z".into()],
        ]);
        let mut p = HashMap::new();
        p.insert((1, 2), vec![(0, rat(1))]);
        p.insert((2, 1), vec![(0, rat(1))]);
        let a = GradedAlgebra::new(space, 0, p, None).unwrap();
        assert!(a.check().unwrap_err().contains("commutativity"));
    }

    #[test]
    fn operator_shapes_are_checked() {
        let dims = [1, 1];
        assert!(GradedOperator::from_blocks(&dims, 1, vec![RationalMatrix::zeros(1, 1), RationalMatrix::zeros(0, 1)]).is_ok());
        assert!(GradedOperator::from_blocks(&dims, 1, vec![RationalMatrix::zeros(1, 1), RationalMatrix::zeros(1, 1)]).is_err());
    }

    #[test]
    fn commutator_of_odd_operators_is_anticommutator() {
        let dims = [1, 1];
        let i = GradedOperator::from_blocks(&dims, -1, vec![RationalMatrix::zeros(0, 1), RationalMatrix::identity(1)]).unwrap();
        let d = GradedOperator::from_blocks(&dims, 1, vec![RationalMatrix::identity(1), RationalMatrix::zeros(0, 1)]).unwrap();
        assert_eq!(d.commutator_at(&i, 1), RationalMatrix::identity(1));
        assert_eq!(d.commutator_at(&i, 0), RationalMatrix::identity(1));
    }
}
