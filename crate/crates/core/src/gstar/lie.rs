use num_traits::Zero;

use crate::error::{AlgebraError, Result};
use crate::linalg::{is_zero_vec, rat, zero_vec, Rational};

/// Finite-dimensional Lie algebra over ℚ in a fixed basis `X_1..X_r`, given
/// by structure constants `[X_i, X_j] = Σ_k c^k_{ij} X_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraSpec {
    dim: usize,
    // c[(k * dim + i) * dim + j]
    constants: Vec<Rational>,
    abelian: bool,
}

impl LieAlgebraSpec {
    pub fn abelian(dim: usize) -> Self {
        LieAlgebraSpec { dim, constants: zero_vec(dim * dim * dim), abelian: true }
    }

    /// From sparse entries `(i, j, k, c^k_{ij})`. Only one of each
    /// antisymmetric pair needs to be listed; if both are, they must agree.
    pub fn from_brackets(dim: usize, entries: &[(usize, usize, usize, Rational)]) -> Result<Self> {
        let mut constants = zero_vec(dim * dim * dim);
        let mut seen = vec![false; dim * dim * dim];
        let idx = |k: usize, i: usize, j: usize| (k * dim + i) * dim + j;
        for (i, j, k, c) in entries {
            let (i, j, k) = (*i, *j, *k);
            if i >= dim || j >= dim || k >= dim {
                return Err(AlgebraError::InvalidLie(format!("bracket index out of range for dimension {dim}")));
            }
            for (a, b, v) in [(i, j, c.clone()), (j, i, -c.clone())] {
                let at = idx(k, a, b);
                if seen[at] && constants[at] != v {
                    return Err(AlgebraError::InvalidLie(format!(
                        "bracket [X{}, X{}] is not antisymmetric",
                        i + 1,
                        j + 1
                    )));
                }
                seen[at] = true;
                constants[at] = v;
            }
        }
        Self::from_constants(dim, constants)
    }

    /// From the dense table `c[(k * dim + i) * dim + j] = c^k_{ij}`.
    pub fn from_constants(dim: usize, constants: Vec<Rational>) -> Result<Self> {
        if constants.len() != dim * dim * dim {
            return Err(AlgebraError::InvalidLie("structure constant table has the wrong size".into()));
        }
        let abelian = is_zero_vec(&constants);
        let lie = LieAlgebraSpec { dim, constants, abelian };
        lie.validate()?;
        Ok(lie)
    }

    /// `so(3)`: `[X1, X2] = X3` and cyclic.
    pub fn so3() -> Self {
        Self::from_brackets(3, &[(0, 1, 2, rat(1)), (1, 2, 0, rat(1)), (2, 0, 1, rat(1))]).expect("so(3) is a Lie algebra")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn c(&self, k: usize, i: usize, j: usize) -> &Rational {
        &self.constants[(k * self.dim + i) * self.dim + j]
    }

    pub fn constants(&self) -> &[Rational] {
        &self.constants
    }

    /// Coordinates of `[X_i, X_j]`.
    pub fn bracket(&self, i: usize, j: usize) -> Vec<Rational> {
        (0..self.dim).map(|k| self.c(k, i, j).clone()).collect()
    }

    fn bracket_vec(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = zero_vec(self.dim);
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let s = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    *o += &s * self.c(k, i, j);
                }
            }
        }
        out
    }

    /// Antisymmetry and the Jacobi identity on basis triples.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if *self.c(k, i, j) != -self.c(k, j, i).clone() {
                        return Err(AlgebraError::InvalidLie(format!(
                            "bracket [X{}, X{}] is not antisymmetric",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        let e = |i: usize| {
            let mut v = zero_vec(n);
            v[i] = rat(1);
            v
        };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let a = self.bracket_vec(&e(i), &self.bracket(j, k));
                    let b = self.bracket_vec(&e(j), &self.bracket(k, i));
                    let c = self.bracket_vec(&e(k), &self.bracket(i, j));
                    let sum: Vec<Rational> = (0..n).map(|t| &a[t] + &b[t] + &c[t]).collect();
                    if !is_zero_vec(&sum) {
                        return Err(AlgebraError::InvalidLie(format!(
                            "Jacobi identity fails on X{}, X{}, X{}",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Direct product `self × other`; the basis of `other` follows.
    pub fn product(&self, other: &LieAlgebraSpec) -> LieAlgebraSpec {
        let n = self.dim + other.dim;
        let mut entries = Vec::new();
        for (lie, off) in [(self, 0), (other, self.dim)] {
            for i in 0..lie.dim {
                for j in 0..lie.dim {
                    for k in 0..lie.dim {
                        let c = lie.c(k, i, j);
                        if !c.is_zero() {
                            entries.push((i + off, j + off, k + off, c.clone()));
                        }
                    }
                }
            }
        }
        Self::from_brackets(n, &entries).expect("product of Lie algebras")
    }

    /// Sub-algebra spanned by the basis vectors `indices`, if it is closed
    /// under the bracket.
    pub fn restrict(&self, indices: &[usize]) -> Result<LieAlgebraSpec> {
        let mut entries = Vec::new();
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                for k in 0..self.dim {
                    let c = self.c(k, i, j);
                    if c.is_zero() {
                        continue;
                    }
                    let Some(pos) = indices.iter().position(|&x| x == k) else {
                        return Err(AlgebraError::InvalidLie("selected generators do not span a subalgebra".into()));
                    };
                    entries.push((a, b, pos, c.clone()));
                }
            }
        }
        Self::from_brackets(indices.len(), &entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn so3_satisfies_jacobi() {
        let g = LieAlgebraSpec::so3();
        assert!(!g.is_abelian());
        assert_eq!(g.bracket(1, 0), vec![rat(0), rat(0), rat(-1)]);
    }

    #[test]
    fn jacobi_failure_is_reported() {
        // [X1,X2]=X3, [X1,X3]=X3, [X2,X3]=X1: the Jacobi sum is -X1
        let r = LieAlgebraSpec::from_brackets(3, &[(0, 1, 2, rat(1)), (0, 2, 2, rat(1)), (1, 2, 0, rat(1))]);
        assert!(matches!(r, Err(AlgebraError::InvalidLie(_))));
    }

    #[test]
    fn inconsistent_antisymmetry_is_rejected() {
        let r = LieAlgebraSpec::from_brackets(2, &[(0, 1, 0, rat(1)), (1, 0, 0, rat(1))]);
        assert!(r.is_err());
    }

    #[test]
    fn product_and_restriction() {
        let g = LieAlgebraSpec::so3().product(&LieAlgebraSpec::abelian(1));
        assert_eq!(g.dim(), 4);
        assert!(g.restrict(&[3]).unwrap().is_abelian());
        assert!(g.restrict(&[0, 1]).is_err());
        assert_eq!(g.restrict(&[0, 1, 2]).unwrap(), LieAlgebraSpec::so3());
    }
}
