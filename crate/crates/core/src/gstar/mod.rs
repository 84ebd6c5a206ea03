//! g*-algebras: graded algebras with a differential `d`, contractions `i_X`
//! and Lie derivatives `L_X` for a Lie algebra, subject to the Cartan
//! relations.

pub mod algebra;
pub mod basic;
pub mod free;
pub mod lie;
pub mod tensor;
pub mod weil;

use num_traits::Zero;
use serde::Serialize;

pub use algebra::{GradedAlgebra, GradedOperator};
pub use basic::{basic_subcomplex, detect_type_c, relative_basic, BasicSubcomplex, TypeC};
pub use free::{FreeAlgebra, Generator};
pub use lie::LieAlgebraSpec;
pub use tensor::{tensor_gstar, TensorProduct};
pub use weil::{weil_algebra, weil_model_cohomology, WeilModelCohomology};

use crate::error::{AlgebraError, Result};
use crate::linalg::{Rational, RationalMatrix};
use algebra::{sign, target_degree};

/// A graded algebra with a g*-action: `d` of degree 1 and, for every basis
/// element `X_j` of the Lie algebra, `i[j]` of degree -1 and `l[j]` of
/// degree 0.
#[derive(Clone, Debug)]
pub struct GStarStructure {
    pub algebra: GradedAlgebra,
    pub lie: LieAlgebraSpec,
    pub d: GradedOperator,
    pub i: Vec<GradedOperator>,
    pub l: Vec<GradedOperator>,
}

impl GStarStructure {
    /// Checks that every operator fits the algebra's graded dimensions.
    pub fn new(
        algebra: GradedAlgebra,
        lie: LieAlgebraSpec,
        d: GradedOperator,
        i: Vec<GradedOperator>,
        l: Vec<GradedOperator>,
    ) -> Result<Self> {
        if i.len() != lie.dim() || l.len() != lie.dim() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{} contractions and {} Lie derivatives for a Lie algebra of dimension {}",
                i.len(),
                l.len(),
                lie.dim()
            )));
        }
        let dims = algebra.dims().to_vec();
        let check = |op: &GradedOperator, shift: i32, what: &str| -> Result<()> {
            if op.shift() != shift {
                return Err(AlgebraError::DimensionMismatch(format!("{what} has degree {}, expected {shift}", op.shift())));
            }
            GradedOperator::from_blocks(&dims, shift, op.blocks().to_vec()).map(|_| ())
        };
        check(&d, 1, "d")?;
        for op in &i {
            check(op, -1, "contraction")?;
        }
        for op in &l {
            check(op, 0, "Lie derivative")?;
        }
        Ok(GStarStructure { algebra, lie, d, i, l })
    }

    /// Trivial action: all `i_X` and `L_X` vanish.
    pub fn trivial_action(algebra: GradedAlgebra, d: GradedOperator, lie: LieAlgebraSpec) -> Result<Self> {
        let dims = algebra.dims().to_vec();
        let r = lie.dim();
        let i = (0..r).map(|_| GradedOperator::zero(&dims, -1)).collect();
        let l = (0..r).map(|_| GradedOperator::zero(&dims, 0)).collect();
        Self::new(algebra, lie, d, i, l)
    }

    pub fn top(&self) -> usize {
        self.algebra.top()
    }

    pub fn rank(&self) -> usize {
        self.lie.dim()
    }

    /// Whether every Lie derivative vanishes on the algebra.
    pub fn l_vanishes(&self) -> bool {
        self.l.iter().all(GradedOperator::is_zero)
    }

    /// Highest degree that cannot see the truncation (`top` if exact).
    pub fn stable_through(&self) -> usize {
        self.algebra.exact_through().unwrap_or(self.top())
    }

    /// The de Rham complex `(A, d)`.
    pub fn de_rham(&self) -> crate::complex::CochainComplex {
        let top = self.top();
        let diffs = (0..top).map(|n| self.d.block(n).clone()).collect();
        crate::complex::CochainComplex::from_parts(self.algebra.space().clone(), diffs)
    }

    /// Lie-derivative combination `Σ_k x_k L_{X_k}`.
    fn l_combination(&self, coeffs: &[Rational]) -> GradedOperator {
        let terms: Vec<(Rational, &GradedOperator)> = coeffs.iter().cloned().zip(self.l.iter()).collect();
        GradedOperator::linear_combination(&terms, self.algebra.dims(), 0)
    }

    fn i_combination(&self, coeffs: &[Rational]) -> GradedOperator {
        let terms: Vec<(Rational, &GradedOperator)> = coeffs.iter().cloned().zip(self.i.iter()).collect();
        GradedOperator::linear_combination(&terms, self.algebra.dims(), -1)
    }
}

/// Where an identity first fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub degree: usize,
    /// Basis label the failing identity was evaluated on.
    pub element: String,
    /// Second basis label for product identities.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub other: Option<String>,
    /// Lie-algebra generators involved (zero-based).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub results: Vec<AxiomResult>,
    /// Failure of the underlying algebra (unit, commutativity, associativity).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra_failure: Option<String>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.algebra_failure.is_none() && self.results.iter().all(|r| r.passed)
    }

    pub fn get(&self, name: &str) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.name == name)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.results.iter().filter(|r| !r.passed).map(|r| r.name).collect()
    }
}

pub const AXIOM_NAMES: [&str; 8] = [
    "d_squared_zero",
    "contractions_anticommute",
    "lie_derivatives_bracket",
    "lie_derivative_contraction_bracket",
    "cartan_formula",
    "d_derivation",
    "contraction_derivation",
    "lie_derivative_derivation",
];

fn column_witness(s: &GStarStructure, n: usize, m: &RationalMatrix, generators: Vec<usize>) -> Option<Witness> {
    m.first_nonzero_column().map(|c| Witness {
        degree: n,
        element: s.algebra.label(s.algebra.flat(n, c)).to_string(),
        other: None,
        generators,
    })
}

/// Check the five operator identities and the derivation property of every
/// operator on every basis element and pair.
///
/// On a truncated algebra only the complete degrees are examined, and
/// identities that would apply `d` at the last complete degree are skipped.
pub fn check_gstar_axioms(s: &GStarStructure) -> AxiomReport {
    let a = &s.algebra;
    let truncated = a.is_truncated();
    let top = a.reliable_top();
    let r = s.rank();
    let mut results = Vec::new();

    let d_limit = if truncated { top.saturating_sub(2) } else { top };
    let mut w = None;
    for n in 0..=d_limit {
        if let Some(x) = column_witness(s, n, &s.d.compose_at(&s.d, n), vec![]) {
            w = Some(x);
            break;
        }
    }
    results.push(AxiomResult { name: AXIOM_NAMES[0], passed: w.is_none(), witness: w });

    let first = |f: &dyn Fn(usize, usize, usize) -> Option<Witness>, limit: usize| -> Option<Witness> {
        for n in 0..=limit {
            for x in 0..r {
                for y in 0..r {
                    if let Some(w) = f(n, x, y) {
                        return Some(w);
                    }
                }
            }
        }
        None
    };

    let w = first(&|n, x, y| column_witness(s, n, &s.i[x].commutator_at(&s.i[y], n), vec![x, y]), top);
    results.push(AxiomResult { name: AXIOM_NAMES[1], passed: w.is_none(), witness: w });

    let w = first(
        &|n, x, y| {
            let lhs = s.l[x].commutator_at(&s.l[y], n);
            let rhs = s.l_combination(&s.lie.bracket(x, y));
            column_witness(s, n, &lhs.sub(rhs.block(n)), vec![x, y])
        },
        top,
    );
    results.push(AxiomResult { name: AXIOM_NAMES[2], passed: w.is_none(), witness: w });

    let w = first(
        &|n, x, y| {
            let lhs = s.l[x].commutator_at(&s.i[y], n);
            let rhs = s.i_combination(&s.lie.bracket(x, y));
            column_witness(s, n, &lhs.sub(rhs.block(n)), vec![x, y])
        },
        top,
    );
    results.push(AxiomResult { name: AXIOM_NAMES[3], passed: w.is_none(), witness: w });

    let cartan_limit = if truncated { top.saturating_sub(1) } else { top };
    let mut w = None;
    'outer: for n in 0..=cartan_limit {
        for x in 0..r {
            let rhs = s.d.commutator_at(&s.i[x], n);
            if let Some(found) = column_witness(s, n, &s.l[x].block(n).sub(&rhs), vec![x]) {
                w = Some(found);
                break 'outer;
            }
        }
    }
    results.push(AxiomResult { name: AXIOM_NAMES[4], passed: w.is_none(), witness: w });

    let w = derivation_witness(s, &s.d, vec![]);
    results.push(AxiomResult { name: AXIOM_NAMES[5], passed: w.is_none(), witness: w });
    let w = (0..r).find_map(|x| derivation_witness(s, &s.i[x], vec![x]));
    results.push(AxiomResult { name: AXIOM_NAMES[6], passed: w.is_none(), witness: w });
    let w = (0..r).find_map(|x| derivation_witness(s, &s.l[x], vec![x]));
    results.push(AxiomResult { name: AXIOM_NAMES[7], passed: w.is_none(), witness: w });

    AxiomReport { results, algebra_failure: a.check().err() }
}

/// First basis pair where `D(ab) ≠ D(a) b + (-1)^{|D||a|} a D(b)`.
fn derivation_witness(s: &GStarStructure, op: &GradedOperator, generators: Vec<usize>) -> Option<Witness> {
    let a = &s.algebra;
    let top = a.reliable_top();
    let shift = op.shift();
    for x in 0..a.size() {
        let dx = a.degree_of(x);
        let ex = a.basis_vector(x);
        for y in 0..a.size() {
            let dy = a.degree_of(y);
            let Some(t) = target_degree(dx + dy, shift) else { continue };
            if t > top || (a.is_truncated() && dx + dy > top) {
                continue;
            }
            let ey = a.basis_vector(y);
            let lhs = if dx + dy <= top { op.apply(dx + dy, &a.mul(dx, &ex, dy, &ey)) } else { vec![Rational::zero(); a.dim(t)] };
            let mut rhs = vec![Rational::zero(); a.dim(t)];
            if let Some(tx) = target_degree(dx, shift) {
                let ox = op.apply(dx, &ex);
                if !ox.is_empty() {
                    for (k, c) in a.mul(tx, &ox, dy, &ey).into_iter().enumerate() {
                        rhs[k] += c;
                    }
                }
            }
            if let Some(ty) = target_degree(dy, shift) {
                let oy = op.apply(dy, &ey);
                if !oy.is_empty() {
                    let sg = sign(op.is_odd() && dx % 2 == 1);
                    for (k, c) in a.mul(dx, &ex, ty, &oy).into_iter().enumerate() {
                        rhs[k] += c * &sg;
                    }
                }
            }
            if lhs != rhs {
                return Some(Witness {
                    degree: dx,
                    element: a.label(x).to_string(),
                    other: Some(a.label(y).to_string()),
                    generators,
                });
            }
        }
    }
    None
}

/// Convenience: fail unless every identity holds.
pub fn require_axioms(s: &GStarStructure) -> Result<()> {
    let report = check_gstar_axioms(s);
    if report.all_pass() {
        return Ok(());
    }
    let mut parts: Vec<String> = report.failures().iter().map(|f| f.to_string()).collect();
    if let Some(f) = report.algebra_failure {
        parts.push(f);
    }
    Err(AlgebraError::AxiomsFailed(parts.join(", ")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    pub(crate) fn exterior_free_action() -> GStarStructure {
        let f = FreeAlgebra::new(vec![Generator::new("theta", 1)], 1).unwrap();
        let d = f.derivation(1, &[vec![]]).unwrap();
        let i = f.derivation(-1, &[vec![rat(1)]]).unwrap();
        let l = f.derivation(0, &[vec![]]).unwrap();
        GStarStructure::new(f.into_algebra(), LieAlgebraSpec::abelian(1), d, vec![i], vec![l]).unwrap()
    }

    #[test]
    fn exterior_with_free_action_passes() {
        let report = check_gstar_axioms(&exterior_free_action());
        assert!(report.all_pass(), "{report:?}");
        assert_eq!(report.results.len(), 8);
    }

    #[test]
    fn nonzero_lie_derivative_breaks_cartan_formula() {
        let mut s = exterior_free_action();
        let dims = s.algebra.dims().to_vec();
        s.l[0] = GradedOperator::from_blocks(
            &dims,
            0,
            vec![RationalMatrix::zeros(1, 1), RationalMatrix::from_i64(1, 1, &[2])],
        )
        .unwrap();
        let report = check_gstar_axioms(&s);
        let cartan = report.get("cartan_formula").unwrap();
        assert!(!cartan.passed);
        assert_eq!(cartan.witness.as_ref().unwrap().element, "theta");
        assert_eq!(cartan.witness.as_ref().unwrap().degree, 1);
    }

    #[test]
    fn wrong_operator_count_is_a_dimension_error() {
        let s = exterior_free_action();
        let r = GStarStructure::new(s.algebra.clone(), LieAlgebraSpec::abelian(2), s.d.clone(), s.i.clone(), s.l.clone());
        assert!(matches!(r, Err(AlgebraError::DimensionMismatch(_))));
    }
}
