//! Cartan model `(S(𝔤*) ⊗ A)^𝔤` with `d_𝔤 ω = dω + Σ_i u_i i_{X_i} ω`,
//! its cohomology, and the `S(𝔤*)`-module structure on that cohomology.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::complex::{cohomology, CochainComplex, Cohomology, GradedVectorSpace};
use crate::error::{AlgebraError, Result};
use crate::gstar::{detect_type_c, relative_basic, require_axioms, GStarStructure};
use crate::linalg::{zero_vec, EchelonBasis, Rational, RationalMatrix};
use crate::module::{monomials, Exponent, FreeDegree, GradedModulePresentation, Relation, SPoly};

/// One total degree of the Cartan complex.
#[derive(Clone, Debug)]
pub struct CartanSlice {
    pub degree: usize,
    /// `(p, u^α, a)` with `a` a flat algebra index of degree `n - 2p`,
    /// ordered by `p`, then monomial, then `a`.
    pub basis: Vec<(usize, Exponent, usize)>,
    /// `(p, dimension)` of the invariant part, for `p = 0..=n/2`.
    pub bigraded_dims: Vec<(usize, usize)>,
    /// Columns span the invariants; `None` when everything is invariant.
    pub invariants: Option<RationalMatrix>,
    index: HashMap<(Exponent, usize), usize>,
}

impl CartanSlice {
    pub fn full_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn dim(&self) -> usize {
        self.invariants.as_ref().map_or(self.basis.len(), RationalMatrix::cols)
    }

    pub fn position(&self, e: &[usize], a: usize) -> Option<usize> {
        self.index.get(&(e.to_vec(), a)).copied()
    }

    /// Invariant coordinates to the full monomial basis.
    pub fn to_full(&self, v: &[Rational]) -> Vec<Rational> {
        match &self.invariants {
            Some(m) => m.mul_vec(v),
            None => v.to_vec(),
        }
    }

    pub fn from_full(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        match &self.invariants {
            Some(m) => m.solve(v),
            None => Some(v.to_vec()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CartanComplex {
    pub rank: usize,
    /// Slices `0..=N+1`.
    pub slices: Vec<CartanSlice>,
    /// In invariant coordinates.
    pub complex: CochainComplex,
    pub max_degree: usize,
    pub stable_through: usize,
}

impl CartanComplex {
    pub fn dims(&self) -> Vec<usize> {
        self.slices.iter().map(CartanSlice::dim).collect()
    }
}

fn build_slice(s: &GStarStructure, n: usize) -> CartanSlice {
    let a = &s.algebra;
    let r = s.rank();
    let mut basis = Vec::new();
    for p in 0..=n / 2 {
        let q = n - 2 * p;
        if q > a.top() {
            continue;
        }
        for e in monomials(r, p) {
            for k in 0..a.dim(q) {
                basis.push((p, e.clone(), a.flat(q, k)));
            }
        }
    }
    let index = basis.iter().enumerate().map(|(i, (_, e, x))| ((e.clone(), *x), i)).collect();
    CartanSlice { degree: n, basis, bigraded_dims: Vec::new(), invariants: None, index }
}

/// Extended Lie derivative `L_b` on the full slice: coadjoint on the
/// polynomial factor, `L_b` on the algebra.
fn extended_lie_derivative(s: &GStarStructure, slice: &CartanSlice, b: usize) -> RationalMatrix {
    let a = &s.algebra;
    let r = s.rank();
    let dim = slice.full_dim();
    let mut m = RationalMatrix::zeros(dim, dim);
    for (col, (_, e, x)) in slice.basis.iter().enumerate() {
        let q = a.degree_of(*x);
        let img = s.l[b].apply(q, &a.basis_vector(*x));
        for (k, c) in img.iter().enumerate() {
            if !c.is_zero() {
                m.add_to(slice.index[&(e.clone(), a.flat(q, k))], col, c);
            }
        }
        // L_b u_a = -Σ_c c^a_{bc} u_c
        for ai in 0..r {
            if e[ai] == 0 {
                continue;
            }
            for ci in 0..r {
                let k = s.lie.c(ai, b, ci);
                if k.is_zero() {
                    continue;
                }
                let mut e2 = e.clone();
                e2[ai] -= 1;
                e2[ci] += 1;
                let coeff = -k.clone() * Rational::from_integer(e[ai].into());
                m.add_to(slice.index[&(e2, *x)], col, &coeff);
            }
        }
    }
    m
}

fn attach_invariants(s: &GStarStructure, slice: &mut CartanSlice, trivial: bool) {
    let n = slice.degree;
    let blocks: Vec<(usize, usize, usize)> = (0..=n / 2)
        .map(|p| {
            let start = slice.basis.iter().position(|(pp, _, _)| *pp == p).unwrap_or(slice.basis.len());
            let len = slice.basis.iter().filter(|(pp, _, _)| *pp == p).count();
            (p, start, len)
        })
        .collect();
    if trivial {
        slice.bigraded_dims = blocks.iter().map(|&(p, _, len)| (p, len)).collect();
        return;
    }
    let ops: Vec<RationalMatrix> = (0..s.rank()).map(|b| extended_lie_derivative(s, slice, b)).collect();
    let full = slice.full_dim();
    let mut columns = Vec::new();
    let mut bigraded = Vec::new();
    for &(p, start, len) in &blocks {
        let idx: Vec<usize> = (start..start + len).collect();
        let mut stacked = RationalMatrix::zeros(0, len);
        for op in &ops {
            stacked = stacked.vstack(&op.select_cols(&idx));
        }
        let kernel = stacked.kernel();
        bigraded.push((p, kernel.len()));
        for v in kernel {
            let mut w = zero_vec(full);
            for (k, c) in v.into_iter().enumerate() {
                w[start + k] = c;
            }
            columns.push(w);
        }
    }
    slice.bigraded_dims = bigraded;
    slice.invariants = Some(RationalMatrix::from_columns(full, &columns));
}

/// `d_𝔤` between full slices `n -> n+1`.
fn full_differential(s: &GStarStructure, src: &CartanSlice, dst: &CartanSlice) -> RationalMatrix {
    let a = &s.algebra;
    let mut m = RationalMatrix::zeros(dst.full_dim(), src.full_dim());
    for (col, (_, e, x)) in src.basis.iter().enumerate() {
        let q = a.degree_of(*x);
        let xv = a.basis_vector(*x);
        if q < a.top() {
            for (k, c) in s.d.apply(q, &xv).iter().enumerate() {
                if !c.is_zero() {
                    m.add_to(dst.index[&(e.clone(), a.flat(q + 1, k))], col, c);
                }
            }
        }
        if q > 0 {
            for (i, op) in s.i.iter().enumerate() {
                let mut e2 = e.clone();
                e2[i] += 1;
                for (k, c) in op.apply(q, &xv).iter().enumerate() {
                    if !c.is_zero() {
                        m.add_to(dst.index[&(e2.clone(), a.flat(q - 1, k))], col, c);
                    }
                }
            }
        }
    }
    m
}

/// Slices `0..=N+1` and `d_𝔤` in degrees `0..=N`. Invariants are computed
/// only when the Lie algebra is non-abelian or some `L_X` is nonzero.
pub fn cartan_complex(s: &GStarStructure, max_degree: usize) -> Result<CartanComplex> {
    require_axioms(s)?;
    let trivial = s.lie.is_abelian() && s.l_vanishes();
    let mut slices: Vec<CartanSlice> = (0..=max_degree + 1).map(|n| build_slice(s, n)).collect();
    for slice in slices.iter_mut() {
        attach_invariants(s, slice, trivial);
    }
    let mut diffs = Vec::with_capacity(max_degree + 1);
    for n in 0..=max_degree {
        let full = full_differential(s, &slices[n], &slices[n + 1]);
        let d = match (&slices[n].invariants, &slices[n + 1].invariants) {
            (Some(src), Some(dst)) => dst
                .solve_matrix(&full.mul(src))
                .ok_or_else(|| AlgebraError::AxiomsFailed(format!("d_g leaves the invariants in degree {n}")))?,
            _ => full,
        };
        diffs.push(d);
    }
    let stable_through = s.stable_through_for(max_degree);
    for n in 0..max_degree {
        if n < stable_through && !diffs[n + 1].mul(&diffs[n]).is_zero() {
            return Err(AlgebraError::AxiomsFailed(format!("d_g squared is nonzero in degree {n}")));
        }
    }
    let space = GradedVectorSpace::new(slices.iter().map(CartanSlice::dim).collect());
    let complex = CochainComplex::from_parts(space, diffs);
    Ok(CartanComplex { rank: s.rank(), slices, complex, max_degree, stable_through })
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivariantCohomologyResult {
    pub rank: usize,
    /// Degrees `0..=stable_through`.
    pub dims: Vec<usize>,
    pub stable_through: usize,
    /// Cocycles in full slice coordinates.
    #[serde(skip)]
    pub representatives: Vec<Vec<Vec<Rational>>>,
    /// `u_action[i][n] : H^n -> H^{n+2}` for `n + 2 <= stable_through`;
    /// only for abelian Lie algebras.
    #[serde(skip)]
    pub u_action: Option<Vec<Vec<RationalMatrix>>>,
    /// Minimal generators `(degree, coordinates in H^degree)`.
    #[serde(skip)]
    pub generators: Vec<(usize, Vec<Rational>)>,
    pub generator_degrees: Vec<usize>,
    /// Rank of the restriction `H_𝔤^n -> H^n(A)`.
    pub restriction_ranks: Vec<usize>,
}

impl EquivariantCohomologyResult {
    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn u_matrix(&self, i: usize, n: usize) -> Option<&RationalMatrix> {
        self.u_action.as_ref().and_then(|u| u.get(i)).and_then(|m| m.get(n))
    }
}

fn u_shift(src: &CartanSlice, dst: &CartanSlice, i: usize, v_full: &[Rational]) -> Vec<Rational> {
    let mut out = zero_vec(dst.full_dim());
    for (k, c) in v_full.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (_, e, x) = &src.basis[k];
        let mut e2 = e.clone();
        e2[i] += 1;
        out[dst.position(&e2, *x).expect("shifted monomial lies in the slice")] += c;
    }
    out
}

/// Greedy minimal generators: per degree, a basis of `H^n` modulo
/// `Σ_i u_i H^{n-2}`, taken from the standard basis in order.
fn minimal_generators(dims: &[usize], u: &[Vec<RationalMatrix>]) -> Vec<(usize, Vec<Rational>)> {
    let mut gens = Vec::new();
    for (n, &dim) in dims.iter().enumerate() {
        let mut span = EchelonBasis::new(dim);
        if n >= 2 {
            for op in u {
                for col in op[n - 2].columns() {
                    span.insert(&col);
                }
            }
        }
        for k in 0..dim {
            let mut e = zero_vec(dim);
            e[k] = Rational::one();
            if span.insert(&e) {
                gens.push((n, e));
            }
        }
    }
    gens
}

fn restriction_rank(s: &GStarStructure, slice: &CartanSlice, reps: &[Vec<Rational>], h_a: &Cohomology) -> usize {
    let a = &s.algebra;
    let n = slice.degree;
    if n > a.top() {
        return 0;
    }
    let Some(group) = h_a.group(n) else { return 0 };
    let classes: Vec<Vec<Rational>> = reps
        .iter()
        .map(|v| {
            let mut x = zero_vec(a.dim(n));
            for (k, c) in v.iter().enumerate() {
                let (p, _, flat) = &slice.basis[k];
                if *p == 0 {
                    x[a.local(*flat)] += c;
                }
            }
            group.class_of(&x).expect("polynomial-degree-zero part of a cocycle is closed")
        })
        .collect();
    crate::linalg::rank_of(group.dim(), &classes)
}

pub fn equivariant_cohomology(s: &GStarStructure, max_degree: usize) -> Result<EquivariantCohomologyResult> {
    let c = cartan_complex(s, max_degree)?;
    let h = cohomology(&c.complex)?;
    let stable = c.stable_through;
    let dims: Vec<usize> = h.dims()[..=stable].to_vec();
    let representatives: Vec<Vec<Vec<Rational>>> = (0..=stable)
        .map(|n| {
            let g = h.group(n).expect("degree inside the complex");
            g.representatives.iter().map(|v| c.slices[n].to_full(v)).collect()
        })
        .collect();
    let u_action = if s.lie.is_abelian() {
        let mats = (0..s.rank())
            .map(|i| {
                (0..=stable)
                    .filter(|&n| n + 2 <= stable)
                    .map(|n| {
                        let (src, dst) = (&c.slices[n], &c.slices[n + 2]);
                        let target = h.group(n + 2).expect("degree inside the complex");
                        let cols: Vec<Vec<Rational>> = representatives[n]
                            .iter()
                            .map(|rep| {
                                let full = u_shift(src, dst, i, rep);
                                let inv = dst.from_full(&full).expect("u_i preserves invariants");
                                target.class_of(&inv).expect("u_i maps cocycles to cocycles")
                            })
                            .collect();
                        RationalMatrix::from_columns(dims[n + 2], &cols)
                    })
                    .collect()
            })
            .collect::<Vec<Vec<RationalMatrix>>>();
        Some(mats)
    } else {
        None
    };
    let generators = match &u_action {
        Some(u) => minimal_generators(&dims, u),
        None => Vec::new(),
    };
    let h_a = cohomology(&s.de_rham())?;
    let restriction_ranks = (0..=stable).map(|n| restriction_rank(s, &c.slices[n], &representatives[n], &h_a)).collect();
    Ok(EquivariantCohomologyResult {
        rank: s.rank(),
        generator_degrees: generators.iter().map(|(d, _)| *d).collect(),
        dims,
        stable_through: stable,
        representatives,
        u_action,
        generators,
        restriction_ranks,
    })
}

/// Generators and relations of `H_𝔤` over `S(𝔤*)`, valid through the
/// stable window. Relations are harvested in every stable degree.
pub fn module_presentation(e: &EquivariantCohomologyResult, dim_a: usize) -> Result<GradedModulePresentation> {
    let u = e
        .u_action
        .as_ref()
        .ok_or_else(|| AlgebraError::Refused("module structure is only computed for abelian Lie algebras".into()))?;
    if dim_a != e.rank {
        return Err(AlgebraError::DimensionMismatch(format!(
            "module over {dim_a} variables requested for a rank-{} action",
            e.rank
        )));
    }
    let degrees: Vec<usize> = e.generators.iter().map(|(d, _)| *d).collect();
    let window = e.stable_through;
    let mut images: HashMap<(usize, Exponent), Vec<Rational>> = HashMap::new();
    let mut relations: Vec<Relation> = Vec::new();
    for n in 0..=window {
        let free = FreeDegree::new(dim_a, &degrees, n);
        let cols: Vec<Vec<Rational>> = free
            .basis
            .iter()
            .map(|(j, beta)| image_of(&mut images, e, u, *j, beta))
            .collect();
        let phi = RationalMatrix::from_columns(e.dims[n], &cols);
        let mut lower = EchelonBasis::new(free.dim());
        for rel in &relations {
            if (n - rel.degree) % 2 == 0 {
                for shift in monomials(dim_a, (n - rel.degree) / 2) {
                    lower.insert(&free.embed(&rel.components, &shift));
                }
            }
        }
        for v in phi.kernel() {
            if lower.insert(&v) {
                let mut components: Vec<SPoly> = (0..degrees.len()).map(|_| SPoly::zero()).collect();
                for (k, c) in v.iter().enumerate() {
                    if !c.is_zero() {
                        let (j, beta) = &free.basis[k];
                        components[*j].add_term(beta.clone(), c);
                    }
                }
                relations.push(Relation { degree: n, components });
            }
        }
    }
    GradedModulePresentation::new(dim_a, degrees, relations, window)
}

/// `u^β g_j` in cohomology coordinates.
fn image_of(
    memo: &mut HashMap<(usize, Exponent), Vec<Rational>>,
    e: &EquivariantCohomologyResult,
    u: &[Vec<RationalMatrix>],
    j: usize,
    beta: &[usize],
) -> Vec<Rational> {
    if let Some(v) = memo.get(&(j, beta.to_vec())) {
        return v.clone();
    }
    let v = match beta.iter().position(|&b| b > 0) {
        None => e.generators[j].1.clone(),
        Some(k) => {
            let mut lower = beta.to_vec();
            lower[k] -= 1;
            let prev = image_of(memo, e, u, j, &lower);
            let deg = e.generators[j].0 + 2 * lower.iter().sum::<usize>();
            u[k][deg].mul_vec(&prev)
        }
    };
    memo.insert((j, beta.to_vec()), v.clone());
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutingReductionReport {
    /// `H_{𝔥×𝔨}(A)`.
    pub full: Vec<usize>,
    /// `H_𝔨(A_{bas 𝔥})`.
    pub reduced: Vec<usize>,
    pub stable_through: usize,
    pub agree: bool,
}

/// Compares `H_{𝔥×𝔨}(A)` with `H_𝔨(A_{bas 𝔥})`. Requires type (C) for the
/// generators `h` (with the given connection elements), `𝔥` and `𝔨`
/// commuting, and `L` vanishing for the remaining generators.
pub fn commuting_reduction_check(
    s: &GStarStructure,
    h: &[usize],
    connection: &[Vec<Rational>],
    max_degree: usize,
) -> Result<CommutingReductionReport> {
    require_axioms(s)?;
    let r = s.rank();
    if h.iter().any(|&x| x >= r) {
        return Err(AlgebraError::Invalid("subalgebra index out of range".into()));
    }
    let k: Vec<usize> = (0..r).filter(|x| !h.contains(x)).collect();
    for &x in h {
        for &y in &k {
            if s.lie.bracket(x, y).iter().any(|c| !c.is_zero()) {
                return Err(AlgebraError::Refused("the two factors do not commute".into()));
            }
        }
    }
    if k.iter().any(|&y| !s.l[y].is_zero()) {
        return Err(AlgebraError::Refused("the second factor must act with vanishing Lie derivatives".into()));
    }
    let h_part = GStarStructure::new(
        s.algebra.clone(),
        s.lie.restrict(h)?,
        s.d.clone(),
        h.iter().map(|&x| s.i[x].clone()).collect(),
        h.iter().map(|&x| s.l[x].clone()).collect(),
    )?;
    if !detect_type_c(&h_part, connection)?.type_c {
        return Err(AlgebraError::Refused("the algebra is not of type (C) for the first factor".into()));
    }
    let full = equivariant_cohomology(s, max_degree)?;
    let reduced = equivariant_cohomology(&relative_basic(s, h)?, max_degree)?;
    let stable = full.stable_through.min(reduced.stable_through);
    let (a, b) = (full.dims[..=stable].to_vec(), reduced.dims[..=stable].to_vec());
    Ok(CommutingReductionReport { agree: a == b, full: a, reduced: b, stable_through: stable })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::gstar::{basic_subcomplex, weil_model_cohomology};
    use crate::module::{hilbert, GradedModule};

    #[test]
    fn point_gives_polynomial_ring() {
        let c = cartan_complex(&fixtures::point(1), 6).unwrap();
        assert_eq!(c.dims(), vec![1, 0, 1, 0, 1, 0, 1, 0]);
    }

    #[test]
    fn exterior_free_slices_and_differential() {
        let c = cartan_complex(&fixtures::exterior_free(), 6).unwrap();
        assert_eq!(c.dims(), vec![1; 8]);
        // d_g(u^k θ) = u^{k+1}
        for n in (1..=5).step_by(2) {
            assert_eq!(c.complex.differential(n).get(0, 0), &crate::linalg::rat(1));
        }
        let e = equivariant_cohomology(&fixtures::exterior_free(), 8).unwrap();
        assert_eq!(e.dims, vec![1, 0, 0, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn hopf_slices_and_cohomology() {
        let s = fixtures::hopf_basic();
        let c = cartan_complex(&s, 8).unwrap();
        assert_eq!(&c.dims()[..8], &[1, 1, 2, 2, 2, 2, 2, 2]);
        let e = equivariant_cohomology(&s, 8).unwrap();
        assert_eq!(e.dims, vec![1, 0, 1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(e.generator_degrees, vec![0, 2]);
        assert!(e.u_action.as_ref().unwrap()[0].iter().all(RationalMatrix::is_zero));
    }

    #[test]
    fn trivial_action_is_free_over_polynomials() {
        let e = equivariant_cohomology(&fixtures::trivial_1011(), 10).unwrap();
        let expected = crate::series::RationalSeries::new(crate::series::Polynomial::new(vec![1, 0, 1, 1]), 1).expand(10);
        let dims: Vec<i64> = e.dims.iter().map(|&d| d as i64).collect();
        assert_eq!(dims, expected);
        assert_eq!(e.generator_degrees, vec![0, 2, 3]);
        assert_eq!(e.restriction_ranks[..4], [1, 0, 1, 1]);
    }

    #[test]
    fn presentations_of_fixture_modules() {
        let p = module_presentation(&equivariant_cohomology(&fixtures::point(1), 8).unwrap(), 1).unwrap();
        assert_eq!(p.generator_degrees(), &[0]);
        assert!(p.relations().is_empty());

        let p = module_presentation(&equivariant_cohomology(&fixtures::sphere2_trivial(), 8).unwrap(), 1).unwrap();
        assert_eq!(p.generator_degrees(), &[0, 2]);
        assert!(p.relations().is_empty());

        let e = equivariant_cohomology(&fixtures::hopf_basic(), 8).unwrap();
        let p = module_presentation(&e, 1).unwrap();
        assert_eq!(p.generator_degrees(), &[0, 2]);
        let rel: Vec<usize> = p.relations().iter().map(|r| r.degree).collect();
        assert_eq!(rel, vec![2, 4]);
        let h = hilbert(&GradedModule::new(&p));
        assert_eq!(h.coefficients, e.dims);
    }

    #[test]
    fn cartan_matches_weil_and_basic() {
        for f in fixtures::gstar_fixtures() {
            let e = equivariant_cohomology(&f.structure, 6).unwrap();
            let w = weil_model_cohomology(&f.structure, 6).unwrap();
            let n = e.stable_through.min(w.stable_through);
            assert_eq!(e.dims[..=n], w.dims[..=n], "{}", f.name);
            if f.connection.is_some() {
                let b = cohomology(&basic_subcomplex(&f.structure).unwrap().complex).unwrap().dims();
                for k in 0..=n {
                    assert_eq!(e.dims[k], b.get(k).copied().unwrap_or(0), "{} degree {k}", f.name);
                }
            }
        }
    }

    #[test]
    fn nonabelian_weil_is_contractible_in_cartan_model() {
        let w = crate::gstar::weil_algebra(&crate::gstar::LieAlgebraSpec::so3(), 5);
        let e = equivariant_cohomology(&w, 3).unwrap();
        assert_eq!(e.dims, vec![1, 0, 0, 0][..=e.stable_through].to_vec());
        assert!(e.u_action.is_none());
    }

    #[test]
    fn commuting_reduction_on_hopf_times_line() {
        let h = fixtures::hopf_basic();
        let line = crate::gstar::tensor::ground_field(&crate::gstar::LieAlgebraSpec::abelian(1));
        let s = product_action(&h, &line);
        let r = commuting_reduction_check(&s, &[0], &[vec![crate::linalg::rat(1)]], 8).unwrap();
        assert!(r.agree, "{r:?}");
        assert_eq!(r.full, vec![1, 0, 2, 0, 2, 0, 2, 0, 2]);
    }

    #[test]
    fn commuting_reduction_refuses_without_connection() {
        let s = product_action(&fixtures::sphere2_trivial(), &fixtures::point(1));
        let err = commuting_reduction_check(&s, &[0], &[vec![]], 4).unwrap_err();
        assert!(matches!(err, AlgebraError::Refused(_) | AlgebraError::DimensionMismatch(_)));
    }

    /// `A` with a rank-one action extended by a second generator acting trivially.
    fn product_action(a: &GStarStructure, _line: &GStarStructure) -> GStarStructure {
        let lie = a.lie.product(&crate::gstar::LieAlgebraSpec::abelian(1));
        let dims = a.algebra.dims().to_vec();
        let mut i = a.i.clone();
        i.push(crate::gstar::GradedOperator::zero(&dims, -1));
        let mut l = a.l.clone();
        l.push(crate::gstar::GradedOperator::zero(&dims, 0));
        GStarStructure::new(a.algebra.clone(), lie, a.d.clone(), i, l).unwrap()
    }
}
