//! Graded vector spaces, cochain complexes, their cohomology, and the long
//! exact sequence of a short exact sequence of complexes.

use num_traits::One;
use serde::Serialize;

use crate::error::AlgebraError;
use crate::linalg::{is_zero_vec, EchelonBasis, Rational, RationalMatrix};

/// Finite-dimensional graded vector space concentrated in `[0, top]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedVectorSpace {
    dims: Vec<usize>,
    labels: Vec<Vec<String>>,
}

impl GradedVectorSpace {
    /// Space with generated labels `e{degree}_{index}`.
    pub fn new(dims: Vec<usize>) -> Self {
        let labels = dims
            .iter()
            .enumerate()
            .map(|(n, &d)| (0..d).map(|i| format!("e{n}_{i}")).collect())
            .collect();
        GradedVectorSpace { dims, labels }
    }

    pub fn with_labels(labels: Vec<Vec<String>>) -> Self {
        GradedVectorSpace { dims: labels.iter().map(Vec::len).collect(), labels }
    }

    /// Top degree of the window; the space is zero above it.
    pub fn top(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.dims.get(degree).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn labels(&self, degree: usize) -> &[String] {
        self.labels.get(degree).map_or(&[], Vec::as_slice)
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.dims)
    }
}

pub fn alternating_sum(dims: &[usize]) -> i64 {
    dims.iter()
        .enumerate()
        .map(|(n, &d)| if n % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum()
}

/// Cochain complex on a graded space. `differentials[n]` is `d_n : C^n -> C^{n+1}`
/// for `n < top`; the differential leaving the top degree is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    space: GradedVectorSpace,
    differentials: Vec<RationalMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ComplexReport {
    Ok,
    /// `d_{n+1} d_n` is nonzero on basis vector `witness` of degree `degree`.
    Failure { degree: usize, witness: usize },
}

impl CochainComplex {
    /// Assemble a complex without checking it; see [`verify_complex`].
    pub fn from_parts(space: GradedVectorSpace, differentials: Vec<RationalMatrix>) -> Self {
        CochainComplex { space, differentials }
    }

    /// Assemble and verify.
    pub fn new(space: GradedVectorSpace, differentials: Vec<RationalMatrix>) -> Result<Self, AlgebraError> {
        let c = Self::from_parts(space, differentials);
        match verify_complex(&c)? {
            ComplexReport::Ok => Ok(c),
            ComplexReport::Failure { degree, witness } => Err(AlgebraError::NotAComplex { degree, witness }),
        }
    }

    /// Complex with all differentials zero.
    pub fn zero_differentials(space: GradedVectorSpace) -> Self {
        let differentials = (0..space.top()).map(|n| RationalMatrix::zeros(space.dim(n + 1), space.dim(n))).collect();
        CochainComplex { space, differentials }
    }

    pub fn space(&self) -> &GradedVectorSpace {
        &self.space
    }

    pub fn top(&self) -> usize {
        self.space.top()
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.space.dim(degree)
    }

    /// `d_n`, including the zero map out of the top degree.
    pub fn differential(&self, n: usize) -> RationalMatrix {
        match self.differentials.get(n) {
            Some(d) => d.clone(),
            None => RationalMatrix::zeros(self.dim(n + 1), self.dim(n)),
        }
    }

    pub fn differentials(&self) -> &[RationalMatrix] {
        &self.differentials
    }
}

/// Check shapes against the graded dimensions and `d_{n+1} d_n = 0`.
pub fn verify_complex(c: &CochainComplex) -> Result<ComplexReport, AlgebraError> {
    let top = c.top();
    if c.differentials.len() > top {
        return Err(AlgebraError::DimensionMismatch(format!(
            "{} differentials given for a window of top degree {top}",
            c.differentials.len()
        )));
    }
    for (n, d) in c.differentials.iter().enumerate() {
        if d.rows() != c.dim(n + 1) || d.cols() != c.dim(n) {
            return Err(AlgebraError::DimensionMismatch(format!(
                "d_{n} is {}x{}, expected {}x{}",
                d.rows(),
                d.cols(),
                c.dim(n + 1),
                c.dim(n)
            )));
        }
    }
    for n in 0..c.differentials.len() {
        let composite = c.differential(n + 1).mul(&c.differential(n));
        if let Some(witness) = composite.first_nonzero_column() {
            return Ok(ComplexReport::Failure { degree: n, witness });
        }
    }
    Ok(ComplexReport::Ok)
}

/// Cohomology in one degree with a fixed basis of representatives.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    pub degree: usize,
    pub cocycle_dim: usize,
    pub coboundary_dim: usize,
    /// Cocycles whose classes form a basis of `H^n`.
    pub representatives: Vec<Vec<Rational>>,
    classifier: EchelonBasis,
    boundary_count: usize,
}

impl CohomologyGroup {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Coordinates of the class of the cocycle `v` in the representative
    /// basis; `None` if `v` is not a cocycle.
    pub fn class_of(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let coords = self.classifier.coordinates(v)?;
        Some(coords[self.boundary_count..].to_vec())
    }

    pub fn is_coboundary(&self, v: &[Rational]) -> bool {
        self.class_of(v).is_some_and(|c| is_zero_vec(&c))
    }
}

/// Full cohomology of a complex.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub groups: Vec<CohomologyGroup>,
}

impl Cohomology {
    pub fn dims(&self) -> Vec<usize> {
        self.groups.iter().map(CohomologyGroup::dim).collect()
    }

    pub fn group(&self, n: usize) -> Option<&CohomologyGroup> {
        self.groups.get(n)
    }

    pub fn dim(&self, n: usize) -> usize {
        self.group(n).map_or(0, CohomologyGroup::dim)
    }
}

/// Cohomology of one degree given the incoming and outgoing differentials.
pub fn cohomology_at(dim: usize, degree: usize, incoming: &RationalMatrix, outgoing: &RationalMatrix) -> CohomologyGroup {
    let cocycles = outgoing.kernel();
    let boundaries = incoming.column_space_basis();
    let mut classifier = EchelonBasis::new(dim);
    for b in &boundaries {
        classifier.insert(b);
    }
    let boundary_count = boundaries.len();
    let mut probe = EchelonBasis::from_vectors(dim, &boundaries);
    let mut representatives = Vec::new();
    for z in &cocycles {
        if probe.insert(z) {
            classifier.insert(z);
            representatives.push(z.clone());
        }
    }
    CohomologyGroup {
        degree,
        cocycle_dim: cocycles.len(),
        coboundary_dim: boundary_count,
        representatives,
        classifier,
        boundary_count,
    }
}

/// `dim H^n = dim ker d_n - rank d_{n-1}` with representative cocycles.
pub fn cohomology(c: &CochainComplex) -> Result<Cohomology, AlgebraError> {
    if let ComplexReport::Failure { degree, witness } = verify_complex(c)? {
        return Err(AlgebraError::NotAComplex { degree, witness });
    }
    let groups = (0..=c.top())
        .map(|n| {
            let incoming =
                if n == 0 { RationalMatrix::zeros(c.dim(0), 0) } else { c.differential(n - 1) };
            cohomology_at(c.dim(n), n, &incoming, &c.differential(n))
        })
        .collect();
    Ok(Cohomology { groups })
}

pub fn cohomology_dims(c: &CochainComplex) -> Result<Vec<usize>, AlgebraError> {
    Ok(cohomology(c)?.dims())
}

/// `0 -> sub -> mid -> quot -> 0` with per-degree maps.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub sub: CochainComplex,
    pub mid: CochainComplex,
    pub quot: CochainComplex,
    pub inclusion: Vec<RationalMatrix>,
    pub projection: Vec<RationalMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LesReport {
    pub exact: bool,
    /// First degree where the long sequence fails to be exact.
    pub failing_degree: Option<usize>,
    pub sub_dims: Vec<usize>,
    pub mid_dims: Vec<usize>,
    pub quot_dims: Vec<usize>,
    /// Rank of `H^n(sub) -> H^n(mid)`.
    pub inclusion_ranks: Vec<usize>,
    /// Rank of `H^n(mid) -> H^n(quot)`.
    pub projection_ranks: Vec<usize>,
    /// Rank of the connecting map `H^n(quot) -> H^{n+1}(sub)`.
    pub connecting_ranks: Vec<usize>,
}

fn induced_map(
    map: &RationalMatrix,
    source: &CohomologyGroup,
    target: &CohomologyGroup,
) -> Result<RationalMatrix, AlgebraError> {
    let cols = source
        .representatives
        .iter()
        .map(|z| {
            target.class_of(&map.mul_vec(z)).ok_or_else(|| {
                AlgebraError::NotAChainMap(format!("image of a cocycle in degree {} is not a cocycle", source.degree))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RationalMatrix::from_columns(target.dim(), &cols))
}

fn check_ses_degree(ses: &ShortExactSequence, n: usize) -> Result<(), AlgebraError> {
    let (a, b, c) = (ses.sub.dim(n), ses.mid.dim(n), ses.quot.dim(n));
    let f = &ses.inclusion[n];
    let g = &ses.projection[n];
    if f.rows() != b || f.cols() != a || g.rows() != c || g.cols() != b {
        return Err(AlgebraError::DimensionMismatch(format!("maps in degree {n} have wrong shape")));
    }
    let bad = |reason: &str| Err(AlgebraError::NotShortExact { degree: n, reason: reason.to_string() });
    if f.rank() != a {
        return bad("first map is not injective");
    }
    if g.rank() != c {
        return bad("second map is not surjective");
    }
    if !g.mul(f).is_zero() {
        return bad("composite of the two maps is nonzero");
    }
    if a + c != b {
        return bad("image of the first map differs from the kernel of the second");
    }
    Ok(())
}

fn check_chain_map(
    map: &[RationalMatrix],
    source: &CochainComplex,
    target: &CochainComplex,
    top: usize,
) -> Result<(), AlgebraError> {
    for n in 0..top {
        let lhs = target.differential(n).mul(&map[n]);
        let rhs = map[n + 1].mul(&source.differential(n));
        if lhs != rhs {
            return Err(AlgebraError::NotAChainMap(format!("map does not commute with d in degree {n}")));
        }
    }
    Ok(())
}

/// Verify the short exact sequence, then check exactness of the induced long
/// exact sequence through rank identities at every term.
pub fn les_exactness_check(ses: &ShortExactSequence) -> Result<LesReport, AlgebraError> {
    let top = ses.mid.top();
    if ses.sub.top() != top || ses.quot.top() != top {
        return Err(AlgebraError::DimensionMismatch("complexes have different windows".into()));
    }
    if ses.inclusion.len() != top + 1 || ses.projection.len() != top + 1 {
        return Err(AlgebraError::DimensionMismatch("one map per degree required".into()));
    }
    for n in 0..=top {
        check_ses_degree(ses, n)?;
    }
    check_chain_map(&ses.inclusion, &ses.sub, &ses.mid, top)?;
    check_chain_map(&ses.projection, &ses.mid, &ses.quot, top)?;

    let ha = cohomology(&ses.sub)?;
    let hb = cohomology(&ses.mid)?;
    let hc = cohomology(&ses.quot)?;

    let mut i_star = Vec::new();
    let mut p_star = Vec::new();
    let mut delta = Vec::new();
    for n in 0..=top {
        i_star.push(induced_map(&ses.inclusion[n], &ha.groups[n], &hb.groups[n])?);
        p_star.push(induced_map(&ses.projection[n], &hb.groups[n], &hc.groups[n])?);
        delta.push(connecting_map(ses, &hc.groups[n], ha.group(n + 1), n)?);
    }

    let rank = |m: &RationalMatrix| m.rank();
    let inclusion_ranks: Vec<usize> = i_star.iter().map(rank).collect();
    let projection_ranks: Vec<usize> = p_star.iter().map(rank).collect();
    let connecting_ranks: Vec<usize> = delta.iter().map(rank).collect();

    let mut failing_degree = None;
    for n in 0..=top {
        let into_a = if n == 0 { 0 } else { connecting_ranks[n - 1] };
        let composites_vanish = p_star[n].mul(&i_star[n]).is_zero()
            && (n == 0 || i_star[n].mul(&delta[n - 1]).is_zero())
            && (n == top || delta[n].mul(&p_star[n]).is_zero());
        let ok = composites_vanish
            && into_a + inclusion_ranks[n] == ha.dim(n)
            && inclusion_ranks[n] + projection_ranks[n] == hb.dim(n)
            && projection_ranks[n] + connecting_ranks[n] == hc.dim(n);
        if !ok {
            failing_degree = Some(n);
            break;
        }
    }
    Ok(LesReport {
        exact: failing_degree.is_none(),
        failing_degree,
        sub_dims: ha.dims(),
        mid_dims: hb.dims(),
        quot_dims: hc.dims(),
        inclusion_ranks,
        projection_ranks,
        connecting_ranks,
    })
}

/// Zig-zag: lift a quotient cocycle to `mid`, apply `d`, pull back to `sub`.
fn connecting_map(
    ses: &ShortExactSequence,
    source: &CohomologyGroup,
    target: Option<&CohomologyGroup>,
    n: usize,
) -> Result<RationalMatrix, AlgebraError> {
    let Some(target) = target else {
        return Ok(RationalMatrix::zeros(0, source.dim()));
    };
    let mut cols = Vec::new();
    for z in &source.representatives {
        let lift = ses.projection[n]
            .solve(z)
            .ok_or_else(|| AlgebraError::NotShortExact { degree: n, reason: "cannot lift cocycle".into() })?;
        let db = ses.mid.differential(n).mul_vec(&lift);
        let a = ses.inclusion[n + 1].solve(&db).ok_or_else(|| AlgebraError::NotShortExact {
            degree: n + 1,
            reason: "boundary of lift is not in the image of the first map".into(),
        })?;
        let class = target
            .class_of(&a)
            .ok_or_else(|| AlgebraError::NotAChainMap(format!("connecting image in degree {} not closed", n + 1)))?;
        cols.push(class);
    }
    Ok(RationalMatrix::from_columns(target.dim(), &cols))
}

/// Direct sum of two complexes on the same window.
pub fn direct_sum(a: &CochainComplex, b: &CochainComplex) -> CochainComplex {
    let top = a.top().max(b.top());
    let dims: Vec<usize> = (0..=top).map(|n| a.dim(n) + b.dim(n)).collect();
    let diffs = (0..top)
        .map(|n| block_diagonal(&a.differential(n), &b.differential(n)))
        .collect();
    CochainComplex::from_parts(GradedVectorSpace::new(dims), diffs)
}

pub fn block_diagonal(x: &RationalMatrix, y: &RationalMatrix) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(x.rows() + y.rows(), x.cols() + y.cols());
    for r in 0..x.rows() {
        for c in 0..x.cols() {
            m.set(r, c, x.get(r, c).clone());
        }
    }
    for r in 0..y.rows() {
        for c in 0..y.cols() {
            m.set(x.rows() + r, x.cols() + c, y.get(r, c).clone());
        }
    }
    m
}

/// Standard split sequence `0 -> a -> a ⊕ b -> b -> 0`.
pub fn split_sequence(a: &CochainComplex, b: &CochainComplex) -> ShortExactSequence {
    let mid = direct_sum(a, b);
    let top = mid.top();
    let mut inclusion = Vec::new();
    let mut projection = Vec::new();
    for n in 0..=top {
        let (da, db) = (a.dim(n), b.dim(n));
        let mut f = RationalMatrix::zeros(da + db, da);
        for i in 0..da {
            f.set(i, i, Rational::one());
        }
        let mut g = RationalMatrix::zeros(db, da + db);
        for i in 0..db {
            g.set(i, da + i, Rational::one());
        }
        inclusion.push(f);
        projection.push(g);
    }
    ShortExactSequence { sub: a.clone(), mid, quot: b.clone(), inclusion, projection }
}

/// Apply `v -> m v` for every representative and test membership; used by
/// property tests that re-verify representatives.
pub fn representatives_are_independent(c: &CochainComplex, h: &Cohomology) -> bool {
    h.groups.iter().all(|g| {
        let d = c.differential(g.degree);
        let closed = g.representatives.iter().all(|z| is_zero_vec(&d.mul_vec(z)));
        let incoming = if g.degree == 0 {
            RationalMatrix::zeros(c.dim(0), 0)
        } else {
            c.differential(g.degree - 1)
        };
        let mut vs = incoming.column_space_basis();
        let boundary_rank = vs.len();
        vs.extend(g.representatives.iter().cloned());
        let dim = c.dim(g.degree);
        closed && crate::linalg::rank_of(dim, &vs) == boundary_rank + g.dim()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn s3_model() -> CochainComplex {
        // 1, θ, ω, θω with dθ = ω
        let space = GradedVectorSpace::new(vec![1, 1, 1, 1]);
        let d = vec![
            RationalMatrix::zeros(1, 1),
            RationalMatrix::from_i64(1, 1, &[1]),
            RationalMatrix::zeros(1, 1),
        ];
        CochainComplex::new(space, d).unwrap()
    }

    #[test]
    fn zero_differentials_are_a_complex() {
        let c = CochainComplex::zero_differentials(GradedVectorSpace::new(vec![1, 2, 1]));
        assert_eq!(verify_complex(&c).unwrap(), ComplexReport::Ok);
        assert_eq!(cohomology_dims(&c).unwrap(), vec![1, 2, 1]);
    }

    #[test]
    fn identity_into_degree_one_is_exact() {
        let c = CochainComplex::from_parts(GradedVectorSpace::new(vec![1, 1]), vec![RationalMatrix::identity(1)]);
        assert_eq!(verify_complex(&c).unwrap(), ComplexReport::Ok);
        assert_eq!(cohomology_dims(&c).unwrap(), vec![0, 0]);
    }

    #[test]
    fn d_squared_nonzero_reports_witness() {
        let c = CochainComplex::from_parts(
            GradedVectorSpace::new(vec![1, 1, 1]),
            vec![RationalMatrix::identity(1), RationalMatrix::identity(1)],
        );
        assert_eq!(verify_complex(&c).unwrap(), ComplexReport::Failure { degree: 0, witness: 0 });
        assert!(cohomology(&c).is_err());
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let c = CochainComplex::from_parts(
            GradedVectorSpace::new(vec![1, 2]),
            vec![RationalMatrix::identity(1)],
        );
        assert!(matches!(verify_complex(&c), Err(AlgebraError::DimensionMismatch(_))));
    }

    #[test]
    fn s3_minimal_model_cohomology() {
        let c = s3_model();
        let h = cohomology(&c).unwrap();
        assert_eq!(h.dims(), vec![1, 0, 0, 1]);
        assert!(representatives_are_independent(&c, &h));
        assert!(h.groups[2].is_coboundary(&[rat(5)]));
    }

    #[test]
    fn split_of_s3_model_has_connecting_rank_one() {
        let mid = s3_model();
        // sub = span{ω, θω}, quotient = span{1, θ}, both with zero differential
        let sub = CochainComplex::zero_differentials(GradedVectorSpace::new(vec![0, 0, 1, 1]));
        let quot = CochainComplex::zero_differentials(GradedVectorSpace::new(vec![1, 1, 0, 0]));
        let inclusion = vec![
            RationalMatrix::zeros(1, 0),
            RationalMatrix::zeros(1, 0),
            RationalMatrix::identity(1),
            RationalMatrix::identity(1),
        ];
        let projection = vec![
            RationalMatrix::identity(1),
            RationalMatrix::identity(1),
            RationalMatrix::zeros(0, 1),
            RationalMatrix::zeros(0, 1),
        ];
        let ses = ShortExactSequence { sub, mid, quot, inclusion, projection };
        let report = les_exactness_check(&ses).unwrap();
        assert!(report.exact);
        assert_eq!(report.connecting_ranks, vec![0, 1, 0, 0]);
    }

    #[test]
    fn diagonal_difference_sequence_is_exact() {
        let c = s3_model();
        let mid = direct_sum(&c, &c);
        let mut inclusion = Vec::new();
        let mut projection = Vec::new();
        for n in 0..=c.top() {
            let k = c.dim(n);
            let mut f = RationalMatrix::zeros(2 * k, k);
            let mut g = RationalMatrix::zeros(k, 2 * k);
            for i in 0..k {
                f.set(i, i, rat(1));
                f.set(k + i, i, rat(1));
                g.set(i, i, rat(1));
                g.set(i, k + i, rat(-1));
            }
            inclusion.push(f);
            projection.push(g);
        }
        let ses = ShortExactSequence { sub: c.clone(), mid, quot: c, inclusion, projection };
        assert!(les_exactness_check(&ses).unwrap().exact);
    }

    #[test]
    fn identity_onto_zero_quotient_is_exact() {
        let a = s3_model();
        let zero = CochainComplex::zero_differentials(GradedVectorSpace::new(vec![0, 0, 0, 0]));
        let inclusion = (0..4).map(|_| RationalMatrix::identity(1)).collect();
        let projection = (0..4).map(|_| RationalMatrix::zeros(0, 1)).collect();
        let ses = ShortExactSequence { sub: a.clone(), mid: a, quot: zero, inclusion, projection };
        let r = les_exactness_check(&ses).unwrap();
        assert!(r.exact);
        assert_eq!(r.connecting_ranks, vec![0, 0, 0, 0]);
    }

    #[test]
    fn non_injective_first_map_is_a_distinct_error() {
        let a = CochainComplex::zero_differentials(GradedVectorSpace::new(vec![1]));
        let ses = ShortExactSequence {
            sub: a.clone(),
            mid: a.clone(),
            quot: CochainComplex::zero_differentials(GradedVectorSpace::new(vec![1])),
            inclusion: vec![RationalMatrix::zeros(1, 1)],
            projection: vec![RationalMatrix::identity(1)],
        };
        assert!(matches!(les_exactness_check(&ses), Err(AlgebraError::NotShortExact { degree: 0, .. })));
    }
}
