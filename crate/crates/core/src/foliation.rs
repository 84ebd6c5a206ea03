//! Poincaré-series identities for Killing foliations, evaluated on strata,
//! Morse and polytope data.

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::module::{localized_rank, GradedModule, GradedModulePresentation};
use crate::series::{morse_gap, MorseGap, Polynomial, RationalSeries};

/// A component of an infinitesimal orbit type manifold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stratum {
    pub name: String,
    pub codim: usize,
    pub isotropy_dim: usize,
    /// Poincaré polynomial of the leaf-closure space of the stratum.
    pub quotient_poincare: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FoliationStrataModel {
    pub q: usize,
    pub dim_a: usize,
    pub strata: Vec<Stratum>,
    /// Names of the strata made of closed leaves.
    pub closed_leaf_components: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        ValidationReport { valid: violations.is_empty(), violations }
    }

    fn into_result(self) -> Result<()> {
        if self.valid {
            return Ok(());
        }
        let parts: Vec<String> = self.violations.iter().map(|v| format!("{}: {}", v.rule, v.detail)).collect();
        Err(AlgebraError::Invalid(parts.join("; ")))
    }
}

pub fn validate_strata(m: &FoliationStrataModel) -> ValidationReport {
    let mut out = Vec::new();
    let mut push = |rule: &'static str, detail: String| out.push(Violation { rule, detail });
    for s in &m.strata {
        if s.isotropy_dim > m.dim_a {
            push("isotropy_bounded_by_rank", format!("{} has isotropy {} > {}", s.name, s.isotropy_dim, m.dim_a));
        }
        if s.codim > m.q {
            push("codimension_bounded_by_q", format!("{} has codimension {} > {}", s.name, s.codim, m.q));
        }
        if !s.quotient_poincare.is_nonnegative() {
            push("nonnegative_poincare", format!("{} has a negative Betti number", s.name));
        }
    }
    for name in &m.closed_leaf_components {
        if !m.strata.iter().any(|s| &s.name == name) {
            push("closed_leaves_are_strata", format!("{name} is not a stratum"));
        }
    }
    for s in &m.strata {
        let listed = m.closed_leaf_components.contains(&s.name);
        let full = s.isotropy_dim == m.dim_a;
        if listed != full {
            push(
                "closed_leaves_have_full_isotropy",
                format!("{} has isotropy {} of {} but is{} listed as closed", s.name, s.isotropy_dim, m.dim_a, if listed { "" } else { " not" }),
            );
        }
        if full && s.codim % 2 == 1 {
            push("closed_leaf_even_codimension", format!("{} has odd codimension {}", s.name, s.codim));
        }
        if full && s.codim == m.q && s.quotient_poincare == Polynomial::one() && m.q % 2 == 1 {
            push("isolated_closed_leaf_even_q", format!("{} is an isolated closed leaf but q = {} is odd", s.name, m.q));
        }
    }
    if !m.closed_leaf_components.is_empty() && 2 * m.dim_a > m.q {
        push("closed_leaf_bounds_rank", format!("a closed leaf exists but 2·{} > q = {}", m.dim_a, m.q));
    }
    ValidationReport::from_violations(out)
}

/// `Σ_X t^{codim X} P_t(X) / (1 - t²)^{isotropy(X)}`.
pub fn equivariant_series_from_strata(m: &FoliationStrataModel) -> Result<RationalSeries> {
    validate_strata(m).into_result()?;
    let mut total = RationalSeries::zero();
    for s in &m.strata {
        let term = RationalSeries::new(s.quotient_poincare.shift(s.codim), s.isotropy_dim as u32);
        total = &total + &term;
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasicSeries {
    pub polynomial: Polynomial,
    pub formal_source: FormalitySource,
}

/// Where a formality assumption came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormalitySource {
    /// Asserted by the caller.
    Asserted,
    /// Automatic for polytope quotients.
    Polytope,
    /// Vanishing odd cohomology.
    OddVanishing,
    /// A Morse-Bott function with critical set the closed leaves.
    MorseCriticalSet,
}

/// `Σ_X t^{codim X} (1 - t²)^{dim 𝔞 - isotropy(X)} P_t(X)`, checked to equal
/// the equivariant series times `(1 - t²)^{dim 𝔞}`.
pub fn basic_series_formal(m: &FoliationStrataModel, source: FormalitySource) -> Result<BasicSeries> {
    let eq = equivariant_series_from_strata(m)?;
    let mut sum = Polynomial::zero();
    for s in &m.strata {
        let factor = Polynomial::one_minus_t2().pow((m.dim_a - s.isotropy_dim) as u32);
        sum = &sum + &(&s.quotient_poincare.shift(s.codim) * &factor);
    }
    let product = eq.times_one_minus_t2_pow(m.dim_a as u32);
    if !product.is_polynomial() || product.numerator != sum {
        return Err(AlgebraError::Internal("strata sum disagrees with the equivariant series".into()));
    }
    if let Some(n) = sum.first_negative() {
        return Err(AlgebraError::Invalid(format!(
            "model inconsistent with formality: coefficient of t^{n} is {}",
            sum.coeff(n)
        )));
    }
    Ok(BasicSeries { polynomial: sum, formal_source: source })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BorelVerdict {
    pub inequality_holds: bool,
    pub equality: bool,
    pub formal: bool,
    /// Inequality holds and equality matches formality.
    pub consistent: bool,
}

/// `dim H(C) <= dim H(M)`, with equality exactly when formal.
pub fn borel_check(dim_total_h_m: usize, dim_total_h_c: usize, formal: bool) -> BorelVerdict {
    let inequality_holds = dim_total_h_c <= dim_total_h_m;
    let equality = dim_total_h_c == dim_total_h_m;
    BorelVerdict { inequality_holds, equality, formal, consistent: inequality_holds && equality == formal }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalizationVerdict {
    pub localized_rank: usize,
    pub closed_leaf_total: usize,
    pub consistent: bool,
}

/// The rank over the fraction field must equal `dim H(C)`.
pub fn localization_rank_check(m: &GradedModulePresentation, dim_total_h_c: usize) -> Result<LocalizationVerdict> {
    let rank = localized_rank(&GradedModule::new(m))?;
    Ok(LocalizationVerdict { localized_rank: rank, closed_leaf_total: dim_total_h_c, consistent: rank == dim_total_h_c })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorseComponent {
    pub index: usize,
    pub quotient_poincare: Polynomial,
    pub isotropy_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorseData {
    pub components: Vec<MorseComponent>,
}

impl MorseData {
    pub fn validate(&self, dim_a: usize) -> ValidationReport {
        let mut out = Vec::new();
        for (k, c) in self.components.iter().enumerate() {
            if !c.quotient_poincare.is_nonnegative() {
                out.push(Violation { rule: "nonnegative_poincare", detail: format!("component {k} has a negative Betti number") });
            }
            if c.isotropy_dim > dim_a {
                out.push(Violation {
                    rule: "isotropy_bounded_by_rank",
                    detail: format!("component {k} has isotropy {} > {dim_a}", c.isotropy_dim),
                });
            }
        }
        ValidationReport::from_violations(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorseSeries {
    pub basic: Polynomial,
    pub equivariant: RationalSeries,
}

/// `Σ_N t^{λ_N} P_t(N)` and `Σ_N t^{λ_N} P_t(N) / (1 - t²)^{isotropy(N)}`.
pub fn morse_series(d: &MorseData, dim_a: usize) -> Result<MorseSeries> {
    d.validate(dim_a).into_result()?;
    let mut basic = Polynomial::zero();
    let mut equivariant = RationalSeries::zero();
    for c in &d.components {
        let shifted = c.quotient_poincare.shift(c.index);
        basic = &basic + &shifted;
        equivariant = &equivariant + &RationalSeries::new(shifted, c.isotropy_dim as u32);
    }
    Ok(MorseSeries { basic, equivariant })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PerfectnessVerdict {
    pub perfect: bool,
    pub morse: Polynomial,
    pub gap: MorseGap,
}

/// Perfect exactly when the Morse polynomial equals `P_basic`; otherwise the
/// gap is divided by `1 + t`.
pub fn perfectness_check(d: &MorseData, p_basic: &Polynomial, dim_a: usize) -> Result<PerfectnessVerdict> {
    if !p_basic.is_nonnegative() {
        return Err(AlgebraError::Invalid("the basic Poincaré polynomial has a negative coefficient".into()));
    }
    let series = morse_series(d, dim_a)?;
    let window = series.basic.degree().max(p_basic.degree()) + 1;
    let gap = morse_gap(
        &RationalSeries::polynomial(series.basic.clone()),
        &RationalSeries::polynomial(p_basic.clone()),
        window,
    );
    Ok(PerfectnessVerdict { perfect: series.basic == *p_basic, morse: series.basic, gap })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeData {
    /// `λ_0, …, λ_n`: number of faces of each dimension.
    pub f_vector: Vec<u64>,
    pub q: usize,
    /// Optional edges as vertex pairs, to witness simpleness.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<[usize; 2]>>,
}

impl PolytopeData {
    pub fn dim(&self) -> usize {
        self.f_vector.len().saturating_sub(1)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut out = Vec::new();
        let mut push = |rule: &'static str, detail: String| out.push(Violation { rule, detail });
        let n = self.dim();
        if self.f_vector.is_empty() {
            push("nonempty_f_vector", "the f-vector is empty".into());
            return ValidationReport::from_violations(out);
        }
        if self.f_vector[n] != 1 {
            push("single_top_face", format!("λ_{n} = {}, expected 1", self.f_vector[n]));
        }
        let euler: i128 = self.f_vector.iter().enumerate().map(|(i, &l)| if i % 2 == 0 { l as i128 } else { -(l as i128) }).sum();
        if euler != 1 {
            push("euler_relation", format!("alternating sum of the f-vector is {euler}, expected 1"));
        }
        if self.q != 2 * n {
            push("codimension_twice_dimension", format!("q = {} but the polytope has dimension {n}", self.q));
        }
        if let Some(edges) = &self.edges {
            let vertices = self.f_vector[0] as usize;
            if n >= 1 && edges.len() as u64 != self.f_vector[1] {
                push("edge_count", format!("{} edges given, λ_1 = {}", edges.len(), self.f_vector[1]));
            }
            let mut degree = vec![0usize; vertices];
            for e in edges {
                for &v in e {
                    if v >= vertices {
                        push("edge_endpoints", format!("vertex {v} out of range"));
                    } else {
                        degree[v] += 1;
                    }
                }
            }
            if let Some(v) = degree.iter().position(|&d| d != n) {
                push("simple", format!("vertex {v} meets {} edges, expected {n}", degree[v]));
            }
        }
        ValidationReport::from_violations(out)
    }

    /// One stratum per face: a face of dimension `i` has isotropy `n - i`,
    /// codimension `q - 2i` and contractible quotient.
    pub fn strata(&self) -> FoliationStrataModel {
        let n = self.dim();
        let mut strata = Vec::new();
        let mut closed = Vec::new();
        for (i, &count) in self.f_vector.iter().enumerate() {
            for k in 0..count {
                let name = format!("face{i}_{k}");
                if i == 0 {
                    closed.push(name.clone());
                }
                strata.push(Stratum { name, codim: self.q - 2 * i, isotropy_dim: n - i, quotient_poincare: Polynomial::one() });
            }
        }
        FoliationStrataModel { q: self.q, dim_a: n, strata, closed_leaf_components: closed }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolytopeSeries {
    pub polynomial: Polynomial,
    pub strata: FoliationStrataModel,
    pub formal_source: FormalitySource,
}

/// `Σ_i λ_i t^{q - 2i} (1 - t²)^i`, cross-checked against the strata sum of
/// the induced model.
pub fn polytope_series(p: &PolytopeData) -> Result<PolytopeSeries> {
    p.validate().into_result()?;
    let mut sum = Polynomial::zero();
    for (i, &l) in p.f_vector.iter().enumerate() {
        let term = Polynomial::monomial(p.q - 2 * i, l as i64);
        sum = &sum + &(&term * &Polynomial::one_minus_t2().pow(i as u32));
    }
    let strata = p.strata();
    let via_strata = basic_series_formal(&strata, FormalitySource::Polytope)?;
    if via_strata.polynomial != sum {
        return Err(AlgebraError::Internal("face-vector formula disagrees with the strata sum".into()));
    }
    Ok(PolytopeSeries { polynomial: sum, strata, formal_source: FormalitySource::Polytope })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::euler_at_minus_one;

    fn stratum(name: &str, codim: usize, iso: usize, p: Vec<i64>) -> Stratum {
        Stratum { name: name.into(), codim, isotropy_dim: iso, quotient_poincare: Polynomial::new(p) }
    }

    fn hopf() -> FoliationStrataModel {
        FoliationStrataModel {
            q: 2,
            dim_a: 1,
            strata: vec![stratum("open", 0, 0, vec![1]), stratum("leaf1", 2, 1, vec![1]), stratum("leaf2", 2, 1, vec![1])],
            closed_leaf_components: vec!["leaf1".into(), "leaf2".into()],
        }
    }

    #[test]
    fn hopf_series() {
        let m = hopf();
        assert!(validate_strata(&m).valid);
        let eq = equivariant_series_from_strata(&m).unwrap();
        assert_eq!(eq, RationalSeries::new(Polynomial::new(vec![1, 0, 1]), 1));
        let b = basic_series_formal(&m, FormalitySource::Asserted).unwrap();
        assert_eq!(b.polynomial, Polynomial::new(vec![1, 0, 1]));
        assert_eq!(euler_at_minus_one(&b.polynomial), 2);
    }

    #[test]
    fn degenerate_models() {
        let closed = FoliationStrataModel {
            q: 2,
            dim_a: 0,
            strata: vec![stratum("all", 0, 0, vec![1, 0, 1])],
            closed_leaf_components: vec!["all".into()],
        };
        assert_eq!(basic_series_formal(&closed, FormalitySource::Asserted).unwrap().polynomial, Polynomial::new(vec![1, 0, 1]));
        let dense = FoliationStrataModel { q: 3, dim_a: 1, strata: vec![stratum("all", 0, 0, vec![1])], closed_leaf_components: vec![] };
        assert_eq!(equivariant_series_from_strata(&dense).unwrap(), RationalSeries::polynomial(Polynomial::one()));
    }

    #[test]
    fn negative_product_is_inconsistent() {
        let m = FoliationStrataModel { q: 2, dim_a: 1, strata: vec![stratum("open", 0, 0, vec![1, 1])], closed_leaf_components: vec![] };
        assert!(matches!(basic_series_formal(&m, FormalitySource::Asserted), Err(AlgebraError::Invalid(_))));
    }

    #[test]
    fn strata_validation_rules() {
        let mut m = hopf();
        m.dim_a = 2;
        for s in m.strata.iter_mut().filter(|s| s.isotropy_dim == 1) {
            s.isotropy_dim = 2;
        }
        let r = validate_strata(&m);
        assert!(r.violations.iter().any(|v| v.rule == "closed_leaf_bounds_rank"));

        let odd = FoliationStrataModel { q: 3, dim_a: 1, strata: vec![stratum("leaf", 3, 1, vec![1])], closed_leaf_components: vec!["leaf".into()] };
        assert!(validate_strata(&odd).violations.iter().any(|v| v.rule == "isolated_closed_leaf_even_q"));
    }

    #[test]
    fn borel_verdicts() {
        assert!(borel_check(2, 2, true).consistent);
        assert!(borel_check(3, 2, false).consistent);
        assert!(!borel_check(2, 3, false).inequality_holds);
        assert!(!borel_check(3, 2, true).consistent);
    }

    #[test]
    fn morse_hopf_is_perfect() {
        let d = MorseData {
            components: vec![
                MorseComponent { index: 0, quotient_poincare: Polynomial::one(), isotropy_dim: 1 },
                MorseComponent { index: 2, quotient_poincare: Polynomial::one(), isotropy_dim: 1 },
            ],
        };
        let s = morse_series(&d, 1).unwrap();
        assert_eq!(s.basic, Polynomial::new(vec![1, 0, 1]));
        assert_eq!(s.equivariant, RationalSeries::new(Polynomial::new(vec![1, 0, 1]), 1));
        let v = perfectness_check(&d, &Polynomial::new(vec![1, 0, 1]), 1).unwrap();
        assert!(v.perfect && v.gap.is_perfect());
    }

    #[test]
    fn polytopes() {
        let cases = [(vec![2, 1], 2, vec![1, 0, 1]), (vec![4, 4, 1], 4, vec![1, 0, 2, 0, 1]), (vec![3, 3, 1], 4, vec![1, 0, 1, 0, 1])];
        for (f, q, expected) in cases {
            let p = PolytopeData { f_vector: f, q, edges: None };
            assert_eq!(polytope_series(&p).unwrap().polynomial, Polynomial::new(expected));
        }
    }

    #[test]
    fn tampered_polytopes_are_rejected() {
        let bad_euler = PolytopeData { f_vector: vec![4, 3, 1], q: 4, edges: None };
        assert!(validate_strata_rules(&bad_euler).contains(&"euler_relation"));
        let bad_q = PolytopeData { f_vector: vec![2, 1], q: 3, edges: None };
        assert!(validate_strata_rules(&bad_q).contains(&"codimension_twice_dimension"));
        let not_simple = PolytopeData { f_vector: vec![4, 4, 1], q: 4, edges: Some(vec![[0, 1], [1, 2], [2, 3], [0, 2]]) };
        assert!(validate_strata_rules(&not_simple).contains(&"simple"));
        let square = PolytopeData { f_vector: vec![4, 4, 1], q: 4, edges: Some(vec![[0, 1], [1, 2], [2, 3], [3, 0]]) };
        assert!(square.validate().valid);
    }

    fn validate_strata_rules(p: &PolytopeData) -> Vec<&'static str> {
        p.validate().violations.iter().map(|v| v.rule).collect()
    }
}
