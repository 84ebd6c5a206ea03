//! Spectral sequence of the Cartan complex filtered by polynomial degree,
//! and the formality verdict.
//!
//! Bigrading: `u^α ⊗ a` with `|α| = p` and `a ∈ A^k` sits in
//! `(p, q) = (p, p + k)`, so `d` has bidegree `(0, 1)`, the contraction
//! part `(1, 0)`, and `d_r` goes `(p, q) -> (p + r, q + 1 - r)`.

use serde::Serialize;

use crate::cartan::{cartan_complex, module_presentation, CartanComplex, EquivariantCohomologyResult};
use crate::complex::{cohomology, cohomology_dims};
use crate::error::{AlgebraError, Result};
use crate::gstar::GStarStructure;
use crate::linalg::{rank_of, zero_vec, Rational};
use crate::module::{freeness_test, GradedModule};
use crate::series::{Polynomial, RationalSeries};

/// One page, `dims[p][q]` for `p + q <= max_degree` and `q >= p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleComplexPage {
    pub page: usize,
    pub dims: Vec<Vec<usize>>,
    /// Rank of `d_r` leaving `(p, q)`.
    pub ranks: Vec<Vec<usize>>,
}

impl DoubleComplexPage {
    pub fn get(&self, p: usize, q: usize) -> usize {
        self.dims.get(p).and_then(|row| row.get(q)).copied().unwrap_or(0)
    }

    pub fn rank(&self, p: usize, q: usize) -> usize {
        self.ranks.get(p).and_then(|row| row.get(q)).copied().unwrap_or(0)
    }

    /// `Σ_{p+q=n} dim E^{p,q}` for `n = 0..=max_degree`.
    pub fn totals(&self, max_degree: usize) -> Vec<usize> {
        (0..=max_degree).map(|n| (0..=n / 2).map(|p| self.get(p, n - p)).sum()).collect()
    }

    pub fn differentials_vanish(&self) -> bool {
        self.ranks.iter().flatten().all(|&r| r == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralSequence {
    pub max_degree: usize,
    pub stable_through: usize,
    /// Pages `1..=collapse_page`; the last one is `E_∞`.
    pub pages: Vec<DoubleComplexPage>,
    /// First `r` with `E_r = E_∞` in the window.
    pub collapse_page: usize,
    pub e_infinity_totals: Vec<usize>,
}

fn require_abelian_untwisted(s: &GStarStructure) -> Result<()> {
    if !s.lie.is_abelian() || !s.l_vanishes() {
        return Err(AlgebraError::Refused(
            "the first page is only described for abelian actions with vanishing Lie derivatives".into(),
        ));
    }
    Ok(())
}

/// Index sets of a slice by polynomial degree.
fn poly_degrees(c: &CartanComplex, n: usize) -> Vec<usize> {
    c.slices[n].basis.iter().map(|(p, _, _)| *p).collect()
}

/// Elements of `C^n` with filtration `>= from` whose differential has
/// filtration `>= level`.
fn z_space(c: &CartanComplex, n: usize, from: usize, level: usize) -> Vec<Vec<Rational>> {
    let degs = poly_degrees(c, n);
    let cols: Vec<usize> = (0..degs.len()).filter(|&k| degs[k] >= from).collect();
    let target = poly_degrees(c, n + 1);
    let rows: Vec<usize> = (0..target.len()).filter(|&k| target[k] < level).collect();
    let d = c.complex.differential(n);
    let m = d.select_rows(&rows).select_cols(&cols);
    m.kernel()
        .into_iter()
        .map(|v| {
            let mut full = zero_vec(degs.len());
            for (k, x) in cols.iter().zip(v) {
                full[*k] = x;
            }
            full
        })
        .collect()
}

/// `dim E_r^{p}` in total degree `n`:
/// `Z_r^p / (Z_{r-1}^{p+1} + d Z_{r-1}^{p-r+1})`.
fn page_dim(c: &CartanComplex, n: usize, p: usize, r: usize) -> usize {
    let z = z_space(c, n, p, p + r);
    let mut denominator = z_space(c, n, p + 1, p + r);
    if n > 0 {
        // filtration below zero is everything
        let from = (p + 1).saturating_sub(r);
        let d = c.complex.differential(n - 1);
        denominator.extend(z_space(c, n - 1, from, p).iter().map(|v| d.mul_vec(v)));
    }
    let dim = c.slices[n].full_dim();
    let mut all = denominator.clone();
    all.extend(z.iter().cloned());
    rank_of(dim, &all) - rank_of(dim, &denominator)
}

fn page(c: &CartanComplex, max_degree: usize, r: usize) -> Vec<Vec<usize>> {
    (0..=max_degree / 2)
        .map(|p| (0..=max_degree - p).map(|q| if q >= p { page_dim(c, p + q, p, r) } else { 0 }).collect())
        .collect()
}

/// `E_1` from the column-wise cohomology, checked against
/// `dim S^p · dim H^{q-p}(A)`.
pub fn e1_page(s: &GStarStructure, max_degree: usize) -> Result<DoubleComplexPage> {
    require_abelian_untwisted(s)?;
    let c = cartan_complex(s, max_degree)?;
    let dims = page(&c, max_degree, 1);
    let h = cohomology_dims(&s.de_rham())?;
    let r = s.rank() as i64;
    for (p, row) in dims.iter().enumerate() {
        for (q, &d) in row.iter().enumerate().skip(p) {
            let k = q - p;
            let expected = crate::series::binomial(p as i64 + r - 1, r - 1) as usize * h.get(k).copied().unwrap_or(0);
            if d != expected {
                return Err(AlgebraError::Internal(format!(
                    "first page at ({p}, {q}) has dimension {d}, expected {expected}"
                )));
            }
        }
    }
    let ranks = vec![vec![0; max_degree + 1]; dims.len()];
    Ok(DoubleComplexPage { page: 1, dims, ranks })
}

/// Pages until they stop changing. `d_r` out of `(p, q)` needs
/// `q - p >= 2r - 1`, so pages past `(top(A) + 1) / 2 + 1` are `E_∞`.
pub fn run_pages(s: &GStarStructure, max_degree: usize) -> Result<SpectralSequence> {
    e1_page(s, max_degree)?;
    let c = cartan_complex(s, max_degree)?;
    let last = s.top().div_ceil(2) + 1;
    let dims: Vec<Vec<Vec<usize>>> = (1..=last).map(|r| page(&c, max_degree, r)).collect();
    let mut pages = Vec::with_capacity(last);
    for r in 1..=last {
        let cur = &dims[r - 1];
        let next = dims.get(r);
        let mut ranks = vec![vec![0usize; max_degree + 1]; cur.len()];
        // dim E_{r+1} = dim E_r - out - in, with in(p, q) = out(p - r, q + r - 1)
        for n in 0..=max_degree {
            for p in 0..=n / 2 {
                let q = n - p;
                let Some(next) = next else { continue };
                let incoming = if p >= r { ranks[p - r].get(q + r - 1).copied().unwrap_or(0) } else { 0 };
                let drop = cur[p][q] - next[p][q];
                ranks[p][q] = drop.checked_sub(incoming).ok_or_else(|| {
                    AlgebraError::Internal(format!("negative differential rank on page {r} at ({p}, {q})"))
                })?;
            }
        }
        pages.push(DoubleComplexPage { page: r, dims: cur.clone(), ranks });
    }
    let infinity = pages.last().expect("at least one page").clone();
    let e_infinity_totals = infinity.totals(max_degree);
    let h = cohomology(&c.complex)?.dims();
    let stable = c.stable_through;
    if e_infinity_totals[..=stable] != h[..=stable] {
        return Err(AlgebraError::Internal("limit page disagrees with the Cartan cohomology".into()));
    }
    let collapse_page = pages.iter().position(|pg| pg.dims == infinity.dims).map_or(last, |i| i + 1);
    pages.truncate(collapse_page);
    Ok(SpectralSequence { max_degree, stable_through: stable, pages, collapse_page, e_infinity_totals })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormalityMethod {
    E1Collapse,
    OddVanishing,
    HilbertFactorization,
    Surjectivity,
    FreeModule,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MethodOutcome {
    pub method: FormalityMethod,
    /// `None` when the method cannot decide.
    pub formal: Option<bool>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormalityVerdict {
    pub formal: bool,
    pub method: FormalityMethod,
    /// First degree where `P^𝔞 (1 - t²)^r` and `P(A)` differ.
    pub witness_degree: Option<usize>,
    pub stable_through: usize,
    pub outcomes: Vec<MethodOutcome>,
}

/// Combines the formality criteria, in order: odd vanishing (sufficient),
/// Hilbert factorization, surjectivity of restriction, freeness.
/// Conclusive methods that disagree are reported as an internal error.
pub fn formality_verdict(
    e: &EquivariantCohomologyResult,
    basic_h: &[usize],
    dim_a: usize,
    max_degree: usize,
) -> Result<FormalityVerdict> {
    let window = e.stable_through.min(max_degree);
    let mut outcomes = Vec::new();

    let odd_zero = basic_h.iter().skip(1).step_by(2).all(|&d| d == 0);
    outcomes.push(MethodOutcome {
        method: FormalityMethod::OddVanishing,
        formal: odd_zero.then_some(true),
        detail: if odd_zero { "odd cohomology vanishes".into() } else { "odd cohomology is nonzero".into() },
    });

    let p = Polynomial::new(basic_h.iter().map(|&d| d as i64).collect());
    let expected = RationalSeries::new(p, dim_a as u32).expand(window);
    let witness = (0..=window).find(|&n| e.dims[n] as i64 != expected[n]);
    outcomes.push(MethodOutcome {
        method: FormalityMethod::HilbertFactorization,
        formal: Some(witness.is_none()),
        detail: match witness {
            None => format!("series agree through degree {window}"),
            Some(n) => format!("degree {n}: equivariant {} vs expected {}", e.dims[n], expected[n]),
        },
    });

    let covers = basic_h.len() <= window + 1;
    let surjective = (0..basic_h.len().min(window + 1)).all(|n| e.restriction_ranks[n] == basic_h[n]);
    outcomes.push(MethodOutcome {
        method: FormalityMethod::Surjectivity,
        formal: if surjective && covers {
            Some(true)
        } else if !surjective {
            Some(false)
        } else {
            None
        },
        detail: format!("restriction ranks {:?}", e.restriction_ranks),
    });

    let free = match module_presentation(e, dim_a) {
        Ok(m) => {
            let f = freeness_test(&GradedModule::new(&m));
            MethodOutcome {
                method: FormalityMethod::FreeModule,
                formal: f.certified.then_some(f.free),
                detail: format!("free: {}, certified: {}", f.free, f.certified),
            }
        }
        Err(err) => MethodOutcome { method: FormalityMethod::FreeModule, formal: None, detail: err.to_string() },
    };
    outcomes.push(free);

    let decided: Vec<bool> = outcomes.iter().filter_map(|o| o.formal).collect();
    let formal = witness.is_none();
    if decided.iter().any(|&f| f != formal) {
        return Err(AlgebraError::Internal(format!("formality criteria disagree: {outcomes:?}")));
    }
    let method = if odd_zero { FormalityMethod::OddVanishing } else { FormalityMethod::HilbertFactorization };
    Ok(FormalityVerdict { formal, method, witness_degree: witness, stable_through: window, outcomes })
}

/// Whether `E_1` and `E_∞` have the same totals in the window.
pub fn collapses_at_e1(seq: &SpectralSequence) -> bool {
    seq.pages[0].totals(seq.stable_through) == seq.e_infinity_totals[..=seq.stable_through]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::equivariant_cohomology;
    use crate::fixtures;

    #[test]
    fn trivial_action_first_page() {
        let e1 = e1_page(&fixtures::sphere2_trivial(), 6).unwrap();
        for p in 0..=3 {
            for q in p..=6 - p {
                let expected = usize::from(q - p == 0 || q - p == 2);
                assert_eq!(e1.get(p, q), expected, "({p}, {q})");
            }
        }
    }

    #[test]
    fn hopf_first_page_and_collapse() {
        let s = fixtures::hopf_basic();
        let e1 = e1_page(&s, 8).unwrap();
        assert_eq!(e1.get(0, 0), 1);
        assert_eq!(e1.get(1, 2), 1);
        assert_eq!(e1.get(1, 4), 1);
        let seq = run_pages(&s, 8).unwrap();
        assert_eq!(seq.collapse_page, 2);
        assert!(!seq.pages[0].differentials_vanish());
        assert_eq!(seq.e_infinity_totals, vec![1, 0, 1, 0, 0, 0, 0, 0, 0]);
        assert!(!collapses_at_e1(&seq));
    }

    #[test]
    fn trivial_action_collapses_immediately() {
        let seq = run_pages(&fixtures::trivial_1011(), 8).unwrap();
        assert_eq!(seq.collapse_page, 1);
        assert!(collapses_at_e1(&seq));
    }

    #[test]
    fn totals_do_not_increase() {
        let s = fixtures::s3_minimal_trivial();
        let seq = run_pages(&s, 8).unwrap();
        for w in seq.pages.windows(2) {
            let (a, b) = (w[0].totals(8), w[1].totals(8));
            assert!(a.iter().zip(&b).all(|(x, y)| y <= x));
        }
    }

    #[test]
    fn nonzero_lie_derivative_is_refused() {
        let w = crate::gstar::weil_algebra(&crate::gstar::LieAlgebraSpec::so3(), 4);
        assert!(matches!(e1_page(&w, 2), Err(AlgebraError::Refused(_))));
    }

    #[test]
    fn hopf_is_not_formal() {
        let s = fixtures::hopf_basic();
        let e = equivariant_cohomology(&s, 12).unwrap();
        let v = formality_verdict(&e, &[1, 1, 1, 1], 1, 12).unwrap();
        assert!(!v.formal);
        assert_eq!(v.method, FormalityMethod::HilbertFactorization);
        assert_eq!(v.witness_degree, Some(1));
    }

    #[test]
    fn odd_vanishing_is_formal() {
        let e = equivariant_cohomology(&fixtures::sphere2_trivial(), 10).unwrap();
        let v = formality_verdict(&e, &[1, 0, 1], 1, 10).unwrap();
        assert!(v.formal);
        assert_eq!(v.method, FormalityMethod::OddVanishing);
        assert!(v.outcomes.iter().all(|o| o.formal != Some(false)));
    }
}
