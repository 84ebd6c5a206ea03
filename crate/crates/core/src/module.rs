//! Finitely generated graded modules over `S = ℚ[u_1, …, u_r]` with every
//! `u_i` in degree 2: Hilbert series, Koszul homology (`Tor`), depth, Krull
//! dimension, freeness and Cohen–Macaulay tests.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::linalg::{zero_vec, EchelonBasis, Rational, RationalMatrix};
use crate::series::{Polynomial, RationalSeries};

/// Exponent vector of a monomial in `u_1..u_r`.
pub type Exponent = Vec<usize>;

/// Homogeneous polynomial in `u_1..u_r` with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SPoly(pub BTreeMap<Exponent, Rational>);

impl SPoly {
    pub fn zero() -> Self {
        SPoly(BTreeMap::new())
    }

    pub fn monomial(e: Exponent, c: Rational) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(e, c);
        }
        SPoly(m)
    }

    pub fn constant(r: usize, c: Rational) -> Self {
        Self::monomial(vec![0; r], c)
    }

    /// `u_i` in `r` variables.
    pub fn variable(r: usize, i: usize) -> Self {
        let mut e = vec![0; r];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.0.iter()
    }

    /// Polynomial degree of the terms, if they all agree.
    pub fn homogeneous_degree(&self) -> Option<Option<usize>> {
        let mut degs = self.0.keys().map(|e| e.iter().sum::<usize>());
        match degs.next() {
            None => Some(None),
            Some(d) => degs.all(|x| x == d).then_some(Some(d)),
        }
    }

    pub fn add_term(&mut self, e: Exponent, c: &Rational) {
        let entry = self.0.entry(e.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&e);
        }
    }
}

/// `Σ_j components[j] · g_j = 0`, homogeneous of internal degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub degree: usize,
    pub components: Vec<SPoly>,
}

/// Generators and relations of a graded `S`-module, trusted through `window`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModulePresentation {
    dim_a: usize,
    generator_degrees: Vec<usize>,
    relations: Vec<Relation>,
    window: usize,
}

impl GradedModulePresentation {
    /// Checks that every relation is homogeneous and sized correctly.
    pub fn new(dim_a: usize, generator_degrees: Vec<usize>, relations: Vec<Relation>, window: usize) -> Result<Self> {
        for (k, rel) in relations.iter().enumerate() {
            if rel.components.len() != generator_degrees.len() {
                return Err(AlgebraError::Invalid(format!(
                    "relation {k} has {} components for {} generators",
                    rel.components.len(),
                    generator_degrees.len()
                )));
            }
            for (j, comp) in rel.components.iter().enumerate() {
                for (e, _) in comp.terms() {
                    if e.len() != dim_a {
                        return Err(AlgebraError::Invalid(format!(
                            "relation {k} uses {} variables, expected {dim_a}",
                            e.len()
                        )));
                    }
                    let deg = generator_degrees[j] + 2 * e.iter().sum::<usize>();
                    if deg != rel.degree {
                        return Err(AlgebraError::Invalid(format!(
                            "relation {k} is not homogeneous: component {j} has degree {deg}, expected {}",
                            rel.degree
                        )));
                    }
                }
            }
        }
        Ok(GradedModulePresentation { dim_a, generator_degrees, relations, window })
    }

    /// Free module with generators in the given degrees.
    pub fn free(dim_a: usize, generator_degrees: Vec<usize>, window: usize) -> Self {
        GradedModulePresentation { dim_a, generator_degrees, relations: Vec::new(), window }
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn generator_degrees(&self) -> &[usize] {
        &self.generator_degrees
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn with_window(mut self, window: usize) -> Self {
        self.window = window;
        self
    }

    /// Direct sum; both must be over the same ring.
    pub fn direct_sum(&self, other: &GradedModulePresentation) -> Result<Self> {
        if self.dim_a != other.dim_a {
            return Err(AlgebraError::Invalid("direct sum of modules over different rings".into()));
        }
        let k = self.generator_degrees.len();
        let mut degrees = self.generator_degrees.clone();
        degrees.extend(&other.generator_degrees);
        let mut relations: Vec<Relation> = self
            .relations
            .iter()
            .map(|r| {
                let mut c = r.components.clone();
                c.extend((0..other.generator_degrees.len()).map(|_| SPoly::zero()));
                Relation { degree: r.degree, components: c }
            })
            .collect();
        relations.extend(other.relations.iter().map(|r| {
            let mut c: Vec<SPoly> = (0..k).map(|_| SPoly::zero()).collect();
            c.extend(r.components.iter().cloned());
            Relation { degree: r.degree, components: c }
        }));
        Self::new(self.dim_a, degrees, relations, self.window.min(other.window))
    }
}

/// Monomials of polynomial degree `p` in `r` variables, in descending
/// lexicographic order of exponents.
pub fn monomials(r: usize, p: usize) -> Vec<Exponent> {
    fn go(r: usize, i: usize, left: usize, cur: &mut Exponent, out: &mut Vec<Exponent>) {
        if i + 1 == r {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for a in (0..=left).rev() {
            cur[i] = a;
            go(r, i + 1, left - a, cur, out);
        }
    }
    if r == 0 {
        return if p == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    go(r, 0, p, &mut vec![0; r], &mut out);
    out
}

pub fn add_exponents(a: &[usize], b: &[usize]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Basis `(generator, monomial)` of the free module in one internal degree.
#[derive(Clone, Debug)]
pub struct FreeDegree {
    pub basis: Vec<(usize, Exponent)>,
    index: HashMap<(usize, Exponent), usize>,
}

impl FreeDegree {
    pub fn new(dim_a: usize, generator_degrees: &[usize], n: usize) -> Self {
        let mut basis = Vec::new();
        for (j, &g) in generator_degrees.iter().enumerate() {
            if g <= n && (n - g).is_multiple_of(2) {
                for e in monomials(dim_a, (n - g) / 2) {
                    basis.push((j, e));
                }
            }
        }
        let index = basis.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        FreeDegree { basis, index }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn position(&self, generator: usize, e: &[usize]) -> Option<usize> {
        self.index.get(&(generator, e.to_vec())).copied()
    }

    /// `u^shift · components` as a vector in this degree.
    pub fn embed(&self, components: &[SPoly], shift: &[usize]) -> Vec<Rational> {
        let mut v = zero_vec(self.dim());
        for (j, comp) in components.iter().enumerate() {
            for (e, c) in comp.terms() {
                let pos = self.position(j, &add_exponents(e, shift)).expect("homogeneous element fits its degree");
                v[pos] += c;
            }
        }
        v
    }
}

/// One internal degree of the module: the free part modulo relations.
#[derive(Clone, Debug)]
pub struct ModuleDegree {
    pub free: FreeDegree,
    relations: EchelonBasis,
    /// Free positions whose cosets form the basis of `M_n`.
    quotient_basis: Vec<usize>,
}

impl ModuleDegree {
    pub fn dim(&self) -> usize {
        self.quotient_basis.len()
    }

    /// Coordinates in `M_n` of a free-module vector.
    pub fn coords(&self, v: &[Rational]) -> Vec<Rational> {
        let r = self.relations.reduce(v);
        self.quotient_basis.iter().map(|&i| r[i].clone()).collect()
    }

    pub fn lift(&self, k: usize) -> (usize, &Exponent) {
        let (j, e) = &self.free.basis[self.quotient_basis[k]];
        (*j, e)
    }
}

/// A presentation evaluated degree by degree through its window, with the
/// action of every `u_i`.
#[derive(Clone, Debug)]
pub struct GradedModule {
    pub presentation: GradedModulePresentation,
    pub degrees: Vec<ModuleDegree>,
    /// `u_action[i][n] : M_n -> M_{n+2}` for `n + 2 <= window`.
    pub u_action: Vec<Vec<RationalMatrix>>,
}

impl GradedModule {
    pub fn new(p: &GradedModulePresentation) -> Self {
        let r = p.dim_a;
        let degrees: Vec<ModuleDegree> = (0..=p.window)
            .map(|n| {
                let free = FreeDegree::new(r, &p.generator_degrees, n);
                let mut relations = EchelonBasis::new(free.dim());
                for rel in &p.relations {
                    if rel.degree <= n && (n - rel.degree) % 2 == 0 {
                        for shift in monomials(r, (n - rel.degree) / 2) {
                            relations.insert(&free.embed(&rel.components, &shift));
                        }
                    }
                }
                let pivots = relations.pivots();
                let quotient_basis = (0..free.dim()).filter(|i| !pivots.contains(i)).collect();
                ModuleDegree { free, relations, quotient_basis }
            })
            .collect();
        let u_action = (0..r)
            .map(|i| {
                (0..=p.window.saturating_sub(2))
                    .filter(|&n| n + 2 <= p.window)
                    .map(|n| {
                        let (src, dst) = (&degrees[n], &degrees[n + 2]);
                        let cols: Vec<Vec<Rational>> = (0..src.dim())
                            .map(|k| {
                                let (j, e) = src.lift(k);
                                let mut e2 = e.clone();
                                e2[i] += 1;
                                let mut v = zero_vec(dst.free.dim());
                                v[dst.free.position(j, &e2).expect("shifted monomial")] = Rational::one();
                                dst.coords(&v)
                            })
                            .collect();
                        RationalMatrix::from_columns(dst.dim(), &cols)
                    })
                    .collect()
            })
            .collect();
        GradedModule { presentation: p.clone(), degrees, u_action }
    }

    pub fn dim_a(&self) -> usize {
        self.presentation.dim_a
    }

    pub fn window(&self) -> usize {
        self.presentation.window
    }

    pub fn dim(&self, n: usize) -> usize {
        self.degrees.get(n).map_or(0, ModuleDegree::dim)
    }

    pub fn hilbert_function(&self) -> Vec<usize> {
        self.degrees.iter().map(ModuleDegree::dim).collect()
    }

    /// `u_i` applied to coordinates in degree `n`.
    pub fn act(&self, i: usize, n: usize, v: &[Rational]) -> Vec<Rational> {
        self.u_action[i][n].mul_vec(v)
    }

    /// Coordinates of `Σ_j components[j] g_j` (homogeneous of degree `n`).
    pub fn element(&self, n: usize, components: &[SPoly]) -> Vec<Rational> {
        let d = &self.degrees[n];
        d.coords(&d.free.embed(components, &vec![0; self.dim_a()]))
    }
}

/// Hilbert function through the window, with a closed form when the data
/// certify one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSeriesWindow {
    pub coefficients: Vec<usize>,
    /// `(1 - t²)^r · h`, truncated to the window.
    pub numerator_window: Vec<i64>,
    pub closed_form: Option<RationalSeries>,
    pub certified: bool,
}

pub fn hilbert(m: &GradedModule) -> HilbertSeriesWindow {
    let h = m.hilbert_function();
    let r = m.dim_a() as u32;
    let window = m.window();
    let hp = Polynomial::new(h.iter().map(|&x| x as i64).collect());
    let p = &hp * &Polynomial::one_minus_t2().pow(r);
    let numerator_window = p.window(window);
    let last = numerator_window.iter().rposition(|&c| c != 0).unwrap_or(0);
    // certified: at least r + deg p + 2 trailing coefficients confirm it
    let certified = window >= last && window - last >= r as usize + last + 2;
    let closed_form = certified.then(|| RationalSeries::new(Polynomial::new(numerator_window[..=last].to_vec()), r));
    HilbertSeriesWindow { coefficients: h, numerator_window, closed_form, certified }
}

/// `Tor_i` dimensions, `dims[i][n]` for homological degree `i` and internal
/// degree `n` through the window, from the Koszul complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorTable {
    pub dims: Vec<Vec<usize>>,
}

impl TorTable {
    pub fn total(&self, i: usize) -> usize {
        self.dims.get(i).map_or(0, |v| v.iter().sum())
    }

    pub fn totals(&self) -> Vec<usize> {
        (0..self.dims.len()).map(|i| self.total(i)).collect()
    }

    /// Largest `i` with nonzero `Tor_i`.
    pub fn top_nonzero(&self) -> Option<usize> {
        (0..self.dims.len()).rev().find(|&i| self.total(i) > 0)
    }

    /// `(internal degree, multiplicity)` pairs of `Tor_i`.
    pub fn degrees(&self, i: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (n, &d) in self.dims[i].iter().enumerate() {
            out.extend(std::iter::repeat_n(n, d));
        }
        out
    }
}

fn subsets(r: usize, i: usize) -> Vec<Vec<usize>> {
    fn go(r: usize, i: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == i {
            out.push(cur.clone());
            return;
        }
        for k in start..r {
            cur.push(k);
            go(r, i, k + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(r, i, 0, &mut Vec::new(), &mut out);
    out
}

/// Koszul differential `K_i -> K_{i-1}` in internal degree `n`:
/// `m e_J ↦ Σ_k (-1)^k u_{j_k} m e_{J \ j_k}`.
fn koszul_differential(m: &GradedModule, i: usize, n: usize) -> RationalMatrix {
    let r = m.dim_a();
    let src_sets = subsets(r, i);
    let dst_sets = subsets(r, i - 1);
    let src_deg = n - 2 * i;
    let dst_deg = n - 2 * (i - 1);
    let (sd, dd) = (m.dim(src_deg), m.dim(dst_deg));
    let mut out = RationalMatrix::zeros(dst_sets.len() * dd, src_sets.len() * sd);
    for (a, set) in src_sets.iter().enumerate() {
        for (k, &var) in set.iter().enumerate() {
            let mut rest = set.clone();
            rest.remove(k);
            let b = dst_sets.iter().position(|s| *s == rest).expect("subset");
            let sg = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
            let u = &m.u_action[var][src_deg];
            for row in 0..dd {
                for col in 0..sd {
                    let c = u.get(row, col);
                    if !c.is_zero() {
                        out.add_to(b * dd + row, a * sd + col, &(c * &sg));
                    }
                }
            }
        }
    }
    out
}

pub fn koszul_tor(m: &GradedModule) -> TorTable {
    let r = m.dim_a();
    let window = m.window();
    let dims = (0..=r)
        .map(|i| {
            (0..=window)
                .map(|n| {
                    if n < 2 * i {
                        return 0;
                    }
                    let size = subsets(r, i).len() * m.dim(n - 2 * i);
                    let rank_out = if i == 0 { 0 } else { koszul_differential(m, i, n).rank() };
                    let rank_in = if i == r || n < 2 * (i + 1) { 0 } else { koszul_differential(m, i + 1, n).rank() };
                    size - rank_out - rank_in
                })
                .collect()
        })
        .collect();
    TorTable { dims }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessResult {
    pub free: bool,
    /// Degrees of a minimal basis, from `Tor_0`.
    pub ranks: Vec<usize>,
    /// Whether the window reaches `2 r` above the top generator.
    pub certified: bool,
}

pub fn freeness_test(m: &GradedModule) -> FreenessResult {
    let tor = koszul_tor(m);
    let top_gen = m.presentation.generator_degrees.iter().copied().max().unwrap_or(0);
    FreenessResult {
        free: tor.total(1) == 0,
        ranks: tor.degrees(0),
        certified: m.window() >= 2 * m.dim_a() + top_gen,
    }
}

/// Rank over the fraction field: `(1 - t²)^r h` evaluated at `t = 1`.
pub fn localized_rank(m: &GradedModule) -> Result<usize> {
    let h = hilbert(m);
    if !h.certified {
        return Err(AlgebraError::Inconclusive(format!(
            "window {} is too short to certify the Hilbert series",
            m.window()
        )));
    }
    let value: i64 = h.numerator_window.iter().sum();
    usize::try_from(value).map_err(|_| AlgebraError::Internal("negative localized rank".into()))
}

/// Order of vanishing at `t = 1`.
pub fn order_at_one(p: &Polynomial) -> usize {
    let mut q = p.coeffs().to_vec();
    let mut order = 0;
    while !q.is_empty() && q.iter().sum::<i64>() == 0 {
        // synthetic division by (t - 1)
        let d = q.len() - 1;
        let mut out = vec![0i64; d];
        let mut carry = 0;
        for k in (1..=d).rev() {
            carry += q[k];
            out[k - 1] = carry;
        }
        q = Polynomial::new(out).coeffs().to_vec();
        order += 1;
    }
    order
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Depth {
    Finite(usize),
    /// Depth of the zero module.
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthDimCm {
    pub certified: bool,
    pub depth: Depth,
    /// `None` for the zero module or when not certified.
    pub krull_dim: Option<usize>,
    pub cohen_macaulay: Option<bool>,
    pub tor_totals: Vec<usize>,
}

/// Depth from Koszul homology, Krull dimension from the pole order at
/// `t = 1` of the certified Hilbert series.
pub fn depth_dim_cm(m: &GradedModule) -> DepthDimCm {
    let tor = koszul_tor(m);
    let r = m.dim_a();
    let depth = match tor.top_nonzero() {
        Some(i) => Depth::Finite(r - i),
        None => Depth::Infinite,
    };
    let h = hilbert(m);
    let is_zero = h.coefficients.iter().all(|&c| c == 0);
    let krull_dim = if h.certified && !is_zero {
        let p = h.closed_form.as_ref().expect("certified").numerator_at(r as u32);
        Some(r - order_at_one(&p))
    } else {
        None
    };
    let cohen_macaulay = match (depth, krull_dim) {
        (Depth::Finite(d), Some(k)) => Some(d == k),
        _ => None,
    };
    DepthDimCm { certified: h.certified, depth, krull_dim, cohen_macaulay, tor_totals: tor.totals() }
}

/// A graded homomorphism given by the images of the source generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    /// `images[j]` expresses the image of source generator `j` in the
    /// target generators.
    pub images: Vec<Vec<SPoly>>,
}

impl ModuleMap {
    /// Matrix `M_n -> N_n` in quotient coordinates.
    pub fn matrix(&self, src: &GradedModule, dst: &GradedModule, n: usize) -> RationalMatrix {
        let (s, d) = (&src.degrees[n], &dst.degrees[n]);
        let cols: Vec<Vec<Rational>> = (0..s.dim())
            .map(|k| {
                let (j, e) = s.lift(k);
                d.coords(&d.free.embed(&self.images[j], e))
            })
            .collect();
        RationalMatrix::from_columns(d.dim(), &cols)
    }

    fn validate(&self, src: &GradedModule, dst: &GradedModule) -> Result<()> {
        let p = &src.presentation;
        if self.images.len() != p.generator_degrees.len() {
            return Err(AlgebraError::Invalid("one image per source generator is required".into()));
        }
        for (j, img) in self.images.iter().enumerate() {
            if img.len() != dst.presentation.generator_degrees.len() {
                return Err(AlgebraError::Invalid(format!("image of generator {j} has the wrong length")));
            }
            for (t, comp) in img.iter().enumerate() {
                for (e, _) in comp.terms() {
                    if dst.presentation.generator_degrees[t] + 2 * e.iter().sum::<usize>() != p.generator_degrees[j] {
                        return Err(AlgebraError::Invalid(format!("image of generator {j} is not homogeneous")));
                    }
                }
            }
        }
        // relations must map to zero
        for rel in &p.relations {
            if rel.degree > dst.window() {
                continue;
            }
            let mut image: Vec<SPoly> = (0..dst.presentation.generator_degrees.len()).map(|_| SPoly::zero()).collect();
            for (j, comp) in rel.components.iter().enumerate() {
                for (e, c) in comp.terms() {
                    for (t, target) in self.images[j].iter().enumerate() {
                        for (e2, c2) in target.terms() {
                            image[t].add_term(add_exponents(e, e2), &(c * c2));
                        }
                    }
                }
            }
            if dst.element(rel.degree, &image).iter().any(|c| !c.is_zero()) {
                return Err(AlgebraError::Invalid("map does not respect the relations".into()));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SesCmStatus {
    /// Outer terms are CM of equal dimension and the middle term is too.
    Verified,
    /// Outer terms are CM of equal dimension but the middle term is not.
    Violated,
    HypothesesNotMet,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SesCmReport {
    pub status: SesCmStatus,
    pub sub: DepthDimCm,
    pub mid: DepthDimCm,
    pub quot: DepthDimCm,
}

/// For `0 -> A -> B -> C -> 0`: when `A` and `C` are Cohen–Macaulay of the
/// same dimension, so is `B`.
pub fn ses_cm_check(
    a: &GradedModule,
    b: &GradedModule,
    c: &GradedModule,
    f: &ModuleMap,
    g: &ModuleMap,
) -> Result<SesCmReport> {
    if a.dim_a() != b.dim_a() || b.dim_a() != c.dim_a() {
        return Err(AlgebraError::Invalid("modules over different rings".into()));
    }
    f.validate(a, b)?;
    g.validate(b, c)?;
    let window = a.window().min(b.window()).min(c.window());
    for n in 0..=window {
        let fm = f.matrix(a, b, n);
        let gm = g.matrix(b, c, n);
        let bad = |reason: &str| Err(AlgebraError::NotShortExact { degree: n, reason: reason.into() });
        if fm.rank() != a.dim(n) {
            return bad("first map is not injective");
        }
        if gm.rank() != c.dim(n) {
            return bad("second map is not surjective");
        }
        if !gm.mul(&fm).is_zero() {
            return bad("composite of the two maps is nonzero");
        }
        if a.dim(n) + c.dim(n) != b.dim(n) {
            return bad("image of the first map differs from the kernel of the second");
        }
    }
    let (sa, sb, sc) = (depth_dim_cm(a), depth_dim_cm(b), depth_dim_cm(c));
    let status = if !(sa.certified && sb.certified && sc.certified) {
        SesCmStatus::Inconclusive
    } else if sa.cohen_macaulay == Some(true) && sc.cohen_macaulay == Some(true) && sa.krull_dim == sc.krull_dim {
        if sb.cohen_macaulay == Some(true) && sb.krull_dim == sa.krull_dim {
            SesCmStatus::Verified
        } else {
            SesCmStatus::Violated
        }
    } else {
        SesCmStatus::HypothesesNotMet
    };
    Ok(SesCmReport { status, sub: sa, mid: sb, quot: sc })
}

/// Identity map on generators (`images[j] = g_j`).
pub fn identity_images(degrees: usize, r: usize) -> Vec<Vec<SPoly>> {
    (0..degrees)
        .map(|j| (0..degrees).map(|t| if t == j { SPoly::constant(r, Rational::one()) } else { SPoly::zero() }).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn quotient_by_u_power(k: usize, window: usize) -> GradedModulePresentation {
        let rel = Relation { degree: 2 * k, components: vec![SPoly::monomial(vec![k], rat(1))] };
        GradedModulePresentation::new(1, vec![0], vec![rel], window).unwrap()
    }

    fn residue_field(r: usize, window: usize) -> GradedModulePresentation {
        let rels = (0..r)
            .map(|i| Relation { degree: 2, components: vec![SPoly::variable(r, i)] })
            .collect();
        GradedModulePresentation::new(r, vec![0], rels, window).unwrap()
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(monomials(0, 0), vec![Vec::<usize>::new()]);
        assert!(monomials(0, 1).is_empty());
    }

    #[test]
    fn hilbert_of_basic_modules() {
        let free = GradedModule::new(&GradedModulePresentation::free(1, vec![0], 8));
        assert_eq!(hilbert(&free).coefficients, vec![1, 0, 1, 0, 1, 0, 1, 0, 1]);
        let q = GradedModule::new(&quotient_by_u_power(1, 8));
        assert_eq!(hilbert(&q).coefficients, vec![1, 0, 0, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn tor_of_residue_field() {
        let k = GradedModule::new(&residue_field(2, 10));
        let tor = koszul_tor(&k);
        assert_eq!(tor.totals(), vec![1, 2, 1]);
        assert_eq!(tor.degrees(1), vec![2, 2]);
        assert_eq!(tor.degrees(2), vec![4]);
    }

    #[test]
    fn tor_of_quotient_by_u() {
        let tor = koszul_tor(&GradedModule::new(&quotient_by_u_power(1, 8)));
        assert_eq!(tor.degrees(0), vec![0]);
        assert_eq!(tor.degrees(1), vec![2]);
    }

    #[test]
    fn quotient_by_u_squared_is_not_free() {
        let m = GradedModule::new(&quotient_by_u_power(2, 8));
        let f = freeness_test(&m);
        assert!(!f.free);
        assert_eq!(koszul_tor(&m).degrees(1), vec![4]);
    }

    #[test]
    fn free_rank_two() {
        let m = GradedModule::new(&GradedModulePresentation::free(1, vec![0, 2], 10));
        let f = freeness_test(&m);
        assert!(f.free && f.certified);
        assert_eq!(f.ranks, vec![0, 2]);
        assert_eq!(localized_rank(&m).unwrap(), 2);
    }

    #[test]
    fn localized_rank_is_additive() {
        let m = GradedModulePresentation::free(1, vec![0], 12).direct_sum(&quotient_by_u_power(1, 12)).unwrap();
        assert_eq!(localized_rank(&GradedModule::new(&m)).unwrap(), 1);
    }

    #[test]
    fn short_window_is_inconclusive() {
        let m = GradedModule::new(&GradedModulePresentation::free(2, vec![0], 2));
        assert!(matches!(localized_rank(&m), Err(AlgebraError::Inconclusive(_))));
        assert!(!depth_dim_cm(&m).certified);
    }

    #[test]
    fn order_at_one_counts_factors() {
        assert_eq!(order_at_one(&Polynomial::new(vec![1, 0, -1])), 1);
        assert_eq!(order_at_one(&Polynomial::one_minus_t2().pow(2)), 2);
        assert_eq!(order_at_one(&Polynomial::new(vec![2, 0, -1])), 0);
    }

    #[test]
    fn depth_of_residue_field() {
        let d = depth_dim_cm(&GradedModule::new(&residue_field(2, 12)));
        assert_eq!(d.depth, Depth::Finite(0));
        assert_eq!(d.krull_dim, Some(0));
        assert_eq!(d.cohen_macaulay, Some(true));
    }

    #[test]
    fn zero_module_has_infinite_depth() {
        let rel = Relation { degree: 0, components: vec![SPoly::constant(1, rat(1))] };
        let m = GradedModulePresentation::new(1, vec![0], vec![rel], 8).unwrap();
        let d = depth_dim_cm(&GradedModule::new(&m));
        assert_eq!(d.depth, Depth::Infinite);
        assert_eq!(d.krull_dim, None);
    }

    #[test]
    fn inhomogeneous_relation_is_rejected() {
        let rel = Relation { degree: 2, components: vec![SPoly::monomial(vec![2], rat(1))] };
        assert!(GradedModulePresentation::new(1, vec![0], vec![rel], 8).is_err());
    }

    #[test]
    fn ses_of_free_modules_is_verified() {
        let s = GradedModulePresentation::free(1, vec![0], 10);
        let ss = GradedModulePresentation::free(1, vec![0, 0], 10);
        let (a, b) = (GradedModule::new(&s), GradedModule::new(&ss));
        let one = SPoly::constant(1, rat(1));
        let f = ModuleMap { images: vec![vec![one.clone(), SPoly::zero()]] };
        let g = ModuleMap { images: vec![vec![SPoly::zero()], vec![one]] };
        let r = ses_cm_check(&a, &b, &a, &f, &g).unwrap();
        assert_eq!(r.status, SesCmStatus::Verified);
        assert_eq!(r.mid.krull_dim, Some(1));
    }

    #[test]
    fn ses_with_torsion_quotient_misses_hypotheses() {
        // 0 -> S --u--> S -> S/(u) -> 0
        let s = GradedModulePresentation::free(1, vec![0], 10);
        let shifted = GradedModulePresentation::free(1, vec![2], 10);
        let q = quotient_by_u_power(1, 10);
        let (a, b, c) = (GradedModule::new(&shifted), GradedModule::new(&s), GradedModule::new(&q));
        let f = ModuleMap { images: vec![vec![SPoly::variable(1, 0)]] };
        let g = ModuleMap { images: vec![vec![SPoly::constant(1, rat(1))]] };
        let r = ses_cm_check(&a, &b, &c, &f, &g).unwrap();
        assert_eq!(r.status, SesCmStatus::HypothesesNotMet);
    }

    #[test]
    fn non_exact_maps_are_an_error() {
        let s = GradedModulePresentation::free(1, vec![0], 6);
        let a = GradedModule::new(&s);
        let zero = ModuleMap { images: vec![vec![SPoly::zero()]] };
        assert!(matches!(ses_cm_check(&a, &a, &a, &zero, &zero), Err(AlgebraError::NotShortExact { .. })));
    }
}
