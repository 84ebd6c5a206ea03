//! Golden fixtures and the acceptance criteria shared by `fixtures run` and
//! the acceptance test target.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use foliacoh_core::cartan::{cartan_complex, equivariant_cohomology, module_presentation};
use foliacoh_core::complex::{
    alternating_sum, cohomology, les_exactness_check, split_sequence, CochainComplex, GradedVectorSpace,
};
use foliacoh_core::fixtures::{self, GStarFixture};
use foliacoh_core::foliation::{borel_check, morse_series, perfectness_check, polytope_series, PolytopeData};
use foliacoh_core::gstar::{
    basic_subcomplex, check_gstar_axioms, detect_type_c, weil_algebra, weil_model_cohomology, GStarStructure,
    GradedOperator, LieAlgebraSpec,
};
use foliacoh_core::module::{depth_dim_cm, freeness_test, koszul_tor, localized_rank, Depth, GradedModule};
use foliacoh_core::series::{MorseGap, Polynomial, RationalSeries};
use foliacoh_core::spectral::{formality_verdict, run_pages, FormalityMethod, FormalityVerdict};
use foliacoh_core::{Rational, RationalMatrix};

use crate::doc::{map_to_doc, Document, GStarDoc, ModuleDoc, MorseDoc, Payload, SesDoc, StrataDoc};
use crate::run::{emit, execute_bytes, Command, FixturesAction, FixturesArgs, Format, Invocation, ResultDocument, Status};

/// Window used by the g*-algebra fixture documents.
pub const GSTAR_WINDOW: usize = 8;
/// Window that certifies the Hopf module's Hilbert series.
pub const HOPF_MODULE_WINDOW: usize = 12;

pub fn default_fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn gstar_input_name(fixture: &str) -> String {
    format!("{}_gstar", fixture.strip_suffix("_basic").unwrap_or(fixture))
}

fn gstar_doc(f: &GStarFixture) -> Document {
    Document::new(Payload::Gstar(GStarDoc::from_structure(&f.structure, f.connection.as_deref())), Some(GSTAR_WINDOW))
}

fn module_doc(p: &foliacoh_core::module::GradedModulePresentation, closed_leaf_total: Option<usize>) -> Document {
    let mut m = ModuleDoc::from_presentation(p);
    m.closed_leaf_total = closed_leaf_total;
    Document::new(Payload::Module(m), Some(p.window()))
}

/// A fixture's module of equivariant classes, computed at `n`.
fn equivariant_module(f: &GStarFixture, n: usize) -> foliacoh_core::module::GradedModulePresentation {
    let e = equivariant_cohomology(&f.structure, n).expect("fixture cohomology");
    module_presentation(&e, f.structure.rank()).expect("abelian fixture")
}

pub fn tampered_polytopes() -> Vec<(&'static str, PolytopeData)> {
    vec![
        ("bad_euler_square", PolytopeData { f_vector: vec![4, 5, 1], q: 4, edges: None }),
        ("bad_q_segment", PolytopeData { f_vector: vec![2, 1], q: 3, edges: None }),
    ]
}

/// Every shipped input document, by file stem.
pub fn input_documents() -> Vec<(String, Document)> {
    let mut out = Vec::new();
    for f in fixtures::gstar_fixtures() {
        out.push((gstar_input_name(f.name), gstar_doc(&f)));
    }
    for (name, r) in [("weil_line_gstar", 1), ("weil_plane_gstar", 2)] {
        let w = weil_algebra(&LieAlgebraSpec::abelian(r), 10);
        out.push((name.into(), Document::new(Payload::Gstar(GStarDoc::from_structure(&w, None)), None)));
    }
    let hopf = fixtures::gstar_fixture("hopf_basic").expect("hopf fixture");
    out.push(("hopf_gstar_module".into(), module_doc(&equivariant_module(&hopf, HOPF_MODULE_WINDOW), Some(0))));
    let sphere = fixtures::gstar_fixture("sphere2_trivial").expect("sphere fixture");
    out.push(("sphere2_trivial_module".into(), module_doc(&equivariant_module(&sphere, HOPF_MODULE_WINDOW), Some(2))));
    for m in fixtures::module_fixtures() {
        out.push((format!("module_{}", m.name), module_doc(&m.module, None)));
    }
    for s in fixtures::ses_fixtures() {
        let doc = SesDoc {
            sub: ModuleDoc::from_presentation(&s.sub),
            mid: ModuleDoc::from_presentation(&s.mid),
            quot: ModuleDoc::from_presentation(&s.quot),
            inclusion: map_to_doc(&s.inclusion),
            projection: map_to_doc(&s.projection),
        };
        out.push((format!("ses_{}", s.name), Document::new(Payload::Ses(doc), Some(fixtures::MODULE_WINDOW))));
    }
    for (name, m) in fixtures::strata_fixtures() {
        let stem = if name == "hopf" { "hopf_strata".to_string() } else { name.to_string() };
        let formal = !name.starts_with("bad_") && name != "all_leaves_dense";
        out.push((stem, Document::new(Payload::Strata(StrataDoc::from_model(&m, formal)), None)));
    }
    out.push((
        "all_leaves_dense_formal".into(),
        Document::new(Payload::Strata(StrataDoc::from_model(&fixtures::all_leaves_dense(), true)), None),
    ));
    for (name, p) in fixtures::polytope_fixtures().into_iter().chain(tampered_polytopes()) {
        out.push((name.into(), Document::new(Payload::Polytope(p), None)));
    }
    for (name, data, p) in fixtures::morse_fixtures() {
        let dim_a = data.components.iter().map(|c| c.isotropy_dim).max().unwrap_or(0);
        let doc = MorseDoc { dim_a, components: data.components, basic_poincare: Some(p) };
        out.push((format!("{name}_morse"), Document::new(Payload::Morse(doc), None)));
    }
    out
}

#[derive(Clone, Debug)]
pub struct GoldenCase {
    /// `<input>.<command>`; also the golden file stem.
    pub name: String,
    pub input: String,
    pub command: Command,
}

fn commands_for(stem: &str, doc: &Document) -> Vec<Command> {
    match &doc.payload {
        Payload::Gstar(_) if stem.starts_with("weil_") => vec![Command::Validate, Command::Cohomology],
        Payload::Gstar(_) => vec![Command::Validate, Command::Cohomology, Command::Equivariant, Command::Spectral],
        Payload::Module(_) | Payload::Ses(_) => vec![Command::Module],
        Payload::Strata(_) => vec![Command::Validate, Command::Strata],
        Payload::Morse(_) => vec![Command::Morse],
        Payload::Polytope(_) => vec![Command::Validate, Command::Polytope],
    }
}

pub fn golden_cases() -> Vec<GoldenCase> {
    input_documents()
        .iter()
        .flat_map(|(stem, doc)| {
            commands_for(stem, doc).into_iter().map(move |c| GoldenCase {
                name: format!("{stem}.{}", c.name()),
                input: stem.clone(),
                command: c,
            })
        })
        .collect()
}

/// Write every input document and its golden results under `dir`.
pub fn regenerate(dir: &Path) -> std::io::Result<usize> {
    let inputs = dir.join("inputs");
    let golden = dir.join("golden");
    std::fs::create_dir_all(&inputs)?;
    std::fs::create_dir_all(&golden)?;
    let docs = input_documents();
    for (stem, doc) in &docs {
        std::fs::write(inputs.join(format!("{stem}.json")), doc.to_json())?;
    }
    let cases = golden_cases();
    let rendered: Vec<(String, String)> = cases
        .par_iter()
        .map(|c| {
            let doc = &docs.iter().find(|(s, _)| *s == c.input).expect("case input").1;
            (c.name.clone(), execute_bytes(c.command, doc.to_json().as_bytes(), None).to_json())
        })
        .collect();
    for (name, text) in &rendered {
        std::fs::write(golden.join(format!("{name}.json")), text)?;
    }
    Ok(rendered.len())
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// First differing line of two texts.
fn first_difference(expected: &str, actual: &str) -> String {
    let (mut e, mut a) = (expected.lines(), actual.lines());
    let mut line = 1;
    loop {
        match (e.next(), a.next()) {
            (None, None) => return "identical".into(),
            (x, y) if x == y => line += 1,
            (x, y) => {
                return format!("line {line}: expected {:?}, got {:?}", x.unwrap_or("<end>").trim(), y.unwrap_or("<end>").trim())
            }
        }
    }
}

pub fn run_goldens(dir: &Path, filter: Option<&str>) -> Vec<CheckOutcome> {
    let cases: Vec<GoldenCase> = golden_cases().into_iter().filter(|c| filter.is_none_or(|f| c.name.contains(f))).collect();
    cases
        .par_iter()
        .map(|c| {
            let input = dir.join("inputs").join(format!("{}.json", c.input));
            let golden = dir.join("golden").join(format!("{}.json", c.name));
            let outcome = std::fs::read(&input).map_err(|e| format!("cannot read {}: {e}", input.display())).and_then(|bytes| {
                let expected =
                    std::fs::read_to_string(&golden).map_err(|e| format!("cannot read {}: {e}", golden.display()))?;
                Ok((expected, execute_bytes(c.command, &bytes, None).to_json()))
            });
            match outcome {
                Ok((expected, actual)) if expected == actual => {
                    CheckOutcome { name: c.name.clone(), passed: true, detail: "matches golden".into() }
                }
                Ok((expected, actual)) => CheckOutcome {
                    name: c.name.clone(),
                    passed: false,
                    detail: format!("golden mismatch, {}", first_difference(&expected, &actual)),
                },
                Err(e) => CheckOutcome { name: c.name.clone(), passed: false, detail: e },
            }
        })
        .collect()
}

pub struct Criterion {
    pub id: u32,
    pub title: &'static str,
    pub check: fn() -> Result<String, String>,
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, title: "Hopf basic Betti numbers", check: hopf_betti },
        Criterion { id: 2, title: "equivariant series identity", check: series_identity },
        Criterion { id: 3, title: "polytope formula", check: polytope_formula },
        Criterion { id: 4, title: "Weil acyclicity", check: weil_acyclicity },
        Criterion { id: 5, title: "Cartan and Weil models agree", check: cartan_weil_agreement },
        Criterion { id: 6, title: "free actions: equivariant equals basic", check: free_basic_oracle },
        Criterion { id: 7, title: "spectral sequence and formality", check: spectral_formality },
        Criterion { id: 8, title: "Koszul complex and Tor", check: koszul_tor_checks },
        Criterion { id: 9, title: "Borel localization", check: borel_localization },
        Criterion { id: 10, title: "Morse perfectness", check: morse_checks },
        Criterion { id: 11, title: "property suites", check: property_suites },
        Criterion { id: 12, title: "depth, dimension and Cohen-Macaulay verdicts", check: module_verdicts },
    ]
}

pub fn run_criteria() -> Vec<CheckOutcome> {
    criteria()
        .par_iter()
        .map(|c| {
            let (passed, detail) = match (c.check)() {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CheckOutcome { name: format!("criterion {}: {}", c.id, c.title), passed, detail }
        })
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run_doc(command: Command, doc: &Document) -> ResultDocument {
    execute_bytes(command, doc.to_json().as_bytes(), None)
}

fn result_field<T: serde::de::DeserializeOwned>(r: &ResultDocument, key: &str) -> Result<T, String> {
    let v = r.results.get(key).cloned().ok_or_else(|| format!("{} result lacks {key}", r.command))?;
    serde_json::from_value(v).map_err(|e| format!("{key}: {e}"))
}

fn strata_doc(m: foliacoh_core::foliation::FoliationStrataModel, formal: bool) -> Document {
    Document::new(Payload::Strata(StrataDoc::from_model(&m, formal)), None)
}

fn hopf_betti() -> Result<String, String> {
    let expected = Polynomial::new(vec![1, 0, 1]);
    let strata = run_doc(Command::Strata, &strata_doc(fixtures::hopf_strata(), true));
    ensure(strata.status == Status::Ok, || format!("strata status {:?}: {:?}", strata.status, strata.diagnostics))?;
    let p: Polynomial = result_field(&strata, "basic_polynomial")?;
    let chi: i64 = result_field(&strata, "euler_characteristic")?;
    ensure(p == expected && chi == 2, || format!("strata gave {:?} with Euler characteristic {chi}", p.coeffs()))?;
    let seg = run_doc(Command::Polytope, &Document::new(Payload::Polytope(fixtures::segment()), None));
    let q: Polynomial = result_field(&seg, "polynomial")?;
    let chi2: i64 = result_field(&seg, "euler_characteristic")?;
    ensure(seg.status == Status::Ok && q == expected && chi2 == 2, || format!("segment gave {:?}, χ = {chi2}", q.coeffs()))?;
    Ok("strata and segment both give 1 + t², χ = 2".into())
}

fn series_identity() -> Result<String, String> {
    let r = run_doc(Command::Strata, &strata_doc(fixtures::hopf_strata(), true));
    let series: RationalSeries = result_field(&r, "equivariant_series")?;
    let expected = RationalSeries::new(Polynomial::new(vec![1, 0, 1]), 1);
    ensure(series == expected, || format!("equivariant series {series:?}"))?;
    let expansion: Vec<i64> = result_field(&r, "equivariant_expansion")?;
    // 1 + t² over 1 - t²: 1, then 2 in every positive even degree
    let oracle: Vec<i64> = (0..=20).map(|n| if n == 0 { 1 } else if n % 2 == 0 { 2 } else { 0 }).collect();
    ensure(expansion == oracle, || format!("expansion {expansion:?}"))?;
    let identity: bool = result_field(&r, "series_identity")?;
    ensure(identity, || "basic polynomial over (1 - t²) differs from the equivariant series".into())?;
    Ok("(1 + t²)/(1 - t²), identity holds through degree 20".into())
}

fn polytope_formula() -> Result<String, String> {
    let expected = [("segment", vec![1, 0, 1]), ("square", vec![1, 0, 2, 0, 1]), ("triangle", vec![1, 0, 1, 0, 1])];
    for (name, coeffs) in expected {
        let (_, p) = fixtures::polytope_fixtures().into_iter().find(|(n, _)| *n == name).expect("fixture");
        let s = polytope_series(&p).map_err(|e| format!("{name}: {e}"))?;
        ensure(s.polynomial == Polynomial::new(coeffs.clone()), || format!("{name}: got {:?}", s.polynomial.coeffs()))?;
    }
    for (name, p) in tampered_polytopes() {
        let r = run_doc(Command::Validate, &Document::new(Payload::Polytope(p), None));
        ensure(r.status == Status::InvalidInput, || format!("{name} was accepted"))?;
    }
    let rules: Vec<bool> = tampered_polytopes().iter().map(|(_, p)| !p.validate().valid).collect();
    ensure(rules.iter().all(|&b| b), || "a tampered polytope validates".into())?;
    Ok("segment, square, triangle match; tampered inputs rejected".into())
}

fn weil_acyclicity() -> Result<String, String> {
    let mut detail = String::new();
    for r in [1, 2] {
        let w = weil_algebra(&LieAlgebraSpec::abelian(r), 10);
        let stable = w.stable_through();
        let h = cohomology(&w.de_rham()).map_err(|e| e.to_string())?.dims();
        let mut expected = vec![0; stable + 1];
        expected[0] = 1;
        ensure(h[..=stable] == expected[..], || format!("W of rank {r}: {:?}", &h[..=stable]))?;
        ensure(check_gstar_axioms(&w).all_pass(), || format!("W of rank {r} fails the identities"))?;
        let _ = write!(detail, "rank {r}: ℚ through degree {stable}; ");
    }
    Ok(detail.trim_end_matches("; ").into())
}

fn cartan_weil_agreement() -> Result<String, String> {
    let mut checked = 0;
    for f in fixtures::gstar_fixtures() {
        let e = equivariant_cohomology(&f.structure, GSTAR_WINDOW).map_err(|e| format!("{}: {e}", f.name))?;
        let w = weil_model_cohomology(&f.structure, GSTAR_WINDOW).map_err(|e| format!("{}: {e}", f.name))?;
        let top = e.stable_through.min(w.stable_through);
        ensure(e.dims[..=top] == w.dims[..=top], || format!("{}: Cartan {:?} vs Weil {:?}", f.name, e.dims, w.dims))?;
        checked += top + 1;
    }
    Ok(format!("{} fixtures, {checked} degrees compared", fixtures::gstar_fixtures().len()))
}

fn free_basic_oracle() -> Result<String, String> {
    let mut names = Vec::new();
    for f in fixtures::gstar_fixtures() {
        let Some(c) = &f.connection else { continue };
        if !detect_type_c(&f.structure, c).map_err(|e| e.to_string())?.type_c {
            continue;
        }
        let e = equivariant_cohomology(&f.structure, GSTAR_WINDOW).map_err(|e| e.to_string())?;
        let basic = basic_subcomplex(&f.structure).map_err(|e| e.to_string())?;
        let bh = cohomology(&basic.complex).map_err(|e| e.to_string())?.dims();
        let top = e.stable_through.min(basic.stable_through);
        ensure(bh[..=top] == e.dims[..=top], || format!("{}: basic {:?} vs equivariant {:?}", f.name, bh, e.dims))?;
        names.push(f.name);
    }
    ensure(!names.is_empty(), || "no type (C) fixture".into())?;
    Ok(format!("agree on {}", names.join(", ")))
}

fn verdict(s: &GStarStructure, n: usize) -> Result<FormalityVerdict, String> {
    let e = equivariant_cohomology(s, n).map_err(|e| e.to_string())?;
    let h = cohomology(&s.de_rham()).map_err(|e| e.to_string())?.dims();
    formality_verdict(&e, &h[..=s.stable_through()], s.rank(), n).map_err(|e| e.to_string())
}

fn spectral_formality() -> Result<String, String> {
    let mut odd = Vec::new();
    for f in fixtures::gstar_fixtures() {
        let v = verdict(&f.structure, GSTAR_WINDOW).map_err(|e| format!("{}: {e}", f.name))?;
        if f.trivial_action {
            let seq = run_pages(&f.structure, GSTAR_WINDOW).map_err(|e| format!("{}: {e}", f.name))?;
            ensure(seq.collapse_page == 1, || format!("{} collapses at page {}", f.name, seq.collapse_page))?;
            ensure(v.formal, || format!("{} declared not formal", f.name))?;
        }
        let odd_vanishes = v.outcomes.iter().any(|o| o.method == FormalityMethod::OddVanishing && o.formal == Some(true));
        if odd_vanishes {
            ensure(v.formal, || format!("{} has vanishing odd cohomology but is declared not formal", f.name))?;
            odd.push(f.name);
        }
    }
    let hopf = fixtures::hopf_basic();
    let v = verdict(&hopf, GSTAR_WINDOW)?;
    ensure(
        !v.formal && v.method == FormalityMethod::HilbertFactorization && v.witness_degree == Some(1),
        || format!("Hopf verdict {v:?}"),
    )?;
    Ok(format!("trivial actions collapse at E1; Hopf not formal with witness t^1; odd vanishing on {}", odd.join(", ")))
}

fn koszul_tor_checks() -> Result<String, String> {
    let tor = koszul_tor(&GradedModule::new(&fixtures::residue_field(2)));
    ensure(tor.totals()[..3] == [1, 2, 1] && tor.totals()[3..].iter().all(|&x| x == 0), || format!("ℚ: {:?}", tor.totals()))?;
    let q = koszul_tor(&GradedModule::new(&fixtures::quotient_by_power(1, 0, 1)));
    ensure(q.degrees(1) == [2], || format!("S/(u): Tor_1 in degrees {:?}", q.degrees(1)))?;
    for degrees in [vec![0], vec![0, 2], vec![1, 3, 3]] {
        for r in 1..=2 {
            let t = koszul_tor(&GradedModule::new(&fixtures::free_module(r, degrees.clone())));
            ensure(t.totals()[1..].iter().all(|&x| x == 0), || format!("free module {degrees:?} over {r} variables: {:?}", t.totals()))?;
        }
    }
    let mut agree = Vec::new();
    for f in fixtures::gstar_fixtures() {
        let v = verdict(&f.structure, GSTAR_WINDOW)?;
        let fr = freeness_test(&GradedModule::new(&equivariant_module(&f, GSTAR_WINDOW)));
        ensure(fr.certified && fr.free == v.formal, || format!("{}: free {} vs formal {}", f.name, fr.free, v.formal))?;
        agree.push(f.name);
    }
    Ok(format!("Tor(ℚ) = (1,2,1); S/(u) Tor_1 in degree 2; freeness matches formality on {}", agree.len()))
}

fn borel_localization() -> Result<String, String> {
    let hopf = fixtures::gstar_fixture("hopf_basic").expect("fixture");
    let rank = localized_rank(&GradedModule::new(&equivariant_module(&hopf, HOPF_MODULE_WINDOW))).map_err(|e| e.to_string())?;
    ensure(rank == 0, || format!("Hopf localized rank {rank}"))?;
    let sphere = fixtures::gstar_fixture("sphere2_trivial").expect("fixture");
    let total: usize = cohomology(&sphere.structure.de_rham()).map_err(|e| e.to_string())?.dims().iter().sum();
    let rank2 = localized_rank(&GradedModule::new(&equivariant_module(&sphere, HOPF_MODULE_WINDOW))).map_err(|e| e.to_string())?;
    ensure(rank2 == total, || format!("trivial action: localized rank {rank2}, total {total}"))?;
    // (total dim of the algebra's cohomology, closed-leaf total, formal)
    let mut triples = Vec::new();
    for f in [&hopf, &sphere] {
        let h: usize = cohomology(&f.structure.de_rham()).map_err(|e| e.to_string())?.dims().iter().sum();
        let closed = localized_rank(&GradedModule::new(&equivariant_module(f, HOPF_MODULE_WINDOW))).map_err(|e| e.to_string())?;
        triples.push((f.name, h, closed, verdict(&f.structure, GSTAR_WINDOW)?.formal));
    }
    for (name, m) in [("hopf", fixtures::hopf_strata()), ("all_leaves_closed", fixtures::all_leaves_closed())] {
        let r = run_doc(Command::Strata, &strata_doc(m.clone(), true));
        let p: Polynomial = result_field(&r, "basic_polynomial")?;
        let closed: i64 =
            m.strata.iter().filter(|s| m.closed_leaf_components.contains(&s.name)).map(|s| s.quotient_poincare.eval(1)).sum();
        triples.push((name, p.eval(1) as usize, closed as usize, true));
    }
    for (name, h, c, formal) in &triples {
        let b = borel_check(*h, *c, *formal);
        ensure(b.consistent, || format!("{name}: {b:?}"))?;
    }
    Ok(format!("Hopf rank 0; trivial action rank {total}; {} triples consistent", triples.len()))
}

fn morse_checks() -> Result<String, String> {
    let p = Polynomial::new(vec![1, 0, 1]);
    let hopf = perfectness_check(&fixtures::hopf_morse(), &p, 1).map_err(|e| e.to_string())?;
    ensure(hopf.perfect && hopf.gap.is_perfect(), || format!("Hopf: {hopf:?}"))?;
    let np = perfectness_check(&fixtures::non_perfect_morse(), &p, 1).map_err(|e| e.to_string())?;
    let expected_q = RationalSeries::polynomial(Polynomial::new(vec![0, 1]));
    ensure(!np.perfect && np.gap == MorseGap::Satisfied { quotient: expected_q }, || format!("non-perfect: {np:?}"))?;
    let bad = perfectness_check(&fixtures::indivisible_morse(), &p, 1).map_err(|e| e.to_string())?;
    ensure(matches!(bad.gap, MorseGap::Violated { .. }), || format!("indivisible: {bad:?}"))?;
    let s = morse_series(&fixtures::hopf_morse(), 1).map_err(|e| e.to_string())?;
    ensure(
        s.equivariant.clone().canonical() == RationalSeries::new(s.basic.clone(), 1).canonical(),
        || "full-isotropy cancellation fails".into(),
    )?;
    Ok("Hopf perfect; Q = t for the non-perfect data; indivisible gap detected".into())
}

/// Variants of `s` that must fail the identities.
pub fn mutations(s: &GStarStructure) -> Vec<(&'static str, GStarStructure)> {
    let dims = s.algebra.dims().to_vec();
    let unit = s.algebra.unit();
    let bump = |op: &GradedOperator, n: usize, row: usize, col: usize| {
        let mut blocks = op.blocks().to_vec();
        blocks[n].add_to(row, col, &Rational::one());
        GradedOperator::from_blocks(&dims, op.shift(), blocks).expect("same shape")
    };
    let mut out = Vec::new();
    let mut m = s.clone();
    m.l[0] = bump(&s.l[0], 0, unit, unit);
    out.push(("lie_derivative_moves_unit", m));
    if dims.get(1).copied().unwrap_or(0) > 0 {
        let mut m = s.clone();
        m.d = bump(&s.d, 0, 0, unit);
        out.push(("d_moves_unit", m));
    }
    out
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> (RationalMatrix, RationalMatrix) {
    let mut l = RationalMatrix::identity(n);
    let mut u = RationalMatrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            l.set(i, j, Rational::from_integer(rng.gen_range(-2..=2).into()));
            u.set(j, i, Rational::from_integer(rng.gen_range(-2..=2).into()));
        }
    }
    let g = l.mul(&u);
    let inv = g.solve_matrix(&RationalMatrix::identity(n)).expect("unit triangular factors");
    (g, inv)
}

/// Random complex with known cohomology: a standard form conjugated by
/// random invertible matrices. Returns the complex and its Betti numbers.
pub fn random_complex(rng: &mut ChaCha8Rng) -> (CochainComplex, Vec<usize>) {
    let top = rng.gen_range(1..=4);
    let dims: Vec<usize> = (0..=top).map(|_| rng.gen_range(0..=6)).collect();
    let mut ranks = vec![0usize; top + 1];
    for n in 0..top {
        let prev = if n == 0 { 0 } else { ranks[n - 1] };
        let room = (dims[n] - prev).min(dims[n + 1]);
        ranks[n] = rng.gen_range(0..=room);
    }
    let changes: Vec<(RationalMatrix, RationalMatrix)> = dims.iter().map(|&d| random_invertible(rng, d)).collect();
    let diffs = (0..top)
        .map(|n| {
            let prev = if n == 0 { 0 } else { ranks[n - 1] };
            let mut d = RationalMatrix::zeros(dims[n + 1], dims[n]);
            for k in 0..ranks[n] {
                d.set(k, prev + k, Rational::one());
            }
            changes[n + 1].0.mul(&d).mul(&changes[n].1)
        })
        .collect();
    let betti = (0..=top).map(|n| dims[n] - ranks[n] - if n == 0 { 0 } else { ranks[n - 1] }).collect();
    (CochainComplex::new(GradedVectorSpace::new(dims), diffs).expect("d² = 0 by construction"), betti)
}

fn property_suites() -> Result<String, String> {
    let mut mutated = 0;
    for f in fixtures::gstar_fixtures() {
        let report = check_gstar_axioms(&f.structure);
        ensure(report.all_pass(), || format!("{} fails {:?}", f.name, report.failures()))?;
        cartan_complex(&f.structure, GSTAR_WINDOW).map_err(|e| format!("{}: Cartan differential: {e}", f.name))?;
        for (what, m) in mutations(&f.structure) {
            ensure(!check_gstar_axioms(&m).all_pass(), || format!("{}: mutation {what} passes", f.name))?;
            mutated += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for case in 0..100 {
        let (c, betti) = random_complex(&mut rng);
        let h = cohomology(&c).map_err(|e| e.to_string())?.dims();
        ensure(h == betti, || format!("random complex {case}: {h:?} vs {betti:?}"))?;
        ensure(alternating_sum(c.space().dims()) == alternating_sum(&h), || format!("random complex {case}: Euler"))?;
    }
    for case in 0..100 {
        let (a, _) = random_complex(&mut rng);
        let (b0, _) = random_complex(&mut rng);
        // same window for both ends
        let b = resize(&b0, a.top());
        let report = les_exactness_check(&split_sequence(&a, &b)).map_err(|e| format!("split case {case}: {e}"))?;
        ensure(report.exact, || format!("split case {case}: fails in degree {:?}", report.failing_degree))?;
    }
    Ok(format!("identities hold on all fixtures, {mutated} mutations caught; 100 Euler and 100 long exact sequence cases"))
}

/// Truncate or pad `c` with zero spaces to top degree `top`.
fn resize(c: &CochainComplex, top: usize) -> CochainComplex {
    let dims: Vec<usize> = (0..=top).map(|n| if n <= c.top() { c.dim(n) } else { 0 }).collect();
    let diffs = (0..top)
        .map(|n| if n < c.top() { c.differential(n) } else { RationalMatrix::zeros(dims[n + 1], dims[n]) })
        .collect();
    CochainComplex::new(GradedVectorSpace::new(dims), diffs).expect("truncation of a complex")
}

fn module_verdicts() -> Result<String, String> {
    for f in fixtures::module_fixtures() {
        let gm = GradedModule::new(&f.module);
        let v = depth_dim_cm(&gm);
        let fr = freeness_test(&gm);
        let depth = match v.depth {
            Depth::Finite(d) => Some(d),
            Depth::Infinite => None,
        };
        ensure(v.certified, || format!("{}: not certified", f.name))?;
        ensure(depth == f.depth, || format!("{}: depth {depth:?}, expected {:?}", f.name, f.depth))?;
        ensure(v.krull_dim == f.krull_dim, || format!("{}: dimension {:?}, expected {:?}", f.name, v.krull_dim, f.krull_dim))?;
        ensure(v.cohen_macaulay == Some(f.cohen_macaulay), || format!("{}: CM {:?}", f.name, v.cohen_macaulay))?;
        ensure(fr.free == f.free, || format!("{}: free {}", f.name, fr.free))?;
        let maximal_cm = v.cohen_macaulay == Some(true) && v.krull_dim == Some(f.module.dim_a());
        ensure(maximal_cm == fr.free, || format!("{}: CM of maximal dimension {maximal_cm} but free {}", f.name, fr.free))?;
    }
    for s in fixtures::ses_fixtures() {
        let (a, b, c) = (GradedModule::new(&s.sub), GradedModule::new(&s.mid), GradedModule::new(&s.quot));
        let r = foliacoh_core::module::ses_cm_check(&a, &b, &c, &s.inclusion, &s.projection).map_err(|e| format!("{}: {e}", s.name))?;
        ensure(r.status != foliacoh_core::module::SesCmStatus::Violated, || format!("{}: {:?}", s.name, r.status))?;
    }
    Ok(format!("{} modules match; CM of maximal dimension ⇔ free", fixtures::module_fixtures().len()))
}

#[derive(Serialize)]
struct SuiteReport<'a> {
    passed: bool,
    goldens: &'a [CheckOutcome],
    criteria: &'a [CheckOutcome],
}

fn line(o: &CheckOutcome) -> String {
    format!("{} {}: {}\n", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail)
}

pub fn fixtures_command(args: &FixturesArgs) -> Invocation {
    let dir = args.input.clone().unwrap_or_else(default_fixture_dir);
    match args.action {
        FixturesAction::List => {
            let mut out = String::new();
            for c in golden_cases().iter().filter(|c| args.filter.as_deref().is_none_or(|f| c.name.contains(f))) {
                let _ = writeln!(out, "{}\t{}\tinputs/{}.json", c.name, c.command.name(), c.input);
            }
            emit(0, out, args.output.as_ref())
        }
        FixturesAction::Regenerate => {
            let target = args.output.clone().unwrap_or(dir);
            match regenerate(&target) {
                Ok(n) => Invocation { code: 0, stdout: format!("wrote {n} golden files to {}\n", target.display()), stderr: String::new() },
                Err(e) => Invocation { code: 2, stdout: String::new(), stderr: format!("cannot write fixtures: {e}\n") },
            }
        }
        FixturesAction::Run => {
            let goldens = run_goldens(&dir, args.filter.as_deref());
            // the criteria are global, so a filtered run skips them
            let crit = if args.filter.is_none() { run_criteria() } else { Vec::new() };
            let passed = goldens.iter().chain(&crit).all(|o| o.passed) && !goldens.is_empty();
            let rendered = match args.format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&SuiteReport { passed, goldens: &goldens, criteria: &crit })
                        .expect("report serializes");
                    s.push('\n');
                    s
                }
                Format::Text => {
                    let mut s: String = goldens.iter().chain(&crit).map(line).collect();
                    let failed = goldens.iter().chain(&crit).filter(|o| !o.passed).count();
                    let _ = writeln!(s, "{} checks, {failed} failed", goldens.len() + crit.len());
                    s
                }
            };
            emit(if passed { 0 } else { 1 }, rendered, args.output.as_ref())
        }
    }
}

