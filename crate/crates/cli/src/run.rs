//! Subcommands, result documents and exit codes.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use foliacoh_core::cartan::{equivariant_cohomology, module_presentation};
use foliacoh_core::complex::cohomology;
use foliacoh_core::foliation::{
    basic_series_formal, borel_check, equivariant_series_from_strata, localization_rank_check, morse_series,
    perfectness_check, polytope_series, validate_strata, FormalitySource, ValidationReport,
};
use foliacoh_core::gstar::{basic_subcomplex, check_gstar_axioms, detect_type_c, require_axioms, weil_model_cohomology, GStarStructure};
use foliacoh_core::module::{
    depth_dim_cm, freeness_test, hilbert, koszul_tor, localized_rank, ses_cm_check, GradedModule, SesCmStatus,
};
use foliacoh_core::series::{euler_at_minus_one, MorseGap, RationalSeries};
use foliacoh_core::spectral::{formality_verdict, run_pages};
use foliacoh_core::{AlgebraError, RationalMatrix};

use crate::doc::{format_rational, map_from_doc, Document, GStarDoc, ModuleDoc, Payload, SesDoc, SCHEMA_VERSION};

pub const DEFAULT_GSTAR_WINDOW: usize = 8;
pub const DEFAULT_SERIES_WINDOW: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    VerdictFailed,
    InvalidInput,
    Inconclusive,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::VerdictFailed => 1,
            Status::InvalidInput => 2,
            Status::Inconclusive => 3,
        }
    }

    /// The worse of two statuses; input problems dominate.
    fn max(self, other: Status) -> Status {
        let rank = |s: Status| match s {
            Status::Ok => 0,
            Status::Inconclusive => 1,
            Status::VerdictFailed => 2,
            Status::InvalidInput => 3,
        };
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

pub fn status_of(err: &AlgebraError) -> Status {
    match err {
        AlgebraError::Inconclusive(_) => Status::Inconclusive,
        AlgebraError::Refused(_) | AlgebraError::Internal(_) | AlgebraError::NotAChainMap(_) => Status::VerdictFailed,
        _ => Status::InvalidInput,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Validate,
    Cohomology,
    Equivariant,
    Spectral,
    Module,
    Strata,
    Morse,
    Polytope,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Cohomology => "cohomology",
            Command::Equivariant => "equivariant",
            Command::Spectral => "spectral",
            Command::Module => "module",
            Command::Strata => "strata",
            Command::Morse => "morse",
            Command::Polytope => "polytope",
        }
    }

    pub fn parse(name: &str) -> Option<Command> {
        Command::value_variants().iter().copied().find(|c| c.name() == name)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultDocument {
    pub schema_version: u32,
    pub command: String,
    pub input_sha256: String,
    pub status: Status,
    pub results: Value,
    pub diagnostics: Vec<String>,
}

impl ResultDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("results serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "status: {}", json!(self.status).as_str().unwrap_or_default());
        if let Value::Object(map) = &self.results {
            for (k, v) in map {
                let _ = writeln!(out, "{k}: {v}");
            }
        }
        for d in &self.diagnostics {
            let _ = writeln!(out, "note: {d}");
        }
        out
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// What a command produced before it is wrapped in a document.
struct Outcome {
    status: Status,
    results: Map<String, Value>,
    diagnostics: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { status: Status::Ok, results: Map::new(), diagnostics: Vec::new() }
    }

    fn put(&mut self, key: &str, v: impl Serialize) {
        self.results.insert(key.into(), serde_json::to_value(v).expect("results serialize"));
    }

    fn flag(&mut self, status: Status, msg: impl Into<String>) {
        self.status = self.status.max(status);
        self.diagnostics.push(msg.into());
    }

    fn fail(err: &AlgebraError) -> Self {
        let mut o = Outcome::new();
        o.flag(status_of(err), err.to_string());
        o
    }
}

/// Run `command` on raw input bytes. Never panics on bad input.
pub fn execute_bytes(command: Command, input: &[u8], max_degree: Option<usize>) -> ResultDocument {
    let hash = sha256_hex(input);
    let outcome = match std::str::from_utf8(input) {
        Err(_) => {
            let mut o = Outcome::new();
            o.flag(Status::InvalidInput, "input is not UTF-8");
            o
        }
        Ok(text) => match Document::parse(text) {
            Err(e) => {
                let mut o = Outcome::new();
                o.flag(Status::InvalidInput, e.to_string());
                o
            }
            Ok(doc) => dispatch(command, &doc, max_degree),
        },
    };
    ResultDocument {
        schema_version: SCHEMA_VERSION,
        command: command.name().into(),
        input_sha256: hash,
        status: outcome.status,
        results: Value::Object(outcome.results),
        diagnostics: outcome.diagnostics,
    }
}

fn dispatch(command: Command, doc: &Document, max_degree: Option<usize>) -> Outcome {
    let window = max_degree.or(doc.window);
    let wrong_kind = |expected: &str| {
        let mut o = Outcome::new();
        o.flag(Status::InvalidInput, format!("`{}` expects a {expected} document", command.name()));
        o
    };
    match (command, &doc.payload) {
        (Command::Validate, p) => validate(p, window),
        (Command::Cohomology, Payload::Gstar(g)) => gstar_or_fail(g, |s, o| cohomology_cmd(s, g, o)),
        (Command::Equivariant, Payload::Gstar(g)) => {
            gstar_or_fail(g, |s, o| equivariant_cmd(s, g, window.unwrap_or(DEFAULT_GSTAR_WINDOW), o))
        }
        (Command::Spectral, Payload::Gstar(g)) => {
            gstar_or_fail(g, |s, o| spectral_cmd(s, window.unwrap_or(DEFAULT_GSTAR_WINDOW), o))
        }
        (Command::Cohomology | Command::Equivariant | Command::Spectral, _) => wrong_kind("gstar_algebra"),
        (Command::Module, Payload::Module(m)) => module_cmd(m, window.unwrap_or(foliacoh_core::fixtures::MODULE_WINDOW)),
        (Command::Module, Payload::Ses(s)) => ses_cmd(s, window.unwrap_or(foliacoh_core::fixtures::MODULE_WINDOW)),
        (Command::Module, _) => wrong_kind("module_presentation or ses"),
        (Command::Strata, Payload::Strata(s)) => strata_cmd(s, window.unwrap_or(DEFAULT_SERIES_WINDOW)),
        (Command::Strata, _) => wrong_kind("strata_model"),
        (Command::Morse, Payload::Morse(m)) => morse_cmd(m),
        (Command::Morse, _) => wrong_kind("morse_data"),
        (Command::Polytope, Payload::Polytope(p)) => polytope_cmd(p),
        (Command::Polytope, _) => wrong_kind("polytope"),
    }
}

fn gstar_or_fail(g: &GStarDoc, f: impl FnOnce(&GStarStructure, &mut Outcome) -> Result<(), AlgebraError>) -> Outcome {
    let s = match g.to_structure() {
        Ok(s) => s,
        Err(e) => {
            let mut o = Outcome::new();
            o.flag(Status::InvalidInput, e.to_string());
            return o;
        }
    };
    let mut o = Outcome::new();
    if let Err(e) = f(&s, &mut o) {
        o.flag(status_of(&e), e.to_string());
    }
    o
}

/// Plain statement of each strata or polytope rule, for exit-2 messages.
pub fn rule_statement(rule: &str) -> &'static str {
    match rule {
        "isotropy_bounded_by_rank" => "isotropy dimension cannot exceed the rank of the structural algebra",
        "codimension_bounded_by_q" => "stratum codimension cannot exceed the foliation codimension q",
        "nonnegative_poincare" => "quotient Poincaré polynomials have non-negative coefficients",
        "closed_leaves_are_strata" => "closed-leaf components must name strata",
        "closed_leaves_have_full_isotropy" => "closed leaves have isotropy equal to the full structural algebra",
        "closed_leaf_even_codimension" => "closed-leaf strata have even codimension",
        "isolated_closed_leaf_even_q" => "an isolated closed leaf forces the codimension q to be even",
        "closed_leaf_bounds_rank" => "a closed leaf forces 2 dim a <= q",
        "nonempty_f_vector" => "the f-vector must be nonempty",
        "single_top_face" => "a polytope has exactly one top-dimensional face",
        "euler_relation" => "face counts satisfy the Euler relation",
        "codimension_twice_dimension" => "the foliation codimension is twice the polytope dimension",
        "edge_count" => "the edge list matches the number of edges",
        "edge_endpoints" => "edges join distinct existing vertices",
        "simple" => "every vertex of a simple polytope meets exactly n edges",
        _ => "model invariant",
    }
}

fn report_violations(o: &mut Outcome, report: &ValidationReport) {
    for v in &report.violations {
        o.flag(Status::InvalidInput, format!("{}: {} ({})", v.rule, rule_statement(v.rule), v.detail));
    }
}

fn validate(p: &Payload, window: Option<usize>) -> Outcome {
    let mut o = Outcome::new();
    match p {
        Payload::Gstar(g) => {
            let s = match g.to_structure() {
                Ok(s) => s,
                Err(e) => {
                    o.flag(Status::InvalidInput, e.to_string());
                    return o;
                }
            };
            let report = check_gstar_axioms(&s);
            o.put("algebra_dims", s.algebra.dims());
            o.put("stable_through", s.stable_through());
            o.put("axioms", &report);
            if let Some(msg) = &report.algebra_failure {
                o.flag(Status::InvalidInput, format!("algebra: {msg}"));
            }
            for name in report.failures() {
                o.flag(Status::InvalidInput, format!("axiom fails: {name}"));
            }
            type_c_result(&s, g, &mut o);
        }
        Payload::Strata(m) => {
            let report = validate_strata(&m.model());
            o.put("validation", &report);
            report_violations(&mut o, &report);
        }
        Payload::Morse(m) => {
            let report = m.data().validate(m.dim_a);
            o.put("validation", &report);
            report_violations(&mut o, &report);
        }
        Payload::Polytope(p) => {
            let report = p.validate();
            o.put("validation", &report);
            report_violations(&mut o, &report);
        }
        Payload::Module(m) => match m.presentation(window.unwrap_or(foliacoh_core::fixtures::MODULE_WINDOW)) {
            Ok(p) => {
                o.put("generators", p.generator_degrees().len());
                o.put("relations", p.relations().len());
            }
            Err(e) => o.flag(Status::InvalidInput, e.to_string()),
        },
        Payload::Ses(s) => {
            if let Err((status, msg)) = ses_modules(s, window.unwrap_or(foliacoh_core::fixtures::MODULE_WINDOW))
                .and_then(|(a, b, c, f, g)| ses_cm_check(&a, &b, &c, &f, &g).map_err(|e| (status_of(&e), e.to_string())))
            {
                o.flag(status, msg);
            } else {
                o.put("short_exact", true);
            }
        }
    }
    o
}

fn type_c_result(s: &GStarStructure, g: &GStarDoc, o: &mut Outcome) -> Option<bool> {
    match g.connection_vectors() {
        Ok(Some(c)) => match detect_type_c(s, &c) {
            Ok(t) => {
                o.put("connection", t);
                Some(t.type_c)
            }
            Err(e) => {
                o.flag(status_of(&e), e.to_string());
                None
            }
        },
        Ok(None) => None,
        Err(e) => {
            o.flag(Status::InvalidInput, e.to_string());
            None
        }
    }
}

fn cohomology_dims(s: &GStarStructure) -> Result<Vec<usize>, AlgebraError> {
    let h = cohomology(&s.de_rham())?;
    Ok(h.dims()[..=s.stable_through()].to_vec())
}

fn cohomology_cmd(s: &GStarStructure, g: &GStarDoc, o: &mut Outcome) -> Result<(), AlgebraError> {
    require_axioms(s)?;
    let stable = s.stable_through();
    o.put("stable_through", stable);
    o.put("algebra_dims", s.algebra.dims());
    o.put("cohomology", cohomology_dims(s)?);
    let basic = basic_subcomplex(s)?;
    let bh = cohomology(&basic.complex)?;
    o.put("basic_dims", basic.complex.space().dims());
    o.put("basic_cohomology", &bh.dims()[..=stable]);
    type_c_result(s, g, o);
    Ok(())
}

fn matrix_json(m: &RationalMatrix) -> Value {
    Value::Array((0..m.rows()).map(|r| Value::Array(m.row(r).iter().map(|c| Value::String(format_rational(c))).collect())).collect())
}

fn equivariant_cmd(s: &GStarStructure, g: &GStarDoc, n: usize, o: &mut Outcome) -> Result<(), AlgebraError> {
    let e = equivariant_cohomology(s, n)?;
    o.put("max_degree", n);
    o.put("stable_through", e.stable_through);
    o.put("dims", &e.dims);
    o.put("generator_degrees", &e.generator_degrees);
    o.put("restriction_ranks", &e.restriction_ranks);
    if let Some(u) = &e.u_action {
        let per_var: Vec<Value> = u.iter().map(|blocks| Value::Array(blocks.iter().map(matrix_json).collect())).collect();
        o.put("u_action", per_var);
        let p = module_presentation(&e, s.rank())?;
        o.put("module", ModuleDoc::from_presentation(&p));
    } else {
        o.diagnostics.push("module structure is only computed for abelian Lie algebras".into());
    }
    let w = weil_model_cohomology(s, n)?;
    let common = w.stable_through.min(e.stable_through);
    let agrees = w.dims[..=common] == e.dims[..=common];
    o.put("weil", json!({ "dims": w.dims, "stable_through": w.stable_through, "agrees": agrees }));
    if !agrees {
        o.flag(Status::VerdictFailed, "Cartan and Weil models disagree");
    }
    if type_c_result(s, g, o) == Some(true) {
        let basic = basic_subcomplex(s)?;
        let bh = cohomology(&basic.complex)?.dims();
        let top = e.stable_through.min(basic.stable_through);
        let agrees = bh[..=top] == e.dims[..=top];
        o.put("basic_oracle", json!({ "dims": &bh[..=top], "agrees": agrees }));
        if !agrees {
            o.flag(Status::VerdictFailed, "equivariant cohomology differs from basic cohomology of a type (C) algebra");
        }
    }
    Ok(())
}

fn spectral_cmd(s: &GStarStructure, n: usize, o: &mut Outcome) -> Result<(), AlgebraError> {
    let seq = run_pages(s, n)?;
    o.put("max_degree", n);
    o.put("stable_through", seq.stable_through);
    o.put("pages", &seq.pages);
    o.put("collapse_page", seq.collapse_page);
    o.put("e_infinity_totals", &seq.e_infinity_totals);
    let e = equivariant_cohomology(s, n)?;
    let h = cohomology_dims(s)?;
    let verdict = formality_verdict(&e, &h, s.rank(), n)?;
    o.put("formality", verdict);
    Ok(())
}

fn series_json(s: &RationalSeries) -> Value {
    serde_json::to_value(s).expect("series serialize")
}

fn module_cmd(m: &ModuleDoc, window: usize) -> Outcome {
    let p = match m.presentation(window) {
        Ok(p) => p,
        Err(e) => {
            let mut o = Outcome::new();
            o.flag(Status::InvalidInput, e.to_string());
            return o;
        }
    };
    let mut o = Outcome::new();
    let gm = GradedModule::new(&p);
    let h = hilbert(&gm);
    o.put("window", window);
    o.put("hilbert", &h);
    o.put("tor", koszul_tor(&gm).dims);
    o.put("freeness", freeness_test(&gm));
    o.put("depth_dim_cm", depth_dim_cm(&gm));
    match localized_rank(&gm) {
        Ok(r) => o.put("localized_rank", r),
        Err(e) => {
            o.put("localized_rank", Value::Null);
            o.flag(status_of(&e), e.to_string());
        }
    }
    if let Some(total) = m.closed_leaf_total {
        match localization_rank_check(&p, total) {
            Ok(v) => {
                if !v.consistent {
                    o.flag(Status::VerdictFailed, "localized rank differs from the closed-leaf cohomology");
                }
                o.put("localization", v);
            }
            Err(e) => o.flag(status_of(&e), e.to_string()),
        }
    }
    if !h.certified {
        o.flag(Status::Inconclusive, "window too short to certify the Hilbert series");
    }
    o
}

type SesParts = (GradedModule, GradedModule, GradedModule, foliacoh_core::module::ModuleMap, foliacoh_core::module::ModuleMap);

fn ses_modules(s: &SesDoc, window: usize) -> Result<SesParts, (Status, String)> {
    let bad = |e: crate::doc::DocError| (Status::InvalidInput, e.to_string());
    let a = s.sub.presentation(window).map_err(bad)?;
    let b = s.mid.presentation(window).map_err(bad)?;
    let c = s.quot.presentation(window).map_err(bad)?;
    let f = map_from_doc(&s.inclusion, a.dim_a()).map_err(bad)?;
    let g = map_from_doc(&s.projection, b.dim_a()).map_err(bad)?;
    Ok((GradedModule::new(&a), GradedModule::new(&b), GradedModule::new(&c), f, g))
}

fn ses_cmd(s: &SesDoc, window: usize) -> Outcome {
    let mut o = Outcome::new();
    let (a, b, c, f, g) = match ses_modules(s, window) {
        Ok(parts) => parts,
        Err((status, msg)) => {
            o.flag(status, msg);
            return o;
        }
    };
    match ses_cm_check(&a, &b, &c, &f, &g) {
        Ok(report) => {
            match report.status {
                SesCmStatus::Violated => o.flag(Status::VerdictFailed, "outer terms are Cohen-Macaulay but the middle is not"),
                SesCmStatus::Inconclusive => o.flag(Status::Inconclusive, "window too short to certify all three modules"),
                SesCmStatus::Verified | SesCmStatus::HypothesesNotMet => {}
            }
            o.put("window", window);
            o.put("ses_cm", report);
        }
        Err(e) => return Outcome::fail(&e),
    }
    o
}

fn strata_cmd(doc: &crate::doc::StrataDoc, window: usize) -> Outcome {
    let mut o = Outcome::new();
    let m = doc.model();
    let report = validate_strata(&m);
    if !report.valid {
        o.put("validation", &report);
        report_violations(&mut o, &report);
        return o;
    }
    let eq = match equivariant_series_from_strata(&m) {
        Ok(s) => s.canonical(),
        Err(e) => return Outcome::fail(&e),
    };
    let expansion = eq.expand(window);
    o.put("window", window);
    o.put("equivariant_series", series_json(&eq));
    o.put("equivariant_expansion", &expansion);
    let closed_euler: i64 = m
        .strata
        .iter()
        .filter(|s| m.closed_leaf_components.contains(&s.name))
        .map(|s| euler_at_minus_one(&s.quotient_poincare))
        .sum();
    let closed_total: i64 = m
        .strata
        .iter()
        .filter(|s| m.closed_leaf_components.contains(&s.name))
        .map(|s| s.quotient_poincare.eval(1))
        .sum();
    o.put("closed_leaf_euler", closed_euler);
    if !doc.formal {
        o.diagnostics.push("formality not asserted: the basic series is not determined by the strata".into());
        return o;
    }
    let basic = match basic_series_formal(&m, FormalitySource::Asserted) {
        Ok(b) => b,
        Err(e) => {
            let status = match e {
                AlgebraError::Invalid(_) => Status::VerdictFailed,
                _ => status_of(&e),
            };
            o.flag(status, e.to_string());
            return o;
        }
    };
    let euler = euler_at_minus_one(&basic.polynomial);
    let identity = RationalSeries::new(basic.polynomial.clone(), m.dim_a as u32).expand(window) == expansion;
    let total = usize::try_from(basic.polynomial.eval(1)).unwrap_or(0);
    let borel = borel_check(total, usize::try_from(closed_total).unwrap_or(0), true);
    o.put("basic_polynomial", &basic.polynomial);
    o.put("formal_source", basic.formal_source);
    o.put("euler_characteristic", euler);
    o.put("series_identity", identity);
    o.put("borel", &borel);
    if !identity {
        o.flag(Status::VerdictFailed, "equivariant series differs from the basic polynomial over (1 - t²)^r");
    }
    if euler != closed_euler {
        o.flag(Status::VerdictFailed, "Euler characteristic differs from the closed-leaf sum");
    }
    if !borel.consistent {
        o.flag(Status::VerdictFailed, "localization equality fails for a formal model");
    }
    o
}

fn morse_cmd(doc: &crate::doc::MorseDoc) -> Outcome {
    let mut o = Outcome::new();
    let data = doc.data();
    let report = data.validate(doc.dim_a);
    if !report.valid {
        o.put("validation", &report);
        report_violations(&mut o, &report);
        return o;
    }
    let series = match morse_series(&data, doc.dim_a) {
        Ok(s) => s,
        Err(e) => return Outcome::fail(&e),
    };
    o.put("morse_polynomial", &series.basic);
    o.put("equivariant_series", series_json(&series.equivariant.clone().canonical()));
    if data.components.iter().all(|c| c.isotropy_dim == doc.dim_a) {
        let cancels = series.equivariant.clone().canonical() == RationalSeries::new(series.basic.clone(), doc.dim_a as u32).canonical();
        o.put("full_isotropy_cancellation", cancels);
        if !cancels {
            o.flag(Status::VerdictFailed, "equivariant Morse series does not cancel to the basic one");
        }
    }
    let Some(p) = &doc.basic_poincare else {
        o.diagnostics.push("no basic Poincaré polynomial given: perfectness not checked".into());
        return o;
    };
    match perfectness_check(&data, p, doc.dim_a) {
        Ok(v) => {
            if let MorseGap::Violated { degree, reason } = &v.gap {
                o.flag(Status::VerdictFailed, format!("Morse inequalities fail in degree {degree}: {reason}"));
            }
            o.put("perfectness", v);
        }
        Err(e) => o.flag(status_of(&e), e.to_string()),
    }
    o
}

fn polytope_cmd(p: &foliacoh_core::foliation::PolytopeData) -> Outcome {
    let mut o = Outcome::new();
    let report = p.validate();
    if !report.valid {
        o.put("validation", &report);
        report_violations(&mut o, &report);
        return o;
    }
    match polytope_series(p) {
        Ok(s) => {
            o.put("polynomial", &s.polynomial);
            o.put("euler_characteristic", euler_at_minus_one(&s.polynomial));
            o.put("strata", s.strata.strata.len());
            o.put("closed_leaves", s.strata.closed_leaf_components.len());
            o.put("formal_source", s.formal_source);
        }
        Err(e) => return Outcome::fail(&e),
    }
    o
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "foliacoh", version, about = "Exact equivariant basic cohomology of g*-algebras and Killing-foliation invariants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Check schema and model invariants.
    Validate(CommonArgs),
    /// Cohomology of the algebra and of its basic subcomplex.
    Cohomology(CommonArgs),
    /// Cartan-model equivariant cohomology with the Weil cross-check.
    Equivariant(CommonArgs),
    /// Spectral sequence pages and the formality verdict.
    Spectral(CommonArgs),
    /// Hilbert series, Tor, freeness, depth, localized rank; or a short exact sequence.
    Module(CommonArgs),
    /// Series and Euler characteristic of a strata model.
    Strata(CommonArgs),
    /// Morse series and perfectness.
    Morse(CommonArgs),
    /// Basic Poincaré polynomial of a polytope quotient.
    Polytope(CommonArgs),
    /// Golden suite and acceptance criteria.
    Fixtures(FixturesArgs),
}

#[derive(Args, Debug)]
pub struct CommonArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub max_degree: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FixturesAction {
    List,
    Run,
    Regenerate,
}

#[derive(Args, Debug)]
pub struct FixturesArgs {
    #[arg(value_enum, default_value_t = FixturesAction::Run)]
    pub action: FixturesAction,
    /// Only cases whose name contains this string.
    #[arg(long)]
    pub filter: Option<String>,
    /// Fixture directory (with `inputs/` and `golden/`).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Report file, or target directory for `regenerate`.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

/// Exit code plus whatever would be written to stdout.
pub struct Invocation {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn configure_threads() {
    if let Some(n) = std::env::var("FOLIACOH_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        // advisory: ignore failure if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

pub fn run_command<I, T>(argv: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Invocation { code, stdout: text, stderr: String::new() }
            } else {
                Invocation { code, stdout: String::new(), stderr: text }
            };
        }
    };
    configure_threads();
    let (args, command) = match cli.command {
        Cmd::Fixtures(f) => return crate::suite::fixtures_command(&f),
        Cmd::Validate(a) => (a, Command::Validate),
        Cmd::Cohomology(a) => (a, Command::Cohomology),
        Cmd::Equivariant(a) => (a, Command::Equivariant),
        Cmd::Spectral(a) => (a, Command::Spectral),
        Cmd::Module(a) => (a, Command::Module),
        Cmd::Strata(a) => (a, Command::Strata),
        Cmd::Morse(a) => (a, Command::Morse),
        Cmd::Polytope(a) => (a, Command::Polytope),
    };
    let bytes = match std::fs::read(&args.input) {
        Ok(b) => b,
        Err(e) => {
            return Invocation { code: 2, stdout: String::new(), stderr: format!("cannot read {}: {e}\n", args.input.display()) }
        }
    };
    let doc = execute_bytes(command, &bytes, args.max_degree);
    let rendered = match args.format {
        Format::Json => doc.to_json(),
        Format::Text => doc.to_text(),
    };
    emit(doc.status.exit_code(), rendered, args.output.as_ref())
}

pub(crate) fn emit(code: i32, rendered: String, output: Option<&PathBuf>) -> Invocation {
    match output {
        Some(path) => match std::fs::write(path, rendered) {
            Ok(()) => Invocation { code, stdout: String::new(), stderr: String::new() },
            Err(e) => Invocation { code: 2, stdout: String::new(), stderr: format!("cannot write {}: {e}\n", path.display()) },
        },
        None => Invocation { code, stdout: rendered, stderr: String::new() },
    }
}
