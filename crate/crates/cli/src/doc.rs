//! JSON input documents and their conversion to engine types.
//!
//! Rationals travel as strings `"p/q"` (integers are also accepted on
//! input); polynomials as integer coefficient lists, constant term first.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use foliacoh_core::complex::GradedVectorSpace;
use foliacoh_core::foliation::{FoliationStrataModel, MorseComponent, MorseData, PolytopeData, Stratum};
use foliacoh_core::gstar::{GStarStructure, GradedAlgebra, GradedOperator, LieAlgebraSpec};
use foliacoh_core::module::{GradedModulePresentation, ModuleMap, Relation, SPoly};
use foliacoh_core::series::Polynomial;
use foliacoh_core::Rational;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum DocError {
    #[error("malformed document: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("unsupported schema version {0}, expected {SCHEMA_VERSION}")]
    Version(u32),
    #[error("{0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> DocError {
    DocError::Invalid(msg.into())
}

/// Exact rational carried as a string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| format!("bad rational {s:?}"))?;
    let d = BigInt::from_str(d).map_err(|_| format!("bad rational {s:?}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rational::new(n, d))
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Q;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a rational string \"p/q\"")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Q, E> {
                Ok(Q(Rational::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Q, E> {
                Ok(Q(Rational::from_integer(v.into())))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Q, E> {
                parse_rational(v).map(Q).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

/// Sparse vector keyed by basis label.
pub type Terms = BTreeMap<String, Q>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketDoc {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeff: Q,
}

/// `[X_i, X_j] = Σ coeff X_k`, listed for `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieDoc {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub brackets: Vec<BracketDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductDoc {
    pub left: String,
    pub right: String,
    pub value: Terms,
}

/// A graded algebra with `d`, contractions and Lie derivatives, each given
/// by the images of basis elements (missing entries are zero).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GStarDoc {
    pub lie: LieDoc,
    /// Basis labels by degree; the first degree-0 label is the unit.
    pub basis: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub products: Vec<ProductDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub d: BTreeMap<String, Terms>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub contractions: Vec<BTreeMap<String, Terms>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lie_derivatives: Vec<BTreeMap<String, Terms>>,
    /// Degree-1 connection elements, one per Lie basis element.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connection: Option<Vec<Terms>>,
    /// Products and operators are exact only through this degree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complete_through: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrataDoc {
    pub q: usize,
    pub dim_a: usize,
    pub strata: Vec<Stratum>,
    #[serde(default)]
    pub closed_leaf_components: Vec<String>,
    /// The caller asserts equivariant formality.
    #[serde(default)]
    pub formal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorseDoc {
    pub dim_a: usize,
    pub components: Vec<MorseComponent>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basic_poincare: Option<Polynomial>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub coeff: Q,
    pub exponents: Vec<usize>,
}

/// Homogeneous polynomial in `u_1..u_r`.
pub type PolyDoc = Vec<TermDoc>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationDoc {
    pub degree: usize,
    /// One polynomial per generator.
    pub components: Vec<PolyDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub dim_a: usize,
    pub generator_degrees: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<RelationDoc>,
    /// Total dimension of the closed-leaf cohomology, for the localization check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_leaf_total: Option<usize>,
}

/// `0 -> sub -> mid -> quot -> 0`; maps give the image of every source
/// generator as one polynomial per target generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SesDoc {
    pub sub: ModuleDoc,
    pub mid: ModuleDoc,
    pub quot: ModuleDoc,
    pub inclusion: Vec<Vec<PolyDoc>>,
    pub projection: Vec<Vec<PolyDoc>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    GstarAlgebra,
    StrataModel,
    MorseData,
    Polytope,
    ModulePresentation,
    Ses,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Gstar(GStarDoc),
    Strata(StrataDoc),
    Morse(MorseDoc),
    Polytope(PolytopeData),
    Module(ModuleDoc),
    Ses(SesDoc),
}

impl Payload {
    pub fn kind(&self) -> Kind {
        match self {
            Payload::Gstar(_) => Kind::GstarAlgebra,
            Payload::Strata(_) => Kind::StrataModel,
            Payload::Morse(_) => Kind::MorseData,
            Payload::Polytope(_) => Kind::Polytope,
            Payload::Module(_) => Kind::ModulePresentation,
            Payload::Ses(_) => Kind::Ses,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub schema_version: u32,
    pub window: Option<usize>,
    pub payload: Payload,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    schema_version: u32,
    kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    window: Option<usize>,
    payload: serde_json::Value,
}

impl Document {
    pub fn new(payload: Payload, window: Option<usize>) -> Self {
        Document { schema_version: SCHEMA_VERSION, window, payload }
    }

    pub fn parse(text: &str) -> Result<Self, DocError> {
        let raw: RawDocument = serde_json::from_str(text)?;
        if raw.schema_version != SCHEMA_VERSION {
            return Err(DocError::Version(raw.schema_version));
        }
        let p = raw.payload;
        let payload = match raw.kind {
            Kind::GstarAlgebra => Payload::Gstar(serde_json::from_value(p)?),
            Kind::StrataModel => Payload::Strata(serde_json::from_value(p)?),
            Kind::MorseData => Payload::Morse(serde_json::from_value(p)?),
            Kind::Polytope => Payload::Polytope(serde_json::from_value(p)?),
            Kind::ModulePresentation => Payload::Module(serde_json::from_value(p)?),
            Kind::Ses => Payload::Ses(serde_json::from_value(p)?),
        };
        Ok(Document { schema_version: raw.schema_version, window: raw.window, payload })
    }

    pub fn to_json(&self) -> String {
        let payload = match &self.payload {
            Payload::Gstar(x) => serde_json::to_value(x),
            Payload::Strata(x) => serde_json::to_value(x),
            Payload::Morse(x) => serde_json::to_value(x),
            Payload::Polytope(x) => serde_json::to_value(x),
            Payload::Module(x) => serde_json::to_value(x),
            Payload::Ses(x) => serde_json::to_value(x),
        }
        .expect("documents serialize");
        let raw = RawDocument { schema_version: self.schema_version, kind: self.payload.kind(), window: self.window, payload };
        let mut s = serde_json::to_string_pretty(&raw).expect("documents serialize");
        s.push('\n');
        s
    }
}

fn lie_from_doc(doc: &LieDoc) -> Result<LieAlgebraSpec, DocError> {
    let entries: Vec<(usize, usize, usize, Rational)> = doc.brackets.iter().map(|b| (b.i, b.j, b.k, b.coeff.0.clone())).collect();
    if entries.iter().any(|&(i, j, k, _)| i >= doc.dim || j >= doc.dim || k >= doc.dim) {
        return Err(invalid("bracket index out of range"));
    }
    let lie = LieAlgebraSpec::from_brackets(doc.dim, &entries).map_err(|e| invalid(e.to_string()))?;
    lie.validate().map_err(|e| invalid(e.to_string()))?;
    Ok(lie)
}

fn lie_to_doc(lie: &LieAlgebraSpec) -> LieDoc {
    let mut brackets = Vec::new();
    for i in 0..lie.dim() {
        for j in i + 1..lie.dim() {
            for k in 0..lie.dim() {
                let c = lie.c(k, i, j);
                if !c.is_zero() {
                    brackets.push(BracketDoc { i, j, k, coeff: Q(c.clone()) });
                }
            }
        }
    }
    LieDoc { dim: lie.dim(), brackets }
}

struct LabelIndex {
    /// label -> (degree, local index)
    map: HashMap<String, (usize, usize)>,
    dims: Vec<usize>,
}

impl LabelIndex {
    fn new(basis: &[Vec<String>]) -> Result<Self, DocError> {
        let mut map = HashMap::new();
        for (n, labels) in basis.iter().enumerate() {
            for (k, l) in labels.iter().enumerate() {
                if map.insert(l.clone(), (n, k)).is_some() {
                    return Err(invalid(format!("basis label {l:?} is repeated")));
                }
            }
        }
        Ok(LabelIndex { map, dims: basis.iter().map(Vec::len).collect() })
    }

    fn get(&self, label: &str) -> Result<(usize, usize), DocError> {
        self.map.get(label).copied().ok_or_else(|| invalid(format!("unknown basis label {label:?}")))
    }

    /// Dense coordinates in degree `n`; every label must live there.
    fn dense(&self, terms: &Terms, n: usize, what: &str) -> Result<Vec<Rational>, DocError> {
        let mut v = vec![Rational::zero(); self.dims.get(n).copied().unwrap_or(0)];
        for (label, c) in terms {
            let (deg, k) = self.get(label)?;
            if deg != n {
                return Err(invalid(format!("{what}: {label:?} has degree {deg}, expected {n}")));
            }
            v[k] += &c.0;
        }
        Ok(v)
    }
}

fn operator_from_doc(
    idx: &LabelIndex,
    images: &BTreeMap<String, Terms>,
    shift: i32,
    what: &str,
) -> Result<GradedOperator, DocError> {
    let dims = &idx.dims;
    let mut columns: Vec<Vec<Vec<Rational>>> = dims
        .iter()
        .enumerate()
        .map(|(n, &dim)| {
            let rows = target(n, shift).and_then(|t| dims.get(t)).copied().unwrap_or(0);
            vec![vec![Rational::zero(); rows]; dim]
        })
        .collect();
    for (label, terms) in images {
        let (n, k) = idx.get(label)?;
        match target(n, shift).filter(|&t| t < dims.len()) {
            Some(t) => columns[n][k] = idx.dense(terms, t, &format!("{what} of {label}"))?,
            None if terms.values().all(|c| c.0.is_zero()) => {}
            None => return Err(invalid(format!("{what} of {label:?} lands outside the window"))),
        }
    }
    let blocks = columns
        .into_iter()
        .enumerate()
        .map(|(n, cols)| {
            let rows = target(n, shift).and_then(|t| dims.get(t)).copied().unwrap_or(0);
            foliacoh_core::RationalMatrix::from_columns(rows, &cols)
        })
        .collect();
    GradedOperator::from_blocks(dims, shift, blocks).map_err(|e| invalid(e.to_string()))
}

fn target(n: usize, shift: i32) -> Option<usize> {
    usize::try_from(n as i64 + i64::from(shift)).ok()
}

fn operator_to_doc(a: &GradedAlgebra, op: &GradedOperator) -> BTreeMap<String, Terms> {
    let mut out = BTreeMap::new();
    for n in 0..=a.top() {
        let Some(t) = target(n, op.shift()).filter(|&t| t <= a.top()) else { continue };
        for k in 0..a.dim(n) {
            let img = op.block(n).column(k);
            let terms = terms_from_dense(a, t, &img);
            if !terms.is_empty() {
                out.insert(a.label(a.flat(n, k)).to_string(), terms);
            }
        }
    }
    out
}

fn terms_from_dense(a: &GradedAlgebra, n: usize, v: &[Rational]) -> Terms {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (a.label(a.flat(n, k)).to_string(), Q(c.clone())))
        .collect()
}

impl GStarDoc {
    pub fn to_structure(&self) -> Result<GStarStructure, DocError> {
        let lie = lie_from_doc(&self.lie)?;
        if self.basis.first().is_none_or(Vec::is_empty) {
            return Err(invalid("degree 0 must contain the unit"));
        }
        let idx = LabelIndex::new(&self.basis)?;
        let space = GradedVectorSpace::with_labels(self.basis.clone());
        let offsets: Vec<usize> = self.basis.iter().scan(0, |acc, l| {
            let o = *acc;
            *acc += l.len();
            Some(o)
        }).collect();
        let mut products = HashMap::new();
        for p in &self.products {
            let (da, ka) = idx.get(&p.left)?;
            let (db, kb) = idx.get(&p.right)?;
            let deg = da + db;
            let v = idx.dense(&p.value, deg, &format!("product {}·{}", p.left, p.right))?;
            let sparse: Vec<(usize, Rational)> = v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
            products.insert((offsets[da] + ka, offsets[db] + kb), sparse);
        }
        let algebra = GradedAlgebra::new(space, 0, products, self.complete_through).map_err(|e| invalid(e.to_string()))?;
        let d = operator_from_doc(&idx, &self.d, 1, "d")?;
        let r = lie.dim();
        let expect = |ops: &Vec<BTreeMap<String, Terms>>, what: &str| -> Result<(), DocError> {
            if !ops.is_empty() && ops.len() != r {
                return Err(invalid(format!("{} {what} given for a Lie algebra of dimension {r}", ops.len())));
            }
            Ok(())
        };
        expect(&self.contractions, "contractions")?;
        expect(&self.lie_derivatives, "Lie derivatives")?;
        let empty = BTreeMap::new();
        let i = (0..r)
            .map(|x| operator_from_doc(&idx, self.contractions.get(x).unwrap_or(&empty), -1, "contraction"))
            .collect::<Result<Vec<_>, _>>()?;
        let l = (0..r)
            .map(|x| operator_from_doc(&idx, self.lie_derivatives.get(x).unwrap_or(&empty), 0, "Lie derivative"))
            .collect::<Result<Vec<_>, _>>()?;
        GStarStructure::new(algebra, lie, d, i, l).map_err(|e| invalid(e.to_string()))
    }

    /// Connection elements as degree-1 coordinate vectors.
    pub fn connection_vectors(&self) -> Result<Option<Vec<Vec<Rational>>>, DocError> {
        let Some(conn) = &self.connection else { return Ok(None) };
        let idx = LabelIndex::new(&self.basis)?;
        conn.iter().map(|t| idx.dense(t, 1, "connection element")).collect::<Result<Vec<_>, _>>().map(Some)
    }

    pub fn from_structure(s: &GStarStructure, connection: Option<&[Vec<Rational>]>) -> Self {
        let a = &s.algebra;
        let basis: Vec<Vec<String>> = (0..=a.top()).map(|n| a.space().labels(n).to_vec()).collect();
        let mut products = Vec::new();
        let unit = a.unit();
        for x in 0..a.size() {
            for y in x..a.size() {
                if x == unit || y == unit {
                    continue;
                }
                let deg = a.degree_of(x) + a.degree_of(y);
                if deg > a.top() {
                    continue;
                }
                let v = foliacoh_core::gstar::algebra::to_dense(a.basis_product(x, y), a.dim(deg));
                let value = terms_from_dense(a, deg, &v);
                if !value.is_empty() {
                    products.push(ProductDoc { left: a.label(x).into(), right: a.label(y).into(), value });
                }
            }
        }
        let lie_derivatives = if s.l_vanishes() { Vec::new() } else { s.l.iter().map(|op| operator_to_doc(a, op)).collect() };
        let contractions = if s.i.iter().all(GradedOperator::is_zero) {
            Vec::new()
        } else {
            s.i.iter().map(|op| operator_to_doc(a, op)).collect()
        };
        GStarDoc {
            lie: lie_to_doc(&s.lie),
            basis,
            products,
            d: operator_to_doc(a, &s.d),
            contractions,
            lie_derivatives,
            connection: connection.map(|c| c.iter().map(|v| terms_from_dense(a, 1, v)).collect()),
            complete_through: a.complete_through(),
        }
    }
}

impl StrataDoc {
    pub fn model(&self) -> FoliationStrataModel {
        FoliationStrataModel {
            q: self.q,
            dim_a: self.dim_a,
            strata: self.strata.clone(),
            closed_leaf_components: self.closed_leaf_components.clone(),
        }
    }

    pub fn from_model(m: &FoliationStrataModel, formal: bool) -> Self {
        StrataDoc { q: m.q, dim_a: m.dim_a, strata: m.strata.clone(), closed_leaf_components: m.closed_leaf_components.clone(), formal }
    }
}

impl MorseDoc {
    pub fn data(&self) -> MorseData {
        MorseData { components: self.components.clone() }
    }
}

fn poly_from_doc(p: &PolyDoc, r: usize) -> Result<SPoly, DocError> {
    let mut out = SPoly::zero();
    for t in p {
        if t.exponents.len() != r {
            return Err(invalid(format!("monomial {:?} should have {r} exponents", t.exponents)));
        }
        out.add_term(t.exponents.clone(), &t.coeff.0);
    }
    Ok(out)
}

fn poly_to_doc(p: &SPoly) -> PolyDoc {
    p.terms().map(|(e, c)| TermDoc { coeff: Q(c.clone()), exponents: e.clone() }).collect()
}

impl ModuleDoc {
    pub fn presentation(&self, window: usize) -> Result<GradedModulePresentation, DocError> {
        let relations = self
            .relations
            .iter()
            .map(|rel| {
                let components = rel.components.iter().map(|p| poly_from_doc(p, self.dim_a)).collect::<Result<Vec<_>, _>>()?;
                Ok(Relation { degree: rel.degree, components })
            })
            .collect::<Result<Vec<_>, DocError>>()?;
        GradedModulePresentation::new(self.dim_a, self.generator_degrees.clone(), relations, window).map_err(|e| invalid(e.to_string()))
    }

    pub fn from_presentation(p: &GradedModulePresentation) -> Self {
        ModuleDoc {
            dim_a: p.dim_a(),
            generator_degrees: p.generator_degrees().to_vec(),
            relations: p
                .relations()
                .iter()
                .map(|r| RelationDoc { degree: r.degree, components: r.components.iter().map(poly_to_doc).collect() })
                .collect(),
            closed_leaf_total: None,
        }
    }
}

pub fn map_from_doc(images: &[Vec<PolyDoc>], r: usize) -> Result<ModuleMap, DocError> {
    let images = images
        .iter()
        .map(|img| img.iter().map(|p| poly_from_doc(p, r)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ModuleMap { images })
}

pub fn map_to_doc(m: &ModuleMap) -> Vec<Vec<PolyDoc>> {
    m.images.iter().map(|img| img.iter().map(poly_to_doc).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use foliacoh_core::fixtures;

    #[test]
    fn rationals_round_trip() {
        for s in ["0", "-3", "1/2", "-7/3"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(format_rational(&parse_rational("2/4").unwrap()), "1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn integers_are_accepted_as_rationals() {
        let q: Q = serde_json::from_str("3").unwrap();
        assert_eq!(format_rational(&q.0), "3");
    }

    #[test]
    fn gstar_fixtures_survive_export() {
        for f in fixtures::gstar_fixtures() {
            let doc = GStarDoc::from_structure(&f.structure, f.connection.as_deref());
            let s = doc.to_structure().unwrap();
            assert_eq!(s.algebra.dims(), f.structure.algebra.dims(), "{}", f.name);
            assert_eq!(s.d, f.structure.d, "{}", f.name);
            assert_eq!(s.i, f.structure.i, "{}", f.name);
            assert_eq!(GStarDoc::from_structure(&s, f.connection.as_deref()), doc, "{}", f.name);
        }
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{"schema_version": 1, "kind": "polytope", "payload": {"f_vector": [2, 1], "q": 2, "extra": 1}}"#;
        assert!(Document::parse(text).is_err());
    }

    #[test]
    fn wrong_degree_is_rejected() {
        let mut doc = GStarDoc::from_structure(&fixtures::hopf_basic(), None);
        doc.d.insert("theta".into(), BTreeMap::from([("theta".to_string(), Q(Rational::one()))]));
        assert!(doc.to_structure().is_err());
    }
}
