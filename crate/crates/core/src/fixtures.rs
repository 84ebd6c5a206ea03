//! Small named models used by the tests, the golden suite and the CLI.

use std::collections::HashMap;

use crate::complex::GradedVectorSpace;
use crate::foliation::{FoliationStrataModel, MorseComponent, MorseData, PolytopeData, Stratum};
use crate::gstar::algebra::{GradedAlgebra, GradedOperator};
use crate::gstar::{FreeAlgebra, GStarStructure, Generator, LieAlgebraSpec};
use crate::linalg::{rat, Rational};
use crate::module::{GradedModulePresentation, ModuleMap, Relation, SPoly};
use crate::series::Polynomial;

/// A g*-algebra fixture with its expected properties.
#[derive(Clone, Debug)]
pub struct GStarFixture {
    pub name: &'static str,
    pub structure: GStarStructure,
    /// Connection elements (degree-1 vectors) when the action is free.
    pub connection: Option<Vec<Vec<Rational>>>,
    pub trivial_action: bool,
}

fn free_structure(gens: Vec<Generator>, top: usize, lie: LieAlgebraSpec, d: &[Vec<Rational>], i: &[Vec<Vec<Rational>>]) -> GStarStructure {
    let f = FreeAlgebra::new(gens, top).expect("fixture generators");
    let dop = f.derivation(1, d).expect("fixture differential");
    let iops = i.iter().map(|imgs| f.derivation(-1, imgs).expect("fixture contraction")).collect();
    let zero: Vec<Vec<Rational>> = vec![Vec::new(); f.generators().len()];
    let lops = (0..lie.dim()).map(|_| f.derivation(0, &zero).expect("fixture Lie derivative")).collect();
    GStarStructure::new(f.into_algebra(), lie, dop, iops, lops).expect("fixture structure")
}

/// `ℚ` with the trivial action of an `r`-dimensional abelian algebra.
pub fn point(r: usize) -> GStarStructure {
    crate::gstar::tensor::ground_field(&LieAlgebraSpec::abelian(r))
}

/// `Λ(θ)` with `i_X θ = 1`.
pub fn exterior_free() -> GStarStructure {
    free_structure(vec![Generator::new("theta", 1)], 1, LieAlgebraSpec::abelian(1), &[vec![]], &[vec![vec![rat(1)]]])
}

/// `Λ(θ_1, θ_2)` with `i_{X_j} θ_i = δ_ij`.
pub fn exterior_pair_free() -> GStarStructure {
    free_structure(
        vec![Generator::new("theta1", 1), Generator::new("theta2", 1)],
        2,
        LieAlgebraSpec::abelian(2),
        &[vec![], vec![]],
        &[vec![vec![rat(1)], vec![rat(0)]], vec![vec![rat(0)], vec![rat(1)]]],
    )
}

/// Basis `1, θ, ω, θω` with `d = 0`, `i_X θ = 1`, `i_X ω = 0`, `L_X = 0`.
pub fn hopf_basic() -> GStarStructure {
    free_structure(
        vec![Generator::new("theta", 1), Generator::capped("omega", 2, 1)],
        3,
        LieAlgebraSpec::abelian(1),
        &[vec![], vec![]],
        &[vec![vec![rat(1)], vec![rat(0)]]],
    )
}

/// Basis `1, θ, ω, θω` with `dθ = ω` and the trivial action.
pub fn s3_minimal_trivial() -> GStarStructure {
    free_structure(
        vec![Generator::new("theta", 1), Generator::capped("omega", 2, 1)],
        3,
        LieAlgebraSpec::abelian(1),
        &[vec![rat(1)], vec![]],
        &[vec![vec![rat(0)], vec![]]],
    )
}

/// `ℚ[ω]/(ω²)`, `|ω| = 2`, `d = 0`, trivial action.
pub fn sphere2_trivial() -> GStarStructure {
    free_structure(
        vec![Generator::capped("omega", 2, 1)],
        2,
        LieAlgebraSpec::abelian(1),
        &[vec![]],
        &[vec![vec![]]],
    )
}

/// Basis `1, x, y` in degrees 0, 2, 3 with all products of positive-degree
/// elements zero, `d = 0`, trivial action.
pub fn trivial_1011() -> GStarStructure {
    let space = GradedVectorSpace::with_labels(vec![
        vec!["1".into()],
        vec![],
        vec!["x".into()],
        vec!["y".into()],
    ]);
    let mut products = HashMap::new();
    for a in 1..3 {
        for b in 1..3 {
            products.insert((a, b), Vec::new());
        }
    }
    let algebra = GradedAlgebra::new(space, 0, products, None).expect("fixture algebra");
    let d = GradedOperator::zero(algebra.dims(), 1);
    GStarStructure::trivial_action(algebra, d, LieAlgebraSpec::abelian(1)).expect("fixture structure")
}

/// Every g*-algebra fixture.
pub fn gstar_fixtures() -> Vec<GStarFixture> {
    let theta = vec![vec![rat(1)]];
    vec![
        GStarFixture { name: "point", structure: point(1), connection: None, trivial_action: true },
        GStarFixture { name: "sphere2_trivial", structure: sphere2_trivial(), connection: None, trivial_action: true },
        GStarFixture { name: "trivial_1011", structure: trivial_1011(), connection: None, trivial_action: true },
        GStarFixture { name: "s3_minimal_trivial", structure: s3_minimal_trivial(), connection: None, trivial_action: true },
        GStarFixture { name: "exterior_free", structure: exterior_free(), connection: Some(theta.clone()), trivial_action: false },
        GStarFixture {
            name: "exterior_pair_free",
            structure: exterior_pair_free(),
            connection: Some(vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]]),
            trivial_action: false,
        },
        GStarFixture { name: "hopf_basic", structure: hopf_basic(), connection: Some(theta), trivial_action: false },
    ]
}

pub fn gstar_fixture(name: &str) -> Option<GStarFixture> {
    gstar_fixtures().into_iter().find(|f| f.name == name)
}

pub const MODULE_WINDOW: usize = 12;

/// `S` over `r` variables, one generator in degree 0.
pub fn free_module(r: usize, degrees: Vec<usize>) -> GradedModulePresentation {
    GradedModulePresentation::free(r, degrees, MODULE_WINDOW)
}

/// `ℚ = S/(u_1, …, u_r)`.
pub fn residue_field(r: usize) -> GradedModulePresentation {
    let rels = (0..r).map(|i| Relation { degree: 2, components: vec![SPoly::variable(r, i)] }).collect();
    GradedModulePresentation::new(r, vec![0], rels, MODULE_WINDOW).expect("fixture module")
}

/// `S/(u_i^k)` over `r` variables.
pub fn quotient_by_power(r: usize, i: usize, k: usize) -> GradedModulePresentation {
    let mut e = vec![0; r];
    e[i] = k;
    let rel = Relation { degree: 2 * k, components: vec![SPoly::monomial(e, rat(1))] };
    GradedModulePresentation::new(r, vec![0], vec![rel], MODULE_WINDOW).expect("fixture module")
}

/// Generators in degrees 0 and 2, both killed by `u`.
pub fn hopf_module() -> GradedModulePresentation {
    let u = SPoly::variable(1, 0);
    let rels = vec![
        Relation { degree: 2, components: vec![u.clone(), SPoly::zero()] },
        Relation { degree: 4, components: vec![SPoly::zero(), u] },
    ];
    GradedModulePresentation::new(1, vec![0, 2], rels, MODULE_WINDOW).expect("fixture module")
}

/// A module fixture with hand-derived depth, dimension and CM verdict.
#[derive(Clone, Debug)]
pub struct ModuleFixture {
    pub name: &'static str,
    pub module: GradedModulePresentation,
    pub depth: Option<usize>,
    pub krull_dim: Option<usize>,
    pub cohen_macaulay: bool,
    pub free: bool,
}

pub fn module_fixtures() -> Vec<ModuleFixture> {
    vec![
        ModuleFixture { name: "free", module: free_module(2, vec![0]), depth: Some(2), krull_dim: Some(2), cohen_macaulay: true, free: true },
        ModuleFixture { name: "residue_field", module: residue_field(2), depth: Some(0), krull_dim: Some(0), cohen_macaulay: true, free: false },
        ModuleFixture { name: "quotient_u", module: quotient_by_power(1, 0, 1), depth: Some(0), krull_dim: Some(0), cohen_macaulay: true, free: false },
        ModuleFixture {
            name: "mixed_sum",
            module: quotient_by_power(2, 0, 1).direct_sum(&free_module(2, vec![0])).expect("same ring"),
            depth: Some(1),
            krull_dim: Some(2),
            cohen_macaulay: false,
            free: false,
        },
        // middle term of 0 -> S(-2) -> S -> S/(u) -> 0
        ModuleFixture { name: "extension", module: free_module(1, vec![0]), depth: Some(1), krull_dim: Some(1), cohen_macaulay: true, free: true },
        ModuleFixture { name: "hopf_module", module: hopf_module(), depth: Some(0), krull_dim: Some(0), cohen_macaulay: true, free: false },
        ModuleFixture { name: "free_rank_two", module: free_module(1, vec![0, 2]), depth: Some(1), krull_dim: Some(1), cohen_macaulay: true, free: true },
        ModuleFixture { name: "quotient_u_squared", module: quotient_by_power(1, 0, 2), depth: Some(0), krull_dim: Some(0), cohen_macaulay: true, free: false },
    ]
}

pub fn module_fixture(name: &str) -> Option<ModuleFixture> {
    module_fixtures().into_iter().find(|f| f.name == name)
}

/// A short exact sequence of modules with the maps between them.
#[derive(Clone, Debug)]
pub struct SesFixture {
    pub name: &'static str,
    pub sub: GradedModulePresentation,
    pub mid: GradedModulePresentation,
    pub quot: GradedModulePresentation,
    pub inclusion: ModuleMap,
    pub projection: ModuleMap,
}

pub fn ses_fixtures() -> Vec<SesFixture> {
    let one = |r: usize| SPoly::constant(r, rat(1));
    vec![
        SesFixture {
            name: "free_split",
            sub: free_module(2, vec![0]),
            mid: free_module(2, vec![0, 0]),
            quot: free_module(2, vec![0]),
            inclusion: ModuleMap { images: vec![vec![one(2), SPoly::zero()]] },
            projection: ModuleMap { images: vec![vec![SPoly::zero()], vec![one(2)]] },
        },
        SesFixture {
            name: "residue_split",
            sub: residue_field(1),
            mid: residue_field(1).direct_sum(&residue_field(1)).expect("same ring"),
            quot: residue_field(1),
            inclusion: ModuleMap { images: vec![vec![one(1), SPoly::zero()]] },
            projection: ModuleMap { images: vec![vec![SPoly::zero()], vec![one(1)]] },
        },
        SesFixture {
            name: "extension",
            sub: free_module(1, vec![2]),
            mid: free_module(1, vec![0]),
            quot: quotient_by_power(1, 0, 1),
            inclusion: ModuleMap { images: vec![vec![SPoly::variable(1, 0)]] },
            projection: ModuleMap { images: vec![vec![one(1)]] },
        },
    ]
}

fn stratum(name: &str, codim: usize, isotropy_dim: usize, p: Vec<i64>) -> Stratum {
    Stratum { name: name.into(), codim, isotropy_dim, quotient_poincare: Polynomial::new(p) }
}

/// Hopf flow on `S³`: one open stratum and two closed leaves.
pub fn hopf_strata() -> FoliationStrataModel {
    FoliationStrataModel {
        q: 2,
        dim_a: 1,
        strata: vec![stratum("regular", 0, 0, vec![1]), stratum("leaf_north", 2, 1, vec![1]), stratum("leaf_south", 2, 1, vec![1])],
        closed_leaf_components: vec!["leaf_north".into(), "leaf_south".into()],
    }
}

/// Every leaf closed: the basic series is that of the leaf space.
pub fn all_leaves_closed() -> FoliationStrataModel {
    FoliationStrataModel {
        q: 2,
        dim_a: 0,
        strata: vec![stratum("all", 0, 0, vec![1, 0, 1])],
        closed_leaf_components: vec!["all".into()],
    }
}

/// Every leaf dense.
pub fn all_leaves_dense() -> FoliationStrataModel {
    FoliationStrataModel { q: 3, dim_a: 1, strata: vec![stratum("all", 0, 0, vec![1])], closed_leaf_components: vec![] }
}

/// An isolated closed leaf with odd `q`.
pub fn bad_q_odd_isolated_leaf() -> FoliationStrataModel {
    FoliationStrataModel {
        q: 3,
        dim_a: 1,
        strata: vec![stratum("regular", 0, 0, vec![1]), stratum("leaf", 3, 1, vec![1])],
        closed_leaf_components: vec!["leaf".into()],
    }
}

/// A closed leaf although `2 dim 𝔞 > q`.
pub fn bad_rank_bound() -> FoliationStrataModel {
    FoliationStrataModel {
        q: 2,
        dim_a: 2,
        strata: vec![stratum("regular", 0, 0, vec![1]), stratum("leaf", 2, 2, vec![1])],
        closed_leaf_components: vec!["leaf".into()],
    }
}

pub fn strata_fixtures() -> Vec<(&'static str, FoliationStrataModel)> {
    vec![
        ("hopf", hopf_strata()),
        ("all_leaves_closed", all_leaves_closed()),
        ("all_leaves_dense", all_leaves_dense()),
        ("bad_q_odd_isolated_leaf", bad_q_odd_isolated_leaf()),
        ("bad_rank_bound", bad_rank_bound()),
    ]
}

pub fn segment() -> PolytopeData {
    PolytopeData { f_vector: vec![2, 1], q: 2, edges: None }
}

pub fn square() -> PolytopeData {
    PolytopeData { f_vector: vec![4, 4, 1], q: 4, edges: Some(vec![[0, 1], [1, 2], [2, 3], [3, 0]]) }
}

pub fn triangle() -> PolytopeData {
    PolytopeData { f_vector: vec![3, 3, 1], q: 4, edges: Some(vec![[0, 1], [1, 2], [2, 0]]) }
}

pub fn polytope_fixtures() -> Vec<(&'static str, PolytopeData)> {
    vec![("segment", segment()), ("square", square()), ("triangle", triangle())]
}

fn morse(components: &[(usize, Vec<i64>, usize)]) -> MorseData {
    MorseData {
        components: components
            .iter()
            .map(|(index, p, iso)| MorseComponent { index: *index, quotient_poincare: Polynomial::new(p.clone()), isotropy_dim: *iso })
            .collect(),
    }
}

/// Critical leaves of index 0 and 2.
pub fn hopf_morse() -> MorseData {
    morse(&[(0, vec![1], 1), (2, vec![1], 1)])
}

/// `M = (1 + t²) + (1 + t) t`: not perfect, gap quotient `t`.
pub fn non_perfect_morse() -> MorseData {
    morse(&[(0, vec![1], 1), (1, vec![1], 1), (2, vec![1], 1), (2, vec![1], 1)])
}

/// `M = 1 + 2t²` against `1 + t²`: the gap is not divisible by `1 + t`.
pub fn indivisible_morse() -> MorseData {
    morse(&[(0, vec![1], 1), (2, vec![1], 1), (2, vec![1], 1)])
}

pub fn morse_fixtures() -> Vec<(&'static str, MorseData, Polynomial)> {
    let p = Polynomial::new(vec![1, 0, 1]);
    vec![
        ("hopf", hopf_morse(), p.clone()),
        ("non_perfect", non_perfect_morse(), p.clone()),
        ("indivisible", indivisible_morse(), p),
    ]
}
