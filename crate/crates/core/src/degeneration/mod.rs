//! Main graphs, their multiplicities and the coefficients they contribute.

pub mod enumerate;
mod slopes;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::graph::{automorphism_group_order, canonical_form, validate, CanonicalForm, DecoratedGraph, Mode};
use crate::linalg::{image_saturation_index, kernel_basis, lattice_index_in_ambient, Index};
use crate::maps::{build_maps_unchecked, LatticeMapBundle};
use crate::tropical::{constant_of, tropical_feasible_unchecked};

pub use enumerate::{enumerate_main_graphs, enumerate_main_graphs_with, EnumerationBounds};
pub use slopes::{star_slope_residue, third_line_ratio, GaussianRational};

fn require_degeneration(g: &DecoratedGraph) -> Result<()> {
    if g.mode() != Mode::Degeneration {
        return Err(Error::WrongMode { expected: "degeneration" });
    }
    let report = validate(g);
    if !report.is_valid() {
        return Err(Error::InvalidGraph(report.violations));
    }
    Ok(())
}

fn bullet_kernel_is_trivial(maps: &LatticeMapBundle) -> bool {
    kernel_basis(maps.rho_bullet.as_ref().expect("degeneration mode has bullet maps")).is_empty()
}

/// `K• = 0` and the graph is tropically feasible.
pub fn is_main(g: &DecoratedGraph) -> Result<bool> {
    require_degeneration(g)?;
    Ok(main_condition(g, &build_maps_unchecked(g)))
}

fn main_condition(g: &DecoratedGraph, maps: &LatticeMapBundle) -> bool {
    bullet_kernel_is_trivial(maps) && tropical_feasible_unchecked(g).is_feasible()
}

/// Validated main graph with its lattice maps.
fn main_maps(g: &DecoratedGraph) -> Result<LatticeMapBundle> {
    require_degeneration(g)?;
    let maps = build_maps_unchecked(g);
    if !main_condition(g, &maps) {
        return Err(Error::NotMain);
    }
    Ok(maps)
}

fn m_of(maps: &LatticeMapBundle) -> Result<BigInt> {
    match lattice_index_in_ambient(maps.rho_bullet.as_ref().expect("degeneration mode")) {
        Index::Finite(m) => Ok(m),
        Index::Infinite => Err(Error::Inconsistent("ρ• has a kernel on a main graph".into())),
    }
}

fn m_red_of(g: &DecoratedGraph, maps: &LatticeMapBundle) -> Result<BigInt> {
    let basis = kernel_basis(&maps.rho);
    let [eta] = basis.as_slice() else {
        return Err(Error::Inconsistent(format!("main graph has a kernel of dimension {}", basis.len())));
    };
    let eta = if eta.iter().all(|x| x.is_positive()) {
        eta.clone()
    } else if eta.iter().all(|x| x.is_negative()) {
        eta.iter().map(|x| -x).collect()
    } else {
        return Err(Error::Inconsistent("kernel generator of a main graph is not positive".into()));
    };
    constant_of(g, &eta)
}

/// `m(Γ) = |𝔻•∨ / Im(ρ•∨)|`.
pub fn multiplicity_m(g: &DecoratedGraph) -> Result<BigInt> {
    m_of(&main_maps(g)?)
}

/// `m_red(Γ)`, the vertical constant of the primitive kernel generator.
pub fn multiplicity_m_red(g: &DecoratedGraph) -> Result<BigInt> {
    let maps = main_maps(g)?;
    m_red_of(g, &maps)
}

/// `|𝕂⊥ / Im(μ∨)|`.
pub fn extra_factor(g: &DecoratedGraph) -> Result<BigInt> {
    Ok(image_saturation_index(&main_maps(g)?.mu))
}

/// `m_red · extra = m`.
pub fn lemma51_check(g: &DecoratedGraph) -> Result<bool> {
    Ok(multiplicity_report(g)?.lemma51_ok)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityReport {
    pub is_main: bool,
    pub m: BigInt,
    pub m_red: BigInt,
    pub extra_factor: BigInt,
    pub lemma51_ok: bool,
    pub aut_order: BigUint,
    /// `m / |Aut|`, reduced.
    pub coefficient: BigRational,
}

/// All multiplicities of a main graph at once.
pub fn multiplicity_report(g: &DecoratedGraph) -> Result<MultiplicityReport> {
    let maps = main_maps(g)?;
    let m = m_of(&maps)?;
    let m_red = m_red_of(g, &maps)?;
    let extra = image_saturation_index(&maps.mu);
    let aut_order = automorphism_group_order(g);
    let coefficient = BigRational::new(m.clone(), BigInt::from(aut_order.clone()));
    Ok(MultiplicityReport {
        is_main: true,
        lemma51_ok: &m_red * &extra == m,
        m,
        m_red,
        extra_factor: extra,
        aut_order,
        coefficient,
    })
}

/// `(∏ α_ē, lcm α_ē)` for a basic bipartite graph, read off the contacts.
pub fn basic_case_closed_forms(g: &DecoratedGraph) -> Result<(BigInt, BigInt)> {
    let shape = |msg: &str| Err(Error::NotBasicShape(msg.to_string()));
    if g.mode() != Mode::Degeneration {
        return shape("not in degeneration mode");
    }
    if g.num_labels() != 2 {
        return shape("label set does not have two elements");
    }
    let side = |v: usize| {
        let d = g.vertices()[v].depth;
        (d.len() == 1).then(|| d.min().expect("nonempty"))
    };
    if (0..g.vertices().len()).any(|v| side(v).is_none()) {
        return shape("some vertex does not have a single-label depth");
    }
    let mut product = BigInt::one();
    let mut lcm = BigInt::one();
    for e in g.edges() {
        let (a, b) = (side(e.from).unwrap(), side(e.to).unwrap());
        if a == b {
            return shape("edge joins two vertices on the same side");
        }
        let c = e.contact.entries();
        if c[0] + c[1] != 0 || c[0] == 0 {
            return shape("edge contact is not of the form (-α, α) with α ≠ 0");
        }
        let alpha = BigInt::from(c[0]).abs();
        lcm = lcm.lcm(&alpha);
        product *= alpha;
    }
    Ok((product, lcm))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaTerm {
    pub graph: CanonicalForm,
    /// Opaque degree tag supplied by the caller.
    pub tag: String,
    pub m: BigInt,
    pub aut_order: BigUint,
    pub coefficient: BigRational,
}

/// One term `m(Γ)/|Aut(Γ)|` per input, ordered by canonical form then tag.
pub fn formula_terms(inputs: &[(DecoratedGraph, String)]) -> Result<Vec<FormulaTerm>> {
    let mut terms = Vec::with_capacity(inputs.len());
    for (index, (g, tag)) in inputs.iter().enumerate() {
        let r = match multiplicity_report(g) {
            Ok(r) => r,
            Err(Error::NotMain) => return Err(Error::NotMainInput { index, tag: tag.clone() }),
            Err(e) => return Err(e),
        };
        terms.push(FormulaTerm {
            graph: canonical_form(g),
            tag: tag.clone(),
            m: r.m,
            aut_order: r.aut_order,
            coefficient: r.coefficient,
        });
    }
    terms.sort_by(|a, b| (&a.graph, &a.tag).cmp(&(&b.graph, &b.tag)));
    Ok(terms)
}

/// Expected real dimension `2(c1(A) + (n-3)(1-g) + k)` of closed maps.
pub fn expected_dim_closed(c1a: i64, n: i64, g: u64, k: u64) -> i128 {
    2 * (i128::from(c1a) + i128::from(n - 3) * (1 - i128::from(g)) + i128::from(k))
}

/// Expected real dimension of log maps: the closed formula minus `2 A·D`.
pub fn expected_dim_log(c1a: i64, n: i64, g: u64, k: u64, ad: i64) -> i128 {
    expected_dim_closed(c1a, n, g, k) - 2 * i128::from(ad)
}
