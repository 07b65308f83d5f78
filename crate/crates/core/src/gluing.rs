//! Binomial equations of the gluing-parameter spaces.
//!
//! Each node carries a smoothing parameter `ε_e` and each component `v` a
//! pushing parameter `t_{v,i}` per label `i ∈ I_v`. Along an edge oriented
//! so that `s_{ē,i} >= 0` they satisfy `ε_e^{s_{ē,i}} t_{v,i} = t_{v',i}`,
//! where `t_{w,i}` is `1` when `i ∉ I_w`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::degeneration::multiplicity_m_red;
use crate::error::{Error, Result};
use crate::graph::{validate, DecoratedGraph, Mode};
use crate::linalg::{hermite_normal_form, image_saturation_index, IntegerMatrix};
use crate::maps::{build_maps, BasisElement, BasisCatalog, DomainVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GluingVariable {
    /// `ε_e`.
    Edge { edge: usize },
    /// `t_{v,i}`.
    Push { vertex: usize, label: usize },
}

impl GluingVariable {
    pub fn name(&self, g: &DecoratedGraph) -> String {
        match *self {
            GluingVariable::Edge { edge } => format!("eps[{}]", g.edges()[edge].id),
            GluingVariable::Push { vertex, label } => {
                format!("t[{},{}]", g.vertices()[vertex].id, g.labels()[label])
            }
        }
    }

    /// All variables of a graph, in the coordinate order of `𝔻`.
    pub fn all(g: &DecoratedGraph) -> Vec<GluingVariable> {
        BasisCatalog::new(g).domain.iter().map(|&b| Self::from_basis(b)).collect()
    }

    fn from_basis(b: BasisElement) -> Self {
        match b {
            BasisElement::Edge { edge } => GluingVariable::Edge { edge },
            BasisElement::VertexLabel { vertex, label } => GluingVariable::Push { vertex, label },
            other => unreachable!("{other:?} is not a domain basis element"),
        }
    }
}

pub type Monomial = BTreeMap<GluingVariable, u64>;
pub type Assignment = BTreeMap<GluingVariable, BigRational>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Binomial {
    pub lhs: Monomial,
    pub rhs: Monomial,
}

impl Binomial {
    fn new(lhs: Monomial, rhs: Monomial) -> Option<Self> {
        (lhs != rhs).then_some(Self { lhs, rhs })
    }

    /// Evaluates both sides; `None` if a variable is unassigned.
    pub fn holds_at(&self, point: &Assignment) -> Option<bool> {
        Some(evaluate(&self.lhs, point)? == evaluate(&self.rhs, point)?)
    }

    /// Exponent vector `lhs - rhs` in the coordinates of `𝔻`.
    pub fn exponent(&self, variables: &[GluingVariable]) -> Vec<BigInt> {
        variables
            .iter()
            .map(|v| {
                let a = self.lhs.get(v).copied().unwrap_or(0);
                let b = self.rhs.get(v).copied().unwrap_or(0);
                BigInt::from(a) - BigInt::from(b)
            })
            .collect()
    }

    pub fn display<'a>(&'a self, g: &'a DecoratedGraph) -> impl fmt::Display + 'a {
        BinomialDisplay(self, g)
    }
}

struct BinomialDisplay<'a>(&'a Binomial, &'a DecoratedGraph);

impl fmt::Display for BinomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |m: &Monomial| {
            if m.is_empty() {
                return "1".to_string();
            }
            m.iter()
                .map(|(v, &e)| if e == 1 { v.name(self.1) } else { format!("{}^{e}", v.name(self.1)) })
                .collect::<Vec<_>>()
                .join("*")
        };
        write!(f, "{} = {}", side(&self.0.lhs), side(&self.0.rhs))
    }
}

fn evaluate(m: &Monomial, point: &Assignment) -> Option<BigRational> {
    let mut acc = BigRational::one();
    for (v, &e) in m {
        let x = point.get(v)?;
        acc *= num_traits::pow(x.clone(), usize::try_from(e).ok()?);
    }
    Some(acc)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GluingOptions {
    /// Emit the product relation for every adjacent pair of vertices, not
    /// only along a spanning tree.
    pub all_adjacent_pairs: bool,
    /// Emit `x^{m+} = x^{m-}` for a Hermite basis of the image of the dual
    /// map instead of the displayed relations.
    pub lattice_ideal: bool,
}

pub fn binomial_relations(g: &DecoratedGraph, options: GluingOptions) -> Result<Vec<Binomial>> {
    let report = validate(g);
    if !report.is_valid() {
        return Err(Error::InvalidGraph(report.violations));
    }
    if options.lattice_ideal {
        return lattice_ideal_relations(g);
    }
    let push = |v: usize, i: usize| {
        let mut m = Monomial::new();
        if g.vertices()[v].depth.contains(i) {
            m.insert(GluingVariable::Push { vertex: v, label: i }, 1);
        }
        m
    };
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for (k, e) in g.edges().iter().enumerate() {
        for i in g.edge_depth(k).iter() {
            let s = e.contact.get(i);
            let (low, high) = if s >= 0 { (e.from, e.to) } else { (e.to, e.from) };
            let mut lhs = push(low, i);
            if s != 0 {
                lhs.insert(GluingVariable::Edge { edge: k }, s.unsigned_abs());
            }
            if let Some(b) = Binomial::new(lhs, push(high, i)) {
                if seen.insert(b.clone()) {
                    out.push(b);
                }
            }
        }
    }
    if g.mode() == Mode::Degeneration {
        let product = |v: usize| -> Monomial {
            g.vertices()[v].depth.iter().map(|label| (GluingVariable::Push { vertex: v, label }, 1)).collect()
        };
        for (a, b) in adjacent_pairs(g, options.all_adjacent_pairs) {
            if let Some(rel) = Binomial::new(product(a), product(b)) {
                if seen.insert(rel.clone()) {
                    out.push(rel);
                }
            }
        }
    }
    Ok(out)
}

/// Tree edges of a breadth-first search from vertex 0, or every adjacent
/// pair once.
fn adjacent_pairs(g: &DecoratedGraph, all: bool) -> Vec<(usize, usize)> {
    if all {
        let pairs: BTreeSet<(usize, usize)> = g
            .edges()
            .iter()
            .filter(|e| !e.is_loop())
            .map(|e| (e.from.min(e.to), e.from.max(e.to)))
            .collect();
        return pairs.into_iter().collect();
    }
    let adj = g.adjacency();
    let mut seen = vec![false; g.vertices().len()];
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    if !seen.is_empty() {
        seen[0] = true;
        queue.push_back(0);
    }
    while let Some(v) = queue.pop_front() {
        for &(w, _) in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                out.push((v, w));
                queue.push_back(w);
            }
        }
    }
    out
}

fn lattice_ideal_relations(g: &DecoratedGraph) -> Result<Vec<Binomial>> {
    let maps = build_maps(g)?;
    let a = if g.mode() == Mode::Degeneration { &maps.mu } else { &maps.rho };
    let vars = GluingVariable::all(g);
    let h = hermite_normal_form(a);
    let mut out = Vec::new();
    for r in 0..h.rows() {
        let mut lhs = Monomial::new();
        let mut rhs = Monomial::new();
        for (j, x) in h.row(r).iter().enumerate() {
            let e = x.abs().to_u64().ok_or_else(|| Error::Inconsistent("exponent exceeds u64".into()))?;
            if x.is_positive() {
                lhs.insert(vars[j], e);
            } else if x.is_negative() {
                rhs.insert(vars[j], e);
            }
        }
        out.extend(Binomial::new(lhs, rhs));
    }
    Ok(out)
}

/// Number of toric components: the saturation index of `ρ` (relative) or
/// `μ` (degeneration).
pub fn component_count(g: &DecoratedGraph) -> Result<BigInt> {
    let maps = build_maps(g)?;
    Ok(image_saturation_index(if g.mode() == Mode::Degeneration { &maps.mu } else { &maps.rho }))
}

/// Degree of the projection of the reduced gluing curve to the base.
pub fn projection_degree(g: &DecoratedGraph) -> Result<BigInt> {
    multiplicity_m_red(g)
}

/// Whether `point` satisfies the displayed relations of `g`.
pub fn check_point(g: &DecoratedGraph, point: &Assignment) -> Result<bool> {
    let relations = binomial_relations(g, GluingOptions::default())?;
    for v in GluingVariable::all(g) {
        if !point.contains_key(&v) {
            return Err(Error::Structural(format!("no value for {}", v.name(g))));
        }
    }
    Ok(relations.iter().all(|b| b.holds_at(point) == Some(true)))
}

/// The point `ε_e = τ^{λ_e}`, `t_{v,i} = τ^{s_{v,i}}` for a nonnegative
/// vector `κ` of `𝔻`.
pub fn monomial_curve_point(g: &DecoratedGraph, kappa: &[BigInt], tau: &BigRational) -> Result<Assignment> {
    let vars = GluingVariable::all(g);
    if kappa.len() != vars.len() {
        return Err(Error::Structural(format!("expected {} coordinates, got {}", vars.len(), kappa.len())));
    }
    let mut point = Assignment::new();
    for (v, k) in vars.into_iter().zip(kappa) {
        let e = k
            .to_usize()
            .ok_or_else(|| Error::Structural(format!("exponent {k} is negative or too large")))?;
        point.insert(v, num_traits::pow(tau.clone(), e));
    }
    Ok(point)
}

/// `∏_{i ∈ I_v} t_{v,i}`, the value of the projection to the base at `v`.
pub fn fiber_value(g: &DecoratedGraph, point: &Assignment, vertex: usize) -> Option<BigRational> {
    let mut acc = BigRational::one();
    for label in g.vertices()[vertex].depth.iter() {
        acc *= point.get(&GluingVariable::Push { vertex, label })?;
    }
    Some(acc)
}

/// Exponent vectors of `relations` as the rows of a matrix over `𝔻`.
pub fn relation_matrix(g: &DecoratedGraph, relations: &[Binomial]) -> IntegerMatrix {
    let vars = GluingVariable::all(g);
    IntegerMatrix::from_big_rows(relations.iter().map(|b| b.exponent(&vars)).collect(), vars.len())
}

/// Splits a point back into edge and vertex coordinates.
pub fn split_point(g: &DecoratedGraph, point: &Assignment) -> Option<DomainVector<BigRational>> {
    let x: Option<Vec<BigRational>> = GluingVariable::all(g).iter().map(|v| point.get(v).cloned()).collect();
    Some(DomainVector::split(g, &x?))
}

impl Zero for Binomial {
    fn zero() -> Self {
        Self { lhs: Monomial::new(), rhs: Monomial::new() }
    }
    fn is_zero(&self) -> bool {
        self.lhs.is_empty() && self.rhs.is_empty()
    }
}

impl std::ops::Add for Binomial {
    type Output = Binomial;
    /// Product of the two relations, side by side.
    fn add(mut self, o: Binomial) -> Binomial {
        for (v, e) in o.lhs {
            *self.lhs.entry(v).or_insert(0) += e;
        }
        for (v, e) in o.rhs {
            *self.rhs.entry(v).or_insert(0) += e;
        }
        self
    }
}
