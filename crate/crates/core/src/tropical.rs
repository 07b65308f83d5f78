//! The tropical condition: positive vertex positions `s_v` supported on
//! `I_v` and positive edge lengths `λ_e` with `s_to - s_from = λ_e s_ē`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{validate, DecoratedGraph, Mode};
use crate::linalg::{kernel_basis, strict_feasible, ColumnKind, Feasibility, StrictFeasibilityProblem};
use crate::maps::{build_maps, build_maps_unchecked, DomainVector};

pub type TropicalWitness = DomainVector<BigRational>;

impl TropicalWitness {
    /// Exact check of every equality and strict inequality.
    pub fn verify(&self, g: &DecoratedGraph) -> bool {
        if self.lambda.len() != g.edges().len() || self.s.len() != g.vertices().len() {
            return false;
        }
        let positions = g.vertices().iter().zip(&self.s).all(|(v, s)| {
            s.len() == g.num_labels()
                && s.iter()
                    .enumerate()
                    .all(|(i, x)| if v.depth.contains(i) { x.is_positive() } else { x.is_zero() })
        });
        let lengths = self.lambda.iter().all(|l| l.is_positive());
        let balanced = g.edges().iter().zip(&self.lambda).all(|(e, l)| {
            (0..g.num_labels()).all(|i| &self.s[e.to][i] - &self.s[e.from][i] == l * BigInt::from(e.contact.get(i)))
        });
        positions && lengths && balanced
    }

    pub fn scaled(&self, factor: &BigRational) -> Self {
        Self {
            lambda: self.lambda.iter().map(|x| x * factor).collect(),
            s: self.s.iter().map(|v| v.iter().map(|x| x * factor).collect()).collect(),
        }
    }
}

/// Multipliers `y_{e,i}` of the balancing equations proving infeasibility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalCertificate {
    /// `(edge, label)` of each balancing equation, in system order.
    pub rows: Vec<(usize, usize)>,
    pub multipliers: Vec<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TropicalOutcome {
    Feasible(TropicalWitness),
    Infeasible(TropicalCertificate),
}

impl TropicalOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, TropicalOutcome::Feasible(_))
    }

    pub fn witness(&self) -> Option<&TropicalWitness> {
        match self {
            TropicalOutcome::Feasible(w) => Some(w),
            TropicalOutcome::Infeasible(_) => None,
        }
    }
}

/// The strict feasibility system in the domain coordinates of `𝔻`, with one
/// equation `s_{to,i} - s_{from,i} - λ_e s_{ē,i} = 0` per edge and label.
pub fn tropical_system(g: &DecoratedGraph) -> (StrictFeasibilityProblem, Vec<(usize, usize)>) {
    let ne = g.edges().len();
    let mut offset = Vec::with_capacity(g.vertices().len());
    let mut cols = ne;
    for v in g.vertices() {
        offset.push(cols);
        cols += v.depth.len();
    }
    let position = |v: usize, i: usize| {
        let depth = g.vertices()[v].depth;
        depth.contains(i).then(|| offset[v] + depth.iter().take_while(|&j| j < i).count())
    };
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for (k, e) in g.edges().iter().enumerate() {
        for i in 0..g.num_labels() {
            let mut r = vec![BigRational::zero(); cols];
            r[k] = BigRational::from_integer(BigInt::from(-e.contact.get(i)));
            if let Some(c) = position(e.to, i) {
                r[c] += BigRational::from_integer(1.into());
            }
            if let Some(c) = position(e.from, i) {
                r[c] -= BigRational::from_integer(1.into());
            }
            rows.push(r);
            labels.push((k, i));
        }
    }
    let p = StrictFeasibilityProblem::new(rows, vec![ColumnKind::Strict; cols]).expect("rows match columns");
    (p, labels)
}

pub fn tropical_feasible(g: &DecoratedGraph) -> Result<TropicalOutcome> {
    let report = validate(g);
    if !report.is_valid() {
        return Err(Error::InvalidGraph(report.violations));
    }
    Ok(tropical_feasible_unchecked(g))
}

/// [`tropical_feasible`] without validating `g` first.
pub fn tropical_feasible_unchecked(g: &DecoratedGraph) -> TropicalOutcome {
    // A sign-definite kernel line is already a witness; skip the simplex.
    let basis = kernel_basis(&build_maps_unchecked(g).rho);
    if let [line] = basis.as_slice() {
        if let Some(eta) = oriented(line) {
            let x: Vec<BigRational> = eta.into_iter().map(BigRational::from_integer).collect();
            return TropicalOutcome::Feasible(DomainVector::split(g, &x));
        }
    }
    let (p, rows) = tropical_system(g);
    match strict_feasible(&p) {
        Feasibility::Witness(x) => TropicalOutcome::Feasible(DomainVector::split(g, &x)),
        Feasibility::Certificate(y) => TropicalOutcome::Infeasible(TropicalCertificate { rows, multipliers: y }),
    }
}

/// The cone `σ` of tropical solutions, described through `K_R = Ker ρ ⊗ R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeDescription {
    pub kernel_basis: Vec<Vec<BigInt>>,
    pub dimension: usize,
    /// Whether the open positive orthant meets `K_R`.
    pub interior_nonempty: bool,
    /// Primitive positive generator, when `K_R` is a feasible line.
    pub generator: Option<Vec<BigInt>>,
}

pub fn cone(g: &DecoratedGraph) -> Result<ConeDescription> {
    let maps = build_maps(g)?;
    let basis = kernel_basis(&maps.rho);
    let interior_nonempty = tropical_feasible_unchecked(g).is_feasible();
    let generator = if basis.len() == 1 { oriented(&basis[0]) } else { None };
    Ok(ConeDescription { dimension: basis.len(), kernel_basis: basis, interior_nonempty, generator })
}

/// Codimension of the stratum: `dim K_R`.
pub fn stratum_codim(g: &DecoratedGraph) -> Result<usize> {
    Ok(kernel_basis(&build_maps(g)?.rho).len())
}

/// `±v` with all entries positive, if either sign works.
fn oriented(v: &[BigInt]) -> Option<Vec<BigInt>> {
    if v.iter().all(|x| x.is_positive()) {
        Some(v.to_vec())
    } else if v.iter().all(|x| x.is_negative()) {
        Some(v.iter().map(|x| -x).collect())
    } else {
        None
    }
}

/// Primitive integral generator `η` of a one-dimensional kernel, signed so
/// that every coordinate is positive.
pub fn primitive_generator(g: &DecoratedGraph) -> Result<Vec<BigInt>> {
    let basis = kernel_basis(&build_maps(g)?.rho);
    if basis.len() != 1 {
        return Err(Error::KernelDimension { expected: 1, found: basis.len() });
    }
    oriented(&basis[0]).ok_or(Error::NotFeasible)
}

/// `c = Σ_{i ∈ I_v} η_{v,i}`, checked to agree across vertices.
pub fn vertical_constant(g: &DecoratedGraph) -> Result<BigInt> {
    if g.mode() != Mode::Degeneration {
        return Err(Error::WrongMode { expected: "degeneration" });
    }
    let eta = primitive_generator(g)?;
    constant_of(g, &eta)
}

pub(crate) fn constant_of(g: &DecoratedGraph, eta: &[BigInt]) -> Result<BigInt> {
    let x = DomainVector::split(g, eta);
    let mut sums = x.s.iter().map(|s| s.iter().sum::<BigInt>());
    let c = sums.next().ok_or_else(|| Error::Structural("graph has no vertices".into()))?;
    for (v, other) in sums.enumerate() {
        if other != c {
            return Err(Error::Inconsistent(format!(
                "vertex {:?} has vertical constant {other}, vertex {:?} has {c}",
                g.vertices()[v + 1].id,
                g.vertices()[0].id
            )));
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn star_witness() {
        let g = fixtures::star();
        let w = tropical_feasible(&g).unwrap();
        let w = w.witness().unwrap();
        assert!(w.verify(&g));
        assert_eq!(w.lambda, q(&[1, 1, 1]));
        assert_eq!(w.s, vec![q(&[1, 1, 1]), q(&[3, 0, 0]), q(&[0, 3, 0]), q(&[0, 0, 3])]);
        let half = BigRational::new(1.into(), 2.into());
        assert!(w.scaled(&half).verify(&g));
    }

    #[test]
    fn plane_cubic_break() {
        let g = fixtures::plane_cubic_break(false);
        match tropical_feasible(&g).unwrap() {
            TropicalOutcome::Infeasible(c) => {
                let (p, _) = tropical_system(&g);
                assert!(p.is_certificate(&c.multipliers));
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
        let g = fixtures::plane_cubic_break(true);
        let w = tropical_feasible(&g).unwrap();
        let w = w.witness().unwrap();
        assert!(w.verify(&g));
        assert_eq!(w.s, vec![q(&[0, 0]), q(&[1, 0]), q(&[2, 1])]);
        assert_eq!(w.lambda, q(&[1, 1]));
    }

    #[test]
    fn codimension() {
        assert_eq!(stratum_codim(&fixtures::two_d_in_p3(3)).unwrap(), 1);
        assert_eq!(stratum_codim(&fixtures::star()).unwrap(), 1);
        assert_eq!(stratum_codim(&fixtures::single_vertex(1, &[])).unwrap(), 0);
    }

    #[test]
    fn generators_and_constants() {
        let star = fixtures::star();
        assert_eq!(primitive_generator(&star).unwrap(), big(&[1, 1, 1, 1, 1, 1, 3, 3, 3]));
        assert_eq!(vertical_constant(&star).unwrap(), BigInt::from(3));

        let b = fixtures::bipartite(&[2, 3]);
        assert_eq!(primitive_generator(&b).unwrap(), big(&[3, 2, 6, 6]));
        assert_eq!(vertical_constant(&b).unwrap(), BigInt::from(6));

        let v = fixtures::single_vertex(1, &[0]);
        assert_eq!(primitive_generator(&v).unwrap(), big(&[1]));
        assert_eq!(vertical_constant(&v).unwrap(), BigInt::from(1));
    }

    #[test]
    fn generator_errors() {
        let two = fixtures::single_vertex(2, &[0, 1]);
        assert_eq!(primitive_generator(&two), Err(Error::KernelDimension { expected: 1, found: 2 }));
        assert_eq!(
            vertical_constant(&fixtures::two_d_in_p3(2)),
            Err(Error::WrongMode { expected: "degeneration" })
        );
        // Opposite contacts on parallel edges: a line in the kernel with mixed signs.
        let g = crate::graph::GraphBuilder::new(Mode::Degeneration, ["1", "2"])
            .vertex("a", 0, &["1", "2"])
            .vertex("b", 0, &["1", "2"])
            .edge("e", "a", "b", &[-1, 1])
            .edge("f", "a", "b", &[1, -1])
            .build()
            .unwrap();
        assert!(!tropical_feasible(&g).unwrap().is_feasible());
    }

    #[test]
    fn cone_summary() {
        let c = cone(&fixtures::star()).unwrap();
        assert_eq!(c.dimension, 1);
        assert!(c.interior_nonempty);
        assert_eq!(c.generator.unwrap(), big(&[1, 1, 1, 1, 1, 1, 3, 3, 3]));
        let c = cone(&fixtures::single_vertex(2, &[0, 1])).unwrap();
        assert_eq!((c.dimension, c.interior_nonempty, c.generator), (2, true, None));
    }
}
