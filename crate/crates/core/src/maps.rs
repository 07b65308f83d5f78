//! The lattice homomorphisms `ρ`, `ρ•` and `μ` of a decorated graph.
//!
//! Coordinates of the domain `𝔻 = Z^E ⊕ ⊕_v Z^{I_v}` come in this order:
//! one per edge, then `(v, i)` for each vertex in graph order and each
//! label `i ∈ I_v` ascending. The target `𝕋 = ⊕_e Z^{I_e}` lists `(e, i)`
//! by edge, then label. Sum-zero sublattices use the difference basis
//! `1_i - 1_{min I}`, and the quotient `Z^V/Z` drops the vertex with the
//! lexicographically least id.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{validate, DecoratedGraph, Mode};
use crate::linalg::{kernel_basis, smith_normal_form, IntegerMatrix};

/// One basis element of a lattice attached to a graph, by graph index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElement {
    /// `1_e` in `𝔻`.
    Edge { edge: usize },
    /// `1_{v,i}` in `𝔻`.
    VertexLabel { vertex: usize, label: usize },
    /// `1_{v,i} - 1_{v,base}` in `𝔻•`.
    VertexLabelDiff { vertex: usize, label: usize, base: usize },
    /// `1_{e,i}` in `𝕋`.
    EdgeLabel { edge: usize, label: usize },
    /// `1_{e,i} - 1_{e,base}` in `𝕋•`.
    EdgeLabelDiff { edge: usize, label: usize, base: usize },
    /// Class of `1_v` in `Z^V/Z`.
    VertexClass { vertex: usize },
}

impl BasisElement {
    /// Human-readable name using the graph's ids and labels.
    pub fn describe(&self, g: &DecoratedGraph) -> String {
        let v = |i: usize| g.vertices()[i].id.as_str();
        let e = |i: usize| g.edges()[i].id.as_str();
        let l = |i: usize| g.labels()[i].as_str();
        match *self {
            BasisElement::Edge { edge } => format!("1_{}", e(edge)),
            BasisElement::VertexLabel { vertex, label } => format!("1_{},{}", v(vertex), l(label)),
            BasisElement::VertexLabelDiff { vertex, label, base } => {
                format!("1_{0},{1}-1_{0},{2}", v(vertex), l(label), l(base))
            }
            BasisElement::EdgeLabel { edge, label } => format!("1_{},{}", e(edge), l(label)),
            BasisElement::EdgeLabelDiff { edge, label, base } => {
                format!("1_{0},{1}-1_{0},{2}", e(edge), l(label), l(base))
            }
            BasisElement::VertexClass { vertex } => format!("[1_{}]", v(vertex)),
        }
    }
}

/// Ordered bases of every lattice in play.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisCatalog {
    pub domain: Vec<BasisElement>,
    pub target: Vec<BasisElement>,
    pub domain_bullet: Vec<BasisElement>,
    pub target_bullet: Vec<BasisElement>,
    /// `𝕋 ⊕ Z^V/Z`: the target basis followed by the vertex classes.
    pub target_hat: Vec<BasisElement>,
    /// Vertex whose class is dropped from `Z^V/Z`, if there are vertices.
    pub dropped_vertex: Option<usize>,
}

impl BasisCatalog {
    pub fn new(g: &DecoratedGraph) -> Self {
        let mut domain: Vec<BasisElement> = (0..g.edges().len()).map(|edge| BasisElement::Edge { edge }).collect();
        let mut domain_bullet = domain.clone();
        for (vertex, v) in g.vertices().iter().enumerate() {
            domain.extend(v.depth.iter().map(|label| BasisElement::VertexLabel { vertex, label }));
            if let Some(base) = v.depth.min() {
                domain_bullet.extend(
                    v.depth
                        .iter()
                        .filter(|&i| i != base)
                        .map(|label| BasisElement::VertexLabelDiff { vertex, label, base }),
                );
            }
        }
        let mut target = Vec::new();
        let mut target_bullet = Vec::new();
        for edge in 0..g.edges().len() {
            let depth = g.edge_depth(edge);
            target.extend(depth.iter().map(|label| BasisElement::EdgeLabel { edge, label }));
            if let Some(base) = depth.min() {
                target_bullet.extend(
                    depth
                        .iter()
                        .filter(|&i| i != base)
                        .map(|label| BasisElement::EdgeLabelDiff { edge, label, base }),
                );
            }
        }
        let dropped_vertex = (0..g.vertices().len()).min_by(|&a, &b| g.vertices()[a].id.cmp(&g.vertices()[b].id));
        let mut target_hat = target.clone();
        target_hat.extend(
            (0..g.vertices().len())
                .filter(|&v| Some(v) != dropped_vertex)
                .map(|vertex| BasisElement::VertexClass { vertex }),
        );
        Self { domain, target, domain_bullet, target_bullet, target_hat, dropped_vertex }
    }

    pub fn domain_position(&self, element: BasisElement) -> Option<usize> {
        self.domain.iter().position(|&b| b == element)
    }

    pub fn target_position(&self, element: BasisElement) -> Option<usize> {
        self.target.iter().position(|&b| b == element)
    }
}

/// Matrices of `ρ`, `ρ•` and `μ` in the catalog bases, for the stored edge
/// orientations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeMapBundle {
    pub catalog: BasisCatalog,
    /// `(from, to)` per edge.
    pub orientation: Vec<(usize, usize)>,
    /// `𝕋 × 𝔻`.
    pub rho: IntegerMatrix,
    /// `𝕋• × 𝔻•`; only in degeneration mode, where `ρ(𝔻•) ⊆ 𝕋•`.
    pub rho_bullet: Option<IntegerMatrix>,
    /// `(𝕋 ⊕ Z^V/Z) × 𝔻`.
    pub mu: IntegerMatrix,
    /// Inclusion `𝔻• -> 𝔻`.
    pub domain_inclusion: IntegerMatrix,
    /// Inclusion `𝕋• -> 𝕋`.
    pub target_inclusion: IntegerMatrix,
}

pub fn build_maps(g: &DecoratedGraph) -> Result<LatticeMapBundle> {
    let report = validate(g);
    if !report.is_valid() {
        return Err(Error::InvalidGraph(report.violations));
    }
    Ok(build_maps_unchecked(g))
}

/// [`build_maps`] without validation. Entries of a contact vector outside
/// `I_e` are dropped, so the result is only meaningful for valid graphs.
pub fn build_maps_unchecked(g: &DecoratedGraph) -> LatticeMapBundle {
    let catalog = BasisCatalog::new(g);
    let col = |b: BasisElement| catalog.domain_position(b).expect("domain element");
    let row = |b: BasisElement| catalog.target_position(b).expect("target element");

    let mut rho = IntegerMatrix::zeros(catalog.target.len(), catalog.domain.len());
    for (k, e) in g.edges().iter().enumerate() {
        for i in g.edge_depth(k).iter() {
            let r = row(BasisElement::EdgeLabel { edge: k, label: i });
            rho[(r, col(BasisElement::Edge { edge: k }))] = BigInt::from(e.contact.get(i));
            if e.is_loop() {
                continue;
            }
            if g.vertices()[e.from].depth.contains(i) {
                rho[(r, col(BasisElement::VertexLabel { vertex: e.from, label: i }))] += 1;
            }
            if g.vertices()[e.to].depth.contains(i) {
                rho[(r, col(BasisElement::VertexLabel { vertex: e.to, label: i }))] -= 1;
            }
        }
    }

    let quotient_rows: Vec<usize> =
        (0..g.vertices().len()).filter(|&v| Some(v) != catalog.dropped_vertex).collect();
    let mut rho_prime = IntegerMatrix::zeros(quotient_rows.len(), catalog.domain.len());
    for (j, b) in catalog.domain.iter().enumerate() {
        if let BasisElement::VertexLabel { vertex, .. } = *b {
            if Some(vertex) == catalog.dropped_vertex {
                for r in 0..quotient_rows.len() {
                    rho_prime[(r, j)] = -BigInt::one();
                }
            } else {
                let r = quotient_rows.iter().position(|&w| w == vertex).expect("kept vertex");
                rho_prime[(r, j)] = BigInt::one();
            }
        }
    }
    let mu = rho.vstack(&rho_prime);

    let mut domain_inclusion = IntegerMatrix::zeros(catalog.domain.len(), catalog.domain_bullet.len());
    for (j, b) in catalog.domain_bullet.iter().enumerate() {
        match *b {
            BasisElement::Edge { edge } => domain_inclusion[(col(BasisElement::Edge { edge }), j)] = BigInt::one(),
            BasisElement::VertexLabelDiff { vertex, label, base } => {
                domain_inclusion[(col(BasisElement::VertexLabel { vertex, label }), j)] = BigInt::one();
                domain_inclusion[(col(BasisElement::VertexLabel { vertex, label: base }), j)] = -BigInt::one();
            }
            _ => unreachable!("domain bullet basis holds edges and differences"),
        }
    }
    let mut target_inclusion = IntegerMatrix::zeros(catalog.target.len(), catalog.target_bullet.len());
    let mut projection = IntegerMatrix::zeros(catalog.target_bullet.len(), catalog.target.len());
    for (j, b) in catalog.target_bullet.iter().enumerate() {
        let BasisElement::EdgeLabelDiff { edge, label, base } = *b else {
            unreachable!("target bullet basis holds differences")
        };
        let r = row(BasisElement::EdgeLabel { edge, label });
        target_inclusion[(r, j)] = BigInt::one();
        target_inclusion[(row(BasisElement::EdgeLabel { edge, label: base }), j)] = -BigInt::one();
        // On sum-zero vectors the difference coordinates are the non-base entries.
        projection[(j, r)] = BigInt::one();
    }
    let rho_bullet = (g.mode() == Mode::Degeneration).then(|| &(&projection * &rho) * &domain_inclusion);

    LatticeMapBundle {
        catalog,
        orientation: g.edges().iter().map(|e| (e.from, e.to)).collect(),
        rho,
        rho_bullet,
        mu,
        domain_inclusion,
        target_inclusion,
    }
}

/// Ranks, kernels and cokernels of `ρ` and `ρ•`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleInvariants {
    pub rank_d: usize,
    pub rank_t: usize,
    pub rank_d_bullet: usize,
    pub rank_t_bullet: usize,
    pub rank_rho: usize,
    pub k_basis: Vec<Vec<BigInt>>,
    pub ck_free_rank: usize,
    /// Invariant factors of `ρ` greater than one.
    pub ck_torsion: Vec<BigInt>,
    /// The bullet data exists only in degeneration mode.
    pub bullet: Option<BulletInvariants>,
    /// Free rank of `CK` (relative mode) or `CK•` (degeneration mode).
    pub obstruction_group_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BulletInvariants {
    pub rank_rho_bullet: usize,
    pub k_bullet_basis: Vec<Vec<BigInt>>,
    pub ck_bullet_free_rank: usize,
    pub ck_bullet_torsion: Vec<BigInt>,
}

pub fn compute_invariants(g: &DecoratedGraph) -> Result<ModuleInvariants> {
    Ok(invariants_of(&build_maps(g)?))
}

pub fn invariants_of(maps: &LatticeMapBundle) -> ModuleInvariants {
    let c = &maps.catalog;
    let snf = smith_normal_form(&maps.rho);
    let factors = snf.invariant_factors();
    let rank_rho = factors.len();
    let torsion = |f: Vec<BigInt>| f.into_iter().filter(|x| !x.is_one()).collect::<Vec<_>>();
    let ck_free_rank = c.target.len() - rank_rho;
    let bullet = maps.rho_bullet.as_ref().map(|rb| {
        let f = smith_normal_form(rb).invariant_factors();
        BulletInvariants {
            rank_rho_bullet: f.len(),
            k_bullet_basis: kernel_basis(rb),
            ck_bullet_free_rank: c.target_bullet.len() - f.len(),
            ck_bullet_torsion: torsion(f),
        }
    });
    let obstruction_group_dim = bullet.as_ref().map_or(ck_free_rank, |b| b.ck_bullet_free_rank);
    ModuleInvariants {
        rank_d: c.domain.len(),
        rank_t: c.target.len(),
        rank_d_bullet: c.domain_bullet.len(),
        rank_t_bullet: c.target_bullet.len(),
        rank_rho,
        k_basis: kernel_basis(&maps.rho),
        ck_free_rank,
        ck_torsion: torsion(factors),
        bullet,
        obstruction_group_dim,
    }
}

/// Basis of the saturated lattice `(Ker μ)^⊥ ⊂ 𝔻∨`.
pub fn k_perp_basis(g: &DecoratedGraph) -> Result<Vec<Vec<BigInt>>> {
    let maps = build_maps(g)?;
    let k = kernel_basis(&maps.mu);
    Ok(kernel_basis(&IntegerMatrix::from_big_rows(k, maps.catalog.domain.len())))
}

/// A vector of `𝔻` split into edge coordinates `λ_e` and vertex positions
/// `s_v ∈ Z^S` (zero off `I_v`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DomainVector<T> {
    pub lambda: Vec<T>,
    pub s: Vec<Vec<T>>,
}

impl<T: Clone + Zero> DomainVector<T> {
    pub fn split(g: &DecoratedGraph, x: &[T]) -> Self {
        let ne = g.edges().len();
        let lambda = x[..ne].to_vec();
        let mut s = vec![vec![T::zero(); g.num_labels()]; g.vertices().len()];
        let mut k = ne;
        for (v, vertex) in g.vertices().iter().enumerate() {
            for i in vertex.depth.iter() {
                s[v][i] = x[k].clone();
                k += 1;
            }
        }
        Self { lambda, s }
    }

    /// Inverse of [`split`](Self::split); entries of `s_v` off `I_v` are dropped.
    pub fn flatten(&self, g: &DecoratedGraph) -> Vec<T> {
        let mut out = self.lambda.clone();
        for (v, vertex) in g.vertices().iter().enumerate() {
            out.extend(vertex.depth.iter().map(|i| self.s[v][i].clone()));
        }
        out
    }
}

impl<T: fmt::Display> fmt::Display for DomainVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[T]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "λ=({})", join(&self.lambda))?;
        for s in &self.s {
            write!(f, " ({})", join(s))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::{hermite_normal_form, lattice_index_in_ambient, Index};

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn star_ranks() {
        let g = fixtures::star();
        let inv = compute_invariants(&g).unwrap();
        assert_eq!((inv.rank_d_bullet, inv.rank_t_bullet), (5, 6));
        assert_eq!((inv.rank_d, inv.rank_t), (9, 9));
        assert_eq!(inv.obstruction_group_dim, 1);
        let b = inv.bullet.unwrap();
        assert!(b.k_bullet_basis.is_empty());
        let maps = build_maps(&g).unwrap();
        let rb = maps.rho_bullet.unwrap();
        assert_eq!((rb.rows(), rb.cols()), (6, 5));
        let f = smith_normal_form(&rb).invariant_factors();
        assert_eq!(f, big(&[1, 1, 1, 1, 3]));
        assert_eq!(lattice_index_in_ambient(&rb), Index::Finite(BigInt::from(3)));
    }

    #[test]
    fn star_kernel_is_the_tropical_generator() {
        let maps = build_maps(&fixtures::star()).unwrap();
        let k = kernel_basis(&maps.mu);
        assert_eq!(k, vec![big(&[1, 1, 1, 1, 1, 1, 3, 3, 3])]);
        assert_eq!(kernel_basis(&maps.rho), k);
    }

    #[test]
    fn single_vertex_ranks() {
        let inv = compute_invariants(&fixtures::single_vertex(1, &[0])).unwrap();
        assert_eq!((inv.rank_d, inv.rank_t, inv.rank_d_bullet, inv.rank_t_bullet), (1, 0, 0, 0));
        let inv = compute_invariants(&fixtures::single_vertex(1, &[])).unwrap();
        assert_eq!((inv.rank_d, inv.rank_t, inv.obstruction_group_dim), (0, 0, 0));
        assert!(inv.k_basis.is_empty() && inv.ck_torsion.is_empty() && inv.bullet.is_none());
    }

    #[test]
    fn two_d_in_p3() {
        for d in 1..=6 {
            let g = fixtures::two_d_in_p3(d);
            let inv = compute_invariants(&g).unwrap();
            assert_eq!((inv.rank_d, inv.rank_t), (d + 2, 2 * d));
            assert_eq!(inv.obstruction_group_dim, d - 1);
            assert_eq!(inv.k_basis.len(), 1);
        }
    }

    #[test]
    fn commuting_square_and_kernel_description() {
        for g in [fixtures::star(), fixtures::bipartite(&[2, 3]), fixtures::basic_bipartite(2, 1, &[(0, 0, 2), (1, 0, 3)])] {
            let m = build_maps(&g).unwrap();
            let rb = m.rho_bullet.as_ref().unwrap();
            assert_eq!(&m.target_inclusion * rb, &m.rho * &m.domain_inclusion);
            for k in kernel_basis(&m.rho) {
                let x = DomainVector::split(&g, &k);
                for (e, edge) in g.edges().iter().enumerate() {
                    for i in 0..g.num_labels() {
                        let lhs = &x.s[edge.to][i] - &x.s[edge.from][i];
                        assert_eq!(lhs, &x.lambda[e] * edge.contact.get(i));
                    }
                }
            }
            let h = |a: &IntegerMatrix| {
                let k = kernel_basis(a);
                hermite_normal_form(&IntegerMatrix::from_big_rows(k, a.cols()))
            };
            assert_eq!(h(&m.mu), h(&m.rho));
        }
    }

    #[test]
    fn k_perp() {
        let g = fixtures::star();
        let basis = k_perp_basis(&g).unwrap();
        assert_eq!(basis.len(), 8);
        let eta = big(&[1, 1, 1, 1, 1, 1, 3, 3, 3]);
        for b in &basis {
            assert!(b.iter().zip(&eta).map(|(x, y)| x * y).sum::<BigInt>().is_zero());
        }
        assert_eq!(k_perp_basis(&fixtures::bipartite(&[2])).unwrap().len(), 2);
        assert_eq!(k_perp_basis(&fixtures::single_vertex(1, &[])).unwrap().len(), 0);
    }

    #[test]
    fn invalid_graph_is_rejected() {
        let g = crate::graph::GraphBuilder::new(Mode::Relative, ["1", "2"])
            .vertex("a", 0, &[])
            .vertex("b", 0, &[])
            .edge("e", "a", "b", &[1, 1])
            .build()
            .unwrap();
        assert!(matches!(build_maps(&g), Err(Error::InvalidGraph(_))));
    }

    #[test]
    fn describe_names_graph_elements() {
        let g = fixtures::star();
        let c = BasisCatalog::new(&g);
        assert_eq!(c.domain[0].describe(&g), "1_e1");
        assert_eq!(c.domain[3].describe(&g), "1_v0,1");
        assert_eq!(c.domain_bullet[3].describe(&g), "1_v0,2-1_v0,1");
        assert_eq!(c.target_hat.last().unwrap().describe(&g), "[1_v3]");
        assert_eq!(c.dropped_vertex, Some(0));
    }
}
