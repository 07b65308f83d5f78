//! Slow, independent reference implementations used to cross-check the
//! fast paths. Each is exponential in some parameter and refuses (returns
//! `None`) past a size limit rather than running forever.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::graph::DecoratedGraph;
use crate::linalg::{ColumnKind, Index, IntegerMatrix, StrictFeasibilityProblem};

/// `[Z^n : Im(Aᵀ)]` with `n = cols(A)`, by breadth-first enumeration of
/// `Im(Aᵀ) / M Z^n` where `M` is a nonzero maximal minor. `None` when the
/// quotient group has more than `limit` elements to visit.
pub fn coset_ambient_index(a: &IntegerMatrix, limit: usize) -> Option<Index> {
    let n = a.cols();
    if n == 0 {
        return Some(Index::Finite(BigInt::from(1)));
    }
    let m = subsets(a.rows(), n)
        .into_iter()
        .map(|rows| a.select_rows(&rows).determinant().abs())
        .filter(|d| !d.is_zero())
        .min();
    let Some(m) = m else { return Some(Index::Infinite) };
    let modulus = m.to_i64()?;
    let states = u32::try_from(n).ok().and_then(|n| modulus.checked_pow(n))?;
    let gens: Vec<Vec<i64>> = (0..a.rows())
        .map(|r| a.row(r).iter().map(|x| x.mod_floor(&m).to_i64().expect("reduced")).collect())
        .collect();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(vec![0i64; n]);
    queue.push_back(vec![0i64; n]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y: Vec<i64> = x.iter().zip(g).map(|(a, b)| (a + b) % modulus).collect();
            if seen.insert(y.clone()) {
                if seen.len() > limit {
                    return None;
                }
                queue.push_back(y);
            }
        }
    }
    Some(Index::Finite(BigInt::from(states) / BigInt::from(seen.len())))
}

/// Product of the nonzero invariant factors as the gcd of the `r × r`
/// minors, `r` the rank. `None` when there are more than `limit` minors.
pub fn determinantal_saturation_index(a: &IntegerMatrix, limit: usize) -> Option<BigInt> {
    let r = a.rank();
    if r == 0 {
        return Some(BigInt::from(1));
    }
    let row_sets = subsets(a.rows(), r);
    let col_sets = subsets(a.cols(), r);
    if row_sets.len().checked_mul(col_sets.len())? > limit {
        return None;
    }
    let t = a.transpose();
    let mut g = BigInt::zero();
    for cols in &col_sets {
        let sub = t.select_rows(cols).transpose();
        for rows in &row_sets {
            g = g.gcd(&sub.select_rows(rows).determinant());
        }
    }
    Some(g)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// A homogeneous inequality `a·x < 0` (strict) or `a·x <= 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Ineq {
    a: Vec<BigRational>,
    strict: bool,
}

impl Ineq {
    /// Scales so the first nonzero coefficient is `±1`, for deduplication.
    fn normalized(mut self) -> Self {
        if let Some(p) = self.a.iter().find(|x| !x.is_zero()).cloned() {
            let s = p.abs();
            self.a.iter_mut().for_each(|x| *x /= &s);
        }
        self
    }
}

/// Strict feasibility by substituting out the equalities and then running
/// Fourier–Motzkin elimination on the sign constraints. `None` if more than
/// `limit` inequalities accumulate.
pub fn fourier_motzkin_feasible(p: &StrictFeasibilityProblem, limit: usize) -> Option<bool> {
    let n = p.num_vars();
    // Express the solution space of A x = 0 as x = B z.
    let mut rows: Vec<Vec<BigRational>> = p.rows().to_vec();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(k) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, k);
        let inv = rows[r][c].recip();
        rows[r].iter_mut().for_each(|x| *x *= &inv);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..n {
                    let d = &f * &rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.iter().any(|&(_, pc)| pc == *c)).collect();
    // x_c for a pivot column is -Σ_f row[f] z_f; a free column is z_f itself.
    let coordinate = |c: usize| -> Vec<BigRational> {
        match pivots.iter().find(|&&(_, pc)| pc == c) {
            Some(&(pr, _)) => free.iter().map(|&f| -rows[pr][f].clone()).collect(),
            None => free.iter().map(|&f| BigRational::from_integer(BigInt::from(i64::from(f == c)))).collect(),
        }
    };
    let mut system: HashSet<Ineq> = HashSet::new();
    for (c, kind) in p.kinds().iter().enumerate() {
        let neg: Vec<BigRational> = coordinate(c).into_iter().map(|x| -x).collect();
        match kind {
            ColumnKind::Strict => system.insert(Ineq { a: neg, strict: true }.normalized()),
            ColumnKind::Nonnegative => system.insert(Ineq { a: neg, strict: false }.normalized()),
            ColumnKind::Free => false,
        };
    }
    for v in 0..free.len() {
        let (mut pos, mut negs, mut rest) = (Vec::new(), Vec::new(), HashSet::new());
        for q in system {
            if q.a[v].is_positive() {
                pos.push(q);
            } else if q.a[v].is_negative() {
                negs.push(q);
            } else {
                rest.insert(q);
            }
        }
        for a in &pos {
            for b in &negs {
                let (fa, fb) = (-b.a[v].clone(), a.a[v].clone());
                let combined: Vec<BigRational> = a.a.iter().zip(&b.a).map(|(x, y)| x * &fa + y * &fb).collect();
                rest.insert(Ineq { a: combined, strict: a.strict || b.strict }.normalized());
                if rest.len() > limit {
                    return None;
                }
            }
        }
        system = rest;
    }
    // Only constant constraints remain: `0 < 0` is the contradiction.
    Some(!system.iter().any(|q| q.strict))
}

/// Vertex bijections preserving decorations and fixing vertices with legs,
/// paired with edge bijections, counted by exhaustive search.
pub fn brute_force_automorphism_count(g: &DecoratedGraph) -> u64 {
    let n = g.vertices().len();
    let mut total = 0;
    for p in permutations(n) {
        if vertex_map_ok(g, g, &p) {
            total += edge_matchings(g, g, &p);
        }
    }
    total
}

/// Whether some vertex and edge bijection carries `g` onto `h`, legs
/// matched by order.
pub fn brute_force_isomorphic(g: &DecoratedGraph, h: &DecoratedGraph) -> bool {
    if g.mode() != h.mode()
        || g.labels() != h.labels()
        || g.vertices().len() != h.vertices().len()
        || g.edges().len() != h.edges().len()
        || g.legs().len() != h.legs().len()
    {
        return false;
    }
    permutations(g.vertices().len())
        .into_iter()
        .any(|p| vertex_map_ok(g, h, &p) && edge_matchings(g, h, &p) > 0)
}

fn vertex_map_ok(g: &DecoratedGraph, h: &DecoratedGraph, p: &[usize]) -> bool {
    let decorations = g.vertices().iter().zip(p).all(|(v, &w)| {
        let u = &h.vertices()[w];
        (v.genus, v.depth, &v.degree, v.c1) == (u.genus, u.depth, &u.degree, u.c1)
    });
    let legs: BTreeSet<_> = g.legs().iter().map(|l| (l.order, p[l.vertex], l.contact.clone())).collect();
    let target: BTreeSet<_> = h.legs().iter().map(|l| (l.order, l.vertex, l.contact.clone())).collect();
    decorations && legs == target
}

/// Number of (edge bijection, orientation) choices compatible with `p`.
fn edge_matchings(g: &DecoratedGraph, h: &DecoratedGraph, p: &[usize]) -> u64 {
    // ways[e][f]: orientations carrying edge e of g onto edge f of h.
    let ways: Vec<Vec<u64>> = g
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (p[e.from], p[e.to]);
            h.edges()
                .iter()
                .map(|f| {
                    let fwd = (a, b) == (f.from, f.to) && e.contact == f.contact;
                    let rev = (a, b) == (f.to, f.from) && e.contact == f.contact.negated();
                    u64::from(fwd) + u64::from(rev)
                })
                .collect()
        })
        .collect();
    fn go(e: usize, ways: &[Vec<u64>], used: &mut [bool]) -> u64 {
        if e == ways.len() {
            return 1;
        }
        let mut total = 0;
        for f in 0..used.len() {
            if !used[f] && ways[e][f] > 0 {
                used[f] = true;
                total += ways[e][f] * go(e + 1, ways, used);
                used[f] = false;
            }
        }
        total
    }
    go(0, &ways, &mut vec![false; h.edges().len()])
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    heap(n, &mut cur, &mut out);
    out
}

fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(cur.clone());
        return;
    }
    for i in 0..k - 1 {
        heap(k - 1, cur, out);
        if k % 2 == 0 {
            cur.swap(i, k - 1);
        } else {
            cur.swap(0, k - 1);
        }
    }
    heap(k - 1, cur, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::automorphism_group_order;
    use crate::linalg::{image_saturation_index, lattice_index_in_ambient, strict_feasible};

    #[test]
    fn coset_indices() {
        let a = IntegerMatrix::from_rows(&[[2, 0], [0, 3]]);
        assert_eq!(coset_ambient_index(&a, 10_000), Some(Index::Finite(6.into())));
        let a = IntegerMatrix::from_rows(&[[2, 4], [6, 8], [4, 0]]);
        assert_eq!(coset_ambient_index(&a, 10_000), Some(lattice_index_in_ambient(&a)));
        let a = IntegerMatrix::from_rows(&[[1, 2]]);
        assert_eq!(coset_ambient_index(&a, 10_000), Some(Index::Infinite));
    }

    #[test]
    fn determinantal_indices() {
        let a = IntegerMatrix::from_rows(&[[-6, 4, 0], [10, -4, 8]]);
        assert_eq!(determinantal_saturation_index(&a, 100), Some(BigInt::from(16)));
        assert_eq!(image_saturation_index(&a), BigInt::from(16));
        assert_eq!(determinantal_saturation_index(&IntegerMatrix::zeros(2, 2), 100), Some(BigInt::from(1)));
    }

    #[test]
    fn fourier_motzkin_agrees_on_fixtures() {
        let q = |v: &[i64]| v.iter().map(|&x| BigRational::from_integer(x.into())).collect::<Vec<_>>();
        use ColumnKind::*;
        let cases = [
            (vec![q(&[1, -1])], vec![Strict, Strict], true),
            (vec![q(&[1, 1])], vec![Strict, Strict], false),
            (vec![q(&[1, 1])], vec![Strict, Free], true),
            (vec![q(&[1, 1])], vec![Strict, Nonnegative], false),
            (vec![q(&[1, 1, -2]), q(&[0, 1, -1])], vec![Strict, Strict, Strict], true),
        ];
        for (rows, kinds, expected) in cases {
            let p = StrictFeasibilityProblem::new(rows, kinds).unwrap();
            assert_eq!(fourier_motzkin_feasible(&p, 10_000), Some(expected));
            assert_eq!(strict_feasible(&p).is_feasible(), expected);
        }
    }

    #[test]
    fn automorphisms() {
        for g in [fixtures::star(), fixtures::star().without_legs(), fixtures::bipartite(&[2, 2]), fixtures::bipartite(&[1, 2])] {
            assert_eq!(BigInt::from(brute_force_automorphism_count(&g)), automorphism_group_order(&g).into());
        }
        assert_eq!(brute_force_automorphism_count(&fixtures::bipartite(&[2, 2])), 2);
    }

    #[test]
    fn isomorphisms() {
        let g = fixtures::star();
        let h = g.with_vertex_order(&[2, 0, 3, 1]).with_flipped_edge(1);
        assert!(brute_force_isomorphic(&g, &h));
        assert!(!brute_force_isomorphic(&g, &fixtures::bipartite(&[2, 3])));
    }
}
