//! Exhaustive enumeration of main graphs within small bounds.
//!
//! In degeneration mode a valid graph is main exactly when `Ker ρ` is a line
//! spanned by a vector with every coordinate positive: feasibility makes the
//! kernel nonzero, and `K•` is the kernel of the vertical constant on `K`,
//! which is injective precisely when `K` has rank one. This test runs in
//! machine integers, so candidates are cheap to reject.
//!
//! Candidates are built from connected loopless multigraph shapes. Loops and
//! zero contacts put `1_e` into `K•`, so neither occurs in a main graph.
//! Tropical balancing forces parallel edges to carry positively
//! proportional contacts and fixes the sign of `s_{ē,i}` whenever `i` lies
//! in exactly one of `I_from`, `I_to`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, IntegerMatrix};
use crate::graph::{
    canonical_pair, ContactVector, DecoratedGraph, Edge, LabelSet, Mode,
    Vertex, MAX_LABELS,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationBounds {
    pub labels: Vec<String>,
    pub max_vertices: usize,
    pub max_edges: usize,
    pub max_contact_entry: i64,
    pub max_genus: u32,
    pub mode: Mode,
}

impl EnumerationBounds {
    /// Degeneration-mode bounds over the given labels.
    pub fn new<I, L>(labels: I, max_vertices: usize, max_edges: usize, max_contact_entry: i64, max_genus: u32) -> Self
    where
        I: IntoIterator<Item = L>,
        L: Into<String>,
    {
        Self {
            labels: labels.into_iter().map(Into::into).collect(),
            max_vertices,
            max_edges,
            max_contact_entry,
            max_genus,
            mode: Mode::Degeneration,
        }
    }

    fn check(&self) -> Result<()> {
        let fail = |msg: &str| Err(Error::Bounds(msg.to_string()));
        if self.mode != Mode::Degeneration {
            return fail("main graphs are only defined in degeneration mode");
        }
        if self.labels.is_empty() || self.labels.len() > MAX_LABELS {
            return fail("label set must be nonempty and within the supported size");
        }
        if self.labels.iter().collect::<BTreeSet<_>>().len() != self.labels.len() {
            return fail("labels must be distinct");
        }
        if self.max_vertices == 0 {
            return fail("max_vertices must be at least 1");
        }
        if self.max_contact_entry < 1 {
            return fail("max_contact_entry must be at least 1");
        }
        Ok(())
    }
}

/// Connected loopless multigraph on `n` vertices with its automorphisms.
struct Shape {
    n: usize,
    edges: Vec<(usize, usize)>,
    automorphisms: Vec<Vec<usize>>,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn relabel(edges: &[(usize, usize)], p: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<_> = edges
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (p[a], p[b]);
            (x.min(y), x.max(y))
        })
        .collect();
    out.sort_unstable();
    out
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut parts = n;
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            parts -= 1;
        }
    }
    parts == 1
}

fn shapes(max_vertices: usize, max_edges: usize) -> Vec<Shape> {
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        let perms = permutations(n);
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let mut seen = BTreeSet::new();
        for m in n - 1..=max_edges {
            // Multisets of m pairs, as nondecreasing index sequences.
            let mut idx = vec![0usize; m];
            loop {
                if m == 0 || !pairs.is_empty() {
                    let edges: Vec<(usize, usize)> = idx.iter().map(|&k| pairs[k]).collect();
                    if connected(n, &edges) {
                        let key = perms.iter().map(|p| relabel(&edges, p)).min().expect("at least one permutation");
                        if seen.insert(key.clone()) {
                            let automorphisms = perms.iter().filter(|p| relabel(&key, p) == key).cloned().collect();
                            out.push(Shape { n, edges: key, automorphisms });
                        }
                    }
                }
                // Advance the odometer.
                let Some(pos) = (0..m).rev().find(|&i| idx[i] + 1 < pairs.len()) else { break };
                let next = idx[pos] + 1;
                for v in idx.iter_mut().skip(pos) {
                    *v = next;
                }
            }
        }
    }
    out
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Contacts for an edge `u -> w` compatible with the depths and bounds.
fn edge_candidates(from: LabelSet, to: LabelSet, labels: usize, max: i64) -> Vec<Vec<i64>> {
    let support: Vec<usize> = from.union(to).iter().collect();
    let mut out = Vec::new();
    let mut cur = vec![0i64; labels];
    fn go(k: usize, support: &[usize], from: LabelSet, to: LabelSet, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k == support.len() {
            if cur.iter().sum::<i64>() == 0 && cur.iter().any(|&x| x != 0) {
                out.push(cur.clone());
            }
            return;
        }
        let i = support[k];
        let (lo, hi) = match (from.contains(i), to.contains(i)) {
            (false, true) => (1, max),
            (true, false) => (-max, -1),
            _ => (-max, max),
        };
        for x in lo..=hi {
            cur[i] = x;
            go(k + 1, support, from, to, max, cur, out);
        }
        cur[i] = 0;
    }
    go(0, &support, from, to, max, &mut cur, &mut out);
    out
}

/// Nondecreasing lists of `k` positive multiples of one primitive candidate.
fn parallel_candidates(candidates: &[Vec<i64>], k: usize, max: i64) -> Vec<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    for p in candidates {
        if p.iter().fold(0, |g, &x| gcd(g, x)) != 1 {
            continue;
        }
        let top = p.iter().map(|x| x.abs()).max().unwrap_or(1);
        let limit = max / top;
        let mut mult = vec![1i64; k];
        loop {
            out.push(mult.iter().map(|&a| p.iter().map(|x| a * x).collect()).collect());
            let Some(pos) = (0..k).rev().find(|&i| mult[i] < limit) else { break };
            let next = mult[pos] + 1;
            for v in mult.iter_mut().skip(pos) {
                *v = next;
            }
        }
    }
    out
}

/// Whether the kernel of the `ρ` of this candidate is a line through a
/// vector with every coordinate of one sign.
fn kernel_is_positive_line(depths: &[LabelSet], edges: &[(usize, usize, &[i64])]) -> bool {
    let mut offset = Vec::with_capacity(depths.len());
    let mut cols = edges.len();
    for d in depths {
        offset.push(cols);
        cols += d.len();
    }
    let position = |v: usize, i: usize| offset[v] + depths[v].iter().take_while(|&j| j < i).count();
    let mut rows: Vec<Vec<i128>> = Vec::new();
    for (k, &(u, w, c)) in edges.iter().enumerate() {
        for i in depths[u].union(depths[w]).iter() {
            let mut r = vec![0i128; cols];
            r[k] = i128::from(c[i]);
            if depths[u].contains(i) {
                r[position(u, i)] += 1;
            }
            if depths[w].contains(i) {
                r[position(w, i)] -= 1;
            }
            rows.push(r);
        }
    }
    if rows.len() + 1 < cols {
        return false;
    }
    match integer_line_sign_test(&mut rows, cols) {
        Some(answer) => answer,
        None => {
            let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            let basis = kernel_basis(&IntegerMatrix::from_big_rows(big, cols));
            let [line] = basis.as_slice() else { return false };
            line.iter().all(|x| x.is_positive()) || line.iter().all(|x| x.is_negative())
        }
    }
}

/// Fraction-free Gauss-Jordan elimination keeping rows primitive. Only the
/// signs of the kernel vector are needed: with the free coordinate set
/// positive, pivot coordinate `k` has the sign of `-row_k[free] / pivot_k`.
/// `None` on overflow.
fn integer_line_sign_test(rows: &mut [Vec<i128>], cols: usize) -> Option<bool> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c];
        for i in 0..rows.len() {
            let f = rows[i][c];
            if i == r || f == 0 {
                continue;
            }
            let mut g = 0i128;
            for j in 0..cols {
                let x = rows[i][j].checked_mul(pivot)?.checked_sub(rows[r][j].checked_mul(f)?)?;
                rows[i][j] = x;
                g = gcd128(g, x);
            }
            if g > 1 {
                rows[i].iter_mut().for_each(|x| *x /= g);
            }
        }
        pivots.push(c);
        r += 1;
    }
    if pivots.len() + 1 != cols {
        return Some(false);
    }
    let free = (0..cols).find(|c| !pivots.contains(c)).expect("one free column");
    let mut signs = Vec::with_capacity(cols);
    signs.push(1i32);
    for (k, &c) in pivots.iter().enumerate() {
        signs.push(-(rows[k][free].signum() * rows[k][c].signum()) as i32);
    }
    Some(signs.iter().all(|&s| s == 1) || signs.iter().all(|&s| s == -1))
}

fn gcd128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn build(labels: &[String], depths: &[LabelSet], genus: &[u32], edges: &[(usize, usize, Vec<i64>)]) -> DecoratedGraph {
    let vertices = depths
        .iter()
        .zip(genus)
        .enumerate()
        .map(|(k, (&depth, &genus))| Vertex { id: format!("v{k}"), genus, depth, degree: None, c1: None })
        .collect();
    let edges = edges
        .iter()
        .enumerate()
        .map(|(k, (from, to, c))| Edge { id: format!("e{k}"), from: *from, to: *to, contact: ContactVector::new(c.clone()) })
        .collect();
    DecoratedGraph::new(Mode::Degeneration, labels.to_vec(), vertices, edges, Vec::new())
        .expect("enumerated graphs are well formed")
}

/// All main graphs for one shape and depth assignment, one per
/// isomorphism class.
///
/// Isomorphic candidates here differ by an automorphism of the shape that
/// preserves the depths, so a candidate is kept only when it is the
/// lexicographically least in its orbit under those automorphisms.
fn expand(shape: &Shape, depths: &[LabelSet], b: &EnumerationBounds) -> Vec<DecoratedGraph> {
    let labels = b.labels.len();
    // Group parallel edges.
    let mut groups: Vec<((usize, usize), usize)> = Vec::new();
    for &pair in &shape.edges {
        match groups.last_mut() {
            Some((p, k)) if *p == pair => *k += 1,
            _ => groups.push((pair, 1)),
        }
    }
    let options: Vec<Vec<Vec<Vec<i64>>>> = groups
        .iter()
        .map(|&((u, w), k)| {
            let c = edge_candidates(depths[u], depths[w], labels, b.max_contact_entry);
            parallel_candidates(&c, k, b.max_contact_entry)
        })
        .collect();
    let mut found = Vec::new();
    if options.iter().any(|o| o.is_empty()) {
        return found;
    }
    // Each stabilizing automorphism as a map on groups: target group and
    // whether the orientation flips.
    let stabilizer: Vec<Vec<(usize, bool)>> = shape
        .automorphisms
        .iter()
        .filter(|p| p.iter().enumerate().any(|(v, &w)| v != w))
        .filter(|p| p.iter().enumerate().all(|(v, &w)| depths[w] == depths[v]))
        .map(|p| {
            groups
                .iter()
                .map(|&((u, w), _)| {
                    let (a, c) = (p[u], p[w]);
                    let target = groups.iter().position(|&(pair, _)| pair == (a.min(c), a.max(c)));
                    (target.expect("automorphisms permute edge groups"), a > c)
                })
                .collect()
        })
        .collect();
    let genus = vec![0; shape.n];
    let mut choice = vec![0usize; groups.len()];
    loop {
        let mut edges: Vec<(usize, usize, &[i64])> = Vec::with_capacity(shape.edges.len());
        for (g, &((u, w), _)) in groups.iter().enumerate() {
            for c in &options[g][choice[g]] {
                edges.push((u, w, c));
            }
        }
        if kernel_is_positive_line(depths, &edges) && orbit_minimal(&stabilizer, &options, &choice) {
            let owned: Vec<(usize, usize, Vec<i64>)> = edges.iter().map(|&(u, w, c)| (u, w, c.to_vec())).collect();
            found.push(build(&b.labels, depths, &genus, &owned));
        }
        let Some(pos) = (0..groups.len()).rev().find(|&i| choice[i] + 1 < options[i].len()) else { break };
        choice[pos] += 1;
        for c in choice.iter_mut().skip(pos + 1) {
            *c = 0;
        }
    }
    found
}

fn orbit_minimal(stabilizer: &[Vec<(usize, bool)>], options: &[Vec<Vec<Vec<i64>>>], choice: &[usize]) -> bool {
    let current: Vec<&Vec<Vec<i64>>> = choice.iter().enumerate().map(|(g, &c)| &options[g][c]).collect();
    stabilizer.iter().all(|map| {
        let mut image: Vec<Vec<Vec<i64>>> = vec![Vec::new(); current.len()];
        for (g, &(target, flip)) in map.iter().enumerate() {
            image[target] = current[g]
                .iter()
                .map(|c| if flip { c.iter().map(|x| -x).collect() } else { c.clone() })
                .collect();
        }
        current.iter().zip(&image).map(|(a, b)| a.as_slice().cmp(b.as_slice())).find(|o| o.is_ne())
            != Some(std::cmp::Ordering::Greater)
    })
}

/// Depth assignments for a shape passing the edge-size and dimension bounds,
/// one per orbit of the shape's automorphisms.
fn depth_assignments(shape: &Shape, labels: usize) -> Vec<Vec<LabelSet>> {
    let subsets: Vec<LabelSet> = (1..(1u64 << labels)).map(LabelSet::from_bits).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; shape.n];
    loop {
        let depths: Vec<LabelSet> = idx.iter().map(|&k| subsets[k]).collect();
        let edge_ok = shape.edges.iter().all(|&(u, w)| depths[u].union(depths[w]).len() >= 2);
        if edge_ok {
            let lhs: usize = depths.iter().map(|d| d.len() - 1).sum();
            let rhs: usize = shape.edges.iter().map(|&(u, w)| depths[u].union(depths[w]).len() - 2).sum();
            let minimal = shape.automorphisms.iter().all(|p| {
                let mut image = vec![LabelSet::EMPTY; shape.n];
                for (v, &pv) in p.iter().enumerate() {
                    image[pv] = depths[v];
                }
                depths <= image
            });
            if lhs <= rhs && minimal {
                out.push(depths);
            }
        }
        let Some(pos) = (0..shape.n).rev().find(|&i| idx[i] + 1 < subsets.len()) else { break };
        idx[pos] += 1;
        for v in idx.iter_mut().skip(pos + 1) {
            *v = 0;
        }
    }
    out
}

/// All pairwise non-isomorphic main graphs within `bounds`, as canonical
/// representatives sorted by canonical form.
pub fn enumerate_main_graphs(bounds: &EnumerationBounds) -> Result<Vec<DecoratedGraph>> {
    enumerate_main_graphs_with(bounds, 1)
}

/// [`enumerate_main_graphs`] on `workers` threads; the output does not
/// depend on the worker count.
pub fn enumerate_main_graphs_with(bounds: &EnumerationBounds, workers: usize) -> Result<Vec<DecoratedGraph>> {
    bounds.check()?;
    let shapes = shapes(bounds.max_vertices, bounds.max_edges);
    let items: Vec<(usize, Vec<LabelSet>)> = shapes
        .iter()
        .enumerate()
        .flat_map(|(k, s)| depth_assignments(s, bounds.labels.len()).into_iter().map(move |d| (k, d)))
        .collect();
    let run = |(k, d): &(usize, Vec<LabelSet>)| expand(&shapes[*k], d, bounds);
    let parts: Vec<Vec<DecoratedGraph>> = if workers <= 1 {
        items.iter().map(run).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::Bounds(format!("cannot start {workers} workers: {e}")))?;
        pool.install(|| items.par_iter().map(run).collect())
    };

    let mut all = BTreeMap::new();
    for g in parts.iter().flatten() {
        let depths: Vec<LabelSet> = g.vertices().iter().map(|v| v.depth).collect();
        let edges: Vec<(usize, usize, Vec<i64>)> =
            g.edges().iter().map(|e| (e.from, e.to, e.contact.entries().to_vec())).collect();
        for genus in genus_vectors(g.vertices().len(), bounds.max_genus) {
            let (form, h) = canonical_pair(&build(&bounds.labels, &depths, &genus, &edges));
            all.entry(form).or_insert(h);
        }
    }
    Ok(all.into_values().collect())
}

fn genus_vectors(n: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (0..=max).map(move |g| [v.clone(), vec![g]].concat())).collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degeneration::is_main;
    use crate::graph::canonical_form;
    use crate::fixtures;

    #[test]
    fn shape_counts() {
        // Connected loopless multigraphs up to isomorphism.
        let s = shapes(3, 3);
        let count = |n: usize, m: usize| s.iter().filter(|x| x.n == n && x.edges.len() == m).count();
        assert_eq!(count(1, 0), 1);
        assert_eq!((count(2, 1), count(2, 2), count(2, 3)), (1, 1, 1));
        // Three vertices: the path, then the triangle and the path with a doubled edge.
        assert_eq!((count(3, 2), count(3, 3)), (1, 2));
        let tri = s.iter().find(|x| x.n == 3 && x.edges == vec![(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(tri.automorphisms.len(), 6);
    }

    #[test]
    fn single_vertices_only() {
        let b = EnumerationBounds::new(["1", "2", "3"], 1, 0, 2, 0);
        let out = enumerate_main_graphs(&b).unwrap();
        assert_eq!(out.len(), 3);
        assert!(out.iter().all(|g| g.vertices()[0].depth.len() == 1));
    }

    #[test]
    fn small_basic_degenerations() {
        let b = EnumerationBounds::new(["1", "2"], 2, 1, 2, 0);
        let out = enumerate_main_graphs(&b).unwrap();
        let forms: BTreeSet<_> = out.iter().map(canonical_form).collect();
        for g in [fixtures::bipartite(&[1]), fixtures::bipartite(&[2]), fixtures::single_vertex(2, &[0]), fixtures::single_vertex(2, &[1])] {
            assert!(forms.contains(&canonical_form(&g)));
        }
        for g in &out {
            assert!(is_main(g).unwrap());
        }
    }

    #[test]
    fn star_is_found_and_workers_agree() {
        let b = EnumerationBounds::new(["1", "2", "3"], 4, 3, 2, 0);
        let out = enumerate_main_graphs(&b).unwrap();
        let star = canonical_form(&fixtures::star().without_legs());
        assert!(out.iter().any(|g| canonical_form(g) == star));
        let forms: Vec<_> = out.iter().map(canonical_form).collect();
        assert!(forms.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(enumerate_main_graphs_with(&b, 3).unwrap(), out);
    }

    #[test]
    fn genus_variants_multiply() {
        let b = EnumerationBounds::new(["1", "2"], 2, 1, 1, 1);
        let out = enumerate_main_graphs(&b).unwrap();
        // Two single vertices and one bipartite edge, with genus 0 or 1 per vertex.
        assert_eq!(out.len(), 2 * 2 + 4);
    }

    #[test]
    fn relative_mode_is_rejected() {
        let mut b = EnumerationBounds::new(["1"], 1, 0, 1, 0);
        b.mode = Mode::Relative;
        assert!(matches!(enumerate_main_graphs(&b), Err(Error::Bounds(_))));
    }
}
