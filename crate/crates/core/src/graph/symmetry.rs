//! Automorphisms and canonical labelings of decorated graphs.
//!
//! Both are computed by exhaustive search over vertex bijections that respect
//! an isomorphism-invariant vertex signature. Edges between a fixed pair of
//! vertices are then matched as multisets of oriented contact vectors. Legs
//! are fixed pointwise, so a vertex carrying legs only ever maps to itself.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use super::{ContactVector, DecoratedGraph, Edge, Leg, Vertex};

type Signature = (u32, u64, Option<Vec<i64>>, Option<i64>, Vec<(usize, Vec<i64>)>, Vec<(bool, Vec<i64>)>);

fn signatures(g: &DecoratedGraph) -> Vec<Signature> {
    let mut legs: Vec<Vec<(usize, Vec<i64>)>> = vec![Vec::new(); g.vertices().len()];
    for l in g.legs() {
        legs[l.vertex].push((l.order, l.contact.entries().to_vec()));
    }
    let mut incident: Vec<Vec<(bool, Vec<i64>)>> = vec![Vec::new(); g.vertices().len()];
    for e in g.edges() {
        if e.is_loop() {
            let s = e.contact.entries().to_vec();
            let n = e.contact.negated().entries().to_vec();
            incident[e.from].push((true, s.min(n)));
        } else {
            incident[e.from].push((false, e.contact.entries().to_vec()));
            incident[e.to].push((false, e.contact.negated().entries().to_vec()));
        }
    }
    g.vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut l = std::mem::take(&mut legs[i]);
            l.sort();
            let mut inc = std::mem::take(&mut incident[i]);
            inc.sort();
            (v.genus, v.depth.bits(), v.degree.clone(), v.c1, l, inc)
        })
        .collect()
}

/// Contacts on the edges joining `a` to `b`, oriented `a -> b`, sorted.
/// Loops are recorded under `(a, a)` with the smaller of the two orientations.
fn pair_contacts(g: &DecoratedGraph) -> HashMap<(usize, usize), Vec<Vec<i64>>> {
    let mut map: HashMap<(usize, usize), Vec<Vec<i64>>> = HashMap::new();
    for e in g.edges() {
        let s = e.contact.entries().to_vec();
        let n = e.contact.negated().entries().to_vec();
        if e.is_loop() {
            map.entry((e.from, e.from)).or_default().push(s.min(n));
        } else {
            map.entry((e.from, e.to)).or_default().push(s);
            map.entry((e.to, e.from)).or_default().push(n);
        }
    }
    for v in map.values_mut() {
        v.sort();
    }
    map
}

/// Order of the group of decoration-preserving automorphisms, legs fixed.
pub fn automorphism_group_order(g: &DecoratedGraph) -> BigUint {
    let n = g.vertices().len();
    let sig = signatures(g);
    let pairs = pair_contacts(g);

    fn search(
        v: usize,
        sig: &[Signature],
        pairs: &HashMap<(usize, usize), Vec<Vec<i64>>>,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> u64 {
        let n = sig.len();
        if v == n {
            return 1;
        }
        let mut total = 0;
        for w in 0..n {
            if used[w] || sig[w] != sig[v] {
                continue;
            }
            let consistent = (0..=v).all(|u| {
                let iu = if u == v { w } else { image[u] };
                pairs.get(&(u, v)) == pairs.get(&(iu, w))
            });
            if !consistent {
                continue;
            }
            image[v] = w;
            used[w] = true;
            total += search(v + 1, sig, pairs, image, used);
            used[w] = false;
        }
        total
    }
    let vertex_maps = search(0, &sig, &pairs, &mut vec![usize::MAX; n], &mut vec![false; n]);

    // Permutations of parallel edges with identical decorations, and the
    // orientation reversal of loops with zero contact.
    let mut multiplicity = BTreeMap::new();
    let mut zero_loops = 0u32;
    for e in g.edges() {
        *multiplicity.entry(edge_key(e)).or_insert(0u32) += 1;
        if e.is_loop() && e.contact.is_zero() {
            zero_loops += 1;
        }
    }
    let mut factor = BigUint::one();
    for &m in multiplicity.values() {
        for k in 2..=m {
            factor *= k;
        }
    }
    factor <<= zero_loops as usize;
    BigUint::from(vertex_maps) * factor
}

fn edge_key(e: &Edge) -> (usize, usize, Vec<i64>) {
    let fwd = (e.from, e.to, e.contact.entries().to_vec());
    let rev = (e.to, e.from, e.contact.negated().entries().to_vec());
    fwd.min(rev)
}

/// Isomorphism-class fingerprint of a decorated graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&String::from_utf8_lossy(&self.0))
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({self})")
    }
}

pub fn canonical_form(g: &DecoratedGraph) -> CanonicalForm {
    canonical_labeling(g).0
}

/// Canonical form together with the vertex order realizing it: position `k`
/// of the canonical labeling holds vertex `order[k]` of `g`.
pub fn canonical_labeling(g: &DecoratedGraph) -> (CanonicalForm, Vec<usize>) {
    let n = g.vertices().len();
    let sig = signatures(g);
    let pairs = pair_contacts(g);

    // Blocks of the canonical order: classes sorted by signature.
    let mut slots: Vec<usize> = (0..n).collect();
    slots.sort_by(|&a, &b| sig[a].cmp(&sig[b]));
    let slot_sig: Vec<&Signature> = slots.iter().map(|&v| &sig[v]).collect();

    struct Search<'a> {
        n: usize,
        sig: &'a [Signature],
        slot_sig: Vec<&'a Signature>,
        pairs: &'a HashMap<(usize, usize), Vec<Vec<i64>>>,
        best: Option<(Vec<i64>, Vec<usize>)>,
    }

    impl Search<'_> {
        fn block(&self, order: &[usize], k: usize) -> Vec<i64> {
            let mut out = Vec::new();
            let w = order[k];
            for &u in order.iter().take(k + 1) {
                match self.pairs.get(&(u, w)) {
                    None => out.push(0),
                    Some(list) => {
                        out.push(list.len() as i64);
                        for s in list {
                            out.extend_from_slice(s);
                        }
                    }
                }
            }
            out
        }

        fn run(&mut self, order: &mut Vec<usize>, used: &mut Vec<bool>, tokens: &mut Vec<i64>) {
            let k = order.len();
            if k == self.n {
                let better = match &self.best {
                    None => true,
                    Some((b, _)) => tokens.as_slice() < b.as_slice(),
                };
                if better {
                    self.best = Some((tokens.clone(), order.clone()));
                }
                return;
            }
            for w in 0..self.n {
                if used[w] || &self.sig[w] != self.slot_sig[k] {
                    continue;
                }
                order.push(w);
                used[w] = true;
                let len = tokens.len();
                let block = self.block(order, k);
                tokens.extend(block);
                let prune = match &self.best {
                    Some((b, _)) => {
                        let m = tokens.len().min(b.len());
                        tokens[..m] > b[..m]
                    }
                    None => false,
                };
                if !prune {
                    self.run(order, used, tokens);
                }
                tokens.truncate(len);
                used[w] = false;
                order.pop();
            }
        }
    }

    let mut search = Search { n, sig: &sig, slot_sig, pairs: &pairs, best: None };
    search.run(&mut Vec::new(), &mut vec![false; n], &mut Vec::new());
    let (tokens, order) = search.best.unwrap_or_default();

    let mut inverse = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        inverse[old] = new;
    }
    let mut legs: Vec<(usize, usize, &[i64])> =
        g.legs().iter().map(|l| (l.order, inverse[l.vertex], l.contact.entries())).collect();
    legs.sort();

    let mut text = String::new();
    text.push_str(g.mode().as_str());
    text.push('|');
    text.push_str(&g.labels().join(","));
    text.push('|');
    for &v in &order {
        let (genus, depth, degree, c1, _, _) = &sig[v];
        text.push_str(&format!("{genus}:{depth}:{degree:?}:{c1:?};"));
    }
    text.push('|');
    text.push_str(&tokens.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(","));
    text.push('|');
    for (order, v, c) in legs {
        text.push_str(&format!("{order}@{v}{c:?};"));
    }
    (CanonicalForm(text.into_bytes()), order)
}

/// Relabels `g` into its canonical labeling: vertices `v0, v1, ...` in
/// canonical order, edges `e0, e1, ...` sorted and oriented from the smaller
/// endpoint, legs `l1, l2, ...` by order index.
pub fn canonical_representative(g: &DecoratedGraph) -> DecoratedGraph {
    canonical_pair(g).1
}

/// [`canonical_form`] and [`canonical_representative`] from one search.
pub fn canonical_pair(g: &DecoratedGraph) -> (CanonicalForm, DecoratedGraph) {
    let (form, order) = canonical_labeling(g);
    let mut inverse = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        inverse[old] = new;
    }
    let vertices: Vec<Vertex> = order
        .iter()
        .enumerate()
        .map(|(k, &old)| Vertex { id: format!("v{k}"), ..g.vertices()[old].clone() })
        .collect();
    let mut edges: Vec<(usize, usize, Vec<i64>)> = g
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (inverse[e.from], inverse[e.to]);
            let fwd = (a, b, e.contact.entries().to_vec());
            let rev = (b, a, e.contact.negated().entries().to_vec());
            fwd.min(rev)
        })
        .collect();
    edges.sort();
    let edges = edges
        .into_iter()
        .enumerate()
        .map(|(k, (from, to, c))| Edge { id: format!("e{k}"), from, to, contact: ContactVector::new(c) })
        .collect();
    let mut legs: Vec<Leg> = g
        .legs()
        .iter()
        .map(|l| Leg { id: format!("l{}", l.order), vertex: inverse[l.vertex], ..l.clone() })
        .collect();
    legs.sort_by_key(|l| l.order);
    let rep = DecoratedGraph::new(g.mode(), g.labels().to_vec(), vertices, edges, legs)
        .expect("relabeling preserves structure");
    (form, rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::{GraphBuilder, Mode};

    #[test]
    fn star_has_trivial_automorphisms() {
        assert_eq!(automorphism_group_order(&fixtures::star()), BigUint::from(1u32));
        // Without legs the three arms are still distinguished by their depths.
        assert_eq!(automorphism_group_order(&fixtures::star().without_legs()), BigUint::from(1u32));
    }

    #[test]
    fn parallel_edges_swap() {
        assert_eq!(automorphism_group_order(&fixtures::bipartite(&[2, 2])), BigUint::from(2u32));
        assert_eq!(automorphism_group_order(&fixtures::bipartite(&[2, 3])), BigUint::from(1u32));
        assert_eq!(automorphism_group_order(&fixtures::single_vertex(1, &[0])), BigUint::from(1u32));
    }

    #[test]
    fn vertex_swaps_and_loops() {
        // Two equal vertices joined by a zero-contact edge, each carrying a zero loop.
        let g = GraphBuilder::new(Mode::Relative, ["1"])
            .vertex("a", 0, &[])
            .vertex("b", 0, &[])
            .edge("e", "a", "b", &[0])
            .edge("la", "a", "a", &[0])
            .edge("lb", "b", "b", &[0])
            .build()
            .unwrap();
        assert_eq!(automorphism_group_order(&g), BigUint::from(8u32));
        let fixed = GraphBuilder::new(Mode::Relative, ["1"])
            .vertex("a", 0, &[])
            .vertex("b", 0, &[])
            .edge("e", "a", "b", &[0])
            .plain_leg("z", "a", 1)
            .build()
            .unwrap();
        assert_eq!(automorphism_group_order(&fixed), BigUint::from(1u32));
    }

    #[test]
    fn canonical_form_ignores_names_and_order() {
        let a = fixtures::bipartite(&[2, 3]);
        let b = fixtures::bipartite(&[3, 2]);
        assert_eq!(canonical_form(&a), canonical_form(&b));
        let renamed = fixtures::star().with_renamed_ids(|s| format!("x_{s}"));
        assert_eq!(canonical_form(&renamed), canonical_form(&fixtures::star()));
        let shuffled = fixtures::star().with_vertex_order(&[2, 0, 3, 1]).with_flipped_edge(1);
        assert_eq!(canonical_form(&shuffled), canonical_form(&fixtures::star()));
    }

    #[test]
    fn canonical_form_separates_decorations() {
        let star = fixtures::star();
        let e1 = star.edge_index("e1").unwrap();
        let mut b = GraphBuilder::new(Mode::Degeneration, ["1", "2", "3"]);
        for v in star.vertices() {
            let d: Vec<String> = v.depth.iter().map(|i| star.labels()[i].clone()).collect();
            let d: Vec<&str> = d.iter().map(|s| s.as_str()).collect();
            b = b.vertex(&v.id, v.genus, &d);
        }
        for (k, e) in star.edges().iter().enumerate() {
            let c = if k == e1 { vec![-2, 2, 0] } else { e.contact.entries().to_vec() };
            b = b.edge(&e.id, &star.vertices()[e.from].id, &star.vertices()[e.to].id, &c);
        }
        for l in star.legs() {
            b = b.plain_leg(&l.id, &star.vertices()[l.vertex].id, l.order);
        }
        let changed = b.build().unwrap();
        assert_ne!(canonical_form(&changed), canonical_form(&star));
    }

    #[test]
    fn representative_is_stable() {
        let g = fixtures::star().with_vertex_order(&[3, 1, 0, 2]);
        let r = canonical_representative(&g);
        assert_eq!(canonical_form(&r), canonical_form(&g));
        assert_eq!(canonical_representative(&r), r);
    }
}
