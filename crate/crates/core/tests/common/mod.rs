#![allow(dead_code)]

use logdeg::graph::{DecoratedGraph, GraphBuilder, Mode};
use rand::seq::SliceRandom;
use rand::Rng;

/// A random isomorphic copy: vertices and edges shuffled, some edges flipped,
/// ids renamed.
pub fn shuffled<R: Rng>(g: &DecoratedGraph, rng: &mut R) -> DecoratedGraph {
    let mut order: Vec<usize> = (0..g.vertices().len()).collect();
    order.shuffle(rng);
    let mut h = g.with_vertex_order(&order);
    let mut edges: Vec<usize> = (0..g.edges().len()).collect();
    edges.shuffle(rng);
    h = h.with_edge_order(&edges);
    for e in 0..h.edges().len() {
        if rng.gen_bool(0.5) {
            h = h.with_flipped_edge(e);
        }
    }
    let tag: u32 = rng.gen();
    h.with_renamed_ids(|s| format!("{s}_{tag:x}"))
}

/// A random reordering of the divisor labels.
pub fn relabeled<R: Rng>(g: &DecoratedGraph, rng: &mut R) -> DecoratedGraph {
    let mut order: Vec<usize> = (0..g.num_labels()).collect();
    order.shuffle(rng);
    g.with_label_order(&order)
}

/// Random connected decorated graph for symmetry tests; not necessarily
/// valid. Small contact entries make coincidences likely.
pub fn random_graph<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> DecoratedGraph {
    let n = rng.gen_range(1..=max_vertices);
    let labels = ["1", "2"];
    let mut b = GraphBuilder::new(Mode::Degeneration, labels);
    let depths: [&[&str]; 3] = [&["1"], &["2"], &["1", "2"]];
    let shared = rng.gen_bool(0.5);
    let common = rng.gen_range(0..3);
    for v in 0..n {
        let d = if shared { common } else { rng.gen_range(0..3) };
        b = b.vertex(&format!("v{v}"), rng.gen_range(0..2), depths[d]);
    }
    let m = rng.gen_range(n.saturating_sub(1)..=max_edges.max(n.saturating_sub(1)));
    for k in 0..m {
        // Spanning path first so the graph is connected.
        let (a, c) = if k + 1 < n { (k, k + 1) } else { (rng.gen_range(0..n), rng.gen_range(0..n)) };
        let x = rng.gen_range(-1..=1);
        b = b.edge(&format!("e{k}"), &format!("v{a}"), &format!("v{c}"), &[x, -x]);
    }
    if rng.gen_bool(0.3) {
        b = b.plain_leg("z1", &format!("v{}", rng.gen_range(0..n)), 1);
    }
    b.build().expect("random graph is well formed")
}
