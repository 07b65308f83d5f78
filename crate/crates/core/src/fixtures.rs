//! Worked example graphs used throughout the tests, benchmarks and docs.

use crate::graph::{DecoratedGraph, GraphBuilder, Mode};

/// Star graph in a triple-point degeneration: a central component `v0` of
/// depth `{1,2,3}` joined to lines `v1, v2, v3` of depth `{i}`, with the
/// two marked points on `v1` and `v2`. Edges are stored pointing at `v0`.
pub fn star() -> DecoratedGraph {
    star_builder().build().expect("star fixture")
}

/// [`star`] with the degree pairings `A_v . D_j` of the line components.
pub fn star_with_degrees() -> DecoratedGraph {
    star_builder()
        .degree("v0", &[0, 0, 0])
        .degree("v1", &[-2, 1, 1])
        .degree("v2", &[1, -2, 1])
        .degree("v3", &[1, 1, -2])
        .build()
        .expect("star fixture")
}

fn star_builder() -> GraphBuilder {
    GraphBuilder::new(Mode::Degeneration, ["1", "2", "3"])
        .vertex("v0", 0, &["1", "2", "3"])
        .vertex("v1", 0, &["1"])
        .vertex("v2", 0, &["2"])
        .vertex("v3", 0, &["3"])
        .edge("e1", "v1", "v0", &[-2, 1, 1])
        .edge("e2", "v2", "v0", &[1, -2, 1])
        .edge("e3", "v3", "v0", &[1, 1, -2])
        .plain_leg("z1", "v1", 1)
        .plain_leg("z2", "v2", 2)
}

/// Two components of depth `{1}` and `{2}` in a basic degeneration joined by
/// edges with contacts `(-α, α)`, stored from `v1` to `v2`.
pub fn bipartite(alphas: &[i64]) -> DecoratedGraph {
    let mut b = GraphBuilder::new(Mode::Degeneration, ["1", "2"])
        .vertex("v1", 0, &["1"])
        .vertex("v2", 0, &["2"]);
    for (k, &a) in alphas.iter().enumerate() {
        b = b.edge(&format!("e{}", k + 1), "v1", "v2", &[-a, a]);
    }
    b.build().expect("bipartite fixture")
}

/// General basic-degeneration graph: `left` components of depth `{1}`,
/// `right` of depth `{2}`, edges `(l, r, α)` stored from left to right.
pub fn basic_bipartite(left: usize, right: usize, edges: &[(usize, usize, i64)]) -> DecoratedGraph {
    let mut b = GraphBuilder::new(Mode::Degeneration, ["1", "2"]);
    for l in 0..left {
        b = b.vertex(&format!("a{l}"), 0, &["1"]);
    }
    for r in 0..right {
        b = b.vertex(&format!("b{r}"), 0, &["2"]);
    }
    for (k, &(l, r, a)) in edges.iter().enumerate() {
        b = b.edge(&format!("e{k}"), &format!("a{l}"), &format!("b{r}"), &[-a, a]);
    }
    b.build().expect("basic bipartite fixture")
}

/// One vertex of depth `depth` (label positions, labels named `1..=n`).
pub fn single_vertex(num_labels: usize, depth: &[usize]) -> DecoratedGraph {
    let labels: Vec<String> = (1..=num_labels).map(|i| i.to_string()).collect();
    let d: Vec<&str> = depth.iter().map(|&i| labels[i].as_str()).collect();
    let mode = if depth.is_empty() { Mode::Relative } else { Mode::Degeneration };
    GraphBuilder::new(mode, labels.clone()).vertex("v", 0, &d).build().expect("single vertex fixture")
}

/// Degree `2d` curves in `P^3` relative to two planes, degenerating into two
/// plane curves of degree `d` meeting in `d` points on the common line.
pub fn two_d_in_p3(d: usize) -> DecoratedGraph {
    assert!(d >= 1);
    let g = ((d - 1) * (d.saturating_sub(2)) / 2) as u32;
    let di = d as i64;
    let mut b = GraphBuilder::new(Mode::Relative, ["1", "2"])
        .vertex("v1", g, &["1"])
        .vertex("v2", g, &["2"])
        .degree("v1", &[di, di])
        .degree("v2", &[di, di])
        .c1("v1", 4 * di)
        .c1("v2", 4 * di);
    for k in 0..d {
        b = b.edge(&format!("e{}", k + 1), "v1", "v2", &[-1, 1]);
    }
    for k in 0..2 * d {
        b = b.leg(&format!("p{}", k + 1), "v1", k + 1, &[1, 0]);
    }
    for k in 0..2 * d {
        b = b.leg(&format!("q{}", k + 1), "v2", 2 * d + k + 1, &[0, 1]);
    }
    b.build().expect("2d in P3 fixture")
}

/// Degree 3 plane curves with contacts `(3,2)` and `(0,1)` to two lines,
/// broken into a conic `v1`, a line `v2` and a ghost `v3` at the corner.
/// With `line_in_divisor` the line component lies in the first divisor.
pub fn plane_cubic_break(line_in_divisor: bool) -> DecoratedGraph {
    let v2_depth: &[&str] = if line_in_divisor { &["1"] } else { &[] };
    GraphBuilder::new(Mode::Relative, ["1", "2"])
        .vertex("v1", 0, &[])
        .vertex("v2", 0, v2_depth)
        .vertex("v3", 0, &["1", "2"])
        .edge("e1", "v1", "v3", &[2, 1])
        .edge("e2", "v2", "v3", &[1, 1])
        .leg("z1", "v3", 1, &[3, 2])
        .leg("z2", "v1", 2, &[0, 1])
        .build()
        .expect("plane cubic fixture")
}
