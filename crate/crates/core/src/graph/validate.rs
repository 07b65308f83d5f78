use std::collections::BTreeSet;
use std::fmt;

use super::{DecoratedGraph, Mode};

/// A violated condition on a decorated graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EmptyGraph,
    Disconnected,
    /// `s_e` is nonzero at a label outside `I_e = I_from ∪ I_to`.
    SupportOutsideDepth { edge: String, label: String },
    /// Tangency order at a label outside the depth of the vertex is negative.
    NegativeTangency { edge: String, label: String, vertex: String },
    /// Degeneration mode: edge contact is not in the sum-zero lattice.
    ContactNotBalanced { edge: String, sum: i64 },
    /// Degeneration mode: every component lies in some piece.
    EmptyDepth { vertex: String },
    LegNegativeTangency { leg: String, label: String },
    LegNotBalanced { leg: String, sum: i64 },
    LegOrdering(String),
    /// Degeneration mode: marked points are of classical type (warning only).
    LegContactNonzero { leg: String },
    VertexBalancing { vertex: String, label: String, expected: i64, found: i64 },
    GlobalBalancing { label: String, legs: i64, degrees: i64 },
}

impl Violation {
    /// Stable short code for machine-readable reports.
    pub fn code(&self) -> &'static str {
        match self {
            Violation::EmptyGraph => "empty-graph",
            Violation::Disconnected => "disconnected",
            Violation::SupportOutsideDepth { .. } => "support-outside-depth",
            Violation::NegativeTangency { .. } => "negative-tangency",
            Violation::ContactNotBalanced { .. } => "contact-not-sum-zero",
            Violation::EmptyDepth { .. } => "empty-depth",
            Violation::LegNegativeTangency { .. } => "leg-negative-tangency",
            Violation::LegNotBalanced { .. } => "leg-not-sum-zero",
            Violation::LegOrdering(_) => "leg-ordering",
            Violation::LegContactNonzero { .. } => "leg-contact-nonzero",
            Violation::VertexBalancing { .. } => "vertex-balancing",
            Violation::GlobalBalancing { .. } => "global-balancing",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyGraph => write!(f, "graph has no vertices"),
            Violation::Disconnected => write!(f, "graph is not connected"),
            Violation::SupportOutsideDepth { edge, label } => {
                write!(f, "edge {edge}: support ⊄ I_e (nonzero contact at label {label})")
            }
            Violation::NegativeTangency { edge, label, vertex } => write!(
                f,
                "edge {edge}: negative tangency order at label {label} seen from vertex {vertex}, which does not lie in that divisor"
            ),
            Violation::ContactNotBalanced { edge, sum } => {
                write!(f, "edge {edge}: contact entries sum to {sum}, expected 0")
            }
            Violation::EmptyDepth { vertex } => write!(f, "vertex {vertex}: empty depth set"),
            Violation::LegNegativeTangency { leg, label } => {
                write!(f, "leg {leg}: negative tangency order at label {label}")
            }
            Violation::LegNotBalanced { leg, sum } => {
                write!(f, "leg {leg}: contact entries sum to {sum}, expected 0")
            }
            Violation::LegOrdering(msg) => write!(f, "leg ordering: {msg}"),
            Violation::LegContactNonzero { leg } => {
                write!(f, "leg {leg}: nonzero contact at a classical marked point")
            }
            Violation::VertexBalancing { vertex, label, expected, found } => write!(
                f,
                "vertex {vertex}: contacts at label {label} sum to {found}, degree pairing is {expected}"
            ),
            Violation::GlobalBalancing { label, legs, degrees } => write!(
                f,
                "label {label}: leg contacts sum to {legs}, total degree pairing is {degrees}"
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks connectivity, the support and sign conditions on contact vectors,
/// the sum-zero conditions of degeneration mode and, where degree pairings
/// are given, the balancing of contacts against them.
pub fn validate(graph: &DecoratedGraph) -> ValidationReport {
    let mut report = ValidationReport::default();
    let out = &mut report.violations;
    let labels = graph.labels();
    let degeneration = graph.mode() == Mode::Degeneration;

    if graph.vertices().is_empty() {
        out.push(Violation::EmptyGraph);
        return report;
    }
    if !graph.is_connected() {
        out.push(Violation::Disconnected);
    }

    if degeneration {
        for v in graph.vertices() {
            if v.depth.is_empty() {
                out.push(Violation::EmptyDepth { vertex: v.id.clone() });
            }
        }
    }

    for (k, e) in graph.edges().iter().enumerate() {
        let ie = graph.edge_depth(k);
        let from = &graph.vertices()[e.from];
        let to = &graph.vertices()[e.to];
        for (i, &s) in e.contact.entries().iter().enumerate() {
            if s != 0 && !ie.contains(i) {
                out.push(Violation::SupportOutsideDepth { edge: e.id.clone(), label: labels[i].clone() });
            }
            if s < 0 && !from.depth.contains(i) {
                out.push(Violation::NegativeTangency {
                    edge: e.id.clone(),
                    label: labels[i].clone(),
                    vertex: from.id.clone(),
                });
            }
            if s > 0 && !to.depth.contains(i) {
                out.push(Violation::NegativeTangency {
                    edge: e.id.clone(),
                    label: labels[i].clone(),
                    vertex: to.id.clone(),
                });
            }
        }
        if degeneration && e.contact.sum() != 0 {
            out.push(Violation::ContactNotBalanced { edge: e.id.clone(), sum: e.contact.sum() });
        }
    }

    for l in graph.legs() {
        let depth = graph.vertices()[l.vertex].depth;
        for (i, &s) in l.contact.entries().iter().enumerate() {
            if s < 0 && !depth.contains(i) {
                out.push(Violation::LegNegativeTangency { leg: l.id.clone(), label: labels[i].clone() });
            }
        }
        if degeneration {
            if l.contact.sum() != 0 {
                out.push(Violation::LegNotBalanced { leg: l.id.clone(), sum: l.contact.sum() });
            }
            if !l.contact.is_zero() {
                report.warnings.push(Violation::LegContactNonzero { leg: l.id.clone() });
            }
        }
    }

    let k = graph.legs().len();
    let orders: BTreeSet<usize> = graph.legs().iter().map(|l| l.order).collect();
    if orders.len() != k || orders.iter().any(|&o| o == 0 || o > k) {
        report.violations.push(Violation::LegOrdering(format!(
            "order indices {:?} are not a permutation of 1..={k}",
            graph.legs().iter().map(|l| l.order).collect::<Vec<_>>()
        )));
    }

    balancing(graph, &mut report.violations);
    report
}

fn balancing(graph: &DecoratedGraph, out: &mut Vec<Violation>) {
    let n = graph.num_labels();
    let labels = graph.labels();
    for (vi, v) in graph.vertices().iter().enumerate() {
        let Some(degree) = &v.degree else { continue };
        let mut found = vec![0i64; n];
        for l in graph.legs().iter().filter(|l| l.vertex == vi) {
            for (j, x) in l.contact.entries().iter().enumerate() {
                found[j] += x;
            }
        }
        for (ei, e) in graph.edges().iter().enumerate() {
            if e.is_loop() {
                // s_e + s_{reversed e} = 0
                continue;
            }
            if let Some(c) = graph.contact_leaving(ei, vi) {
                for (j, x) in c.entries().iter().enumerate() {
                    found[j] += x;
                }
            }
        }
        for j in 0..n {
            if found[j] != degree[j] {
                out.push(Violation::VertexBalancing {
                    vertex: v.id.clone(),
                    label: labels[j].clone(),
                    expected: degree[j],
                    found: found[j],
                });
            }
        }
    }
    if graph.vertices().iter().all(|v| v.degree.is_some()) {
        for j in 0..n {
            let legs: i64 = graph.legs().iter().map(|l| l.contact.get(j)).sum();
            let degrees: i64 = graph.vertices().iter().map(|v| v.degree.as_ref().unwrap()[j]).sum();
            if legs != degrees {
                out.push(Violation::GlobalBalancing { label: labels[j].clone(), legs, degrees });
            }
        }
    }
}
