//! Decorated dual graphs of (pre-)log maps.
//!
//! A graph records one vertex per irreducible component (genus, depth set
//! `I_v`, optional intersection pairings of its degree), one edge per node
//! (with the contact vector of one stored orientation) and the ordered legs.
//! Divisor labels are addressed by their position in the ordered label list.

mod labels;
mod symmetry;
mod validate;

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};

pub use labels::{ContactVector, LabelSet, MAX_LABELS};
pub use symmetry::{
    automorphism_group_order, canonical_form, canonical_labeling, canonical_pair, canonical_representative,
    CanonicalForm,
};
pub use validate::{validate, ValidationReport, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    /// Maps into a manifold relative to a simple normal crossings divisor.
    Relative,
    /// Maps into the central fiber of a semistable degeneration.
    Degeneration,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Relative => "relative",
            Mode::Degeneration => "degeneration",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub genus: u32,
    pub depth: LabelSet,
    /// Pairings `A_v . D_j`, one per label.
    pub degree: Option<Vec<i64>>,
    pub c1: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub from: usize,
    pub to: usize,
    /// Contact vector for the stored orientation `from -> to`.
    pub contact: ContactVector,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.from == self.to
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leg {
    pub id: String,
    pub vertex: usize,
    /// Position in the ordering of the marked points, starting at 1.
    pub order: usize,
    pub contact: ContactVector,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Stored,
    Reversed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedGraph {
    mode: Mode,
    labels: Vec<String>,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    legs: Vec<Leg>,
}

impl DecoratedGraph {
    /// Assembles a graph, checking only structural well-formedness.
    /// Geometric conditions are reported by [`validate`].
    pub fn new(
        mode: Mode,
        labels: Vec<String>,
        vertices: Vec<Vertex>,
        edges: Vec<Edge>,
        legs: Vec<Leg>,
    ) -> Result<Self> {
        let n = labels.len();
        if n > MAX_LABELS {
            return Err(Error::Structural(format!(
                "{n} divisor labels exceed the supported maximum of {MAX_LABELS}"
            )));
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::Structural(format!("duplicate label {l:?}")));
            }
        }
        let full = LabelSet::full(n);
        let mut ids = BTreeSet::new();
        for v in &vertices {
            if !ids.insert(v.id.as_str()) {
                return Err(Error::Structural(format!("duplicate vertex id {:?}", v.id)));
            }
            if !v.depth.is_subset(full) {
                return Err(Error::Structural(format!("vertex {:?} has depth outside the label set", v.id)));
            }
            if let Some(d) = &v.degree {
                if d.len() != n {
                    return Err(Error::Structural(format!(
                        "vertex {:?} has {} degree pairings, expected {n}",
                        v.id,
                        d.len()
                    )));
                }
            }
        }
        let mut ids = BTreeSet::new();
        for e in &edges {
            if !ids.insert(e.id.as_str()) {
                return Err(Error::Structural(format!("duplicate edge id {:?}", e.id)));
            }
            if e.from >= vertices.len() || e.to >= vertices.len() {
                return Err(Error::Structural(format!("edge {:?} references a missing vertex", e.id)));
            }
            if e.contact.len() != n {
                return Err(Error::Structural(format!("edge {:?} contact has wrong length", e.id)));
            }
        }
        let mut ids = BTreeSet::new();
        for l in &legs {
            if !ids.insert(l.id.as_str()) {
                return Err(Error::Structural(format!("duplicate leg id {:?}", l.id)));
            }
            if l.vertex >= vertices.len() {
                return Err(Error::Structural(format!("leg {:?} references a missing vertex", l.id)));
            }
            if l.contact.len() != n {
                return Err(Error::Structural(format!("leg {:?} contact has wrong length", l.id)));
            }
        }
        Ok(Self { mode, labels, vertices, edges, legs })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn num_labels(&self) -> usize {
        self.labels.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    /// `I_e = I_from ∪ I_to`.
    pub fn edge_depth(&self, e: usize) -> LabelSet {
        let e = &self.edges[e];
        self.vertices[e.from].depth.union(self.vertices[e.to].depth)
    }

    /// Contact vector of edge `e` read in the given direction; reversal negates.
    pub fn contact_along(&self, e: usize, direction: Direction) -> ContactVector {
        let c = &self.edges[e].contact;
        match direction {
            Direction::Stored => c.clone(),
            Direction::Reversed => c.negated(),
        }
    }

    /// Contact vector of edge `e` oriented away from `vertex`, if incident.
    /// For loops the stored orientation is returned.
    pub fn contact_leaving(&self, e: usize, vertex: usize) -> Option<ContactVector> {
        let edge = &self.edges[e];
        if edge.from == vertex {
            Some(self.contact_along(e, Direction::Stored))
        } else if edge.to == vertex {
            Some(self.contact_along(e, Direction::Reversed))
        } else {
            None
        }
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return false;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Neighbour lists `(vertex, edge)`; loops appear once.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.from].push((e.to, i));
            if !e.is_loop() {
                adj[e.to].push((e.from, i));
            }
        }
        adj
    }

    /// `g = Σ g_v + |E| - |V| + 1`.
    pub fn arithmetic_genus(&self) -> Result<u64> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let sum: u64 = self.vertices.iter().map(|v| u64::from(v.genus)).sum();
        Ok(sum + self.edges.len() as u64 + 1 - self.vertices.len() as u64)
    }

    /// Same graph with the stored orientation of edge `e` reversed.
    pub fn with_flipped_edge(&self, e: usize) -> Self {
        let mut g = self.clone();
        let edge = &mut g.edges[e];
        std::mem::swap(&mut edge.from, &mut edge.to);
        edge.contact = edge.contact.negated();
        g
    }

    /// Reorders vertices: new position `k` holds old vertex `order[k]`.
    pub fn with_vertex_order(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.vertices.len());
        let mut inverse = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            inverse[old] = new;
        }
        let mut g = self.clone();
        g.vertices = order.iter().map(|&old| self.vertices[old].clone()).collect();
        for e in &mut g.edges {
            e.from = inverse[e.from];
            e.to = inverse[e.to];
        }
        for l in &mut g.legs {
            l.vertex = inverse[l.vertex];
        }
        g
    }

    /// Reorders edges: new position `k` holds old edge `order[k]`.
    pub fn with_edge_order(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.edges.len());
        let mut g = self.clone();
        g.edges = order.iter().map(|&old| self.edges[old].clone()).collect();
        g
    }

    /// Reorders the divisor labels: new label `k` is old label `order[k]`.
    /// All label-indexed data is permuted along, so the result describes the
    /// same geometric object with a different ordering of `S`.
    pub fn with_label_order(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.labels.len());
        let mut inverse = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            inverse[old] = new;
        }
        let permute = |v: &[i64]| order.iter().map(|&old| v[old]).collect::<Vec<_>>();
        let mut g = self.clone();
        g.labels = order.iter().map(|&old| self.labels[old].clone()).collect();
        for v in &mut g.vertices {
            v.depth = LabelSet::from_indices(v.depth.iter().map(|i| inverse[i]));
            if let Some(d) = &v.degree {
                v.degree = Some(permute(d));
            }
        }
        for e in &mut g.edges {
            e.contact = ContactVector::new(permute(e.contact.entries()));
        }
        for l in &mut g.legs {
            l.contact = ContactVector::new(permute(l.contact.entries()));
        }
        g
    }

    /// Renames every vertex, edge and leg id through `f`.
    pub fn with_renamed_ids(&self, f: impl Fn(&str) -> String) -> Self {
        let mut g = self.clone();
        for v in &mut g.vertices {
            v.id = f(&v.id);
        }
        for e in &mut g.edges {
            e.id = f(&e.id);
        }
        for l in &mut g.legs {
            l.id = f(&l.id);
        }
        g
    }

    /// Same graph with all legs removed.
    pub fn without_legs(&self) -> Self {
        let mut g = self.clone();
        g.legs.clear();
        g
    }
}

/// Convenience builder addressing vertices and labels by name.
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    mode: Mode,
    labels: Vec<String>,
    vertices: Vec<(String, u32, Vec<String>)>,
    degrees: HashMap<String, Vec<i64>>,
    c1: HashMap<String, i64>,
    edges: Vec<(String, String, String, Vec<i64>)>,
    legs: Vec<(String, String, usize, Option<Vec<i64>>)>,
}

impl GraphBuilder {
    pub fn new<I, L>(mode: Mode, labels: I) -> Self
    where
        I: IntoIterator<Item = L>,
        L: Into<String>,
    {
        Self {
            mode,
            labels: labels.into_iter().map(Into::into).collect(),
            vertices: Vec::new(),
            degrees: HashMap::new(),
            c1: HashMap::new(),
            edges: Vec::new(),
            legs: Vec::new(),
        }
    }

    pub fn vertex(mut self, id: &str, genus: u32, depth: &[&str]) -> Self {
        self.vertices
            .push((id.to_string(), genus, depth.iter().map(|s| s.to_string()).collect()));
        self
    }

    pub fn degree(mut self, vertex: &str, pairings: &[i64]) -> Self {
        self.degrees.insert(vertex.to_string(), pairings.to_vec());
        self
    }

    pub fn c1(mut self, vertex: &str, value: i64) -> Self {
        self.c1.insert(vertex.to_string(), value);
        self
    }

    pub fn edge(mut self, id: &str, from: &str, to: &str, contact: &[i64]) -> Self {
        self.edges
            .push((id.to_string(), from.to_string(), to.to_string(), contact.to_vec()));
        self
    }

    pub fn leg(mut self, id: &str, vertex: &str, order: usize, contact: &[i64]) -> Self {
        self.legs
            .push((id.to_string(), vertex.to_string(), order, Some(contact.to_vec())));
        self
    }

    /// Leg with zero contact.
    pub fn plain_leg(mut self, id: &str, vertex: &str, order: usize) -> Self {
        self.legs.push((id.to_string(), vertex.to_string(), order, None));
        self
    }

    pub fn build(self) -> Result<DecoratedGraph> {
        let n = self.labels.len();
        let label = |name: &str| {
            self.labels
                .iter()
                .position(|l| l == name)
                .ok_or_else(|| Error::Structural(format!("unknown label {name:?}")))
        };
        let mut vertices = Vec::new();
        for (id, genus, depth) in &self.vertices {
            let idx = depth.iter().map(|d| label(d)).collect::<Result<Vec<_>>>()?;
            vertices.push(Vertex {
                id: id.clone(),
                genus: *genus,
                depth: LabelSet::from_indices(idx),
                degree: self.degrees.get(id).cloned(),
                c1: self.c1.get(id).copied(),
            });
        }
        for name in self.degrees.keys().chain(self.c1.keys()) {
            if !vertices.iter().any(|v| &v.id == name) {
                return Err(Error::Structural(format!("degree data for unknown vertex {name:?}")));
            }
        }
        let vertex = |name: &str| {
            vertices
                .iter()
                .position(|v| v.id == name)
                .ok_or_else(|| Error::Structural(format!("unknown vertex {name:?}")))
        };
        let mut edges = Vec::new();
        for (id, from, to, contact) in &self.edges {
            edges.push(Edge {
                id: id.clone(),
                from: vertex(from)?,
                to: vertex(to)?,
                contact: ContactVector::new(contact.clone()),
            });
        }
        let mut legs = Vec::new();
        for (id, v, order, contact) in &self.legs {
            legs.push(Leg {
                id: id.clone(),
                vertex: vertex(v)?,
                order: *order,
                contact: contact.clone().map(ContactVector::new).unwrap_or_else(|| ContactVector::zeros(n)),
            });
        }
        DecoratedGraph::new(self.mode, self.labels, vertices, edges, legs)
    }
}
