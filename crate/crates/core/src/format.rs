//! JSON graph files.
//!
//! ```json
//! {"mode": "degeneration", "S": ["1", "2"],
//!  "vertices": [{"id": "a", "genus": 0, "depth": ["1"]}, ...],
//!  "edges": [{"id": "e", "from": "a", "to": "b", "contact": {"1": -2, "2": 2}}],
//!  "legs": [{"id": "l1", "vertex": "a", "order": 1}]}
//! ```
//!
//! Missing contact entries are zero. `degree` and `c1` on a vertex are
//! optional.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ContactVector, DecoratedGraph, Edge, LabelSet, Leg, Mode, Vertex};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    mode: String,
    #[serde(rename = "S")]
    labels: Vec<String>,
    vertices: Vec<VertexFile>,
    #[serde(default)]
    edges: Vec<EdgeFile>,
    #[serde(default)]
    legs: Vec<LegFile>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexFile {
    id: String,
    #[serde(default)]
    genus: u32,
    #[serde(default)]
    depth: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    degree: Option<BTreeMap<String, i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    c1: Option<i64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeFile {
    id: String,
    from: String,
    to: String,
    #[serde(default)]
    contact: BTreeMap<String, i64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LegFile {
    id: String,
    vertex: String,
    order: usize,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    contact: BTreeMap<String, i64>,
}

pub fn parse_graph(text: &str) -> Result<DecoratedGraph> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| Error::Structural(format!("invalid graph file: {e}")))?;
    let mode = match file.mode.as_str() {
        "relative" => Mode::Relative,
        "degeneration" => Mode::Degeneration,
        other => return Err(Error::Structural(format!("unknown mode {other:?}"))),
    };
    let labels = file.labels;
    let label = |name: &str, what: &str| {
        labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| Error::Structural(format!("{what} refers to unknown label {name:?}")))
    };
    let vector = |map: &BTreeMap<String, i64>, what: &str| -> Result<ContactVector> {
        let mut v = vec![0; labels.len()];
        for (k, &x) in map {
            v[label(k, what)?] = x;
        }
        Ok(ContactVector::new(v))
    };
    let vertex = |id: &str, what: &str| {
        file.vertices
            .iter()
            .position(|v| v.id == id)
            .ok_or_else(|| Error::Structural(format!("{what} references missing vertex {id:?}")))
    };

    let mut vertices = Vec::with_capacity(file.vertices.len());
    for v in &file.vertices {
        let what = format!("vertex {:?}", v.id);
        let depth = v.depth.iter().map(|l| label(l, &what)).collect::<Result<Vec<_>>>()?;
        let degree = match &v.degree {
            Some(map) => Some(vector(map, &what)?.entries().to_vec()),
            None => None,
        };
        vertices.push(Vertex {
            id: v.id.clone(),
            genus: v.genus,
            depth: LabelSet::from_indices(depth),
            degree,
            c1: v.c1,
        });
    }
    let mut edges = Vec::with_capacity(file.edges.len());
    for e in &file.edges {
        let what = format!("edge {:?}", e.id);
        edges.push(Edge {
            id: e.id.clone(),
            from: vertex(&e.from, &what)?,
            to: vertex(&e.to, &what)?,
            contact: vector(&e.contact, &what)?,
        });
    }
    let mut legs = Vec::with_capacity(file.legs.len());
    for l in &file.legs {
        let what = format!("leg {:?}", l.id);
        legs.push(Leg { id: l.id.clone(), vertex: vertex(&l.vertex, &what)?, order: l.order, contact: vector(&l.contact, &what)? });
    }
    DecoratedGraph::new(mode, labels.clone(), vertices, edges, legs)
}

fn contact_map(g: &DecoratedGraph, v: &ContactVector) -> BTreeMap<String, i64> {
    g.labels().iter().zip(v.entries()).filter(|(_, &x)| x != 0).map(|(l, &x)| (l.clone(), x)).collect()
}

fn to_file(g: &DecoratedGraph) -> GraphFile {
    let vid = |k: usize| g.vertices()[k].id.clone();
    GraphFile {
        mode: g.mode().as_str().to_string(),
        labels: g.labels().to_vec(),
        vertices: g
            .vertices()
            .iter()
            .map(|v| VertexFile {
                id: v.id.clone(),
                genus: v.genus,
                depth: v.depth.iter().map(|i| g.labels()[i].clone()).collect(),
                degree: v
                    .degree
                    .as_ref()
                    .map(|d| g.labels().iter().cloned().zip(d.iter().copied()).collect()),
                c1: v.c1,
            })
            .collect(),
        edges: g
            .edges()
            .iter()
            .map(|e| EdgeFile { id: e.id.clone(), from: vid(e.from), to: vid(e.to), contact: contact_map(g, &e.contact) })
            .collect(),
        legs: g
            .legs()
            .iter()
            .map(|l| LegFile { id: l.id.clone(), vertex: vid(l.vertex), order: l.order, contact: contact_map(g, &l.contact) })
            .collect(),
    }
}

pub fn graph_to_json(g: &DecoratedGraph) -> serde_json::Value {
    serde_json::to_value(to_file(g)).expect("graph files serialize")
}

pub fn serialize_graph(g: &DecoratedGraph) -> String {
    serde_json::to_string_pretty(&to_file(g)).expect("graph files serialize")
}
