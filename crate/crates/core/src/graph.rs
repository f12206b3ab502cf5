//! Directed networks with per-edge property vectors, plus validation of
//! directed paths and path sets.
//!
//! Edges are identified by string ids and keep their insertion order for the
//! lifetime of the graph. Every matrix produced downstream indexes its rows by
//! that order.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("edge `{edge}` references unknown vertex `{vertex}`")]
    DanglingVertex { edge: String, vertex: String },
    #[error("edge `{0}` is a self-loop")]
    SelfLoop(String),
    #[error("duplicate property `{0}`")]
    DuplicateProperty(String),
    #[error("property `{property}` has no value for edge `{edge}`")]
    MissingValue { property: String, edge: String },
    #[error("property `{property}` assigns a value to unknown edge `{edge}`")]
    UnknownPropertyEdge { property: String, edge: String },
    #[error("property `{property}` value {value} on edge `{edge}` is outside [0, 1]")]
    ProbabilityOutOfRange { property: String, edge: String, value: f64 },
    #[error("property `{property}` value {value} on edge `{edge}` is negative")]
    NegativeValue { property: String, edge: String, value: f64 },
    #[error("property `{property}` value on edge `{edge}` is not finite")]
    NonFiniteValue { property: String, edge: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("a path needs at least one edge")]
    Empty,
    #[error("unknown edge id `{0}`")]
    UnknownEdge(String),
    #[error("edges `{prev}` and `{next}` do not chain")]
    BrokenChain { prev: String, next: String },
    #[error("path visits vertex `{0}` twice")]
    RepeatedVertex(String),
    #[error("path {index} runs {found_start}->{found_end}, expected {start}->{end}")]
    EndpointMismatch {
        index: usize,
        start: String,
        end: String,
        found_start: String,
        found_end: String,
    },
    #[error("path {index} duplicates path {first} as an edge set")]
    DuplicatePath { index: usize, first: usize },
}

/// Admissible range of an edge property.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PropertyDomain {
    #[default]
    NonnegativeReal,
    Probability,
}

impl PropertyDomain {
    pub fn as_str(self) -> &'static str {
        match self {
            PropertyDomain::NonnegativeReal => "nonnegative-real",
            PropertyDomain::Probability => "probability",
        }
    }
}

impl fmt::Display for PropertyDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A named mapping from edge id to a real value.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgePropertyVector {
    name: String,
    unit: String,
    domain: PropertyDomain,
    values: BTreeMap<String, f64>,
}

impl EdgePropertyVector {
    /// Builds a vector, checking each value against the domain. Coverage of
    /// a particular graph is checked where the vector is used.
    pub fn new<I, K>(
        name: impl Into<String>,
        unit: impl Into<String>,
        domain: PropertyDomain,
        values: I,
    ) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (K, f64)>,
        K: Into<String>,
    {
        let name = name.into();
        let mut map = BTreeMap::new();
        for (edge, value) in values {
            let edge = edge.into();
            check_value(&name, &edge, domain, value)?;
            map.insert(edge, value);
        }
        Ok(Self {
            name,
            unit: unit.into(),
            domain,
            values: map,
        })
    }

    /// Every listed edge weighted 1.
    pub fn ones<'a>(name: impl Into<String>, edges: impl IntoIterator<Item = &'a str>) -> Self {
        Self {
            name: name.into(),
            unit: String::new(),
            domain: PropertyDomain::NonnegativeReal,
            values: edges.into_iter().map(|e| (e.to_owned(), 1.0)).collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn unit(&self) -> &str {
        &self.unit
    }

    pub fn domain(&self) -> PropertyDomain {
        self.domain
    }

    pub fn get(&self, edge: &str) -> Option<f64> {
        self.values.get(edge).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn check_value(property: &str, edge: &str, domain: PropertyDomain, value: f64) -> Result<(), GraphError> {
    if !value.is_finite() {
        return Err(GraphError::NonFiniteValue {
            property: property.to_owned(),
            edge: edge.to_owned(),
        });
    }
    match domain {
        PropertyDomain::Probability if !(0.0..=1.0).contains(&value) => Err(GraphError::ProbabilityOutOfRange {
            property: property.to_owned(),
            edge: edge.to_owned(),
            value,
        }),
        PropertyDomain::NonnegativeReal if value < 0.0 => Err(GraphError::NegativeValue {
            property: property.to_owned(),
            edge: edge.to_owned(),
            value,
        }),
        _ => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub from: String,
    pub to: String,
}

/// A directed multigraph without self-loops.
#[derive(Debug, Clone)]
pub struct DirectedGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    edge_ids: Arc<[String]>,
    edge_index: HashMap<String, usize>,
    properties: BTreeMap<String, EdgePropertyVector>,
}

impl DirectedGraph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::default()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> &Edge {
        &self.edges[index]
    }

    /// Edge ids in canonical order, shared with every hypergraph built over
    /// this graph.
    pub fn edge_ids(&self) -> &Arc<[String]> {
        &self.edge_ids
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edge_index.get(id).copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn property(&self, name: &str) -> Option<&EdgePropertyVector> {
        self.properties.get(name)
    }

    pub fn properties(&self) -> impl Iterator<Item = &EdgePropertyVector> {
        self.properties.values()
    }

    /// Validates a sequence of edge ids as a simple directed path.
    pub fn validate_path<S: AsRef<str>>(&self, ids: &[S]) -> Result<DirectedPath, PathError> {
        if ids.is_empty() {
            return Err(PathError::Empty);
        }
        let mut edges = Vec::with_capacity(ids.len());
        for id in ids {
            let id = id.as_ref();
            let index = self
                .edge_index(id)
                .ok_or_else(|| PathError::UnknownEdge(id.to_owned()))?;
            edges.push(index);
        }

        let first = &self.edges[edges[0]];
        let mut seen = HashSet::new();
        seen.insert(first.from.as_str());
        let mut prev = first;
        for (k, &index) in edges.iter().enumerate() {
            let edge = &self.edges[index];
            if k > 0 && edge.from != prev.to {
                return Err(PathError::BrokenChain {
                    prev: prev.id.clone(),
                    next: edge.id.clone(),
                });
            }
            if !seen.insert(edge.to.as_str()) {
                return Err(PathError::RepeatedVertex(edge.to.clone()));
            }
            prev = edge;
        }

        Ok(DirectedPath {
            source: first.from.clone(),
            destination: prev.to.clone(),
            edges,
        })
    }

    /// Vertex sequence visited by `path`, source first.
    pub fn path_vertices(&self, path: &DirectedPath) -> Vec<&str> {
        let mut out = Vec::with_capacity(path.edges.len() + 1);
        out.push(self.edges[path.edges[0]].from.as_str());
        out.extend(path.edges.iter().map(|&e| self.edges[e].to.as_str()));
        out
    }

    /// Resolves `property` to a value per edge in canonical order.
    pub(crate) fn aligned_values(&self, property: &EdgePropertyVector) -> Option<Vec<f64>> {
        self.edges.iter().map(|e| property.get(&e.id)).collect()
    }
}

#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    properties: Vec<EdgePropertyVector>,
}

impl GraphBuilder {
    pub fn vertex(mut self, id: impl Into<String>) -> Self {
        self.vertices.push(id.into());
        self
    }

    pub fn vertices<I, S>(mut self, ids: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.vertices.extend(ids.into_iter().map(Into::into));
        self
    }

    pub fn edge(mut self, id: impl Into<String>, from: impl Into<String>, to: impl Into<String>) -> Self {
        self.edges.push(Edge {
            id: id.into(),
            from: from.into(),
            to: to.into(),
        });
        self
    }

    pub fn property(mut self, property: EdgePropertyVector) -> Self {
        self.properties.push(property);
        self
    }

    pub fn build(self) -> Result<DirectedGraph, GraphError> {
        let mut vertex_set = HashSet::new();
        for v in &self.vertices {
            if !vertex_set.insert(v.as_str()) {
                return Err(GraphError::DuplicateVertex(v.clone()));
            }
        }

        let mut edge_index = HashMap::with_capacity(self.edges.len());
        for (i, e) in self.edges.iter().enumerate() {
            if edge_index.insert(e.id.clone(), i).is_some() {
                return Err(GraphError::DuplicateEdge(e.id.clone()));
            }
            for v in [&e.from, &e.to] {
                if !vertex_set.contains(v.as_str()) {
                    return Err(GraphError::DanglingVertex {
                        edge: e.id.clone(),
                        vertex: v.clone(),
                    });
                }
            }
            if e.from == e.to {
                return Err(GraphError::SelfLoop(e.id.clone()));
            }
        }

        let mut properties = BTreeMap::new();
        for p in self.properties {
            for edge in p.values.keys() {
                if !edge_index.contains_key(edge) {
                    return Err(GraphError::UnknownPropertyEdge {
                        property: p.name.clone(),
                        edge: edge.clone(),
                    });
                }
            }
            if let Some(e) = self.edges.iter().find(|e| !p.values.contains_key(&e.id)) {
                return Err(GraphError::MissingValue {
                    property: p.name.clone(),
                    edge: e.id.clone(),
                });
            }
            if properties.contains_key(&p.name) {
                return Err(GraphError::DuplicateProperty(p.name));
            }
            properties.insert(p.name.clone(), p);
        }

        let edge_ids: Arc<[String]> = self.edges.iter().map(|e| e.id.clone()).collect();
        Ok(DirectedGraph {
            vertices: self.vertices,
            edges: self.edges,
            edge_ids,
            edge_index,
            properties,
        })
    }
}

/// A simple directed path, stored as indices into the owning graph's edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedPath {
    edges: Vec<usize>,
    source: String,
    destination: String,
}

impl DirectedPath {
    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn destination(&self) -> &str {
        &self.destination
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edge_set(&self) -> BTreeSet<usize> {
        self.edges.iter().copied().collect()
    }
}

/// Paths sharing one source and one destination. An empty set has no
/// endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSet {
    paths: Vec<DirectedPath>,
    endpoints: Option<(String, String)>,
}

impl PathSet {
    pub fn empty() -> Self {
        Self {
            paths: Vec::new(),
            endpoints: None,
        }
    }

    pub fn new(paths: Vec<DirectedPath>) -> Result<Self, PathError> {
        let Some(first) = paths.first() else {
            return Ok(Self::empty());
        };
        let (source, destination) = (first.source.clone(), first.destination.clone());
        let mut seen: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        for (index, path) in paths.iter().enumerate() {
            if path.source != source || path.destination != destination {
                return Err(PathError::EndpointMismatch {
                    index,
                    start: source,
                    end: destination,
                    found_start: path.source.clone(),
                    found_end: path.destination.clone(),
                });
            }
            if let Some(&first) = seen.get(&path.edge_set()) {
                return Err(PathError::DuplicatePath { index, first });
            }
            seen.insert(path.edge_set(), index);
        }
        Ok(Self {
            paths,
            endpoints: Some((source, destination)),
        })
    }

    pub fn paths(&self) -> &[DirectedPath] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn source(&self) -> Option<&str> {
        self.endpoints.as_ref().map(|(s, _)| s.as_str())
    }

    pub fn destination(&self) -> Option<&str> {
        self.endpoints.as_ref().map(|(_, d)| d.as_str())
    }

    /// Labels `P1..Pn` in path order.
    pub fn labels(&self) -> Vec<String> {
        (1..=self.paths.len()).map(|i| format!("P{i}")).collect()
    }

    /// The sub-path-set selected by bit `i` of `mask` for path `i`.
    pub fn subset(&self, mask: u32) -> PathSet {
        let paths: Vec<_> = self
            .paths
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, p)| p.clone())
            .collect();
        let endpoints = if paths.is_empty() { None } else { self.endpoints.clone() };
        PathSet { paths, endpoints }
    }

    /// Sorted union of member edge indices.
    pub fn union_edges(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.paths.iter().flat_map(|p| p.edges.iter().copied()).collect();
        set.into_iter().collect()
    }
}

/// Same as [`PathSet::new`].
pub fn validate_path_set(paths: Vec<DirectedPath>) -> Result<PathSet, PathError> {
    PathSet::new(paths)
}
