//! The JSON network document: a graph with per-edge weights, named path
//! sets, and optional custom attributes.
//!
//! ```json
//! {
//!   "vertices": ["A", "B"],
//!   "properties": { "delay": { "unit": "µs" } },
//!   "edges": [ { "id": "AB", "from": "A", "to": "B", "weights": { "delay": 5 } } ],
//!   "path_sets": [ { "name": "P", "paths": [["AB"]] } ],
//!   "attributes": [ {
//!     "name": "bottleneck-delay", "property": "delay", "transform": "identity",
//!     "inner": { "op": "max", "identity": 0 }, "outer": { "op": "min", "identity": "inf" }
//!   } ]
//! }
//! ```
//!
//! `properties` is optional and only needed to attach a unit or to declare a
//! `probability` domain; undeclared properties are nonnegative reals without
//! unit. An omitted `identity` means the operation's natural identity.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use thiserror::Error;

use crate::attribute::{AttributeError, AttributeRegistry, AttributeSpec, FoldOp, OpKind};
use crate::graph::{DirectedGraph, EdgePropertyVector, GraphError, PathError, PathSet, PropertyDomain};
use crate::transform::TransformKind;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid graph: {0}")]
    Graph(#[from] GraphError),
    #[error("path set `{name}`, path {index}: {source}")]
    Path {
        name: String,
        index: usize,
        source: Box<PathError>,
    },
    #[error("path set `{name}`: {source}")]
    PathSet { name: String, source: Box<PathError> },
    #[error("duplicate path set `{0}`")]
    DuplicatePathSet(String),
    #[error("property `{0}` is declared but no edge carries it")]
    UndeclaredValues(String),
    #[error("attribute `{name}`: {source}")]
    Attribute { name: String, source: AttributeError },
    #[error("attribute `{name}`: bad identity `{text}`")]
    Identity { name: String, text: String },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkDocument {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeRecord>,
    #[serde(default)]
    pub properties: BTreeMap<String, PropertyRecord>,
    #[serde(default)]
    pub path_sets: Vec<PathSetRecord>,
    #[serde(default)]
    pub attributes: Vec<AttributeRecord>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub id: String,
    pub from: String,
    pub to: String,
    #[serde(default)]
    pub weights: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PropertyRecord {
    #[serde(default)]
    pub unit: String,
    #[serde(default)]
    pub domain: PropertyDomain,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathSetRecord {
    pub name: String,
    pub paths: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttributeRecord {
    pub name: String,
    pub property: String,
    pub transform: TransformKind,
    pub inner: OpRecord,
    pub outer: OpRecord,
    #[serde(default)]
    pub unit: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpRecord {
    pub op: OpKind,
    #[serde(default)]
    pub identity: Option<IdentityRecord>,
}

/// A number, or `"inf"` / `"-inf"` for the identities JSON cannot spell.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum IdentityRecord {
    Number(f64),
    Text(String),
}

impl NetworkDocument {
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn into_network(self) -> Result<Network, DocumentError> {
        let graph = self.build_graph()?;

        let mut path_sets: Vec<(String, PathSet)> = Vec::with_capacity(self.path_sets.len());
        for record in self.path_sets {
            if path_sets.iter().any(|(n, _)| *n == record.name) {
                return Err(DocumentError::DuplicatePathSet(record.name));
            }
            let mut paths = Vec::with_capacity(record.paths.len());
            for (index, ids) in record.paths.iter().enumerate() {
                let path = graph.validate_path(ids).map_err(|source| DocumentError::Path {
                    name: record.name.clone(),
                    index,
                    source: Box::new(source),
                })?;
                paths.push(path);
            }
            let set = PathSet::new(paths).map_err(|source| DocumentError::PathSet {
                name: record.name.clone(),
                source: Box::new(source),
            })?;
            path_sets.push((record.name, set));
        }

        let registry = AttributeRegistry::new();
        for record in self.attributes {
            let name = record.name.clone();
            let spec = record.into_spec()?;
            registry
                .register(spec)
                .map_err(|source| DocumentError::Attribute { name, source })?;
        }

        Ok(Network {
            graph,
            path_sets,
            attributes: registry,
        })
    }

    fn build_graph(&self) -> Result<DirectedGraph, DocumentError> {
        let mut names: BTreeSet<&str> = self.properties.keys().map(String::as_str).collect();
        for e in &self.edges {
            names.extend(e.weights.keys().map(String::as_str));
        }

        let mut builder = DirectedGraph::builder().vertices(self.vertices.iter().cloned());
        for e in &self.edges {
            builder = builder.edge(&e.id, &e.from, &e.to);
        }
        for name in names {
            let decl = self.properties.get(name).cloned().unwrap_or_default();
            let values: Vec<(&str, f64)> = self
                .edges
                .iter()
                .filter_map(|e| e.weights.get(name).map(|&v| (e.id.as_str(), v)))
                .collect();
            if values.is_empty() && !self.edges.is_empty() {
                return Err(DocumentError::UndeclaredValues(name.to_owned()));
            }
            builder = builder.property(EdgePropertyVector::new(name, decl.unit, decl.domain, values)?);
        }
        Ok(builder.build()?)
    }
}

impl AttributeRecord {
    fn into_spec(self) -> Result<AttributeSpec, DocumentError> {
        let inner = self.inner.to_fold(&self.name)?;
        let outer = self.outer.to_fold(&self.name)?;
        let domain = if [inner.kind, outer.kind].contains(&OpKind::ComplementProduct) {
            PropertyDomain::Probability
        } else {
            PropertyDomain::NonnegativeReal
        };
        Ok(AttributeSpec {
            name: self.name,
            property: self.property,
            transform: self.transform,
            inner,
            outer,
            unit: self.unit,
            domain,
        })
    }
}

impl OpRecord {
    fn to_fold(&self, attribute: &str) -> Result<FoldOp, DocumentError> {
        let identity = match &self.identity {
            None => self.op.natural_identity(),
            Some(IdentityRecord::Number(x)) => *x,
            Some(IdentityRecord::Text(t)) => match t.as_str() {
                "inf" | "+inf" | "infinity" => f64::INFINITY,
                "-inf" | "-infinity" => f64::NEG_INFINITY,
                _ => {
                    return Err(DocumentError::Identity {
                        name: attribute.to_owned(),
                        text: t.clone(),
                    })
                }
            },
        };
        Ok(FoldOp::new(self.op, identity))
    }
}

/// A loaded, validated document.
#[derive(Debug)]
pub struct Network {
    pub graph: DirectedGraph,
    /// In document order.
    pub path_sets: Vec<(String, PathSet)>,
    pub attributes: AttributeRegistry,
}

impl Network {
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        NetworkDocument::from_json(text)?.into_network()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, DocumentError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| DocumentError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn path_set(&self, name: &str) -> Option<&PathSet> {
        self.path_sets.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    pub fn attribute(&self, name: &str) -> Option<Arc<AttributeSpec>> {
        self.attributes.get(name)
    }
}
