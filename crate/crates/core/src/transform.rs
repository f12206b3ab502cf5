//! Path-set transformations: identity, union and cuts.
//!
//! A cut of a path set is a minimal set of edges sharing at least one edge
//! with every path, i.e. a minimal transversal of the paths viewed as edge
//! sets. It is not a graph cut: other routes in the graph are ignored.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{DirectedGraph, PathSet};
use crate::hypergraph::Hypergraph;

/// Default ceiling on the number of distinct edges in a path set's union
/// before cut enumeration refuses to run.
pub const DEFAULT_CUT_LIMIT: usize = 24;

/// Largest union the bitmask representation can hold.
pub const MAX_CUT_LIMIT: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("path set uses {edges} distinct edges, cut enumeration limit is {limit}")]
    LimitExceeded { edges: usize, limit: usize },
    #[error("unknown edge id `{0}`")]
    UnknownEdge(String),
    #[error("unknown transform `{0}` (expected identity, union or cuts)")]
    UnknownKind(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransformKind {
    Identity,
    Union,
    Cuts,
}

impl TransformKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TransformKind::Identity => "identity",
            TransformKind::Union => "union",
            TransformKind::Cuts => "cuts",
        }
    }

    pub fn apply(self, g: &DirectedGraph, p: &PathSet, cut_limit: usize) -> Result<Hypergraph, TransformError> {
        match self {
            TransformKind::Identity => Ok(identity_transform(g, p)),
            TransformKind::Union => Ok(union_transform(g, p)),
            TransformKind::Cuts => cuts_transform(g, p, cut_limit),
        }
    }
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TransformKind {
    type Err = TransformError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "identity" => Ok(TransformKind::Identity),
            "union" => Ok(TransformKind::Union),
            "cuts" => Ok(TransformKind::Cuts),
            other => Err(TransformError::UnknownKind(other.to_owned())),
        }
    }
}

/// One hyperedge per path, labelled `P1..Pn`.
pub fn identity_transform(g: &DirectedGraph, p: &PathSet) -> Hypergraph {
    let hyperedges = p
        .labels()
        .into_iter()
        .zip(p.paths())
        .map(|(label, path)| (label, path.edges().to_vec()))
        .collect();
    Hypergraph::from_indices(g.edge_ids().clone(), hyperedges)
}

/// A single hyperedge `Union` holding every edge used by some path.
pub fn union_transform(g: &DirectedGraph, p: &PathSet) -> Hypergraph {
    Hypergraph::from_indices(g.edge_ids().clone(), vec![("Union".to_owned(), p.union_edges())])
}

/// Every cut of the path set, labelled `C1..Ck` in lexicographic order of
/// their sorted edge indices. The empty path set has exactly one, empty, cut.
pub fn cuts_transform(g: &DirectedGraph, p: &PathSet, limit: usize) -> Result<Hypergraph, TransformError> {
    let hyperedges = enumerate_cuts(p, limit)?
        .into_iter()
        .enumerate()
        .map(|(k, cut)| (format!("C{}", k + 1), cut))
        .collect();
    Ok(Hypergraph::from_indices(g.edge_ids().clone(), hyperedges))
}

/// Cuts as sorted vectors of graph edge indices, in canonical order.
pub fn enumerate_cuts(p: &PathSet, limit: usize) -> Result<Vec<Vec<usize>>, TransformError> {
    let universe = p.union_edges();
    let limit = limit.min(MAX_CUT_LIMIT);
    if universe.len() > limit {
        return Err(TransformError::LimitExceeded {
            edges: universe.len(),
            limit,
        });
    }
    let local = |edge: usize| universe.binary_search(&edge).expect("edge in union");
    let family: Vec<u128> = p
        .paths()
        .iter()
        .map(|path| path.edges().iter().fold(0u128, |m, &e| m | 1 << local(e)))
        .collect();

    let mut cuts: Vec<Vec<usize>> = minimal_transversals(&family)
        .into_iter()
        .map(|mask| {
            (0..universe.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| universe[i])
                .collect()
        })
        .collect();
    cuts.sort();
    Ok(cuts)
}

/// Minimal transversals of a family of nonempty sets, built one set at a
/// time: partial transversals that already hit the next set are kept, the
/// others are extended by each of its elements, and non-minimal candidates
/// are dropped.
fn minimal_transversals(family: &[u128]) -> Vec<u128> {
    let mut current = vec![0u128];
    for &set in family {
        let mut candidates = Vec::with_capacity(current.len());
        for &t in &current {
            if t & set != 0 {
                candidates.push(t);
            } else {
                let mut rest = set;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    candidates.push(t | bit);
                    rest &= rest - 1;
                }
            }
        }
        candidates.sort_unstable_by_key(|c| (c.count_ones(), *c));
        candidates.dedup();
        let mut kept: Vec<u128> = Vec::with_capacity(candidates.len());
        for c in candidates {
            // Sorted by size, so any subset of `c` is already in `kept`.
            if kept.iter().all(|&k| k & !c != 0) {
                kept.push(c);
            }
        }
        current = kept;
    }
    current
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CutVerdict {
    NotACut,
    CutNotMinimal,
    MinimalCut,
}

/// Classifies an edge set against the path set.
pub fn is_minimal_cut<S: AsRef<str>>(
    g: &DirectedGraph,
    p: &PathSet,
    edges: &[S],
) -> Result<CutVerdict, TransformError> {
    let mut set = Vec::with_capacity(edges.len());
    for e in edges {
        let e = e.as_ref();
        set.push(
            g.edge_index(e)
                .ok_or_else(|| TransformError::UnknownEdge(e.to_owned()))?,
        );
    }
    set.sort_unstable();
    set.dedup();

    let hits = |s: &[usize]| {
        p.paths()
            .iter()
            .all(|path| path.edges().iter().any(|e| s.binary_search(e).is_ok()))
    };
    if !hits(&set) {
        return Ok(CutVerdict::NotACut);
    }
    let minimal = (0..set.len()).all(|k| {
        let mut smaller = set.clone();
        smaller.remove(k);
        !hits(&smaller)
    });
    Ok(if minimal {
        CutVerdict::MinimalCut
    } else {
        CutVerdict::CutNotMinimal
    })
}
