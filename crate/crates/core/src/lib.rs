//! Attribute calculation for sets of directed paths.
//!
//! A path set between two vertices is rewritten into a hypergraph over the
//! graph's edges (the paths themselves, their union, or their minimal cuts),
//! weighted by an edge property, and reduced by two folds: one down each
//! hyperedge column and one across the column results. Delay, administrative
//! cost, capacity, unavailability and fault probability are built in; other
//! attributes can be registered with any supported pair of folds.
//!
//! ```
//! use pathset::{evaluate, AttributeSpec, DirectedGraph, EdgePropertyVector, PathSet, PropertyDomain};
//!
//! let capacity = EdgePropertyVector::new(
//!     "capacity", "Gbps", PropertyDomain::NonnegativeReal,
//!     [("AB", 10.0), ("BC", 4.0), ("AC", 3.0)],
//! ).unwrap();
//! let g = DirectedGraph::builder()
//!     .vertices(["A", "B", "C"])
//!     .edge("AB", "A", "B")
//!     .edge("BC", "B", "C")
//!     .edge("AC", "A", "C")
//!     .property(capacity)
//!     .build()
//!     .unwrap();
//! let paths = vec![g.validate_path(&["AB", "BC"]).unwrap(), g.validate_path(&["AC"]).unwrap()];
//! let p = PathSet::new(paths).unwrap();
//!
//! let value = evaluate(&AttributeSpec::capacity(), &p, &g).unwrap();
//! assert_eq!(value.value, 7.0);
//! ```
//!
//! The [`polymatroid`] module tabulates an attribute over every subset of a
//! path set and checks the resulting set function against the polymatroid
//! axioms. [`document`] and [`cli`] provide the JSON input format and the
//! commands behind the `pathset` binary.

pub mod attribute;
pub mod cli;
pub mod document;
pub mod graph;
pub mod hypergraph;
pub mod polymatroid;
pub mod transform;

pub use attribute::{
    availability, evaluate, evaluate_with_limit, serviceability, AttributeError, AttributeRegistry, AttributeSpec,
    AttributeValue, FoldOp, OpKind,
};
pub use document::{DocumentError, Network, NetworkDocument};
pub use graph::{
    validate_path_set, DirectedGraph, DirectedPath, Edge, EdgePropertyVector, GraphBuilder, GraphError, PathError,
    PathSet, PropertyDomain,
};
pub use hypergraph::{
    incidence_matrix, r_incidence_matrix, Hyperedge, Hypergraph, HypergraphError, Matrix, VertexWeightedHypergraph,
};
pub use polymatroid::{
    check_axioms, dualize, tabulate, Axiom, Classification, SetFunctionReport, SetFunctionTable, Verdict, Witness,
};
pub use transform::{
    cuts_transform, identity_transform, is_minimal_cut, union_transform, CutVerdict, TransformError, TransformKind,
};
