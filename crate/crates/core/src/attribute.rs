//! Path-set attributes as a two-level fold over an r-incidence matrix.
//!
//! An attribute picks a transformation `T` of the path set, an edge property
//! `w`, and two fold operators. The value is computed as
//!
//! ```text
//! H = T(P)
//! M = R(r, w, H)            r = inner.identity
//! column_j = inner-fold of column j of M, starting from inner.identity
//! value    = outer-fold of column_1..column_k, starting from outer.identity
//! ```
//!
//! With the identity transform the inner fold is the serial composition and
//! the outer fold the parallel one; with cuts the roles swap (parallel within
//! a cut, serial across cuts).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{DirectedGraph, PathSet, PropertyDomain};
use crate::hypergraph::HypergraphError;
use crate::transform::{TransformError, TransformKind, DEFAULT_CUT_LIMIT};

pub const DELAY: &str = "delay";
pub const COST: &str = "cost";
pub const CAPACITY: &str = "capacity";
pub const UNAVAILABILITY: &str = "unavailability";
pub const FAULT_PROBABILITY: &str = "fault_probability";

/// Names of the built-in attributes, in catalog order.
pub const BUILTIN_NAMES: [&str; 5] = [DELAY, COST, CAPACITY, UNAVAILABILITY, FAULT_PROBABILITY];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AttributeError {
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
    #[error("attribute `{attribute}` needs a probability property, `{property}` is {domain}")]
    DomainMismatch {
        attribute: String,
        property: String,
        domain: PropertyDomain,
    },
    #[error("attribute name `{0}` is reserved")]
    Reserved(String),
    #[error("attribute `{0}` is already registered")]
    AlreadyRegistered(String),
    #[error("inner identity {0} is not finite and cannot fill an r-incidence matrix")]
    InfiniteFill(f64),
    #[error("unknown fold operation `{0}`")]
    UnknownOp(String),
    #[error("{op} with identity {identity} violates the {law} law at x = {x}")]
    LawViolation {
        op: &'static str,
        identity: f64,
        law: &'static str,
        x: f64,
    },
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

/// The binary operation behind a fold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OpKind {
    Sum,
    Max,
    Min,
    Product,
    /// `(x, y) -> 1 - (1 - x)(1 - y)`, the probability that at least one of
    /// two independent events occurs.
    ComplementProduct,
}

impl OpKind {
    pub fn as_str(self) -> &'static str {
        match self {
            OpKind::Sum => "sum",
            OpKind::Max => "max",
            OpKind::Min => "min",
            OpKind::Product => "product",
            OpKind::ComplementProduct => "complement-product",
        }
    }

    pub fn apply(self, x: f64, y: f64) -> f64 {
        match self {
            OpKind::Sum => x + y,
            OpKind::Max => x.max(y),
            OpKind::Min => x.min(y),
            OpKind::Product => x * y,
            OpKind::ComplementProduct => 1.0 - (1.0 - x) * (1.0 - y),
        }
    }

    /// Identity on the nonnegative reals. `max` uses 0, which is only an
    /// identity because property values are never negative.
    pub fn natural_identity(self) -> f64 {
        match self {
            OpKind::Sum | OpKind::Max | OpKind::ComplementProduct => 0.0,
            OpKind::Min => f64::INFINITY,
            OpKind::Product => 1.0,
        }
    }
}

impl fmt::Display for OpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OpKind {
    type Err = AttributeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sum" => Ok(OpKind::Sum),
            "max" => Ok(OpKind::Max),
            "min" => Ok(OpKind::Min),
            "product" => Ok(OpKind::Product),
            "complement-product" => Ok(OpKind::ComplementProduct),
            other => Err(AttributeError::UnknownOp(other.to_owned())),
        }
    }
}

/// A binary operation together with its declared identity element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FoldOp {
    pub kind: OpKind,
    pub identity: f64,
}

impl FoldOp {
    pub fn new(kind: OpKind, identity: f64) -> Self {
        Self { kind, identity }
    }

    pub fn natural(kind: OpKind) -> Self {
        Self::new(kind, kind.natural_identity())
    }

    pub fn name(&self) -> &'static str {
        self.kind.as_str()
    }

    pub fn fold(&self, values: impl IntoIterator<Item = f64>) -> f64 {
        values.into_iter().fold(self.identity, |acc, x| self.kind.apply(acc, x))
    }

    /// Samples the identity, commutativity and associativity laws on
    /// `domain`. Deterministic: the same op always gets the same verdict.
    pub fn check_laws(&self, domain: PropertyDomain) -> Result<(), AttributeError> {
        let hi = match domain {
            PropertyDomain::Probability => 1.0,
            PropertyDomain::NonnegativeReal => 1000.0,
        };
        let mut rng = StdRng::seed_from_u64(0x5eed_f01d);
        let mut samples = vec![0.0, hi];
        samples.extend((0..64).map(|_| rng.gen_range(0.0..=hi)));

        let close = |a: f64, b: f64| a == b || (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()));
        let violation = |law, x| AttributeError::LawViolation {
            op: self.name(),
            identity: self.identity,
            law,
            x,
        };
        let op = |a, b| self.kind.apply(a, b);
        for (k, &x) in samples.iter().enumerate() {
            if !close(op(x, self.identity), x) || !close(op(self.identity, x), x) {
                return Err(violation("identity", x));
            }
            let y = samples[(k + 1) % samples.len()];
            let z = samples[(k + 7) % samples.len()];
            if !close(op(x, y), op(y, x)) {
                return Err(violation("commutativity", x));
            }
            if !close(op(op(x, y), z), op(x, op(y, z))) {
                return Err(violation("associativity", x));
            }
        }
        Ok(())
    }
}

/// A full attribute definition.
#[derive(Debug, Clone, PartialEq)]
pub struct AttributeSpec {
    pub name: String,
    pub property: String,
    pub transform: TransformKind,
    /// Applied down each column first.
    pub inner: FoldOp,
    /// Applied across the column results.
    pub outer: FoldOp,
    /// Result unit; `None` takes the property's unit.
    pub unit: Option<String>,
    /// Domain the property must have.
    pub domain: PropertyDomain,
}

impl AttributeSpec {
    /// Fill value for non-member matrix entries: the inner identity.
    pub fn r(&self) -> f64 {
        self.inner.identity
    }

    /// Path delay summed along each path, worst path wins.
    pub fn delay() -> Self {
        builtin(
            DELAY,
            DELAY,
            TransformKind::Identity,
            OpKind::Sum,
            OpKind::Max,
            PropertyDomain::NonnegativeReal,
        )
    }

    /// Every used edge paid once.
    pub fn cost() -> Self {
        builtin(
            COST,
            COST,
            TransformKind::Union,
            OpKind::Sum,
            OpKind::Sum,
            PropertyDomain::NonnegativeReal,
        )
    }

    /// Smallest total capacity over all cuts.
    pub fn capacity() -> Self {
        builtin(
            CAPACITY,
            CAPACITY,
            TransformKind::Cuts,
            OpKind::Sum,
            OpKind::Min,
            PropertyDomain::NonnegativeReal,
        )
    }

    pub fn unavailability() -> Self {
        builtin(
            UNAVAILABILITY,
            FAULT_PROBABILITY,
            TransformKind::Cuts,
            OpKind::Product,
            OpKind::ComplementProduct,
            PropertyDomain::Probability,
        )
    }

    /// First-order approximation of [`AttributeSpec::unavailability`].
    pub fn fault_probability() -> Self {
        builtin(
            FAULT_PROBABILITY,
            FAULT_PROBABILITY,
            TransformKind::Cuts,
            OpKind::Product,
            OpKind::Sum,
            PropertyDomain::Probability,
        )
    }

    pub fn builtins() -> [Self; 5] {
        [
            Self::delay(),
            Self::cost(),
            Self::capacity(),
            Self::unavailability(),
            Self::fault_probability(),
        ]
    }

    pub fn builtin(name: &str) -> Option<Self> {
        Self::builtins().into_iter().find(|s| s.name == name)
    }
}

fn builtin(
    name: &str,
    property: &str,
    transform: TransformKind,
    inner: OpKind,
    outer: OpKind,
    domain: PropertyDomain,
) -> AttributeSpec {
    AttributeSpec {
        name: name.to_owned(),
        property: property.to_owned(),
        transform,
        inner: FoldOp::natural(inner),
        outer: FoldOp::natural(outer),
        unit: None,
        domain,
    }
}

/// A computed attribute with its per-column intermediates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AttributeValue {
    pub name: String,
    pub value: f64,
    pub unit: String,
    pub transform: TransformKind,
    pub domain: PropertyDomain,
    /// `(hyperedge label, inner fold result)` per column.
    pub columns: Vec<(String, f64)>,
}

/// Evaluates `spec` with the default cut limit.
pub fn evaluate(spec: &AttributeSpec, p: &PathSet, g: &DirectedGraph) -> Result<AttributeValue, AttributeError> {
    evaluate_with_limit(spec, p, g, DEFAULT_CUT_LIMIT)
}

pub fn evaluate_with_limit(
    spec: &AttributeSpec,
    p: &PathSet,
    g: &DirectedGraph,
    cut_limit: usize,
) -> Result<AttributeValue, AttributeError> {
    let property = g
        .property(&spec.property)
        .ok_or_else(|| AttributeError::UnknownProperty(spec.property.clone()))?;
    if spec.domain == PropertyDomain::Probability && property.domain() != PropertyDomain::Probability {
        return Err(AttributeError::DomainMismatch {
            attribute: spec.name.clone(),
            property: property.name().to_owned(),
            domain: property.domain(),
        });
    }
    let weights = g.aligned_values(property).expect("graph properties cover every edge");

    let h = spec.transform.apply(g, p, cut_limit)?;
    let m = h.r_incidence_aligned(spec.r(), &weights)?;
    let columns: Vec<(String, f64)> = (0..m.cols())
        .map(|j| (m.column_labels()[j].clone(), spec.inner.fold(m.column(j))))
        .collect();
    let value = spec.outer.fold(columns.iter().map(|(_, x)| *x));

    Ok(AttributeValue {
        name: spec.name.clone(),
        value,
        unit: spec.unit.clone().unwrap_or_else(|| property.unit().to_owned()),
        transform: spec.transform,
        domain: property.domain(),
        columns,
    })
}

/// `1 - unavailability`.
pub fn availability(p: &PathSet, g: &DirectedGraph) -> Result<f64, AttributeError> {
    Ok(1.0 - evaluate(&AttributeSpec::unavailability(), p, g)?.value)
}

/// `1 - fault probability`.
pub fn serviceability(p: &PathSet, g: &DirectedGraph) -> Result<f64, AttributeError> {
    Ok(1.0 - evaluate(&AttributeSpec::fault_probability(), p, g)?.value)
}

/// Built-in attributes plus user registrations. Reads may run concurrently;
/// registrations are serialized.
#[derive(Debug, Default)]
pub struct AttributeRegistry {
    custom: RwLock<BTreeMap<String, Arc<AttributeSpec>>>,
}

impl AttributeRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Validates and stores `spec`, returning a shared handle to it.
    pub fn register(&self, spec: AttributeSpec) -> Result<Arc<AttributeSpec>, AttributeError> {
        if BUILTIN_NAMES.contains(&spec.name.as_str()) {
            return Err(AttributeError::Reserved(spec.name));
        }
        if !spec.r().is_finite() {
            return Err(AttributeError::InfiniteFill(spec.r()));
        }
        spec.inner.check_laws(spec.domain)?;
        spec.outer.check_laws(spec.domain)?;

        let mut custom = self.custom.write().expect("registry lock poisoned");
        if custom.contains_key(&spec.name) {
            return Err(AttributeError::AlreadyRegistered(spec.name));
        }
        let handle = Arc::new(spec);
        custom.insert(handle.name.clone(), Arc::clone(&handle));
        Ok(handle)
    }

    pub fn get(&self, name: &str) -> Option<Arc<AttributeSpec>> {
        if let Some(spec) = AttributeSpec::builtin(name) {
            return Some(Arc::new(spec));
        }
        self.custom.read().expect("registry lock poisoned").get(name).cloned()
    }

    /// Builtins first, then custom attributes by name.
    pub fn names(&self) -> Vec<String> {
        let custom = self.custom.read().expect("registry lock poisoned");
        BUILTIN_NAMES
            .iter()
            .map(|s| s.to_string())
            .chain(custom.keys().cloned())
            .collect()
    }
}
