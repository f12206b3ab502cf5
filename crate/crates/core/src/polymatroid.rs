//! Set functions induced by an attribute over the subsets of a path set, and
//! exhaustive checks of the polymatroid and matroid axioms:
//!
//! ```text
//! (R1) rho(∅) = 0                  (R4) rho(X) is an integer
//! (R2) X ⊆ Y  =>  rho(X) <= rho(Y)  (R5) rho(X) <= |X|
//! (R3) rho(X) + rho(Y) >= rho(X ∩ Y) + rho(X ∪ Y)
//! ```
//!
//! R3 is submodularity; supermodularity is the reversed inequality.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::attribute::{evaluate_with_limit, AttributeError, AttributeSpec};
use crate::graph::{DirectedGraph, PathSet};
use crate::transform::DEFAULT_CUT_LIMIT;

/// Default ground-set size limit for tabulation.
pub const DEFAULT_SUBSET_LIMIT: usize = 12;

/// Hard ceiling, whatever limit is requested.
pub const MAX_SUBSET_LIMIT: usize = 16;

/// Absolute tolerance for every axiom inequality.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolymatroidError {
    #[error("ground set has {size} elements, subset limit is {limit}")]
    LimitExceeded { size: usize, limit: usize },
    #[error("table has {found} values, expected 2^{size}")]
    Shape { size: usize, found: usize },
    #[error(transparent)]
    Attribute(#[from] AttributeError),
}

/// A subset of the ground set, bit `i` standing for element `i`.
pub type Subset = u32;

/// Values of a set function on every subset of an ordered ground set.
#[derive(Debug, Clone, PartialEq)]
pub struct SetFunctionTable {
    ground: Vec<String>,
    values: Vec<f64>,
}

impl SetFunctionTable {
    /// `values[mask]` is the value on the subset `mask`.
    pub fn new(ground: Vec<String>, values: Vec<f64>) -> Result<Self, PolymatroidError> {
        if ground.len() > MAX_SUBSET_LIMIT {
            return Err(PolymatroidError::LimitExceeded {
                size: ground.len(),
                limit: MAX_SUBSET_LIMIT,
            });
        }
        if values.len() != 1 << ground.len() {
            return Err(PolymatroidError::Shape {
                size: ground.len(),
                found: values.len(),
            });
        }
        Ok(Self { ground, values })
    }

    /// Tabulates `f` over all subsets.
    pub fn from_fn(ground: Vec<String>, f: impl FnMut(Subset) -> f64) -> Result<Self, PolymatroidError> {
        if ground.len() > MAX_SUBSET_LIMIT {
            return Err(PolymatroidError::LimitExceeded {
                size: ground.len(),
                limit: MAX_SUBSET_LIMIT,
            });
        }
        let values = (0..1u32 << ground.len()).map(f).collect();
        Self::new(ground, values)
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn full(&self) -> Subset {
        ((1u64 << self.ground.len()) - 1) as Subset
    }

    pub fn value(&self, subset: Subset) -> f64 {
        self.values[subset as usize]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Ground-set labels of `subset`.
    pub fn labels(&self, subset: Subset) -> Vec<&str> {
        self.ground
            .iter()
            .enumerate()
            .filter(|(i, _)| subset >> i & 1 == 1)
            .map(|(_, l)| l.as_str())
            .collect()
    }
}

/// Evaluates `attr` on every sub-path-set of `p`.
pub fn tabulate(attr: &AttributeSpec, p: &PathSet, g: &DirectedGraph) -> Result<SetFunctionTable, PolymatroidError> {
    tabulate_with_limits(attr, p, g, DEFAULT_SUBSET_LIMIT, DEFAULT_CUT_LIMIT)
}

pub fn tabulate_with_limits(
    attr: &AttributeSpec,
    p: &PathSet,
    g: &DirectedGraph,
    subset_limit: usize,
    cut_limit: usize,
) -> Result<SetFunctionTable, PolymatroidError> {
    let limit = subset_limit.min(MAX_SUBSET_LIMIT);
    if p.len() > limit {
        return Err(PolymatroidError::LimitExceeded { size: p.len(), limit });
    }
    let values = (0..1u32 << p.len())
        .map(|mask| evaluate_with_limit(attr, &p.subset(mask), g, cut_limit).map(|v| v.value))
        .collect::<Result<Vec<_>, _>>()?;
    SetFunctionTable::new(p.labels(), values)
}

/// `rho'(X) = rho(E) - rho(E \ X)`.
pub fn dualize(t: &SetFunctionTable) -> SetFunctionTable {
    let full = t.full();
    let top = t.value(full);
    SetFunctionTable {
        ground: t.ground.clone(),
        values: (0..t.len() as Subset).map(|x| top - t.value(full & !x)).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Axiom {
    R1,
    R2,
    R3,
    R4,
    R5,
    Submodular,
    Supermodular,
}

impl Axiom {
    pub const ALL: [Axiom; 7] = [
        Axiom::R1,
        Axiom::R2,
        Axiom::R3,
        Axiom::R4,
        Axiom::R5,
        Axiom::Submodular,
        Axiom::Supermodular,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Axiom::R1 => "R1",
            Axiom::R2 => "R2",
            Axiom::R3 => "R3",
            Axiom::R4 => "R4",
            Axiom::R5 => "R5",
            Axiom::Submodular => "submodular",
            Axiom::Supermodular => "supermodular",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The subsets and values exhibiting a violation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Witness {
    /// R1: value on the empty set.
    Empty { value: f64 },
    /// R2: `x ⊆ y` but `rho(x) > rho(y)`.
    Chain {
        x: Subset,
        y: Subset,
        rho_x: f64,
        rho_y: f64,
    },
    /// R3 and (super)modularity.
    Pair {
        x: Subset,
        y: Subset,
        rho_x: f64,
        rho_y: f64,
        rho_meet: f64,
        rho_join: f64,
    },
    /// R4 / R5: a single subset.
    Single { x: Subset, rho_x: f64 },
}

impl Witness {
    /// Re-evaluates the witness against `t` and reports whether it still
    /// violates `axiom`.
    pub fn reproduces(&self, axiom: Axiom, t: &SetFunctionTable) -> bool {
        match (axiom, *self) {
            (Axiom::R1, Witness::Empty { .. }) => t.value(0).abs() > TOLERANCE,
            (Axiom::R2, Witness::Chain { x, y, .. }) => x & y == x && t.value(x) > t.value(y) + TOLERANCE,
            (Axiom::R3 | Axiom::Submodular, Witness::Pair { x, y, .. }) => {
                t.value(x) + t.value(y) < t.value(x & y) + t.value(x | y) - TOLERANCE
            }
            (Axiom::Supermodular, Witness::Pair { x, y, .. }) => {
                t.value(x) + t.value(y) > t.value(x & y) + t.value(x | y) + TOLERANCE
            }
            (Axiom::R4, Witness::Single { x, .. }) => !is_integer(t.value(x)),
            (Axiom::R5, Witness::Single { x, .. }) => t.value(x) > x.count_ones() as f64 + TOLERANCE,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Verdict {
    Holds,
    /// First witness in enumeration order, and how many witnesses exist.
    Violated {
        witness: Witness,
        count: usize,
    },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Holds => None,
            Verdict::Violated { witness, .. } => Some(witness),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Matroid,
    Polymatroid,
    /// Both sub- and supermodular, but not a polymatroid.
    Modular,
    SubmodularOnly,
    SupermodularOnly,
    None,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Matroid => "matroid",
            Classification::Polymatroid => "polymatroid",
            Classification::Modular => "modular",
            Classification::SubmodularOnly => "submodular-only",
            Classification::SupermodularOnly => "supermodular-only",
            Classification::None => "none",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SetFunctionReport {
    pub verdicts: BTreeMap<Axiom, Verdict>,
}

impl SetFunctionReport {
    pub fn verdict(&self, axiom: Axiom) -> &Verdict {
        &self.verdicts[&axiom]
    }

    pub fn holds(&self, axiom: Axiom) -> bool {
        self.verdict(axiom).holds()
    }

    pub fn is_polymatroid(&self) -> bool {
        self.holds(Axiom::R1) && self.holds(Axiom::R2) && self.holds(Axiom::R3)
    }

    pub fn is_matroid(&self) -> bool {
        self.is_polymatroid() && self.holds(Axiom::R4) && self.holds(Axiom::R5)
    }

    pub fn is_modular(&self) -> bool {
        self.holds(Axiom::Submodular) && self.holds(Axiom::Supermodular)
    }

    /// The most specific class that applies. Modularity is orthogonal to
    /// the polymatroid classes; see [`SetFunctionReport::is_modular`].
    pub fn classification(&self) -> Classification {
        if self.is_matroid() {
            Classification::Matroid
        } else if self.is_polymatroid() {
            Classification::Polymatroid
        } else if self.is_modular() {
            Classification::Modular
        } else if self.holds(Axiom::Submodular) {
            Classification::SubmodularOnly
        } else if self.holds(Axiom::Supermodular) {
            Classification::SupermodularOnly
        } else {
            Classification::None
        }
    }

    /// e.g. `polymatroid+modular`.
    pub fn classification_label(&self) -> String {
        let class = self.classification();
        if self.is_modular() && class != Classification::Modular {
            format!("{}+modular", class.as_str())
        } else {
            class.as_str().to_owned()
        }
    }
}

fn is_integer(x: f64) -> bool {
    (x - x.round()).abs() <= TOLERANCE
}

#[derive(Default)]
struct Tally {
    first: Option<Witness>,
    count: usize,
}

impl Tally {
    fn record(&mut self, w: impl FnOnce() -> Witness) {
        if self.first.is_none() {
            self.first = Some(w());
        }
        self.count += 1;
    }

    fn verdict(self) -> Verdict {
        match self.first {
            None => Verdict::Holds,
            Some(witness) => Verdict::Violated {
                witness,
                count: self.count,
            },
        }
    }
}

/// Exhaustive check of every axiom. Pairs are visited as `x < y` in mask
/// order, so the reported witness is the first violation in that order.
pub fn check_axioms(t: &SetFunctionTable) -> SetFunctionReport {
    let n = t.len() as Subset;
    let rho = |s: Subset| t.value(s);

    let mut r1 = Tally::default();
    if rho(0).abs() > TOLERANCE {
        r1.record(|| Witness::Empty { value: rho(0) });
    }

    let (mut r2, mut r4, mut r5) = (Tally::default(), Tally::default(), Tally::default());
    let (mut sub, mut sup) = (Tally::default(), Tally::default());
    for x in 0..n {
        if !is_integer(rho(x)) {
            r4.record(|| Witness::Single { x, rho_x: rho(x) });
        }
        if rho(x) > x.count_ones() as f64 + TOLERANCE {
            r5.record(|| Witness::Single { x, rho_x: rho(x) });
        }
        for y in x + 1..n {
            if x & y == x && rho(x) > rho(y) + TOLERANCE {
                r2.record(|| Witness::Chain {
                    x,
                    y,
                    rho_x: rho(x),
                    rho_y: rho(y),
                });
            }
            let lhs = rho(x) + rho(y);
            let rhs = rho(x & y) + rho(x | y);
            let pair = || Witness::Pair {
                x,
                y,
                rho_x: rho(x),
                rho_y: rho(y),
                rho_meet: rho(x & y),
                rho_join: rho(x | y),
            };
            if lhs < rhs - TOLERANCE {
                sub.record(pair);
            } else if lhs > rhs + TOLERANCE {
                sup.record(pair);
            }
        }
    }

    let submodular = sub.verdict();
    let verdicts = BTreeMap::from([
        (Axiom::R1, r1.verdict()),
        (Axiom::R2, r2.verdict()),
        (Axiom::R3, submodular),
        (Axiom::R4, r4.verdict()),
        (Axiom::R5, r5.verdict()),
        (Axiom::Submodular, submodular),
        (Axiom::Supermodular, sup.verdict()),
    ]);
    SetFunctionReport { verdicts }
}
