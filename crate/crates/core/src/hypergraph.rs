//! Hypergraphs whose vertices are the edges of a directed graph, and their
//! labelled incidence / r-incidence matrices.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::EdgePropertyVector;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HypergraphError {
    #[error("hyperedge `{label}` contains unknown vertex `{vertex}`")]
    UnknownVertex { label: String, vertex: String },
    #[error("duplicate hyperedge label `{0}`")]
    DuplicateLabel(String),
    #[error("weight `{property}` has no value for vertex `{vertex}`")]
    MissingWeight { property: String, vertex: String },
    #[error("r must be finite, got {0}")]
    NonFiniteR(f64),
    #[error("matrix has {found} entries, expected {rows}x{cols}")]
    Shape { rows: usize, cols: usize, found: usize },
    #[error("matrix entry at ({row}, {col}) is not finite")]
    NonFiniteEntry { row: usize, col: usize },
    #[error("malformed csv: {0}")]
    Csv(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperedge {
    pub label: String,
    /// Sorted, deduplicated indices into the vertex order.
    pub members: Vec<usize>,
}

/// A hypergraph over a fixed, ordered vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    vertices: Arc<[String]>,
    hyperedges: Vec<Hyperedge>,
}

impl Hypergraph {
    pub fn new(vertices: Arc<[String]>) -> Self {
        Self {
            vertices,
            hyperedges: Vec::new(),
        }
    }

    /// Builds from member indices. Callers guarantee the indices are in range.
    pub(crate) fn from_indices(vertices: Arc<[String]>, hyperedges: Vec<(String, Vec<usize>)>) -> Self {
        let hyperedges = hyperedges
            .into_iter()
            .map(|(label, mut members)| {
                members.sort_unstable();
                members.dedup();
                debug_assert!(members.iter().all(|&m| m < vertices.len()));
                Hyperedge { label, members }
            })
            .collect();
        Self { vertices, hyperedges }
    }

    /// Adds a hyperedge given by vertex labels.
    pub fn add_hyperedge<I, S>(&mut self, label: impl Into<String>, members: I) -> Result<(), HypergraphError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let label = label.into();
        if self.hyperedges.iter().any(|h| h.label == label) {
            return Err(HypergraphError::DuplicateLabel(label));
        }
        let mut set = BTreeSet::new();
        for m in members {
            let m = m.as_ref();
            let index = self
                .vertices
                .iter()
                .position(|v| v == m)
                .ok_or_else(|| HypergraphError::UnknownVertex {
                    label: label.clone(),
                    vertex: m.to_owned(),
                })?;
            set.insert(index);
        }
        self.hyperedges.push(Hyperedge {
            label,
            members: set.into_iter().collect(),
        });
        Ok(())
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn hyperedges(&self) -> &[Hyperedge] {
        &self.hyperedges
    }

    /// Member labels of each hyperedge, in vertex order.
    pub fn member_labels(&self, hyperedge: &Hyperedge) -> Vec<&str> {
        hyperedge.members.iter().map(|&m| self.vertices[m].as_str()).collect()
    }

    /// Entry 1 where the row vertex belongs to the column hyperedge, else 0.
    pub fn incidence_matrix(&self) -> Matrix {
        let (rows, cols) = (self.vertices.len(), self.hyperedges.len());
        let mut entries = vec![0.0; rows * cols];
        for (j, h) in self.hyperedges.iter().enumerate() {
            for &i in &h.members {
                entries[i * cols + j] = 1.0;
            }
        }
        self.matrix(entries)
    }

    /// Entry `w(v)` where the row vertex belongs to the column hyperedge,
    /// else `r`.
    pub fn r_incidence_matrix(&self, r: f64, weight: &EdgePropertyVector) -> Result<Matrix, HypergraphError> {
        let weights = self.resolve(weight)?;
        self.r_incidence_aligned(r, &weights)
    }

    /// Same as [`Hypergraph::r_incidence_matrix`] with weights already
    /// aligned to the vertex order.
    pub(crate) fn r_incidence_aligned(&self, r: f64, weights: &[f64]) -> Result<Matrix, HypergraphError> {
        if !r.is_finite() {
            return Err(HypergraphError::NonFiniteR(r));
        }
        let (rows, cols) = (self.vertices.len(), self.hyperedges.len());
        let mut entries = vec![r; rows * cols];
        for (j, h) in self.hyperedges.iter().enumerate() {
            for &i in &h.members {
                entries[i * cols + j] = weights[i];
            }
        }
        Ok(self.matrix(entries))
    }

    fn resolve(&self, weight: &EdgePropertyVector) -> Result<Vec<f64>, HypergraphError> {
        self.vertices
            .iter()
            .map(|v| {
                weight.get(v).ok_or_else(|| HypergraphError::MissingWeight {
                    property: weight.name().to_owned(),
                    vertex: v.clone(),
                })
            })
            .collect()
    }

    fn matrix(&self, entries: Vec<f64>) -> Matrix {
        Matrix {
            row_labels: self.vertices.to_vec(),
            column_labels: self.hyperedges.iter().map(|h| h.label.clone()).collect(),
            entries,
        }
    }
}

/// A hypergraph paired with a weight on every vertex.
#[derive(Debug, Clone)]
pub struct VertexWeightedHypergraph {
    base: Hypergraph,
    weight: EdgePropertyVector,
}

impl VertexWeightedHypergraph {
    pub fn new(base: Hypergraph, weight: EdgePropertyVector) -> Result<Self, HypergraphError> {
        base.resolve(&weight)?;
        Ok(Self { base, weight })
    }

    pub fn base(&self) -> &Hypergraph {
        &self.base
    }

    pub fn weight(&self) -> &EdgePropertyVector {
        &self.weight
    }

    pub fn r_incidence_matrix(&self, r: f64) -> Result<Matrix, HypergraphError> {
        self.base.r_incidence_matrix(r, &self.weight)
    }
}

/// `R(r, w, H)` as a free function.
pub fn r_incidence_matrix(r: f64, weight: &EdgePropertyVector, h: &Hypergraph) -> Result<Matrix, HypergraphError> {
    h.r_incidence_matrix(r, weight)
}

pub fn incidence_matrix(h: &Hypergraph) -> Matrix {
    h.incidence_matrix()
}

/// Dense row-major matrix with labelled rows and columns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixDocument", into = "MatrixDocument")]
pub struct Matrix {
    row_labels: Vec<String>,
    column_labels: Vec<String>,
    entries: Vec<f64>,
}

impl Matrix {
    pub fn new(
        row_labels: Vec<String>,
        column_labels: Vec<String>,
        entries: Vec<f64>,
    ) -> Result<Self, HypergraphError> {
        let (rows, cols) = (row_labels.len(), column_labels.len());
        if entries.len() != rows * cols {
            return Err(HypergraphError::Shape {
                rows,
                cols,
                found: entries.len(),
            });
        }
        if let Some(k) = entries.iter().position(|x| !x.is_finite()) {
            return Err(HypergraphError::NonFiniteEntry {
                row: k / cols,
                col: k % cols,
            });
        }
        Ok(Self {
            row_labels,
            column_labels,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn cols(&self) -> usize {
        self.column_labels.len()
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn column_labels(&self) -> &[String] {
        &self.column_labels
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.cols() + col]
    }

    /// Looks an entry up by its row and column labels.
    pub fn at(&self, row: &str, col: &str) -> Option<f64> {
        let i = self.row_labels.iter().position(|r| r == row)?;
        let j = self.column_labels.iter().position(|c| c == col)?;
        Some(self.get(i, j))
    }

    pub fn column(&self, col: usize) -> impl Iterator<Item = f64> + '_ {
        (0..self.rows()).map(move |i| self.get(i, col))
    }

    pub fn row(&self, row: usize) -> &[f64] {
        let cols = self.cols();
        &self.entries[row * cols..(row + 1) * cols]
    }

    /// CSV with a header row `edge,<columns..>` and one record per row.
    /// Values use the shortest representation that parses back to the same
    /// float; labels are quoted when needed.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let header = std::iter::once("edge").chain(self.column_labels.iter().map(String::as_str));
        w.write_record(header).expect("write to memory");
        for (i, label) in self.row_labels.iter().enumerate() {
            let values = self.row(i).iter().map(f64::to_string);
            w.write_record(std::iter::once(label.clone()).chain(values))
                .expect("write to memory");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv output is utf-8")
    }

    pub fn from_csv(text: &str) -> Result<Self, HypergraphError> {
        let mut r = csv::ReaderBuilder::new()
            .has_headers(false)
            .from_reader(text.as_bytes());
        let mut records = r.records();
        let header = records
            .next()
            .ok_or_else(|| HypergraphError::Csv("empty input".into()))?
            .map_err(|e| HypergraphError::Csv(e.to_string()))?;
        let column_labels: Vec<String> = header.iter().skip(1).map(str::to_owned).collect();
        let mut row_labels = Vec::new();
        let mut entries = Vec::new();
        for (n, record) in records.enumerate() {
            let record = record.map_err(|e| HypergraphError::Csv(e.to_string()))?;
            row_labels.push(record.get(0).unwrap_or_default().to_owned());
            for f in record.iter().skip(1) {
                let x: f64 = f
                    .parse()
                    .map_err(|_| HypergraphError::Csv(format!("line {}: bad number `{f}`", n + 2)))?;
                entries.push(x);
            }
        }
        Self::new(row_labels, column_labels, entries)
    }

    /// Membership predicate recovered from a matrix with strictly positive
    /// member weights.
    pub fn support(&self) -> Vec<Vec<usize>> {
        (0..self.cols())
            .map(|j| (0..self.rows()).filter(|&i| self.get(i, j) != 0.0).collect())
            .collect()
    }

    /// Column order permuted; `order[k]` is the source column of column `k`.
    pub fn permute_columns(&self, order: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for i in 0..self.rows() {
            entries.extend(order.iter().map(|&j| self.get(i, j)));
        }
        Self {
            row_labels: self.row_labels.clone(),
            column_labels: order.iter().map(|&j| self.column_labels[j].clone()).collect(),
            entries,
        }
    }
}

impl fmt::Display for Matrix {
    /// Aligned text table, rows labelled by edge id.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.rows())
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        let label_width = self.row_labels.iter().map(String::len).chain([4]).max().unwrap_or(4);
        let widths: Vec<usize> = (0..self.cols())
            .map(|j| {
                cells
                    .iter()
                    .map(|r| r[j].len())
                    .chain([self.column_labels[j].len()])
                    .max()
                    .unwrap_or(1)
            })
            .collect();
        write!(f, "{:<label_width$}", "edge")?;
        for (c, w) in self.column_labels.iter().zip(&widths) {
            write!(f, "  {c:>w$}")?;
        }
        writeln!(f)?;
        for (label, row) in self.row_labels.iter().zip(&cells) {
            write!(f, "{label:<label_width$}")?;
            for (x, w) in row.iter().zip(&widths) {
                write!(f, "  {x:>w$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixDocument {
    rows: Vec<String>,
    columns: Vec<String>,
    entries: Vec<Vec<f64>>,
}

impl From<Matrix> for MatrixDocument {
    fn from(m: Matrix) -> Self {
        let entries = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
        Self {
            rows: m.row_labels,
            columns: m.column_labels,
            entries,
        }
    }
}

impl TryFrom<MatrixDocument> for Matrix {
    type Error = HypergraphError;

    fn try_from(doc: MatrixDocument) -> Result<Self, Self::Error> {
        let cols = doc.columns.len();
        if let Some(bad) = doc.entries.iter().find(|r| r.len() != cols) {
            return Err(HypergraphError::Shape {
                rows: doc.rows.len(),
                cols,
                found: bad.len(),
            });
        }
        let entries = doc.entries.into_iter().flatten().collect();
        Matrix::new(doc.rows, doc.columns, entries)
    }
}
