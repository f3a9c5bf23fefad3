//! Versioned JSON files for algebras and modules, and report emission.
//!
//! Rationals are always strings `"p"` or `"p/q"`.

mod report;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use report::{
    emit, homology_report, lemma1_report, sha256_hex, Format, HomologyReport, HomologyRow, Lemma1Report, ReportBody,
    ReportFile, TOOL_VERSION,
};

use crate::lie::{LieAlgebra, LieError, Representation};
use crate::linalg::{Rational, SparseMatrix, Vector};

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("malformed file: {0}")]
    Syntax(String),
    #[error("unsupported format_version {0:?} (expected {FORMAT_VERSION:?})")]
    Version(String),
    #[error("{context}: {message}")]
    Record { context: String, message: String },
    #[error(transparent)]
    Lie(#[from] LieError),
}

fn record_error(context: impl Into<String>, message: impl Into<String>) -> IoError {
    IoError::Record { context: context.into(), message: message.into() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketRecord {
    pub i: usize,
    pub j: usize,
    /// Label → rational string; absent labels have coefficient zero.
    pub coeffs: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub format_version: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketRecord>,
}

fn check_version(v: &str) -> Result<(), IoError> {
    if v == FORMAT_VERSION {
        Ok(())
    } else {
        Err(IoError::Version(v.to_string()))
    }
}

fn parse_rational(context: &str, s: &str) -> Result<Rational, IoError> {
    s.parse().map_err(|e| record_error(context, format!("{e}: {s:?}")))
}

fn syntax(e: serde_json::Error) -> IoError {
    IoError::Syntax(format!("line {} column {}: {e}", e.line(), e.column()))
}

impl AlgebraFile {
    pub fn from_algebra(g: &LieAlgebra) -> Self {
        let labels = g.labels();
        let brackets = g
            .structure_records()
            .map(|(i, j, v)| BracketRecord {
                i,
                j,
                coeffs: v.entries().iter().map(|(k, x)| (labels[*k].clone(), x.to_string())).collect(),
            })
            .collect();
        AlgebraFile { format_version: FORMAT_VERSION.to_string(), dim: g.dim(), basis: labels.to_vec(), brackets }
    }

    /// Builds and validates the algebra.
    pub fn to_algebra(&self) -> Result<LieAlgebra, IoError> {
        check_version(&self.format_version)?;
        if self.basis.len() != self.dim {
            return Err(LieError::LabelCount { expected: self.dim, got: self.basis.len() }.into());
        }
        let index: BTreeMap<&str, usize> = self.basis.iter().enumerate().map(|(k, l)| (l.as_str(), k)).collect();
        let mut records = Vec::with_capacity(self.brackets.len());
        for (n, rec) in self.brackets.iter().enumerate() {
            let context = format!("bracket record {n} ({}, {})", rec.i, rec.j);
            if rec.i >= rec.j || rec.j >= self.dim {
                return Err(record_error(context, format!("need i < j < dim = {}", self.dim)));
            }
            let mut entries = Vec::with_capacity(rec.coeffs.len());
            for (label, value) in &rec.coeffs {
                let k = *index.get(label.as_str()).ok_or_else(|| record_error(&context, format!("unknown label {label:?}")))?;
                entries.push((k, parse_rational(&context, value)?));
            }
            records.push((rec.i, rec.j, Vector::from_entries(self.dim, entries)));
        }
        Ok(LieAlgebra::new(self.basis.clone(), records)?)
    }
}

pub fn parse_algebra(text: &str) -> Result<LieAlgebra, IoError> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(syntax)?;
    file.to_algebra()
}

pub fn serialize_algebra(g: &LieAlgebra) -> String {
    let mut s = serde_json::to_string_pretty(&AlgebraFile::from_algebra(g)).expect("serializable");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SparseEntry {
    pub row: usize,
    pub col: usize,
    pub value: String,
}

/// Action matrix of one basis element of the algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "layout", rename_all = "lowercase", deny_unknown_fields)]
pub enum ActionBlock {
    Dense { element: String, rows: Vec<Vec<String>> },
    Sparse { element: String, entries: Vec<SparseEntry> },
}

/// Unlisted basis elements act by zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationFile {
    pub format_version: String,
    pub dim: usize,
    pub actions: Vec<ActionBlock>,
}

impl RepresentationFile {
    /// Sparse blocks for the nonzero action matrices.
    pub fn from_representation(g: &LieAlgebra, m: &Representation) -> Self {
        let actions = (0..g.dim())
            .filter(|&i| !m.action(i).is_zero())
            .map(|i| {
                let mut entries: Vec<SparseEntry> = m
                    .action(i)
                    .triplets()
                    .map(|(row, col, x)| SparseEntry { row, col, value: x.to_string() })
                    .collect();
                entries.sort_by_key(|e| (e.row, e.col));
                ActionBlock::Sparse { element: g.labels()[i].clone(), entries }
            })
            .collect();
        RepresentationFile { format_version: FORMAT_VERSION.to_string(), dim: m.dim(), actions }
    }

    /// Builds the module and checks the representation axiom over `g`.
    pub fn to_representation(&self, g: &LieAlgebra) -> Result<Representation, IoError> {
        check_version(&self.format_version)?;
        let dim = self.dim;
        let mut action: Vec<Option<SparseMatrix>> = vec![None; g.dim()];
        for (n, block) in self.actions.iter().enumerate() {
            let (element, matrix) = match block {
                ActionBlock::Dense { element, rows } => {
                    let context = format!("action block {n} ({element})");
                    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                        return Err(record_error(context, format!("dense block must be {dim}x{dim}")));
                    }
                    let mut triplets = Vec::new();
                    for (r, row) in rows.iter().enumerate() {
                        for (c, v) in row.iter().enumerate() {
                            triplets.push((r, c, parse_rational(&context, v)?));
                        }
                    }
                    (element, SparseMatrix::from_triplets(dim, dim, triplets))
                }
                ActionBlock::Sparse { element, entries } => {
                    let context = format!("action block {n} ({element})");
                    let mut triplets = Vec::with_capacity(entries.len());
                    for e in entries {
                        if e.row >= dim || e.col >= dim {
                            return Err(record_error(context, format!("entry ({}, {}) outside {dim}x{dim}", e.row, e.col)));
                        }
                        triplets.push((e.row, e.col, parse_rational(&context, &e.value)?));
                    }
                    (element, SparseMatrix::from_triplets(dim, dim, triplets))
                }
            };
            let k = g
                .labels()
                .iter()
                .position(|l| l == element)
                .ok_or_else(|| record_error(format!("action block {n}"), format!("unknown basis element {element:?}")))?;
            if action[k].replace(matrix).is_some() {
                return Err(record_error(format!("action block {n}"), format!("{element:?} given twice")));
            }
        }
        let action = action.into_iter().map(|m| m.unwrap_or_else(|| SparseMatrix::zeros(dim, dim))).collect();
        let rep = Representation::new(g.dim(), dim, action)?;
        rep.validate(g)?;
        Ok(rep)
    }
}

pub fn parse_representation(text: &str, g: &LieAlgebra) -> Result<Representation, IoError> {
    let file: RepresentationFile = serde_json::from_str(text).map_err(syntax)?;
    file.to_representation(g)
}

pub fn serialize_representation(g: &LieAlgebra, m: &Representation) -> String {
    let mut s = serde_json::to_string_pretty(&RepresentationFile::from_representation(g, m)).expect("serializable");
    s.push('\n');
    s
}
