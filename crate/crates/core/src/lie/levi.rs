//! Split extensions `0 → r → g → s → 0`.
//!
//! A [`LeviData`] fixes a basis of `g` in which `e_0 .. e_{k-1}` span the
//! radical `r` and the remaining vectors span a section (a subalgebra lifting
//! `s = g/r`). Ideal inclusion and quotient projection are then coordinate
//! maps.

use thiserror::Error;

use super::structure::{is_ideal, span_is_solvable};
use super::{standard_basis, LieAlgebra, LieError, Representation};
use crate::linalg::{self, Rational, SparseMatrix, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LeviError {
    #[error("ideal dimension {ideal_dim} exceeds algebra dimension {dim}")]
    IdealTooLarge { ideal_dim: usize, dim: usize },
    #[error("radical span is not an ideal: [e_{i}, e_{j}] leaves it")]
    NotIdeal { i: usize, j: usize },
    #[error("radical span is not solvable")]
    NotSolvable,
    #[error("section span is not closed under the bracket: [e_{i}, e_{j}] leaves it")]
    SectionNotClosed { i: usize, j: usize },
    #[error("quotient is not semisimple (Killing form of rank {rank} on dimension {dim})")]
    QuotientNotSemisimple { rank: usize, dim: usize },
    #[error("radical and section do not together form a basis of g")]
    NotComplementary,
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// `r ⋊ s`: basis is the basis of `r` followed by lifts of the basis of `s`;
/// `[x, v] = action(x)(v)` for `x` in `s`, `v` in `r`.
pub fn semidirect(s: &LieAlgebra, r: &LieAlgebra, action: &Representation) -> Result<LieAlgebra, LieError> {
    if action.algebra_dim() != s.dim() {
        return Err(LieError::AlgebraMismatch { expected: s.dim(), got: action.algebra_dim() });
    }
    if action.dim() != r.dim() {
        return Err(LieError::AlgebraMismatch { expected: r.dim(), got: action.dim() });
    }
    action.validate(s)?;
    let (k, m) = (r.dim(), s.dim());
    let dim = k + m;
    // Each action operator must be a derivation of r.
    for x in 0..m {
        let d = action.action(x);
        for i in 0..k {
            for j in (i + 1)..k {
                let lhs = d.mul_vec(&r.bracket_basis(i, j)).expect("square");
                let rhs = r
                    .bracket(&d.column_vector(i), &Vector::unit(k, j))
                    .add_scaled(&Rational::one(), &r.bracket(&Vector::unit(k, i), &d.column_vector(j)));
                let residual = lhs.add_scaled(&-Rational::one(), &rhs);
                if !residual.is_zero() {
                    return Err(LieError::NotDerivation { generator: x, i, j, residual });
                }
            }
        }
    }
    let shift = |v: &[(usize, Rational)], by: usize| -> Vector {
        Vector::from_entries(dim, v.iter().map(|(i, x)| (i + by, x.clone())))
    };
    let mut records = Vec::new();
    for (i, j, v) in r.structure_records() {
        records.push((i, j, shift(v.entries(), 0)));
    }
    for a in 0..k {
        for x in 0..m {
            // [e_a, lift x] = -action(x)(e_a)
            let col = action.action(x).column(a);
            if !col.is_empty() {
                let v = shift(col, 0).scale(&-Rational::one());
                records.push((a, k + x, v));
            }
        }
    }
    for (i, j, v) in s.structure_records() {
        records.push((k + i, k + j, shift(v.entries(), k)));
    }
    let mut labels: Vec<String> = r.labels().to_vec();
    for l in s.labels() {
        let mut l = l.clone();
        while labels.contains(&l) {
            l.push('\'');
        }
        labels.push(l);
    }
    LieAlgebra::new(labels, records)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeviData {
    total: LieAlgebra,
    ideal_dim: usize,
    radical: LieAlgebra,
    quotient: LieAlgebra,
    section_action: Representation,
}

impl LeviData {
    /// Uses `e_0 .. e_{ideal_dim-1}` as the radical and the rest as the section.
    pub fn new(total: LieAlgebra, ideal_dim: usize) -> Result<Self, LeviError> {
        let dim = total.dim();
        if ideal_dim > dim {
            return Err(LeviError::IdealTooLarge { ideal_dim, dim });
        }
        let k = ideal_dim;
        for i in 0..dim {
            for j in 0..k {
                if total.bracket_entries(i, j).iter().any(|(c, _)| *c >= k) {
                    return Err(LeviError::NotIdeal { i, j });
                }
            }
        }
        for i in k..dim {
            for j in k..dim {
                if total.bracket_entries(i, j).iter().any(|(c, _)| *c < k) {
                    return Err(LeviError::SectionNotClosed { i, j });
                }
            }
        }
        let labels = total.labels();
        let radical = total.subalgebra(&coordinate_span(dim, 0..k), labels[..k].to_vec())?;
        if !radical.is_solvable() {
            return Err(LeviError::NotSolvable);
        }
        let quotient = total.subalgebra(&coordinate_span(dim, k..dim), labels[k..].to_vec())?;
        let kr = linalg::rank(&quotient.killing_form());
        if kr != quotient.dim() {
            return Err(LeviError::QuotientNotSemisimple { rank: kr, dim: quotient.dim() });
        }
        let section_action = Representation::new(
            dim - k,
            k,
            (k..dim)
                .map(|x| {
                    SparseMatrix::from_columns(k, (0..k).map(|a| truncate(&total.bracket_basis(x, a), 0..k)).collect())
                })
                .collect(),
        )?;
        Ok(LeviData { total, ideal_dim, radical, quotient, section_action })
    }

    /// Builds Levi data from an arbitrary radical basis and section basis
    /// (vectors in the coordinates of `g`), by changing to the adapted basis.
    pub fn from_subspaces(g: &LieAlgebra, radical: &[Vector], section: &[Vector]) -> Result<Self, LeviError> {
        if radical.len() + section.len() != g.dim() {
            return Err(LeviError::NotComplementary);
        }
        if !is_ideal(g, radical) {
            return Err(first_ideal_failure(g, radical));
        }
        if !span_is_solvable(g, radical) {
            return Err(LeviError::NotSolvable);
        }
        let basis: Vec<Vector> = radical.iter().chain(section).cloned().collect();
        if linalg::rank(&SparseMatrix::from_columns(g.dim(), basis.clone())) != g.dim() {
            return Err(LeviError::NotComplementary);
        }
        let labels = adapted_labels(g, radical, section);
        let adapted = g.change_basis(&basis, labels)?;
        Self::new(adapted, radical.len())
    }

    pub fn total(&self) -> &LieAlgebra {
        &self.total
    }

    pub fn ideal_dim(&self) -> usize {
        self.ideal_dim
    }

    pub fn quotient_dim(&self) -> usize {
        self.total.dim() - self.ideal_dim
    }

    pub fn radical(&self) -> &LieAlgebra {
        &self.radical
    }

    pub fn quotient(&self) -> &LieAlgebra {
        &self.quotient
    }

    /// Action of `s` on `r` through the section.
    pub fn section_action(&self) -> &Representation {
        &self.section_action
    }

    /// `r` as a `g`-module: `ρ(e_i)(v) = [e_i, v]`.
    pub fn radical_module(&self) -> Representation {
        let (dim, k) = (self.total.dim(), self.ideal_dim);
        let action = (0..dim)
            .map(|i| SparseMatrix::from_columns(k, (0..k).map(|a| truncate(&self.total.bracket_basis(i, a), 0..k)).collect()))
            .collect();
        Representation::new(dim, k, action).expect("shapes are consistent")
    }

    /// `s = g/r` as a `g`-module: `ρ(e_i)(x̄) = [e_i, x] mod r`.
    pub fn quotient_module(&self) -> Representation {
        let (dim, k) = (self.total.dim(), self.ideal_dim);
        let m = dim - k;
        let action = (0..dim)
            .map(|i| {
                SparseMatrix::from_columns(m, (k..dim).map(|x| truncate(&self.total.bracket_basis(i, x), k..dim)).collect())
            })
            .collect();
        Representation::new(dim, m, action).expect("shapes are consistent")
    }

    /// Inclusion `r → g` as a `dim g x dim r` matrix.
    pub fn inclusion(&self) -> SparseMatrix {
        let dim = self.total.dim();
        SparseMatrix::from_columns(dim, (0..self.ideal_dim).map(|a| Vector::unit(dim, a)).collect())
    }

    /// Projection `g → s` as a `dim s x dim g` matrix.
    pub fn projection(&self) -> SparseMatrix {
        let (dim, k) = (self.total.dim(), self.ideal_dim);
        SparseMatrix::from_triplets(dim - k, dim, (k..dim).map(|x| (x - k, x, Rational::one())))
    }

    /// Pulls a `g`-module back to `s` along the section.
    pub fn restrict_rep_via_section(&self, m: &Representation) -> Result<Representation, LeviError> {
        if m.algebra_dim() != self.total.dim() {
            return Err(LieError::AlgebraMismatch { expected: self.total.dim(), got: m.algebra_dim() }.into());
        }
        let action = m.actions()[self.ideal_dim..].to_vec();
        let out = Representation::new(self.quotient_dim(), m.dim(), action)?;
        out.validate(&self.quotient)?;
        Ok(out)
    }
}

fn coordinate_span(dim: usize, range: std::ops::Range<usize>) -> Vec<Vector> {
    standard_basis(dim)[range].to_vec()
}

/// Keeps the coordinates in `range`, re-indexed from zero.
fn truncate(v: &Vector, range: std::ops::Range<usize>) -> Vector {
    let start = range.start;
    let len = range.len();
    Vector::from_entries(
        len,
        v.entries().iter().filter(|(i, _)| range.contains(i)).map(|(i, x)| (i - start, x.clone())),
    )
}

fn first_ideal_failure(g: &LieAlgebra, span: &[Vector]) -> LeviError {
    for i in 0..g.dim() {
        for (j, v) in span.iter().enumerate() {
            if !is_ideal_pair(g, span, i, v) {
                return LeviError::NotIdeal { i, j };
            }
        }
    }
    LeviError::NotIdeal { i: 0, j: 0 }
}

fn is_ideal_pair(g: &LieAlgebra, span: &[Vector], i: usize, v: &Vector) -> bool {
    let dim = g.dim();
    let b = g.bracket(&Vector::unit(dim, i), v);
    b.is_zero() || {
        let m = SparseMatrix::from_columns(dim, span.to_vec());
        linalg::solve(&m, &b).expect("dimensions agree").is_some()
    }
}

fn adapted_labels(g: &LieAlgebra, radical: &[Vector], section: &[Vector]) -> Vec<String> {
    let mut labels: Vec<String> = Vec::new();
    let pick = |v: &Vector, fallback: String| -> String {
        match v.entries() {
            [(i, x)] if x.is_one() => g.labels()[*i].clone(),
            _ => fallback,
        }
    };
    for (a, v) in radical.iter().enumerate() {
        labels.push(pick(v, format!("r{a}")));
    }
    for (a, v) in section.iter().enumerate() {
        labels.push(pick(v, format!("s{a}")));
    }
    // Disambiguate collisions between picked and generated names.
    for i in 0..labels.len() {
        while labels[..i].contains(&labels[i]) {
            labels[i].push('\'');
        }
    }
    labels
}
