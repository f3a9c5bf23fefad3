use std::collections::BTreeMap;
use std::fmt;
use std::ops::AddAssign;

use rayon::prelude::*;

use super::Rational;

/// Sparse vector with sorted, nonzero entries.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Vector {
    dim: usize,
    entries: Vec<(usize, Rational)>,
}

impl Vector {
    pub fn zero(dim: usize) -> Self {
        Vector { dim, entries: Vec::new() }
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        assert!(i < dim, "unit index {i} out of range {dim}");
        Vector { dim, entries: vec![(i, Rational::one())] }
    }

    /// Builds a vector from arbitrary `(index, value)` pairs, summing repeats
    /// and dropping zeros. Panics on out-of-range indices.
    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut map: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, x) in entries {
            assert!(i < dim, "index {i} out of range {dim}");
            *map.entry(i).or_default() += &x;
        }
        Vector { dim, entries: map.into_iter().filter(|(_, x)| !x.is_zero()).collect() }
    }

    /// Trusts the caller: entries sorted, unique, nonzero, in range.
    pub(crate) fn from_sorted_unchecked(dim: usize, entries: Vec<(usize, Rational)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(i, x)| *i < dim && !x.is_zero()));
        Vector { dim, entries }
    }

    pub fn from_dense(values: &[Rational]) -> Self {
        Vector {
            dim: values.len(),
            entries: values.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect(),
        }
    }

    pub fn from_i64(values: &[i64]) -> Self {
        Self::from_dense(&values.iter().map(|&x| Rational::from_integer(x)).collect::<Vec<_>>())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(usize, Rational)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Rational)> {
        self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Rational {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn to_dense(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, x) in &self.entries {
            out[*i] = x.clone();
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Vector {
        if c.is_zero() {
            return Vector::zero(self.dim);
        }
        Vector { dim: self.dim, entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect() }
    }

    /// `self + c * other`
    pub fn add_scaled(&self, c: &Rational, other: &Vector) -> Vector {
        assert_eq!(self.dim, other.dim, "vector dimension mismatch");
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c * y));
                        b.next();
                    } else {
                        let s = x + &(c * y);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        out.retain(|(_, x)| !x.is_zero());
        Vector { dim: self.dim, entries: out }
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vector[{}]{{", self.dim)?;
        for (k, (i, x)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}: {x}")?;
        }
        write!(f, "}}")
    }
}

/// Sparse matrix stored by columns.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, Rational)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { rows: n, cols: n, columns: (0..n).map(|i| vec![(i, Rational::one())]).collect() }
    }

    pub fn from_columns(rows: usize, columns: Vec<Vector>) -> Self {
        let cols = columns.len();
        let columns = columns
            .into_iter()
            .map(|c| {
                assert_eq!(c.dim, rows, "column length mismatch");
                c.entries
            })
            .collect();
        SparseMatrix { rows, cols, columns }
    }

    /// Sums duplicate positions and drops zeros. Panics on out-of-range indices.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, Rational)>) -> Self {
        let mut per_col: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); cols];
        for (r, c, x) in triplets {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
            *per_col[c].entry(r).or_default() += &x;
        }
        let columns = per_col
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, x)| !x.is_zero()).collect())
            .collect();
        SparseMatrix { rows, cols, columns }
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        Self::from_triplets(
            nrows,
            ncols,
            rows.iter().enumerate().flat_map(|(i, row)| {
                assert_eq!(row.len(), ncols, "ragged dense matrix");
                row.iter().enumerate().map(move |(j, x)| (i, j, x.clone()))
            }),
        )
    }

    /// Convenience for small integer matrices given row by row.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Rational>> =
            rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect()).collect();
        Self::from_dense(&dense)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn column(&self, j: usize) -> &[(usize, Rational)] {
        &self.columns[j]
    }

    pub fn column_vector(&self, j: usize) -> Vector {
        Vector { dim: self.rows, entries: self.columns[j].clone() }
    }

    pub fn columns(&self) -> impl Iterator<Item = &[(usize, Rational)]> {
        self.columns.iter().map(Vec::as_slice)
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        match self.columns[c].binary_search_by_key(&r, |e| e.0) {
            Ok(k) => self.columns[c][k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// Nonzero entries as `(row, col, value)`, column-major.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.columns.iter().enumerate().flat_map(|(j, col)| col.iter().map(move |(i, x)| (*i, j, x)))
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut columns: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col {
                columns[*i].push((j, x.clone()));
            }
        }
        SparseMatrix { rows: self.cols, cols: self.rows, columns }
    }

    /// Row vectors (each of length `cols`).
    pub fn row_vectors(&self) -> Vec<Vec<(usize, Rational)>> {
        self.transpose().columns
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (i, j, x) in self.triplets() {
            out[i][j] = x.clone();
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> SparseMatrix {
        if c.is_zero() {
            return SparseMatrix::zeros(self.rows, self.cols);
        }
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            columns: self.columns.iter().map(|col| col.iter().map(|(i, x)| (*i, x * c)).collect()).collect(),
        }
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix, super::LinalgError> {
        self.add_scaled(&Rational::one(), other)
    }

    pub fn sub(&self, other: &SparseMatrix) -> Result<SparseMatrix, super::LinalgError> {
        self.add_scaled(&-Rational::one(), other)
    }

    /// `self + c * other`
    pub fn add_scaled(&self, c: &Rational, other: &SparseMatrix) -> Result<SparseMatrix, super::LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(super::LinalgError::DimensionMismatch {
                op: "add",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let columns = (0..self.cols)
            .map(|j| {
                let a = Vector { dim: self.rows, entries: self.columns[j].clone() };
                let b = Vector { dim: self.rows, entries: other.columns[j].clone() };
                a.add_scaled(c, &b).entries
            })
            .collect();
        Ok(SparseMatrix { rows: self.rows, cols: self.cols, columns })
    }

    pub fn mul_vec(&self, v: &Vector) -> Result<Vector, super::LinalgError> {
        if v.dim != self.cols {
            return Err(super::LinalgError::DimensionMismatch {
                op: "mul_vec",
                left: (self.rows, self.cols),
                right: (v.dim, 1),
            });
        }
        Ok(Vector { dim: self.rows, entries: combine_columns(&self.columns, &v.entries) })
    }

    /// Exact product `self * other`.
    pub fn matmul(&self, other: &SparseMatrix) -> Result<SparseMatrix, super::LinalgError> {
        if self.cols != other.rows {
            return Err(super::LinalgError::DimensionMismatch {
                op: "matmul",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let columns = other.columns.par_iter().map(|col| combine_columns(&self.columns, col)).collect();
        Ok(SparseMatrix { rows: self.rows, cols: other.cols, columns })
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        SparseMatrix { rows: self.rows, cols: self.cols + other.cols, columns }
    }

    /// Block-diagonal `diag(self, other)`.
    pub fn direct_sum(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().map(|c| c.iter().map(|(i, x)| (i + self.rows, x.clone())).collect()));
        SparseMatrix { rows: self.rows + other.rows, cols: self.cols + other.cols, columns }
    }

    /// Kronecker product `self ⊗ other` with row/column index `i * other.dim + k`.
    pub fn kron(&self, other: &SparseMatrix) -> SparseMatrix {
        let rows = self.rows * other.rows;
        let mut columns = Vec::with_capacity(self.cols * other.cols);
        for a in &self.columns {
            for b in &other.columns {
                let mut col = Vec::with_capacity(a.len() * b.len());
                for (i, x) in a {
                    for (k, y) in b {
                        col.push((i * other.rows + k, x * y));
                    }
                }
                columns.push(col);
            }
        }
        SparseMatrix { rows, cols: self.cols * other.cols, columns }
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }
}

/// `Σ_k coeffs[k] * columns[k]`, as a sorted sparse column.
fn combine_columns(columns: &[Vec<(usize, Rational)>], coeffs: &[(usize, Rational)]) -> Vec<(usize, Rational)> {
    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
    for (k, c) in coeffs {
        for (i, x) in &columns[*k] {
            acc.entry(*i).or_default().add_assign(&(c * x));
        }
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}


impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrix {}x{} ({} nnz)", self.rows, self.cols, self.nnz())?;
        if self.rows <= 12 && self.cols <= 12 {
            for row in self.to_dense() {
                let cells: Vec<String> = row.iter().map(|x| format!("{x:>5}")).collect();
                writeln!(f, "  [{}]", cells.join(" "))?;
            }
        }
        Ok(())
    }
}
