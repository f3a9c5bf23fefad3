//! Lie algebras given by structure constants.
//!
//! Only brackets `[e_i, e_j]` with `i < j` are ever supplied; the full table
//! is filled in by antisymmetry, so `[e_j, e_i] = -[e_i, e_j]` and
//! `[e_i, e_i] = 0` hold by construction.

mod levi;
mod rep;
mod structure;

pub use levi::{semidirect, LeviData, LeviError};
pub use rep::{RepViolation, Representation};
pub use structure::derived_series;

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::linalg::{self, Rational, SparseMatrix, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("bracket record ({i}, {j}) must have i < j < dim = {dim}")]
    BadIndexPair { i: usize, j: usize, dim: usize },
    #[error("bracket [{i}, {j}] given more than once")]
    DuplicateBracket { i: usize, j: usize },
    #[error("bracket [{i}, {j}] has coefficient vector of length {got}, expected {dim}")]
    BracketLength { i: usize, j: usize, got: usize, dim: usize },
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("expected {expected} basis labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error(transparent)]
    Jacobi(#[from] JacobiViolation),
    #[error("vectors do not form a basis: {0}")]
    NotABasis(String),
    #[error("s-action is not by derivations: generator {generator} on pair ({i}, {j}), residual {residual:?}")]
    NotDerivation { generator: usize, i: usize, j: usize, residual: Vector },
    #[error("representation of a {got}-dimensional algebra used where dimension {expected} was required")]
    AlgebraMismatch { expected: usize, got: usize },
    #[error("malformed action matrices: {0}")]
    BadAction(String),
    #[error(transparent)]
    Rep(#[from] RepViolation),
}

/// First basis triple on which the Jacobi identity fails.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("Jacobi identity fails on basis triple ({i}, {j}, {k}); residual {residual:?}")]
pub struct JacobiViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub residual: Vector,
}

/// Names of the built-in algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardAlgebra {
    Abelian(usize),
    /// Basis `(e, h, f)` with `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
    Sl2,
    /// Basis `(x, y, z)` with `[x,y] = z`.
    Heisenberg,
    /// Basis `(a, b)` with `[a,b] = b`.
    TwoDimNonabelian,
}

#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    /// `table[i * dim + j]` holds the sorted nonzero entries of `[e_i, e_j]`.
    table: Vec<Vec<(usize, Rational)>>,
}

impl LieAlgebra {
    /// Builds an algebra from `(i, j, [e_i, e_j])` records with `i < j`.
    /// Unlisted pairs bracket to zero. Jacobi is not checked here; see
    /// [`validate`](Self::validate).
    pub fn from_brackets(
        labels: Vec<String>,
        brackets: impl IntoIterator<Item = (usize, usize, Vector)>,
    ) -> Result<Self, LieError> {
        let dim = labels.len();
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(LieError::DuplicateLabel(l.clone()));
            }
        }
        let mut table = vec![Vec::new(); dim * dim];
        let mut given = HashSet::new();
        for (i, j, v) in brackets {
            if i >= j || j >= dim {
                return Err(LieError::BadIndexPair { i, j, dim });
            }
            if v.dim() != dim {
                return Err(LieError::BracketLength { i, j, got: v.dim(), dim });
            }
            if !given.insert((i, j)) {
                return Err(LieError::DuplicateBracket { i, j });
            }
            table[j * dim + i] = v.entries().iter().map(|(k, x)| (*k, -x)).collect();
            table[i * dim + j] = v.into_entries();
        }
        Ok(LieAlgebra { labels, table })
    }

    /// Same as [`from_brackets`](Self::from_brackets) followed by validation.
    pub fn new(labels: Vec<String>, brackets: impl IntoIterator<Item = (usize, usize, Vector)>) -> Result<Self, LieError> {
        let g = Self::from_brackets(labels, brackets)?;
        g.validate()?;
        Ok(g)
    }

    pub fn standard(which: StandardAlgebra) -> Self {
        match which {
            StandardAlgebra::Abelian(n) => Self::abelian(n),
            StandardAlgebra::Sl2 => Self::sl2(),
            StandardAlgebra::Heisenberg => Self::heisenberg(),
            StandardAlgebra::TwoDimNonabelian => Self::two_dim_nonabelian(),
        }
    }

    pub fn abelian(n: usize) -> Self {
        Self::from_brackets((0..n).map(|i| format!("a{i}")).collect(), []).expect("abelian algebra")
    }

    pub fn sl2() -> Self {
        let labels = ["e", "h", "f"].map(String::from).to_vec();
        // [e,h] = -2e, [e,f] = h, [h,f] = -2f
        let brackets = [
            (0, 1, Vector::from_i64(&[-2, 0, 0])),
            (0, 2, Vector::from_i64(&[0, 1, 0])),
            (1, 2, Vector::from_i64(&[0, 0, -2])),
        ];
        Self::from_brackets(labels, brackets).expect("sl2")
    }

    pub fn heisenberg() -> Self {
        let labels = ["x", "y", "z"].map(String::from).to_vec();
        Self::from_brackets(labels, [(0, 1, Vector::from_i64(&[0, 0, 1]))]).expect("heisenberg")
    }

    pub fn two_dim_nonabelian() -> Self {
        let labels = ["a", "b"].map(String::from).to_vec();
        Self::from_brackets(labels, [(0, 1, Vector::from_i64(&[0, 1]))]).expect("two_dim_nonabelian")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, LieError> {
        if labels.len() != self.dim() {
            return Err(LieError::LabelCount { expected: self.dim(), got: labels.len() });
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(LieError::DuplicateLabel(l.clone()));
            }
        }
        self.labels = labels;
        Ok(self)
    }

    /// Sorted nonzero entries of `[e_i, e_j]`.
    pub fn bracket_entries(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.table[i * self.dim() + j]
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        Vector::from_sorted_unchecked(self.dim(), self.table[i * self.dim() + j].clone())
    }

    /// Bilinear extension of the bracket.
    pub fn bracket(&self, u: &Vector, v: &Vector) -> Vector {
        let dim = self.dim();
        let mut terms = Vec::new();
        for (i, x) in u.entries() {
            for (j, y) in v.entries() {
                let c = x * y;
                for (k, z) in self.bracket_entries(*i, *j) {
                    terms.push((*k, &c * z));
                }
            }
        }
        Vector::from_entries(dim, terms)
    }

    /// Nonzero brackets `(i, j, [e_i, e_j])` with `i < j`, in lexicographic order.
    pub fn structure_records(&self) -> impl Iterator<Item = (usize, usize, Vector)> + '_ {
        let dim = self.dim();
        (0..dim).flat_map(move |i| {
            ((i + 1)..dim).filter_map(move |j| {
                let e = self.bracket_entries(i, j);
                (!e.is_empty()).then(|| (i, j, Vector::from_sorted_unchecked(dim, e.to_vec())))
            })
        })
    }

    /// Largest number of nonzero coefficients in any basis bracket.
    pub fn max_bracket_support(&self) -> usize {
        self.table.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Checks the Jacobi identity on every basis triple `i < j < k`; triples
    /// with a repeated index are implied by antisymmetry.
    pub fn validate(&self) -> Result<(), JacobiViolation> {
        let dim = self.dim();
        for i in 0..dim {
            for j in (i + 1)..dim {
                for k in (j + 1)..dim {
                    let (ei, ej, ek) = (Vector::unit(dim, i), Vector::unit(dim, j), Vector::unit(dim, k));
                    let a = self.bracket(&self.bracket(&ei, &ej), &ek);
                    let b = self.bracket(&self.bracket(&ej, &ek), &ei);
                    let c = self.bracket(&self.bracket(&ek, &ei), &ej);
                    let residual = a.add_scaled(&Rational::one(), &b).add_scaled(&Rational::one(), &c);
                    if !residual.is_zero() {
                        return Err(JacobiViolation { i, j, k, residual });
                    }
                }
            }
        }
        Ok(())
    }

    /// `ad e_i` as a `dim x dim` matrix; column `j` is `[e_i, e_j]`.
    pub fn ad(&self, i: usize) -> SparseMatrix {
        let dim = self.dim();
        SparseMatrix::from_columns(dim, (0..dim).map(|j| self.bracket_basis(i, j)).collect())
    }

    /// Rewrites the algebra in a new basis (columns in old coordinates).
    pub fn change_basis(&self, basis: &[Vector], labels: Vec<String>) -> Result<LieAlgebra, LieError> {
        let dim = self.dim();
        if basis.len() != dim || basis.iter().any(|b| b.dim() != dim) {
            return Err(LieError::NotABasis(format!("need {dim} vectors of length {dim}")));
        }
        let m = SparseMatrix::from_columns(dim, basis.to_vec());
        if linalg::rank(&m) != dim {
            return Err(LieError::NotABasis("vectors are linearly dependent".into()));
        }
        let mut records = Vec::new();
        for i in 0..dim {
            for j in (i + 1)..dim {
                let b = self.bracket(&basis[i], &basis[j]);
                if b.is_zero() {
                    continue;
                }
                let coords = linalg::solve(&m, &b)
                    .expect("dimensions agree")
                    .expect("full-rank basis spans every bracket");
                records.push((i, j, coords));
            }
        }
        Self::from_brackets(labels, records)
    }

    /// Structure constants of a subalgebra spanned by `basis`, when closed.
    pub fn subalgebra(&self, basis: &[Vector], labels: Vec<String>) -> Result<LieAlgebra, LieError> {
        let dim = self.dim();
        let k = basis.len();
        let m = SparseMatrix::from_columns(dim, basis.to_vec());
        if linalg::rank(&m) != k {
            return Err(LieError::NotABasis("subalgebra generators are dependent".into()));
        }
        let mut records = Vec::new();
        for i in 0..k {
            for j in (i + 1)..k {
                let b = self.bracket(&basis[i], &basis[j]);
                if b.is_zero() {
                    continue;
                }
                let coords = linalg::solve(&m, &b)
                    .expect("dimensions agree")
                    .ok_or_else(|| LieError::NotABasis(format!("span not closed under bracket ({i}, {j})")))?;
                records.push((i, j, coords));
            }
        }
        Self::from_brackets(labels, records)
    }

    pub fn killing_form(&self) -> SparseMatrix {
        structure::killing_form(self)
    }

    /// Killing form evaluated on two vectors.
    pub fn killing(&self, u: &Vector, v: &Vector) -> Rational {
        let k = self.killing_form();
        let kv = k.mul_vec(v).expect("vector length matches algebra");
        u.entries().iter().map(|(i, x)| x * &kv.get(*i)).sum()
    }

    /// Basis of `[g, g]`.
    pub fn derived_algebra(&self) -> Vec<Vector> {
        structure::bracket_span(self, &standard_basis(self.dim()))
    }

    pub fn derived_series(&self) -> Vec<usize> {
        derived_series(self)
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().copied() == Some(0)
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_algebra().len() == self.dim()
    }

    /// Solvable radical as the Killing-orthogonal complement of `[g, g]`.
    pub fn radical(&self) -> Vec<Vector> {
        structure::radical(self)
    }
}

pub(crate) fn standard_basis(dim: usize) -> Vec<Vector> {
    (0..dim).map(|i| Vector::unit(dim, i)).collect()
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra({})", self.labels.join(","))?;
        for (i, j, v) in self.structure_records() {
            write!(f, " [{},{}]=", self.labels[i], self.labels[j])?;
            let terms: Vec<String> = v.entries().iter().map(|(k, x)| format!("{x}*{}", self.labels[*k])).collect();
            write!(f, "{}", terms.join("+"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_algebras_validate() {
        for n in 0..5 {
            assert!(LieAlgebra::abelian(n).validate().is_ok());
        }
        assert!(LieAlgebra::sl2().validate().is_ok());
        assert!(LieAlgebra::heisenberg().validate().is_ok());
        assert!(LieAlgebra::two_dim_nonabelian().validate().is_ok());
    }

    #[test]
    fn sl2_conventions() {
        let g = LieAlgebra::sl2();
        // [h, e] = 2e, [h, f] = -2f, [e, f] = h
        assert_eq!(g.bracket_basis(1, 0), Vector::from_i64(&[2, 0, 0]));
        assert_eq!(g.bracket_basis(1, 2), Vector::from_i64(&[0, 0, -2]));
        assert_eq!(g.bracket_basis(0, 2), Vector::from_i64(&[0, 1, 0]));
        assert!(g.bracket_basis(1, 1).is_zero());
    }

    fn sl2_variant(ef: [i64; 3], hf: [i64; 3]) -> LieAlgebra {
        let labels = ["e", "h", "f"].map(String::from).to_vec();
        LieAlgebra::from_brackets(
            labels,
            [(0, 1, Vector::from_i64(&[-2, 0, 0])), (0, 2, Vector::from_i64(&ef)), (1, 2, Vector::from_i64(&hf))],
        )
        .unwrap()
    }

    #[test]
    fn rescaled_sl2_is_still_lie() {
        // [e,f] = 2h is sl2 with e rescaled, so Jacobi holds.
        assert!(sl2_variant([0, 2, 0], [0, 0, -2]).validate().is_ok());
    }

    #[test]
    fn corrupted_sl2_reports_triple() {
        // [h,f] = -3f: ([e,h],f) + ([h,f],e) + ([f,e],h) = -2h + 3h + 0 = h
        let err = sl2_variant([0, 1, 0], [0, 0, -3]).validate().unwrap_err();
        assert_eq!((err.i, err.j, err.k), (0, 1, 2));
        assert_eq!(err.residual, Vector::from_i64(&[0, 1, 0]));
    }

    #[test]
    fn rejects_bad_records() {
        let l = || ["a", "b"].map(String::from).to_vec();
        assert!(matches!(
            LieAlgebra::from_brackets(l(), [(1, 0, Vector::from_i64(&[1, 0]))]),
            Err(LieError::BadIndexPair { .. })
        ));
        assert!(matches!(
            LieAlgebra::from_brackets(l(), [(0, 1, Vector::from_i64(&[1, 0])), (0, 1, Vector::from_i64(&[1, 0]))]),
            Err(LieError::DuplicateBracket { .. })
        ));
        assert!(matches!(
            LieAlgebra::from_brackets(vec!["a".into(), "a".into()], []),
            Err(LieError::DuplicateLabel(_))
        ));
    }

    #[test]
    fn change_basis_round_trip() {
        let g = LieAlgebra::sl2();
        let basis = vec![Vector::from_i64(&[0, 0, 1]), Vector::from_i64(&[0, 1, 0]), Vector::from_i64(&[1, 0, 0])];
        let g2 = g.change_basis(&basis, ["f", "h", "e"].map(String::from).to_vec()).unwrap();
        assert!(g2.validate().is_ok());
        // [f, h] = 2f in the new basis (f is index 0)
        assert_eq!(g2.bracket_basis(0, 1), Vector::from_i64(&[2, 0, 0]));
        assert!(g.change_basis(&basis[..2], vec!["x".into(), "y".into()]).is_err());
    }
}
