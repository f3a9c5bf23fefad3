use thiserror::Error;

use super::{LieAlgebra, LieError};
use crate::linalg::{Rational, SparseMatrix, Vector};

/// Failure of `ρ([e_i, e_j]) = ρ_i ρ_j - ρ_j ρ_i`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("representation axiom fails on basis pair ({i}, {j}); residual has {} nonzeros", residual.nnz())]
pub struct RepViolation {
    pub i: usize,
    pub j: usize,
    pub residual: SparseMatrix,
}

/// A finite-dimensional module: one `dim x dim` action matrix per basis
/// element of the acting algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    algebra_dim: usize,
    dim: usize,
    action: Vec<SparseMatrix>,
}

impl Representation {
    pub fn new(algebra_dim: usize, dim: usize, action: Vec<SparseMatrix>) -> Result<Self, LieError> {
        if action.len() != algebra_dim {
            return Err(LieError::AlgebraMismatch { expected: algebra_dim, got: action.len() });
        }
        if let Some(bad) = action.iter().find(|m| m.rows() != dim || m.cols() != dim) {
            return Err(LieError::BadAction(format!(
                "action matrix is {}x{}, expected {dim}x{dim}",
                bad.rows(),
                bad.cols()
            )));
        }
        Ok(Representation { algebra_dim, dim, action })
    }

    pub fn trivial(g: &LieAlgebra, k: usize) -> Self {
        Representation { algebra_dim: g.dim(), dim: k, action: vec![SparseMatrix::zeros(k, k); g.dim()] }
    }

    pub fn adjoint(g: &LieAlgebra) -> Self {
        Representation { algebra_dim: g.dim(), dim: g.dim(), action: (0..g.dim()).map(|i| g.ad(i)).collect() }
    }

    /// Contragredient module: `ρ^♯_i = -ρ_iᵀ`.
    pub fn dual(&self) -> Self {
        let minus = -Rational::one();
        Representation {
            algebra_dim: self.algebra_dim,
            dim: self.dim,
            action: self.action.iter().map(|m| m.transpose().scale(&minus)).collect(),
        }
    }

    /// `ρ_i ⊗ 1 + 1 ⊗ σ_i` on `M ⊗ N`, basis index `a * dim N + b`.
    pub fn tensor(&self, other: &Representation) -> Result<Self, LieError> {
        if self.algebra_dim != other.algebra_dim {
            return Err(LieError::AlgebraMismatch { expected: self.algebra_dim, got: other.algebra_dim });
        }
        let (im, inn) = (SparseMatrix::identity(self.dim), SparseMatrix::identity(other.dim));
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| a.kron(&inn).add(&im.kron(b)).expect("Kronecker sizes agree"))
            .collect();
        Ok(Representation { algebra_dim: self.algebra_dim, dim: self.dim * other.dim, action })
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &SparseMatrix {
        &self.action[i]
    }

    pub fn actions(&self) -> &[SparseMatrix] {
        &self.action
    }

    /// Largest number of nonzeros in any column of any action matrix.
    pub fn max_column_support(&self) -> usize {
        self.action.iter().flat_map(|m| m.columns().map(<[_]>::len)).max().unwrap_or(0)
    }

    /// Action of a general algebra element `Σ x_i e_i`.
    pub fn action_of(&self, x: &Vector) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.dim, self.dim);
        for (i, c) in x.entries() {
            out = out.add_scaled(c, &self.action[*i]).expect("same size");
        }
        out
    }

    /// Checks the commutator axiom for every basis pair `i < j`.
    pub fn validate(&self, g: &LieAlgebra) -> Result<(), LieError> {
        if g.dim() != self.algebra_dim {
            return Err(LieError::AlgebraMismatch { expected: g.dim(), got: self.algebra_dim });
        }
        for i in 0..g.dim() {
            for j in (i + 1)..g.dim() {
                let lhs = self.action_of(&g.bracket_basis(i, j));
                let ab = self.action[i].matmul(&self.action[j]).expect("square");
                let ba = self.action[j].matmul(&self.action[i]).expect("square");
                let residual = lhs.sub(&ab.sub(&ba).expect("same size")).expect("same size");
                if !residual.is_zero() {
                    return Err(RepViolation { i, j, residual }.into());
                }
            }
        }
        Ok(())
    }
}
