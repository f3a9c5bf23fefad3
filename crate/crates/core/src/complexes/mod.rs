//! Chevalley–Eilenberg and Loday chain complexes with coefficients.

mod boundary;
mod indexing;

use std::sync::OnceLock;

use rayon::prelude::*;
use thiserror::Error;

pub use boundary::{ce_boundary, exterior_action, loday_boundary, quotient_chain_map};
pub use indexing::{ExteriorIndexer, TensorIndexer};

use crate::lie::{LieAlgebra, LieError, Representation};
use crate::linalg::{self, RankMethod, SparseMatrix};

/// Default cap on the predicted number of stored nonzeros in one complex.
pub const DEFAULT_BUDGET: u64 = 200_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComplexKind {
    /// `M ⊗ Λ^* g`
    CE,
    /// `M ⊗ g^⊗*`
    Loday,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    pub rank_method: RankMethod,
    /// Maximum predicted nonzeros over all boundary matrices of one complex.
    pub budget: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config { rank_method: RankMethod::Exact, budget: DEFAULT_BUDGET }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("predicted {predicted} nonzeros through degree {degree} exceeds the budget of {budget}")]
    BudgetExceeded { degree: usize, predicted: u64, budget: u64 },
    #[error("boundary composite d_{} ∘ d_{} is nonzero", degree - 1, degree)]
    CompositionNonzero { degree: usize },
    #[error("degree {degree} is outside the materialized range 0..={max_degree}")]
    DegreeOutOfRange { degree: usize, max_degree: usize },
    #[error("a Loday complex needs max_degree at least 1")]
    EmptyLoday,
}

/// Boundary matrices `d_0 .. d_max`, with `d_0` the zero map to the zero space.
#[derive(Debug)]
pub struct ChainComplex {
    kind: ComplexKind,
    algebra: LieAlgebra,
    coefficients: Representation,
    boundaries: Vec<SparseMatrix>,
    rank_method: RankMethod,
    ranks: Vec<OnceLock<usize>>,
}

/// `dim M · dim^n` or `dim M · C(dim, n)`, or `None` on overflow.
fn chain_dim(kind: ComplexKind, algebra_dim: usize, coeff_dim: usize, n: usize) -> Option<u64> {
    let base = match kind {
        ComplexKind::Loday => (algebra_dim as u64).checked_pow(u32::try_from(n).ok()?)?,
        ComplexKind::CE => {
            if n > algebra_dim {
                0
            } else {
                ExteriorIndexer::new(algebra_dim, n).len() as u64
            }
        }
    };
    base.checked_mul(coeff_dim as u64)
}

/// Upper bound on the nonzeros of `d_n`: each column has at most
/// `n(n-1)/2` bracket terms and `n` coefficient terms.
pub fn predicted_nnz(kind: ComplexKind, g: &LieAlgebra, m: &Representation, n: usize) -> Option<u64> {
    let cols = chain_dim(kind, g.dim(), m.dim(), n)?;
    let n64 = n as u64;
    let per_col = (n64 * n64.saturating_sub(1) / 2)
        .checked_mul(g.max_bracket_support() as u64)?
        .checked_add(n64.checked_mul(m.max_column_support() as u64)?)?;
    cols.checked_mul(per_col)
}

impl ChainComplex {
    /// Materializes `d_1 .. d_max_degree` and checks `d_{n-1} ∘ d_n = 0`.
    pub fn build(
        g: &LieAlgebra,
        m: &Representation,
        kind: ComplexKind,
        max_degree: usize,
        config: &Config,
    ) -> Result<Self, ComplexError> {
        boundary::check_coefficients(g, m)?;
        if kind == ComplexKind::Loday && max_degree == 0 {
            return Err(ComplexError::EmptyLoday);
        }
        let mut total: u64 = 0;
        for n in 0..=max_degree {
            let over = |predicted| ComplexError::BudgetExceeded { degree: n, predicted, budget: config.budget };
            let p = predicted_nnz(kind, g, m, n)
                .and_then(|p| p.checked_add(chain_dim(kind, g.dim(), m.dim(), n)?))
                .ok_or(over(u64::MAX))?;
            total = total.checked_add(p).ok_or(over(u64::MAX))?;
            if total > config.budget {
                return Err(over(total));
            }
        }
        let dim0 = m.dim();
        let mut boundaries = vec![SparseMatrix::zeros(0, dim0)];
        let built: Result<Vec<SparseMatrix>, LieError> = (1..=max_degree)
            .into_par_iter()
            .map(|n| match kind {
                ComplexKind::Loday => loday_boundary(g, m, n),
                ComplexKind::CE => ce_boundary(g, m, n),
            })
            .collect();
        boundaries.extend(built?);
        let bad = (2..=max_degree)
            .into_par_iter()
            .find_first(|&n| !boundaries[n - 1].matmul(&boundaries[n]).expect("composable").is_zero());
        if let Some(degree) = bad {
            return Err(ComplexError::CompositionNonzero { degree });
        }
        Ok(Self::from_parts(kind, g.clone(), m.clone(), boundaries, config.rank_method))
    }

    fn from_parts(
        kind: ComplexKind,
        algebra: LieAlgebra,
        coefficients: Representation,
        boundaries: Vec<SparseMatrix>,
        rank_method: RankMethod,
    ) -> Self {
        let ranks = (0..boundaries.len()).map(|_| OnceLock::new()).collect();
        ChainComplex { kind, algebra, coefficients, boundaries, rank_method, ranks }
    }

    pub fn kind(&self) -> ComplexKind {
        self.kind
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn coefficients(&self) -> &Representation {
        &self.coefficients
    }

    pub fn max_degree(&self) -> usize {
        self.boundaries.len() - 1
    }

    pub fn rank_method(&self) -> RankMethod {
        self.rank_method
    }

    pub fn boundaries(&self) -> &[SparseMatrix] {
        &self.boundaries
    }

    pub fn boundary(&self, n: usize) -> Result<&SparseMatrix, ComplexError> {
        self.boundaries.get(n).ok_or(ComplexError::DegreeOutOfRange { degree: n, max_degree: self.max_degree() })
    }

    /// Dimension of the chain space in degree `n` (any `n`, materialized or not).
    pub fn chain_dim(&self, n: usize) -> u64 {
        chain_dim(self.kind, self.algebra.dim(), self.coefficients.dim(), n).unwrap_or(u64::MAX)
    }

    /// Rank of `d_n`, computed once.
    pub fn rank(&self, n: usize) -> Result<usize, ComplexError> {
        let d = self.boundary(n)?;
        Ok(*self.ranks[n].get_or_init(|| linalg::rank_with(d, self.rank_method)))
    }

    /// Computes the ranks of all materialized boundaries in parallel.
    pub fn precompute_ranks(&self) {
        (0..self.boundaries.len()).into_par_iter().for_each(|n| {
            self.rank(n).expect("in range");
        });
    }

    /// Whether the homology in degree `n` is determined: either `d_{n+1}`
    /// is materialized or the chain space in degree `n+1` is zero.
    pub fn is_determined(&self, n: usize) -> bool {
        n < self.max_degree() || (n == self.max_degree() && self.chain_dim(n + 1) == 0)
    }
}
