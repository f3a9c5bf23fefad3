//! Betti numbers, homology bases, induced maps and coinvariants.

mod hs;

use std::sync::Mutex;

use thiserror::Error;

pub use hs::{hochschild_serre_check, radical_homology_modules, HsReport, HsRow, HsTerm};

use crate::complexes::{ChainComplex, ComplexError};
use crate::lie::{LieAlgebra, LieError, LeviError, Representation};
use crate::linalg::{self, sparsity_order, Echelon, Rational, SparseMatrix, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Levi(#[from] LeviError),
    #[error("homology in degree {degree} is not determined (boundaries materialized through {max_degree})")]
    Undetermined { degree: usize, max_degree: usize },
    #[error("map does not commute with the boundaries in degree {degree}")]
    NotChainMap { degree: usize },
    #[error("chain map has wrong shape in degree {degree}")]
    ChainMapShape { degree: usize },
    #[error("vector is not a cycle in degree {degree}")]
    NotACycle { degree: usize },
}

fn determined(c: &ChainComplex, n: usize) -> Result<(), HomologyError> {
    if c.is_determined(n) {
        Ok(())
    } else {
        Err(HomologyError::Undetermined { degree: n, max_degree: c.max_degree() })
    }
}

/// Rank of `d_{n+1}`, zero when `C_{n+1} = 0` is not materialized.
fn incoming_rank(c: &ChainComplex, n: usize) -> Result<usize, HomologyError> {
    if n < c.max_degree() {
        Ok(c.rank(n + 1)?)
    } else {
        Ok(0)
    }
}

/// `dim C_n − rank d_n − rank d_{n+1}`.
pub fn betti(c: &ChainComplex, n: usize) -> Result<usize, HomologyError> {
    determined(c, n)?;
    let dim = c.chain_dim(n) as usize;
    Ok(dim - c.rank(n)? - incoming_rank(c, n)?)
}

/// Betti numbers in degrees `0..=max`, where `max` is the highest
/// determined degree.
pub fn betti_numbers(c: &ChainComplex) -> Result<Vec<usize>, HomologyError> {
    c.precompute_ranks();
    let top = if c.is_determined(c.max_degree()) { c.max_degree() } else { c.max_degree() - 1 };
    (0..=top).map(|n| betti(c, n)).collect()
}

/// Cycle representatives of a basis of `H_n`, with a classifier that reads
/// off the class of any cycle in that basis.
#[derive(Debug)]
pub struct HomologyBasis {
    degree: usize,
    ambient_dim: usize,
    representatives: Vec<Vector>,
    boundary: SparseMatrix,
    /// Boundaries (tag zero) then representatives (tag = unit class vector).
    classifier: Mutex<Echelon<Rational>>,
}

impl HomologyBasis {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn representatives(&self) -> &[Vector] {
        &self.representatives
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// Coordinates of the class of the cycle `v`.
    pub fn class_of(&self, v: &Vector) -> Result<Vector, HomologyError> {
        let not_cycle = HomologyError::NotACycle { degree: self.degree };
        if v.dim() != self.ambient_dim {
            return Err(not_cycle);
        }
        if !self.boundary.mul_vec(v).expect("dimension checked").is_zero() {
            return Err(not_cycle);
        }
        let red = self.classifier.lock().expect("classifier lock").reduce(v.entries(), true, false);
        // Every cycle lies in the span of boundaries and representatives.
        assert!(red.residual.is_empty(), "homology basis does not span the cycles");
        Ok(Vector::from_entries(self.len(), red.tag))
    }
}

/// Kernel of `d_n` completed from the image of `d_{n+1}`, choosing kernel
/// vectors greedily in index order.
pub fn homology_basis(c: &ChainComplex, n: usize) -> Result<HomologyBasis, HomologyError> {
    determined(c, n)?;
    let ambient_dim = c.chain_dim(n) as usize;
    let d = c.boundary(n)?.clone();
    let incoming = (n < c.max_degree()).then(|| c.boundary(n + 1)).transpose()?;
    let kernel = linalg::kernel_basis(&d);
    let order = sparsity_order(ambient_dim, incoming.iter().flat_map(|m| m.columns()).chain(kernel.iter().map(Vector::entries)));
    let mut ech = Echelon::with_order(ambient_dim, order);
    if let Some(m) = incoming {
        for col in m.columns() {
            if ech.is_full() {
                break;
            }
            ech.insert_lazy(col);
        }
    }
    let mut representatives = Vec::new();
    for v in kernel {
        let tag = vec![(representatives.len(), Rational::one())];
        if ech.insert_tagged(v.entries(), tag) {
            representatives.push(v);
        }
    }
    Ok(HomologyBasis { degree: n, ambient_dim, representatives, boundary: d, classifier: Mutex::new(ech) })
}

/// One matrix per degree `0..=top`, commuting with the boundaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    maps: Vec<SparseMatrix>,
}

impl ChainMap {
    pub fn new(maps: Vec<SparseMatrix>) -> Self {
        ChainMap { maps }
    }

    /// `f_n = A ⊗ 1` on `M ⊗ X_n` for a coefficient map `A : M → N`, where
    /// `X_n` has dimension `dims[n]`.
    pub fn coefficient_map(a: &SparseMatrix, dims: &[usize]) -> Self {
        ChainMap { maps: dims.iter().map(|&k| a.kron(&SparseMatrix::identity(k))).collect() }
    }

    pub fn maps(&self) -> &[SparseMatrix] {
        &self.maps
    }

    pub fn degree(&self, n: usize) -> Option<&SparseMatrix> {
        self.maps.get(n)
    }

    /// Checks `d'_k f_k = f_{k-1} d_k` for every `k` where both sides are defined.
    pub fn check(&self, src: &ChainComplex, dst: &ChainComplex, degrees: impl IntoIterator<Item = usize>) -> Result<(), HomologyError> {
        for k in degrees {
            let f = self.maps.get(k).ok_or(HomologyError::ChainMapShape { degree: k })?;
            if f.cols() as u64 != src.chain_dim(k) || f.rows() as u64 != dst.chain_dim(k) {
                return Err(HomologyError::ChainMapShape { degree: k });
            }
            if k == 0 || k > src.max_degree() || k > dst.max_degree() {
                continue;
            }
            let g = self.maps.get(k - 1).ok_or(HomologyError::ChainMapShape { degree: k - 1 })?;
            let lhs = dst.boundary(k)?.matmul(f).map_err(|_| HomologyError::ChainMapShape { degree: k })?;
            let rhs = g.matmul(src.boundary(k)?).map_err(|_| HomologyError::ChainMapShape { degree: k })?;
            if lhs != rhs {
                return Err(HomologyError::NotChainMap { degree: k });
            }
        }
        Ok(())
    }
}

/// Matrix of `H_n(f)` in the chosen homology bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedMap {
    pub degree: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub matrix: SparseMatrix,
    pub rank: usize,
}

impl InducedMap {
    pub fn is_bijective(&self) -> bool {
        self.source_dim == self.target_dim && self.rank == self.source_dim
    }

    pub fn is_injective(&self) -> bool {
        self.rank == self.source_dim
    }

    pub fn is_surjective(&self) -> bool {
        self.rank == self.target_dim
    }
}

/// Maps each source class through `f_n` and reads off its target class.
pub fn induced_between(f: &SparseMatrix, src: &HomologyBasis, dst: &HomologyBasis) -> Result<InducedMap, HomologyError> {
    let columns = src
        .representatives()
        .iter()
        .map(|v| dst.class_of(&f.mul_vec(v).map_err(|_| HomologyError::ChainMapShape { degree: src.degree() })?))
        .collect::<Result<Vec<_>, _>>()?;
    let matrix = SparseMatrix::from_columns(dst.len(), columns);
    let rank = linalg::rank(&matrix);
    Ok(InducedMap { degree: src.degree(), source_dim: src.len(), target_dim: dst.len(), matrix, rank })
}

pub fn induced_on_homology(f: &ChainMap, src: &ChainComplex, dst: &ChainComplex, n: usize) -> Result<InducedMap, HomologyError> {
    // Degree n: cycles go to cycles. Degree n+1: boundaries go to boundaries.
    f.check(src, dst, n..=(n + 1).min(src.max_degree()))?;
    let sb = homology_basis(src, n)?;
    let db = homology_basis(dst, n)?;
    induced_between(f.degree(n).ok_or(HomologyError::ChainMapShape { degree: n })?, &sb, &db)
}

/// The `s`-module structure on `H_n` of a complex carrying a chain-level
/// `s`-action, one chain map per generator of `s`.
pub fn rep_on_homology(c: &ChainComplex, s: &LieAlgebra, sym: &[ChainMap], n: usize) -> Result<Representation, HomologyError> {
    if sym.len() != s.dim() {
        return Err(LieError::AlgebraMismatch { expected: s.dim(), got: sym.len() }.into());
    }
    let basis = homology_basis(c, n)?;
    let top = (n + 1).min(c.max_degree());
    let mut action = Vec::with_capacity(sym.len());
    for f in sym {
        f.check(c, c, n..=top)?;
        action.push(induced_between(f.degree(n).ok_or(HomologyError::ChainMapShape { degree: n })?, &basis, &basis)?.matrix);
    }
    let rep = Representation::new(s.dim(), basis.len(), action)?;
    rep.validate(s)?;
    Ok(rep)
}

/// `dim M − rank [ρ_1 | … | ρ_k]`, the dimension of `H_0(s, M)`.
pub fn coinvariants_dim(m: &Representation) -> usize {
    let stacked = m.actions().iter().fold(SparseMatrix::zeros(m.dim(), 0), |acc, a| acc.hstack(a));
    m.dim() - linalg::rank(&stacked)
}
