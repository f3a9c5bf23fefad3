//! Boundary matrices of the Loday and Chevalley–Eilenberg complexes and the
//! quotient map between them.
//!
//! Basis of `M ⊗ g^⊗n`: `(m, word) ↦ m · dim^n + encode(word)`.
//! Basis of `M ⊗ Λ^n g`: `(m, tuple) ↦ m · C(dim, n) + rank(tuple)`.

use rayon::prelude::*;

use super::indexing::{ExteriorIndexer, TensorIndexer};
use crate::lie::{LieAlgebra, LieError, Representation};
use crate::linalg::{Rational, SparseMatrix, Vector};

pub(crate) fn check_coefficients(g: &LieAlgebra, m: &Representation) -> Result<(), LieError> {
    if m.algebra_dim() != g.dim() {
        return Err(LieError::AlgebraMismatch { expected: g.dim(), got: m.algebra_dim() });
    }
    Ok(())
}

/// Calls `emit(m', word', c)` for every term of `δ(m ⊗ word)`.
///
/// The coefficient sits in slot 0 and `[m, x] = coeff_sign · ρ(x)(m)`; the
/// correct convention is `coeff_sign = -1`.
fn loday_terms(
    g: &LieAlgebra,
    rep: &Representation,
    coeff_sign: &Rational,
    m: usize,
    word: &[usize],
    mut emit: impl FnMut(usize, &[usize], Rational),
) {
    let n = word.len();
    let mut out = Vec::with_capacity(n.saturating_sub(1));
    for j in 1..=n {
        // Slot j of the chain is word[j - 1]; sign (-1)^j.
        let sign = if j % 2 == 0 { Rational::one() } else { -Rational::one() };
        out.clear();
        out.extend(word[..j - 1].iter().chain(&word[j..]));
        let xj = word[j - 1];
        let c0 = &sign * coeff_sign;
        for (r, a) in rep.action(xj).column(m) {
            emit(*r, &out, &c0 * a);
        }
        for i in 1..j {
            let saved = out[i - 1];
            for (k, b) in g.bracket_entries(word[i - 1], xj) {
                out[i - 1] = *k;
                emit(m, &out, &sign * b);
            }
            out[i - 1] = saved;
        }
    }
}

pub(crate) fn loday_boundary_with_sign(
    g: &LieAlgebra,
    rep: &Representation,
    n: usize,
    coeff_sign: &Rational,
) -> Result<SparseMatrix, LieError> {
    assert!(n >= 1, "Loday boundary needs degree at least 1");
    check_coefficients(g, rep)?;
    let src = TensorIndexer::new(g.dim(), n);
    let dst = TensorIndexer::new(g.dim(), n - 1);
    let (src_len, dst_len) = (src.len(), dst.len());
    let rows = rep.dim() * dst_len;
    let columns: Vec<Vector> = (0..rep.dim() * src_len)
        .into_par_iter()
        .map(|col| {
            let (m, word) = (col / src_len, src.decode(col % src_len));
            let mut terms = Vec::new();
            loday_terms(g, rep, coeff_sign, m, &word, |r, w, c| terms.push((r * dst_len + dst.encode(w), c)));
            Vector::from_entries(rows, terms)
        })
        .collect();
    Ok(SparseMatrix::from_columns(rows, columns))
}

/// `δ_n : M ⊗ g^⊗n → M ⊗ g^⊗(n-1)`.
pub fn loday_boundary(g: &LieAlgebra, m: &Representation, n: usize) -> Result<SparseMatrix, LieError> {
    loday_boundary_with_sign(g, m, n, &-Rational::one())
}

/// Applies `δ` to the tensor representative `word` (any ordering of an
/// exterior basis tuple) and projects back to `M ⊗ Λ^(n-1) g`.
pub(crate) fn ce_column(
    g: &LieAlgebra,
    rep: &Representation,
    m: usize,
    word: &[usize],
    dst: &ExteriorIndexer,
) -> Vector {
    let dst_len = dst.len();
    let mut terms = Vec::new();
    loday_terms(g, rep, &-Rational::one(), m, word, |r, w, c| {
        if let Some((t, negative)) = ExteriorIndexer::sort_with_sign(w) {
            terms.push((r * dst_len + dst.rank(&t), if negative { -c } else { c }));
        }
    });
    Vector::from_entries(rep.dim() * dst_len, terms)
}

/// `d_n : M ⊗ Λ^n g → M ⊗ Λ^(n-1) g`, induced from `δ_n` through the
/// quotient map.
pub fn ce_boundary(g: &LieAlgebra, m: &Representation, n: usize) -> Result<SparseMatrix, LieError> {
    assert!(n >= 1, "Chevalley-Eilenberg boundary needs degree at least 1");
    check_coefficients(g, m)?;
    let src = ExteriorIndexer::new(g.dim(), n);
    let dst = ExteriorIndexer::new(g.dim(), n - 1);
    let src_len = src.len();
    let columns: Vec<Vector> = (0..m.dim() * src_len)
        .into_par_iter()
        .map(|col| ce_column(g, m, col / src_len, &src.unrank(col % src_len), &dst))
        .collect();
    Ok(SparseMatrix::from_columns(m.dim() * dst.len(), columns))
}

/// `π_n : M ⊗ g^⊗n → M ⊗ Λ^n g`, sorting each word with its sign and
/// killing words with a repeated index.
pub fn quotient_chain_map(g: &LieAlgebra, m: &Representation, n: usize) -> SparseMatrix {
    let src = TensorIndexer::new(g.dim(), n);
    let dst = ExteriorIndexer::new(g.dim(), n);
    let (src_len, dst_len) = (src.len(), dst.len());
    let mut triplets = Vec::new();
    for w in 0..src_len {
        if let Some((t, negative)) = ExteriorIndexer::sort_with_sign(&src.decode(w)) {
            let r = dst.rank(&t);
            let c = if negative { -Rational::one() } else { Rational::one() };
            for a in 0..m.dim() {
                triplets.push((a * dst_len + r, a * src_len + w, c.clone()));
            }
        }
    }
    SparseMatrix::from_triplets(m.dim() * dst_len, m.dim() * src_len, triplets)
}

/// Action of a pair of operators on `M ⊗ Λ^n g`: `B ⊗ 1 + 1 ⊗ D_A`, where
/// `D_A` extends `A` to `Λ^n g` as a derivation.
pub fn exterior_action(alg_op: &SparseMatrix, coeff_op: &SparseMatrix, n: usize) -> SparseMatrix {
    let d = alg_op.cols();
    let idx = ExteriorIndexer::new(d, n);
    let len = idx.len();
    let dim = coeff_op.cols() * len;
    let columns = (0..dim)
        .map(|col| {
            let (m, tuple) = (col / len, idx.unrank(col % len));
            let mut terms = Vec::new();
            for (r, b) in coeff_op.column(m) {
                terms.push((r * len + col % len, b.clone()));
            }
            let mut word = tuple.clone();
            for slot in 0..n {
                for (k, a) in alg_op.column(tuple[slot]) {
                    word[slot] = *k;
                    if let Some((t, negative)) = ExteriorIndexer::sort_with_sign(&word) {
                        terms.push((m * len + idx.rank(&t), if negative { -a.clone() } else { a.clone() }));
                    }
                }
                word[slot] = tuple[slot];
            }
            Vector::from_entries(dim, terms)
        })
        .collect();
    SparseMatrix::from_columns(dim, columns)
}
