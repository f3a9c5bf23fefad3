//! Exact sparse linear algebra over the rationals.
//!
//! Everything here is deterministic: the same matrix always yields the same
//! rank, the same kernel basis and the same preimage.

mod echelon;
mod field;
mod rational;
mod sparse;

pub(crate) use echelon::{sparsity_order, Echelon};
pub use field::{Field, Fp};
pub use rational::{ParseRationalError, Rational};
pub use sparse::{SparseMatrix, Vector};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
}

/// How ranks are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RankMethod {
    #[default]
    Exact,
    /// Rank modulo several large primes, accepted when all agree; falls back
    /// to exact elimination otherwise.
    Modular,
}

const PRIMES: [u64; 3] = [2_305_843_009_213_693_951, 4_611_686_018_427_387_847, 9_223_372_036_854_775_783];

/// Rank of a list of sparse vectors living in a `dim`-dimensional space.
fn rank_of_vectors<F: Field>(dim: usize, mut vectors: Vec<Vec<(usize, F)>>) -> usize {
    if dim == 0 {
        return 0;
    }
    let order = sparsity_order(dim, vectors.iter().map(Vec::as_slice));
    vectors.sort_by_key(Vec::len);
    let mut ech = Echelon::with_order(dim, order);
    for v in &vectors {
        if ech.is_full() {
            break;
        }
        ech.insert_lazy(v);
    }
    ech.rank()
}

/// The smaller-dimensional family of vectors spanning a space of dimension `rank(m)`.
fn short_vectors(m: &SparseMatrix) -> (usize, Vec<Vec<(usize, Rational)>>) {
    if m.rows() <= m.cols() {
        (m.rows(), m.columns().map(<[_]>::to_vec).collect())
    } else {
        (m.cols(), m.row_vectors())
    }
}

fn modular_rank<const P: u64>(dim: usize, vectors: &[Vec<(usize, Rational)>]) -> Option<usize> {
    let mut out = Vec::with_capacity(vectors.len());
    for v in vectors {
        let mut w = Vec::with_capacity(v.len());
        for (i, x) in v {
            let y = Fp::<P>::from_rational(x)?;
            if !y.is_zero() {
                w.push((*i, y));
            }
        }
        out.push(w);
    }
    Some(rank_of_vectors(dim, out))
}

/// Rank over the rationals.
pub fn rank(m: &SparseMatrix) -> usize {
    let (dim, vectors) = short_vectors(m);
    rank_of_vectors(dim, vectors)
}

pub fn rank_with(m: &SparseMatrix, method: RankMethod) -> usize {
    match method {
        RankMethod::Exact => rank(m),
        RankMethod::Modular => {
            let (dim, vectors) = short_vectors(m);
            let ((a, b), c) = rayon::join(
                || {
                    rayon::join(
                        || modular_rank::<{ PRIMES[0] }>(dim, &vectors),
                        || modular_rank::<{ PRIMES[1] }>(dim, &vectors),
                    )
                },
                || modular_rank::<{ PRIMES[2] }>(dim, &vectors),
            );
            match (a, b, c) {
                (Some(a), Some(b), Some(c)) if a == b && b == c => a,
                _ => rank_of_vectors(dim, vectors),
            }
        }
    }
}

/// Basis of the null space; one vector per non-pivot column, ordered by that
/// column, each with a one in its own free column.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<Vector> {
    let cols = m.cols();
    let rows = m.row_vectors();
    let order = sparsity_order(cols, rows.iter().map(Vec::as_slice));
    let mut ech = Echelon::with_order(cols, order);
    for r in &rows {
        ech.insert(r);
    }
    let reduced = ech.into_reduced_rows();
    let mut is_pivot = vec![false; cols];
    for (p, _) in &reduced {
        is_pivot[*p] = true;
    }
    let mut kernel: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); cols];
    for (p, row) in &reduced {
        for (c, x) in row {
            if c != p {
                kernel[*c].push((*p, -x));
            }
        }
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut entries = std::mem::take(&mut kernel[f]);
            entries.push((f, Rational::one()));
            entries.sort_by_key(|e| e.0);
            Vector::from_sorted_unchecked(cols, entries)
        })
        .collect()
}

/// Indices of the greedy (lowest-index) maximal independent subset of columns.
pub fn independent_columns(m: &SparseMatrix) -> Vec<usize> {
    let order = sparsity_order(m.rows(), m.columns());
    let mut ech = Echelon::with_order(m.rows(), order);
    let mut out = Vec::new();
    for j in 0..m.cols() {
        if ech.is_full() {
            break;
        }
        if ech.insert(m.column(j)) {
            out.push(j);
        }
    }
    out
}

/// Basis of the column space made of original columns of `m`.
pub fn image_basis(m: &SparseMatrix) -> Vec<Vector> {
    independent_columns(m).into_iter().map(|j| m.column_vector(j)).collect()
}

/// Some `x` with `m x = b`, or `None` when `b` is not in the column space.
/// Free variables are set to zero.
pub fn solve(m: &SparseMatrix, b: &Vector) -> Result<Option<Vector>, LinalgError> {
    if b.dim() != m.rows() {
        return Err(LinalgError::DimensionMismatch {
            op: "solve",
            left: (m.rows(), m.cols()),
            right: (b.dim(), 1),
        });
    }
    let cols = m.cols();
    let mut rows = m.row_vectors();
    // The right-hand side coordinate is visited last, so it only becomes a
    // pivot when the system is inconsistent.
    let mut order = sparsity_order(cols, rows.iter().map(Vec::as_slice));
    order.push(cols);
    for (i, x) in b.entries() {
        rows[*i].push((cols, x.clone()));
    }
    let mut ech = Echelon::with_order(cols + 1, order);
    for r in &rows {
        ech.insert(r);
    }
    let reduced = ech.into_reduced_rows();
    let mut x = Vec::new();
    for (p, row) in reduced {
        if p == cols {
            return Ok(None);
        }
        if let Some((_, v)) = row.iter().find(|e| e.0 == cols) {
            x.push((p, v.clone()));
        }
    }
    x.sort_by_key(|e| e.0);
    Ok(Some(Vector::from_sorted_unchecked(cols, x)))
}

pub fn matmul(a: &SparseMatrix, b: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
    a.matmul(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_i64_rows(rows)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMatrix::identity(3)), 3);
        assert_eq!(rank(&mat(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&SparseMatrix::zeros(4, 0)), 0);
        assert_eq!(rank(&SparseMatrix::zeros(0, 4)), 0);
        assert_eq!(rank_with(&mat(&[&[1, 2], &[2, 4]]), RankMethod::Modular), 1);
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&SparseMatrix::zeros(2, 3));
        assert_eq!(k.len(), 3);
        assert_eq!(rank(&SparseMatrix::from_columns(3, k)), 3);
        assert!(kernel_basis(&SparseMatrix::identity(3)).is_empty());
        let k = kernel_basis(&mat(&[&[1, 1]]));
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].get(0), -k[0].get(1));
        assert!(!k[0].is_zero());
    }

    #[test]
    fn image_examples() {
        assert_eq!(image_basis(&SparseMatrix::identity(2)).len(), 2);
        assert!(image_basis(&SparseMatrix::zeros(2, 2)).is_empty());
        let im = image_basis(&mat(&[&[1, 2], &[2, 4]]));
        assert_eq!(im.len(), 1);
        assert_eq!(im[0].get(1), im[0].get(0) * Rational::from_integer(2));
    }

    #[test]
    fn solve_examples() {
        let b = Vector::from_i64(&[1, 2]);
        assert_eq!(solve(&SparseMatrix::identity(2), &b).unwrap(), Some(b.clone()));
        assert_eq!(solve(&SparseMatrix::zeros(2, 2), &b).unwrap(), None);
        let m = mat(&[&[1, 1]]);
        let x = solve(&m, &Vector::from_i64(&[5])).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), Vector::from_i64(&[5]));
        assert!(solve(&m, &Vector::from_i64(&[1, 2])).is_err());
    }

    #[test]
    fn matmul_examples() {
        let m = mat(&[&[1, 2, 0], &[0, -1, 3]]);
        assert_eq!(matmul(&SparseMatrix::identity(2), &m).unwrap(), m);
        assert!(matmul(&m, &SparseMatrix::zeros(3, 4)).unwrap().is_zero());
        assert!(matmul(&m, &m).is_err());
    }

    fn small_matrix() -> impl Strategy<Value = SparseMatrix> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
            proptest::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..4], r * c).prop_map(move |vals| {
                let rows: Vec<Vec<Rational>> =
                    vals.chunks(c).map(|ch| ch.iter().map(|&x| Rational::from_integer(x)).collect()).collect();
                SparseMatrix::from_dense(&rows)
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let k = kernel_basis(&m);
            prop_assert_eq!(rank(&m) + k.len(), m.cols());
            for v in &k {
                prop_assert!(m.mul_vec(v).unwrap().is_zero());
            }
            if !k.is_empty() {
                prop_assert_eq!(rank(&SparseMatrix::from_columns(m.cols(), k.clone())), k.len());
            }
            prop_assert_eq!(image_basis(&m).len(), rank(&m));
        }

        #[test]
        fn rank_of_transpose(m in small_matrix()) {
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
            prop_assert_eq!(rank(&m), rank_with(&m, RankMethod::Modular));
        }

        #[test]
        fn solve_hits_image(m in small_matrix(), seed in proptest::collection::vec(-3i64..4, 7)) {
            let x = Vector::from_i64(&seed[..m.cols()]);
            let b = m.mul_vec(&x).unwrap();
            let y = solve(&m, &b).unwrap().expect("b is in the image");
            prop_assert_eq!(m.mul_vec(&y).unwrap(), b);
        }

        #[test]
        fn rank_permutation_invariant(m in small_matrix(), shift in 0usize..7) {
            let (r, c) = (m.rows(), m.cols());
            let permuted = SparseMatrix::from_triplets(r, c,
                m.triplets().map(|(i, j, x)| ((i + shift) % r, (j * 5 + shift) % c, x.clone())));
            // (j * 5) mod c is a permutation only when gcd(5, c) = 1
            if c % 5 != 0 {
                prop_assert_eq!(rank(&permuted), rank(&m));
            }
        }
    }
}
