use super::{standard_basis, LieAlgebra};
use crate::linalg::{self, SparseMatrix, Vector};

/// `κ_ij = tr(ad e_i ∘ ad e_j)`
pub(super) fn killing_form(g: &LieAlgebra) -> SparseMatrix {
    let dim = g.dim();
    let ads: Vec<SparseMatrix> = (0..dim).map(|i| g.ad(i)).collect();
    let mut entries = Vec::new();
    for i in 0..dim {
        for j in i..dim {
            let t = ads[i].matmul(&ads[j]).expect("square ad matrices").trace();
            if !t.is_zero() {
                if i != j {
                    entries.push((j, i, t.clone()));
                }
                entries.push((i, j, t));
            }
        }
    }
    SparseMatrix::from_triplets(dim, dim, entries)
}

/// Basis of the span of all brackets `[u, v]` with `u, v` in `basis`.
pub(super) fn bracket_span(g: &LieAlgebra, basis: &[Vector]) -> Vec<Vector> {
    let mut brackets = Vec::new();
    for (a, u) in basis.iter().enumerate() {
        for v in &basis[a + 1..] {
            let b = g.bracket(u, v);
            if !b.is_zero() {
                brackets.push(b);
            }
        }
    }
    if brackets.is_empty() {
        return Vec::new();
    }
    linalg::image_basis(&SparseMatrix::from_columns(g.dim(), brackets))
}

/// Dimensions of `g ⊇ [g,g] ⊇ ...`, stopping at zero or when the dimension
/// stabilizes (the repeated value is included once).
pub fn derived_series(g: &LieAlgebra) -> Vec<usize> {
    let mut current = standard_basis(g.dim());
    let mut dims = vec![current.len()];
    while !current.is_empty() {
        let next = bracket_span(g, &current);
        let stable = next.len() == current.len();
        dims.push(next.len());
        if stable {
            break;
        }
        current = next;
    }
    dims
}

pub(super) fn radical(g: &LieAlgebra) -> Vec<Vector> {
    let dim = g.dim();
    let derived = g.derived_algebra();
    if derived.is_empty() {
        return standard_basis(dim);
    }
    let kappa = killing_form(g);
    // Row b of the constraint matrix is (κ d_b)^T for d_b in [g, g].
    let rows: Vec<Vector> = derived.iter().map(|d| kappa.mul_vec(d).expect("square form")).collect();
    let constraints = SparseMatrix::from_columns(dim, rows).transpose();
    linalg::kernel_basis(&constraints)
}

/// True when `[g, span]` lies inside `span`.
pub(crate) fn is_ideal(g: &LieAlgebra, span: &[Vector]) -> bool {
    let dim = g.dim();
    if span.is_empty() {
        return true;
    }
    let m = SparseMatrix::from_columns(dim, span.to_vec());
    let r = linalg::rank(&m);
    (0..dim).all(|i| {
        span.iter().all(|v| {
            let b = g.bracket(&Vector::unit(dim, i), v);
            b.is_zero() || linalg::rank(&m.hstack(&SparseMatrix::from_columns(dim, vec![b]))) == r
        })
    })
}

/// Derived series of the subalgebra spanned by `span` terminates at zero.
pub(crate) fn span_is_solvable(g: &LieAlgebra, span: &[Vector]) -> bool {
    let mut current = span.to_vec();
    loop {
        if current.is_empty() {
            return true;
        }
        let next = bracket_span(g, &current);
        if next.len() == current.len() {
            return false;
        }
        current = next;
    }
}
