mod common;

use common::{Alg, Module};
use hlcalc::complexes::{ce_boundary, loday_boundary, quotient_chain_map, ChainComplex, ComplexKind, Config, ExteriorIndexer, TensorIndexer};
use hlcalc::lemma1::build_counterexample;
use hlcalc::lie::{LieAlgebra, Representation};
use hlcalc::linalg::{Rational, SparseMatrix, Vector};
use proptest::prelude::*;

fn corpus() -> Vec<(&'static str, Alg)> {
    vec![
        ("abelian1", common::abelian(1)),
        ("abelian2", common::abelian(2)),
        ("abelian3", common::abelian(3)),
        ("two_dim", common::two_dim()),
        ("heisenberg", common::heisenberg()),
        ("sl2", common::sl2()),
        ("counterexample", common::counterexample()),
    ]
}

fn coefficient_modules(g: &Alg) -> Vec<(&'static str, Module)> {
    let ad = common::adjoint(g);
    vec![("trivial", common::trivial(g, 1)), ("dual-adjoint", common::dual(&ad)), ("adjoint", ad)]
}

fn records(g: &LieAlgebra) -> Vec<(usize, usize, Vector)> {
    g.structure_records().collect()
}

#[test]
fn library_algebras_match_raw_tables() {
    assert_eq!(records(&LieAlgebra::sl2()), records(&common::to_lie(&common::sl2())));
    assert_eq!(records(&LieAlgebra::heisenberg()), records(&common::to_lie(&common::heisenberg())));
    assert_eq!(records(&LieAlgebra::two_dim_nonabelian()), records(&common::to_lie(&common::two_dim())));
    assert_eq!(records(build_counterexample().total()), records(&common::to_lie(&common::counterexample())));
}

#[test]
fn loday_boundaries_match_explicit_formula() {
    for (name, a) in corpus() {
        let g = common::to_lie(&a);
        for (coeff, m) in coefficient_modules(&a) {
            let rep = common::to_rep(&m);
            let top = if a.dim == 6 { 3 } else { 4 };
            for n in 1..=top {
                let ours = loday_boundary(&g, &rep, n).unwrap();
                assert!(common::dense_eq(&ours, &common::loday(&a, &m, n)), "{name} {coeff} degree {n}");
            }
        }
    }
}

#[test]
fn ce_boundaries_match_two_sum_formula() {
    for (name, a) in corpus() {
        let g = common::to_lie(&a);
        for (coeff, m) in coefficient_modules(&a) {
            let rep = common::to_rep(&m);
            for n in 1..=a.dim {
                let ours = ce_boundary(&g, &rep, n).unwrap();
                assert!(common::dense_eq(&ours, &common::ce(&a, &m, n)), "{name} {coeff} degree {n}");
            }
        }
    }
}

#[test]
fn squares_vanish_and_projection_is_a_chain_map() {
    for (name, a) in corpus() {
        let g = common::to_lie(&a);
        for (coeff, m) in coefficient_modules(&a) {
            let rep = common::to_rep(&m);
            let lod = ChainComplex::build(&g, &rep, ComplexKind::Loday, 4, &Config::default()).unwrap();
            let ce = ChainComplex::build(&g, &rep, ComplexKind::CE, a.dim, &Config::default()).unwrap();
            for n in 2..=4 {
                assert!(lod.boundary(n - 1).unwrap().matmul(lod.boundary(n).unwrap()).unwrap().is_zero());
            }
            for n in 2..=a.dim {
                assert!(ce.boundary(n - 1).unwrap().matmul(ce.boundary(n).unwrap()).unwrap().is_zero());
            }
            for n in 1..=4.min(a.dim) {
                let lhs = quotient_chain_map(&g, &rep, n - 1).matmul(lod.boundary(n).unwrap()).unwrap();
                let rhs = ce.boundary(n).unwrap().matmul(&quotient_chain_map(&g, &rep, n)).unwrap();
                assert_eq!(lhs, rhs, "{name} {coeff} degree {n}");
            }
        }
    }
}

#[test]
fn ce_of_top_degree_past_dimension_is_empty() {
    let g = LieAlgebra::sl2();
    let m = Representation::trivial(&g, 1);
    assert_eq!(ce_boundary(&g, &m, 4).unwrap().cols(), 0);
}

fn random_basis(dim: usize, seed: &[i64]) -> Option<Vec<Vector>> {
    let cols: Vec<Vector> = (0..dim)
        .map(|j| {
            let mut v: Vec<i64> = (0..dim).map(|i| seed[(i * dim + j) % seed.len()]).collect();
            v[j] += 3;
            Vector::from_i64(&v)
        })
        .collect();
    let m = SparseMatrix::from_columns(dim, cols.clone());
    (hlcalc::linalg::rank(&m) == dim).then_some(cols)
}

fn betti_pair(g: &LieAlgebra, m: &Representation) -> (Vec<usize>, Vec<usize>) {
    let c = Config::default();
    let lod = ChainComplex::build(g, m, ComplexKind::Loday, 3, &c).unwrap();
    let ce = ChainComplex::build(g, m, ComplexKind::CE, g.dim(), &c).unwrap();
    (
        (0..=2).map(|n| hlcalc::homology::betti(&lod, n).unwrap()).collect(),
        hlcalc::homology::betti_numbers(&ce).unwrap(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn betti_numbers_survive_change_of_basis(
        which in 0usize..3,
        seed in proptest::collection::vec(-2i64..3, 9),
    ) {
        let g = [LieAlgebra::sl2(), LieAlgebra::heisenberg(), LieAlgebra::two_dim_nonabelian()][which].clone();
        let d = g.dim();
        if let Some(basis) = random_basis(d, &seed) {
            let labels = (0..d).map(|i| format!("y{i}")).collect();
            let h = g.change_basis(&basis, labels).unwrap();
            prop_assert!(h.validate().is_ok());
            prop_assert_eq!(betti_pair(&g, &Representation::trivial(&g, 1)), betti_pair(&h, &Representation::trivial(&h, 1)));
            prop_assert_eq!(betti_pair(&g, &Representation::adjoint(&g)), betti_pair(&h, &Representation::adjoint(&h)));
        }
    }

    /// `π(δ(m ⊗ σ·w)) = sign(σ) · d(m ⊗ w)` for a random reordering of an
    /// increasing tuple.
    #[test]
    fn ce_boundary_independent_of_representative(
        which in 0usize..2,
        picks in proptest::collection::vec(0usize..6, 4),
        keys in proptest::collection::vec(0u32..1000, 4),
        m in 0usize..6,
    ) {
        let (g, rep) = if which == 0 {
            let g = LieAlgebra::sl2();
            let r = Representation::adjoint(&g);
            (g, r)
        } else {
            let ld = build_counterexample();
            let r = ld.radical_module();
            (ld.total().clone(), r)
        };
        let d = g.dim();
        let mut tuple: Vec<usize> = picks.iter().map(|p| p % d).collect();
        tuple.sort_unstable();
        tuple.dedup();
        let n = tuple.len();
        let m = m % rep.dim();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (keys[i], i));
        let word: Vec<usize> = order.iter().map(|&i| tuple[i]).collect();
        let (sorted, negative) = ExteriorIndexer::sort_with_sign(&word).unwrap();
        prop_assert_eq!(&sorted, &tuple);

        let tensor = TensorIndexer::new(d, n);
        let ext = ExteriorIndexer::new(d, n);
        let col = loday_boundary(&g, &rep, n).unwrap().column_vector(m * tensor.len() + tensor.encode(&word));
        let lhs = quotient_chain_map(&g, &rep, n - 1).mul_vec(&col).unwrap();
        let sign = if negative { -Rational::one() } else { Rational::one() };
        let rhs = ce_boundary(&g, &rep, n).unwrap().column_vector(m * ext.len() + ext.rank(&tuple)).scale(&sign);
        prop_assert_eq!(lhs, rhs);
    }
}
