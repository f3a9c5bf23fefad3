//! Dimension-level Hochschild–Serre decomposition for a split extension with
//! coefficients in the quotient:
//! `dim H_n(g, s) = Σ_{p+q=n} dim H_p(s) · dim H_0(s, H_q(r) ⊗ s)`.

use super::{betti, coinvariants_dim, rep_on_homology, ChainMap, HomologyError};
use crate::complexes::{exterior_action, ChainComplex, ComplexKind, Config};
use crate::lie::{LeviData, Representation};
use crate::linalg::SparseMatrix;

/// `H_q(r)` with trivial coefficients as `s`-modules, for `q = 0..=max_q`.
/// The action of `x ∈ s` on `Λ^q r` is the derivation extension of the
/// section action; degrees above `dim r` give the zero module.
pub fn radical_homology_modules(ld: &LeviData, max_q: usize, config: &Config) -> Result<Vec<Representation>, HomologyError> {
    let r = ld.radical();
    let s = ld.quotient();
    let act = ld.section_action();
    let top = r.dim().min(max_q);
    let c = ChainComplex::build(r, &Representation::trivial(r, 1), ComplexKind::CE, (top + 1).min(r.dim()), config)?;
    let zero = SparseMatrix::zeros(1, 1);
    let sym: Vec<ChainMap> = (0..s.dim())
        .map(|x| ChainMap::new((0..=c.max_degree()).map(|q| exterior_action(act.action(x), &zero, q)).collect()))
        .collect();
    let mut out = Vec::with_capacity(max_q + 1);
    for q in 0..=max_q {
        if q <= top {
            out.push(rep_on_homology(&c, s, &sym, q)?);
        } else {
            out.push(Representation::trivial(s, 0));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HsTerm {
    pub p: usize,
    pub q: usize,
    /// `dim H_p(s)`
    pub quotient_betti: usize,
    /// `dim H_0(s, H_q(r) ⊗ s)`
    pub coinvariants: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HsRow {
    pub degree: usize,
    /// `dim H_n(g, s)` computed directly.
    pub direct: usize,
    /// `Σ_{p+q=n}` of the products.
    pub decomposed: usize,
    pub terms: Vec<HsTerm>,
}

impl HsRow {
    pub fn agrees(&self) -> bool {
        self.direct == self.decomposed
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HsReport {
    pub rows: Vec<HsRow>,
}

impl HsReport {
    pub fn agrees(&self) -> bool {
        self.rows.iter().all(HsRow::agrees)
    }
}

pub fn hochschild_serre_check(ld: &LeviData, max_degree: usize, config: &Config) -> Result<HsReport, HomologyError> {
    let g = ld.total();
    let s = ld.quotient();
    let quotient = ld.quotient_module();
    let g_top = (max_degree + 1).min(g.dim());
    let direct = ChainComplex::build(g, &quotient, ComplexKind::CE, g_top, config)?;
    let s_complex = ChainComplex::build(s, &Representation::trivial(s, 1), ComplexKind::CE, s.dim(), config)?;
    direct.precompute_ranks();
    s_complex.precompute_ranks();
    let ad_s = Representation::adjoint(s);
    let coinv: Vec<usize> = radical_homology_modules(ld, max_degree, config)?
        .iter()
        .map(|h| coinvariants_dim(&h.tensor(&ad_s).expect("both are s-modules")))
        .collect();
    let mut rows = Vec::with_capacity(max_degree + 1);
    for n in 0..=max_degree {
        let direct_dim = if n > g.dim() { 0 } else { betti(&direct, n)? };
        let mut terms = Vec::new();
        for p in 0..=n {
            let q = n - p;
            let hp = if p > s.dim() { 0 } else { betti(&s_complex, p)? };
            terms.push(HsTerm { p, q, quotient_betti: hp, coinvariants: coinv[q] });
        }
        let decomposed = terms.iter().map(|t| t.quotient_betti * t.coinvariants).sum();
        rows.push(HsRow { degree: n, direct: direct_dim, decomposed, terms });
    }
    Ok(HsReport { rows })
}
