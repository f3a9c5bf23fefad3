//! Conditions (ii)–(v) for a split extension `0 → r → g → s → 0`, the
//! comparison `dim HL^p(g)` vs `dim HL^{p-1}(g, r^♯)`, and the six-dimensional
//! counterexample `g = ad ⋊ sl2`.
//!
//! Cohomology is never built: `dim HL^p(g, M^♯) = dim HL_p(g, M)`.

use std::sync::OnceLock;

use rayon::prelude::*;

use crate::complexes::{ChainComplex, ComplexKind, Config};
use crate::homology::{
    betti, coinvariants_dim, hochschild_serre_check, induced_on_homology, radical_homology_modules, ChainMap,
    HomologyError, HsReport,
};
use crate::lie::{semidirect, LeviData, LieAlgebra, Representation};

/// `g = r ⋊ sl2` with `r` abelian carrying the adjoint action. Basis
/// `re, rh, rf, e, h, f`.
pub fn build_counterexample() -> LeviData {
    let s = LieAlgebra::sl2();
    let r = LieAlgebra::abelian(3).with_labels(["re", "rh", "rf"].map(String::from).to_vec()).expect("three labels");
    let g = semidirect(&s, &r, &Representation::adjoint(&s)).expect("adjoint acts by derivations on an abelian algebra");
    LeviData::new(g, 3).expect("r is an abelian ideal and sl2 is semisimple")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    /// `HL_*(g, r) → HL_*(g, g)` is an isomorphism.
    Ii,
    /// `HL_*(g, s) = 0`
    Iii,
    /// `H_*(g, s) = 0`
    Iv,
    /// `H_0(s, H_*(r) ⊗ s) = 0`
    V,
}

impl Condition {
    pub fn name(self) -> &'static str {
        match self {
            Condition::Ii => "ii",
            Condition::Iii => "iii",
            Condition::Iv => "iv",
            Condition::V => "v",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowData {
    /// Induced map with source and target dimensions and rank.
    Map { source_dim: usize, target_dim: usize, rank: usize },
    /// A homology dimension that should vanish.
    Dim { dim: usize },
    /// Coinvariants of a module of dimension `module_dim`.
    Coinvariants { module_dim: usize, dim: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConditionRow {
    pub degree: usize,
    pub data: RowData,
}

impl ConditionRow {
    pub fn holds(&self) -> bool {
        match self.data {
            RowData::Map { source_dim, target_dim, rank } => source_dim == target_dim && rank == source_dim,
            RowData::Dim { dim } | RowData::Coinvariants { dim, .. } => dim == 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    HoldsUpTo(usize),
    FailsAt(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub condition: Condition,
    pub max_degree: usize,
    pub rows: Vec<ConditionRow>,
}

impl ConditionReport {
    /// Recomputed from the rows.
    pub fn verdict(&self) -> Verdict {
        match self.rows.iter().find(|r| !r.holds()) {
            Some(r) => Verdict::FailsAt(r.degree),
            None => Verdict::HoldsUpTo(self.max_degree),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Prop31Row {
    pub degree: usize,
    /// `dim HL^p(g) = dim HL_p(g)`
    pub trivial: usize,
    /// `dim HL^{p-1}(g, r^♯) = dim HL_{p-1}(g, r)`
    pub radical: usize,
    /// `dim HL_{p-1}(g, g)`, which always equals the first column.
    pub adjoint: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop31Table {
    pub max_degree: usize,
    pub rows: Vec<Prop31Row>,
}

impl Prop31Table {
    pub fn first_disagreement(&self) -> Option<usize> {
        self.rows.iter().find(|r| r.trivial != r.radical).map(|r| r.degree)
    }
}

/// Long exact sequence of `0 → r → g → s → 0` in Leibniz homology:
/// `dim HL_n(g,g) = rank i_n + dim HL_n(g,s) − dim HL_{n-1}(g,r) + rank i_{n-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LesRow {
    pub degree: usize,
    pub adjoint: usize,
    pub predicted: i64,
}

impl LesRow {
    pub fn agrees(&self) -> bool {
        self.adjoint as i64 == self.predicted
    }
}

/// How the claim `HL^p(g) ≅ HL^{p-1}(g, r^♯)` was contradicted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Refutation {
    Dimension { degree: usize, trivial: usize, radical: usize },
    InducedMap { degree: usize, source_dim: usize, target_dim: usize, rank: usize },
    NotEstablished,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullReport {
    pub max_degree: usize,
    pub algebra_dim: usize,
    pub radical_dim: usize,
    pub conditions: Vec<ConditionReport>,
    pub hochschild_serre: HsReport,
    pub exact_sequence: Vec<LesRow>,
    pub prop31: Prop31Table,
}

impl FullReport {
    pub fn condition(&self, c: Condition) -> &ConditionReport {
        self.conditions.iter().find(|r| r.condition == c).expect("every condition is evaluated")
    }

    /// A dimension disagreement is preferred; otherwise the first degree where
    /// the canonical map fails to be bijective.
    pub fn refutation(&self) -> Refutation {
        if let Some(p) = self.prop31.first_disagreement() {
            let row = self.prop31.rows.iter().find(|r| r.degree == p).expect("row exists");
            return Refutation::Dimension { degree: p, trivial: row.trivial, radical: row.radical };
        }
        match self.condition(Condition::Ii).rows.iter().find(|r| !r.holds()) {
            Some(&ConditionRow { degree, data: RowData::Map { source_dim, target_dim, rank } }) => {
                Refutation::InducedMap { degree, source_dim, target_dim, rank }
            }
            _ => Refutation::NotEstablished,
        }
    }

    /// Identities that hold for every input; a nonempty list means a bug.
    pub fn consistency_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for row in &self.hochschild_serre.rows {
            if !row.agrees() {
                out.push(format!(
                    "Hochschild-Serre degree {}: direct {} vs decomposed {}",
                    row.degree, row.direct, row.decomposed
                ));
            }
        }
        for row in &self.exact_sequence {
            if !row.agrees() {
                out.push(format!("exact sequence degree {}: {} vs {}", row.degree, row.adjoint, row.predicted));
            }
        }
        for row in &self.prop31.rows {
            if row.trivial != row.adjoint {
                out.push(format!(
                    "shift identity degree {}: HL_p(g) = {} vs HL_(p-1)(g, g) = {}",
                    row.degree, row.trivial, row.adjoint
                ));
            }
        }
        let (iii, iv) = (self.condition(Condition::Iii), self.condition(Condition::Iv));
        for (a, b) in iii.rows.iter().zip(&iv.rows).take(2) {
            if a.data != b.data {
                out.push(format!("Leibniz and Lie homology differ in degree {}", a.degree));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Coeff {
    Trivial,
    Radical,
    Quotient,
    Adjoint,
}

/// Complexes shared between conditions, built on first use.
struct Workspace<'a> {
    ld: &'a LeviData,
    max_degree: usize,
    config: &'a Config,
    loday: [OnceLock<Result<ChainComplex, HomologyError>>; 4],
    ce_quotient: OnceLock<Result<ChainComplex, HomologyError>>,
}

impl<'a> Workspace<'a> {
    fn new(ld: &'a LeviData, max_degree: usize, config: &'a Config) -> Self {
        Workspace { ld, max_degree, config, loday: Default::default(), ce_quotient: OnceLock::new() }
    }

    fn module(&self, c: Coeff) -> Representation {
        match c {
            Coeff::Trivial => Representation::trivial(self.ld.total(), 1),
            Coeff::Radical => self.ld.radical_module(),
            Coeff::Quotient => self.ld.quotient_module(),
            Coeff::Adjoint => Representation::adjoint(self.ld.total()),
        }
    }

    /// Loday complex through degree `N + 1`.
    fn loday(&self, c: Coeff) -> Result<&ChainComplex, HomologyError> {
        self.loday[c as usize]
            .get_or_init(|| {
                let g = self.ld.total();
                let cx = ChainComplex::build(g, &self.module(c), ComplexKind::Loday, self.max_degree + 1, self.config)?;
                cx.precompute_ranks();
                Ok(cx)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    fn ce_quotient(&self) -> Result<&ChainComplex, HomologyError> {
        self.ce_quotient
            .get_or_init(|| {
                let g = self.ld.total();
                let top = (self.max_degree + 1).min(g.dim());
                let cx = ChainComplex::build(g, &self.ld.quotient_module(), ComplexKind::CE, top, self.config)?;
                cx.precompute_ranks();
                Ok(cx)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    fn condition_ii(&self) -> Result<ConditionReport, HomologyError> {
        let src = self.loday(Coeff::Radical)?;
        let dst = self.loday(Coeff::Adjoint)?;
        let d = self.ld.total().dim();
        let dims: Vec<usize> = (0..=src.max_degree()).map(|n| d.pow(n as u32)).collect();
        let f = ChainMap::coefficient_map(&self.ld.inclusion(), &dims);
        let rows = (0..=self.max_degree)
            .into_par_iter()
            .map(|n| {
                let m = induced_on_homology(&f, src, dst, n)?;
                Ok(ConditionRow {
                    degree: n,
                    data: RowData::Map { source_dim: m.source_dim, target_dim: m.target_dim, rank: m.rank },
                })
            })
            .collect::<Result<Vec<_>, HomologyError>>()?;
        Ok(ConditionReport { condition: Condition::Ii, max_degree: self.max_degree, rows })
    }

    fn condition_iii(&self) -> Result<ConditionReport, HomologyError> {
        let c = self.loday(Coeff::Quotient)?;
        let rows = (0..=self.max_degree)
            .map(|n| Ok(ConditionRow { degree: n, data: RowData::Dim { dim: betti(c, n)? } }))
            .collect::<Result<Vec<_>, HomologyError>>()?;
        Ok(ConditionReport { condition: Condition::Iii, max_degree: self.max_degree, rows })
    }

    fn condition_iv(&self) -> Result<ConditionReport, HomologyError> {
        let c = self.ce_quotient()?;
        let rows = (0..=self.max_degree)
            .map(|n| {
                let dim = if n > c.max_degree() { 0 } else { betti(c, n)? };
                Ok(ConditionRow { degree: n, data: RowData::Dim { dim } })
            })
            .collect::<Result<Vec<_>, HomologyError>>()?;
        Ok(ConditionReport { condition: Condition::Iv, max_degree: self.max_degree, rows })
    }

    fn condition_v(&self) -> Result<ConditionReport, HomologyError> {
        let ad_s = Representation::adjoint(self.ld.quotient());
        let rows = radical_homology_modules(self.ld, self.max_degree, self.config)?
            .iter()
            .enumerate()
            .map(|(q, h)| {
                let m = h.tensor(&ad_s).expect("both are s-modules");
                ConditionRow { degree: q, data: RowData::Coinvariants { module_dim: m.dim(), dim: coinvariants_dim(&m) } }
            })
            .collect();
        Ok(ConditionReport { condition: Condition::V, max_degree: self.max_degree, rows })
    }

    fn prop31(&self) -> Result<Prop31Table, HomologyError> {
        let (t, r, a) = (self.loday(Coeff::Trivial)?, self.loday(Coeff::Radical)?, self.loday(Coeff::Adjoint)?);
        let rows = (1..=self.max_degree)
            .map(|p| {
                Ok(Prop31Row { degree: p, trivial: betti(t, p)?, radical: betti(r, p - 1)?, adjoint: betti(a, p - 1)? })
            })
            .collect::<Result<Vec<_>, HomologyError>>()?;
        Ok(Prop31Table { max_degree: self.max_degree, rows })
    }

    fn exact_sequence(&self, ii: &ConditionReport) -> Result<Vec<LesRow>, HomologyError> {
        let (r, s, a) = (self.loday(Coeff::Radical)?, self.loday(Coeff::Quotient)?, self.loday(Coeff::Adjoint)?);
        let rank = |n: usize| match ii.rows[n].data {
            RowData::Map { rank, .. } => rank as i64,
            _ => unreachable!("condition (ii) rows are maps"),
        };
        (0..=self.max_degree)
            .map(|n| {
                let mut predicted = rank(n) + betti(s, n)? as i64;
                if n > 0 {
                    predicted += rank(n - 1) - betti(r, n - 1)? as i64;
                }
                Ok(LesRow { degree: n, adjoint: betti(a, n)?, predicted })
            })
            .collect()
    }
}

pub fn condition_ii(ld: &LeviData, max_degree: usize, config: &Config) -> Result<ConditionReport, HomologyError> {
    Workspace::new(ld, max_degree, config).condition_ii()
}

pub fn condition_iii(ld: &LeviData, max_degree: usize, config: &Config) -> Result<ConditionReport, HomologyError> {
    Workspace::new(ld, max_degree, config).condition_iii()
}

pub fn condition_iv(ld: &LeviData, max_degree: usize, config: &Config) -> Result<ConditionReport, HomologyError> {
    Workspace::new(ld, max_degree, config).condition_iv()
}

pub fn condition_v(ld: &LeviData, max_degree: usize, config: &Config) -> Result<ConditionReport, HomologyError> {
    Workspace::new(ld, max_degree, config).condition_v()
}

pub fn prop31_table(ld: &LeviData, max_degree: usize, config: &Config) -> Result<Prop31Table, HomologyError> {
    Workspace::new(ld, max_degree, config).prop31()
}

pub fn full_report(ld: &LeviData, max_degree: usize, config: &Config) -> Result<FullReport, HomologyError> {
    let ws = Workspace::new(ld, max_degree, config);
    [Coeff::Trivial, Coeff::Radical, Coeff::Quotient, Coeff::Adjoint]
        .into_par_iter()
        .map(|c| ws.loday(c).map(|_| ()))
        .collect::<Result<(), _>>()?;
    let ii = ws.condition_ii()?;
    let exact_sequence = ws.exact_sequence(&ii)?;
    let conditions = vec![ii, ws.condition_iii()?, ws.condition_iv()?, ws.condition_v()?];
    Ok(FullReport {
        max_degree,
        algebra_dim: ld.total().dim(),
        radical_dim: ld.ideal_dim(),
        conditions,
        hochschild_serre: hochschild_serre_check(ld, max_degree, config)?,
        exact_sequence,
        prop31: ws.prop31()?,
    })
}
