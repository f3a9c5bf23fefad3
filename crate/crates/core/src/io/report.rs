//! Reports: a serializable document per command, printed either as a
//! fixed-width table or as JSON. Both forms are byte-deterministic.

use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::complexes::ComplexKind;
use crate::homology::HsReport;
use crate::lemma1::{Condition, ConditionReport, FullReport, Refutation, RowData, Verdict};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
const REPORT_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    Machine,
}

pub fn sha256_hex(parts: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    hex::encode(h.finalize())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyRow {
    pub degree: usize,
    pub chain_dim: u64,
    pub boundary_rank: usize,
    pub betti: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub complex: &'static str,
    pub coefficients: String,
    pub coefficient_dim: usize,
    pub algebra_dim: usize,
    /// Highest degree whose boundary was materialized.
    pub boundaries_through: usize,
    pub rows: Vec<HomologyRow>,
}

pub fn homology_report(
    kind: ComplexKind,
    coefficients: String,
    coefficient_dim: usize,
    algebra_dim: usize,
    boundaries_through: usize,
    rows: Vec<HomologyRow>,
) -> HomologyReport {
    let complex = match kind {
        ComplexKind::CE => "ce",
        ComplexKind::Loday => "loday",
    };
    HomologyReport { complex, coefficients, coefficient_dim, algebra_dim, boundaries_through, rows }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum VerdictDoc {
    HoldsUpTo(usize),
    FailsAt(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
struct ConditionRowDoc {
    degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    source_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    target_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    module_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dim: Option<usize>,
    holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
struct ConditionDoc {
    condition: &'static str,
    statement: &'static str,
    verdict: VerdictDoc,
    rows: Vec<ConditionRowDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
struct HsTermDoc {
    p: usize,
    q: usize,
    quotient_betti: usize,
    coinvariants: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
struct HsRowDoc {
    degree: usize,
    direct: usize,
    decomposed: usize,
    agrees: bool,
    terms: Vec<HsTermDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
struct LesRowDoc {
    degree: usize,
    adjoint: usize,
    predicted: i64,
    agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
struct Prop31RowDoc {
    degree: usize,
    hl_trivial: usize,
    hl_radical_shifted: usize,
    hl_adjoint_shifted: usize,
    agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
struct Prop31Doc {
    rows: Vec<Prop31RowDoc>,
    first_disagreement: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum RefutationDoc {
    Dimension { degree: usize, hl_trivial: usize, hl_radical_shifted: usize, statement: String },
    InducedMap { degree: usize, source_dim: usize, target_dim: usize, rank: usize, statement: String },
    NotEstablished { statement: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma1Report {
    algebra_dim: usize,
    radical_dim: usize,
    max_degree: usize,
    conditions: Vec<ConditionDoc>,
    hochschild_serre: Vec<HsRowDoc>,
    exact_sequence: Vec<LesRowDoc>,
    prop31: Prop31Doc,
    refutation: RefutationDoc,
    consistency_failures: Vec<String>,
}

fn statement(c: Condition) -> &'static str {
    match c {
        Condition::Ii => "HL_n(g, r) -> HL_n(g, g) is bijective",
        Condition::Iii => "HL_n(g, s) = 0",
        Condition::Iv => "H_n(g, s) = 0",
        Condition::V => "H_0(s, H_q(r) (x) s) = 0",
    }
}

fn condition_doc(r: &ConditionReport) -> ConditionDoc {
    let rows = r
        .rows
        .iter()
        .map(|row| {
            let mut doc = ConditionRowDoc {
                degree: row.degree,
                source_dim: None,
                target_dim: None,
                rank: None,
                module_dim: None,
                dim: None,
                holds: row.holds(),
            };
            match row.data {
                RowData::Map { source_dim, target_dim, rank } => {
                    doc.source_dim = Some(source_dim);
                    doc.target_dim = Some(target_dim);
                    doc.rank = Some(rank);
                }
                RowData::Dim { dim } => doc.dim = Some(dim),
                RowData::Coinvariants { module_dim, dim } => {
                    doc.module_dim = Some(module_dim);
                    doc.dim = Some(dim);
                }
            }
            doc
        })
        .collect();
    let verdict = match r.verdict() {
        Verdict::HoldsUpTo(n) => VerdictDoc::HoldsUpTo(n),
        Verdict::FailsAt(n) => VerdictDoc::FailsAt(n),
    };
    ConditionDoc { condition: r.condition.name(), statement: statement(r.condition), verdict, rows }
}

fn hs_doc(hs: &HsReport) -> Vec<HsRowDoc> {
    hs.rows
        .iter()
        .map(|r| HsRowDoc {
            degree: r.degree,
            direct: r.direct,
            decomposed: r.decomposed,
            agrees: r.agrees(),
            terms: r
                .terms
                .iter()
                .map(|t| HsTermDoc { p: t.p, q: t.q, quotient_betti: t.quotient_betti, coinvariants: t.coinvariants })
                .collect(),
        })
        .collect()
}

fn refutation_doc(r: Refutation, max_degree: usize) -> RefutationDoc {
    match r {
        Refutation::Dimension { degree, trivial, radical } => RefutationDoc::Dimension {
            degree,
            hl_trivial: trivial,
            hl_radical_shifted: radical,
            statement: format!(
                "HL^p(g) = HL^(p-1)(g, r^#) is false: dim HL^p(g) = {trivial} but dim HL^(p-1)(g, r^#) = {radical} at p = {degree}"
            ),
        },
        Refutation::InducedMap { degree, source_dim, target_dim, rank } => RefutationDoc::InducedMap {
            degree,
            source_dim,
            target_dim,
            rank,
            statement: format!(
                "HL^p(g) = HL^(p-1)(g, r^#) is false: canonical map HL_{degree}(g, r) -> HL_{degree}(g, g) is not bijective (rank {rank}, dims {source_dim} -> {target_dim})"
            ),
        },
        Refutation::NotEstablished => RefutationDoc::NotEstablished {
            statement: format!("no dimension disagreement and every canonical map bijective through degree {max_degree}"),
        },
    }
}

pub fn lemma1_report(r: &FullReport) -> Lemma1Report {
    Lemma1Report {
        algebra_dim: r.algebra_dim,
        radical_dim: r.radical_dim,
        max_degree: r.max_degree,
        conditions: r.conditions.iter().map(condition_doc).collect(),
        hochschild_serre: hs_doc(&r.hochschild_serre),
        exact_sequence: r
            .exact_sequence
            .iter()
            .map(|l| LesRowDoc { degree: l.degree, adjoint: l.adjoint, predicted: l.predicted, agrees: l.agrees() })
            .collect(),
        prop31: Prop31Doc {
            rows: r
                .prop31
                .rows
                .iter()
                .map(|p| Prop31RowDoc {
                    degree: p.degree,
                    hl_trivial: p.trivial,
                    hl_radical_shifted: p.radical,
                    hl_adjoint_shifted: p.adjoint,
                    agrees: p.trivial == p.radical,
                })
                .collect(),
            first_disagreement: r.prop31.first_disagreement(),
        },
        refutation: refutation_doc(r.refutation(), r.max_degree),
        consistency_failures: r.consistency_failures(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportBody {
    Homology(HomologyReport),
    Lemma1(Lemma1Report),
    Killing { labels: Vec<String>, matrix: Vec<Vec<String>>, rank: usize },
    Radical { labels: Vec<String>, dim: usize, basis: Vec<Vec<String>>, derived_series: Vec<usize> },
    Validate { labels: Vec<String>, dim: usize, brackets: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportFile {
    pub report_version: &'static str,
    pub tool_version: &'static str,
    pub command: String,
    /// SHA-256 of the canonical serialized inputs.
    pub input_digest: String,
    pub result: ReportBody,
}

impl ReportFile {
    pub fn new(command: impl Into<String>, input_digest: String, result: ReportBody) -> Self {
        ReportFile { report_version: REPORT_VERSION, tool_version: TOOL_VERSION, command: command.into(), input_digest, result }
    }
}

pub fn emit(report: &ReportFile, format: Format) -> String {
    match format {
        Format::Machine => {
            let mut s = serde_json::to_string_pretty(report).expect("serializable");
            s.push('\n');
            s
        }
        Format::Table => table(report),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "NO"
    }
}

/// Right-aligned columns, widths from the header and cells.
fn grid(out: &mut String, header: &[&str], rows: &[Vec<String>]) {
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let parts: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{c:>w$}")).collect();
        format!("  {}\n", parts.join("  "))
    };
    out.push_str(&line(header.to_vec()));
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
}

fn table(report: &ReportFile) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "hlcalc {} {}", report.tool_version, report.command);
    let _ = writeln!(out, "input sha256 {}", report.input_digest);
    match &report.result {
        ReportBody::Homology(h) => homology_table(&mut out, h),
        ReportBody::Lemma1(l) => lemma1_table(&mut out, l),
        ReportBody::Killing { labels, matrix, rank } => {
            let _ = writeln!(out, "Killing form (rank {rank})");
            let mut header = vec![""];
            header.extend(labels.iter().map(String::as_str));
            let rows: Vec<Vec<String>> = labels
                .iter()
                .zip(matrix)
                .map(|(l, row)| std::iter::once(l.clone()).chain(row.iter().cloned()).collect())
                .collect();
            grid(&mut out, &header, &rows);
        }
        ReportBody::Radical { labels, dim, basis, derived_series } => {
            let series: Vec<String> = derived_series.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "derived series dims: {}", series.join(" "));
            let _ = writeln!(out, "radical dim {dim}");
            let header: Vec<&str> = labels.iter().map(String::as_str).collect();
            grid(&mut out, &header, basis);
        }
        ReportBody::Validate { labels, dim, brackets } => {
            let _ = writeln!(out, "valid Lie algebra: dim {dim}, basis {}, {brackets} nonzero brackets", labels.join(" "));
        }
    }
    out
}

fn homology_table(out: &mut String, h: &HomologyReport) {
    let name = match h.complex {
        "ce" => "Chevalley-Eilenberg",
        _ => "Loday",
    };
    let _ = writeln!(
        out,
        "{name} homology of a {}-dimensional algebra, coefficients {} (dim {}), boundaries through degree {}",
        h.algebra_dim, h.coefficients, h.coefficient_dim, h.boundaries_through
    );
    let rows: Vec<Vec<String>> = h
        .rows
        .iter()
        .map(|r| vec![r.degree.to_string(), r.chain_dim.to_string(), r.boundary_rank.to_string(), r.betti.to_string()])
        .collect();
    grid(out, &["degree", "chain_dim", "rank_d", "betti"], &rows);
}

fn opt(x: Option<usize>) -> String {
    x.map_or_else(|| "-".to_string(), |v| v.to_string())
}

fn lemma1_table(out: &mut String, l: &Lemma1Report) {
    let _ = writeln!(out, "g: dim {}, radical r: dim {}, quotient s: dim {}", l.algebra_dim, l.radical_dim, l.algebra_dim - l.radical_dim);
    let _ = writeln!(out, "degrees 0..={}", l.max_degree);
    for c in &l.conditions {
        let verdict = match c.verdict {
            VerdictDoc::HoldsUpTo(n) => format!("holds up to degree {n}"),
            VerdictDoc::FailsAt(n) if c.condition == "v" => format!("FAILS at q = {n}"),
            VerdictDoc::FailsAt(n) => format!("FAILS at degree {n}"),
        };
        let _ = writeln!(out, "\ncondition ({}): {}: {verdict}", c.condition, c.statement);
        let rows: Vec<Vec<String>> = c
            .rows
            .iter()
            .map(|r| {
                if c.condition == "ii" {
                    vec![r.degree.to_string(), opt(r.source_dim), opt(r.target_dim), opt(r.rank), yes_no(r.holds).into()]
                } else if c.condition == "v" {
                    vec![r.degree.to_string(), opt(r.module_dim), opt(r.dim), yes_no(r.holds).into()]
                } else {
                    vec![r.degree.to_string(), opt(r.dim), yes_no(r.holds).into()]
                }
            })
            .collect();
        match c.condition {
            "ii" => grid(out, &["degree", "source", "target", "rank", "bijective"], &rows),
            "v" => grid(out, &["q", "module_dim", "coinvariants", "zero"], &rows),
            _ => grid(out, &["degree", "dim", "zero"], &rows),
        }
    }
    let _ = writeln!(out, "\nHochschild-Serre: H_n(g, s) vs sum_(p+q=n) H_p(s) * H_0(s, H_q(r) (x) s)");
    let rows: Vec<Vec<String>> = l
        .hochschild_serre
        .iter()
        .map(|r| vec![r.degree.to_string(), r.direct.to_string(), r.decomposed.to_string(), yes_no(r.agrees).into()])
        .collect();
    grid(out, &["degree", "direct", "decomposed", "equal"], &rows);
    let _ = writeln!(out, "\nexact sequence of r -> g -> s: dim HL_n(g, g) vs ranks and dims");
    let rows: Vec<Vec<String>> = l
        .exact_sequence
        .iter()
        .map(|r| vec![r.degree.to_string(), r.adjoint.to_string(), r.predicted.to_string(), yes_no(r.agrees).into()])
        .collect();
    grid(out, &["degree", "HL_n(g,g)", "predicted", "equal"], &rows);
    let _ = writeln!(out, "\nclaim HL^p(g) = HL^(p-1)(g, r^#), via dim HL^p(g, M^#) = dim HL_p(g, M)");
    let rows: Vec<Vec<String>> = l
        .prop31
        .rows
        .iter()
        .map(|r| {
            vec![
                r.degree.to_string(),
                r.hl_trivial.to_string(),
                r.hl_radical_shifted.to_string(),
                r.hl_adjoint_shifted.to_string(),
                yes_no(r.agrees).into(),
            ]
        })
        .collect();
    grid(out, &["p", "HL^p(g)", "HL^(p-1)(g,r^#)", "HL^(p-1)(g,g^#)", "equal"], &rows);
    let _ = writeln!(out, "first dimension disagreement: {}", opt(l.prop31.first_disagreement));
    let statement = match &l.refutation {
        RefutationDoc::Dimension { statement, .. }
        | RefutationDoc::InducedMap { statement, .. }
        | RefutationDoc::NotEstablished { statement } => statement,
    };
    let _ = writeln!(out, "\nverdict: {statement}");
    if l.consistency_failures.is_empty() {
        let _ = writeln!(out, "consistency checks: all passed");
    } else {
        for f in &l.consistency_failures {
            let _ = writeln!(out, "CONSISTENCY FAILURE: {f}");
        }
    }
}
