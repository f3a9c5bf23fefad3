//! One PASS/FAIL line per acceptance criterion. Every check is exact; the
//! only tolerances are wall-clock limits.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use hlcalc::complexes::{quotient_chain_map, ChainComplex, ComplexKind, Config};
use hlcalc::homology::{betti, betti_numbers, coinvariants_dim, hochschild_serre_check};
use hlcalc::lemma1::{build_counterexample, full_report, Condition, RowData, Verdict};
use hlcalc::lie::{LieAlgebra, Representation};
use hlcalc::linalg::rank;

type Check = Result<String, String>;

fn corpus() -> Vec<(&'static str, LieAlgebra)> {
    vec![
        ("abelian(1)", LieAlgebra::abelian(1)),
        ("abelian(2)", LieAlgebra::abelian(2)),
        ("abelian(3)", LieAlgebra::abelian(3)),
        ("two_dim_nonabelian", LieAlgebra::two_dim_nonabelian()),
        ("heisenberg", LieAlgebra::heisenberg()),
        ("sl2", LieAlgebra::sl2()),
        ("counterexample", build_counterexample().total().clone()),
    ]
}

fn coefficients(g: &LieAlgebra) -> Vec<(&'static str, Representation)> {
    let ad = Representation::adjoint(g);
    vec![("trivial", Representation::trivial(g, 1)), ("dual-adjoint", ad.dual()), ("adjoint", ad)]
}

fn build(g: &LieAlgebra, m: &Representation, kind: ComplexKind, top: usize) -> Result<ChainComplex, String> {
    ChainComplex::build(g, m, kind, top, &Config::default()).map_err(|e| e.to_string())
}

fn bettis(c: &ChainComplex, degrees: std::ops::RangeInclusive<usize>) -> Result<Vec<usize>, String> {
    degrees.map(|n| betti(c, n).map_err(|e| e.to_string())).collect()
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Check {
    if got == want {
        Ok(format!("{what} = {got:?}"))
    } else {
        Err(format!("{what} = {got:?}, expected {want:?}"))
    }
}

fn c1() -> Check {
    let g = LieAlgebra::sl2();
    let c = build(&g, &Representation::trivial(&g, 1), ComplexKind::Loday, 5)?;
    expect("HL_0..4(sl2)", bettis(&c, 0..=4)?, vec![1, 0, 0, 0, 0])
}

fn c2() -> Check {
    let g = LieAlgebra::sl2();
    let c = build(&g, &Representation::trivial(&g, 1), ComplexKind::CE, 3)?;
    let b = betti_numbers(&c).map_err(|e| e.to_string())?;
    let d2 = c.boundary(2).map_err(|e| e.to_string())?;
    let d3 = c.boundary(3).map_err(|e| e.to_string())?;
    expect("H_0..3(sl2), rank d2, rank d3", (b, rank(d2), rank(d3)), (vec![1, 0, 0, 1], 3, 0))
}

fn c3() -> Check {
    let mut checked = 0;
    for (name, g) in corpus() {
        for (coeff, m) in coefficients(&g) {
            // build() itself rejects a nonzero composite; recheck explicitly.
            let lod = build(&g, &m, ComplexKind::Loday, 4)?;
            let top = g.dim().min(4);
            let ce = build(&g, &m, ComplexKind::CE, top)?;
            for n in 2..=4 {
                let sq = lod.boundary(n - 1).unwrap().matmul(lod.boundary(n).unwrap()).unwrap();
                if !sq.is_zero() {
                    return Err(format!("{name} {coeff}: Loday d{}∘d{n} != 0", n - 1));
                }
                checked += 1;
            }
            for n in 2..=top {
                let sq = ce.boundary(n - 1).unwrap().matmul(ce.boundary(n).unwrap()).unwrap();
                if !sq.is_zero() {
                    return Err(format!("{name} {coeff}: CE d{}∘d{n} != 0", n - 1));
                }
                checked += 1;
            }
            for n in 1..=top {
                let lhs = quotient_chain_map(&g, &m, n - 1).matmul(lod.boundary(n).unwrap()).unwrap();
                let rhs = ce.boundary(n).unwrap().matmul(&quotient_chain_map(&g, &m, n)).unwrap();
                if lhs != rhs {
                    return Err(format!("{name} {coeff}: π∘δ != d∘π in degree {n}"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} matrix identities exact"))
}

fn c4() -> Check {
    let mut pairs = 0;
    for (name, g) in corpus() {
        for (coeff, m) in coefficients(&g) {
            let lod = build(&g, &m, ComplexKind::Loday, 2)?;
            let ce = build(&g, &m, ComplexKind::CE, 2.min(g.dim()))?;
            let (a, b) = (bettis(&lod, 0..=1)?, bettis(&ce, 0..=1)?);
            if a != b {
                return Err(format!("{name} {coeff}: Loday {a:?} vs CE {b:?}"));
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} (algebra, coefficient) pairs agree in degrees 0, 1"))
}

fn c5() -> Check {
    let mut rows = Vec::new();
    for (name, g) in corpus().into_iter().filter(|(n, _)| !n.starts_with("abelian")) {
        let triv = build(&g, &Representation::trivial(&g, 1), ComplexKind::Loday, 4)?;
        let adj = build(&g, &Representation::adjoint(&g), ComplexKind::Loday, 3)?;
        let (a, b) = (bettis(&triv, 1..=3)?, bettis(&adj, 0..=2)?);
        if a != b {
            return Err(format!("{name}: HL_(p+1)(g) = {a:?} vs HL_p(g, g) = {b:?}"));
        }
        rows.push(format!("{name} {a:?}"));
    }
    Ok(rows.join(", "))
}

fn c6() -> Check {
    let s = LieAlgebra::sl2();
    let ad = Representation::adjoint(&s);
    let ours = coinvariants_dim(&ad.tensor(&ad).map_err(|e| e.to_string())?);
    let oracle_ad = common::adjoint(&common::sl2());
    let oracle = common::coinvariants(&common::tensor(&oracle_ad, &oracle_ad));
    expect("dim H_0(sl2, ad⊗ad) (library, dense oracle)", (ours, oracle), (1, 1))
}

fn c7() -> Check {
    let ld = build_counterexample();
    let hs = hochschild_serre_check(&ld, 3, &Config::default()).map_err(|e| e.to_string())?;
    let sides: Vec<(usize, usize)> = hs.rows.iter().map(|r| (r.direct, r.decomposed)).collect();
    if !hs.agrees() {
        return Err(format!("sides differ: {sides:?}"));
    }
    expect("(direct, decomposed) for n = 0..=3", sides, vec![(0, 0), (1, 1), (1, 1), (0, 0)])
}

fn c8() -> Check {
    let r = full_report(&build_counterexample(), 3, &Config::default()).map_err(|e| e.to_string())?;
    for c in [Condition::Iii, Condition::Iv, Condition::V] {
        if r.condition(c).verdict() != Verdict::FailsAt(1) {
            return Err(format!("condition {} verdict {:?}", c.name(), r.condition(c).verdict()));
        }
    }
    let bad = r.condition(Condition::Ii).rows.iter().find(|row| !row.holds() && row.degree <= 2);
    let Some(&hlcalc::lemma1::ConditionRow { degree, data: RowData::Map { source_dim, target_dim, rank } }) = bad else {
        return Err("condition (ii) bijective through degree 2".into());
    };
    let failures = r.consistency_failures();
    if !failures.is_empty() {
        return Err(failures.join("; "));
    }
    Ok(format!(
        "(iii), (iv), (v) fail at 1; (ii) fails at degree {degree} (rank {rank}, {source_dim} -> {target_dim}); exact sequence consistent"
    ))
}

fn c9() -> Check {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_hlcalc"))
            .args(["counterexample", "--max-degree", "3"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    if a.status.code() != Some(0) {
        return Err(format!("exit status {:?}", a.status.code()));
    }
    if a.stdout != b.stdout {
        return Err("two runs differ".into());
    }
    let text = String::from_utf8_lossy(&a.stdout);
    let verdict = text.lines().find(|l| l.starts_with("verdict:")).ok_or("no verdict line")?;
    if !verdict.contains("is false") || !text.contains("consistency checks: all passed") {
        return Err(verdict.to_string());
    }
    Ok(format!("exit 0, byte-identical ({} bytes), {verdict}", a.stdout.len()))
}

fn peak_rss_kib() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

fn c10() -> Check {
    let g = build_counterexample().total().clone();
    let d5 = hlcalc::complexes::loday_boundary(&g, &Representation::trivial(&g, 1), 5).map_err(|e| e.to_string())?;
    let r = rank(&d5);
    let shape = (d5.rows(), d5.cols());
    if shape != (1296, 7776) {
        return Err(format!("shape {shape:?}"));
    }
    let rss = peak_rss_kib();
    if rss.is_some_and(|k| k > 2 * 1024 * 1024) {
        return Err(format!("peak memory {} MiB", rss.unwrap() / 1024));
    }
    let mem = rss.map_or("peak memory unknown".to_string(), |k| format!("peak memory {} MiB", k / 1024));
    Ok(format!("1296x7776, nnz {}, rank {r}, {mem}", d5.nnz()))
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, Duration, fn() -> Check); 10] = [
        (1, "semisimple vanishing, Loday sl2", Duration::from_secs(10), c1),
        (2, "CE homology of sl2", Duration::from_secs(1), c2),
        (3, "boundary and diagram suite", Duration::from_secs(120), c3),
        (4, "degree 0/1 agreement", Duration::MAX, c4),
        (5, "shift identity", Duration::MAX, c5),
        (6, "coinvariants of ad⊗ad", Duration::MAX, c6),
        (7, "Hochschild-Serre dimensions", Duration::from_secs(120), c7),
        (8, "condition failure bundle", Duration::from_secs(300), c8),
        (9, "refutation report", Duration::MAX, c9),
        (10, "degree-5 scale guard", Duration::from_secs(300), c10),
    ];
    let mut failed = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > limit => Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS  {name} [{elapsed:.2?}]: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name} [{elapsed:.2?}]: {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
