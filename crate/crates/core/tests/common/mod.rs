//! Independent dense oracle: structure constants as raw integer tables,
//! boundaries from the explicit formulas, ranks by dense elimination modulo a
//! prime. Shares no code with the library beyond the conventions.

#![allow(dead_code)]

use hlcalc::lie::{LieAlgebra, Representation};
use hlcalc::linalg::{Rational, SparseMatrix};

pub const P: i64 = 2_147_483_629;

/// `br[i][j][k]` = coefficient of `e_k` in `[e_i, e_j]`.
#[derive(Debug, Clone)]
pub struct Alg {
    pub dim: usize,
    pub br: Vec<Vec<Vec<i64>>>,
}

/// `act[x][row][col]`
#[derive(Debug, Clone)]
pub struct Module {
    pub dim: usize,
    pub act: Vec<Vec<Vec<i64>>>,
}

fn alg_from(dim: usize, records: &[(usize, usize, usize, i64)]) -> Alg {
    let mut br = vec![vec![vec![0; dim]; dim]; dim];
    for &(i, j, k, c) in records {
        br[i][j][k] += c;
        br[j][i][k] -= c;
    }
    Alg { dim, br }
}

pub fn sl2() -> Alg {
    // e, h, f: [h,e] = 2e, [h,f] = -2f, [e,f] = h
    alg_from(3, &[(1, 0, 0, 2), (1, 2, 2, -2), (0, 2, 1, 1)])
}

pub fn heisenberg() -> Alg {
    alg_from(3, &[(0, 1, 2, 1)])
}

pub fn two_dim() -> Alg {
    alg_from(2, &[(0, 1, 1, 1)])
}

pub fn abelian(n: usize) -> Alg {
    alg_from(n, &[])
}

/// Basis `re, rh, rf, e, h, f`; `r` abelian, `[x, r_v] = r_[x,v]`.
pub fn counterexample() -> Alg {
    let s = sl2();
    let mut records = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for k in 0..3 {
                let c = s.br[a][b][k];
                if c != 0 && a < b {
                    records.push((3 + a, 3 + b, 3 + k, c));
                }
                if c != 0 {
                    records.push((3 + a, b, k, c));
                }
            }
        }
    }
    alg_from(6, &records)
}

pub fn trivial(g: &Alg, k: usize) -> Module {
    Module { dim: k, act: vec![vec![vec![0; k]; k]; g.dim] }
}

pub fn adjoint(g: &Alg) -> Module {
    let d = g.dim;
    let act = (0..d).map(|x| (0..d).map(|row| (0..d).map(|col| g.br[x][col][row]).collect()).collect()).collect();
    Module { dim: d, act }
}

pub fn dual(m: &Module) -> Module {
    let act = m
        .act
        .iter()
        .map(|a| (0..m.dim).map(|row| (0..m.dim).map(|col| -a[col][row]).collect()).collect())
        .collect();
    Module { dim: m.dim, act }
}

/// Adjoint action restricted to the coordinates `idx` (an ideal, or the
/// quotient by the complementary ideal).
pub fn restrict(g: &Alg, idx: &[usize]) -> Module {
    let act = (0..g.dim)
        .map(|x| idx.iter().map(|&row| idx.iter().map(|&col| g.br[x][col][row]).collect()).collect())
        .collect();
    Module { dim: idx.len(), act }
}

pub fn to_lie(g: &Alg) -> LieAlgebra {
    let labels = (0..g.dim).map(|i| format!("x{i}")).collect();
    let records = (0..g.dim).flat_map(|i| ((i + 1)..g.dim).map(move |j| (i, j))).map(|(i, j)| {
        let v: Vec<i64> = g.br[i][j].clone();
        (i, j, hlcalc::linalg::Vector::from_i64(&v))
    });
    LieAlgebra::new(labels, records.collect::<Vec<_>>()).expect("oracle algebra is Lie")
}

pub fn to_rep(m: &Module) -> Representation {
    let action = m
        .act
        .iter()
        .map(|a| {
            let rows: Vec<&[i64]> = a.iter().map(Vec::as_slice).collect();
            if m.dim == 0 {
                SparseMatrix::zeros(0, 0)
            } else {
                SparseMatrix::from_i64_rows(&rows)
            }
        })
        .collect();
    Representation::new(m.act.len(), m.dim, action).expect("oracle module shapes")
}

fn pow(d: usize, n: usize) -> usize {
    (0..n).fold(1, |a, _| a * d)
}

fn word(mut idx: usize, d: usize, n: usize) -> Vec<usize> {
    let mut w = vec![0; n];
    for k in (0..n).rev() {
        w[k] = idx % d;
        idx /= d;
    }
    w
}

fn enc(w: &[usize], d: usize) -> usize {
    w.iter().fold(0, |a, &x| a * d + x)
}

/// Dense `δ_n`, rows `m·d^(n-1) + word`, from
/// `δ(x_0⊗…⊗x_n) = Σ_{i<j} (-1)^j x_0⊗…⊗[x_i,x_j]⊗…x̂_j…`, `[m,x] = -x·m`.
pub fn loday(g: &Alg, m: &Module, n: usize) -> Vec<Vec<i64>> {
    let d = g.dim;
    let (src, dst) = (pow(d, n), pow(d, n - 1));
    let mut out = vec![vec![0i64; m.dim * src]; m.dim * dst];
    for mi in 0..m.dim {
        for w in 0..src {
            let x = word(w, d, n);
            let col = mi * src + w;
            for j in 1..=n {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                let mut rest: Vec<usize> = x.clone();
                rest.remove(j - 1);
                for r in 0..m.dim {
                    let a = m.act[x[j - 1]][r][mi];
                    if a != 0 {
                        out[r * dst + enc(&rest, d)][col] += sign * -a;
                    }
                }
                for i in 1..j {
                    for k in 0..d {
                        let b = g.br[x[i - 1]][x[j - 1]][k];
                        if b != 0 {
                            let mut y = rest.clone();
                            y[i - 1] = k;
                            out[mi * dst + enc(&y, d)][col] += sign * b;
                        }
                    }
                }
            }
        }
    }
    out
}

/// Increasing tuples of `0..d` of length `n` in colex order.
pub fn tuples(d: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(d: usize, n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            rec(d, n, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, n, 0, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    out
}

/// Sorted tuple with sign, or `None` on a repeat.
fn sort_sign(w: &[usize]) -> Option<(Vec<usize>, i64)> {
    let inv = (0..w.len()).flat_map(|a| ((a + 1)..w.len()).map(move |b| (a, b))).filter(|&(a, b)| w[a] > w[b]).count();
    let mut t = w.to_vec();
    t.sort_unstable();
    if t.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    Some((t, if inv % 2 == 0 { 1 } else { -1 }))
}

/// Dense `d_n` from the classical two-sum formula
/// `d(m⊗x_1∧…∧x_n) = Σ_j (-1)^(j+1) x_j·m ⊗ …x̂_j…
///                 + Σ_{i<j} (-1)^(i+j-1) m ⊗ [x_i,x_j]∧…x̂_i…x̂_j…`.
pub fn ce(g: &Alg, m: &Module, n: usize) -> Vec<Vec<i64>> {
    let d = g.dim;
    let src = tuples(d, n);
    let dst = tuples(d, n - 1);
    let pos = |t: &[usize]| dst.iter().position(|u| u == t).expect("tuple");
    let mut out = vec![vec![0i64; m.dim * src.len()]; m.dim * dst.len()];
    for mi in 0..m.dim {
        for (c, x) in src.iter().enumerate() {
            let col = mi * src.len() + c;
            for j in 1..=n {
                let sign = if (j + 1) % 2 == 0 { 1 } else { -1 };
                let rest: Vec<usize> = (1..=n).filter(|&k| k != j).map(|k| x[k - 1]).collect();
                for r in 0..m.dim {
                    let a = m.act[x[j - 1]][r][mi];
                    if a != 0 {
                        out[r * dst.len() + pos(&rest)][col] += sign * a;
                    }
                }
                for i in 1..j {
                    let sign = if (i + j - 1) % 2 == 0 { 1 } else { -1 };
                    let rest: Vec<usize> = (1..=n).filter(|&k| k != i && k != j).map(|k| x[k - 1]).collect();
                    for k in 0..d {
                        let b = g.br[x[i - 1]][x[j - 1]][k];
                        if b == 0 {
                            continue;
                        }
                        let mut w = vec![k];
                        w.extend(&rest);
                        if let Some((t, s)) = sort_sign(&w) {
                            out[mi * dst.len() + pos(&t)][col] += sign * s * b;
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn rank_mod_p(a: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i64>> = a.iter().map(|r| r.iter().map(|x| x.rem_euclid(P)).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, p);
        let inv = modpow(a[r][c], P - 2);
        for x in a[r].iter_mut() {
            *x = *x * inv % P;
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for k in c..cols {
                    a[i][k] = (a[i][k] - f * a[r][k] % P).rem_euclid(P);
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

fn modpow(mut b: i64, mut e: i64) -> i64 {
    let mut acc = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    acc
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |a, i| a * (n - i) / (i + 1))
}

/// Loday Betti numbers for degrees `0..=top` (boundaries through `top + 1`).
pub fn loday_betti(g: &Alg, m: &Module, top: usize) -> Vec<usize> {
    let ranks: Vec<usize> =
        (0..=top + 1).map(|n| if n == 0 { 0 } else { rank_mod_p(&loday(g, m, n)) }).collect();
    (0..=top).map(|n| m.dim * pow(g.dim, n) - ranks[n] - ranks[n + 1]).collect()
}

/// Full CE Betti numbers, degrees `0..=dim g`.
pub fn ce_betti(g: &Alg, m: &Module) -> Vec<usize> {
    let d = g.dim;
    let ranks: Vec<usize> =
        (0..=d + 1).map(|n| if n == 0 || n > d { 0 } else { rank_mod_p(&ce(g, m, n)) }).collect();
    (0..=d).map(|n| m.dim * binom(d, n) - ranks[n] - ranks[n + 1]).collect()
}

/// `dim M − rank [ρ_1 | … | ρ_k]`
pub fn coinvariants(m: &Module) -> usize {
    let stacked: Vec<Vec<i64>> = (0..m.dim).map(|row| m.act.iter().flat_map(|a| a[row].iter().copied()).collect()).collect();
    m.dim - rank_mod_p(&stacked)
}

/// `ρ ⊗ 1 + 1 ⊗ σ`, index `a·dim N + b`.
pub fn tensor(m: &Module, n: &Module) -> Module {
    let dim = m.dim * n.dim;
    let act = m
        .act
        .iter()
        .zip(&n.act)
        .map(|(a, b)| {
            let mut out = vec![vec![0; dim]; dim];
            for i in 0..m.dim {
                for j in 0..m.dim {
                    for k in 0..n.dim {
                        out[i * n.dim + k][j * n.dim + k] += a[i][j];
                    }
                }
            }
            for i in 0..m.dim {
                for k in 0..n.dim {
                    for l in 0..n.dim {
                        out[i * n.dim + k][i * n.dim + l] += b[k][l];
                    }
                }
            }
            out
        })
        .collect();
    Module { dim, act }
}

pub fn dense_eq(m: &SparseMatrix, d: &[Vec<i64>]) -> bool {
    let rows = d.len();
    let cols = d.first().map_or(m.cols(), Vec::len);
    m.rows() == rows
        && m.cols() == cols
        && (0..rows).all(|i| (0..cols).all(|j| m.get(i, j) == Rational::from_integer(d[i][j])))
}
