//! Built-in example algebras.

use crate::scalar::{int, rat};
use crate::superalg::{build_algebra, BracketEntry, LieSuperalgebra};

fn names(v: &[&str]) -> Option<Vec<String>> {
    Some(v.iter().map(|s| s.to_string()).collect())
}

fn build(de: usize, dodd: usize, n: &[&str], table: &[BracketEntry]) -> LieSuperalgebra {
    build_algebra(de, dodd, names(n), table).expect("corpus algebra is valid")
}

/// `[X, Y] = Z` on the basis `Z, X, Y`.
pub fn heisenberg() -> LieSuperalgebra {
    build(3, 0, &["Z", "X", "Y"], &[BracketEntry::new(1, 2, vec![(0, int(1))])])
}

/// Heisenberg-Clifford algebra on `Z, X₁..X_m, Y₁..Y_m, V₁..V_n` with
/// `[X_i, Y_i] = Z` and `[V_j, V_j] = c_j Z`.
pub fn hc(m: usize, signs: &[i64]) -> LieSuperalgebra {
    let n = signs.len();
    let mut nm = vec!["Z".to_string()];
    nm.extend((1..=m).map(|i| format!("X{i}")));
    nm.extend((1..=m).map(|i| format!("Y{i}")));
    nm.extend((1..=n).map(|j| format!("V{j}")));
    let mut table: Vec<BracketEntry> = (0..m).map(|i| BracketEntry::new(1 + i, 1 + m + i, vec![(0, int(1))])).collect();
    let de = 1 + 2 * m;
    table.extend(signs.iter().enumerate().map(|(j, &c)| BracketEntry::new(de + j, de + j, vec![(0, int(c))])));
    build_algebra(de, n, Some(nm), &table).expect("Heisenberg-Clifford algebra is valid")
}

/// `hc_1_2_pp`, `hc_0_2_pm`, `hc_1_0`, ...
pub fn hc_name(m: usize, signs: &[i64]) -> String {
    let s: String = signs.iter().map(|&c| if c > 0 { 'p' } else { 'm' }).collect();
    if s.is_empty() {
        format!("hc_{m}_0")
    } else {
        format!("hc_{m}_{}_{s}", signs.len())
    }
}

/// All sign vectors of length `n`, plus signs first.
pub fn sign_patterns(n: usize) -> Vec<Vec<i64>> {
    (0..1u32 << n).map(|mask| (0..n).map(|j| if mask & (1 << (n - 1 - j)) != 0 { -1 } else { 1 }).collect()).collect()
}

/// `(m, signs)` for `m ≤ 2`, `n ≤ 3`, excluding the zero algebra.
pub fn hc_family() -> Vec<(usize, Vec<i64>)> {
    let mut out = Vec::new();
    for m in 0..=2 {
        for n in 0..=3 {
            if m == 0 && n == 0 {
                continue;
            }
            out.extend(sign_patterns(n).into_iter().map(|s| (m, s)));
        }
    }
    out
}

/// `Z, X, Y | V` with `[X, Y] = Z`, `[V, V] = Z`.
pub fn mixed() -> LieSuperalgebra {
    build(3, 1, &["Z", "X", "Y", "V"], &[BracketEntry::new(1, 2, vec![(0, int(1))]), BracketEntry::new(3, 3, vec![(0, int(1))])])
}

/// As [`mixed`] but with `V` central and `[V, V] = 0`.
pub fn mixed_degenerate() -> LieSuperalgebra {
    build(3, 1, &["Z", "X", "Y", "V"], &[BracketEntry::new(1, 2, vec![(0, int(1))])])
}

/// Filiform even part `[X, Y₁] = Y₂`, `[X, Y₂] = Y₃` with an odd pair
/// `[X, V₁] = V₂`, `[V₁, V₁] = Y₂`, `[V₁, V₂] = ½Y₃`.
pub fn filiform_odd() -> LieSuperalgebra {
    build(
        4,
        2,
        &["X", "Y1", "Y2", "Y3", "V1", "V2"],
        &[
            BracketEntry::new(0, 1, vec![(2, int(1))]),
            BracketEntry::new(0, 2, vec![(3, int(1))]),
            BracketEntry::new(0, 4, vec![(5, int(1))]),
            BracketEntry::new(4, 4, vec![(2, int(1))]),
            BracketEntry::new(4, 5, vec![(3, rat(1, 2))]),
        ],
    )
}

pub fn filiform4() -> LieSuperalgebra {
    build(4, 0, &["X", "Y1", "Y2", "Y3"], &[BracketEntry::new(0, 1, vec![(2, int(1))]), BracketEntry::new(0, 2, vec![(3, int(1))])])
}

pub fn abelian_odd() -> LieSuperalgebra {
    build(0, 2, &["V1", "V2"], &[])
}

/// `[V₁, V₂] = Z`: the odd form is hyperbolic.
pub fn hyperbolic_pair() -> LieSuperalgebra {
    build(1, 2, &["Z", "V1", "V2"], &[BracketEntry::new(1, 2, vec![(0, int(1))])])
}

/// The full corpus in a fixed order.
pub fn corpus() -> Vec<(String, LieSuperalgebra)> {
    let mut out = vec![("heisenberg".to_string(), heisenberg())];
    out.extend(hc_family().into_iter().map(|(m, s)| (hc_name(m, &s), hc(m, &s))));
    out.push(("mixed".into(), mixed()));
    out.push(("mixed_degenerate".into(), mixed_degenerate()));
    out.push(("filiform_odd".into(), filiform_odd()));
    out.push(("filiform4".into(), filiform4()));
    out.push(("abelian_odd".into(), abelian_odd()));
    out.push(("hyperbolic_pair".into(), hyperbolic_pair()));
    out
}

pub fn by_name(name: &str) -> Option<LieSuperalgebra> {
    corpus().into_iter().find(|(n, _)| n == name).map(|(_, a)| a)
}
