//! Integer lattice helpers: Hermite bases, coset representatives and Smith
//! invariant factors.
//!
//! Matrices are row lists of `i64`; intermediate arithmetic is done in `i128`
//! and entries are expected to stay small (relator exponent sums, incidence
//! counts).

use alloc::vec;
use alloc::vec::Vec;

/// Reduced row-echelon basis (Hermite normal form) of the Z-span of `rows`.
///
/// Pivots are positive and every entry above a pivot lies in `[0, pivot)`.
/// Zero rows are dropped. All rows must have length `dim`.
pub fn hermite_basis(rows: &[Vec<i64>], dim: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| {
            debug_assert_eq!(r.len(), dim);
            r.iter().map(|&x| x as i128).collect()
        })
        .filter(|r: &Vec<i128>| r.iter().any(|&x| x != 0))
        .collect();
    let mut basis: Vec<Vec<i128>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for col in 0..dim {
        loop {
            // smallest nonzero entry in this column
            let pick = m
                .iter()
                .enumerate()
                .filter(|(_, r)| r[col] != 0)
                .min_by_key(|(_, r)| r[col].abs())
                .map(|(i, _)| i);
            let Some(p) = pick else { break };
            let pivot_row = m.swap_remove(p);
            let pv = pivot_row[col];
            let mut done = true;
            for r in m.iter_mut() {
                if r[col] != 0 {
                    let q = r[col].div_euclid(pv);
                    for (x, y) in r.iter_mut().zip(pivot_row.iter()) {
                        *x -= q * y;
                    }
                    if r[col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                let mut row = pivot_row;
                if row[col] < 0 {
                    row.iter_mut().for_each(|x| *x = -*x);
                }
                basis.push(row);
                pivots.push(col);
                m.retain(|r| r.iter().any(|&x| x != 0));
                break;
            }
            m.push(pivot_row);
        }
    }
    // reduce entries above pivots
    for i in 0..basis.len() {
        let (col, pv) = (pivots[i], basis[i][pivots[i]]);
        for j in 0..i {
            let q = basis[j][col].div_euclid(pv);
            if q != 0 {
                let src = basis[i].clone();
                for (x, y) in basis[j].iter_mut().zip(src.iter()) {
                    *x -= q * y;
                }
            }
        }
    }
    basis
        .into_iter()
        .map(|r| r.into_iter().map(|x| x as i64).collect())
        .collect()
}

/// Canonical representative of `v` modulo the lattice spanned by a Hermite
/// basis: each pivot coordinate is brought into `[0, pivot)`.
pub fn reduce_mod(basis: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    let mut out: Vec<i128> = v.iter().map(|&x| x as i128).collect();
    for row in basis {
        let Some(col) = row.iter().position(|&x| x != 0) else { continue };
        let pv = row[col] as i128;
        let q = out[col].div_euclid(pv);
        if q != 0 {
            for (x, &y) in out.iter_mut().zip(row.iter()) {
                *x -= q * y as i128;
            }
        }
    }
    out.into_iter().map(|x| x as i64).collect()
}

/// Whether `v` lies in the Z-span of the Hermite basis.
pub fn in_lattice(basis: &[Vec<i64>], v: &[i64]) -> bool {
    reduce_mod(basis, v).iter().all(|&x| x == 0)
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Smith normal form invariants of an integer matrix with `cols` columns.
///
/// Returns the nonzero diagonal entries as a divisibility chain
/// `d1 | d2 | ... | dr` (units included); `r` is the rank.
pub fn smith_diagonal(rows: &[Vec<i64>], cols: usize) -> Vec<u64> {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let nrows = m.len();
    let mut diag: Vec<i128> = Vec::new();
    let mut t = 0usize;
    while t < nrows.min(cols) {
        // choose the smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..cols {
                if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let pv = m[t][t];
            let mut dirty = false;
            for i in t + 1..nrows {
                if m[i][t] != 0 {
                    let q = m[i][t].div_euclid(pv);
                    let src = m[t].clone();
                    for (x, y) in m[i].iter_mut().zip(src.iter()) {
                        *x -= q * y;
                    }
                    if m[i][t] != 0 {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if m[t][j] != 0 {
                    let q = m[t][j].div_euclid(pv);
                    for row in m.iter_mut() {
                        let y = row[t];
                        row[j] -= q * y;
                    }
                    if m[t][j] != 0 {
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
            // move the smallest remaining entry of row/column t to the pivot
            let mut best = (t, t);
            for i in t..nrows {
                if m[i][t] != 0 && m[i][t].abs() < m[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if m[t][j] != 0 && m[t][j].abs() < m[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            m.swap(t, best.0);
            for row in m.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    // normalise into a divisibility chain
    let k = diag.len();
    for i in 0..k {
        for j in i + 1..k {
            let (a, b) = (diag[i], diag[j]);
            let g = gcd(a, b);
            let l = if g == 0 { 0 } else { a / g * b };
            diag[i] = g;
            diag[j] = l;
        }
    }
    let mut out: Vec<u64> = diag.into_iter().map(|d| d as u64).collect();
    out.sort_unstable();
    out
}

/// Identity matrix rows of size `n`.
pub fn identity_rows(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| {
            let mut r = vec![0; n];
            r[i] = 1;
            r
        })
        .collect()
}
