//! Exact dense linear algebra over Q.

use crate::series_core::{qo, qz, Q};
use num_traits::Zero;

/// Reduced row echelon form; returns the nonzero rows and pivot columns.
pub fn rref(mut rows: Vec<Vec<Q>>, ncols: usize) -> (Vec<Vec<Q>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r >= rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = qo() / &rows[r][c];
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Outcome of solving A x = b.
#[derive(Debug, Clone, PartialEq)]
pub enum Solution {
    /// No solution.
    Inconsistent,
    /// Particular solution (free variables zero) and a kernel basis.
    Affine { particular: Vec<Q>, kernel: Vec<Vec<Q>> },
}

/// Solves A x = b for rows of A with `ncols` unknowns.
pub fn solve(a: &[Vec<Q>], b: &[Q], ncols: usize) -> Solution {
    let rows: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut row = r.clone();
            row.resize(ncols, qz());
            row.push(v.clone());
            row
        })
        .collect();
    let (red, piv) = rref(rows, ncols + 1);
    if piv.last() == Some(&ncols) {
        return Solution::Inconsistent;
    }
    let mut x = vec![qz(); ncols];
    for (r, c) in piv.iter().enumerate() {
        x[*c] = red[r][ncols].clone();
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !piv.contains(c)).collect();
    let mut kernel = Vec::new();
    for f in free {
        let mut v = vec![qz(); ncols];
        v[f] = qo();
        for (r, c) in piv.iter().enumerate() {
            v[*c] = -red[r][f].clone();
        }
        kernel.push(v);
    }
    Solution::Affine { particular: x, kernel }
}

/// Unique solution of A x = b, if there is exactly one.
pub fn solve_unique(a: &[Vec<Q>], b: &[Q], ncols: usize) -> Option<Vec<Q>> {
    match solve(a, b, ncols) {
        Solution::Affine { particular, kernel } if kernel.is_empty() => Some(particular),
        _ => None,
    }
}

pub fn rank(a: &[Vec<Q>], ncols: usize) -> usize {
    rref(a.to_vec(), ncols).1.len()
}

/// Inverse of a square matrix.
pub fn inverse(a: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = a.len();
    let rows: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            for j in 0..n {
                row.push(if i == j { qo() } else { qz() });
            }
            row
        })
        .collect();
    let (red, piv) = rref(rows, 2 * n);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn det(a: &[Vec<Q>]) -> Q {
    let n = a.len();
    let mut m = a.to_vec();
    let mut d = qo();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return qz();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        let inv = qo() / &m[c][c];
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..n {
                let v = &f * &m[c][j];
                m[i][j] -= v;
            }
        }
    }
    d
}
