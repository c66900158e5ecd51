//! Dense Gaussian elimination over the rationals.

#![allow(clippy::needless_range_loop)]

use num_traits::{One, Zero};

use crate::rational::Q;

/// Rank of a list of row vectors.
pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let inv = m[r][col].recip();
        for i in r + 1..m.len() {
            if m[i][col].is_zero() {
                continue;
            }
            let f = &m[i][col] * &inv;
            for j in col..ncols {
                let d = &f * &m[r][j];
                m[i][j] -= d;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Solves the square system `a x = b`. Returns `None` if `a` is singular.
pub fn solve(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Option<Vec<Q>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].recip();
        for j in col..n {
            a[col][j] *= &inv;
        }
        b[col] *= &inv;
        for i in 0..n {
            if i == col || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for j in col..n {
                let d = &f * &a[col][j];
                a[i][j] -= d;
            }
            let d = &f * &b[col];
            b[i] -= d;
        }
    }
    Some(b)
}

/// True iff every leading principal minor of the symmetric matrix is positive.
///
/// Elimination without pivoting: the k-th pivot is the ratio of the k-th and
/// (k-1)-th leading minors, so all minors are positive iff all pivots are.
pub fn is_positive_definite(g: &[Vec<Q>]) -> bool {
    let n = g.len();
    let mut m = g.to_vec();
    for k in 0..n {
        if m[k][k] <= Q::zero() {
            return false;
        }
        let inv = m[k][k].recip();
        for i in k + 1..n {
            let f = &m[i][k] * &inv;
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let d = &f * &m[k][j];
                m[i][j] -= d;
            }
        }
    }
    true
}

pub fn identity(n: usize) -> Vec<Vec<Q>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Q::one() } else { Q::zero() })
                .collect()
        })
        .collect()
}
