//! Two-phase dense simplex over the rationals with Bland's rule.
//!
//! Solves `minimize c·x subject to A x = b, x >= 0`. Bland's rule rules out
//! cycling, so the method terminates on every input.

use num_traits::{One, Signed, Zero};

use crate::rational::Q;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Q, x: Vec<Q> },
}

struct Tableau {
    /// Constraint rows; the last entry of each row is the right-hand side.
    rows: Vec<Vec<Q>>,
    /// Reduced costs; the last entry is minus the objective value.
    obj: Vec<Q>,
    basis: Vec<usize>,
}

impl Tableau {
    fn width(&self) -> usize {
        self.obj.len() - 1
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut Vec<Q>| {
            if row[c].is_zero() {
                return;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.basis[r] = c;
    }

    fn set_costs(&mut self, costs: &[Q]) {
        let w = self.width();
        let mut obj: Vec<Q> = costs.to_vec();
        obj.resize(w, Q::zero());
        obj.push(Q::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &obj[b].clone();
            if cb.is_zero() {
                continue;
            }
            for (o, v) in obj.iter_mut().zip(row) {
                *o -= cb * v;
            }
        }
        self.obj = obj;
    }

    /// Runs simplex iterations over columns `< ncols`. Returns false if unbounded.
    fn optimize(&mut self, ncols: usize) -> bool {
        loop {
            let Some(enter) = (0..ncols).find(|&j| self.obj[j].is_negative()) else {
                return true;
            };
            let rhs = self.width();
            let mut leave: Option<(usize, Q)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((l, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*l])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return false,
            }
        }
    }
}

pub fn minimize(c: &[Q], a: &[Vec<Q>], b: &[Q]) -> LpOutcome {
    let n = c.len();
    let m = b.len();
    debug_assert!(a.iter().all(|row| row.len() == n));

    // Phase one: one artificial per row, right-hand sides made nonnegative.
    let mut rows = Vec::with_capacity(m);
    for (i, (arow, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut row: Vec<Q> = arow
            .iter()
            .map(|v| if flip { -v } else { v.clone() })
            .collect();
        row.extend((0..m).map(|k| if k == i { Q::one() } else { Q::zero() }));
        row.push(if flip { -bi } else { bi.clone() });
        rows.push(row);
    }
    let mut tab = Tableau {
        rows,
        obj: vec![Q::zero(); n + m + 1],
        basis: (n..n + m).collect(),
    };
    let mut phase_one = vec![Q::zero(); n];
    phase_one.extend(std::iter::repeat_n(Q::one(), m));
    tab.set_costs(&phase_one);
    tab.optimize(n + m);
    if !tab.obj[n + m].is_zero() {
        return LpOutcome::Infeasible;
    }

    // Drive artificials out of the basis; rows where that is impossible are redundant.
    let mut i = 0;
    while i < tab.rows.len() {
        if tab.basis[i] >= n {
            match (0..n).find(|&j| !tab.rows[i][j].is_zero()) {
                Some(j) => tab.pivot(i, j),
                None => {
                    tab.rows.remove(i);
                    tab.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    for row in tab.rows.iter_mut() {
        let rhs = row[n + m].clone();
        row.truncate(n);
        row.push(rhs);
    }
    tab.obj = vec![Q::zero(); n + 1];
    tab.set_costs(c);
    if !tab.optimize(n) {
        return LpOutcome::Unbounded;
    }

    let mut x = vec![Q::zero(); n];
    for (row, &bv) in tab.rows.iter().zip(&tab.basis) {
        x[bv] = row[n].clone();
    }
    LpOutcome::Optimal {
        value: -tab.obj[n].clone(),
        x,
    }
}

pub fn is_feasible(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = a.first().map_or(0, Vec::len);
    match minimize(&vec![Q::zero(); n], a, b) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}
