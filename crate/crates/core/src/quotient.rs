//! Symplectic quotients of unstable strata at shifted levels.
//!
//! For a nonzero `β ∈ B` and `ε > 0` the quotient is
//! `(Y_β ∩ μ⁻¹((1+ε)β)) / T`. Combinatorially it is the torus quotient of the
//! coordinates in `y_support(β)` with weights shifted by `-(1+ε)β`. Its type
//! changes only at the walls: levels `s` along the ray `s·β` where some
//! subset of the `Y_β` weights starts or stops containing `s·β`.

use std::collections::BTreeSet;

use num_traits::{One, Signed};

use crate::action::{SupportSet, WeightSystem};
use crate::cohomology::{quotient_betti, Polynomial};
use crate::error::QuotientError;
use crate::geometry::{affine_rank, hull_position_of_origin, ray_hull_window, HullPosition};
use crate::rational::{format_rational, RationalVector, Q};
use crate::strata::StratumIndex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonWindow {
    /// Levels `s > 0` along `s·β` where the semistable support family changes.
    pub walls: Vec<Q>,
    /// First wall beyond `s = 1`, minus one: the quotient type is constant for `ε ∈ (0, eps_max)`.
    pub eps_max: Option<Q>,
    pub empty_for_all_eps: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientReport {
    pub beta: RationalVector,
    pub epsilon: Q,
    pub nonempty: bool,
    pub complex_dim: Option<usize>,
    pub betti: Option<Polynomial>,
    pub locally_free: bool,
    /// Supports `S ⊆ y_support` with `(1+ε)β ∈ conv{α_i : i ∈ S}`, in canonical order.
    pub semistable_supports: Vec<SupportSet>,
    pub stabilizer_roots: Vec<RationalVector>,
}

impl QuotientReport {
    /// Equality of everything except the sampled `ε`.
    pub fn same_quotient(&self, other: &QuotientReport) -> bool {
        QuotientReport {
            epsilon: other.epsilon.clone(),
            ..self.clone()
        } == *other
    }
}

/// One ε-chamber: the open interval `(lo, hi)` and the report at its midpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientChamber {
    pub lo: Q,
    pub hi: Q,
    pub report: QuotientReport,
}

fn y_weights(si: &StratumIndex, ws: &WeightSystem) -> Vec<RationalVector> {
    ws.support_weights(&si.y_support)
}

pub fn epsilon_window(si: &StratumIndex, ws: &WeightSystem) -> Result<EpsilonWindow, QuotientError> {
    if si.beta.is_zero() {
        return Err(QuotientError::ZeroBeta);
    }
    let ys = y_weights(si, ws);
    let mut distinct: Vec<RationalVector> = Vec::new();
    for w in &ys {
        if !distinct.contains(w) {
            distinct.push(w.clone());
        }
    }
    let all = SupportSet::new((0..distinct.len()).collect(), distinct.len())
        .expect("y-support is nonempty");
    let mut walls = BTreeSet::new();
    for s in all.subsets() {
        let pts: Vec<RationalVector> = s.iter().map(|i| distinct[i].clone()).collect();
        if let Some(w) = ray_hull_window(&si.beta, &pts).map_err(crate::StrataError::from)? {
            walls.extend([w.lo, w.hi].into_iter().filter(Signed::is_positive));
        }
    }
    let full = ray_hull_window(&si.beta, &ys).map_err(crate::StrataError::from)?;
    let one = Q::one();
    let empty_for_all_eps = full.is_none_or(|w| w.hi <= one);
    let eps_max = if empty_for_all_eps {
        None
    } else {
        walls.iter().find(|w| **w > one).map(|w| w - &one)
    };
    Ok(EpsilonWindow {
        walls: walls.into_iter().collect(),
        eps_max,
        empty_for_all_eps,
    })
}

pub fn unstable_quotient(
    si: &StratumIndex,
    ws: &WeightSystem,
    eps: &Q,
) -> Result<QuotientReport, QuotientError> {
    if si.beta.is_zero() {
        return Err(QuotientError::ZeroBeta);
    }
    if !eps.is_positive() {
        return Err(QuotientError::NonPositiveEpsilon);
    }
    let level = si.beta.scale(&(Q::one() + eps));
    let shifted = ws.shifted(&si.y_support, &level);
    let y = si.y_support.indices();
    let full_rank = affine_rank(shifted.weights()).map_err(crate::StrataError::from)?;

    let mut semistable = Vec::new();
    let mut locally_free = true;
    for local in shifted.full_support().subsets() {
        let pts = shifted.support_weights(&local);
        let pos = hull_position_of_origin(&pts).map_err(crate::StrataError::from)?;
        if pos == HullPosition::Outside {
            continue;
        }
        if pos != HullPosition::Interior
            || affine_rank(&pts).map_err(crate::StrataError::from)? != full_rank
        {
            locally_free = false;
        }
        let global = local.iter().map(|k| y[k]).collect();
        semistable.push(SupportSet::new(global, ws.len()).expect("subset of y-support"));
    }
    semistable.sort();
    let nonempty = !semistable.is_empty();

    let (complex_dim, betti) = if nonempty && locally_free {
        let dim = (si.y_support.len() - 1) - full_rank;
        (Some(dim), Some(quotient_betti(&shifted)?))
    } else {
        (None, None)
    };
    Ok(QuotientReport {
        beta: si.beta.clone(),
        epsilon: eps.clone(),
        nonempty,
        complex_dim,
        betti,
        locally_free,
        semistable_supports: semistable,
        stabilizer_roots: si.stabilizer_roots.clone(),
    })
}

/// Splits `{ε > 0 : (1+ε)β ∈ μ(Y_β)}` into open chambers between consecutive
/// walls, with one report per chamber.
pub fn quotient_family(
    si: &StratumIndex,
    ws: &WeightSystem,
) -> Result<Vec<QuotientChamber>, QuotientError> {
    let window = epsilon_window(si, ws)?;
    if window.empty_for_all_eps {
        return Ok(Vec::new());
    }
    let one = Q::one();
    let mut bounds = vec![Q::from_integer(0.into())];
    bounds.extend(window.walls.iter().filter(|w| **w > one).map(|w| w - &one));

    let mut out = Vec::new();
    for pair in bounds.windows(2) {
        let (lo, hi) = (&pair[0], &pair[1]);
        let width = hi - lo;
        let mid = lo + &width / Q::from_integer(2.into());
        let report = unstable_quotient(si, ws, &mid)?;
        for k in [1, 2] {
            let sample = lo + &width * Q::new(k.into(), 3.into());
            if !unstable_quotient(si, ws, &sample)?.same_quotient(&report) {
                return Err(QuotientError::ChamberInconsistent {
                    lo: format_rational(lo),
                    hi: format_rational(hi),
                });
            }
        }
        out.push(QuotientChamber {
            lo: lo.clone(),
            hi: hi.clone(),
            report,
        });
    }
    Ok(out)
}
