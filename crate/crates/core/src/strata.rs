//! The index set B of the normsquare stratification and per-stratum data.
//!
//! For a diagonal torus action on `P^n` a point with support `S` lies in the
//! stratum indexed by the closest point to 0 of `conv{α_i : i ∈ S}`. The index
//! set consists of those closest points `β` that are also the closest point of
//! the weights on their own level hyperplane `{α : <α,β> = <β,β>}`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};

use num_traits::Zero;

use crate::action::{chamber_membership, RootDatum, SupportSet, WeightSystem};
use crate::error::StrataError;
use crate::geometry::{hull_position_of_origin, min_norm_point, HullPosition};
use crate::rational::{RationalVector, Q};

/// Largest number of homogeneous coordinates accepted by [`strata_partition`].
pub const MAX_PARTITION_COORDS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumIndex {
    pub beta: RationalVector,
    pub norm_sq: Q,
    /// `{i : <α_i,β> = <β,β>}`, the coordinates of the critical set `Z_β`.
    pub z_support: SupportSet,
    /// `{i : <α_i,β> >= <β,β>}`, the coordinates of `Y_β`.
    pub y_support: SupportSet,
    /// Complex codimension `d(β)` of the stratum.
    pub codim: usize,
    /// Fiber dimension `m_β` of `Y_β → Z_β`.
    pub fiber_dim: usize,
    /// Roots `γ ∈ R` with `<γ,β> = 0`; empty for a torus.
    pub stabilizer_roots: Vec<RationalVector>,
}

impl StratumIndex {
    pub fn is_zero(&self) -> bool {
        self.beta.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StabilityClass {
    Unstable(RationalVector),
    Semistable,
    Stable,
}

impl StabilityClass {
    /// The stratum label: `β` for unstable points, `0` otherwise.
    pub fn beta(&self, rank: usize) -> RationalVector {
        match self {
            StabilityClass::Unstable(b) => b.clone(),
            _ => RationalVector::zeros(rank),
        }
    }
}

/// Canonical order on B: norm first, then coordinates.
pub fn stratum_order(ws: &WeightSystem, a: &RationalVector, b: &RationalVector) -> Ordering {
    ws.ip()
        .norm_sq(a)
        .cmp(&ws.ip().norm_sq(b))
        .then_with(|| a.lex_cmp(b))
}

/// Distinct weight vectors, and for each coordinate the index of its weight among them.
fn distinct_weights(ws: &WeightSystem) -> (Vec<RationalVector>, Vec<usize>) {
    let mut distinct: Vec<RationalVector> = Vec::new();
    let mut slot = Vec::with_capacity(ws.len());
    for w in ws.weights() {
        match distinct.iter().position(|d| d == w) {
            Some(k) => slot.push(k),
            None => {
                slot.push(distinct.len());
                distinct.push(w.clone());
            }
        }
    }
    (distinct, slot)
}

fn masked(points: &[RationalVector], mask: u64) -> Vec<RationalVector> {
    points
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, p)| p.clone())
        .collect()
}

/// Closest point of the hull for every nonempty subset of distinct weights, keyed by mask.
fn subset_min_norms(distinct: &[RationalVector], ws: &WeightSystem) -> HashMap<u64, RationalVector> {
    let k = distinct.len();
    (1u64..1 << k)
        .map(|m| {
            let beta = min_norm_point(&masked(distinct, m), ws.ip()).expect("validated weights");
            (m, beta)
        })
        .collect()
}

fn level_supports(ws: &WeightSystem, beta: &RationalVector) -> (SupportSet, SupportSet) {
    let level = ws.ip().norm_sq(beta);
    let mut z = Vec::new();
    let mut y = Vec::new();
    for (i, w) in ws.weights().iter().enumerate() {
        let d = ws.ip().dot(w, beta);
        match d.cmp(&level) {
            Ordering::Equal => {
                z.push(i);
                y.push(i);
            }
            Ordering::Greater => y.push(i),
            Ordering::Less => {}
        }
    }
    let n = ws.len();
    (
        SupportSet::new(z, n).expect("z-support of a candidate is nonempty"),
        SupportSet::new(y, n).expect("y-support contains z-support"),
    )
}

/// Builds the stratum record for `beta`, or `None` if `beta` fails the
/// criterion `β = closest point of conv{α_i : <α_i,β> = <β,β>}`.
pub fn stratum_for(
    ws: &WeightSystem,
    rd: Option<&RootDatum>,
    beta: &RationalVector,
) -> Result<Option<StratumIndex>, StrataError> {
    beta.check_rank(ws.rank())?;
    let level = ws.ip().norm_sq(beta);
    if !ws.weights().iter().any(|w| ws.ip().dot(w, beta) == level) {
        return Ok(None);
    }
    let (z, y) = level_supports(ws, beta);
    if min_norm_point(&ws.support_weights(&z), ws.ip())? != *beta {
        return Ok(None);
    }
    let mut si = StratumIndex {
        beta: beta.clone(),
        norm_sq: level,
        fiber_dim: y.len() - z.len(),
        z_support: z,
        y_support: y,
        codim: 0,
        stabilizer_roots: rd
            .map(|rd| {
                rd.all_roots()
                    .into_iter()
                    .filter(|g| rd.ip().dot(g, beta).is_zero())
                    .collect()
            })
            .unwrap_or_default(),
    };
    si.codim = stratum_codim(&si, ws, rd)?;
    Ok(Some(si))
}

/// The index set B, sorted by `(<β,β>, coordinates)`.
///
/// Candidates are the closest points of every nonempty subset of distinct
/// weights, so the cost is exponential in the number of distinct weights.
/// With root data, only `β` in the closed positive Weyl chamber are kept.
pub fn index_set(
    ws: &WeightSystem,
    rd: Option<&RootDatum>,
) -> Result<Vec<StratumIndex>, StrataError> {
    let (distinct, _) = distinct_weights(ws);
    let mut seen: HashSet<RationalVector> = HashSet::new();
    let mut candidates: Vec<RationalVector> = subset_min_norms(&distinct, ws)
        .into_values()
        .filter(|b| seen.insert(b.clone()))
        .collect();
    candidates.sort_by(|a, b| stratum_order(ws, a, b));

    let mut out = Vec::new();
    for beta in candidates {
        if let Some(rd) = rd {
            if !chamber_membership(&beta, rd)? {
                continue;
            }
        }
        if let Some(si) = stratum_for(ws, rd, &beta)? {
            out.push(si);
        }
    }
    Ok(out)
}

/// `d(β) = #{i : <α_i,β> < <β,β>} - #{γ ∈ R⁺ : <γ,β> > 0}`.
pub fn stratum_codim(
    si: &StratumIndex,
    ws: &WeightSystem,
    rd: Option<&RootDatum>,
) -> Result<usize, StrataError> {
    let below = (ws.len() - si.y_support.len()) as i64;
    let raised = rd.map_or(0, |rd| {
        rd.positive_roots()
            .iter()
            .filter(|g| rd.ip().dot(g, &si.beta) > Q::zero())
            .count()
    }) as i64;
    let d = below - raised;
    usize::try_from(d).map_err(|_| StrataError::NegativeCodim(d))
}

/// Hilbert–Mumford classification of a support in the torus case.
pub fn classify_support(s: &SupportSet, ws: &WeightSystem) -> StabilityClass {
    let pts = ws.support_weights(s);
    match hull_position_of_origin(&pts).expect("validated weights") {
        HullPosition::Interior => StabilityClass::Stable,
        HullPosition::Boundary => StabilityClass::Semistable,
        HullPosition::Outside => {
            StabilityClass::Unstable(min_norm_point(&pts, ws.ip()).expect("validated weights"))
        }
    }
}

/// Stratum label of every nonempty support (0 for semistable supports).
pub fn strata_partition(
    ws: &WeightSystem,
) -> Result<BTreeMap<SupportSet, RationalVector>, StrataError> {
    if ws.len() > MAX_PARTITION_COORDS {
        return Err(StrataError::TooLarge(ws.len()));
    }
    let (distinct, slot) = distinct_weights(ws);
    let betas = subset_min_norms(&distinct, ws);
    Ok((1u64..1 << ws.len())
        .map(|mask| {
            let s = SupportSet::from_mask(mask);
            let dmask = s.iter().fold(0u64, |m, i| m | 1 << slot[i]);
            (s, betas[&dmask].clone())
        })
        .collect())
}
