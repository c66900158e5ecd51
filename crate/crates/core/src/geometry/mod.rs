//! Exact convex-geometry kernels: inner products given by a Gram matrix,
//! LP hull membership, Wolfe's minimum-norm point and ray/hull windows.

pub mod linalg;
pub mod lp;
mod wolfe;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::GeometryError;
use crate::rational::{RationalVector, Q};

/// Invariant inner product on t, given by a symmetric positive definite Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerProduct {
    gram: Vec<Vec<Q>>,
}

impl InnerProduct {
    #[allow(clippy::needless_range_loop)]
    pub fn new(gram: Vec<Vec<Q>>) -> Result<Self, GeometryError> {
        let r = gram.len();
        if r == 0 || gram.iter().any(|row| row.len() != r) {
            return Err(GeometryError::BadGramShape(r));
        }
        for i in 0..r {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(GeometryError::NotSymmetric);
                }
            }
        }
        if !linalg::is_positive_definite(&gram) {
            return Err(GeometryError::NotPositiveDefinite);
        }
        Ok(InnerProduct { gram })
    }

    pub fn identity(rank: usize) -> Self {
        InnerProduct {
            gram: linalg::identity(rank),
        }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<Q>] {
        &self.gram
    }

    pub fn is_identity(&self) -> bool {
        self.gram == linalg::identity(self.rank())
    }

    pub fn dot(&self, u: &RationalVector, v: &RationalVector) -> Q {
        let mut acc = Q::zero();
        for (i, ui) in u.coords().iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.coords().iter().enumerate() {
                if vj.is_zero() || self.gram[i][j].is_zero() {
                    continue;
                }
                acc += ui * &self.gram[i][j] * vj;
            }
        }
        acc
    }

    pub fn norm_sq(&self, u: &RationalVector) -> Q {
        self.dot(u, u)
    }

    /// Float version of the form, for numerical code.
    pub fn dot_f64(&self, u: &[f64], v: &[f64]) -> f64 {
        let g = self.gram_f64();
        let mut acc = 0.0;
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                acc += ui * g[i][j] * vj;
            }
        }
        acc
    }

    pub fn gram_f64(&self) -> Vec<Vec<f64>> {
        use num_traits::ToPrimitive;
        self.gram
            .iter()
            .map(|row| row.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect())
            .collect()
    }
}

/// Position of the origin relative to the convex hull of a point set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HullPosition {
    Outside,
    Boundary,
    Interior,
}

/// A closed interval `[lo, hi]` of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Q,
    pub hi: Q,
}

impl Interval {
    pub fn contains(&self, s: &Q) -> bool {
        self.lo <= *s && *s <= self.hi
    }
}

fn check_points(points: &[RationalVector]) -> Result<usize, GeometryError> {
    let first = points.first().ok_or(GeometryError::EmptyInput)?;
    let r = first.rank();
    for p in points {
        p.check_rank(r)?;
    }
    Ok(r)
}

/// Closest point of `conv(points)` to the origin under `ip`.
pub fn min_norm_point(
    points: &[RationalVector],
    ip: &InnerProduct,
) -> Result<RationalVector, GeometryError> {
    let r = check_points(points)?;
    if r != ip.rank() {
        return Err(GeometryError::RankMismatch {
            expected: ip.rank(),
            found: r,
        });
    }
    Ok(wolfe::wolfe(points, ip).0)
}

/// Constraint rows for `sum_i lambda_i p_i = target, sum_i lambda_i = 1`.
fn convex_combination_system(
    points: &[RationalVector],
    target: &RationalVector,
) -> (Vec<Vec<Q>>, Vec<Q>) {
    let r = target.rank();
    let mut a: Vec<Vec<Q>> = (0..r)
        .map(|k| points.iter().map(|p| p[k].clone()).collect())
        .collect();
    let mut b: Vec<Q> = target.coords().to_vec();
    a.push(vec![Q::from_integer(1.into()); points.len()]);
    b.push(Q::from_integer(1.into()));
    (a, b)
}

/// Exact LP test for `target ∈ conv(points)`.
pub fn hull_contains(points: &[RationalVector], target: &RationalVector) -> bool {
    let (a, b) = convex_combination_system(points, target);
    lp::is_feasible(&a, &b).is_some()
}

/// Decides whether the origin lies outside, on the boundary of, or in the
/// interior of `conv(points)`, the interior being taken in the ambient space.
pub fn hull_position_of_origin(points: &[RationalVector]) -> Result<HullPosition, GeometryError> {
    let r = check_points(points)?;
    let origin = RationalVector::zeros(r);
    let (a, b) = convex_combination_system(points, &origin);
    let Some(feasible) = lp::is_feasible(&a, &b) else {
        return Ok(HullPosition::Outside);
    };
    if affine_rank(points)? < r {
        return Ok(HullPosition::Boundary);
    }
    // Strictly positive combination exists iff each weight can be made positive on its own.
    let n = points.len();
    for i in 0..n {
        if feasible[i].is_positive() {
            continue;
        }
        let mut c = vec![Q::zero(); n];
        c[i] = -Q::from_integer(1.into());
        match lp::minimize(&c, &a, &b) {
            lp::LpOutcome::Optimal { value, .. } if value.is_negative() => {}
            _ => return Ok(HullPosition::Boundary),
        }
    }
    Ok(HullPosition::Interior)
}

/// The set `{s >= 0 : s * direction ∈ conv(points)}`, or `None` if it is empty.
pub fn ray_hull_window(
    direction: &RationalVector,
    points: &[RationalVector],
) -> Result<Option<Interval>, GeometryError> {
    let r = check_points(points)?;
    direction.check_rank(r)?;
    if direction.is_zero() {
        return Err(GeometryError::ZeroDirection);
    }
    // Variables: lambda_0..lambda_{n-1}, s.
    let n = points.len();
    let (mut a, b) = convex_combination_system(points, &RationalVector::zeros(r));
    for (k, row) in a.iter_mut().enumerate() {
        row.push(if k < r { -direction[k].clone() } else { Q::zero() });
    }
    let mut c = vec![Q::zero(); n + 1];
    c[n] = Q::from_integer(1.into());
    let lo = match lp::minimize(&c, &a, &b) {
        lp::LpOutcome::Optimal { value, .. } => value,
        lp::LpOutcome::Infeasible => return Ok(None),
        lp::LpOutcome::Unbounded => unreachable!("s is bounded below by zero"),
    };
    c[n] = -Q::from_integer(1.into());
    let hi = match lp::minimize(&c, &a, &b) {
        lp::LpOutcome::Optimal { value, .. } => -value,
        other => unreachable!("bounded hull, nonzero direction: {other:?}"),
    };
    Ok(Some(Interval { lo, hi }))
}

/// Dimension of the affine span of `points`.
pub fn affine_rank(points: &[RationalVector]) -> Result<usize, GeometryError> {
    check_points(points)?;
    let base = &points[0];
    let rows: Vec<Vec<Q>> = points[1..]
        .iter()
        .map(|p| (p - base).into_coords())
        .collect();
    Ok(linalg::rank(&rows))
}
