//! Sweep cones `∪_{w ∈ W^(P)} w·t₊` for a parabolic subset `S_P` of simple
//! roots, dominant representatives, and face data of the positive chamber.

use std::collections::HashSet;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use crate::action::{chamber_membership, RootDatum};
use crate::error::ImplosionError;
use crate::rational::{RationalVector, Q};

/// Largest parabolic Weyl group [`brute_force_sweep`] will enumerate.
pub const MAX_GROUP_ORDER: usize = 100_000;

type Matrix = Vec<Vec<Q>>;

/// A root datum together with the parabolic subset `S_P` (indices into the simple roots).
#[derive(Clone, Debug)]
pub struct ParabolicData {
    rd: RootDatum,
    sp: Vec<usize>,
    group: OnceLock<Result<Vec<Matrix>, ImplosionError>>,
}

impl ParabolicData {
    pub fn new(rd: RootDatum, mut sp: Vec<usize>) -> Result<Self, ImplosionError> {
        sp.sort_unstable();
        sp.dedup();
        if let Some(&bad) = sp.iter().find(|&&k| k >= rd.simple_roots().len()) {
            return Err(ImplosionError::BadSimpleIndex(bad));
        }
        Ok(ParabolicData {
            rd,
            sp,
            group: OnceLock::new(),
        })
    }

    pub fn root_datum(&self) -> &RootDatum {
        &self.rd
    }

    pub fn sp(&self) -> &[usize] {
        &self.sp
    }

    /// Positive roots lying in the span of the `S_P` simple roots (`R^(P) ∩ R⁺`).
    pub fn in_parabolic(&self, root: &RationalVector) -> bool {
        let target = if self
            .rd
            .positive_roots()
            .iter()
            .any(|r| r == root)
        {
            root.clone()
        } else {
            -root
        };
        match self.rd.simple_coordinates(&target) {
            Some(c) => c
                .iter()
                .enumerate()
                .all(|(k, ck)| ck.is_zero() || self.sp.contains(&k)),
            None => false,
        }
    }

    fn reflection_matrix(&self, alpha: &RationalVector) -> Matrix {
        let r = self.rd.rank();
        let g = self.rd.ip().gram();
        let norm = self.rd.ip().norm_sq(alpha);
        // (Gα)_j
        let g_alpha: Vec<Q> = (0..r)
            .map(|j| (0..r).fold(Q::zero(), |acc, k| acc + &g[j][k] * &alpha[k]))
            .collect();
        let two = Q::from_integer(2.into());
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let delta = if i == j { Q::one() } else { Q::zero() };
                        delta - &two * &alpha[i] * &g_alpha[j] / &norm
                    })
                    .collect()
            })
            .collect()
    }

    /// Elements of `W^(P)` as matrices, enumerated once by closure under the generators.
    fn group(&self) -> Result<&[Matrix], ImplosionError> {
        self.group
            .get_or_init(|| {
                let gens: Vec<Matrix> = self
                    .sp
                    .iter()
                    .map(|&k| self.reflection_matrix(&self.rd.simple_roots()[k]))
                    .collect();
                let r = self.rd.rank();
                let id = crate::geometry::linalg::identity(r);
                let mut seen: HashSet<Matrix> = HashSet::from([id.clone()]);
                let mut elems = vec![id];
                let mut frontier = 0;
                while frontier < elems.len() {
                    let w = elems[frontier].clone();
                    frontier += 1;
                    for s in &gens {
                        let sw = mat_mul(s, &w);
                        if seen.insert(sw.clone()) {
                            elems.push(sw);
                            if elems.len() > MAX_GROUP_ORDER {
                                return Err(ImplosionError::GroupTooLarge(MAX_GROUP_ORDER));
                            }
                        }
                    }
                }
                Ok(elems)
            })
            .as_deref()
            .map_err(Clone::clone)
    }
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(Q::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

fn apply(m: &Matrix, x: &RationalVector) -> RationalVector {
    RationalVector::new(
        m.iter()
            .map(|row| {
                row.iter()
                    .zip(x.coords())
                    .fold(Q::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect(),
    )
}

/// Reflects `xi` by simple reflections in `S_P` until it pairs nonnegatively
/// with every `S_P` root. The word lists simple-root labels (1-based) in the
/// order the reflections were applied.
pub fn dominant_representative(
    xi: &RationalVector,
    pd: &ParabolicData,
) -> Result<(RationalVector, Vec<usize>), ImplosionError> {
    xi.check_rank(pd.rd.rank())?;
    let simple = pd.rd.simple_roots();
    let ip = pd.rd.ip();
    let mut x = xi.clone();
    let mut word = Vec::new();
    // Each step lowers the length of the group element, which is at most |R⁺|.
    let limit = pd.rd.positive_roots().len();
    while let Some(&k) = pd
        .sp
        .iter()
        .find(|&&k| ip.dot(&x, &simple[k]).is_negative())
    {
        if word.len() >= limit {
            return Err(ImplosionError::DescentDiverged);
        }
        x = pd.rd.reflect(&x, &simple[k]);
        word.push(k + 1);
    }
    Ok((x, word))
}

/// Membership in the sweep cone via the dominant representative.
pub fn in_sweep_cone(xi: &RationalVector, pd: &ParabolicData) -> Result<bool, ImplosionError> {
    let (rep, _) = dominant_representative(xi, pd)?;
    Ok(chamber_membership(&rep, &pd.rd)?)
}

/// Membership in the sweep cone by enumerating `W^(P)`.
pub fn brute_force_sweep(xi: &RationalVector, pd: &ParabolicData) -> Result<bool, ImplosionError> {
    xi.check_rank(pd.rd.rank())?;
    for w in pd.group()? {
        if chamber_membership(&apply(w, xi), &pd.rd)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Order of `W^(P)`.
pub fn parabolic_group_order(pd: &ParabolicData) -> Result<usize, ImplosionError> {
    Ok(pd.group()?.len())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceData {
    /// Roots `α ∈ R` with `<ζ,α> = 0`, each positive root followed by its negative.
    pub vanishing_roots: Vec<RationalVector>,
    /// Positive vanishing roots outside `R^(P)`: the equations cutting out `ζ`'s face.
    pub face_equations: Vec<RationalVector>,
    pub stabilizer_is_torus: bool,
}

pub fn face_data(xi: &RationalVector, pd: &ParabolicData) -> Result<FaceData, ImplosionError> {
    if !chamber_membership(xi, &pd.rd)? {
        return Err(ImplosionError::NotInChamber);
    }
    let ip = pd.rd.ip();
    let mut vanishing_roots = Vec::new();
    let mut face_equations = Vec::new();
    for root in pd.rd.positive_roots() {
        if !ip.dot(xi, root).is_zero() {
            continue;
        }
        vanishing_roots.push(root.clone());
        vanishing_roots.push(-root);
        if !pd.in_parabolic(root) {
            face_equations.push(root.clone());
        }
    }
    Ok(FaceData {
        stabilizer_is_torus: face_equations.is_empty(),
        vanishing_roots,
        face_equations,
    })
}
