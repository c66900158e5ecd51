//! Linearized torus actions on projective space: weights, the invariant form,
//! optional root data, and the JSON input document.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{ActionError, GeometryError};
use crate::geometry::{linalg, InnerProduct};
use crate::rational::{format_rational, parse_rational, RationalVector, Q};

/// Weights `α_0..α_n` of a diagonal torus action on `P^n`, with the inner product on t.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    rank: usize,
    weights: Vec<RationalVector>,
    ip: InnerProduct,
    labels: Option<Vec<String>>,
}

impl WeightSystem {
    pub fn new(
        weights: Vec<RationalVector>,
        ip: InnerProduct,
        labels: Option<Vec<String>>,
    ) -> Result<Self, ActionError> {
        if weights.is_empty() {
            return Err(ActionError::validation("weights", "at least one weight required"));
        }
        let rank = ip.rank();
        if weights.iter().any(|w| w.rank() != rank) {
            return Err(ActionError::validation("weights", "rank mismatch"));
        }
        if let Some(l) = &labels {
            if l.len() != weights.len() {
                return Err(ActionError::validation(
                    "labels",
                    "one label per weight required",
                ));
            }
            let distinct: BTreeSet<&String> = l.iter().collect();
            if distinct.len() != l.len() {
                return Err(ActionError::validation("labels", "labels must be distinct"));
            }
        }
        Ok(WeightSystem {
            rank,
            weights,
            ip,
            labels,
        })
    }

    /// Weights with the standard inner product.
    pub fn with_identity(weights: Vec<RationalVector>) -> Result<Self, ActionError> {
        let rank = weights
            .first()
            .map(RationalVector::rank)
            .ok_or_else(|| ActionError::validation("weights", "at least one weight required"))?;
        if rank == 0 {
            return Err(ActionError::validation("rank", "rank must be positive"));
        }
        Self::new(weights, InnerProduct::identity(rank), None)
    }

    /// Rank-one convenience constructor from integer weights.
    pub fn from_ints(weights: &[i64]) -> Self {
        Self::with_identity(
            weights
                .iter()
                .map(|&w| RationalVector::from_ints(&[w]))
                .collect(),
        )
        .expect("nonempty rank-one weights")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `n + 1`, the number of homogeneous coordinates.
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Dimension `n` of the projective space.
    pub fn dim(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn weights(&self) -> &[RationalVector] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> &RationalVector {
        &self.weights[i]
    }

    pub fn ip(&self) -> &InnerProduct {
        &self.ip
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn support_weights(&self, s: &SupportSet) -> Vec<RationalVector> {
        s.iter().map(|i| self.weights[i].clone()).collect()
    }

    /// Same inner product, new weights.
    pub fn with_weights(&self, weights: Vec<RationalVector>) -> Self {
        WeightSystem {
            rank: self.rank,
            weights,
            ip: self.ip.clone(),
            labels: None,
        }
    }

    /// Weights `{α_i - shift : i ∈ s}`.
    pub fn shifted(&self, s: &SupportSet, shift: &RationalVector) -> Self {
        self.with_weights(s.iter().map(|i| &self.weights[i] - shift).collect())
    }

    pub fn full_support(&self) -> SupportSet {
        SupportSet((0..self.len()).collect())
    }
}

/// Positive and simple roots of a compact group with maximal torus T, expressed in t.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    positive: Vec<RationalVector>,
    simple: Vec<RationalVector>,
    ip: InnerProduct,
}

impl RootDatum {
    pub fn new(
        simple: Vec<RationalVector>,
        positive: Vec<RationalVector>,
        ip: InnerProduct,
    ) -> Result<Self, ActionError> {
        let rank = ip.rank();
        let bad = |m: &str| ActionError::validation("roots", m);
        if simple.iter().chain(&positive).any(|r| r.rank() != rank) {
            return Err(bad("rank mismatch"));
        }
        if positive.iter().any(RationalVector::is_zero) {
            return Err(bad("zero root"));
        }
        let distinct: BTreeSet<Vec<Q>> = positive.iter().map(|r| r.coords().to_vec()).collect();
        if distinct.len() != positive.len() {
            return Err(bad("duplicate positive root"));
        }
        if simple.iter().any(|s| !positive.contains(s)) {
            return Err(bad("simple roots must be positive roots"));
        }
        let rows: Vec<Vec<Q>> = simple.iter().map(|s| s.coords().to_vec()).collect();
        if linalg::rank(&rows) != simple.len() {
            return Err(bad("simple roots linearly dependent"));
        }
        let rd = RootDatum {
            positive,
            simple,
            ip,
        };
        for root in &rd.positive {
            let coeffs = rd
                .simple_coordinates(root)
                .ok_or_else(|| bad(&format!("root {root} not in the span of simple roots")))?;
            if coeffs.iter().any(|c| !c.is_integer() || c.is_negative()) {
                return Err(bad(&format!(
                    "root {root} is not a nonnegative integer combination of simple roots"
                )));
            }
        }
        let all = rd.all_roots();
        for alpha in &rd.simple {
            for gamma in &all {
                if !all.contains(&rd.reflect(gamma, alpha)) {
                    return Err(bad(&format!(
                        "roots not closed under the reflection in {alpha}"
                    )));
                }
            }
        }
        Ok(rd)
    }

    /// Torus case: no roots at all.
    pub fn empty(ip: InnerProduct) -> Self {
        RootDatum {
            positive: Vec::new(),
            simple: Vec::new(),
            ip,
        }
    }

    pub fn positive_roots(&self) -> &[RationalVector] {
        &self.positive
    }

    pub fn simple_roots(&self) -> &[RationalVector] {
        &self.simple
    }

    pub fn ip(&self) -> &InnerProduct {
        &self.ip
    }

    pub fn rank(&self) -> usize {
        self.ip.rank()
    }

    /// `R = R⁺ ∪ -R⁺`, positives first in input order, then their negatives.
    pub fn all_roots(&self) -> Vec<RationalVector> {
        self.positive
            .iter()
            .cloned()
            .chain(self.positive.iter().map(|r| -r))
            .collect()
    }

    /// `s_α(x) = x - 2<x,α>/<α,α> α`
    pub fn reflect(&self, x: &RationalVector, alpha: &RationalVector) -> RationalVector {
        let c = Q::from_integer(2.into()) * self.ip.dot(x, alpha) / self.ip.norm_sq(alpha);
        x.add_scaled(&-c, alpha)
    }

    /// Coefficients of `v` in the basis of simple roots, if `v` lies in their span.
    pub fn simple_coordinates(&self, v: &RationalVector) -> Option<Vec<Q>> {
        let k = self.simple.len();
        if k == 0 {
            return v.is_zero().then(Vec::new);
        }
        let std = |a: &RationalVector, b: &RationalVector| -> Q {
            a.coords()
                .iter()
                .zip(b.coords())
                .map(|(x, y)| x * y)
                .fold(Q::zero(), |acc, t| acc + t)
        };
        let a: Vec<Vec<Q>> = self
            .simple
            .iter()
            .map(|si| self.simple.iter().map(|sj| std(si, sj)).collect())
            .collect();
        let b: Vec<Q> = self.simple.iter().map(|si| std(si, v)).collect();
        let c = linalg::solve(a, b)?;
        let mut back = RationalVector::zeros(v.rank());
        for (ci, si) in c.iter().zip(&self.simple) {
            back = back.add_scaled(ci, si);
        }
        (back == *v).then_some(c)
    }
}

/// A nonempty set of coordinate indices: the coordinates of a point that are nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SupportSet(Vec<usize>);

impl SupportSet {
    pub fn new(mut indices: Vec<usize>, n_coords: usize) -> Option<Self> {
        indices.sort_unstable();
        indices.dedup();
        if indices.is_empty() || indices.iter().any(|&i| i >= n_coords) {
            return None;
        }
        Some(SupportSet(indices))
    }

    pub fn from_mask(mask: u64) -> Self {
        SupportSet((0..64).filter(|i| mask >> i & 1 == 1).collect())
    }

    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &i| m | 1 << i)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn is_subset(&self, other: &SupportSet) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    /// Nonempty subsets, in increasing mask order.
    pub fn subsets(&self) -> impl Iterator<Item = SupportSet> + '_ {
        let k = self.0.len();
        (1u64..1 << k).map(move |m| {
            SupportSet(
                (0..k)
                    .filter(|b| m >> b & 1 == 1)
                    .map(|b| self.0[b])
                    .collect(),
            )
        })
    }
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Normalized coordinate masses `t_i = |x_i|² / |x|²` of a point of `P^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSample {
    masses: Vec<Q>,
}

impl PointSample {
    pub fn new(masses: Vec<Q>) -> Result<Self, ActionError> {
        if masses.iter().any(Signed::is_negative) {
            return Err(ActionError::validation("masses", "masses must be nonnegative"));
        }
        let total = masses.iter().fold(Q::zero(), |a, b| a + b);
        if total != Q::from_integer(1.into()) {
            return Err(ActionError::validation("masses", "masses must sum to 1"));
        }
        Ok(PointSample { masses })
    }

    /// Rescales nonnegative values to sum to one.
    pub fn normalized(values: Vec<Q>) -> Result<Self, ActionError> {
        let total = values.iter().fold(Q::zero(), |a, b| a + b);
        if !total.is_positive() {
            return Err(ActionError::validation("masses", "total mass must be positive"));
        }
        Self::new(values.into_iter().map(|v| v / &total).collect())
    }

    pub fn masses(&self) -> &[Q] {
        &self.masses
    }

    pub fn support(&self) -> SupportSet {
        SupportSet(
            self.masses
                .iter()
                .enumerate()
                .filter(|(_, t)| !t.is_zero())
                .map(|(i, _)| i)
                .collect(),
        )
    }
}

/// `μ_T(p) = Σ t_i α_i`.
pub fn moment_value(ws: &WeightSystem, p: &PointSample) -> RationalVector {
    assert_eq!(p.masses.len(), ws.len(), "mass vector length");
    ws.weights
        .iter()
        .zip(&p.masses)
        .fold(RationalVector::zeros(ws.rank), |acc, (w, t)| {
            acc.add_scaled(t, w)
        })
}

/// True iff `<xi, α> >= 0` for every simple root `α`.
pub fn chamber_membership(xi: &RationalVector, rd: &RootDatum) -> Result<bool, GeometryError> {
    xi.check_rank(rd.rank())?;
    Ok(rd
        .simple
        .iter()
        .all(|a| !rd.ip.dot(xi, a).is_negative()))
}

// ---- input document ----

#[derive(Deserialize)]
#[serde(untagged)]
enum RationalField {
    Int(i64),
    Str(String),
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RootsDocument<T> {
    simple: Vec<Vec<T>>,
    positive: Vec<Vec<T>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionDocument {
    rank: usize,
    weights: Vec<Vec<RationalField>>,
    #[serde(default)]
    gram: Option<Vec<Vec<RationalField>>>,
    #[serde(default)]
    labels: Option<Vec<String>>,
    #[serde(default)]
    roots: Option<RootsDocument<RationalField>>,
}

#[derive(Serialize)]
struct CanonicalDocument {
    rank: usize,
    weights: Vec<Vec<String>>,
    gram: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    roots: Option<RootsDocument<String>>,
}

fn rational_field(field: &str, x: &RationalField) -> Result<Q, ActionError> {
    match x {
        RationalField::Int(i) => Ok(Q::from_integer((*i).into())),
        RationalField::Str(s) => parse_rational(s)
            .ok_or_else(|| ActionError::Parse(format!("{field}: bad rational {s:?}"))),
    }
}

fn vectors(field: &str, rows: &[Vec<RationalField>]) -> Result<Vec<RationalVector>, ActionError> {
    rows.iter()
        .map(|row| {
            row.iter()
                .map(|x| rational_field(field, x))
                .collect::<Result<Vec<_>, _>>()
                .map(RationalVector::new)
        })
        .collect()
}

/// Parses and validates an action document. The Gram matrix defaults to the identity.
pub fn load_action(text: &str) -> Result<(WeightSystem, Option<RootDatum>), ActionError> {
    let doc: ActionDocument =
        serde_json::from_str(text).map_err(|e| ActionError::Parse(e.to_string()))?;
    if doc.rank == 0 {
        return Err(ActionError::validation("rank", "rank must be positive"));
    }
    let weights = vectors("weights", &doc.weights)?;
    if weights.is_empty() {
        return Err(ActionError::validation("weights", "at least one weight required"));
    }
    if weights.iter().any(|w| w.rank() != doc.rank) {
        return Err(ActionError::validation("weights", "rank mismatch"));
    }
    let ip = match &doc.gram {
        None => InnerProduct::identity(doc.rank),
        Some(g) => {
            let rows: Vec<Vec<Q>> = vectors("gram", g)?
                .into_iter()
                .map(RationalVector::into_coords)
                .collect();
            if rows.len() != doc.rank || rows.iter().any(|r| r.len() != doc.rank) {
                return Err(ActionError::validation("gram", "rank mismatch"));
            }
            InnerProduct::new(rows).map_err(|e| match e {
                GeometryError::NotPositiveDefinite => {
                    ActionError::validation("gram", "gram not positive definite")
                }
                other => ActionError::validation("gram", other.to_string()),
            })?
        }
    };
    let ws = WeightSystem::new(weights, ip.clone(), doc.labels)?;
    let rd = match &doc.roots {
        None => None,
        Some(r) => Some(RootDatum::new(
            vectors("roots", &r.simple)?,
            vectors("roots", &r.positive)?,
            ip,
        )?),
    };
    Ok((ws, rd))
}

fn strings(v: &RationalVector) -> Vec<String> {
    v.coords().iter().map(format_rational).collect()
}

/// Canonical JSON for a validated action; `load_action` inverts it.
pub fn serialize_action(ws: &WeightSystem, rd: Option<&RootDatum>) -> String {
    let doc = CanonicalDocument {
        rank: ws.rank,
        weights: ws.weights.iter().map(strings).collect(),
        gram: ws
            .ip
            .gram()
            .iter()
            .map(|row| row.iter().map(format_rational).collect())
            .collect(),
        labels: ws.labels.clone(),
        roots: rd.map(|rd| RootsDocument {
            simple: rd.simple.iter().map(strings).collect(),
            positive: rd.positive.iter().map(strings).collect(),
        }),
    };
    serde_json::to_string(&doc).expect("canonical document serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    #[test]
    fn load_rank_one() {
        let (ws, rd) = load_action(r#"{"rank": 1, "weights": [[2],[1],[-1]]}"#).unwrap();
        assert_eq!(ws.rank(), 1);
        assert_eq!(ws.dim(), 2);
        assert!(rd.is_none());
        assert!(ws.ip().is_identity());
    }

    #[test]
    fn load_rejects_bad_gram() {
        let err = load_action(r#"{"rank": 2, "weights": [[1,0]], "gram": [[1,0],[0,-1]]}"#)
            .unwrap_err();
        assert_eq!(
            err,
            ActionError::validation("gram", "gram not positive definite")
        );
        assert!(err.to_string().contains("gram not positive definite"));
    }

    #[test]
    fn load_rejects_mixed_lengths() {
        let err = load_action(r#"{"rank": 2, "weights": [[1,0],[1]]}"#).unwrap_err();
        assert_eq!(err, ActionError::validation("weights", "rank mismatch"));
    }

    #[test]
    fn load_parse_errors() {
        assert!(matches!(load_action("{"), Err(ActionError::Parse(_))));
        assert!(matches!(
            load_action(r#"{"rank": 1, "weights": [["1/0"]]}"#),
            Err(ActionError::Parse(_))
        ));
        assert!(matches!(
            load_action(r#"{"rank": 1, "weights": [[1.5]]}"#),
            Err(ActionError::Parse(_))
        ));
    }

    #[test]
    fn load_labels_and_roots() {
        let doc = r#"{"rank": 3, "weights": [[1,0,0],[0,1,0],[0,0,1]],
            "labels": ["a","b","c"],
            "roots": {"simple": [[1,-1,0],[0,1,-1]], "positive": [[1,-1,0],[0,1,-1],[1,0,-1]]}}"#;
        let (ws, rd) = load_action(doc).unwrap();
        assert_eq!(ws.labels().unwrap().len(), 3);
        assert_eq!(rd.unwrap().positive_roots().len(), 3);

        let dup = r#"{"rank": 1, "weights": [[1],[2]], "labels": ["a","a"]}"#;
        assert!(matches!(
            load_action(dup),
            Err(ActionError::Validation { field, .. }) if field == "labels"
        ));
    }

    #[test]
    fn bad_root_data() {
        // A_2 missing the highest root: not reflection-closed.
        let doc = r#"{"rank": 3, "weights": [[1,0,0]],
            "roots": {"simple": [[1,-1,0],[0,1,-1]], "positive": [[1,-1,0],[0,1,-1]]}}"#;
        assert!(matches!(
            load_action(doc),
            Err(ActionError::Validation { field, .. }) if field == "roots"
        ));
        let doc = r#"{"rank": 1, "weights": [[1]],
            "roots": {"simple": [[2]], "positive": [[2],[3]]}}"#;
        assert!(load_action(doc).is_err());
    }

    #[test]
    fn round_trip() {
        let doc = r#"{"rank": 2, "weights": [["1/2", 3], [-1, "4/6"]],
            "gram": [[2, 1], [1, 2]], "labels": ["x", "y"]}"#;
        let (ws, rd) = load_action(doc).unwrap();
        let text = serialize_action(&ws, rd.as_ref());
        let (ws2, rd2) = load_action(&text).unwrap();
        assert_eq!(ws, ws2);
        assert_eq!(rd, rd2);
        assert_eq!(ws2.weight(1)[1], qf(2, 3));
    }

    #[test]
    fn moment_values() {
        let ws = WeightSystem::from_ints(&[2, 1, -1]);
        let p = PointSample::new(vec![q(1), q(0), q(0)]).unwrap();
        assert_eq!(moment_value(&ws, &p), RationalVector::from_ints(&[2]));
        let p = PointSample::new(vec![qf(1, 2), qf(1, 2), q(0)]).unwrap();
        assert_eq!(moment_value(&ws, &p), RationalVector::new(vec![qf(3, 2)]));

        let ws2 = WeightSystem::with_identity(vec![
            RationalVector::from_ints(&[1, 0]),
            RationalVector::from_ints(&[0, 1]),
        ])
        .unwrap();
        let p = PointSample::new(vec![qf(1, 3), qf(2, 3)]).unwrap();
        assert_eq!(
            moment_value(&ws2, &p),
            RationalVector::new(vec![qf(1, 3), qf(2, 3)])
        );
        assert!(PointSample::new(vec![qf(1, 2), qf(1, 3)]).is_err());
    }

    #[test]
    fn chamber() {
        let ip = InnerProduct::identity(3);
        let a1 = RationalVector::from_ints(&[1, -1, 0]);
        let a2 = RationalVector::from_ints(&[0, 1, -1]);
        let a12 = RationalVector::from_ints(&[1, 0, -1]);
        let rd = RootDatum::new(vec![a1.clone(), a2.clone()], vec![a1, a2, a12], ip.clone())
            .unwrap();
        assert!(chamber_membership(&RationalVector::from_ints(&[2, 1, 0]), &rd).unwrap());
        assert!(!chamber_membership(&RationalVector::from_ints(&[0, 1, 0]), &rd).unwrap());
        let torus = RootDatum::empty(ip);
        assert!(chamber_membership(&RationalVector::from_ints(&[-5, 1, 0]), &torus).unwrap());
        assert!(chamber_membership(&RationalVector::from_ints(&[1]), &rd).is_err());
    }

    #[test]
    fn supports() {
        let s = SupportSet::new(vec![2, 0], 3).unwrap();
        assert_eq!(s.to_string(), "{0,2}");
        assert_eq!(SupportSet::from_mask(s.mask()), s);
        assert_eq!(s.subsets().count(), 3);
        assert!(SupportSet::new(vec![], 3).is_none());
        assert!(SupportSet::new(vec![3], 3).is_none());
    }
}
