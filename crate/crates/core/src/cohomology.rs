//! Equivariant Poincaré series through the equivariantly perfect stratification.
//!
//! All series live in `Z[q] / (1-q)^e` with `q = t²`. For a torus `T` of rank `r`
//! acting on `P^n`, `P^T(P^n) = (1 + q + … + q^n) / (1-q)^r` and
//!
//! ```text
//! P^T(X^ss) = P^T(X) - Σ_{β ≠ 0} q^{d(β)} P^T(Z_β^ss)
//! ```
//!
//! where `Z_β^ss` is the semistable locus of the weights `{α_i - β : i ∈ Z_β}`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::Serialize;

use crate::action::{SupportSet, WeightSystem};
use crate::error::{CohomologyError, StrataError};
use crate::geometry::{affine_rank, hull_position_of_origin, HullPosition};
use crate::rational::RationalVector;
use crate::strata::index_set;

/// Integer polynomial in `q`, coefficients in increasing degree, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Polynomial(Vec<i64>);

impl Polynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Polynomial(coeffs)
    }

    pub fn zero() -> Self {
        Polynomial(Vec::new())
    }

    pub fn one() -> Self {
        Polynomial(vec![1])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval_at_one(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn shift(&self, d: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![0; d];
        c.extend_from_slice(&self.0);
        Polynomial(c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![0; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Polynomial::new(c)
    }

    /// Multiplies by `(1-q)^k`.
    fn times_one_minus_q(&self, k: u32) -> Self {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.mul(&Polynomial(vec![1, -1]));
        }
        p
    }

    /// Divides by `(1-q)`; requires `p(1) = 0`.
    fn div_one_minus_q(&self) -> Self {
        debug_assert_eq!(self.eval_at_one(), 0);
        let mut acc = 0;
        let c: Vec<i64> = self
            .0
            .iter()
            .map(|x| {
                acc += x;
                acc
            })
            .collect();
        Polynomial::new(c)
    }

    pub fn is_palindromic(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.0.len().max(rhs.0.len());
        Polynomial::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&0) + rhs.0.get(i).unwrap_or(&0))
                .collect(),
        )
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            let var = match k {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{k}"),
            };
            let body = if k == 0 {
                mag.to_string()
            } else if mag == 1 {
                var
            } else {
                format!("{mag}{var}")
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

/// `numerator / (1-q)^denom_power` in canonical form: when `denom_power > 0`
/// the numerator does not vanish at `q = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PoincareSeries {
    pub numerator: Polynomial,
    pub denom_power: u32,
}

impl PoincareSeries {
    pub fn new(numerator: Polynomial, denom_power: u32) -> Self {
        let mut s = PoincareSeries {
            numerator,
            denom_power,
        };
        s.canonicalize();
        s
    }

    pub fn zero() -> Self {
        PoincareSeries::new(Polynomial::zero(), 0)
    }

    fn canonicalize(&mut self) {
        if self.numerator.is_zero() {
            self.denom_power = 0;
            return;
        }
        while self.denom_power > 0 && self.numerator.eval_at_one() == 0 {
            self.numerator = self.numerator.div_one_minus_q();
            self.denom_power -= 1;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.denom_power == 0
    }

    /// Multiplies by `q^d`.
    pub fn shift(&self, d: usize) -> Self {
        PoincareSeries {
            numerator: self.numerator.shift(d),
            denom_power: self.denom_power,
        }
    }

    /// Power-series coefficients of degrees `0..=max_degree`.
    pub fn expand(&self, max_degree: usize) -> Vec<i64> {
        // 1/(1-q)^e = Σ C(k+e-1, e-1) q^k
        let mut inv = vec![0i64; max_degree + 1];
        inv[0] = 1;
        for _ in 0..self.denom_power {
            for k in 1..=max_degree {
                inv[k] += inv[k - 1];
            }
        }
        (0..=max_degree)
            .map(|k| {
                self.numerator
                    .coeffs()
                    .iter()
                    .enumerate()
                    .take_while(|(i, _)| *i <= k)
                    .map(|(i, c)| c * inv[k - i])
                    .sum()
            })
            .collect()
    }
}

impl Add for &PoincareSeries {
    type Output = PoincareSeries;
    fn add(self, rhs: &PoincareSeries) -> PoincareSeries {
        let e = self.denom_power.max(rhs.denom_power);
        let a = self.numerator.times_one_minus_q(e - self.denom_power);
        let b = rhs.numerator.times_one_minus_q(e - rhs.denom_power);
        PoincareSeries::new(&a + &b, e)
    }
}

impl Neg for &PoincareSeries {
    type Output = PoincareSeries;
    fn neg(self) -> PoincareSeries {
        PoincareSeries {
            numerator: -&self.numerator,
            denom_power: self.denom_power,
        }
    }
}

impl Sub for &PoincareSeries {
    type Output = PoincareSeries;
    fn sub(self, rhs: &PoincareSeries) -> PoincareSeries {
        self + &(-rhs)
    }
}

impl fmt::Display for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.denom_power {
            0 => write!(f, "{}", self.numerator),
            e => {
                let den = if e == 1 {
                    "(1-q)".to_string()
                } else {
                    format!("(1-q)^{e}")
                };
                write!(f, "({})/{den}", self.numerator)
            }
        }
    }
}

/// `H*_T(P^n)` for a rank-`r` torus: `(1 + q + … + q^n) / (1-q)^r`.
pub fn projective_space_series(n: usize, r: usize) -> PoincareSeries {
    PoincareSeries::new(Polynomial::new(vec![1; n + 1]), r as u32)
}

type Memo = HashMap<Vec<RationalVector>, PoincareSeries>;

fn memo_key(ws: &WeightSystem) -> Vec<RationalVector> {
    let mut k = ws.weights().to_vec();
    k.sort_by(|a, b| a.lex_cmp(b));
    k
}

fn semistable_rec(ws: &WeightSystem, memo: &mut Memo) -> Result<PoincareSeries, StrataError> {
    let key = memo_key(ws);
    if let Some(s) = memo.get(&key) {
        return Ok(s.clone());
    }
    let mut total = projective_space_series(ws.dim(), ws.rank());
    for si in index_set(ws, None)? {
        if si.is_zero() {
            continue;
        }
        let critical = ws.shifted(&si.z_support, &si.beta);
        let sub = semistable_rec(&critical, memo)?;
        total = &total - &sub.shift(si.codim);
    }
    memo.insert(key, total.clone());
    Ok(total)
}

/// `P^T(X^ss)` by the stratification recursion. Torus case only.
pub fn semistable_series(ws: &WeightSystem) -> Result<PoincareSeries, StrataError> {
    semistable_rec(ws, &mut Memo::new())
}

/// `P^T(Z_β^ss)` for a stratum: the semistable series of the shifted critical weights.
pub fn critical_series(
    ws: &WeightSystem,
    z_support: &SupportSet,
    beta: &RationalVector,
) -> Result<PoincareSeries, StrataError> {
    semistable_series(&ws.shifted(z_support, beta))
}

/// First support (in mask order) whose hull contains 0 but not in its ambient interior,
/// or whose weights span less than the full weight configuration.
pub fn strictly_semistable_support(ws: &WeightSystem) -> Option<SupportSet> {
    let full_rank = affine_rank(ws.weights()).expect("validated weights");
    ws.full_support().subsets().find(|s| {
        let pts = ws.support_weights(s);
        match hull_position_of_origin(&pts).expect("validated weights") {
            HullPosition::Outside => false,
            HullPosition::Boundary => true,
            HullPosition::Interior => affine_rank(&pts).expect("nonempty") != full_rank,
        }
    })
}

/// Even Betti numbers of `X//T` when every semistable point is stable.
pub fn quotient_betti(ws: &WeightSystem) -> Result<Polynomial, CohomologyError> {
    if let Some(s) = strictly_semistable_support(ws) {
        return Err(CohomologyError::StrictlySemistable(s));
    }
    let series = semistable_series(ws)?;
    if !series.is_polynomial() {
        return Err(CohomologyError::NotPolynomial);
    }
    Ok(series.numerator)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumTerm {
    pub beta: RationalVector,
    pub codim: usize,
    pub series: PoincareSeries,
}

/// Both sides of `P^T(X) = Σ_β q^{d(β)} P^T(Z_β^ss)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectionCertificate {
    pub lhs: PoincareSeries,
    pub rhs: PoincareSeries,
    pub terms: Vec<StratumTerm>,
    pub equal: bool,
}

pub fn perfection_certificate(ws: &WeightSystem) -> Result<PerfectionCertificate, StrataError> {
    let lhs = projective_space_series(ws.dim(), ws.rank());
    let mut memo = Memo::new();
    let mut rhs = PoincareSeries::zero();
    let mut terms = Vec::new();
    for si in index_set(ws, None)? {
        let series = if si.is_zero() {
            semistable_rec(ws, &mut memo)?
        } else {
            semistable_rec(&ws.shifted(&si.z_support, &si.beta), &mut memo)?
        };
        rhs = &rhs + &series.shift(si.codim);
        terms.push(StratumTerm {
            beta: si.beta,
            codim: si.codim,
            series,
        });
    }
    Ok(PerfectionCertificate {
        equal: lhs == rhs,
        lhs,
        rhs,
        terms,
    })
}
