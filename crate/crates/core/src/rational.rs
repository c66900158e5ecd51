//! Exact rationals and rational vectors.
//!
//! Everything in this crate is computed over `BigRational`, which keeps values in
//! lowest terms with a positive denominator, so `==` is structural equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Index, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::GeometryError;

/// Exact rational scalar.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"`, `"-p"` or `"p/q"`. The denominator must be nonzero.
pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(n, d))
        }
        None => BigInt::from_str(s).ok().map(Q::from_integer),
    }
}

/// Formats as `"p"` for integers and `"p/q"` otherwise.
pub fn format_rational(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// An element of the Cartan subalgebra t (identified with its dual).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct RationalVector(Vec<Q>);

impl RationalVector {
    pub fn new(coords: Vec<Q>) -> Self {
        RationalVector(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        RationalVector(coords.iter().map(|&c| q(c)).collect())
    }

    pub fn zeros(rank: usize) -> Self {
        RationalVector(vec![Q::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Q> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &Q) -> Self {
        RationalVector(self.0.iter().map(|c| c * s).collect())
    }

    /// `self + s * other`
    pub fn add_scaled(&self, s: &Q, other: &Self) -> Self {
        RationalVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + s * b)
                .collect(),
        )
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// Lexicographic comparison by numeric value of the coordinates.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.0.len().cmp(&other.0.len())
    }

    pub(crate) fn check_rank(&self, rank: usize) -> Result<(), GeometryError> {
        if self.rank() != rank {
            return Err(GeometryError::RankMismatch {
                expected: rank,
                found: self.rank(),
            });
        }
        Ok(())
    }
}

impl Index<usize> for RationalVector {
    type Output = Q;
    fn index(&self, i: usize) -> &Q {
        &self.0[i]
    }
}

impl Add for &RationalVector {
    type Output = RationalVector;
    fn add(self, rhs: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RationalVector {
    type Output = RationalVector;
    fn sub(self, rhs: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RationalVector {
    type Output = RationalVector;
    fn neg(self) -> RationalVector {
        RationalVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        if parts.len() == 1 {
            write!(f, "{}", parts[0])
        } else {
            write!(f, "({})", parts.join(","))
        }
    }
}

impl FromStr for RationalVector {
    type Err = String;

    /// Accepts comma-separated rationals, optionally wrapped in parentheses or brackets.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']']);
        if body.trim().is_empty() {
            return Err(format!("empty vector: {s:?}"));
        }
        body.split(',')
            .map(|p| parse_rational(p).ok_or_else(|| format!("bad rational {p:?}")))
            .collect::<Result<Vec<_>, _>>()
            .map(RationalVector)
    }
}

/// Serializes as a list of `"p/q"` strings.
impl Serialize for RationalVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter().map(format_rational))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6/-4"), Some(qf(-3, 2)));
        assert_eq!(parse_rational(" 7 "), Some(q(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(format_rational(&qf(4, 2)), "2");
        assert_eq!(format_rational(&qf(-2, 6)), "-1/3");
    }

    #[test]
    fn vector_from_str() {
        let v: RationalVector = "(1/2, -3)".parse().unwrap();
        assert_eq!(v, RationalVector::new(vec![qf(1, 2), q(-3)]));
        assert!("".parse::<RationalVector>().is_err());
        assert_eq!(v.to_string(), "(1/2,-3)");
    }
}
