//! Wolfe's minimum-norm-point method, run in exact arithmetic.
//!
//! The active set ("corral") is kept affinely independent. Each major cycle adds
//! the point most violating the optimality condition; minor cycles step toward
//! the affine minimizer of the corral, dropping points whose weight hits zero.

use num_traits::{One, Signed, Zero};

use super::linalg::solve;
use super::InnerProduct;
use crate::rational::{RationalVector, Q};

/// Barycentric weights of the minimum-norm point of the affine hull of `corral`.
fn affine_minimizer(gram: &[Vec<Q>], corral: &[usize]) -> Vec<Q> {
    let k = corral.len();
    let mut a = vec![vec![Q::zero(); k + 1]; k + 1];
    for (i, &ci) in corral.iter().enumerate() {
        for (j, &cj) in corral.iter().enumerate() {
            a[i][j] = gram[ci][cj].clone();
        }
        a[i][k] = Q::one();
        a[k][i] = Q::one();
    }
    let mut b = vec![Q::zero(); k + 1];
    b[k] = Q::one();
    let mut sol = solve(a, b).expect("corral is affinely independent");
    sol.truncate(k);
    sol
}

/// Returns the minimum-norm point of `conv(points)` together with its
/// barycentric weights (one per input point, zero outside the final corral).
pub(crate) fn wolfe(points: &[RationalVector], ip: &InnerProduct) -> (RationalVector, Vec<Q>) {
    let n = points.len();
    let gram: Vec<Vec<Q>> = points
        .iter()
        .map(|p| points.iter().map(|r| ip.dot(p, r)).collect())
        .collect();

    // <x, p_j> for x = sum lambda_s p_s
    let dot_x = |corral: &[usize], lambda: &[Q], j: usize| -> Q {
        corral
            .iter()
            .zip(lambda)
            .map(|(&s, l)| l * &gram[s][j])
            .fold(Q::zero(), |acc, v| acc + v)
    };

    let start = (0..n)
        .min_by(|&a, &b| gram[a][a].cmp(&gram[b][b]).then(a.cmp(&b)))
        .expect("nonempty point set");
    let mut corral = vec![start];
    let mut lambda = vec![Q::one()];

    loop {
        let x_sq = corral
            .iter()
            .zip(&lambda)
            .map(|(&s, l)| l * dot_x(&corral, &lambda, s))
            .fold(Q::zero(), |acc, v| acc + v);

        let mut best: Option<(usize, Q)> = None;
        for j in 0..n {
            let d = dot_x(&corral, &lambda, j);
            if best.as_ref().is_none_or(|(_, b)| d < *b) {
                best = Some((j, d));
            }
        }
        let (j, d) = best.expect("nonempty point set");
        if d >= x_sq {
            break;
        }
        corral.push(j);
        lambda.push(Q::zero());

        loop {
            let mu = affine_minimizer(&gram, &corral);
            if mu.iter().all(Signed::is_positive) {
                lambda = mu;
                break;
            }
            let theta = lambda
                .iter()
                .zip(&mu)
                .filter(|(_, m)| !m.is_positive())
                .map(|(l, m)| l / (l - m))
                .min()
                .expect("some weight is nonpositive");
            let one_minus = Q::one() - &theta;
            let mixed: Vec<Q> = lambda
                .iter()
                .zip(&mu)
                .map(|(l, m)| &one_minus * l + &theta * m)
                .collect();
            let (kept_c, kept_l): (Vec<usize>, Vec<Q>) = corral
                .iter()
                .copied()
                .zip(mixed)
                .filter(|(_, l)| !l.is_zero())
                .unzip();
            corral = kept_c;
            lambda = kept_l;
        }
    }

    let rank = points[0].rank();
    let mut x = RationalVector::zeros(rank);
    let mut weights = vec![Q::zero(); n];
    for (&s, l) in corral.iter().zip(&lambda) {
        x = x.add_scaled(l, &points[s]);
        weights[s] = l.clone();
    }
    (x, weights)
}
