//! Test-only oracles and random instance generators. Nothing here calls the
//! Wolfe solver or the library's LP; the oracles re-derive results from scratch.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeSet;

use kirwan_core::{InnerProduct, RationalVector, RootDatum, WeightSystem, Q};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn v(c: &[i64]) -> RationalVector {
    RationalVector::from_ints(c)
}

fn dot(ip: &InnerProduct, a: &[Q], b: &[Q]) -> Q {
    let g = ip.gram();
    let mut acc = Q::zero();
    for i in 0..a.len() {
        for j in 0..b.len() {
            acc += &a[i] * &g[i][j] * &b[j];
        }
    }
    acc
}

/// Gauss–Jordan solve with full rank check; `None` when singular.
fn gauss_solve(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Option<Vec<Q>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        b.swap(c, p);
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = &a[r][c] / &a[c][c];
                for k in c..n {
                    let t = &f * &a[c][k];
                    a[r][k] -= t;
                }
                let t = &f * &b[c];
                b[r] -= t;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

fn rank_of(rows: Vec<Vec<Q>>) -> usize {
    let mut m = rows;
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) {
            m.swap(r, p);
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero() {
                    let f = &m[i][c] / &m[r][c];
                    for k in 0..cols {
                        let t = &f * &m[r][k];
                        m[i][k] -= t;
                    }
                }
            }
            r += 1;
        }
    }
    r
}

fn affinely_independent(pts: &[&RationalVector]) -> bool {
    let rows: Vec<Vec<Q>> = pts[1..]
        .iter()
        .map(|p| (*p - pts[0]).into_coords())
        .collect();
    rank_of(rows) == pts.len() - 1
}

/// Closest point to 0 of `conv(points)`: project 0 onto the affine hull of every
/// affinely independent subset, keep projections inside the subset's simplex,
/// and take the one of least norm.
pub fn face_enumeration_min_norm(points: &[RationalVector], ip: &InnerProduct) -> RationalVector {
    let n = points.len();
    assert!(n > 0 && n < 24);
    let mut best: Option<(Q, RationalVector)> = None;
    for mask in 1u32..1 << n {
        let sub: Vec<&RationalVector> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| &points[i])
            .collect();
        if !affinely_independent(&sub) {
            continue;
        }
        let k = sub.len();
        let mut a = vec![vec![Q::zero(); k + 1]; k + 1];
        for i in 0..k {
            for j in 0..k {
                a[i][j] = dot(ip, sub[i].coords(), sub[j].coords());
            }
            a[i][k] = Q::one();
            a[k][i] = Q::one();
        }
        let mut b = vec![Q::zero(); k + 1];
        b[k] = Q::one();
        let mu = gauss_solve(a, b).expect("independent subset gives a nonsingular system");
        if mu[..k].iter().any(Signed::is_negative) {
            continue;
        }
        let mut p = RationalVector::zeros(points[0].rank());
        for (m, s) in mu.iter().zip(&sub) {
            p = p.add_scaled(m, s);
        }
        let norm = dot(ip, p.coords(), p.coords());
        if best.as_ref().is_none_or(|(bn, _)| norm < *bn) {
            best = Some((norm, p));
        }
    }
    best.expect("some vertex qualifies").1
}

/// Index set by brute force: oracle closest points of all supports, deduplicated,
/// filtered by the level-set criterion and (optionally) the Weyl chamber, sorted.
pub fn brute_force_index_set(ws: &WeightSystem, rd: Option<&RootDatum>) -> Vec<RationalVector> {
    let ip = ws.ip();
    let n = ws.len();
    let mut cands: BTreeSet<Vec<Q>> = BTreeSet::new();
    for mask in 1u32..1 << n {
        let pts: Vec<RationalVector> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| ws.weight(i).clone())
            .collect();
        cands.insert(face_enumeration_min_norm(&pts, ip).into_coords());
    }
    let mut out: Vec<RationalVector> = cands
        .into_iter()
        .map(RationalVector::new)
        .filter(|b| {
            let lvl = dot(ip, b.coords(), b.coords());
            let z: Vec<RationalVector> = ws
                .weights()
                .iter()
                .filter(|w| dot(ip, w.coords(), b.coords()) == lvl)
                .cloned()
                .collect();
            !z.is_empty() && face_enumeration_min_norm(&z, ip) == *b
        })
        .filter(|b| {
            rd.is_none_or(|rd| {
                rd.simple_roots()
                    .iter()
                    .all(|a| !dot(ip, b.coords(), a.coords()).is_negative())
            })
        })
        .collect();
    out.sort_by(|a, b| {
        dot(ip, a.coords(), a.coords())
            .cmp(&dot(ip, b.coords(), b.coords()))
            .then_with(|| a.lex_cmp(b))
    });
    out
}

/// Betti numbers of a torus quotient with finite stabilizers, from the h-vector
/// of the reduced polytope `{t ∈ simplex : Σ t_i α_i = 0}`. Its faces are the
/// supports whose hull contains 0 (here always in the interior), of dimension
/// `|S| - 1 - r`; for a simple polytope `Σ f_i (q-1)^i = Σ h_i q^i`.
pub fn h_vector_betti(ws: &WeightSystem, semistable_supports: &[Vec<usize>]) -> Vec<i64> {
    let r = ws.rank();
    let d = ws.len() as i64 - 1 - r as i64;
    if semistable_supports.is_empty() {
        return Vec::new();
    }
    assert!(d >= 0);
    let d = d as usize;
    let mut f = vec![0i64; d + 1];
    for s in semistable_supports {
        f[s.len() - 1 - r] += 1;
    }
    // Σ f_i (q-1)^i
    let mut h = vec![0i64; d + 1];
    for (i, fi) in f.iter().enumerate() {
        let mut binom = 1i64;
        for k in 0..=i {
            // coefficient of q^k in (q-1)^i: C(i,k) (-1)^(i-k)
            let sign = if (i - k) % 2 == 0 { 1 } else { -1 };
            h[k] += fi * sign * binom;
            binom = binom * (i - k) as i64 / (k + 1) as i64;
        }
    }
    while h.last() == Some(&0) {
        h.pop();
    }
    h
}

pub fn random_rational(rng: &mut StdRng, lo: i64, hi: i64, max_den: i64) -> Q {
    let den = rng.random_range(1..=max_den);
    qf(rng.random_range(lo * den..=hi * den), den)
}

/// Integer weights in `[-5, 5]`, identity inner product.
pub fn random_system(rng: &mut StdRng, max_rank: usize, max_n: usize) -> WeightSystem {
    let rank = rng.random_range(1..=max_rank);
    let n = rng.random_range(0..=max_n);
    let weights = (0..=n)
        .map(|_| {
            RationalVector::new((0..rank).map(|_| q(rng.random_range(-5..=5))).collect())
        })
        .collect();
    WeightSystem::with_identity(weights).unwrap()
}

pub fn random_points(rng: &mut StdRng, rank: usize, count: usize) -> Vec<RationalVector> {
    (0..count)
        .map(|_| {
            RationalVector::new((0..rank).map(|_| random_rational(rng, -5, 5, 3)).collect())
        })
        .collect()
}

/// A random positive definite Gram matrix `A^T A + I` with small integer `A`.
pub fn random_gram(rng: &mut StdRng, rank: usize) -> InnerProduct {
    let a: Vec<Vec<i64>> = (0..rank)
        .map(|_| (0..rank).map(|_| rng.random_range(-2..=2)).collect())
        .collect();
    let g = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| {
                    let s: i64 = (0..rank).map(|k| a[k][i] * a[k][j]).sum();
                    q(s + i64::from(i == j))
                })
                .collect()
        })
        .collect();
    InnerProduct::new(g).unwrap()
}

pub fn type_a(n: usize) -> RootDatum {
    let e = |i: usize, j: usize| {
        let mut c = vec![0i64; n + 1];
        c[i] = 1;
        c[j] = -1;
        v(&c)
    };
    let simple = (0..n).map(|i| e(i, i + 1)).collect();
    let mut positive = Vec::new();
    for i in 0..=n {
        for j in i + 1..=n {
            positive.push(e(i, j));
        }
    }
    RootDatum::new(simple, positive, InnerProduct::identity(n + 1)).unwrap()
}

/// B_2 with long simple root `e1 - e2` and short simple root `e2`.
pub fn type_b2() -> RootDatum {
    RootDatum::new(
        vec![v(&[1, -1]), v(&[0, 1])],
        vec![v(&[1, -1]), v(&[0, 1]), v(&[1, 0]), v(&[1, 1])],
        InnerProduct::identity(2),
    )
    .unwrap()
}
