//! Numerical downward flow of `|μ|²` on the mass simplex.
//!
//! For `μ = Σ t_j α_j` the flow is
//! `dt_i/ds = -2 t_i (<α_i, μ> - <μ, μ>)`, integrated with fixed-step RK4.
//! This is a floating-point cross-check for the exact stratum assignment.

use crate::action::{PointSample, WeightSystem};
use crate::error::DescentError;

pub const DEFAULT_STEP: f64 = 1e-2;
pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_STEPS: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct DescentOutcome {
    /// Moment value at the final state.
    pub limit: Vec<f64>,
    pub steps: usize,
    /// `|dt/ds|` at the final state.
    pub residual: f64,
}

struct Flow {
    /// `<α_i, α_j>`
    gram: Vec<Vec<f64>>,
}

impl Flow {
    fn field(&self, t: &[f64], out: &mut [f64]) {
        let pair: Vec<f64> = self
            .gram
            .iter()
            .map(|row| row.iter().zip(t).map(|(g, tj)| g * tj).sum())
            .collect();
        let mu_sq: f64 = pair.iter().zip(t).map(|(p, ti)| p * ti).sum();
        for ((o, ti), p) in out.iter_mut().zip(t).zip(&pair) {
            *o = -2.0 * ti * (p - mu_sq);
        }
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Integrates the flow from `p` until `|dt/ds| < tol` or `max_steps` is reached.
///
/// A non-converged run is an error carrying the last moment value, so the caller
/// can still inspect it.
pub fn simulate_descent(
    ws: &WeightSystem,
    p: &PointSample,
    step: f64,
    tol: f64,
    max_steps: usize,
) -> Result<DescentOutcome, DescentError> {
    if !(step > 0.0 && tol > 0.0) {
        return Err(DescentError::BadParameters);
    }
    let weights: Vec<Vec<f64>> = ws.weights().iter().map(|w| w.to_f64()).collect();
    let flow = Flow {
        gram: weights
            .iter()
            .map(|a| weights.iter().map(|b| ws.ip().dot_f64(a, b)).collect())
            .collect(),
    };
    let n = ws.len();
    let mut t: Vec<f64> = p
        .masses()
        .iter()
        .map(|m| num_traits::ToPrimitive::to_f64(m).unwrap_or(0.0))
        .collect();

    let mut k1 = vec![0.0; n];
    let mut k2 = vec![0.0; n];
    let mut k3 = vec![0.0; n];
    let mut k4 = vec![0.0; n];
    let mut tmp = vec![0.0; n];

    let mut steps = 0;
    flow.field(&t, &mut k1);
    let mut residual = norm(&k1);
    while residual >= tol && steps < max_steps {
        for i in 0..n {
            tmp[i] = t[i] + 0.5 * step * k1[i];
        }
        flow.field(&tmp, &mut k2);
        for i in 0..n {
            tmp[i] = t[i] + 0.5 * step * k2[i];
        }
        flow.field(&tmp, &mut k3);
        for i in 0..n {
            tmp[i] = t[i] + step * k3[i];
        }
        flow.field(&tmp, &mut k4);
        for i in 0..n {
            t[i] += step / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            t[i] = t[i].max(0.0);
        }
        let total: f64 = t.iter().sum();
        t.iter_mut().for_each(|x| *x /= total);
        steps += 1;
        flow.field(&t, &mut k1);
        residual = norm(&k1);
    }

    let mut limit = vec![0.0; ws.rank()];
    for (ti, w) in t.iter().zip(&weights) {
        for (l, wk) in limit.iter_mut().zip(w) {
            *l += ti * wk;
        }
    }
    if residual >= tol {
        return Err(DescentError::NoConvergence {
            limit,
            residual,
            steps,
        });
    }
    Ok(DescentOutcome {
        limit,
        steps,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    fn run(masses: Vec<crate::rational::Q>) -> DescentOutcome {
        let ws = WeightSystem::from_ints(&[2, 1, -1]);
        let p = PointSample::new(masses).unwrap();
        simulate_descent(&ws, &p, DEFAULT_STEP, DEFAULT_TOL, DEFAULT_MAX_STEPS).unwrap()
    }

    #[test]
    fn fixed_point_needs_no_steps() {
        let out = run(vec![q(1), q(0), q(0)]);
        assert_eq!(out.steps, 0);
        assert_eq!(out.limit, vec![2.0]);
    }

    #[test]
    fn unstable_edge_flows_to_one() {
        let out = run(vec![qf(1, 2), qf(1, 2), q(0)]);
        assert!((out.limit[0] - 1.0).abs() < 1e-4, "{out:?}");
    }

    #[test]
    fn semistable_flows_to_zero() {
        let out = run(vec![qf(1, 3), qf(1, 3), qf(1, 3)]);
        assert!(out.limit[0].abs() < 1e-4, "{out:?}");
    }

    #[test]
    fn reports_non_convergence() {
        let ws = WeightSystem::from_ints(&[2, 1, -1]);
        let p = PointSample::new(vec![qf(1, 3), qf(1, 3), qf(1, 3)]).unwrap();
        let err = simulate_descent(&ws, &p, DEFAULT_STEP, DEFAULT_TOL, 3).unwrap_err();
        assert!(matches!(err, DescentError::NoConvergence { steps: 3, .. }));
        assert_eq!(
            simulate_descent(&ws, &p, 0.0, DEFAULT_TOL, 3),
            Err(DescentError::BadParameters)
        );
    }
}
