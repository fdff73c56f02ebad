//! Damped least squares (Levenberg–Marquardt) with finite-difference Jacobians.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LmOptions {
    pub max_evaluations: usize,
    /// Stop once the largest residual entry is at most this.
    pub target: f64,
    pub initial_damping: f64,
    pub fd_step: f64,
}

impl Default for LmOptions {
    fn default() -> Self {
        LmOptions {
            max_evaluations: 20_000,
            target: 1e-13,
            initial_damping: 1e-3,
            fd_step: 1e-7,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LmReport {
    pub x: Vec<f64>,
    /// Largest absolute residual entry at `x`.
    pub residual: f64,
    pub evaluations: usize,
    pub iterations: usize,
    pub converged: bool,
}

fn sq(r: &[f64]) -> f64 {
    r.iter().map(|v| v * v).sum()
}

fn max_abs(r: &[f64]) -> f64 {
    r.iter().fold(0.0, |a, v| a.max(v.abs()))
}

/// Minimize ‖f(x)‖² from `x0`. Works for under- and over-determined systems;
/// each step solves (JᵀJ + λI) δ = −Jᵀr.
pub fn levenberg_marquardt<F>(f: F, x0: Vec<f64>, opts: &LmOptions) -> LmReport
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let n = x0.len();
    let mut x = x0;
    let mut r = f(&x);
    let mut evals = 1;
    let mut cost = sq(&r);
    if !cost.is_finite() {
        return LmReport {
            residual: f64::INFINITY,
            x,
            evaluations: evals,
            iterations: 0,
            converged: false,
        };
    }
    let mut lambda = opts.initial_damping;
    let mut iterations = 0;
    while evals < opts.max_evaluations && max_abs(&r) > opts.target {
        iterations += 1;
        let m = r.len();
        // Central differences.
        let mut jac = DMatrix::<f64>::zeros(m, n);
        let mut xp = x.clone();
        for j in 0..n {
            let h = opts.fd_step * (1.0 + x[j].abs());
            xp[j] = x[j] + h;
            let fp = f(&xp);
            xp[j] = x[j] - h;
            let fm = f(&xp);
            xp[j] = x[j];
            evals += 2;
            for i in 0..m {
                jac[(i, j)] = (fp[i] - fm[i]) / (2.0 * h);
            }
        }
        let rv = DVector::from_column_slice(&r);
        let jtj = jac.transpose() * &jac;
        let g = jac.transpose() * rv;
        let mut improved = false;
        for _ in 0..30 {
            let mut a = jtj.clone();
            for k in 0..n {
                a[(k, k)] += lambda * (1.0 + jtj[(k, k)]);
            }
            let Some(step) = a.cholesky().map(|c| c.solve(&(-&g))) else {
                lambda *= 10.0;
                continue;
            };
            let xn: Vec<f64> = x.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
            let rn = f(&xn);
            evals += 1;
            let cn = sq(&rn);
            if cn.is_finite() && cn < cost {
                x = xn;
                r = rn;
                cost = cn;
                lambda = (lambda / 3.0).max(1e-15);
                improved = true;
                break;
            }
            lambda *= 4.0;
            if evals >= opts.max_evaluations {
                break;
            }
        }
        if !improved {
            break;
        }
    }
    let residual = max_abs(&r);
    LmReport {
        converged: residual <= opts.target,
        x,
        residual,
        evaluations: evals,
        iterations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rosenbrock_as_least_squares() {
        let f = |x: &[f64]| vec![10.0 * (x[1] - x[0] * x[0]), 1.0 - x[0]];
        let rep = levenberg_marquardt(f, vec![-1.2, 1.0], &LmOptions::default());
        assert!(rep.converged, "{rep:?}");
        assert!((rep.x[0] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn underdetermined_system() {
        // One equation, three unknowns.
        let f = |x: &[f64]| vec![x[0] * x[0] + x[1] * x[1] + x[2] * x[2] - 4.0];
        let rep = levenberg_marquardt(f, vec![1.0, 0.5, 0.2], &LmOptions::default());
        assert!(rep.converged);
    }
}
