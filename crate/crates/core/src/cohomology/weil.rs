//! First-order deformation check: a cocycle z gives the path
//! γ ↦ (I + εz(γ))ρ(γ), whose relator images move only at order ε².

use serde::{Deserialize, Serialize};

use crate::linalg::Matrix;
use crate::reps::Representation;

pub const WEIL_EPSILONS: [f64; 3] = [1e-3, 1e-4, 1e-5];
/// Residuals below this are roundoff: the direction integrates exactly to
/// the precision available and no slope can be measured.
pub const WEIL_NOISE_FLOOR: f64 = 1e-11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeilVerdict {
    /// Log-log slope within 0.1 of 2.
    Quadratic,
    /// Residual at roundoff for every ε.
    Integrable,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeilResult {
    pub epsilons: Vec<f64>,
    pub residuals: Vec<f64>,
    pub slope: Option<f64>,
    pub verdict: WeilVerdict,
}

impl WeilResult {
    pub fn passed(&self) -> bool {
        self.verdict != WeilVerdict::Failed
    }
}

fn relator_shift(rho: &Representation<f64>, z: &[Matrix<f64>], eps: f64) -> f64 {
    let n = rho.degree();
    let id = Matrix::<f64>::identity(n, n);
    let moved: Vec<Matrix<f64>> = rho.matrices.iter().zip(z).map(|(a, zg)| (&id + zg * eps) * a).collect();
    let moved_inv: Vec<Matrix<f64>> = moved
        .iter()
        .map(|m| m.clone().try_inverse().unwrap_or_else(|| m * f64::NAN))
        .collect();
    rho.presentation
        .relators
        .iter()
        .map(|r| {
            let a = r.evaluate(id.clone(), |x, y| x * y, &moved, &moved_inv);
            let b = rho.eval(r);
            (a - b).amax()
        })
        .fold(0.0, f64::max)
}

/// Run the check for a cocycle given as one matrix per generator. Residuals
/// are measured against ρ's own relator images so that the base solution's
/// residual does not leak into the slope.
pub fn weil_check(rho: &Representation<f64>, z: &[Matrix<f64>]) -> WeilResult {
    let residuals: Vec<f64> = WEIL_EPSILONS.iter().map(|&e| relator_shift(rho, z, e)).collect();
    if residuals.iter().any(|r| !r.is_finite()) {
        return WeilResult {
            epsilons: WEIL_EPSILONS.to_vec(),
            residuals,
            slope: None,
            verdict: WeilVerdict::Failed,
        };
    }
    if residuals.iter().all(|&r| r <= WEIL_NOISE_FLOOR) {
        return WeilResult {
            epsilons: WEIL_EPSILONS.to_vec(),
            residuals,
            slope: None,
            verdict: WeilVerdict::Integrable,
        };
    }
    // Least-squares slope of log r against log ε.
    let xs: Vec<f64> = WEIL_EPSILONS.iter().map(|e| e.log10()).collect();
    let ys: Vec<f64> = residuals.iter().map(|r| r.max(f64::MIN_POSITIVE).log10()).collect();
    let k = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / k, ys.iter().sum::<f64>() / k);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    WeilResult {
        epsilons: WEIL_EPSILONS.to_vec(),
        residuals,
        slope: Some(slope),
        verdict: if (slope - 2.0).abs() <= 0.1 {
            WeilVerdict::Quadratic
        } else {
            WeilVerdict::Failed
        },
    }
}
