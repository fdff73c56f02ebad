//! Cup products of 1-cocycles evaluated against the fundamental class of a
//! closed orientable orbifold group, and the quadratic obstruction.

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{CohomologyError, Cocycle};
use crate::linalg::Matrix;
use crate::modules::{CoefficientModule, ModuleLabel, SlBasis, SlDecomposition};
use crate::presentation::{GroupPresentation, Word};

#[derive(Clone, Debug, PartialEq)]
pub struct CycleTerm {
    pub coeff: f64,
    pub a: Word,
    pub b: Word,
}

/// A bar 2-chain representing the fundamental class.
#[derive(Clone, Debug, PartialEq)]
pub struct FundamentalCycle {
    pub terms: Vec<CycleTerm>,
}

/// For a long relator g₁⋯g_L: Σ_{i≥2} [g₁⋯g_{i−1} | g_i], then −[g | g⁻¹]
/// for each inverse letter, then −(1/n) Σ_{k<n} [x^k | x] for each torsion
/// relator xⁿ. The correction terms make the chain a cycle relative to the
/// relators; the sign is fixed so that a₁* ∪ b₁* pairs to +1 on trivial
/// coefficients.
pub fn fundamental_cycle(pres: &GroupPresentation) -> Result<FundamentalCycle, CohomologyError> {
    if !pres.closed || !pres.is_orientable() {
        return Err(CohomologyError::NoFundamentalClass(format!(
            "{} is not closed orientable",
            pres.name
        )));
    }
    let long = pres
        .long_relator
        .ok_or_else(|| CohomologyError::NoFundamentalClass(format!("{} has no long relator", pres.name)))?;
    let word = &pres.relators[long];
    let letters: Vec<_> = word.letters().collect();
    let mut terms = Vec::new();
    for i in 1..letters.len() {
        terms.push(CycleTerm {
            coeff: 1.0,
            a: word.prefix(i),
            b: Word::from_letters([letters[i]]),
        });
    }
    for l in &letters {
        if l.inverse {
            let g = Word::gen(l.generator);
            terms.push(CycleTerm {
                coeff: -1.0,
                b: g.inverse(),
                a: g,
            });
        }
    }
    for t in &pres.torsion {
        let x = Word::gen(t.generator);
        let c = -1.0 / t.order as f64;
        for k in 1..t.order {
            terms.push(CycleTerm {
                coeff: c,
                a: x.power(k),
                b: x.clone(),
            });
        }
    }
    Ok(FundamentalCycle { terms })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairingValue {
    pub value: f64,
    /// Σ |term contributions|; the natural yardstick for "zero".
    pub scale: f64,
}

impl PairingValue {
    pub fn vanishes(&self, rel: f64) -> bool {
        self.value.abs() <= rel * self.scale.max(f64::MIN_POSITIVE)
    }
}

/// ⟨[z₁ ∪_φ z₂], [O]⟩ with (z₁ ∪ z₂)(a, b) = φ(z₁(a), a·z₂(b)).
pub fn cup_pairing<F>(
    cycle: &FundamentalCycle,
    m1: &CoefficientModule<f64>,
    z1: &Cocycle,
    m2: &CoefficientModule<f64>,
    z2: &Cocycle,
    phi: F,
) -> Result<PairingValue, CohomologyError>
where
    F: Fn(&DVector<f64>, &DVector<f64>) -> f64,
{
    if z1.values.len() != m1.ngens() || z2.values.len() != m2.ngens() || m1.ngens() != m2.ngens() {
        return Err(CohomologyError::Dimension("cocycles and modules disagree on generators".into()));
    }
    let mut value = 0.0;
    let mut scale = 0.0;
    for t in &cycle.terms {
        let left = z1.eval(m1, &t.a);
        let right = m2.evaluate_word(&t.a) * z2.eval(m2, &t.b);
        let c = t.coeff * phi(&left, &right);
        value += c;
        scale += c.abs();
    }
    Ok(PairingValue { value, scale })
}

/// Matrix of ⟨u_i ∪ v_j, [O]⟩ for the bilinear form uᵀ P v.
pub fn pairing_matrix(
    cycle: &FundamentalCycle,
    m1: &CoefficientModule<f64>,
    basis1: &[Cocycle],
    m2: &CoefficientModule<f64>,
    basis2: &[Cocycle],
    form: &Matrix<f64>,
) -> Result<Matrix<f64>, CohomologyError> {
    if form.shape() != (m1.dim, m2.dim) {
        return Err(CohomologyError::Dimension(format!(
            "form is {:?}, modules are {} and {}",
            form.shape(),
            m1.dim,
            m2.dim
        )));
    }
    let mut out = Matrix::<f64>::zeros(basis1.len(), basis2.len());
    for (i, u) in basis1.iter().enumerate() {
        for (j, v) in basis2.iter().enumerate() {
            out[(i, j)] = cup_pairing(cycle, m1, u, m2, v, |x, y| (x.transpose() * form * y)[(0, 0)])?.value;
        }
    }
    Ok(out)
}

/// B(z_r ∪ z_c) for cocycles in m_r and m_c.
pub fn cross_pairing_value(
    decomp: &SlDecomposition<f64>,
    cycle: &FundamentalCycle,
    zr: &Cocycle,
    zc: &Cocycle,
) -> Result<PairingValue, CohomologyError> {
    let b = &decomp.cross_pairing;
    cup_pairing(cycle, &decomp.m_r, zr, &decomp.m_c, zc, |x, y| (x.transpose() * b * y)[(0, 0)])
}

/// d-component of the bracket cup product of two sl_{n+1} cocycles,
/// using π_d(X) = −X_{n,n}/n.
pub fn bracket_d_pairing(
    decomp: &SlDecomposition<f64>,
    cycle: &FundamentalCycle,
    z1: &Cocycle,
    z2: &Cocycle,
) -> Result<PairingValue, CohomologyError> {
    let n = decomp.n;
    let basis = SlBasis::new(n + 1);
    let phi = |u: &DVector<f64>, v: &DVector<f64>| {
        let x = basis.from_coords(u.as_slice());
        let y = basis.from_coords(v.as_slice());
        let br = &x * &y - &y * &x;
        -br[(n, n)] / n as f64
    };
    cup_pairing(cycle, &decomp.full, z1, &decomp.full, z2, phi)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObstructionSample {
    pub obstruction: PairingValue,
    pub b_pairing: PairingValue,
    pub ratio: Option<f64>,
}

/// The d-part of [z ∪ z] against the fundamental class, alongside
/// B(π_r z ∪ π_c z).
pub fn goldman_obstruction(
    decomp: &SlDecomposition<f64>,
    cycle: &FundamentalCycle,
    z: &Cocycle,
) -> Result<ObstructionSample, CohomologyError> {
    let obstruction = bracket_d_pairing(decomp, cycle, z, z)?;
    let zr = z.map(ModuleLabel::Mr, &decomp.pi_r);
    let zc = z.map(ModuleLabel::Mc, &decomp.pi_c);
    let b_pairing = cross_pairing_value(decomp, cycle, &zr, &zc)?;
    let ratio = if b_pairing.vanishes(1e-8) {
        None
    } else {
        Some(obstruction.value / b_pairing.value)
    };
    Ok(ObstructionSample {
        obstruction,
        b_pairing,
        ratio,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CnEstimate {
    pub samples: Vec<ObstructionSample>,
    pub mean: Option<f64>,
    /// Standard deviation of the ratios divided by |mean|.
    pub relative_std: Option<f64>,
}

/// Ratio of the obstruction to the B-pairing over random combinations of the
/// given sl_{n+1} cocycles.
pub fn estimate_cn(
    decomp: &SlDecomposition<f64>,
    cycle: &FundamentalCycle,
    basis: &[Cocycle],
    samples: usize,
    seed: u64,
) -> Result<CnEstimate, CohomologyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    if !basis.is_empty() {
        for _ in 0..samples {
            let coeffs: Vec<f64> = basis.iter().map(|_| rng.random_range(-1.0..1.0)).collect();
            let terms: Vec<(f64, &Cocycle)> = coeffs.iter().copied().zip(basis.iter()).collect();
            let z = Cocycle::scaled_sum(&terms);
            out.push(goldman_obstruction(decomp, cycle, &z)?);
        }
    }
    let ratios: Vec<f64> = out.iter().filter_map(|s| s.ratio).collect();
    let (mean, relative_std) = if ratios.is_empty() {
        (None, None)
    } else {
        let k = ratios.len() as f64;
        let mean = ratios.iter().sum::<f64>() / k;
        let var = ratios.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / k;
        (Some(mean), Some(var.sqrt() / mean.abs().max(f64::MIN_POSITIVE)))
    };
    Ok(CnEstimate {
        samples: out,
        mean,
        relative_std,
    })
}
