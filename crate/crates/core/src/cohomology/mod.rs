//! Group cohomology in degrees 0–2 with coefficients in a finite-dimensional
//! module: Fox-calculus cocycle spaces, coboundaries, degree-two dimensions
//! by duality, twisted Euler characteristics from cell data, and H¹ bases.

mod cup;
mod weil;

use nalgebra::DVector;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{identity_residual, kernel_basis, rank_info, image_basis, Invertible, LinalgError, Matrix, RankInfo, RankPolicy, Scalar};
use crate::modules::{CoefficientModule, ModuleError, ModuleLabel};
use crate::presentation::{Stabilizer, Word};

pub use cup::{
    bracket_d_pairing, cross_pairing_value, cup_pairing, estimate_cn, fundamental_cycle, goldman_obstruction,
    pairing_matrix, CnEstimate, CycleTerm, FundamentalCycle, ObstructionSample, PairingValue,
};
pub use weil::{weil_check, WeilResult, WeilVerdict, WEIL_EPSILONS, WEIL_NOISE_FLOOR};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CohomologyError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("presentation has no cell structure")]
    NoCells,
    #[error("cell {cell}: {message}")]
    Stabilizer { cell: String, message: String },
    #[error("fundamental class needs a closed orientable presentation with a long relator: {0}")]
    NoFundamentalClass(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Tolerance for stabilizer words to be of their declared order.
pub const STABILIZER_TOL: f64 = 1e-8;

/// Rows: one block of N per relator; columns: one block of N per generator.
/// The kernel is Z¹ written as stacked generator values.
pub fn fox_matrix<T: Invertible>(m: &CoefficientModule<T>) -> Matrix<T> {
    let pres = &m.presentation;
    let (n, g) = (m.dim, m.ngens());
    let mut out = Matrix::<T>::zeros(n * pres.relators.len(), n * g);
    for (ri, rel) in pres.relators.iter().enumerate() {
        let mut prefix = Matrix::<T>::identity(n, n);
        for l in rel.letters() {
            let col = l.generator * n;
            if l.inverse {
                prefix = &prefix * &m.inverse[l.generator];
                let mut block = out.view_mut((ri * n, col), (n, n));
                block -= &prefix;
            } else {
                let mut block = out.view_mut((ri * n, col), (n, n));
                block += &prefix;
                prefix = &prefix * &m.action[l.generator];
            }
        }
    }
    out
}

/// Stack of (A_g − I); its image is B¹ and its kernel is the invariants.
pub fn coboundary_matrix<T: Invertible>(m: &CoefficientModule<T>) -> Matrix<T> {
    let (n, g) = (m.dim, m.ngens());
    let mut out = Matrix::<T>::zeros(n * g, n);
    let id = Matrix::<T>::identity(n, n);
    for (k, a) in m.action.iter().enumerate() {
        out.view_mut((k * n, 0), (n, n)).copy_from(&(a - &id));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum H2Method {
    /// Group of an orbifold with boundary: H² vanishes.
    BoundaryVanishing,
    /// h⁰ of the contragredient (closed orientable), or of its α-twist.
    Duality,
    /// Trivial group.
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HDims {
    pub z1: usize,
    pub b1: usize,
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
    pub h2_method: H2Method,
    pub fox_rank: RankInfo,
    pub coboundary_rank: RankInfo,
    /// Rank of the dual coboundary system used for h², when one was needed.
    pub dual_rank: Option<RankInfo>,
    pub degenerate: bool,
}

impl HDims {
    /// Smallest gap among the rank decisions behind these numbers.
    pub fn min_gap(&self) -> f64 {
        let mut g = self.fox_rank.gap.min(self.coboundary_rank.gap);
        if let Some(d) = &self.dual_rank {
            g = g.min(d.gap);
        }
        g
    }

    pub fn euler(&self) -> i64 {
        self.h0 as i64 - self.h1 as i64 + self.h2 as i64
    }
}

fn h0_info<T: Invertible>(m: &CoefficientModule<T>, policy: &RankPolicy) -> Result<RankInfo, CohomologyError> {
    Ok(rank_info(&coboundary_matrix(m), policy)?)
}

/// Dimensions of H⁰, H¹, H² with the rank audits that produced them.
pub fn h_dims<T: Invertible>(m: &CoefficientModule<T>, policy: &RankPolicy) -> Result<HDims, CohomologyError> {
    let n = m.dim;
    let pres = &m.presentation;
    let fox = fox_matrix(m);
    let fox_rank = rank_info(&fox, policy)?;
    let coboundary_rank = h0_info(m, policy)?;
    if pres.is_degenerate() {
        return Ok(HDims {
            z1: 0,
            b1: 0,
            h0: n,
            h1: 0,
            h2: 0,
            h2_method: H2Method::Degenerate,
            fox_rank,
            coboundary_rank,
            dual_rank: None,
            degenerate: true,
        });
    }
    let z1 = n * m.ngens() - fox_rank.rank;
    let b1 = coboundary_rank.rank;
    let h0 = n - b1;
    let h1 = z1.checked_sub(b1).ok_or_else(|| {
        CohomologyError::Dimension(format!("dim Z¹ = {z1} is smaller than dim B¹ = {b1}"))
    })?;
    let (h2, h2_method, dual_rank) = if !pres.closed {
        (0, H2Method::BoundaryVanishing, None)
    } else {
        let dual = m.contragredient();
        let dual = if pres.is_orientable() { dual } else { dual.twist_by_orientation() };
        let info = h0_info(&dual, policy)?;
        (n - info.rank, H2Method::Duality, Some(info))
    };
    Ok(HDims {
        z1,
        b1,
        h0,
        h1,
        h2,
        h2_method,
        fox_rank,
        coboundary_rank,
        dual_rank,
        degenerate: false,
    })
}

/// Σ over cells of (−1)^dim · dim V^{Stab(cell)}.
pub fn twisted_euler<T: Invertible>(m: &CoefficientModule<T>, policy: &RankPolicy) -> Result<i64, CohomologyError> {
    let cells = m.presentation.cells.as_ref().ok_or(CohomologyError::NoCells)?;
    let n = m.dim;
    let id = Matrix::<T>::identity(n, n);
    let mut total = 0i64;
    for cell in &cells.cells {
        let label = cell.label.clone();
        let gens: Vec<(Word, u32)> = match &cell.stabilizer {
            Stabilizer::Trivial => vec![],
            Stabilizer::Cyclic { order, word } => vec![(word.clone(), *order)],
            Stabilizer::Reflection { word } => vec![(word.clone(), 2)],
            Stabilizer::Dihedral { words, .. } => vec![(words[0].clone(), 2), (words[1].clone(), 2)],
        };
        let mut mats = Vec::with_capacity(gens.len());
        for (w, order) in &gens {
            let a = m.evaluate_word(w);
            let mut p = Matrix::<T>::identity(n, n);
            for _ in 0..*order {
                p = &p * &a;
            }
            let res = identity_residual(&p);
            if res > STABILIZER_TOL || res.is_nan() {
                return Err(CohomologyError::Stabilizer {
                    cell: label,
                    message: format!("stabilizer word has no order {order} (residual {res:.3e})"),
                });
            }
            mats.push(a);
        }
        let fixed = if mats.is_empty() {
            n
        } else {
            let mut stack = Matrix::<T>::zeros(n * mats.len(), n);
            for (k, a) in mats.iter().enumerate() {
                stack.view_mut((k * n, 0), (n, n)).copy_from(&(a - &id));
            }
            n - rank_info(&stack, policy)?.rank
        };
        let sign = if cell.dim % 2 == 0 { 1 } else { -1 };
        total += sign * fixed as i64;
    }
    Ok(total)
}

/// A 1-cocycle given by its values on generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Cocycle {
    pub label: ModuleLabel,
    pub values: Vec<DVector<f64>>,
}

impl Cocycle {
    pub fn zero(m: &CoefficientModule<f64>) -> Self {
        Cocycle {
            label: m.label.clone(),
            values: vec![DVector::zeros(m.dim); m.ngens()],
        }
    }

    pub fn from_stack(m: &CoefficientModule<f64>, stack: &[f64]) -> Self {
        Cocycle {
            label: m.label.clone(),
            values: stack.chunks(m.dim.max(1)).take(m.ngens()).map(DVector::from_column_slice).collect(),
        }
    }

    pub fn to_stack(&self) -> DVector<f64> {
        let mut out = Vec::new();
        for v in &self.values {
            out.extend(v.iter().copied());
        }
        DVector::from_vec(out)
    }

    /// The coboundary g ↦ g·v − v.
    pub fn coboundary(m: &CoefficientModule<f64>, v: &DVector<f64>) -> Self {
        Cocycle {
            label: m.label.clone(),
            values: m.action.iter().map(|a| a * v - v).collect(),
        }
    }

    /// Value on a word, via z(uv) = z(u) + u·z(v) and z(g⁻¹) = −g⁻¹·z(g).
    pub fn eval(&self, m: &CoefficientModule<f64>, w: &Word) -> DVector<f64> {
        let mut acc = DVector::zeros(m.dim);
        let mut prefix = Matrix::<f64>::identity(m.dim, m.dim);
        for l in w.letters() {
            if l.inverse {
                prefix = &prefix * &m.inverse[l.generator];
                acc -= &prefix * &self.values[l.generator];
            } else {
                acc += &prefix * &self.values[l.generator];
                prefix = &prefix * &m.action[l.generator];
            }
        }
        acc
    }

    /// Largest relator value; zero for a genuine cocycle.
    pub fn defect(&self, m: &CoefficientModule<f64>) -> f64 {
        m.presentation
            .relators
            .iter()
            .map(|r| self.eval(m, r).amax())
            .fold(0.0, f64::max)
    }

    /// Push forward along a linear map of coefficient spaces.
    pub fn map(&self, label: ModuleLabel, f: &Matrix<f64>) -> Self {
        Cocycle {
            label,
            values: self.values.iter().map(|v| f * v).collect(),
        }
    }

    pub fn scaled_sum(terms: &[(f64, &Cocycle)]) -> Self {
        let mut out = terms[0].1.clone();
        for v in out.values.iter_mut() {
            v.fill(0.0);
        }
        for (c, z) in terms {
            for (o, v) in out.values.iter_mut().zip(&z.values) {
                *o += v * *c;
            }
        }
        out
    }

    pub fn norm(&self) -> f64 {
        self.to_stack().norm()
    }
}

/// Cocycles spanning the orthogonal complement of B¹ inside Z¹.
pub fn h1_basis(m: &CoefficientModule<f64>, policy: &RankPolicy) -> Result<Vec<Cocycle>, CohomologyError> {
    if m.presentation.is_degenerate() || m.ngens() == 0 {
        return Ok(vec![]);
    }
    let k = kernel_basis(&fox_matrix(m), policy)?;
    let b = image_basis(&coboundary_matrix(m), policy)?;
    let h = if b.ncols() == 0 {
        k
    } else {
        let proj = b.transpose() * &k;
        let c = kernel_basis(&proj, policy)?;
        &k * c
    };
    Ok((0..h.ncols())
        .map(|j| Cocycle::from_stack(m, h.column(j).as_slice()))
        .collect())
}

/// Orthonormal basis of Z¹.
pub fn z1_basis(m: &CoefficientModule<f64>, policy: &RankPolicy) -> Result<Vec<Cocycle>, CohomologyError> {
    let k = kernel_basis(&fox_matrix(m), policy)?;
    Ok((0..k.ncols()).map(|j| Cocycle::from_stack(m, k.column(j).as_slice())).collect())
}

/// How a number in the report was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodTag {
    Fox,
    Duality,
    TwistedEuler,
    BoundaryVanishing,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleCohomology {
    pub module: String,
    pub dim: usize,
    #[serde(flatten)]
    pub dims: HDims,
    pub twisted_euler: Option<i64>,
    /// h⁰ − h¹ + h² equals the twisted Euler characteristic.
    pub euler_consistent: Option<bool>,
    pub methods: Vec<MethodTag>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub policy: RankPolicy,
    pub modules: Vec<ModuleCohomology>,
    pub degenerate: bool,
}

impl CohomologyReport {
    pub fn get(&self, module: &str) -> Option<&ModuleCohomology> {
        self.modules.iter().find(|m| m.module == module)
    }

    pub fn h1(&self, module: &str) -> Option<usize> {
        self.get(module).map(|m| m.dims.h1)
    }

    pub fn min_gap(&self) -> f64 {
        self.modules.iter().map(|m| m.dims.min_gap()).fold(f64::INFINITY, f64::min)
    }
}

/// Dimensions plus the Euler cross-check for one module.
pub fn module_cohomology<T: Invertible>(
    m: &CoefficientModule<T>,
    policy: &RankPolicy,
) -> Result<ModuleCohomology, CohomologyError> {
    let dims = h_dims(m, policy)?;
    let twisted = if m.presentation.cells.is_some() && !dims.degenerate {
        Some(twisted_euler(m, policy)?)
    } else {
        None
    };
    let mut methods = vec![MethodTag::Fox];
    methods.push(match dims.h2_method {
        H2Method::BoundaryVanishing => MethodTag::BoundaryVanishing,
        _ => MethodTag::Duality,
    });
    if twisted.is_some() {
        methods.push(MethodTag::TwistedEuler);
    }
    Ok(ModuleCohomology {
        module: m.label.to_string(),
        dim: m.dim,
        euler_consistent: twisted.map(|t| t == dims.euler()),
        twisted_euler: twisted,
        methods,
        dims,
    })
}

/// Per-module tables, computed in parallel.
pub fn cohomology_report<T: Invertible>(
    modules: &[&CoefficientModule<T>],
    policy: &RankPolicy,
) -> Result<CohomologyReport, CohomologyError> {
    use rayon::prelude::*;
    let rows = modules
        .par_iter()
        .map(|m| module_cohomology(*m, policy))
        .collect::<Result<Vec<_>, _>>()?;
    let degenerate = rows.iter().any(|r| r.dims.degenerate);
    Ok(CohomologyReport {
        policy: *policy,
        modules: rows,
        degenerate,
    })
}

/// Generic check used by property tests: every coboundary column is a cocycle.
pub fn coboundary_defect<T: Invertible + Scalar>(m: &CoefficientModule<T>) -> f64 {
    let prod = fox_matrix(m) * coboundary_matrix(m);
    crate::linalg::max_abs(&prod)
}

#[cfg(test)]
mod tests;
