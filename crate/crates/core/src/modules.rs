//! Γ-modules: standard, trivial, contragredient, twisted, adjoint, and the
//! block decomposition of sl_{n+1} under SL±_n.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{identity_residual, max_abs, Invertible, Matrix, MatrixDoc, Scalar};
use crate::presentation::{GroupPresentation, Word};
use crate::reps::{Embedding, RepError, Representation};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModuleError {
    #[error("module action: {0}")]
    Action(String),
    #[error("relator {relator} acts with residual {residual:.3e}")]
    Relator { relator: usize, residual: f64 },
    #[error("representation is not block-embedded: {0}")]
    NotEmbedded(String),
    #[error(transparent)]
    Rep(#[from] RepError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleLabel {
    G0,
    #[serde(rename = "m_c")]
    Mc,
    #[serde(rename = "m_r")]
    Mr,
    D,
    FullG,
    Standard,
    Trivial,
    Custom(String),
}

impl fmt::Display for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleLabel::G0 => f.write_str("g0"),
            ModuleLabel::Mc => f.write_str("m_c"),
            ModuleLabel::Mr => f.write_str("m_r"),
            ModuleLabel::D => f.write_str("d"),
            ModuleLabel::FullG => f.write_str("full_g"),
            ModuleLabel::Standard => f.write_str("standard"),
            ModuleLabel::Trivial => f.write_str("trivial"),
            ModuleLabel::Custom(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Symmetry {
    Symmetric,
    Skew,
    /// Pairs this module with a partner module (m_r × m_c).
    Cross,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Pairing<T> {
    pub matrix: Matrix<T>,
    pub symmetry: Symmetry,
}

/// A finite-dimensional Γ-module given by one action matrix per generator.
#[derive(Clone, Debug)]
pub struct CoefficientModule<T = f64> {
    pub label: ModuleLabel,
    pub presentation: Arc<GroupPresentation>,
    pub dim: usize,
    pub action: Vec<Matrix<T>>,
    pub inverse: Vec<Matrix<T>>,
    pub pairing: Option<Pairing<T>>,
}

impl<T: Invertible> CoefficientModule<T> {
    pub fn new(
        label: ModuleLabel,
        presentation: Arc<GroupPresentation>,
        dim: usize,
        action: Vec<Matrix<T>>,
    ) -> Result<Self, ModuleError> {
        if action.len() != presentation.ngens() {
            return Err(ModuleError::Action(format!(
                "{} action matrices for {} generators",
                action.len(),
                presentation.ngens()
            )));
        }
        let inverse = action
            .iter()
            .enumerate()
            .map(|(i, a)| {
                if a.shape() != (dim, dim) {
                    return Err(ModuleError::Action(format!("generator {} action has wrong shape", i + 1)));
                }
                T::inverse(a).map_err(|_| ModuleError::Action(format!("generator {} acts non-invertibly", i + 1)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CoefficientModule {
            label,
            presentation,
            dim,
            action,
            inverse,
            pairing: None,
        })
    }

    pub fn with_pairing(mut self, matrix: Matrix<T>, symmetry: Symmetry) -> Self {
        self.pairing = Some(Pairing { matrix, symmetry });
        self
    }

    pub fn ngens(&self) -> usize {
        self.action.len()
    }

    /// Product of action matrices (inverses for inverse letters) in word order.
    pub fn evaluate_word(&self, w: &Word) -> Matrix<T> {
        let mut acc = Matrix::<T>::identity(self.dim, self.dim);
        for l in w.letters() {
            let m = if l.inverse {
                &self.inverse[l.generator]
            } else {
                &self.action[l.generator]
            };
            acc = &acc * m;
        }
        acc
    }

    /// Largest relator residual.
    pub fn relator_residual(&self) -> f64 {
        self.presentation
            .relators
            .iter()
            .map(|r| identity_residual(&self.evaluate_word(r)))
            .fold(0.0, f64::max)
    }

    pub fn check_relators(&self, bound: f64) -> Result<(), ModuleError> {
        for (i, r) in self.presentation.relators.iter().enumerate() {
            let res = identity_residual(&self.evaluate_word(r));
            if res > bound || res.is_nan() {
                return Err(ModuleError::Relator { relator: i, residual: res });
            }
        }
        Ok(())
    }

    /// max over generators of |AᵀPA − P| for a self-pairing P.
    pub fn pairing_invariance_defect(&self) -> Option<f64> {
        let p = self.pairing.as_ref()?;
        if p.symmetry == Symmetry::Cross {
            return None;
        }
        Some(
            self.action
                .iter()
                .map(|a| max_abs(&(a.transpose() * &p.matrix * a - &p.matrix)))
                .fold(0.0, f64::max),
        )
    }

    /// γ ↦ (action(γ)^{-1})ᵀ.
    pub fn contragredient(&self) -> Self {
        CoefficientModule {
            label: ModuleLabel::Custom(format!("{}*", self.label)),
            presentation: self.presentation.clone(),
            dim: self.dim,
            action: self.inverse.iter().map(|m| m.transpose()).collect(),
            inverse: self.action.iter().map(|m| m.transpose()).collect(),
            pairing: None,
        }
    }

    /// Twist by a ±1 character on generators.
    pub fn twist(&self, chi: &[i8], suffix: &str) -> Self {
        let flip = |ms: &[Matrix<T>]| -> Vec<Matrix<T>> {
            ms.iter()
                .zip(chi)
                .map(|(m, &c)| if c == 1 { m.clone() } else { m.map(|v| -v) })
                .collect()
        };
        CoefficientModule {
            label: ModuleLabel::Custom(format!("{}{suffix}", self.label)),
            presentation: self.presentation.clone(),
            dim: self.dim,
            action: flip(&self.action),
            inverse: flip(&self.inverse),
            pairing: None,
        }
    }

    /// Twist by the orientation character α.
    pub fn twist_by_orientation(&self) -> Self {
        let alpha = self.presentation.orientation.clone();
        self.twist(&alpha, "⊗α")
    }

    pub fn relabel(mut self, label: ModuleLabel) -> Self {
        self.label = label;
        self
    }

    /// Serializable summary (float entries).
    pub fn to_doc(&self) -> ModuleDoc {
        let f = |m: &Matrix<T>| MatrixDoc::from_f64(&m.map(|v| v.real_f64()));
        ModuleDoc {
            label: self.label.to_string(),
            dim: self.dim,
            action: self.action.iter().map(f).collect(),
            pairing: self.pairing.as_ref().map(|p| (f(&p.matrix), p.symmetry)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleDoc {
    pub label: String,
    pub dim: usize,
    pub action: Vec<MatrixDoc>,
    pub pairing: Option<(MatrixDoc, Symmetry)>,
}

/// R^n with γ acting by ρ(γ).
pub fn standard_module<T: Invertible>(rho: &Representation<T>) -> CoefficientModule<T> {
    CoefficientModule {
        label: ModuleLabel::Standard,
        presentation: rho.presentation.clone(),
        dim: rho.degree(),
        action: rho.matrices.clone(),
        inverse: rho.inverses.clone(),
        pairing: None,
    }
}

/// R^dim with trivial action.
pub fn trivial_module<T: Invertible>(pres: Arc<GroupPresentation>, dim: usize) -> CoefficientModule<T> {
    let id = Matrix::<T>::identity(dim, dim);
    CoefficientModule {
        label: ModuleLabel::Trivial,
        dim,
        action: vec![id.clone(); pres.ngens()],
        inverse: vec![id; pres.ngens()],
        presentation: pres,
        pairing: Some(Pairing {
            matrix: Matrix::<T>::identity(dim, dim),
            symmetry: Symmetry::Symmetric,
        }),
    }
}

/// Coordinates on sl_N: e_ij (i ≠ j) row-major, then e_kk − e_{k+1,k+1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SlBasis {
    pub n: usize,
}

impl SlBasis {
    pub fn new(n: usize) -> Self {
        SlBasis { n }
    }

    pub fn dim(&self) -> usize {
        self.n * self.n - 1
    }

    /// Coordinate index of the off-diagonal elementary matrix e_ij.
    pub fn offdiag_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i != j);
        i * (self.n - 1) + if j > i { j - 1 } else { j }
    }

    /// Coordinate index of e_kk − e_{k+1,k+1}.
    pub fn diag_index(&self, k: usize) -> usize {
        self.n * (self.n - 1) + k
    }

    pub fn element<T: Scalar>(&self, idx: usize) -> Matrix<T> {
        let n = self.n;
        let mut m = Matrix::<T>::zeros(n, n);
        let off = n * (n - 1);
        if idx < off {
            let i = idx / (n - 1);
            let r = idx % (n - 1);
            let j = if r >= i { r + 1 } else { r };
            m[(i, j)] = T::one();
        } else {
            let k = idx - off;
            m[(k, k)] = T::one();
            m[(k + 1, k + 1)] = -T::one();
        }
        m
    }

    /// Coordinates of a trace-zero matrix (the trace part is ignored).
    pub fn coords<T: Scalar>(&self, x: &Matrix<T>) -> Vec<T> {
        let n = self.n;
        let mut v = Vec::with_capacity(self.dim());
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    v.push(x[(i, j)].clone());
                }
            }
        }
        // Diagonal part: coefficient of h_k is the partial sum of X_ii, i ≤ k.
        let mut acc = T::zero();
        for k in 0..n - 1 {
            acc += x[(k, k)].clone();
            v.push(acc.clone());
        }
        v
    }

    pub fn from_coords<T: Scalar>(&self, c: &[T]) -> Matrix<T> {
        let mut m = Matrix::<T>::zeros(self.n, self.n);
        for (idx, v) in c.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            m += self.element::<T>(idx) * v.clone();
        }
        m
    }

    /// Matrix of X ↦ A X A⁻¹ in these coordinates.
    pub fn adjoint<T: Scalar>(&self, a: &Matrix<T>, a_inv: &Matrix<T>) -> Matrix<T> {
        let d = self.dim();
        let mut out = Matrix::<T>::zeros(d, d);
        for j in 0..d {
            let e = self.element::<T>(j);
            let img = a * e * a_inv;
            for (i, v) in self.coords(&img).into_iter().enumerate() {
                out[(i, j)] = v;
            }
        }
        out
    }

    /// Gram matrix of B(X, Y) = 2N tr(XY).
    pub fn killing_gram<T: Scalar>(&self) -> Matrix<T> {
        let d = self.dim();
        let scale = T::from_i64(2 * self.n as i64);
        let elems: Vec<Matrix<T>> = (0..d).map(|i| self.element::<T>(i)).collect();
        Matrix::from_fn(d, d, |i, j| (&elems[i] * &elems[j]).trace() * scale.clone())
    }
}

/// sl_n with the adjoint action and the Killing form.
pub fn adjoint_module<T: Invertible>(rho: &Representation<T>) -> CoefficientModule<T> {
    let basis = SlBasis::new(rho.degree());
    let action = rho
        .matrices
        .iter()
        .zip(&rho.inverses)
        .map(|(a, ai)| basis.adjoint(a, ai))
        .collect();
    let inverse = rho
        .matrices
        .iter()
        .zip(&rho.inverses)
        .map(|(a, ai)| basis.adjoint(ai, a))
        .collect();
    CoefficientModule {
        label: ModuleLabel::FullG,
        presentation: rho.presentation.clone(),
        dim: basis.dim(),
        action,
        inverse,
        pairing: Some(Pairing {
            matrix: basis.killing_gram(),
            symmetry: Symmetry::Symmetric,
        }),
    }
}

/// so(2,1) = {X : XᵀJ + JX = 0} for J = diag(1, 1, −1), with coordinates
/// (X₀₂, X₁₂, X₁₀), under conjugation by a representation preserving J.
pub fn so21_adjoint_module(rho: &Representation<f64>) -> Result<CoefficientModule<f64>, ModuleError> {
    if rho.degree() != 3 {
        return Err(ModuleError::Action("so(2,1) needs a 3-dimensional representation".into()));
    }
    let basis = [
        Matrix::from_row_slice(3, 3, &[0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0]),
        Matrix::from_row_slice(3, 3, &[0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 0.0]),
        Matrix::from_row_slice(3, 3, &[0.0, -1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    ];
    let action = rho
        .matrices
        .iter()
        .zip(&rho.inverses)
        .map(|(a, ai)| {
            let mut m = Matrix::<f64>::zeros(3, 3);
            for (j, x) in basis.iter().enumerate() {
                let y = a * x * ai;
                m[(0, j)] = y[(0, 2)];
                m[(1, j)] = y[(1, 2)];
                m[(2, j)] = y[(1, 0)];
            }
            m
        })
        .collect();
    CoefficientModule::new(ModuleLabel::Custom("so21".into()), rho.presentation.clone(), 3, action)
}

/// The four G₀-blocks of sl_{n+1} and the maps relating them to the whole.
#[derive(Clone, Debug)]
pub struct SlDecomposition<T = f64> {
    pub embedding: Embedding,
    /// Base degree n.
    pub n: usize,
    pub embedded: Representation<T>,
    pub full: CoefficientModule<T>,
    pub g0: CoefficientModule<T>,
    pub m_c: CoefficientModule<T>,
    pub m_r: CoefficientModule<T>,
    pub d: CoefficientModule<T>,
    /// Projections from sl_{n+1} coordinates onto each block.
    pub pi_g0: Matrix<T>,
    pub pi_c: Matrix<T>,
    pub pi_r: Matrix<T>,
    pub pi_d: Matrix<T>,
    /// Inclusions of each block into sl_{n+1} coordinates.
    pub inc_g0: Matrix<T>,
    pub inc_c: Matrix<T>,
    pub inc_r: Matrix<T>,
    pub inc_d: Matrix<T>,
    /// B restricted to m_r × m_c, rows indexed by m_r.
    pub cross_pairing: Matrix<T>,
    /// Scale in B(X, Y) = killing_constant · tr(XY).
    pub killing_constant: i64,
}

/// Split sl_{n+1} under the embedded image of ρ.
pub fn decompose_sl<T: Invertible>(
    rho: &Representation<T>,
    embedding: Embedding,
) -> Result<SlDecomposition<T>, ModuleError> {
    let n = rho.degree();
    if n < 2 {
        return Err(ModuleError::NotEmbedded("base degree must be at least 2".into()));
    }
    let embedded = rho.embed(embedding)?;
    let big = SlBasis::new(n + 1);
    let small = SlBasis::new(n);
    let full = adjoint_module(&embedded);
    let dim = big.dim();

    // Inclusions as coordinate maps.
    let mut inc_g0 = Matrix::<T>::zeros(dim, small.dim());
    for j in 0..small.dim() {
        let y = small.element::<T>(j);
        let mut x = Matrix::<T>::zeros(n + 1, n + 1);
        x.view_mut((0, 0), (n, n)).copy_from(&y);
        for (i, v) in big.coords(&x).into_iter().enumerate() {
            inc_g0[(i, j)] = v;
        }
    }
    let mut inc_c = Matrix::<T>::zeros(dim, n);
    let mut inc_r = Matrix::<T>::zeros(dim, n);
    for i in 0..n {
        inc_c[(big.offdiag_index(i, n), i)] = T::one();
        inc_r[(big.offdiag_index(n, i), i)] = T::one();
    }
    let mut dmat = Matrix::<T>::identity(n + 1, n + 1);
    dmat[(n, n)] = T::from_i64(-(n as i64));
    let mut inc_d = Matrix::<T>::zeros(dim, 1);
    for (i, v) in big.coords(&dmat).into_iter().enumerate() {
        inc_d[(i, 0)] = v;
    }

    // Projections: X = [[Y, v], [wᵀ, x]] ↦ (Y + (x/n) I, v, w, −x/n).
    let nn = T::from_i64(n as i64);
    let mut pi_g0 = Matrix::<T>::zeros(small.dim(), dim);
    let mut pi_c = Matrix::<T>::zeros(n, dim);
    let mut pi_r = Matrix::<T>::zeros(n, dim);
    let mut pi_d = Matrix::<T>::zeros(1, dim);
    for j in 0..dim {
        let x = big.element::<T>(j);
        let corner = x[(n, n)].clone();
        let mut y = x.view((0, 0), (n, n)).into_owned();
        for k in 0..n {
            y[(k, k)] += corner.clone() / nn.clone();
        }
        for (i, v) in small.coords(&y).into_iter().enumerate() {
            pi_g0[(i, j)] = v;
        }
        for i in 0..n {
            pi_c[(i, j)] = x[(i, n)].clone();
            pi_r[(i, j)] = x[(n, i)].clone();
        }
        pi_d[(0, j)] = -corner / nn.clone();
    }

    let block = |label: ModuleLabel, pi: &Matrix<T>, inc: &Matrix<T>| -> Result<CoefficientModule<T>, ModuleError> {
        let action = full.action.iter().map(|a| pi * a * inc).collect();
        CoefficientModule::new(label, rho.presentation.clone(), pi.nrows(), action)
    };
    let killing_constant = 2 * (n as i64 + 1);
    let g0 = block(ModuleLabel::G0, &pi_g0, &inc_g0)?.with_pairing(
        {
            // Killing form of sl_{n+1} restricted to the g0 block.
            let gram = big.killing_gram::<T>();
            inc_g0.transpose() * gram * &inc_g0
        },
        Symmetry::Symmetric,
    );
    let cross = Matrix::<T>::identity(n, n) * T::from_i64(killing_constant);
    let m_c = block(ModuleLabel::Mc, &pi_c, &inc_c)?.with_pairing(cross.transpose(), Symmetry::Cross);
    let m_r = block(ModuleLabel::Mr, &pi_r, &inc_r)?.with_pairing(cross.clone(), Symmetry::Cross);
    let d = block(ModuleLabel::D, &pi_d, &inc_d)?.with_pairing(
        Matrix::from_element(1, 1, T::from_i64(killing_constant * (n as i64) * (n as i64 + 1))),
        Symmetry::Symmetric,
    );
    Ok(SlDecomposition {
        embedding,
        n,
        embedded,
        full,
        g0,
        m_c,
        m_r,
        d,
        pi_g0,
        pi_c,
        pi_r,
        pi_d,
        inc_g0,
        inc_c,
        inc_r,
        inc_d,
        cross_pairing: cross,
        killing_constant,
    })
}

impl<T: Invertible> SlDecomposition<T> {
    /// Largest leakage of the full action out of each block:
    /// |π_other · Ad(g) · inc_block| over generators and block pairs.
    pub fn block_leakage(&self) -> f64 {
        let pis = [&self.pi_g0, &self.pi_c, &self.pi_r, &self.pi_d];
        let incs = [&self.inc_g0, &self.inc_c, &self.inc_r, &self.inc_d];
        let mut worst: f64 = 0.0;
        for a in &self.full.action {
            for (i, pi) in pis.iter().enumerate() {
                for (j, inc) in incs.iter().enumerate() {
                    if i != j {
                        worst = worst.max(max_abs(&(*pi * a * *inc)));
                    }
                }
            }
        }
        worst
    }

    /// max |B(g·w, g·v) − B(w, v)| for w ∈ m_r, v ∈ m_c.
    pub fn cross_pairing_defect(&self) -> f64 {
        self.m_r
            .action
            .iter()
            .zip(&self.m_c.action)
            .map(|(ar, ac)| max_abs(&(ar.transpose() * &self.cross_pairing * ac - &self.cross_pairing)))
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{parse_signature, presentation_of};
    use crate::reps::GroupTag;

    #[test]
    fn sl_basis_round_trip() {
        let b = SlBasis::new(4);
        assert_eq!(b.dim(), 15);
        for i in 0..b.dim() {
            let e = b.element::<f64>(i);
            let c = b.coords(&e);
            for (k, v) in c.iter().enumerate() {
                assert_eq!(*v, if k == i { 1.0 } else { 0.0 });
            }
        }
        assert_eq!(b.offdiag_index(0, 1), 0);
        assert_eq!(b.offdiag_index(1, 0), 3);
        assert_eq!(b.offdiag_index(3, 2), 11);
    }

    #[test]
    fn identity_rep_adjoint_is_trivial() {
        let pres = Arc::new(presentation_of(&parse_signature("O(g=2;b=0;cone=[])").unwrap()).unwrap());
        let id = Matrix::<f64>::identity(2, 2);
        let rho = Representation::new(pres.clone(), vec![id; 4], GroupTag::Sl, vec![]).unwrap();
        let ad = adjoint_module(&rho);
        assert_eq!(ad.dim, 3);
        for a in &ad.action {
            assert_eq!(a, &Matrix::<f64>::identity(3, 3));
        }
        let triv: CoefficientModule<f64> = trivial_module(pres, 1);
        assert!(triv.action.iter().all(|a| a[(0, 0)] == 1.0));
    }
}
