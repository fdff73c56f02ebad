//! Rank, kernel, image and solve over exact rationals, reals and complex
//! doubles, with an explicit [`RankPolicy`] threaded through every call.

pub mod exact;
pub mod float;
mod policy;
mod scalar;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use policy::{RankInfo, RankPolicy, AMBIGUOUS_GAP};
pub use scalar::{Scalar, ScalarTag};

/// Dense matrix used throughout the crate (storage from `nalgebra`).
pub type Matrix<T> = DMatrix<T>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("shape mismatch: expected {expected:?}, found {found:?}")]
    Shape {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("matrix is singular")]
    Singular,
}

pub fn rank<T: Scalar>(m: &Matrix<T>, policy: &RankPolicy) -> Result<usize, LinalgError> {
    Ok(T::rank_info(m, policy)?.rank)
}

pub fn rank_info<T: Scalar>(m: &Matrix<T>, policy: &RankPolicy) -> Result<RankInfo, LinalgError> {
    T::rank_info(m, policy)
}

pub fn kernel_basis<T: Scalar>(m: &Matrix<T>, policy: &RankPolicy) -> Result<Matrix<T>, LinalgError> {
    T::kernel_basis(m, policy)
}

pub fn image_basis<T: Scalar>(m: &Matrix<T>, policy: &RankPolicy) -> Result<Matrix<T>, LinalgError> {
    T::image_basis(m, policy)
}

/// Exact inverse over Q.
pub fn inverse_exact(m: &Matrix<BigRational>) -> Result<Matrix<BigRational>, LinalgError> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(LinalgError::Shape {
            expected: (n, n),
            found: m.shape(),
        });
    }
    let id = Matrix::from_fn(n, n, |i, j| BigRational::from_integer(((i == j) as i64).into()));
    if exact::rank(m) < n {
        return Err(LinalgError::Singular);
    }
    exact::solve(m, &id).ok_or(LinalgError::Singular)
}

/// Inverse of a real square matrix via LU.
pub fn inverse_f64(m: &Matrix<f64>) -> Result<Matrix<f64>, LinalgError> {
    if m.nrows() != m.ncols() {
        return Err(LinalgError::Shape {
            expected: (m.nrows(), m.nrows()),
            found: m.shape(),
        });
    }
    if m.iter().any(|v| !v.is_finite()) {
        return Err(LinalgError::NonFinite { row: 0, col: 0 });
    }
    m.clone().try_inverse().ok_or(LinalgError::Singular)
}

/// Inverse and determinant dispatching on the scalar tag.
pub trait Invertible: Scalar {
    fn inverse(m: &Matrix<Self>) -> Result<Matrix<Self>, LinalgError>;
    fn determinant(m: &Matrix<Self>) -> Self;
}

impl Invertible for f64 {
    fn inverse(m: &Matrix<Self>) -> Result<Matrix<Self>, LinalgError> {
        inverse_f64(m)
    }
    fn determinant(m: &Matrix<Self>) -> Self {
        m.determinant()
    }
}

impl Invertible for BigRational {
    fn inverse(m: &Matrix<Self>) -> Result<Matrix<Self>, LinalgError> {
        inverse_exact(m)
    }
    fn determinant(m: &Matrix<Self>) -> Self {
        exact::determinant(m)
    }
}

impl Invertible for Complex64 {
    fn inverse(m: &Matrix<Self>) -> Result<Matrix<Self>, LinalgError> {
        m.clone().try_inverse().ok_or(LinalgError::Singular)
    }
    fn determinant(m: &Matrix<Self>) -> Self {
        m.determinant()
    }
}

/// Largest entry magnitude.
pub fn max_abs<T: Scalar>(m: &Matrix<T>) -> f64 {
    m.iter().map(|v| v.magnitude()).fold(0.0, f64::max)
}

/// Max-entry distance to the identity.
pub fn identity_residual<T: Scalar>(m: &Matrix<T>) -> f64 {
    let mut r: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let mut v = m[(i, j)].clone();
            if i == j {
                v -= T::one();
            }
            r = r.max(v.magnitude());
        }
    }
    r
}

/// Convert an exact matrix to floating point.
pub fn to_f64(m: &Matrix<BigRational>) -> Matrix<f64> {
    use num_traits::ToPrimitive;
    m.map(|v| v.to_f64().unwrap_or(f64::NAN))
}

/// Tagged matrix for serialization: entries are decimal strings (rationals as
/// `p/q`), row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub scalar: ScalarTag,
    pub entries: Vec<Vec<String>>,
}

impl MatrixDoc {
    pub fn from_f64(m: &Matrix<f64>) -> Self {
        MatrixDoc {
            rows: m.nrows(),
            cols: m.ncols(),
            scalar: ScalarTag::Float,
            entries: (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| format!("{:?}", m[(i, j)])).collect())
                .collect(),
        }
    }

    pub fn from_exact(m: &Matrix<BigRational>) -> Self {
        MatrixDoc {
            rows: m.nrows(),
            cols: m.ncols(),
            scalar: ScalarTag::Exact,
            entries: (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| m[(i, j)].to_string()).collect())
                .collect(),
        }
    }

    fn check_shape(&self) -> Result<(), String> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(format!("matrix entries do not match declared shape {}x{}", self.rows, self.cols));
        }
        Ok(())
    }

    /// Parse entries as floats; rational strings `p/q` are accepted too.
    pub fn to_f64(&self) -> Result<Matrix<f64>, String> {
        self.check_shape()?;
        let mut out = Matrix::zeros(self.rows, self.cols);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                out[(i, j)] = parse_real(s)?;
            }
        }
        Ok(out)
    }

    pub fn to_exact(&self) -> Result<Matrix<BigRational>, String> {
        self.check_shape()?;
        let mut out = Matrix::from_element(self.rows, self.cols, BigRational::from_integer(0.into()));
        for (i, row) in self.entries.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                out[(i, j)] = s
                    .trim()
                    .parse::<BigRational>()
                    .map_err(|_| format!("entry ({i}, {j}) is not an exact rational: {s:?}"))?;
            }
        }
        Ok(out)
    }
}

fn parse_real(s: &str) -> Result<f64, String> {
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: f64 = n.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
        let d: f64 = d.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
        return Ok(n / d);
    }
    let v: f64 = t.parse().map_err(|_| format!("not a number: {s:?}"))?;
    if !v.is_finite() {
        return Err(format!("non-finite entry {s:?}"));
    }
    Ok(v)
}
