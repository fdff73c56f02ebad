use nalgebra::{ClosedAddAssign, ClosedMulAssign, ClosedSubAssign, DMatrix};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::policy::{RankInfo, RankPolicy};
use super::LinalgError;

/// Which arithmetic a matrix is carried out in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalarTag {
    Exact,
    Float,
    Complex,
}

/// Field elements the linear algebra kernel works over.
///
/// Each implementation supplies its own rank/kernel/image routines: singular
/// values for the floating tags, fraction-free elimination for rationals.
pub trait Scalar:
    nalgebra::Scalar
    + Zero
    + One
    + ClosedAddAssign
    + ClosedSubAssign
    + ClosedMulAssign
    + std::ops::Neg<Output = Self>
    + std::ops::Div<Output = Self>
    + Send
    + Sync
{
    const TAG: ScalarTag;

    fn from_i64(v: i64) -> Self;
    fn from_f64_lossy(v: f64) -> Option<Self>;
    fn is_finite_value(&self) -> bool;
    /// Absolute value as a float, for residual checks.
    fn magnitude(&self) -> f64;
    fn conj(&self) -> Self;
    /// Real part as a float.
    fn real_f64(&self) -> f64;

    fn rank_info(m: &DMatrix<Self>, policy: &RankPolicy) -> Result<RankInfo, LinalgError>;
    /// Columns spanning the right kernel.
    fn kernel_basis(m: &DMatrix<Self>, policy: &RankPolicy) -> Result<DMatrix<Self>, LinalgError>;
    /// Columns spanning the column space.
    fn image_basis(m: &DMatrix<Self>, policy: &RankPolicy) -> Result<DMatrix<Self>, LinalgError>;
}

impl Scalar for f64 {
    const TAG: ScalarTag = ScalarTag::Float;

    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_f64_lossy(v: f64) -> Option<Self> {
        Some(v)
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn conj(&self) -> Self {
        *self
    }
    fn real_f64(&self) -> f64 {
        *self
    }
    fn rank_info(m: &DMatrix<Self>, policy: &RankPolicy) -> Result<RankInfo, LinalgError> {
        super::float::rank_info(m, policy)
    }
    fn kernel_basis(m: &DMatrix<Self>, policy: &RankPolicy) -> Result<DMatrix<Self>, LinalgError> {
        super::float::kernel_basis(m, policy)
    }
    fn image_basis(m: &DMatrix<Self>, policy: &RankPolicy) -> Result<DMatrix<Self>, LinalgError> {
        super::float::image_basis(m, policy)
    }
}

impl Scalar for Complex64 {
    const TAG: ScalarTag = ScalarTag::Complex;

    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn from_f64_lossy(v: f64) -> Option<Self> {
        Some(Complex64::new(v, 0.0))
    }
    fn is_finite_value(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn real_f64(&self) -> f64 {
        self.re
    }
    fn rank_info(m: &DMatrix<Self>, policy: &RankPolicy) -> Result<RankInfo, LinalgError> {
        super::float::rank_info(m, policy)
    }
    fn kernel_basis(m: &DMatrix<Self>, policy: &RankPolicy) -> Result<DMatrix<Self>, LinalgError> {
        super::float::kernel_basis(m, policy)
    }
    fn image_basis(m: &DMatrix<Self>, policy: &RankPolicy) -> Result<DMatrix<Self>, LinalgError> {
        super::float::image_basis(m, policy)
    }
}

impl Scalar for BigRational {
    const TAG: ScalarTag = ScalarTag::Exact;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
    fn from_f64_lossy(v: f64) -> Option<Self> {
        BigRational::from_float(v)
    }
    fn is_finite_value(&self) -> bool {
        true
    }
    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn real_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
    fn rank_info(m: &DMatrix<Self>, _policy: &RankPolicy) -> Result<RankInfo, LinalgError> {
        Ok(RankInfo::exact(super::exact::rank(m), m.nrows(), m.ncols()))
    }
    fn kernel_basis(m: &DMatrix<Self>, _policy: &RankPolicy) -> Result<DMatrix<Self>, LinalgError> {
        Ok(super::exact::kernel_basis(m))
    }
    fn image_basis(m: &DMatrix<Self>, _policy: &RankPolicy) -> Result<DMatrix<Self>, LinalgError> {
        Ok(super::exact::image_basis(m))
    }
}
