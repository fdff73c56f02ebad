//! Singular-value based rank decisions for `f64` and `Complex64`.

use nalgebra::{ComplexField, DMatrix};

use super::policy::{RankInfo, RankPolicy};
use super::LinalgError;

fn check_finite<T: ComplexField<RealField = f64>>(m: &DMatrix<T>) -> Result<(), LinalgError> {
    for (k, v) in m.iter().enumerate() {
        let re = v.clone().real();
        let im = v.clone().imaginary();
        if !re.is_finite() || !im.is_finite() {
            return Err(LinalgError::NonFinite {
                row: k % m.nrows(),
                col: k / m.nrows(),
            });
        }
    }
    Ok(())
}

struct Decomp<T: ComplexField<RealField = f64>> {
    /// Singular values, decreasing.
    sv: Vec<f64>,
    /// Left singular vectors as columns, restricted to the original rows,
    /// reordered to match `sv`.
    u: DMatrix<T>,
    /// Right singular vectors as columns (full square), reordered to match `sv`
    /// for the first `sv.len()` columns.
    v: DMatrix<T>,
}

fn decompose<T: ComplexField<RealField = f64>>(m: &DMatrix<T>) -> Result<Decomp<T>, LinalgError> {
    check_finite(m)?;
    let (rows, cols) = m.shape();
    // Pad with zero rows so the right factor is square and spans the kernel.
    let padded = if rows < cols {
        let mut p = DMatrix::<T>::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(true, true);
    let u = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested V^T");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| {
        svd.singular_values[b]
            .partial_cmp(&svd.singular_values[a])
            .expect("finite singular values")
    });
    let sv: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let v_full = v_t.adjoint();
    let mut v = DMatrix::<T>::zeros(cols, cols);
    for (dst, &src) in order.iter().enumerate() {
        v.set_column(dst, &v_full.column(src));
    }
    let mut u_sorted = DMatrix::<T>::zeros(rows, order.len());
    for (dst, &src) in order.iter().enumerate() {
        u_sorted.set_column(dst, &u.column(src).rows(0, rows));
    }
    // Only the first min(rows, cols) singular values are meaningful for the
    // original matrix; padded rows add zeros that must not inflate the count.
    let sv = sv.into_iter().take(rows.min(cols)).collect();
    Ok(Decomp { sv, u: u_sorted, v })
}

pub fn rank_info<T: ComplexField<RealField = f64>>(
    m: &DMatrix<T>,
    policy: &RankPolicy,
) -> Result<RankInfo, LinalgError> {
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        check_finite(m)?;
        return Ok(RankInfo::from_singular_values(&[], rows, cols, policy));
    }
    let d = decompose(m)?;
    Ok(RankInfo::from_singular_values(&d.sv, rows, cols, policy))
}

pub fn kernel_basis<T: ComplexField<RealField = f64>>(
    m: &DMatrix<T>,
    policy: &RankPolicy,
) -> Result<DMatrix<T>, LinalgError> {
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        check_finite(m)?;
        return Ok(DMatrix::identity(cols, cols));
    }
    let d = decompose(m)?;
    let info = RankInfo::from_singular_values(&d.sv, rows, cols, policy);
    Ok(d.v.columns(info.rank, cols - info.rank).into_owned())
}

pub fn image_basis<T: ComplexField<RealField = f64>>(
    m: &DMatrix<T>,
    policy: &RankPolicy,
) -> Result<DMatrix<T>, LinalgError> {
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        check_finite(m)?;
        return Ok(DMatrix::zeros(rows, 0));
    }
    let d = decompose(m)?;
    let info = RankInfo::from_singular_values(&d.sv, rows, cols, policy);
    Ok(d.u.columns(0, info.rank).into_owned())
}

/// Decreasing singular values of `m`.
pub fn singular_values<T: ComplexField<RealField = f64>>(m: &DMatrix<T>) -> Result<Vec<f64>, LinalgError> {
    if m.nrows() == 0 || m.ncols() == 0 {
        check_finite(m)?;
        return Ok(Vec::new());
    }
    Ok(decompose(m)?.sv)
}

/// Least-squares solution of `a x = b` via the pseudo-inverse at the policy cut.
pub fn solve<T: ComplexField<RealField = f64>>(
    a: &DMatrix<T>,
    b: &DMatrix<T>,
    policy: &RankPolicy,
) -> Result<DMatrix<T>, LinalgError> {
    if a.nrows() != b.nrows() {
        return Err(LinalgError::Shape {
            expected: (a.nrows(), b.ncols()),
            found: b.shape(),
        });
    }
    check_finite(b)?;
    if a.nrows() == 0 || a.ncols() == 0 {
        check_finite(a)?;
        return Ok(DMatrix::zeros(a.ncols(), b.ncols()));
    }
    let d = decompose(a)?;
    let info = RankInfo::from_singular_values(&d.sv, a.nrows(), a.ncols(), policy);
    let mut x = DMatrix::<T>::zeros(a.ncols(), b.ncols());
    for k in 0..info.rank {
        let uk = d.u.column(k);
        let vk = d.v.column(k);
        let coeff = uk.adjoint() * b;
        let inv = T::from_real(1.0 / d.sv[k]);
        x += vk * coeff * inv;
    }
    Ok(x)
}
