//! Exact rational elimination.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Clear denominators row by row so elimination can stay in the integers.
fn integer_rows(m: &DMatrix<BigRational>) -> Vec<Vec<BigInt>> {
    (0..m.nrows())
        .map(|i| {
            let lcm = (0..m.ncols()).fold(BigInt::one(), |acc, j| acc.lcm(m[(i, j)].denom()));
            (0..m.ncols())
                .map(|j| {
                    let v = &m[(i, j)];
                    v.numer() * (&lcm / v.denom())
                })
                .collect()
        })
        .collect()
}

/// Rank over Q by fraction-free (Bareiss) elimination.
pub fn rank(m: &DMatrix<BigRational>) -> usize {
    let mut a = integer_rows(m);
    let rows = a.len();
    let cols = m.ncols();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in (r + 1)..rows {
            for j in (c + 1)..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Reduced row echelon form and its pivot columns.
pub fn rref(m: &DMatrix<BigRational>) -> (DMatrix<BigRational>, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a[(r, c)].recip();
        for j in c..cols {
            a[(r, j)] = &a[(r, j)] * &inv;
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..cols {
                let v = &a[(r, j)] * &f;
                a[(i, j)] -= v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn kernel_basis(m: &DMatrix<BigRational>) -> DMatrix<BigRational> {
    let cols = m.ncols();
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut k = DMatrix::from_element(cols, free.len(), BigRational::zero());
    for (idx, &f) in free.iter().enumerate() {
        k[(f, idx)] = BigRational::one();
        for (row, &p) in pivots.iter().enumerate() {
            k[(p, idx)] = -r[(row, f)].clone();
        }
    }
    k
}

pub fn image_basis(m: &DMatrix<BigRational>) -> DMatrix<BigRational> {
    let (_, pivots) = rref(m);
    let mut im = DMatrix::from_element(m.nrows(), pivots.len(), BigRational::zero());
    for (idx, &p) in pivots.iter().enumerate() {
        im.set_column(idx, &m.column(p));
    }
    im
}

/// Determinant by elimination with exact pivots.
pub fn determinant(m: &DMatrix<BigRational>) -> BigRational {
    assert_eq!(m.nrows(), m.ncols(), "determinant of a non-square matrix");
    let mut a = m.clone();
    let n = a.nrows();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap_rows(c, p);
            det = -det;
        }
        let piv = a[(c, c)].clone();
        det *= piv.clone();
        for i in (c + 1)..n {
            if a[(i, c)].is_zero() {
                continue;
            }
            let f = &a[(i, c)] / &piv;
            for j in c..n {
                let v = &a[(c, j)] * &f;
                a[(i, j)] -= v;
            }
        }
    }
    det
}

/// Solve `a x = b` exactly; `None` when inconsistent. Free variables are set to zero.
pub fn solve(a: &DMatrix<BigRational>, b: &DMatrix<BigRational>) -> Option<DMatrix<BigRational>> {
    let (rows, cols) = a.shape();
    let mut aug = DMatrix::from_element(rows, cols + b.ncols(), BigRational::zero());
    aug.view_mut((0, 0), (rows, cols)).copy_from(a);
    aug.view_mut((0, cols), (rows, b.ncols())).copy_from(b);
    let (r, pivots) = rref(&aug);
    if pivots.iter().any(|&p| p >= cols) {
        return None;
    }
    let mut x = DMatrix::from_element(cols, b.ncols(), BigRational::zero());
    for (row, &p) in pivots.iter().enumerate() {
        for j in 0..b.ncols() {
            x[(p, j)] = r[(row, cols + j)].clone();
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn mat(rows: usize, cols: usize, v: &[i64]) -> DMatrix<BigRational> {
        DMatrix::from_row_iterator(rows, cols, v.iter().map(|&x| q(x)))
    }

    #[test]
    fn bareiss_matches_rref() {
        let m = mat(3, 4, &[1, 2, 3, 4, 2, 4, 6, 8, 0, 1, 1, 1]);
        assert_eq!(rank(&m), 2);
        assert_eq!(rref(&m).1.len(), 2);
    }

    #[test]
    fn fractional_entries() {
        let half = BigRational::new(1.into(), 2.into());
        let third = BigRational::new(1.into(), 3.into());
        let m = DMatrix::from_row_slice(2, 2, &[half.clone(), third.clone(), q(3), q(2)]);
        assert_eq!(rank(&m), 1);
        let k = kernel_basis(&m);
        assert_eq!(k.ncols(), 1);
        let prod = &m * &k;
        assert!(prod.iter().all(|v| v.is_zero()));
    }

    #[test]
    fn determinant_values() {
        assert_eq!(determinant(&mat(2, 2, &[0, 1, 1, 0])), q(-1));
        assert_eq!(determinant(&mat(3, 3, &[2, 0, 1, 1, 3, 2, 1, 1, 2])), q(6));
    }

    #[test]
    fn solve_and_inconsistent() {
        let a = mat(2, 2, &[1, 1, 1, 1]);
        assert!(solve(&a, &mat(2, 1, &[1, 2])).is_none());
        let x = solve(&a, &mat(2, 1, &[3, 3])).unwrap();
        assert_eq!(&a * &x, mat(2, 1, &[3, 3]));
    }
}
