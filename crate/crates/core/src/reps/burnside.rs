//! Burnside's criterion: a set of n×n matrices acts irreducibly on C^n iff the
//! algebra it generates is all of M_n(C).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::linalg::{float, Matrix, RankPolicy};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BurnsideVerdict {
    pub irreducible_over_c: bool,
    pub algebra_dim: usize,
    pub commutant_dim: usize,
    /// Longest word needed before the span stabilized.
    pub word_length: usize,
}

/// Relative size below which a new word is considered inside the span.
const SPAN_TOL: f64 = 1e-9;

fn vectorize(m: &Matrix<Complex64>) -> Vec<Complex64> {
    m.iter().cloned().collect()
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Orthonormal span, grown by two passes of Gram–Schmidt.
struct Span {
    basis: Vec<Vec<Complex64>>,
}

impl Span {
    fn try_add(&mut self, v: &[Complex64]) -> bool {
        let scale = norm(v);
        if scale == 0.0 {
            return false;
        }
        let mut w: Vec<Complex64> = v.iter().map(|x| x / scale).collect();
        for _ in 0..2 {
            for b in &self.basis {
                let c = dot(b, &w);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= c * bi;
                }
            }
        }
        let r = norm(&w);
        if r <= SPAN_TOL {
            return false;
        }
        for wi in w.iter_mut() {
            *wi /= r;
        }
        self.basis.push(w);
        true
    }
}

/// Algebra and commutant dimensions of the complexified matrix set.
pub fn burnside_irreducible(mats: &[Matrix<f64>]) -> BurnsideVerdict {
    let n = mats.first().map(|m| m.nrows()).unwrap_or(0);
    let gens: Vec<Matrix<Complex64>> = mats.iter().map(|m| m.map(|v| Complex64::new(v, 0.0))).collect();
    let full = n * n;
    let mut span = Span { basis: Vec::new() };
    let id = Matrix::<Complex64>::identity(n, n);
    span.try_add(&vectorize(&id));
    let mut frontier = vec![id];
    let mut length = 0;
    let cap = 2 * full;
    while !frontier.is_empty() && span.basis.len() < full && length < cap {
        length += 1;
        let mut next = Vec::new();
        for w in &frontier {
            for g in &gens {
                let p = w * g;
                if span.try_add(&vectorize(&p)) {
                    next.push(p);
                    if span.basis.len() == full {
                        break;
                    }
                }
            }
        }
        frontier = next;
    }
    let algebra_dim = span.basis.len();
    let commutant_dim = commutant_dim(&gens);
    BurnsideVerdict {
        irreducible_over_c: algebra_dim == full,
        algebra_dim,
        commutant_dim,
        word_length: length,
    }
}

/// dim{X : X A_i = A_i X for all i}, via vec(XA − AX) = (Aᵀ ⊗ I − I ⊗ A) vec X.
pub fn commutant_dim(gens: &[Matrix<Complex64>]) -> usize {
    let n = gens.first().map(|m| m.nrows()).unwrap_or(0);
    if n == 0 {
        return 0;
    }
    let nn = n * n;
    let id = Matrix::<Complex64>::identity(n, n);
    let mut system = Matrix::<Complex64>::zeros(nn * gens.len(), nn);
    for (k, a) in gens.iter().enumerate() {
        let block = a.transpose().kronecker(&id) - id.kronecker(a);
        system.view_mut((k * nn, 0), (nn, nn)).copy_from(&block);
    }
    let info = float::rank_info(&system, &RankPolicy::default()).expect("finite commutation system");
    nn - info.rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_reducible() {
        let v = burnside_irreducible(&[Matrix::identity(2, 2)]);
        assert!(!v.irreducible_over_c);
        assert_eq!(v.algebra_dim, 1);
        assert_eq!(v.commutant_dim, 4);
    }

    #[test]
    fn irrational_rotation_reducible_over_c() {
        let t: f64 = 2.0_f64.sqrt();
        let r = Matrix::from_row_slice(2, 2, &[t.cos(), -t.sin(), t.sin(), t.cos()]);
        let v = burnside_irreducible(&[r]);
        assert!(!v.irreducible_over_c);
        assert_eq!(v.algebra_dim, 2);
        assert_eq!(v.commutant_dim, 2);
    }

    #[test]
    fn generic_pair_irreducible() {
        let a = Matrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        let b = Matrix::from_row_slice(2, 2, &[1.0, 0.0, 1.0, 1.0]);
        let v = burnside_irreducible(&[a, b]);
        assert!(v.irreducible_over_c);
        assert_eq!(v.algebra_dim, 4);
        assert_eq!(v.commutant_dim, 1);
    }
}
