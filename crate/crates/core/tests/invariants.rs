use std::sync::OnceLock;

use charvar_core::cohomology::{fox_matrix, Cocycle};
use charvar_core::linalg::{kernel_basis, rank, Matrix, RankPolicy};
use charvar_core::modules::{decompose_sl, SlDecomposition};
use charvar_core::presentation::{Letter, Word};
use charvar_core::reps::hyperbolic::triangle_group;
use charvar_core::reps::Embedding;
use nalgebra::DVector;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn small_int_matrix() -> impl Strategy<Value = (usize, usize, Vec<i32>)> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-3i32..=3, r * c)))
}

/// Products of two thin factors so low ranks show up often.
fn low_rank_matrix() -> impl Strategy<Value = (usize, usize, Vec<i32>)> {
    (2usize..6, 2usize..6, 1usize..3).prop_flat_map(|(r, c, k)| {
        (prop::collection::vec(-3i32..=3, r * k), prop::collection::vec(-3i32..=3, k * c)).prop_map(
            move |(a, b)| {
                let mut out = vec![0; r * c];
                for i in 0..r {
                    for j in 0..c {
                        out[i * c + j] = (0..k).map(|l| a[i * k + l] * b[l * c + j]).sum();
                    }
                }
                (r, c, out)
            },
        )
    })
}

fn as_f64(r: usize, c: usize, v: &[i32]) -> Matrix<f64> {
    Matrix::from_row_iterator(r, c, v.iter().map(|&x| x as f64))
}

fn as_exact(r: usize, c: usize, v: &[i32]) -> Matrix<BigRational> {
    Matrix::from_row_iterator(r, c, v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))))
}

fn decomposition() -> &'static SlDecomposition<f64> {
    static DEC: OnceLock<SlDecomposition<f64>> = OnceLock::new();
    DEC.get_or_init(|| decompose_sl(&triangle_group(3, 3, 4).unwrap().rep, Embedding::Standard).unwrap())
}

proptest! {
    #[test]
    fn rank_of_transpose((r, c, v) in small_int_matrix()) {
        let m = as_f64(r, c, &v);
        let p = RankPolicy::default();
        prop_assert_eq!(rank(&m, &p).unwrap(), rank(&m.transpose(), &p).unwrap());
    }

    #[test]
    fn float_rank_matches_exact((r, c, v) in low_rank_matrix()) {
        let p = RankPolicy::default();
        prop_assert_eq!(rank(&as_f64(r, c, &v), &p).unwrap(), rank(&as_exact(r, c, &v), &p).unwrap());
    }

    #[test]
    fn rank_nullity((r, c, v) in small_int_matrix()) {
        let p = RankPolicy::default();
        let m = as_exact(r, c, &v);
        prop_assert_eq!(rank(&m, &p).unwrap() + kernel_basis(&m, &p).unwrap().ncols(), c);
        let f = as_f64(r, c, &v);
        let k = kernel_basis(&f, &p).unwrap();
        prop_assert_eq!(rank(&f, &p).unwrap() + k.ncols(), c);
        prop_assert!((&f * &k).amax() < 1e-9);
    }

    #[test]
    fn coboundaries_are_cocycles(v in prop::collection::vec(-2.0f64..2.0, 8)) {
        let dec = decomposition();
        let fox = fox_matrix(&dec.g0);
        let z = Cocycle::coboundary(&dec.g0, &DVector::from_vec(v));
        prop_assert!((&fox * z.to_stack()).amax() < 1e-9);
    }

    #[test]
    fn word_inverse_cancels(codes in prop::collection::vec(prop_oneof![1i32..4, -3i32..0], 0..12)) {
        let w = Word::from_letters(codes.iter().map(|&c| Letter::decode(c)));
        prop_assert!(w.concat(&w.inverse()).freely_reduced().is_empty());
        prop_assert_eq!(w.inverse().inverse(), w);
    }
}
