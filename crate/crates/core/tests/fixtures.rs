use charvar_core::linalg::{kernel_basis, Matrix, RankPolicy};
use charvar_core::pipeline::{analyze, o4_fixture, AnalysisRequest, Input, RepSource};
use charvar_core::presentation::{parse_signature, SignatureKind};
use charvar_core::reps::hyperbolic::triangle_group;
use charvar_core::reps::{burnside_irreducible, Embedding};

/// Fixed-space dimension of Ad(R) on sl3 for a rotation R of order n: the
/// standard eigenvalues are 1, e^{±iθ}, so a weight difference k ∈ {0, ±1, ±2}
/// survives when kθ ∈ 2πZ.
fn sl3_fixed_dim(order: u32) -> i64 {
    let diffs = [0i64, 0, 0, 1, 1, -1, -1, 2, -2];
    diffs.iter().filter(|&&k| k % order as i64 == 0).count() as i64 - 1
}

fn oracle(sig: &str) -> (usize, usize, usize) {
    let s = parse_signature(sig).unwrap();
    let SignatureKind::OrientableSurface { genus } = s.kind else { panic!() };
    let g = genus as i64;
    let c = s.cone_orders.len() as i64;
    let p = 8 * (2 * g - 2 + c) - s.cone_orders.iter().map(|&n| sl3_fixed_dim(n)).sum::<i64>();
    let d = -3 * (2 - 2 * g) + 2 * c;
    (p as usize, d as usize, (2 * g) as usize)
}

const CLOSED: [&str; 9] = [
    "S2(3,3,4)",
    "S2(2,3,7)",
    "S2(3,3,3,3)",
    "S2(2,2,2,3)",
    "S2(2,3,3,3,3)",
    "O(g=1;b=0;cone=[2])",
    "O(g=1;b=0;cone=[3,3])",
    "O(g=2;b=0;cone=[])",
    "O(g=2;b=0;cone=[3])",
];

#[test]
fn closed_orientable_dims_match_oracle() {
    for sig in CLOSED {
        let r = analyze(&AnalysisRequest::signature(sig)).unwrap();
        assert_eq!((r.dims.p, r.dims.d, r.dims.b), oracle(sig), "{sig}");
        assert!(r.all_passed(), "{sig}");
    }
}

#[test]
fn surface_group_in_sl2() {
    for g in [2i64, 3] {
        let sig = format!("O(g={g};b=0;cone=[])");
        let r = analyze(&AnalysisRequest::signature(&sig).with_n(2)).unwrap();
        let want = ((6 * g - 6) as usize, (4 * g - 4) as usize, (2 * g) as usize);
        assert_eq!((r.dims.p, r.dims.d, r.dims.b), want, "{sig}");
    }
}

#[test]
fn four_point_family() {
    for (orders, k) in [("3,3,3,3", 0), ("2,3,3,3", 1), ("2,2,3,3", 2), ("2,2,2,3", 3)] {
        let sig = format!("S2({orders})");
        let r = analyze(&AnalysisRequest::signature(&sig).with_rep(RepSource::Polygon)).unwrap();
        assert_eq!((r.dims.p, r.dims.d, r.dims.b), (8 - 2 * k, 2, 0), "{sig}");
        assert_eq!(r.model.display, "R^".to_string() + &(8 - 2 * k).to_string() + " x R^0 x Cone(UT(S^1))");
        for m in &r.cohomology.modules {
            assert!(m.dims.min_gap() >= 1e3, "{sig} {}", m.module);
        }
    }
}

#[test]
fn discs() {
    for (orders, k) in [("3,3", 0), ("2,3", 1), ("3,4", 0)] {
        for e in [Embedding::Orientable, Embedding::TypePreserving] {
            let sig = format!("D({orders};mirror)");
            let r = analyze(&AnalysisRequest::signature(&sig).with_embedding(e)).unwrap();
            assert_eq!(r.dims.p, 4 - 2 * k, "{sig}");
            assert_eq!((r.dims.d_oe, r.dims.d_tp, r.dims.f), (Some(1), Some(1), Some(0)), "{sig}");
            if e == Embedding::TypePreserving {
                assert!(r.model.sentence.starts_with("topologically non-singular"), "{}", r.model.sentence);
            }
        }
        let sig = format!("D({orders})");
        let r = analyze(&AnalysisRequest::signature(&sig)).unwrap();
        assert_eq!((r.dims.p, r.dims.d, r.dims.b), (4 - 2 * k, 1, 0), "{sig}");
    }
}

#[test]
fn o4_teichmuller_identity() {
    let r = analyze(
        &AnalysisRequest::new(Input::Presentation(Box::new(o4_fixture()))).with_embedding(Embedding::TypePreserving),
    )
    .unwrap();
    assert_eq!((r.dims.d_oe, r.dims.d_tp, r.dims.f, r.dims.t), (Some(1), Some(0), Some(1), Some(1)));
}

/// Commutant of a matrix set from the linear system XA = AX, independent of
/// the span iteration used by the Burnside test.
fn commutant_dim(mats: &[Matrix<f64>]) -> usize {
    let n = mats[0].nrows();
    let mut rows = Matrix::<f64>::zeros(mats.len() * n * n, n * n);
    for (k, a) in mats.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                let r = k * n * n + i * n + j;
                for l in 0..n {
                    // (XA - AX)_{ij} = Σ_l X_{il} A_{lj} - A_{il} X_{lj}
                    rows[(r, i * n + l)] += a[(l, j)];
                    rows[(r, l * n + j)] -= a[(i, l)];
                }
            }
        }
    }
    kernel_basis(&rows, &RankPolicy::default()).unwrap().ncols()
}

#[test]
fn burnside_matches_commutation_oracle() {
    let rho = triangle_group(3, 3, 4).unwrap().rep;
    let v = burnside_irreducible(&rho.matrices);
    assert!(v.irreducible_over_c);
    assert_eq!((v.algebra_dim, commutant_dim(&rho.matrices)), (9, 1));
    let emb = rho.embed(Embedding::Standard).unwrap();
    let w = burnside_irreducible(&emb.matrices);
    assert!(!w.irreducible_over_c);
    assert_eq!(w.commutant_dim, 2);
    assert_eq!(commutant_dim(&emb.matrices), 2);
}

#[test]
fn non_orientable_closed_surfaces() {
    // −3χ(|O|) + 2c again, now via the orientable embedding.
    for (sig, want) in [("N(k=1;b=0;cone=[2,5])", 1), ("N(k=2;b=0;cone=[3])", 2), ("N(k=3;b=0;cone=[])", 3)] {
        for e in [Embedding::Orientable, Embedding::TypePreserving] {
            let r = analyze(&AnalysisRequest::signature(sig).with_embedding(e)).unwrap();
            assert_eq!((r.dims.d_oe, r.dims.d_tp, r.dims.t), (Some(want), Some(want), Some(want)), "{sig} {e}");
            assert!(r.all_passed(), "{sig} {e}");
        }
    }
}
