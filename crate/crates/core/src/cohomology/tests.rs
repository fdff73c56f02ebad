use std::sync::Arc;

use nalgebra::DVector;

use super::*;
use crate::modules::{decompose_sl, trivial_module, SlBasis};
use crate::presentation::{parse_signature, presentation_of, GroupPresentation, TorsionMarker};
use crate::reps::hyperbolic::{polygon_group, triangle_group, DEFAULT_SEED};
use crate::reps::{Embedding, GroupTag, Representation};

fn pres(sig: &str) -> Arc<GroupPresentation> {
    Arc::new(presentation_of(&parse_signature(sig).unwrap()).unwrap())
}

fn policy() -> RankPolicy {
    RankPolicy::default()
}

#[test]
fn free_group_has_no_relator_rows() {
    let p = Arc::new(GroupPresentation {
        name: "F2".into(),
        generator_names: vec!["a".into(), "b".into()],
        relators: vec![],
        orientation: vec![1, 1],
        torsion: vec![],
        peripheral_words: vec![],
        long_relator: None,
        closed: false,
        cells: None,
        full_boundary_count: 0,
        signature: None,
        note: None,
    });
    let m = trivial_module::<f64>(p, 2);
    assert_eq!(fox_matrix(&m).nrows(), 0);
    let d = h_dims(&m, &policy()).unwrap();
    assert_eq!((d.z1, d.h0, d.h1, d.h2), (4, 2, 4, 0));
}

#[test]
fn geometric_series_kills_rotation_relator() {
    let n = 5u32;
    let p = Arc::new(GroupPresentation {
        name: "Z/5".into(),
        generator_names: vec!["x".into()],
        relators: vec![Word::gen(0).power(n)],
        orientation: vec![1],
        torsion: vec![TorsionMarker { generator: 0, order: n }],
        peripheral_words: vec![],
        long_relator: None,
        closed: false,
        cells: None,
        full_boundary_count: 0,
        signature: None,
        note: None,
    });
    let t = std::f64::consts::TAU / n as f64;
    let r = Matrix::from_row_slice(2, 2, &[t.cos(), -t.sin(), t.sin(), t.cos()]);
    let m = CoefficientModule::new(ModuleLabel::Standard, p, 2, vec![r]).unwrap();
    let fox = fox_matrix(&m);
    assert!(fox.amax() < 1e-12);
    let d = h_dims(&m, &policy()).unwrap();
    assert_eq!((d.z1, d.b1, d.h0, d.h1), (2, 2, 0, 0));
}

#[test]
fn trivial_coefficients_genus_two() {
    let m = trivial_module::<f64>(pres("O(g=2;b=0;cone=[])"), 1);
    let d = h_dims(&m, &policy()).unwrap();
    assert_eq!((d.h0, d.h1, d.h2), (1, 4, 1));
    assert_eq!(twisted_euler(&m, &policy()).unwrap(), -2);
    assert_eq!(h1_basis(&m, &policy()).unwrap().len(), 4);
}

#[test]
fn exact_and_float_agree_on_trivial_module() {
    let p = pres("S2(3,3,3,3)");
    let mf = trivial_module::<f64>(p.clone(), 2);
    let me = trivial_module::<num_rational::BigRational>(p, 2);
    let a = h_dims(&mf, &policy()).unwrap();
    let b = h_dims(&me, &policy()).unwrap();
    assert_eq!((a.h0, a.h1, a.h2), (b.h0, b.h1, b.h2));
    assert!(b.fox_rank.exact);
}

#[test]
fn fundamental_class_sign_convention() {
    let p = pres("O(g=2;b=0;cone=[])");
    let m = trivial_module::<f64>(p.clone(), 1);
    let cyc = fundamental_cycle(&p).unwrap();
    let unit = |g: usize| {
        let mut z = Cocycle::zero(&m);
        z.values[g][0] = 1.0;
        z
    };
    let (a1, b1, a2) = (unit(0), unit(1), unit(2));
    let dot = |x: &DVector<f64>, y: &DVector<f64>| x.dot(y);
    let v = cup_pairing(&cyc, &m, &a1, &m, &b1, dot).unwrap();
    assert!((v.value - 1.0).abs() < 1e-12, "{v:?}");
    let w = cup_pairing(&cyc, &m, &b1, &m, &a1, dot).unwrap();
    assert!((w.value + 1.0).abs() < 1e-12);
    let u = cup_pairing(&cyc, &m, &a1, &m, &a2, dot).unwrap();
    assert!(u.value.abs() < 1e-12);
}

#[test]
fn turnover_blocks() {
    let b = triangle_group(3, 3, 4).unwrap();
    let dec = decompose_sl(&b.rep, Embedding::Standard).unwrap();
    let c = h_dims(&dec.m_c, &policy()).unwrap();
    assert_eq!((c.h0, c.h1, c.h2), (0, 0, 0));
    let g0 = h_dims(&dec.g0, &policy()).unwrap();
    assert_eq!(g0.h1, 2);
    assert_eq!(twisted_euler(&dec.g0, &policy()).unwrap(), g0.euler());
    assert!(h1_basis(&dec.m_c, &policy()).unwrap().is_empty());
}

fn four_point() -> crate::modules::SlDecomposition<f64> {
    let b = polygon_group(&[3, 3, 3, 3], DEFAULT_SEED).unwrap();
    decompose_sl(&b.rep, Embedding::Standard).unwrap()
}

#[test]
fn four_point_sphere_dims_and_pairing() {
    let dec = four_point();
    for (m, want) in [(&dec.g0, 8), (&dec.m_c, 2), (&dec.m_r, 2), (&dec.d, 0)] {
        let d = h_dims(m, &policy()).unwrap();
        assert_eq!(d.h1, want, "{}", m.label);
        assert_eq!(twisted_euler(m, &policy()).unwrap(), d.euler(), "{}", m.label);
        assert!(d.min_gap() > 1e3);
    }
    let cyc = fundamental_cycle(&dec.m_c.presentation).unwrap();
    let hr = h1_basis(&dec.m_r, &policy()).unwrap();
    let hc = h1_basis(&dec.m_c, &policy()).unwrap();
    let pm = pairing_matrix(&cyc, &dec.m_r, &hr, &dec.m_c, &hc, &dec.cross_pairing).unwrap();
    let sv = pm.singular_values();
    assert!(sv.min() > 1e-6 * sv.max(), "{sv}");
}

#[test]
fn coboundaries_pair_to_zero() {
    let dec = four_point();
    let cyc = fundamental_cycle(&dec.m_c.presentation).unwrap();
    let hc = h1_basis(&dec.m_c, &policy()).unwrap();
    let br = Cocycle::coboundary(&dec.m_r, &DVector::from_vec(vec![0.3, -1.2, 0.7]));
    assert!(br.defect(&dec.m_r) < 1e-12);
    let v = cross_pairing_value(&dec, &cyc, &br, &hc[0]).unwrap();
    assert!(v.vanishes(1e-8), "{v:?}");
    let hr = h1_basis(&dec.m_r, &policy()).unwrap();
    let bc = Cocycle::coboundary(&dec.m_c, &DVector::from_vec(vec![1.0, 0.5, -0.25]));
    let w = cross_pairing_value(&dec, &cyc, &hr[1], &bc).unwrap();
    assert!(w.vanishes(1e-8), "{w:?}");
}

#[test]
fn obstruction_ratio_is_constant() {
    let dec = four_point();
    let cyc = fundamental_cycle(&dec.m_c.presentation).unwrap();
    let basis = h1_basis(&dec.full, &policy()).unwrap();
    assert_eq!(basis.len(), 12);
    let est = estimate_cn(&dec, &cyc, &basis, 12, 7).unwrap();
    assert!(est.relative_std.unwrap() < 1e-6, "{est:?}");
    // g0-only cocycles are unobstructed in the d-direction.
    let g0 = h1_basis(&dec.g0, &policy()).unwrap();
    let z = g0[0].map(ModuleLabel::FullG, &dec.inc_g0);
    let s = goldman_obstruction(&dec, &cyc, &z).unwrap();
    assert!(s.obstruction.vanishes(1e-8), "{s:?}");
}

#[test]
fn weil_slopes_for_four_point_sphere() {
    let dec = four_point();
    let big = SlBasis::new(4);
    let blocks = [(&dec.g0, &dec.inc_g0), (&dec.m_c, &dec.inc_c), (&dec.m_r, &dec.inc_r)];
    for (m, inc) in blocks {
        for z in h1_basis(m, &policy()).unwrap() {
            let mats: Vec<Matrix<f64>> = z.values.iter().map(|v| big.from_coords((inc * v).as_slice())).collect();
            let w = weil_check(&dec.embedded, &mats);
            assert!(w.passed(), "{}: {w:?}", m.label);
        }
    }
}

#[test]
fn degenerate_group_is_flagged() {
    let p = Arc::new(GroupPresentation::trivial_group());
    let m = trivial_module::<f64>(p, 3);
    let d = h_dims(&m, &policy()).unwrap();
    assert!(d.degenerate);
    assert_eq!((d.h0, d.h1, d.h2), (3, 0, 0));
}

#[test]
fn identity_rep_is_not_used_for_rank_sanity() {
    // An embedded identity representation has every block trivial.
    let p = pres("S2(3,3,4)");
    let id = Matrix::<f64>::identity(3, 3);
    let rho = Representation::new_unchecked(p, vec![id.clone(), id.clone(), id], GroupTag::Sl, vec![]).unwrap();
    let dec = decompose_sl(&rho, Embedding::Standard).unwrap();
    assert_eq!(h_dims(&dec.m_c, &policy()).unwrap().h0, 3);
}
