use super::*;

fn run(req: AnalysisRequest) -> AnalysisReport {
    analyze(&req).unwrap_or_else(|e| panic!("{e}"))
}

fn failed(r: &AnalysisReport) -> Vec<&LedgerEntry> {
    r.ledger.iter().filter(|e| !e.passed).collect()
}

#[test]
fn four_point_sphere() {
    let r = run(AnalysisRequest::signature("S2(3,3,3,3)").with_rep(RepSource::Polygon));
    assert_eq!((r.dims.p, r.dims.d, r.dims.b), (8, 2, 0));
    assert_eq!(r.model.display, "R^8 x R^0 x Cone(UT(S^1))");
    assert!(r.all_passed(), "{:#?}", failed(&r));
    assert!(r.pairing.is_some());
    assert!(r.obstruction.is_some());
}

#[test]
fn turnover_is_rigid_point() {
    let r = run(AnalysisRequest::signature("S2(3,3,4)"));
    assert_eq!((r.dims.p, r.dims.d, r.dims.b), (2, 0, 0));
    assert!(r.model.smooth);
    assert!(r.all_passed(), "{:#?}", failed(&r));
}

#[test]
fn mirrored_disc_both_embeddings() {
    for e in [Embedding::Orientable, Embedding::TypePreserving] {
        let r = run(AnalysisRequest::signature("D(3,3;mirror)").with_embedding(e));
        assert_eq!(r.dims.p, 4, "{e}");
        assert_eq!((r.dims.d_oe, r.dims.d_tp, r.dims.f), (Some(1), Some(1), Some(0)));
        assert!(r.all_passed(), "{e}: {:#?}", failed(&r));
    }
}

#[test]
fn o4_fixture_dims() {
    let doc = o4_fixture();
    for e in [Embedding::Orientable, Embedding::TypePreserving] {
        let r = run(AnalysisRequest::new(Input::Presentation(Box::new(doc.clone()))).with_embedding(e));
        assert_eq!(r.dims.p, 2);
        assert_eq!((r.dims.d_oe, r.dims.d_tp, r.dims.f), (Some(1), Some(0), Some(1)));
        assert!(r.all_passed(), "{e}: {:#?}", failed(&r));
    }
}

#[test]
fn non_orientable_needs_embedding() {
    let e = analyze(&AnalysisRequest::signature("D(3,3;mirror)")).unwrap_err();
    assert!(matches!(e, PipelineError::Usage(_)));
}

#[test]
fn verify_suite_closed_surface() {
    let v = verify_suite(&AnalysisRequest::signature("S2(3,3,3,3)"));
    assert!(v.all_passed, "{:#?}", v.entries.iter().filter(|e| !e.passed).collect::<Vec<_>>());
    for name in ["exact_agreement", "cup_skew_symmetric_form", "cup_bracket_symmetric", "pairing_nondegenerate"] {
        assert!(v.entries.iter().any(|e| e.name == name), "{name}");
    }
}

#[test]
fn report_round_trips_through_json() {
    let r = run(AnalysisRequest::signature("S2(2,3,7)"));
    let back: AnalysisReport = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(back.dims, r.dims);
    assert_eq!(back.schema, SCHEMA);
}
