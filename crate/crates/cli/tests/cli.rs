use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::Arc;

use charvar_core::linalg::Matrix;
use charvar_core::presentation::{parse_signature, presentation_of};
use charvar_core::reps::hyperbolic::triangle_group;
use charvar_core::reps::{GroupTag, PresentationRef, Representation, RepresentationDoc};
use serde_json::Value;

fn charvar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charvar"))
        .args(args)
        .env_remove("CHARVAR_SEED")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn analyze_json_four_point_sphere() {
    let o = charvar(&["analyze", "S2(3,3,3,3)", "--rep", "polygon", "--n", "3", "--embed", "standard", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["schema"], "charvar.report/v1");
    assert_eq!(v["model"]["display"], "R^8 x R^0 x Cone(UT(S^1))");
    assert_eq!(v["dims"]["p"], 8);
    assert_eq!(v["dims"]["d"], 2);
    assert_eq!(v["dims"]["b"], 0);
}

#[test]
fn human_and_json_dims_agree() {
    for sig in ["S2(3,3,3,3)", "O(g=2;b=0;cone=[3])", "S2(2,3,7)"] {
        let human = stdout(&charvar(&["dims", sig]));
        let v = json(&charvar(&["dims", sig, "--json"]));
        for key in ["p", "d", "b", "h1_m_r", "t"] {
            let want = match &v[key] {
                Value::Null => "-".to_string(),
                x => x.to_string(),
            };
            let line = human
                .lines()
                .find(|l| l.split_whitespace().next() == Some(if key == "h1_m_r" { "h1(m_r)" } else { key }))
                .unwrap_or_else(|| panic!("{sig}: no {key} line in\n{human}"));
            assert_eq!(line.split_whitespace().nth(1), Some(want.as_str()), "{sig} {key}");
        }
    }
}

#[test]
fn analyze_human_output_names_model() {
    let o = charvar(&["analyze", "D(3,3;mirror)", "--embed", "type-preserving"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("model      R^4 x R^0 x Cone((S^0 x S^0)/~)"), "{text}");
    assert!(text.contains("topologically non-singular"));
}

#[test]
fn verify_triangle_group_passes() {
    let o = charvar(&["verify", "S2(2,3,7)", "--rep", "triangle", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = json(&o);
    assert_eq!(v["all_passed"], true);
    let names: Vec<&str> = v["entries"].as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    for want in ["relator_residual", "base_irreducible", "exact_agreement", "cup_skew_symmetric_form"] {
        assert!(names.contains(&want), "{want}");
    }
}

#[test]
fn examples_table_lists_every_fixture() {
    let o = charvar(&["examples"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for label in ["O2_1", "O2_2", "O2_3", "O2_4"] {
        assert!(text.contains(label), "{label}");
    }
    let rows = json(&charvar(&["examples", "--json"]));
    assert_eq!(rows.as_array().unwrap().len(), 6);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(charvar(&["analyze", "S2(3,3,3,3)", "--frobnicate"]).status.code(), Some(1));
    assert_eq!(charvar(&["analyze", "S2(3,3,3,3)", "--embed", "sideways"]).status.code(), Some(1));
    assert_eq!(charvar(&["analyze", "D(3,3;mirror)"]).status.code(), Some(1));
    assert_eq!(charvar(&["analyze", "S2(2,3,6)"]).status.code(), Some(1));
    assert_eq!(charvar(&["analyze", "S2(3,3,3,3)", "--tol", "2"]).status.code(), Some(1));
    assert_eq!(charvar(&["analyze", "missing.json"]).status.code(), Some(1));
}

#[test]
fn seed_from_environment() {
    let run = |seed: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_charvar"));
        c.args(["analyze", "S2(3,3,3,3)", "--json"]).env_remove("CHARVAR_SEED");
        if let Some(s) = seed {
            c.env("CHARVAR_SEED", s);
        }
        json(&c.output().unwrap())
    };
    assert_eq!(run(Some("5"))["request"]["seed"], 5);
    assert_eq!(run(None)["request"]["seed"], 1);
    let bad = Command::new(env!("CARGO_BIN_EXE_charvar"))
        .args(["dims", "S2(3,3,3,3)"])
        .env("CHARVAR_SEED", "abc")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn representation_file_round_trip() {
    let rho = triangle_group(3, 3, 4).unwrap().rep;
    let doc = RepresentationDoc::from_rep(&rho, PresentationRef::Signature("S2(3,3,4)".into()));
    let path = tmp("triangle_334.json");
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    let o = charvar(&["dims", "S2(3,3,4)", "--rep", path.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["p"], 2);
}

#[test]
fn reducible_representation_exits_two() {
    let sig = "O(g=2;b=0;cone=[])";
    let pres = Arc::new(presentation_of(&parse_signature(sig).unwrap()).unwrap());
    let id = Matrix::<f64>::identity(3, 3);
    let rho = Representation::new_unchecked(pres, vec![id; 4], GroupTag::Sl, vec![]).unwrap();
    let doc = RepresentationDoc::from_rep(&rho, PresentationRef::Signature(sig.into()));
    let path = tmp("identity_genus2.json");
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    let o = charvar(&["analyze", sig, "--rep", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("irreducible"));
}
