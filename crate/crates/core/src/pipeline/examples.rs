//! The fixed example set used by `charvar examples`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{analyze, AnalysisRequest, Input, PipelineError, RepSource};
use crate::presentation::PresentationDoc;
use crate::reps::Embedding;

/// ⟨x, s | x³, s²⟩ acting on the hyperbolic plane with a mirror arc and one
/// full boundary component.
pub const O4_FIXTURE_JSON: &str = include_str!("../../../../fixtures/o4.json");

pub fn o4_fixture() -> PresentationDoc {
    serde_json::from_str(O4_FIXTURE_JSON).expect("bundled fixture parses")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExampleFixture {
    pub label: String,
    pub request: AnalysisRequest,
}

fn fixture(label: &str, input: Input, rep: RepSource, embedding: Option<Embedding>, seed: u64) -> ExampleFixture {
    let mut request = AnalysisRequest::new(input).with_rep(rep);
    request.embedding = embedding;
    request.seed = seed;
    ExampleFixture {
        label: label.into(),
        request,
    }
}

pub fn example_fixtures(seed: u64) -> Vec<ExampleFixture> {
    let sig = |s: &str| Input::Signature(s.into());
    let o4 = || Input::Presentation(Box::new(o4_fixture()));
    vec![
        fixture("O2_1", sig("S2(3,3,3,3)"), RepSource::Polygon, None, seed),
        fixture("O2_2", sig("D(3,3;mirror)"), RepSource::Auto, Some(Embedding::Orientable), seed),
        fixture("O2_2", sig("D(3,3;mirror)"), RepSource::Auto, Some(Embedding::TypePreserving), seed),
        fixture("O2_3", sig("D(3,3)"), RepSource::Auto, None, seed),
        fixture("O2_4", o4(), RepSource::Auto, Some(Embedding::Orientable), seed),
        fixture("O2_4", o4(), RepSource::Auto, Some(Embedding::TypePreserving), seed),
    ]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExampleRow {
    pub label: String,
    pub input: String,
    pub embedding: Embedding,
    pub p: usize,
    pub d: usize,
    pub b: usize,
    pub d_oe: Option<usize>,
    pub d_tp: Option<usize>,
    pub f: Option<usize>,
    pub model: String,
    pub smooth: bool,
    pub checks_passed: bool,
}

pub fn examples_table(seed: u64) -> Result<Vec<ExampleRow>, PipelineError> {
    example_fixtures(seed)
        .into_par_iter()
        .map(|fx| {
            let report = analyze(&fx.request)?;
            Ok(ExampleRow {
                label: fx.label,
                input: fx.request.input.describe(),
                embedding: report.request.embedding,
                p: report.dims.p,
                d: report.dims.d,
                b: report.dims.b,
                d_oe: report.dims.d_oe,
                d_tp: report.dims.d_tp,
                f: report.dims.f,
                model: report.model.display.clone(),
                smooth: report.model.smooth,
                checks_passed: report.all_passed(),
            })
        })
        .collect()
}
