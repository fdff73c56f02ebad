//! End-to-end analysis of one input: build or load ρ, check the
//! irreducibility hypothesis, embed, decompose, compute every cohomology
//! table, run the cross-checks and classify.

mod checks;
mod examples;

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classifier::{classify, ClassifierError, LocalModel, Topology};
use crate::cohomology::{cohomology_report, CnEstimate, CohomologyError, CohomologyReport};
use crate::linalg::{MatrixDoc, RankPolicy, AMBIGUOUS_GAP};
use crate::modules::{decompose_sl, so21_adjoint_module, trivial_module, ModuleError, SlDecomposition};
use crate::presentation::{
    euler_characteristic, orientation_cover, parse_signature, presentation_from_raw, presentation_of, GroupPresentation,
    PresentationDoc, PresentationError,
};
use crate::reps::hyperbolic::{build_hyperbolic, lorentz_defect, polygon_group, triangle_group, BuildInfo, BuiltRep};
use crate::reps::{
    burnside_irreducible, BurnsideVerdict, Embedding, GroupTag, PresentationRef, RepError, Representation,
    RepresentationDoc,
};

pub use checks::{LedgerEntry, VerifyLedger};
pub use examples::{example_fixtures, examples_table, o4_fixture, ExampleFixture, ExampleRow, O4_FIXTURE_JSON};

pub const SCHEMA: &str = "charvar.report/v1";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PipelineError {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Classifier(#[from] ClassifierError),
    #[error("hypotheses not met: {message}")]
    Hypothesis { message: String, ledger: Vec<LedgerEntry> },
    #[error("precondition failed: {message}")]
    Precondition { message: String, ledger: Vec<LedgerEntry> },
    #[error("ambiguous rank in module {module}: singular value gap {gap:.3e} is below {AMBIGUOUS_GAP}")]
    AmbiguousRank { module: String, gap: f64 },
    #[error("usage: {0}")]
    Usage(String),
}

impl PipelineError {
    /// Ledger accumulated before a fail-closed abort.
    pub fn ledger(&self) -> &[LedgerEntry] {
        match self {
            PipelineError::Hypothesis { ledger, .. } | PipelineError::Precondition { ledger, .. } => ledger,
            _ => &[],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Input {
    Signature(String),
    Presentation(Box<PresentationDoc>),
}

impl Input {
    pub fn presentation(&self) -> Result<GroupPresentation, PipelineError> {
        match self {
            Input::Signature(text) => Ok(presentation_of(&parse_signature(text)?)?),
            Input::Presentation(doc) => Ok(presentation_from_raw(doc)?),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Input::Signature(s) => s.clone(),
            Input::Presentation(doc) => doc.name.clone().unwrap_or_else(|| "raw presentation".into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum RepSource {
    /// Pick a builder from the presentation.
    Auto,
    Triangle,
    Polygon,
    File(Box<RepresentationDoc>),
}

impl RepSource {
    pub fn name(&self) -> &'static str {
        match self {
            RepSource::Auto => "auto",
            RepSource::Triangle => "triangle",
            RepSource::Polygon => "polygon",
            RepSource::File(_) => "file",
        }
    }
}

/// Optional, more expensive checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSet {
    pub weil: bool,
    /// Random cocycle pairs for the cup symmetry check (0 disables).
    pub cup_pairs: usize,
    /// Random cocycles for the obstruction ratio.
    pub obstruction_samples: usize,
    pub exact_agreement: bool,
}

impl CheckSet {
    pub fn analyze() -> Self {
        CheckSet {
            weil: true,
            cup_pairs: 0,
            obstruction_samples: 12,
            exact_agreement: false,
        }
    }

    pub fn full() -> Self {
        CheckSet {
            weil: true,
            cup_pairs: 100,
            obstruction_samples: 12,
            exact_agreement: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisRequest {
    pub input: Input,
    pub rep: RepSource,
    /// Base degree n of ρ: Γ → SL±_n.
    pub n: usize,
    /// Required for non-orientable inputs; defaults to standard otherwise.
    pub embedding: Option<Embedding>,
    pub policy: RankPolicy,
    pub seed: u64,
    pub checks: CheckSet,
}

impl AnalysisRequest {
    pub fn new(input: Input) -> Self {
        AnalysisRequest {
            input,
            rep: RepSource::Auto,
            n: 3,
            embedding: None,
            policy: RankPolicy::default(),
            seed: crate::reps::hyperbolic::DEFAULT_SEED,
            checks: CheckSet::analyze(),
        }
    }

    pub fn signature(text: &str) -> Self {
        Self::new(Input::Signature(text.into()))
    }

    pub fn with_embedding(mut self, e: Embedding) -> Self {
        self.embedding = Some(e);
        self
    }

    pub fn with_rep(mut self, rep: RepSource) -> Self {
        self.rep = rep;
        self
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = n;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputEcho {
    pub description: String,
    pub name: String,
    pub generators: Vec<String>,
    pub relator_count: usize,
    pub orientable: bool,
    pub closed: bool,
    /// Orbifold Euler characteristic, for signature inputs.
    pub euler_characteristic: Option<String>,
    pub underlying_euler: Option<i64>,
    pub cone_points: usize,
    pub full_boundary_count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RequestEcho {
    pub n: usize,
    pub embedding: Embedding,
    pub rep_source: String,
    pub seed: u64,
    pub policy: RankPolicy,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepresentationSummary {
    pub group: GroupTag,
    pub degree: usize,
    pub lineage: Vec<String>,
    pub build: Option<BuildInfo>,
    pub relator_residual: f64,
    pub relator_residuals: Vec<f64>,
    pub matrices: Vec<MatrixDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Irreducibility {
    pub base: BurnsideVerdict,
    /// Restriction to the orientation cover (non-orientable inputs).
    pub orientation_cover: Option<BurnsideVerdict>,
    pub embedded: BurnsideVerdict,
}

/// The numbers the local model is built from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Dimensions {
    pub p: usize,
    /// h¹ of the m_c block under the chosen embedding.
    pub d: usize,
    pub b: usize,
    pub h1_m_r: usize,
    pub d_oe: Option<usize>,
    pub d_tp: Option<usize>,
    pub f: Option<usize>,
    /// Teichmüller dimension via so(2,1), when ρ preserves the Lorentz form.
    pub t: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairingSummary {
    pub singular_values: Vec<f64>,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: String,
    pub version: String,
    pub input: InputEcho,
    pub request: RequestEcho,
    pub representation: RepresentationSummary,
    pub irreducibility: Irreducibility,
    pub cohomology: CohomologyReport,
    /// Tables for the other embedding of a non-orientable input.
    pub alternate_cohomology: Option<CohomologyReport>,
    pub dims: Dimensions,
    pub pairing: Option<PairingSummary>,
    pub obstruction: Option<CnEstimate>,
    pub model: LocalModel,
    pub ledger: Vec<LedgerEntry>,
}

impl AnalysisReport {
    pub fn all_passed(&self) -> bool {
        self.ledger.iter().all(|e| e.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn echo(req: &AnalysisRequest, pres: &GroupPresentation) -> InputEcho {
    InputEcho {
        description: req.input.describe(),
        name: pres.name.clone(),
        generators: pres.generator_names.clone(),
        relator_count: pres.relators.len(),
        orientable: pres.is_orientable(),
        closed: pres.closed,
        euler_characteristic: pres.signature.as_ref().map(|s| euler_characteristic(s).to_string()),
        underlying_euler: pres.underlying_euler(),
        cone_points: pres.cone_count(),
        full_boundary_count: pres.full_boundary_count,
    }
}

fn same_presentation(a: &GroupPresentation, b: &GroupPresentation) -> bool {
    a.generator_names.len() == b.generator_names.len() && a.relators == b.relators && a.orientation == b.orientation
}

/// Build or load ρ; the representation is not validated here so that a bad
/// file reaches the ledger instead of failing opaquely.
fn obtain_rep(req: &AnalysisRequest, pres: &Arc<GroupPresentation>) -> Result<BuiltRep, PipelineError> {
    let sphere_orders = || -> Result<Vec<u32>, PipelineError> {
        match &pres.signature {
            Some(s)
                if s.kind == crate::presentation::SignatureKind::OrientableSurface { genus: 0 }
                    && s.boundary_circles == 0 =>
            {
                Ok(s.cone_orders.clone())
            }
            _ => Err(PipelineError::Usage(format!(
                "--rep {} needs a sphere signature, got {}",
                req.rep.name(),
                pres.name
            ))),
        }
    };
    match &req.rep {
        RepSource::Auto => Ok(build_hyperbolic(pres, req.n, req.seed)?),
        RepSource::Triangle => {
            if req.n != 3 {
                return Err(PipelineError::Usage("triangle groups are built for n = 3".into()));
            }
            let o = sphere_orders()?;
            if o.len() != 3 {
                return Err(PipelineError::Usage(format!("--rep triangle needs three cone points, got {}", o.len())));
            }
            Ok(triangle_group(o[0], o[1], o[2])?)
        }
        RepSource::Polygon => {
            if req.n != 3 {
                return Err(PipelineError::Usage("polygon groups are built for n = 3".into()));
            }
            let o = sphere_orders()?;
            Ok(polygon_group(&o, req.seed)?)
        }
        RepSource::File(doc) => {
            let own = match &doc.presentation {
                PresentationRef::Signature(s) => presentation_of(&parse_signature(s)?)?,
                PresentationRef::Inline(d) => presentation_from_raw(d)?,
            };
            if !same_presentation(&own, pres) {
                return Err(PipelineError::Usage(format!(
                    "representation file is for {}, not {}",
                    own.name, pres.name
                )));
            }
            let mats = doc.matrices_f64()?;
            let degree = mats.first().map(|m| m.nrows()).unwrap_or(0);
            if degree != req.n {
                return Err(PipelineError::Usage(format!(
                    "representation file has degree {degree} but --n is {}",
                    req.n
                )));
            }
            let rep = Representation::new_unchecked(pres.clone(), mats, doc.group, doc.lineage.clone())?;
            let residual = rep.relator_residual;
            Ok(BuiltRep {
                rep,
                info: BuildInfo {
                    method: "file".into(),
                    seed: None,
                    attempts: 0,
                    evaluations: 0,
                    iterations: 0,
                    residual,
                    parameters: vec![],
                },
            })
        }
    }
}

/// Reject ambiguous rank decisions rather than resolving them silently.
fn check_gaps(report: &CohomologyReport) -> Result<(), PipelineError> {
    for m in &report.modules {
        let gap = m.dims.min_gap();
        if gap < AMBIGUOUS_GAP {
            return Err(PipelineError::AmbiguousRank {
                module: m.module.clone(),
                gap,
            });
        }
    }
    Ok(())
}

fn block_report(dec: &SlDecomposition<f64>, policy: &RankPolicy) -> Result<CohomologyReport, PipelineError> {
    let report = cohomology_report(&[&dec.g0, &dec.m_c, &dec.m_r, &dec.d], policy)?;
    check_gaps(&report)?;
    Ok(report)
}

/// Run the analysis; fails closed on any failed precondition.
pub fn analyze(req: &AnalysisRequest) -> Result<AnalysisReport, PipelineError> {
    let pres = Arc::new(req.input.presentation()?);
    if pres.is_degenerate() {
        return Err(PipelineError::Usage(
            "the trivial group has no representation to analyze; its cohomology is reported as degenerate".into(),
        ));
    }
    let orientable = pres.is_orientable();
    let embedding = match (req.embedding, orientable) {
        (Some(Embedding::Standard), false) => {
            return Err(PipelineError::Usage(
                "non-orientable inputs need --embed orientable or --embed type-preserving".into(),
            ))
        }
        (None, false) => {
            return Err(PipelineError::Usage(
                "non-orientable inputs need an explicit --embed (orientable or type-preserving)".into(),
            ))
        }
        (Some(e), _) => e,
        (None, true) => Embedding::Standard,
    };
    let built = obtain_rep(req, &pres)?;
    let rho = built.rep;
    let mut ledger = Vec::new();

    // Preconditions on ρ.
    checks::representation_checks(&rho, &mut ledger);
    if let Some(bad) = ledger.iter().find(|e| !e.passed) {
        return Err(PipelineError::Precondition {
            message: format!("{}: {}", bad.name, bad.detail),
            ledger,
        });
    }
    let base = burnside_irreducible(&rho.matrices);
    let cover_verdict = if orientable {
        None
    } else {
        let cover = orientation_cover(&pres)?;
        let restricted = rho.restrict(&cover)?;
        Some(burnside_irreducible(&restricted.matrices))
    };
    let hyp = cover_verdict.as_ref().unwrap_or(&base);
    ledger.push(LedgerEntry::bool_check(
        if orientable { "base_irreducible" } else { "orientation_cover_irreducible" },
        hyp.irreducible_over_c,
        format!("algebra dim {} of {}", hyp.algebra_dim, rho.degree() * rho.degree()),
    ));
    if !hyp.irreducible_over_c {
        return Err(PipelineError::Hypothesis {
            message: if orientable {
                "ρ is not C-irreducible".into()
            } else {
                "ρ restricted to the orientation cover is not C-irreducible".into()
            },
            ledger,
        });
    }

    let dec = decompose_sl(&rho, embedding)?;
    let embedded_verdict = burnside_irreducible(&dec.embedded.matrices);
    let cohomology = block_report(&dec, &req.policy)?;
    let h1 = |r: &CohomologyReport, m: &str| r.h1(m).expect("block present");
    let (p, d, b, h1_m_r) = (
        h1(&cohomology, "g0"),
        h1(&cohomology, "m_c"),
        h1(&cohomology, "d"),
        h1(&cohomology, "m_r"),
    );

    // Non-orientable: both embeddings, f and t.
    let (alternate, d_oe, d_tp, f, alt_dec) = if orientable {
        (None, None, None, None, None)
    } else {
        let other = match embedding {
            Embedding::Orientable if rho.is_type_preserving() => Some(Embedding::TypePreserving),
            Embedding::TypePreserving => Some(Embedding::Orientable),
            _ => None,
        };
        let (alt, alt_dec) = match other {
            Some(e) => {
                let dd = decompose_sl(&rho, e)?;
                (Some(block_report(&dd, &req.policy)?), Some(dd))
            }
            None => (None, None),
        };
        let mc = |r: &CohomologyReport| h1(r, "m_c");
        let (oe, tp) = match embedding {
            Embedding::TypePreserving => (alt.as_ref().map(mc), Some(d)),
            _ => (Some(d), alt.as_ref().map(mc)),
        };
        (alt, oe, tp, Some(pres.full_boundary_count), alt_dec)
    };
    let lorentz = rho.degree() == 3 && rho.matrices.iter().all(|m| lorentz_defect(m) < 1e-8);
    let t = if lorentz {
        let so = so21_adjoint_module(&rho)?;
        let r = cohomology_report(&[&so], &req.policy)?;
        check_gaps(&r)?;
        Some(h1(&r, "so21"))
    } else {
        None
    };
    let dims = Dimensions {
        p,
        d,
        b,
        h1_m_r,
        d_oe,
        d_tp,
        f,
        t,
    };

    checks::structural_checks(&dec, &cohomology, &mut ledger);
    if let (Some(a), Some(ad)) = (&alternate, &alt_dec) {
        checks::structural_checks(ad, a, &mut ledger);
    }
    checks::dimension_checks(&pres, req.n, &dims, &mut ledger);
    let (pairing, obstruction) = checks::closed_orientable_checks(&dec, &dims, req, &mut ledger)?;
    if req.checks.weil {
        checks::weil_checks(&dec, &req.policy, &mut ledger)?;
    }
    if req.checks.cup_pairs > 0 {
        checks::cup_symmetry_checks(&dec, req, &mut ledger)?;
    }
    if req.checks.exact_agreement {
        checks::exact_agreement(&pres, &dec, &req.policy, &mut ledger)?;
    }

    let topology = if pres.closed { Topology::Closed } else { Topology::Boundary };
    let model = classify(topology, orientable, embedding, req.n + 1, p, d, b)?;
    ledger.push(LedgerEntry::bool_check(
        "classifier_inputs",
        model.smooth_dim == p && model.abelian_dim == b && model.cone_link.d() == d,
        format!("p = {p}, d = {d}, b = {b}"),
    ));

    Ok(AnalysisReport {
        schema: SCHEMA.into(),
        version: env!("CARGO_PKG_VERSION").into(),
        input: echo(req, &pres),
        request: RequestEcho {
            n: req.n,
            embedding,
            rep_source: req.rep.name().into(),
            seed: req.seed,
            policy: req.policy,
        },
        representation: RepresentationSummary {
            group: rho.group,
            degree: rho.degree(),
            lineage: rho.lineage.clone(),
            build: Some(built.info),
            relator_residual: rho.relator_residual,
            relator_residuals: rho.relator_residuals.clone(),
            matrices: rho.matrices.iter().map(MatrixDoc::from_f64).collect(),
        },
        irreducibility: Irreducibility {
            base,
            orientation_cover: cover_verdict,
            embedded: embedded_verdict,
        },
        cohomology,
        alternate_cohomology: alternate,
        dims,
        pairing,
        obstruction,
        model,
        ledger,
    })
}

/// Every cross-check, with failures reported as data.
pub fn verify_suite(req: &AnalysisRequest) -> VerifyLedger {
    let mut full = req.clone();
    full.checks = CheckSet::full();
    match analyze(&full) {
        Ok(report) => VerifyLedger::new(report.ledger, None),
        Err(e) => {
            let mut entries = e.ledger().to_vec();
            entries.push(LedgerEntry::bool_check("analysis", false, e.to_string()));
            VerifyLedger::new(entries, Some(e.to_string()))
        }
    }
}

/// A trivial module for the group, used by checks that need rational data.
pub(crate) fn rational_trivial(pres: &Arc<GroupPresentation>) -> crate::modules::CoefficientModule<num_rational::BigRational> {
    trivial_module(pres.clone(), 2)
}

#[cfg(test)]
mod tests;
