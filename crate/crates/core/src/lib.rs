//! Deformation spaces of hyperbolic 2-orbifold representations in SL(n+1)
//! and SL±(n+1): group cohomology with twisted coefficients, cup products,
//! and local models of the character variety.

pub mod classifier;
pub mod cohomology;
pub mod linalg;
pub mod modules;
pub mod pipeline;
pub mod presentation;
pub mod reps;
pub(crate) mod util;

pub use classifier::{classify, ConeLink, LocalModel, Topology};
pub use cohomology::{CohomologyReport, HDims};
pub use linalg::{Matrix, RankPolicy};
pub use modules::{CoefficientModule, ModuleLabel, SlDecomposition};
pub use pipeline::{analyze, verify_suite, AnalysisReport, AnalysisRequest, Input, PipelineError, RepSource};
pub use presentation::{parse_signature, presentation_of, GroupPresentation, OrbifoldSignature, Word};
pub use reps::{Embedding, GroupTag, Representation};
