//! Representations of presented groups: validation, twists, embeddings into
//! one dimension higher, hyperbolic builders and the Burnside test.

mod burnside;
pub mod hyperbolic;
pub mod optim;

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{identity_residual, Invertible, Matrix, MatrixDoc, ScalarTag};
use crate::presentation::{GroupPresentation, Word};

pub use burnside::{burnside_irreducible, BurnsideVerdict};

/// Default bound on relator residuals.
pub const RELATOR_BOUND: f64 = 1e-8;
/// Determinants must be within this of ±1.
pub const DET_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepError {
    #[error("representation shape: {0}")]
    Shape(String),
    #[error("generator {generator}: determinant {det} is not {expected}")]
    Determinant { generator: String, det: f64, expected: String },
    #[error("relator {relator} has residual {residual:.3e} (bound {bound:.1e})")]
    Relator { relator: usize, residual: f64, bound: f64 },
    #[error("generator {generator}: {message}")]
    Torsion { generator: String, message: String },
    #[error("not type-preserving: det ρ({generator}) = {det} but α = {alpha}")]
    TypePreserving { generator: String, det: f64, alpha: i8 },
    #[error("{0} is not a character of the group")]
    NotACharacter(String),
    #[error("embedding {embedding} needs {needed}")]
    TagMismatch { embedding: String, needed: String },
    #[error("optimizer did not converge: best residual {best_residual:.3e} after {evaluations} evaluations")]
    Optimizer { best_residual: f64, evaluations: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupTag {
    #[serde(rename = "SL")]
    Sl,
    #[serde(rename = "SL±")]
    SlPm,
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupTag::Sl => f.write_str("SL"),
            GroupTag::SlPm => f.write_str("SL±"),
        }
    }
}

/// One matrix per generator of a shared presentation.
#[derive(Clone, Debug)]
pub struct Representation<T = f64> {
    pub presentation: Arc<GroupPresentation>,
    pub matrices: Vec<Matrix<T>>,
    pub inverses: Vec<Matrix<T>>,
    pub group: GroupTag,
    pub lineage: Vec<String>,
    /// Max entrywise deviation of a relator image from the identity.
    pub relator_residual: f64,
    pub relator_residuals: Vec<f64>,
}

impl<T: Invertible> Representation<T> {
    /// Build without enforcing any bound; residuals are still measured.
    pub fn new_unchecked(
        presentation: Arc<GroupPresentation>,
        matrices: Vec<Matrix<T>>,
        group: GroupTag,
        lineage: Vec<String>,
    ) -> Result<Self, RepError> {
        if matrices.len() != presentation.ngens() {
            return Err(RepError::Shape(format!(
                "{} matrices for {} generators",
                matrices.len(),
                presentation.ngens()
            )));
        }
        let n = matrices.first().map(|m| m.nrows()).unwrap_or(0);
        for (i, m) in matrices.iter().enumerate() {
            if m.nrows() != n || m.ncols() != n {
                return Err(RepError::Shape(format!(
                    "matrix for generator {} is {}x{}, expected {n}x{n}",
                    i + 1,
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        let inverses = matrices
            .iter()
            .enumerate()
            .map(|(i, m)| {
                T::inverse(m).map_err(|_| RepError::Shape(format!("matrix for generator {} is singular", i + 1)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut rep = Representation {
            presentation,
            matrices,
            inverses,
            group,
            lineage,
            relator_residual: 0.0,
            relator_residuals: vec![],
        };
        rep.relator_residuals = rep
            .presentation
            .relators
            .iter()
            .map(|r| identity_residual(&rep.eval(r)))
            .collect();
        rep.relator_residual = rep.relator_residuals.iter().copied().fold(0.0, f64::max);
        Ok(rep)
    }

    /// Build and enforce the representation invariants.
    pub fn new(
        presentation: Arc<GroupPresentation>,
        matrices: Vec<Matrix<T>>,
        group: GroupTag,
        lineage: Vec<String>,
    ) -> Result<Self, RepError> {
        let rep = Self::new_unchecked(presentation, matrices, group, lineage)?;
        rep.validate(RELATOR_BOUND)?;
        Ok(rep)
    }

    /// Matrix size n.
    pub fn degree(&self) -> usize {
        self.matrices.first().map(|m| m.nrows()).unwrap_or(0)
    }

    pub fn eval(&self, w: &Word) -> Matrix<T> {
        let n = self.degree();
        let mut acc = Matrix::<T>::identity(n, n);
        for l in w.letters() {
            let m = if l.inverse {
                &self.inverses[l.generator]
            } else {
                &self.matrices[l.generator]
            };
            acc = &acc * m;
        }
        acc
    }

    pub fn determinants(&self) -> Vec<f64> {
        self.matrices.iter().map(|m| T::determinant(m).real_f64()).collect()
    }

    pub fn validate(&self, bound: f64) -> Result<(), RepError> {
        let names = &self.presentation.generator_names;
        for (i, d) in self.determinants().into_iter().enumerate() {
            let ok = match self.group {
                GroupTag::Sl => (d - 1.0).abs() <= DET_TOL,
                GroupTag::SlPm => (d.abs() - 1.0).abs() <= DET_TOL,
            };
            if !ok {
                return Err(RepError::Determinant {
                    generator: names[i].clone(),
                    det: d,
                    expected: if self.group == GroupTag::Sl { "1".into() } else { "±1".into() },
                });
            }
        }
        for (i, &r) in self.relator_residuals.iter().enumerate() {
            if r > bound || r.is_nan() {
                return Err(RepError::Relator {
                    relator: i,
                    residual: r,
                    bound,
                });
            }
        }
        self.check_torsion()?;
        Ok(())
    }

    /// ρ(x)^n = I and no smaller positive power is within 1e-3 of I.
    pub fn check_torsion(&self) -> Result<(), RepError> {
        let n = self.degree();
        for t in &self.presentation.torsion {
            let a = &self.matrices[t.generator];
            let mut p = Matrix::<T>::identity(n, n);
            for k in 1..=t.order {
                p = &p * a;
                let r = identity_residual(&p);
                if k < t.order && r < 1e-3 {
                    return Err(RepError::Torsion {
                        generator: self.presentation.generator_names[t.generator].clone(),
                        message: format!("power {k} is already the identity (declared order {})", t.order),
                    });
                }
                if k == t.order && r > RELATOR_BOUND {
                    return Err(RepError::Torsion {
                        generator: self.presentation.generator_names[t.generator].clone(),
                        message: format!("power {k} misses the identity by {r:.3e}"),
                    });
                }
            }
        }
        Ok(())
    }

    /// det ρ(γ) = α(γ) on every generator.
    pub fn is_type_preserving(&self) -> bool {
        self.type_preserving_defect().is_none()
    }

    fn type_preserving_defect(&self) -> Option<RepError> {
        for (i, d) in self.determinants().into_iter().enumerate() {
            let a = self.presentation.orientation[i];
            if (d - a as f64).abs() > DET_TOL {
                return Some(RepError::TypePreserving {
                    generator: self.presentation.generator_names[i].clone(),
                    det: d,
                    alpha: a,
                });
            }
        }
        None
    }

    pub fn require_type_preserving(&self) -> Result<(), RepError> {
        match self.type_preserving_defect() {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }

    fn derived(&self, matrices: Vec<Matrix<T>>, group: GroupTag, step: String) -> Result<Self, RepError> {
        let mut lineage = self.lineage.clone();
        lineage.push(step);
        Self::new_unchecked(self.presentation.clone(), matrices, group, lineage)
    }

    /// γ ↦ χ(γ)ρ(γ) for a character χ with values ±1.
    pub fn twist_by_character(&self, chi: &[i8], label: &str) -> Result<Self, RepError> {
        let pres = &self.presentation;
        if chi.len() != pres.ngens() || chi.iter().any(|&c| c != 1 && c != -1) {
            return Err(RepError::NotACharacter(label.into()));
        }
        for r in &pres.relators {
            let v: i8 = r.letters().map(|l| chi[l.generator]).product();
            if v != 1 {
                return Err(RepError::NotACharacter(label.into()));
            }
        }
        let mats = self
            .matrices
            .iter()
            .zip(chi)
            .map(|(m, &c)| if c == 1 { m.clone() } else { m.map(|v| -v) })
            .collect();
        let group = if self.degree() % 2 == 1 && chi.contains(&-1) {
            GroupTag::SlPm
        } else {
            self.group
        };
        self.derived(mats, group, format!("twist by {label}"))
    }

    /// ρ ⊗ α for the orientation character.
    pub fn twist_by_orientation(&self) -> Result<Self, RepError> {
        let alpha = self.presentation.orientation.clone();
        self.twist_by_character(&alpha, "α")
    }

    /// γ ↦ (ρ(γ)^{-1})^T.
    pub fn contragredient(&self) -> Result<Self, RepError> {
        let mats = self.inverses.iter().map(|m| m.transpose()).collect();
        self.derived(mats, self.group, "contragredient".into())
    }

    pub fn embed(&self, embedding: Embedding) -> Result<Self, RepError> {
        let n = self.degree();
        if embedding == Embedding::Standard && self.group != GroupTag::Sl {
            // Standard inclusion needs determinant one everywhere.
            if self.determinants().iter().any(|d| (d - 1.0).abs() > DET_TOL) {
                return Err(RepError::TagMismatch {
                    embedding: embedding.to_string(),
                    needed: "a representation into SL_n".into(),
                });
            }
        }
        let dets: Vec<T> = self.matrices.iter().map(|m| T::determinant(m)).collect();
        let mats = self
            .matrices
            .iter()
            .zip(dets)
            .map(|(a, det)| {
                let mut b = Matrix::<T>::zeros(n + 1, n + 1);
                b.view_mut((0, 0), (n, n)).copy_from(a);
                b[(n, n)] = match embedding {
                    Embedding::Orientable => det,
                    _ => T::one(),
                };
                b
            })
            .collect();
        let group = match embedding {
            Embedding::Standard | Embedding::Orientable => GroupTag::Sl,
            Embedding::TypePreserving => GroupTag::SlPm,
        };
        self.derived(mats, group, format!("{embedding} embedding"))
    }

    /// Restrict to the orientation cover via Schreier generator words.
    pub fn restrict(&self, cover: &crate::presentation::OrientationCover) -> Result<Self, RepError> {
        let mats = cover.generator_words.iter().map(|w| self.eval(w)).collect();
        let mut lineage = self.lineage.clone();
        lineage.push("restriction to orientation cover".into());
        Self::new_unchecked(Arc::new(cover.presentation.clone()), mats, self.group, lineage)
    }
}

/// How SL±_n sits inside SL_{n+1} or SL±_{n+1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Embedding {
    /// A ↦ diag(A, 1), for representations into SL_n.
    Standard,
    /// A ↦ diag(A, det A).
    Orientable,
    /// A ↦ diag(A, 1) into SL±_{n+1}.
    TypePreserving,
}

impl fmt::Display for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Embedding::Standard => "standard",
            Embedding::Orientable => "orientable",
            Embedding::TypePreserving => "type-preserving",
        })
    }
}

impl std::str::FromStr for Embedding {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "standard" => Ok(Embedding::Standard),
            "orientable" | "orientable-embed" => Ok(Embedding::Orientable),
            "type-preserving" | "type_preserving" => Ok(Embedding::TypePreserving),
            _ => Err(format!("unknown embedding {s:?} (standard, orientable, type-preserving)")),
        }
    }
}

/// Scalar mode recorded in representation files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PresentationRef {
    Signature(String),
    Inline(Box<crate::presentation::PresentationDoc>),
}

/// JSON form of a representation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationDoc {
    pub presentation: PresentationRef,
    pub group: GroupTag,
    pub scalar: ScalarTag,
    /// One matrix per generator, rows of decimal strings.
    pub matrices: Vec<Vec<Vec<String>>>,
    #[serde(default)]
    pub lineage: Vec<String>,
}

impl RepresentationDoc {
    pub fn from_rep(rep: &Representation<f64>, presentation: PresentationRef) -> Self {
        RepresentationDoc {
            presentation,
            group: rep.group,
            scalar: ScalarTag::Float,
            matrices: rep.matrices.iter().map(|m| MatrixDoc::from_f64(m).entries).collect(),
            lineage: rep.lineage.clone(),
        }
    }

    fn docs(&self) -> Vec<MatrixDoc> {
        self.matrices
            .iter()
            .map(|rows| MatrixDoc {
                rows: rows.len(),
                cols: rows.first().map(|r| r.len()).unwrap_or(0),
                scalar: self.scalar,
                entries: rows.clone(),
            })
            .collect()
    }

    pub fn matrices_f64(&self) -> Result<Vec<Matrix<f64>>, RepError> {
        self.docs().iter().map(|d| d.to_f64().map_err(RepError::Invalid)).collect()
    }

    pub fn matrices_exact(&self) -> Result<Vec<Matrix<BigRational>>, RepError> {
        self.docs().iter().map(|d| d.to_exact().map_err(RepError::Invalid)).collect()
    }
}
