//! Local models R^p × R^b × Cone(X) of character varieties, chosen from the
//! computed dimensions by table lookup.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::reps::Embedding;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassifierError {
    #[error("invalid flag combination: {0}")]
    InvalidFlags(String),
    #[error("cannot parse local model {text:?}: {message}")]
    Parse { text: String, message: String },
    #[error("vectors have lengths {0} and {1}")]
    LengthMismatch(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Topology {
    Closed,
    Boundary,
}

/// The link X of the cone factor, parameterized by d.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "d", rename_all = "snake_case")]
pub enum ConeLink {
    /// d = 0: the cone over the empty set is a point.
    Point,
    /// S^{d−1} × S^{d−1}.
    SpheresProduct(usize),
    /// (S^{d−1} × S^{d−1}) / (x, y) ~ (−x, −y).
    SpheresProductModAntipodal(usize),
    /// Unit tangent bundle of S^{d−1}.
    UnitTangentSphere(usize),
    /// Unit tangent bundle of RP^{d−1}.
    UnitTangentProjective(usize),
}

impl ConeLink {
    pub fn d(&self) -> usize {
        match *self {
            ConeLink::Point => 0,
            ConeLink::SpheresProduct(d)
            | ConeLink::SpheresProductModAntipodal(d)
            | ConeLink::UnitTangentSphere(d)
            | ConeLink::UnitTangentProjective(d) => d,
        }
    }

    /// True when the link is empty, so the cone is a point.
    pub fn is_empty(&self) -> bool {
        match self {
            ConeLink::Point => true,
            ConeLink::UnitTangentSphere(d) | ConeLink::UnitTangentProjective(d) => *d <= 1,
            _ => false,
        }
    }

    fn inner(&self) -> String {
        match *self {
            ConeLink::Point => "empty".into(),
            ConeLink::SpheresProduct(d) => format!("S^{0} x S^{0}", d - 1),
            ConeLink::SpheresProductModAntipodal(d) => format!("(S^{0} x S^{0})/~", d - 1),
            ConeLink::UnitTangentSphere(d) => format!("UT(S^{})", d - 1),
            ConeLink::UnitTangentProjective(d) => format!("UT(RP^{})", d - 1),
        }
    }

    fn parse_inner(s: &str) -> Option<ConeLink> {
        let sphere = |t: &str| t.strip_prefix("S^")?.parse::<usize>().ok();
        let pair = |t: &str| {
            let (a, b) = t.split_once(" x ")?;
            let (a, b) = (sphere(a)?, sphere(b)?);
            (a == b).then_some(a + 1)
        };
        if s == "empty" {
            return Some(ConeLink::Point);
        }
        if let Some(rest) = s.strip_prefix("UT(").and_then(|r| r.strip_suffix(')')) {
            if let Some(k) = rest.strip_prefix("RP^") {
                return Some(ConeLink::UnitTangentProjective(k.parse::<usize>().ok()? + 1));
            }
            return Some(ConeLink::UnitTangentSphere(sphere(rest)? + 1));
        }
        if let Some(rest) = s.strip_prefix('(').and_then(|r| r.strip_suffix(")/~")) {
            return Some(ConeLink::SpheresProductModAntipodal(pair(rest)?));
        }
        Some(ConeLink::SpheresProduct(pair(s)?))
    }
}

impl fmt::Display for ConeLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.inner())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalModel {
    pub smooth_dim: usize,
    pub abelian_dim: usize,
    pub cone_link: ConeLink,
    pub display: String,
    /// Neighborhood is a topological manifold.
    pub smooth: bool,
    /// Its dimension, when `smooth`.
    pub manifold_dim: Option<usize>,
    /// Which table row fired.
    pub provenance: String,
    pub flags: Vec<String>,
    pub sentence: String,
}

impl LocalModel {
    fn build(p: usize, b: usize, link: ConeLink, provenance: &str, n_plus_1: usize) -> Self {
        let mut flags = Vec::new();
        if matches!(link, ConeLink::UnitTangentSphere(1) | ConeLink::UnitTangentProjective(1)) {
            flags.push("degenerate-d, verify by hand".to_string());
        }
        let manifold_dim = if link.is_empty() {
            Some(p + b)
        } else if link == ConeLink::SpheresProductModAntipodal(1) {
            // Two points glued into a line.
            Some(p + b + 1)
        } else {
            None
        };
        let n = n_plus_1 - 1;
        let sentence = match (link, manifold_dim) {
            (ConeLink::Point, _) => format!(
                "smooth of dimension {}, all deformations conjugate into SL{n}",
                p + b
            ),
            (_, Some(m)) if link.is_empty() => format!("smooth of dimension {m}, the cone link is empty"),
            (_, Some(m)) => format!("topologically non-singular of dimension {m}, Cone({link}) is a line"),
            _ => format!("singular, cone over {link}"),
        };
        LocalModel {
            smooth_dim: p,
            abelian_dim: b,
            cone_link: link,
            display: display_model(p, b, &link),
            smooth: manifold_dim.is_some(),
            manifold_dim,
            provenance: provenance.into(),
            flags,
            sentence,
        }
    }
}

pub fn display_model(p: usize, b: usize, link: &ConeLink) -> String {
    format!("R^{p} x R^{b} x Cone({link})")
}

/// Parse a display string back into (p, b, link).
pub fn parse_model(text: &str) -> Result<(usize, usize, ConeLink), ClassifierError> {
    let err = |m: &str| ClassifierError::Parse {
        text: text.into(),
        message: m.into(),
    };
    // Split on " x " at parenthesis depth zero only.
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b' ' if depth == 0 && text[i..].starts_with(" x ") => {
                parts.push(&text[start..i]);
                i += 3;
                start = i;
                continue;
            }
            _ => {}
        }
        i += 1;
    }
    parts.push(&text[start..]);
    if parts.len() != 3 {
        return Err(err("expected three factors"));
    }
    let euclid = |t: &str| t.strip_prefix("R^").and_then(|k| k.parse::<usize>().ok());
    let p = euclid(parts[0]).ok_or_else(|| err("bad first factor"))?;
    let b = euclid(parts[1]).ok_or_else(|| err("bad second factor"))?;
    let inner = parts[2]
        .strip_prefix("Cone(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| err("third factor must be Cone(..)"))?;
    let link = ConeLink::parse_inner(inner).ok_or_else(|| err("unknown cone link"))?;
    Ok((p, b, link))
}

/// Table lookup from dimensions to the local model.
#[allow(clippy::too_many_arguments)]
pub fn classify(
    topology: Topology,
    orientable: bool,
    embedding: Embedding,
    n_plus_1: usize,
    p: usize,
    d: usize,
    b: usize,
) -> Result<LocalModel, ClassifierError> {
    if n_plus_1 < 3 {
        return Err(ClassifierError::InvalidFlags(format!("n + 1 = {n_plus_1} is below 3")));
    }
    if !orientable && embedding == Embedding::Standard {
        return Err(ClassifierError::InvalidFlags(
            "non-orientable groups need the orientable or type-preserving embedding".into(),
        ));
    }
    let odd = n_plus_1 % 2 == 1;
    let (link, row) = if d == 0 {
        (ConeLink::Point, "d = 0")
    } else if orientable {
        match (topology, odd) {
            (Topology::Closed, false) => (ConeLink::UnitTangentSphere(d), "orientable closed, n + 1 even"),
            (Topology::Closed, true) => (ConeLink::UnitTangentProjective(d), "orientable closed, n + 1 odd"),
            (Topology::Boundary, false) => (ConeLink::SpheresProduct(d), "orientable with boundary, n + 1 even"),
            (Topology::Boundary, true) => (
                ConeLink::SpheresProductModAntipodal(d),
                "orientable with boundary, n + 1 odd",
            ),
        }
    } else {
        match (embedding, odd) {
            (Embedding::TypePreserving, _) => (ConeLink::SpheresProductModAntipodal(d), "non-orientable, type-preserving"),
            (_, false) => (ConeLink::SpheresProduct(d), "non-orientable, orientable embedding, n + 1 even"),
            (_, true) => (
                ConeLink::SpheresProductModAntipodal(d),
                "non-orientable, orientable embedding, n + 1 odd",
            ),
        }
    };
    Ok(LocalModel::build(p, b, link, row, n_plus_1))
}

/// Convex projective structures of a 2-orbifold in SL4: d is the dimension t
/// of its Teichmüller space.
pub fn projective_corollary(t: usize, p: usize, b: usize, closed: bool) -> LocalModel {
    let topology = if closed { Topology::Closed } else { Topology::Boundary };
    classify(topology, true, Embedding::Standard, 4, p, t, b).expect("valid flags")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkVariant {
    /// |x| = |y|.
    Boundary,
    /// |x| = |y| and x·y = 0.
    Closed,
}

/// Membership in the model cone. Antipodal quotients only change which
/// points are identified, so membership is the same as before the quotient.
pub fn cone_membership(x: &[f64], y: &[f64], variant: LinkVariant, tol: f64) -> Result<bool, ClassifierError> {
    if x.len() != y.len() {
        return Err(ClassifierError::LengthMismatch(x.len(), y.len()));
    }
    let nx: f64 = x.iter().map(|v| v * v).sum();
    let ny: f64 = y.iter().map(|v| v * v).sum();
    let scale = nx.max(ny).max(1.0);
    let norms = (nx - ny).abs() <= tol * scale;
    Ok(match variant {
        LinkVariant::Boundary => norms,
        LinkVariant::Closed => {
            let dot: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
            norms && dot.abs() <= tol * scale
        }
    })
}
