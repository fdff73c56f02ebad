//! Orbifold signatures, finite presentations of orbifold groups, orientation
//! characters and equivariant cell data.

mod abelian;
mod cells;
mod schreier;
mod signature;
mod word;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use abelian::{abelianization, Abelianization};
pub use cells::{Cell, CellStructure, Stabilizer};
pub use schreier::{orientation_cover, OrientationCover};
pub use signature::{
    cone_count, euler_characteristic, full_boundary_count, parse_signature, underlying_euler, OrbifoldSignature,
    SignatureKind,
};
pub use word::{Letter, Word};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PresentationError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("cone order {order} at position {pos} must be at least 2")]
    ConeOrder { pos: usize, order: u32 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("orbifold Euler characteristic {chi} is not negative")]
    NonNegativeEuler { chi: String },
    #[error("relator {relator} has orientation character -1")]
    AlphaInconsistent { relator: usize },
    #[error("malformed word: {0}")]
    MalformedWord(String),
    #[error("invalid presentation: {0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionMarker {
    /// 0-based generator index.
    pub generator: usize,
    pub order: u32,
}

/// A finite presentation of an orbifold group with the data the cohomology
/// and classification layers consume.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub name: String,
    pub generator_names: Vec<String>,
    pub relators: Vec<Word>,
    /// Orientation character on generators, entries ±1.
    pub orientation: Vec<i8>,
    pub torsion: Vec<TorsionMarker>,
    pub peripheral_words: Vec<Word>,
    /// Index of the surface relator, when the presentation has one.
    pub long_relator: Option<usize>,
    /// No orbifold boundary.
    pub closed: bool,
    pub cells: Option<CellStructure>,
    pub full_boundary_count: usize,
    pub signature: Option<OrbifoldSignature>,
    /// Free-form provenance note for hand-built fixtures.
    pub note: Option<String>,
}

impl GroupPresentation {
    pub fn ngens(&self) -> usize {
        self.generator_names.len()
    }

    pub fn is_orientable(&self) -> bool {
        self.orientation.iter().all(|&a| a == 1)
    }

    pub fn is_degenerate(&self) -> bool {
        self.generator_names.is_empty()
    }

    pub fn alpha(&self, w: &Word) -> i8 {
        w.letters().map(|l| self.orientation[l.generator]).product()
    }

    /// χ(|O|) read off the cell structure, when present.
    pub fn underlying_euler(&self) -> Option<i64> {
        self.cells.as_ref().map(|c| c.alternating_count())
    }

    pub fn cone_count(&self) -> usize {
        match &self.signature {
            Some(s) => s.cone_orders.len(),
            None => self.torsion.iter().filter(|t| self.orientation[t.generator] == 1).count(),
        }
    }

    fn check_word(&self, w: &Word, what: &str) -> Result<(), PresentationError> {
        if w.0.contains(&0) {
            return Err(PresentationError::MalformedWord(format!("{what} contains letter 0")));
        }
        if w.max_generator() > self.ngens() {
            return Err(PresentationError::MalformedWord(format!(
                "{what} references generator {} but only {} exist",
                w.max_generator(),
                self.ngens()
            )));
        }
        Ok(())
    }

    /// Structural validation shared by every constructor.
    pub fn validate(&self) -> Result<(), PresentationError> {
        if self.orientation.len() != self.ngens() {
            return Err(PresentationError::Invalid(format!(
                "orientation character has {} entries for {} generators",
                self.orientation.len(),
                self.ngens()
            )));
        }
        if let Some(&a) = self.orientation.iter().find(|&&a| a != 1 && a != -1) {
            return Err(PresentationError::Invalid(format!("orientation value {a} is not ±1")));
        }
        for (i, r) in self.relators.iter().enumerate() {
            self.check_word(r, &format!("relator {i}"))?;
            if self.alpha(r) != 1 {
                return Err(PresentationError::AlphaInconsistent { relator: i });
            }
        }
        for (i, w) in self.peripheral_words.iter().enumerate() {
            self.check_word(w, &format!("peripheral word {i}"))?;
        }
        for t in &self.torsion {
            if t.generator >= self.ngens() {
                return Err(PresentationError::Invalid(format!(
                    "torsion marker references generator {}",
                    t.generator + 1
                )));
            }
            if t.order < 2 {
                return Err(PresentationError::Invalid(format!("torsion order {} < 2", t.order)));
            }
            let power = Word::gen(t.generator).power(t.order);
            if !self.relators.contains(&power) {
                return Err(PresentationError::Invalid(format!(
                    "no power relator {}^{} for torsion marker",
                    self.generator_names[t.generator], t.order
                )));
            }
        }
        if let Some(l) = self.long_relator {
            if l >= self.relators.len() {
                return Err(PresentationError::Invalid(format!("long relator index {l} out of range")));
            }
        }
        if let Some(cells) = &self.cells {
            for (i, c) in cells.cells.iter().enumerate() {
                if c.dim > 2 {
                    return Err(PresentationError::Invalid(format!("cell {i} has dimension {}", c.dim)));
                }
                for w in c.stabilizer.generators() {
                    self.check_word(w, &format!("stabilizer word of cell {i}"))?;
                }
            }
        }
        if let (Some(sig), Some(cells)) = (&self.signature, &self.cells) {
            if cells.alternating_count() != underlying_euler(sig) {
                return Err(PresentationError::Invalid(format!(
                    "cell count {} does not reproduce χ(|O|) = {}",
                    cells.alternating_count(),
                    underlying_euler(sig)
                )));
            }
        }
        Ok(())
    }

    /// The trivial group ⟨ | ⟩.
    pub fn trivial_group() -> GroupPresentation {
        GroupPresentation {
            name: "trivial".into(),
            generator_names: vec![],
            relators: vec![],
            orientation: vec![],
            torsion: vec![],
            peripheral_words: vec![],
            long_relator: None,
            closed: true,
            cells: None,
            full_boundary_count: 0,
            signature: None,
            note: None,
        }
    }

    pub fn to_doc(&self) -> PresentationDoc {
        PresentationDoc {
            name: Some(self.name.clone()),
            generators: self.generator_names.clone(),
            relators: self.relators.clone(),
            orientation: self.orientation.clone(),
            torsion: self
                .torsion
                .iter()
                .map(|t| TorsionDoc {
                    generator: t.generator + 1,
                    order: t.order,
                })
                .collect(),
            peripheral: self.peripheral_words.clone(),
            long_relator: self.long_relator,
            closed: self.closed,
            cells: self.cells.clone(),
            full_boundary_count: Some(self.full_boundary_count),
            note: self.note.clone(),
        }
    }
}

/// JSON form of a presentation. Words and torsion generators use 1-based
/// signed generator indices; `long_relator` is a 0-based relator index.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationDoc {
    #[serde(default)]
    pub name: Option<String>,
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
    pub orientation: Vec<i8>,
    #[serde(default)]
    pub torsion: Vec<TorsionDoc>,
    #[serde(default)]
    pub peripheral: Vec<Word>,
    #[serde(default)]
    pub long_relator: Option<usize>,
    pub closed: bool,
    #[serde(default)]
    pub cells: Option<CellStructure>,
    #[serde(default)]
    pub full_boundary_count: Option<usize>,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorsionDoc {
    /// 1-based generator index.
    pub generator: usize,
    pub order: u32,
}

/// Validate a hand-supplied presentation.
pub fn presentation_from_raw(doc: &PresentationDoc) -> Result<GroupPresentation, PresentationError> {
    let torsion = doc
        .torsion
        .iter()
        .map(|t| {
            if t.generator == 0 || t.generator > doc.generators.len() {
                Err(PresentationError::Invalid(format!(
                    "torsion marker generator {} out of range",
                    t.generator
                )))
            } else {
                Ok(TorsionMarker {
                    generator: t.generator - 1,
                    order: t.order,
                })
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let pres = GroupPresentation {
        name: doc.name.clone().unwrap_or_else(|| "raw".into()),
        generator_names: doc.generators.clone(),
        relators: doc.relators.clone(),
        orientation: doc.orientation.clone(),
        torsion,
        peripheral_words: doc.peripheral.clone(),
        long_relator: doc.long_relator,
        closed: doc.closed,
        cells: doc.cells.clone(),
        full_boundary_count: doc.full_boundary_count.unwrap_or(0),
        signature: None,
        note: doc.note.clone(),
    };
    pres.validate()?;
    Ok(pres)
}

pub fn parse_presentation_json(text: &str) -> Result<GroupPresentation, PresentationError> {
    let doc: PresentationDoc =
        serde_json::from_str(text).map_err(|e| PresentationError::Invalid(format!("presentation JSON: {e}")))?;
    presentation_from_raw(&doc)
}

fn commutator(a: usize, b: usize) -> [i32; 4] {
    let (a, b) = (a as i32 + 1, b as i32 + 1);
    [a, b, -a, -b]
}

/// Canonical presentation of a signature, with cells.
///
/// Cells: a base vertex, one vertex per cone point (cyclic stabilizer), one
/// loop edge per handle generator, one edge from the base to each cone point,
/// per boundary circle a vertex with a loop edge and a connecting edge, and a
/// single 2-cell. The mirrored disc replaces the boundary circle by a mirror
/// vertex and mirror loop edge stabilized by the reflection.
pub fn presentation_of(sig: &OrbifoldSignature) -> Result<GroupPresentation, PresentationError> {
    let chi = euler_characteristic(sig);
    if chi >= num_rational::Ratio::from_integer(0) {
        return Err(PresentationError::NonNegativeEuler { chi: chi.to_string() });
    }
    let c = sig.cone_orders.len();
    let mut names = Vec::new();
    let mut orientation = Vec::new();
    let mut relators = Vec::new();
    let mut torsion = Vec::new();
    let mut peripheral = Vec::new();
    let mut cells = vec![Cell::free(0, "v0")];
    let mut long = Vec::new();

    let (handle_count, crosscaps) = match sig.kind {
        SignatureKind::OrientableSurface { genus } => (genus as usize, 0usize),
        SignatureKind::NonOrientableSurface { crosscaps } => (0, crosscaps as usize),
        SignatureKind::MirroredDisc => (0, 0),
    };
    for i in 1..=handle_count {
        let a = names.len();
        names.push(format!("a{i}"));
        names.push(format!("b{i}"));
        orientation.extend([1, 1]);
        long.extend(commutator(a, a + 1));
        cells.push(Cell::free(1, format!("a{i}")));
        cells.push(Cell::free(1, format!("b{i}")));
    }
    for i in 1..=crosscaps {
        let m = names.len() as i32 + 1;
        names.push(format!("m{i}"));
        orientation.push(-1);
        long.extend([m, m]);
        cells.push(Cell::free(1, format!("m{i}")));
    }
    let cone_start = names.len();
    for (j, &n) in sig.cone_orders.iter().enumerate() {
        let x = names.len();
        names.push(format!("x{}", j + 1));
        orientation.push(1);
        relators.push(Word::gen(x).power(n));
        torsion.push(TorsionMarker { generator: x, order: n });
        long.push(x as i32 + 1);
        cells.push(Cell::new(
            0,
            Stabilizer::Cyclic {
                order: n,
                word: Word::gen(x),
            },
            format!("cone x{}", j + 1),
        ));
        cells.push(Cell::free(1, format!("v0-x{}", j + 1)));
    }

    let (closed, long_relator) = match sig.kind {
        SignatureKind::MirroredDisc => {
            let s = names.len();
            names.push("s".into());
            orientation.push(-1);
            relators.push(Word::gen(s).power(2));
            torsion.push(TorsionMarker { generator: s, order: 2 });
            // s commutes with the boundary loop x1...xc.
            let boundary = Word((cone_start..cone_start + c).map(|x| x as i32 + 1).collect());
            let sw = Word::gen(s);
            relators.push(sw.concat(&boundary).concat(&sw.inverse()).concat(&boundary.inverse()));
            cells.push(Cell::new(0, Stabilizer::Reflection { word: sw.clone() }, "mirror vertex"));
            cells.push(Cell::free(1, "v0-mirror"));
            cells.push(Cell::new(1, Stabilizer::Reflection { word: sw }, "mirror edge"));
            (true, None)
        }
        _ => {
            for l in 1..=sig.boundary_circles {
                let cg = names.len();
                names.push(format!("c{l}"));
                orientation.push(1);
                long.push(cg as i32 + 1);
                peripheral.push(Word::gen(cg));
                cells.push(Cell::free(0, format!("boundary vertex {l}")));
                cells.push(Cell::free(1, format!("boundary c{l}")));
                cells.push(Cell::free(1, format!("v0-c{l}")));
            }
            relators.push(Word(long));
            (sig.boundary_circles == 0, Some(relators.len() - 1))
        }
    };
    cells.push(Cell::free(2, "face"));

    let pres = GroupPresentation {
        name: sig.to_string(),
        generator_names: names,
        relators,
        orientation,
        torsion,
        peripheral_words: peripheral,
        long_relator,
        closed,
        cells: Some(CellStructure { cells }),
        full_boundary_count: full_boundary_count(sig),
        signature: Some(sig.clone()),
        note: None,
    };
    pres.validate()?;
    Ok(pres)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(text: &str) -> GroupPresentation {
        presentation_of(&parse_signature(text).unwrap()).unwrap()
    }

    #[test]
    fn turnover_presentation() {
        let p = pres("S2(3,3,4)");
        assert_eq!(p.generator_names, vec!["x1", "x2", "x3"]);
        assert_eq!(
            p.relators,
            vec![Word(vec![1, 1, 1]), Word(vec![2, 2, 2]), Word(vec![3, 3, 3, 3]), Word(vec![1, 2, 3])]
        );
        assert!(p.is_orientable());
        assert!(p.closed);
        assert_eq!(p.long_relator, Some(3));
    }

    #[test]
    fn genus_two() {
        let p = pres("O(g=2;b=0;cone=[])");
        assert_eq!(p.ngens(), 4);
        assert_eq!(p.relators, vec![Word(vec![1, 2, -1, -2, 3, 4, -3, -4])]);
        assert_eq!(p.underlying_euler(), Some(-2));
    }

    #[test]
    fn boundary_and_crosscaps() {
        let p = pres("N(k=2;b=1;cone=[3])");
        assert_eq!(p.generator_names, vec!["m1", "m2", "x1", "c1"]);
        assert_eq!(p.orientation, vec![-1, -1, 1, 1]);
        assert_eq!(p.relators.last().unwrap(), &Word(vec![1, 1, 2, 2, 3, 4]));
        assert_eq!(p.peripheral_words, vec![Word(vec![4])]);
        assert!(!p.closed);
        assert_eq!(p.underlying_euler(), Some(-1));
    }

    #[test]
    fn mirrored_disc() {
        let p = pres("D(3,3;mirror)");
        assert_eq!(p.generator_names, vec!["x1", "x2", "s"]);
        assert_eq!(p.orientation, vec![1, 1, -1]);
        assert_eq!(p.relators[3], Word(vec![3, 1, 2, -3, -2, -1]));
        assert!(p.closed);
        assert_eq!(p.long_relator, None);
        assert_eq!(p.underlying_euler(), Some(1));
    }

    #[test]
    fn rejects_non_hyperbolic() {
        let t = parse_signature("O(g=1;b=0;cone=[])").unwrap();
        assert!(matches!(presentation_of(&t), Err(PresentationError::NonNegativeEuler { .. })));
        let s = parse_signature("S2(2,3,6)").unwrap();
        assert!(matches!(presentation_of(&s), Err(PresentationError::NonNegativeEuler { .. })));
        let d = parse_signature("D(2,2;mirror)").unwrap();
        assert!(presentation_of(&d).is_err());
    }

    #[test]
    fn raw_validation() {
        let doc = PresentationDoc {
            name: None,
            generators: vec!["x".into(), "s".into()],
            relators: vec![Word(vec![1, 1, 1]), Word(vec![2])],
            orientation: vec![1, -1],
            torsion: vec![],
            peripheral: vec![],
            long_relator: None,
            closed: false,
            cells: None,
            full_boundary_count: None,
            note: None,
        };
        assert_eq!(
            presentation_from_raw(&doc),
            Err(PresentationError::AlphaInconsistent { relator: 1 })
        );
        let mut bad = doc.clone();
        bad.relators = vec![Word(vec![3])];
        assert!(matches!(presentation_from_raw(&bad), Err(PresentationError::MalformedWord(_))));

        let trivial = PresentationDoc {
            generators: vec![],
            relators: vec![],
            orientation: vec![],
            closed: true,
            ..doc
        };
        let t = presentation_from_raw(&trivial).unwrap();
        assert!(t.is_degenerate());
    }

    #[test]
    fn json_round_trip() {
        let p = pres("D(3,3;mirror)");
        let text = serde_json::to_string(&p.to_doc()).unwrap();
        let q = parse_presentation_json(&text).unwrap();
        assert_eq!(q.relators, p.relators);
        assert_eq!(q.torsion, p.torsion);
        assert_eq!(q.cells, p.cells);
    }
}
