use serde::{Deserialize, Serialize};

use super::Word;

/// Isotropy of a cell, given by words generating the stabilizer of a lift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Stabilizer {
    Trivial,
    Cyclic { order: u32, word: Word },
    Reflection { word: Word },
    /// Dihedral group of order `2 * order` generated by two reflections.
    Dihedral { order: u32, words: [Word; 2] },
}

impl Stabilizer {
    /// Generating words of the stabilizer subgroup.
    pub fn generators(&self) -> Vec<&Word> {
        match self {
            Stabilizer::Trivial => vec![],
            Stabilizer::Cyclic { word, .. } | Stabilizer::Reflection { word } => vec![word],
            Stabilizer::Dihedral { words, .. } => words.iter().collect(),
        }
    }

    /// Declared order of each generating word.
    pub fn generator_orders(&self) -> Vec<u32> {
        match self {
            Stabilizer::Trivial => vec![],
            Stabilizer::Cyclic { order, .. } => vec![*order],
            Stabilizer::Reflection { .. } => vec![2],
            Stabilizer::Dihedral { .. } => vec![2, 2],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub dim: u8,
    pub stabilizer: Stabilizer,
    #[serde(default)]
    pub label: String,
}

impl Cell {
    pub fn new(dim: u8, stabilizer: Stabilizer, label: impl Into<String>) -> Cell {
        Cell {
            dim,
            stabilizer,
            label: label.into(),
        }
    }

    pub fn free(dim: u8, label: impl Into<String>) -> Cell {
        Cell::new(dim, Stabilizer::Trivial, label)
    }
}

/// An equivariant cell decomposition of the orbifold, one entry per cell of
/// the quotient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CellStructure {
    pub cells: Vec<Cell>,
}

impl CellStructure {
    /// Alternating cell count, i.e. the Euler characteristic of the
    /// underlying space.
    pub fn alternating_count(&self) -> i64 {
        self.cells.iter().map(|c| if c.dim % 2 == 0 { 1 } else { -1 }).sum()
    }
}
