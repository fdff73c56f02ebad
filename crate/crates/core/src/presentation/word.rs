use serde::{Deserialize, Serialize};

/// A word in the generators: letters are signed 1-based generator indices,
/// `-i` standing for the inverse of generator `i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<i32>);

/// A single letter decoded from its signed index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Letter {
    /// 0-based generator index.
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn decode(code: i32) -> Letter {
        debug_assert!(code != 0);
        Letter {
            generator: code.unsigned_abs() as usize - 1,
            inverse: code < 0,
        }
    }

    pub fn encode(self) -> i32 {
        let g = self.generator as i32 + 1;
        if self.inverse {
            -g
        } else {
            g
        }
    }
}

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn gen(index: usize) -> Word {
        Word(vec![index as i32 + 1])
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Word {
        Word(letters.into_iter().map(Letter::encode).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> impl DoubleEndedIterator<Item = Letter> + ExactSizeIterator + '_ {
        self.0.iter().map(|&c| Letter::decode(c))
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&c| -c).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn power(&self, n: u32) -> Word {
        Word(self.0.iter().copied().cycle().take(self.0.len() * n as usize).collect())
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    /// Cancel adjacent inverse pairs.
    pub fn freely_reduced(&self) -> Word {
        let mut out: Vec<i32> = Vec::with_capacity(self.0.len());
        for &c in &self.0 {
            if out.last() == Some(&-c) {
                out.pop();
            } else {
                out.push(c);
            }
        }
        Word(out)
    }

    /// Largest generator index referenced (1-based), 0 for the empty word.
    pub fn max_generator(&self) -> usize {
        self.0.iter().map(|c| c.unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// Sum of exponents per generator.
    pub fn exponent_sums(&self, generators: usize) -> Vec<i64> {
        let mut s = vec![0i64; generators];
        for l in self.letters() {
            s[l.generator] += if l.inverse { -1 } else { 1 };
        }
        s
    }

    /// Evaluate in a group given per-generator values and inverses.
    pub fn evaluate<T, F>(&self, identity: T, mut mul: F, gens: &[T], invs: &[T]) -> T
    where
        F: FnMut(&T, &T) -> T,
    {
        let mut acc = identity;
        for l in self.letters() {
            let g = if l.inverse { &invs[l.generator] } else { &gens[l.generator] };
            acc = mul(&acc, g);
        }
        acc
    }

    /// Render with generator names, e.g. `a1 b1 a1^-1`.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_empty() {
            return "1".to_string();
        }
        self.letters()
            .map(|l| {
                let n = names.get(l.generator).cloned().unwrap_or_else(|| format!("g{}", l.generator + 1));
                if l.inverse {
                    format!("{n}^-1")
                } else {
                    n
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl From<Vec<i32>> for Word {
    fn from(v: Vec<i32>) -> Self {
        Word(v)
    }
}
