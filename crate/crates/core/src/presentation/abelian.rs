use serde::{Deserialize, Serialize};

use super::GroupPresentation;

/// Abelianization Z^betti ⊕ ⊕ Z/t_i.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Abelianization {
    pub betti: usize,
    /// Invariant factors greater than one, each dividing the next.
    pub torsion: Vec<u64>,
}

/// Smith normal form diagonal of an integer matrix (absolute values, nonzero
/// entries only, in divisibility order).
pub fn smith_diagonal(mut a: Vec<Vec<i128>>, cols: usize) -> Vec<i128> {
    let rows = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero magnitude in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut dirty = false;
            for i in (t + 1)..rows {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in (t + 1)..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                if a[t][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // Enforce divisibility of the remaining block by the pivot.
                let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| a[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            a[t][j] += a[i][j];
                        }
                        continue;
                    }
                }
            }
            // Move the smallest nonzero entry of row/column t into the pivot.
            let mut best = (t, t);
            for i in t..rows {
                if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Abelianization from the exponent-sum matrix of the relators.
pub fn abelianization(pres: &GroupPresentation) -> Abelianization {
    let n = pres.ngens();
    let rows: Vec<Vec<i128>> = pres
        .relators
        .iter()
        .map(|r| r.exponent_sums(n).into_iter().map(|v| v as i128).collect())
        .collect();
    let diag = smith_diagonal(rows, n);
    Abelianization {
        betti: n - diag.len(),
        torsion: diag.into_iter().filter(|&d| d > 1).map(|d| d as u64).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_signature, presentation_of};
    use super::*;

    fn ab(text: &str) -> Abelianization {
        abelianization(&presentation_of(&parse_signature(text).unwrap()).unwrap())
    }

    #[test]
    fn known_abelianizations() {
        assert_eq!(ab("O(g=2;b=0;cone=[])"), Abelianization { betti: 4, torsion: vec![] });
        assert_eq!(ab("S2(2,3,7)"), Abelianization { betti: 0, torsion: vec![] });
        assert_eq!(ab("S2(3,3,3,3)"), Abelianization { betti: 0, torsion: vec![3, 3, 3] });
        assert_eq!(ab("N(k=3;b=0;cone=[])"), Abelianization { betti: 2, torsion: vec![2] });
        assert_eq!(ab("S2(2,4,6)"), Abelianization { betti: 0, torsion: vec![2, 2] });
    }

    #[test]
    fn divisibility_fixup() {
        // diag(2, 3) has Smith form diag(1, 6).
        assert_eq!(smith_diagonal(vec![vec![2, 0], vec![0, 3]], 2), vec![1, 6]);
    }
}
