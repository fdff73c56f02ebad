//! Reidemeister–Schreier rewriting for the kernel of the orientation character.

use super::{GroupPresentation, Letter, PresentationError, TorsionMarker, Word};

/// Presentation of ker α together with each new generator written in the
/// generators of the original group.
#[derive(Clone, Debug, PartialEq)]
pub struct OrientationCover {
    pub presentation: GroupPresentation,
    pub generator_words: Vec<Word>,
}

/// Index-2 subgroup presentation for ker α, transversal {1, t} where t is the
/// first orientation-reversing generator.
pub fn orientation_cover(pres: &GroupPresentation) -> Result<OrientationCover, PresentationError> {
    let Some(t) = pres.orientation.iter().position(|&a| a == -1) else {
        return Err(PresentationError::Invalid(
            "presentation is orientable; the orientation cover is the group itself".into(),
        ));
    };
    let n = pres.ngens();
    let tw = Word::gen(t);
    // Schreier generator gamma(u, g) = u g rep(u g)^-1, for cosets u in {0: 1, 1: t}.
    let mut index = vec![[None::<usize>; 2]; n];
    let mut names = Vec::new();
    let mut words = Vec::new();
    for (u, coset) in [(0usize, Word::empty()), (1usize, tw.clone())] {
        for g in 0..n {
            let flips = pres.orientation[g] == -1;
            let target = u ^ usize::from(flips);
            let rep = if target == 1 { tw.clone() } else { Word::empty() };
            let w = coset.concat(&Word::gen(g)).concat(&rep.inverse()).freely_reduced();
            if w.is_empty() {
                continue;
            }
            let base = &pres.generator_names[g];
            names.push(if u == 0 { base.clone() } else { format!("{base}'") });
            words.push(w);
            index[g][u] = Some(names.len() - 1);
        }
    }

    let rewrite = |w: &Word, start: usize| -> Word {
        let mut u = start;
        let mut out = Vec::new();
        for l in w.letters() {
            let flips = pres.orientation[l.generator] == -1;
            if !l.inverse {
                if let Some(k) = index[l.generator][u] {
                    out.push(Letter {
                        generator: k,
                        inverse: false,
                    });
                }
                u ^= usize::from(flips);
            } else {
                let v = u ^ usize::from(flips);
                if let Some(k) = index[l.generator][v] {
                    out.push(Letter {
                        generator: k,
                        inverse: true,
                    });
                }
                u = v;
            }
        }
        debug_assert_eq!(u, start, "relators lie in ker α");
        Word::from_letters(out).freely_reduced()
    };

    let mut relators = Vec::new();
    for r in &pres.relators {
        for start in [0, 1] {
            let w = rewrite(r, start);
            if !w.is_empty() && !relators.contains(&w) {
                relators.push(w);
            }
        }
    }
    let mut torsion = Vec::new();
    for m in &pres.torsion {
        if pres.orientation[m.generator] != 1 {
            continue;
        }
        for u in [0, 1] {
            if let Some(k) = index[m.generator][u] {
                torsion.push(TorsionMarker {
                    generator: k,
                    order: m.order,
                });
            }
        }
    }
    let mut peripheral = Vec::new();
    for p in &pres.peripheral_words {
        if pres.alpha(p) == 1 {
            for start in [0, 1] {
                peripheral.push(rewrite(p, start));
            }
        }
    }
    let ngen = names.len();
    let presentation = GroupPresentation {
        name: format!("orientation cover of {}", pres.name),
        generator_names: names,
        relators,
        orientation: vec![1; ngen],
        torsion,
        peripheral_words: peripheral,
        long_relator: None,
        closed: pres.closed,
        cells: None,
        full_boundary_count: 0,
        signature: None,
        note: None,
    };
    // Torsion markers need their power relators; rewriting produces them
    // verbatim for orientation-preserving torsion generators.
    presentation.validate()?;
    Ok(OrientationCover {
        presentation,
        generator_words: words,
    })
}
