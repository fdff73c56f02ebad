//! Orbifold signatures and their text grammar.
//!
//! ```text
//! S2(2,3,7)                 sphere with cone points
//! O(g=2;b=1;cone=[3,3])     orientable, genus g, b boundary circles
//! N(k=1;b=0;cone=[2,5])     non-orientable, k crosscaps
//! D(3,4)                    disc with boundary and cone points
//! D(3,4;mirror)             disc with mirrored boundary and cone points
//! ```
//! Whitespace is ignored everywhere.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::PresentationError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SignatureKind {
    OrientableSurface { genus: u32 },
    NonOrientableSurface { crosscaps: u32 },
    /// Disc whose single boundary circle is entirely mirror.
    MirroredDisc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbifoldSignature {
    pub kind: SignatureKind,
    /// Boundary circles of the underlying surface. A mirrored disc has one,
    /// and it is mirror rather than orbifold boundary.
    pub boundary_circles: u32,
    /// Interior cone orders, sorted non-decreasing.
    pub cone_orders: Vec<u32>,
}

impl OrbifoldSignature {
    pub fn new(kind: SignatureKind, boundary_circles: u32, mut cone_orders: Vec<u32>) -> Result<Self, PresentationError> {
        if let Some(&bad) = cone_orders.iter().find(|&&n| n < 2) {
            return Err(PresentationError::ConeOrder { pos: 0, order: bad });
        }
        if let SignatureKind::NonOrientableSurface { crosscaps: 0 } = kind {
            return Err(PresentationError::Unsupported(
                "non-orientable surface needs at least one crosscap".into(),
            ));
        }
        if kind == SignatureKind::MirroredDisc && boundary_circles != 1 {
            return Err(PresentationError::Unsupported(
                "a mirrored disc has exactly one (mirrored) boundary circle".into(),
            ));
        }
        cone_orders.sort_unstable();
        Ok(OrbifoldSignature {
            kind,
            boundary_circles,
            cone_orders,
        })
    }

    pub fn sphere(cone_orders: &[u32]) -> Result<Self, PresentationError> {
        Self::new(SignatureKind::OrientableSurface { genus: 0 }, 0, cone_orders.to_vec())
    }

    pub fn is_orientable(&self) -> bool {
        matches!(self.kind, SignatureKind::OrientableSurface { .. })
    }

    /// No orbifold boundary. Mirrored discs count as closed.
    pub fn is_closed(&self) -> bool {
        self.kind == SignatureKind::MirroredDisc || self.boundary_circles == 0
    }

    /// Number of orbifold boundary components (mirror circles excluded).
    pub fn orbifold_boundary_count(&self) -> u32 {
        match self.kind {
            SignatureKind::MirroredDisc => 0,
            _ => self.boundary_circles,
        }
    }
}

/// χ(|O|), the Euler characteristic of the underlying surface.
pub fn underlying_euler(sig: &OrbifoldSignature) -> i64 {
    let b = sig.boundary_circles as i64;
    match sig.kind {
        SignatureKind::OrientableSurface { genus } => 2 - 2 * genus as i64 - b,
        SignatureKind::NonOrientableSurface { crosscaps } => 2 - crosscaps as i64 - b,
        SignatureKind::MirroredDisc => 1,
    }
}

/// Orbifold Euler characteristic χ(|O|) − Σ(1 − 1/n_j). Signatures carry no
/// corner reflectors, so there are no corner terms.
pub fn euler_characteristic(sig: &OrbifoldSignature) -> Ratio<i64> {
    let mut chi = Ratio::from_integer(underlying_euler(sig));
    for &n in &sig.cone_orders {
        chi -= Ratio::new(n as i64 - 1, n as i64);
    }
    chi
}

pub fn cone_count(sig: &OrbifoldSignature) -> usize {
    sig.cone_orders.len()
}

/// Boundary components that are full 1-orbifolds. Without corner reflectors
/// every boundary component is a circle, so this is zero for signatures.
pub fn full_boundary_count(_sig: &OrbifoldSignature) -> usize {
    0
}

impl fmt::Display for OrbifoldSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[u32]| v.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",");
        match self.kind {
            SignatureKind::OrientableSurface { genus: 0 } if self.boundary_circles == 0 => {
                write!(f, "S2({})", list(&self.cone_orders))
            }
            SignatureKind::OrientableSurface { genus: 0 } if self.boundary_circles == 1 => {
                write!(f, "D({})", list(&self.cone_orders))
            }
            SignatureKind::OrientableSurface { genus } => write!(
                f,
                "O(g={};b={};cone=[{}])",
                genus,
                self.boundary_circles,
                list(&self.cone_orders)
            ),
            SignatureKind::NonOrientableSurface { crosscaps } => write!(
                f,
                "N(k={};b={};cone=[{}])",
                crosscaps,
                self.boundary_circles,
                list(&self.cone_orders)
            ),
            SignatureKind::MirroredDisc => write!(f, "D({};mirror)", list(&self.cone_orders)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    Punct(char),
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Lexer {
    fn new(text: &str) -> Result<Self, PresentationError> {
        let mut toks = Vec::new();
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let mut i = 0;
        while i < chars.len() {
            let (p, c) = chars[i];
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_alphabetic() {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_alphanumeric() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().map(|x| x.1).collect();
                toks.push((p, Tok::Ident(s)));
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().map(|x| x.1).collect();
                let v = s.parse::<u64>().map_err(|_| PresentationError::Syntax {
                    pos: p,
                    message: format!("integer {s} out of range"),
                })?;
                toks.push((p, Tok::Int(v)));
            } else if "()[];,=".contains(c) {
                toks.push((p, Tok::Punct(c)));
                i += 1;
            } else {
                return Err(PresentationError::Syntax {
                    pos: p,
                    message: format!("unexpected character {c:?}"),
                });
            }
        }
        Ok(Lexer {
            toks,
            pos: 0,
            end: text.len(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, PresentationError> {
        Err(PresentationError::Syntax {
            pos: self.here(),
            message: message.into(),
        })
    }

    fn expect(&mut self, c: char) -> Result<(), PresentationError> {
        match self.peek() {
            Some(Tok::Punct(p)) if *p == c => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => {
                let t = t.clone();
                self.err(format!("expected '{c}', found {}", describe(&t)))
            }
            None => self.err(format!("expected '{c}', found end of input")),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<(usize, u64), PresentationError> {
        match self.next() {
            Some((p, Tok::Int(v))) => Ok((p, v)),
            Some((p, t)) => Err(PresentationError::Syntax {
                pos: p,
                message: format!("expected an integer, found {}", describe(&t)),
            }),
            None => Err(PresentationError::Syntax {
                pos: self.end,
                message: "expected an integer, found end of input".into(),
            }),
        }
    }

    /// Comma-separated cone orders up to (not including) `close`.
    fn orders(&mut self, close: char) -> Result<Vec<u32>, PresentationError> {
        let mut out = Vec::new();
        if self.peek() == Some(&Tok::Punct(close)) {
            return Ok(out);
        }
        loop {
            let (p, v) = self.int()?;
            if v < 2 {
                return Err(PresentationError::ConeOrder { pos: p, order: v as u32 });
            }
            let v = u32::try_from(v).map_err(|_| PresentationError::Syntax {
                pos: p,
                message: "cone order too large".into(),
            })?;
            out.push(v);
            if !self.eat(',') {
                break;
            }
        }
        Ok(out)
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Int(v) => format!("'{v}'"),
        Tok::Punct(c) => format!("'{c}'"),
    }
}

/// Parse the signature grammar described in the module docs.
pub fn parse_signature(text: &str) -> Result<OrbifoldSignature, PresentationError> {
    let mut lx = Lexer::new(text)?;
    let head_pos = lx.here();
    let head = match lx.next() {
        Some((_, Tok::Ident(s))) => s,
        Some((p, t)) => {
            return Err(PresentationError::Syntax {
                pos: p,
                message: format!("expected signature kind (S2, O, N, D), found {}", describe(&t)),
            })
        }
        None => {
            return Err(PresentationError::Syntax {
                pos: 0,
                message: "empty signature".into(),
            })
        }
    };
    let sig = match head.as_str() {
        "S2" => {
            lx.expect('(')?;
            let orders = lx.orders(')')?;
            lx.expect(')')?;
            OrbifoldSignature::new(SignatureKind::OrientableSurface { genus: 0 }, 0, orders)?
        }
        "O" | "N" => {
            lx.expect('(')?;
            let genus_key = if head == "O" { "g" } else { "k" };
            let mut genus: Option<u64> = None;
            let mut boundary: Option<u64> = None;
            let mut cone: Option<Vec<u32>> = None;
            if lx.peek() != Some(&Tok::Punct(')')) {
                loop {
                    let kpos = lx.here();
                    let key = match lx.next() {
                        Some((_, Tok::Ident(s))) => s,
                        Some((p, t)) => {
                            return Err(PresentationError::Syntax {
                                pos: p,
                                message: format!("expected a key, found {}", describe(&t)),
                            })
                        }
                        None => return lx.err("expected a key, found end of input"),
                    };
                    lx.expect('=')?;
                    let dup = |pos| PresentationError::Syntax {
                        pos,
                        message: format!("duplicate key '{key}'"),
                    };
                    match key.as_str() {
                        k if k == genus_key => {
                            if genus.replace(lx.int()?.1).is_some() {
                                return Err(dup(kpos));
                            }
                        }
                        "b" => {
                            if boundary.replace(lx.int()?.1).is_some() {
                                return Err(dup(kpos));
                            }
                        }
                        "cone" => {
                            lx.expect('[')?;
                            let o = lx.orders(']')?;
                            lx.expect(']')?;
                            if cone.replace(o).is_some() {
                                return Err(dup(kpos));
                            }
                        }
                        "corner" | "corners" => {
                            return Err(PresentationError::Unsupported(
                                "corner reflectors are not supported by the signature grammar; supply a raw presentation"
                                    .into(),
                            ))
                        }
                        _ => {
                            return Err(PresentationError::Syntax {
                                pos: kpos,
                                message: format!("unknown key '{key}' (expected {genus_key}, b or cone)"),
                            })
                        }
                    }
                    if !lx.eat(';') {
                        break;
                    }
                }
            }
            lx.expect(')')?;
            let small = |v: u64| u32::try_from(v).map_err(|_| PresentationError::Unsupported("count too large".into()));
            let b = small(boundary.unwrap_or(0))?;
            let cone = cone.unwrap_or_default();
            if head == "O" {
                let g = small(genus.unwrap_or(0))?;
                OrbifoldSignature::new(SignatureKind::OrientableSurface { genus: g }, b, cone)?
            } else {
                let Some(k) = genus else {
                    return Err(PresentationError::Syntax {
                        pos: head_pos,
                        message: "non-orientable signature requires k=<crosscaps>".into(),
                    });
                };
                if k == 0 {
                    return Err(PresentationError::Syntax {
                        pos: head_pos,
                        message: "crosscap count k must be at least 1".into(),
                    });
                }
                OrbifoldSignature::new(SignatureKind::NonOrientableSurface { crosscaps: small(k)? }, b, cone)?
            }
        }
        "D" => {
            lx.expect('(')?;
            let orders = lx.orders(')')?;
            let mut mirror = false;
            if lx.eat(';') {
                let mpos = lx.here();
                match lx.next() {
                    Some((_, Tok::Ident(s))) if s == "mirror" => mirror = true,
                    Some((_, Tok::Ident(s))) if s.starts_with("corner") => {
                        return Err(PresentationError::Unsupported(
                            "corner reflectors are not supported by the signature grammar; supply a raw presentation"
                                .into(),
                        ))
                    }
                    Some((_, t)) => {
                        return Err(PresentationError::Syntax {
                            pos: mpos,
                            message: format!("expected 'mirror', found {}", describe(&t)),
                        })
                    }
                    None => return lx.err("expected 'mirror', found end of input"),
                }
            }
            lx.expect(')')?;
            if mirror {
                OrbifoldSignature::new(SignatureKind::MirroredDisc, 1, orders)?
            } else {
                OrbifoldSignature::new(SignatureKind::OrientableSurface { genus: 0 }, 1, orders)?
            }
        }
        other => {
            return Err(PresentationError::Syntax {
                pos: head_pos,
                message: format!("unknown signature kind '{other}' (expected S2, O, N or D)"),
            })
        }
    };
    if let Some(t) = lx.peek().cloned() {
        return lx.err(format!("trailing input starting at {}", describe(&t)));
    }
    Ok(sig)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_examples() {
        let s = parse_signature("S2(3,3,4)").unwrap();
        assert_eq!(s.kind, SignatureKind::OrientableSurface { genus: 0 });
        assert_eq!(s.boundary_circles, 0);
        assert_eq!(s.cone_orders, vec![3, 3, 4]);

        let t = parse_signature("O(g=1;b=0;cone=[])").unwrap();
        assert_eq!(t.kind, SignatureKind::OrientableSurface { genus: 1 });
        assert_eq!(euler_characteristic(&t), Ratio::from_integer(0));

        let d = parse_signature("D(3,3;mirror)").unwrap();
        assert_eq!(d.kind, SignatureKind::MirroredDisc);
        assert_eq!(d.cone_orders, vec![3, 3]);
        assert!(d.is_closed());

        let n = parse_signature(" N( k = 1 ; b = 0 ; cone = [5, 2] ) ").unwrap();
        assert_eq!(n.kind, SignatureKind::NonOrientableSurface { crosscaps: 1 });
        assert_eq!(n.cone_orders, vec![2, 5]);

        let o = parse_signature("O(g=2;b=1;cone=[3,3])").unwrap();
        assert_eq!(o.boundary_circles, 1);
        assert!(!o.is_closed());
    }

    #[test]
    fn euler_values() {
        let s = parse_signature("S2(2,3,7)").unwrap();
        assert_eq!(euler_characteristic(&s), Ratio::new(-1, 42));
        let s = parse_signature("S2(3,3,3,3)").unwrap();
        assert_eq!(underlying_euler(&s), 2);
        assert_eq!(cone_count(&s), 4);
        let d = parse_signature("D(3,3;mirror)").unwrap();
        assert_eq!(euler_characteristic(&d), Ratio::new(-1, 3));
    }

    #[test]
    fn errors_point_at_tokens() {
        match parse_signature("S2(3,1,4)") {
            Err(PresentationError::ConeOrder { pos, order }) => {
                assert_eq!(pos, 5);
                assert_eq!(order, 1);
            }
            other => panic!("unexpected {other:?}"),
        }
        match parse_signature("O(g=2;x=1)") {
            Err(PresentationError::Syntax { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("unexpected {other:?}"),
        }
        match parse_signature("S2(3,3") {
            Err(PresentationError::Syntax { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_signature("D(3;corners=[2,2])"),
            Err(PresentationError::Unsupported(_))
        ));
        assert!(matches!(parse_signature("N(b=1)"), Err(PresentationError::Syntax { .. })));
        assert!(matches!(parse_signature("S2(2,3,7) x"), Err(PresentationError::Syntax { .. })));
    }

    #[test]
    fn display_round_trip() {
        for text in [
            "S2(2,3,7)",
            "D(3,4)",
            "D(3,3;mirror)",
            "O(g=2;b=1;cone=[3,3])",
            "N(k=1;b=0;cone=[2,5])",
            "O(g=1;b=0;cone=[])",
        ] {
            let s = parse_signature(text).unwrap();
            assert_eq!(s.to_string(), text);
            assert_eq!(parse_signature(&s.to_string()).unwrap(), s);
        }
        assert_eq!(parse_signature("S2(7,3,2)").unwrap().to_string(), "S2(2,3,7)");
    }
}
