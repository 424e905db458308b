//! Text form of a surface representation.
//!
//! ```text
//! # the modular torus
//! surface genus=1 boundary=1
//! reference
//! a: moebius: [[1,1],[1,2]] winding 0
//! b: moebius: [[1,-1],[-1,2]] winding 0
//! word abAB
//! ```
//!
//! The `surface` line comes first. `example` in place of the generator
//! lines loads the shipped hyperbolization. `word` lines list words to
//! evaluate; a line starting with `#` is a comment.

use super::{example_hyperbolization, FreeWord, SurfaceData, SurfaceRep};
use crate::circle::{CircleElement, MoebiusLift};
use crate::error::{Error, Result};

fn err(line: usize, what: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {what}"))
}

fn parse_surface(line: usize, body: &str) -> Result<SurfaceData> {
    let (mut genus, mut boundary) = (None, None);
    for field in body.split_whitespace() {
        let (key, value) = field.split_once('=').ok_or_else(|| err(line, format!("expected key=value, got {field:?}")))?;
        let value: u32 = value.parse().map_err(|_| err(line, format!("bad number {value:?}")))?;
        match key {
            "genus" => genus = Some(value),
            "boundary" => boundary = Some(value),
            _ => return Err(err(line, format!("unknown surface field {key:?}"))),
        }
    }
    match (genus, boundary) {
        (Some(g), Some(b)) => SurfaceData::new(g, b),
        _ => Err(err(line, "surface needs genus= and boundary=")),
    }
}

/// Parses a representation and the words listed with it.
pub fn parse_rep(text: &str) -> Result<(SurfaceRep, Vec<FreeWord>)> {
    let mut surface = None;
    let mut reference = false;
    let mut example = false;
    let mut gens: Vec<Option<MoebiusLift>> = Vec::new();
    let mut words = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(body) = line.strip_prefix("surface ") {
            if surface.is_some() {
                return Err(err(n, "repeated surface line"));
            }
            let s = parse_surface(n, body)?;
            gens = vec![None; s.rank()];
            surface = Some(s);
            continue;
        }
        let s = surface.ok_or_else(|| err(n, "surface line must come first"))?;
        if line == "reference" {
            reference = true;
        } else if line == "example" {
            example = true;
        } else if let Some(body) = line.strip_prefix("word ") {
            words.push(FreeWord::parse(body, s.rank()).map_err(|e| err(n, e))?);
        } else if let Some((name, body)) = line.split_once(':') {
            let mut chars = name.trim().chars();
            let k = match (chars.next(), chars.next()) {
                (Some(c @ 'a'..='z'), None) => (c as u8 - b'a') as usize,
                _ => return Err(err(n, format!("bad generator name {name:?}"))),
            };
            if k >= s.rank() {
                return Err(err(n, format!("generator {name} outside rank {}", s.rank())));
            }
            if gens[k].is_some() {
                return Err(err(n, format!("generator {name} given twice")));
            }
            gens[k] = Some(body.parse::<MoebiusLift>().map_err(|e| err(n, e))?);
        } else {
            return Err(err(n, format!("unrecognised line {line:?}")));
        }
    }
    let s = surface.ok_or_else(|| Error::Parse("missing surface line".into()))?;
    let mut rep = if example {
        if gens.iter().any(Option::is_some) {
            return Err(Error::Parse("example excludes generator lines".into()));
        }
        example_hyperbolization(&s)?
    } else {
        let given = gens
            .into_iter()
            .enumerate()
            .map(|(k, g)| g.ok_or_else(|| Error::Parse(format!("generator {} missing", (b'a' + k as u8) as char))))
            .collect::<Result<Vec<_>>>()?;
        SurfaceRep::new(s, given)?
    };
    rep.reference = reference;
    Ok((rep, words))
}

/// Writes the form read by [`parse_rep`].
pub fn rep_to_text(rep: &SurfaceRep, words: &[FreeWord]) -> String {
    let mut out = format!("{}\n", rep.surface);
    if rep.reference {
        out.push_str("reference\n");
    }
    for (k, g) in rep.gens().iter().enumerate() {
        out.push_str(&format!("{}: {}\n", (b'a' + k as u8) as char, CircleElement::Moebius(g.clone())));
    }
    for w in words {
        out.push_str(&format!("word {w}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TORUS: &str = "# modular\nsurface genus=1 boundary=1\nreference\na: moebius: [[1,1],[1,2]] winding 0\nb: moebius: [[1,-1],[-1,2]]\nword abAB\nword a B A b\n";

    #[test]
    fn round_trip() {
        let (rep, words) = parse_rep(TORUS).unwrap();
        assert!(rep.reference);
        assert_eq!(rep.matrices(), SurfaceRep::modular_torus().matrices());
        assert_eq!(words.iter().map(|w| w.to_string()).collect::<Vec<_>>(), ["abAB", "aBAb"]);
        let (again, words2) = parse_rep(&rep_to_text(&rep, &words)).unwrap();
        assert_eq!((again.gens(), again.reference), (rep.gens(), true));
        assert_eq!(words2, words);
    }

    #[test]
    fn example_directive() {
        let (rep, _) = parse_rep("surface genus=0 boundary=3\nexample\nreference\n").unwrap();
        assert!(rep.certificate.is_some() && rep.reference);
    }

    #[test]
    fn rejects_malformed_files() {
        for bad in [
            "a: moebius: [[1,0],[0,1]]",
            "surface genus=1 boundary=1\na: moebius: [[1,1],[1,2]]",
            "surface genus=1 boundary=1\nc: moebius: [[1,1],[1,2]]",
            "surface genus=1\n",
            "surface genus=0 boundary=2\n",
            "surface genus=1 boundary=1\nexample\nword abc",
            "surface genus=1 boundary=1\nwhat",
        ] {
            assert!(matches!(parse_rep(bad), Err(Error::Parse(_) | Error::UnsupportedSurface(_))), "{bad}");
        }
    }
}
