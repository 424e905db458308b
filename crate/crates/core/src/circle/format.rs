//! Text form of circle elements.
//!
//! ```text
//! pl: [(0, 0), (1/2, 1/4)]
//! moebius: [[2,0],[0,1/2]] winding 1
//! ```
//!
//! `Display` writes the canonical form and parsing it back gives an equal
//! element.

use std::str::FromStr;

use super::moebius::{Mat2, MoebiusLift};
use super::pl::PlMap;
use super::CircleElement;
use crate::error::{Error, Result};
use crate::num::rational::{parse_q, Q};

fn err(s: &str, what: &str) -> Error {
    Error::Parse(format!("{what} in {s:?}"))
}

fn parse_pl(body: &str) -> Result<PlMap> {
    let inner = body
        .trim()
        .strip_prefix('[')
        .and_then(|b| b.strip_suffix(']'))
        .ok_or_else(|| err(body, "expected [...] breakpoint list"))?;
    let mut pts = Vec::new();
    let mut rest = inner.trim();
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(|| err(body, "expected '('"))?;
        let close = open.find(')').ok_or_else(|| err(body, "unclosed '('"))?;
        let (x, y) = open[..close].split_once(',').ok_or_else(|| err(body, "expected (x, y)"))?;
        pts.push((parse_q(x)?, parse_q(y)?));
        rest = open[close + 1..].trim_start();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
        } else if !rest.is_empty() {
            return Err(err(body, "expected ',' between breakpoints"));
        }
    }
    PlMap::new(pts)
}

fn parse_moebius(body: &str) -> Result<MoebiusLift> {
    let body = body.trim();
    let end = body.find("]]").ok_or_else(|| err(body, "expected [[a,b],[c,d]]"))?;
    let matrix = &body[..end + 2];
    let entries: Vec<Q> = matrix
        .split(['[', ']', ','])
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(parse_q)
        .collect::<Result<_>>()?;
    let [a, b, c, d]: [Q; 4] = entries.try_into().map_err(|_| err(body, "matrix needs four entries"))?;
    let rest = body[end + 2..].trim();
    let winding = match rest.strip_prefix("winding") {
        Some(w) => w.trim().parse::<i64>().map_err(|_| err(body, "bad winding"))?,
        None if rest.is_empty() => 0,
        None => return Err(err(body, "expected 'winding m'")),
    };
    Ok(MoebiusLift::new(Mat2::new(a, b, c, d)?, winding))
}

impl FromStr for CircleElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(body) = s.strip_prefix("pl:") {
            Ok(CircleElement::Pl(parse_pl(body)?))
        } else if let Some(body) = s.strip_prefix("moebius:") {
            Ok(CircleElement::Moebius(parse_moebius(body)?))
        } else {
            Err(err(s, "expected 'pl:' or 'moebius:'"))
        }
    }
}

impl FromStr for MoebiusLift {
    type Err = Error;

    /// Accepts the body with or without the `moebius:` prefix.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        parse_moebius(s.strip_prefix("moebius:").unwrap_or(s))
    }
}
