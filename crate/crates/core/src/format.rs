//! The factorization file format.
//!
//! Leading lines starting with `#` are comments. The rest is a JSON document:
//!
//! ```text
//! {"genus":2,"base_genus":0,"twists":[
//! {"base":"c1","conj":["t3","T2"]}
//! ]}
//! ```
//!
//! `twists` lists vanishing cycles in application order. Each cycle is the
//! image of the standard curve `base` under the twist word `conj`, which is
//! written in composition order (rightmost letter acts first).

use std::fmt;
use std::str::FromStr;

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::monodromy::{Curve, Factorization, LanternInstance};
use crate::surface::{StdCurve, Twist};

pub const HEADER: &str = "# lefschetz factorization: twists in application order; \
conj words in composition order (rightmost acts first)";

/// A value read from a JSON string through `FromStr`.
struct Parsed<T>(T);

impl<'de, T> Deserialize<'de> for Parsed<T>
where
    T: FromStr<Err = Error>,
{
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map(Parsed).map_err(de::Error::custom)
    }
}

struct Shown<'a, T>(&'a T);

impl<T: fmt::Display> Serialize for Shown<'_, T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self.0)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTwist {
    base: Parsed<StdCurve>,
    #[serde(default)]
    conj: Vec<Parsed<Twist>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    genus: usize,
    #[serde(default)]
    base_genus: usize,
    twists: Vec<RawTwist>,
}

/// 1-based line and column of the first occurrence of `needle` at or after
/// byte `from`.
fn locate(text: &str, needle: &str, from: usize) -> (usize, usize) {
    let at = text[from.min(text.len())..]
        .find(needle)
        .map(|i| i + from)
        .unwrap_or(0);
    let before = &text[..at];
    let line = before.matches('\n').count() + 1;
    let column = at - before.rfind('\n').map(|i| i + 1).unwrap_or(0) + 1;
    (line, column)
}

/// Replaces leading `#` lines by blanks so reported positions match the input.
fn blank_comments(text: &str) -> String {
    let mut body = String::with_capacity(text.len());
    let mut in_header = true;
    for line in text.split_inclusive('\n') {
        if in_header && line.trim_start().starts_with('#') {
            body.extend(line.chars().map(|c| if c == '\n' { '\n' } else { ' ' }));
        } else {
            if !line.trim().is_empty() {
                in_header = false;
            }
            body.push_str(line);
        }
    }
    body
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

/// Validates labels against the genus. Errors point at the offending label,
/// searching from byte `from` of `body`.
fn build_cycles(body: &str, from: usize, g: usize, raw: Vec<RawTwist>) -> Result<Vec<Curve>> {
    raw.into_iter()
        .enumerate()
        .map(|(k, t)| {
            let c = Curve {
                base: t.base.0,
                conj: t.conj.into_iter().map(|p| p.0).collect(),
            };
            c.validate(g).map_err(|e| {
                let out_of_range = |tok: &String| {
                    tok.parse::<StdCurve>().map(|b| b.validate(g).is_err()).unwrap_or(false)
                        || tok
                            .parse::<Twist>()
                            .map(|t| t.curve.validate(g).is_err())
                            .unwrap_or(false)
                };
                let bad = std::iter::once(c.base.label())
                    .chain(c.conj.iter().map(|t| t.token()))
                    .find(out_of_range)
                    .unwrap_or_default();
                let (line, column) = locate(body, &format!("\"{bad}\""), from);
                Error::Parse {
                    line,
                    column,
                    message: format!("twist {k}: {e}"),
                }
            })?;
            Ok(c)
        })
        .collect()
}

pub fn parse_factorization(text: &str) -> Result<Factorization> {
    let body = blank_comments(text);
    let raw: RawFile = serde_json::from_str(&body).map_err(json_error)?;
    let from = body.find("\"twists\"").unwrap_or(0);
    let cycles = build_cycles(&body, from, raw.genus, raw.twists)?;
    Factorization::new(raw.genus, raw.base_genus, cycles)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLantern {
    genus: usize,
    boundary: Vec<RawTwist>,
    interior: Vec<RawTwist>,
}

/// Reads a lantern instance: the same header and cycle records as a
/// factorization file, with `boundary` (four cycles) and `interior` (three)
/// in place of `twists`.
pub fn parse_lantern(name: &str, text: &str) -> Result<LanternInstance> {
    let body = blank_comments(text);
    let raw: RawLantern = serde_json::from_str(&body).map_err(json_error)?;
    let g = raw.genus;
    let boundary = build_cycles(&body, body.find("\"boundary\"").unwrap_or(0), g, raw.boundary)?;
    let interior = build_cycles(&body, body.find("\"interior\"").unwrap_or(0), g, raw.interior)?;
    let norm = |v: Vec<Curve>| v.into_iter().map(|c| Curve::new(c.base, c.conj)).collect::<Vec<_>>();
    let (nb, ni) = (boundary.len(), interior.len());
    let wrong = || Error::Precondition(format!("a lantern has 4 boundary and 3 interior curves, got {nb} and {ni}"));
    Ok(LanternInstance {
        name: name.to_string(),
        genus: g,
        boundary: norm(boundary).try_into().map_err(|_| wrong())?,
        interior: norm(interior).try_into().map_err(|_| wrong())?,
    })
}

#[derive(Serialize)]
struct OutTwist<'a> {
    base: Shown<'a, StdCurve>,
    conj: Vec<Shown<'a, Twist>>,
}

/// Writes the header comment, then one cycle per line.
pub fn serialize_factorization(f: &Factorization) -> String {
    let mut out = format!(
        "{HEADER}\n{{\"genus\":{},\"base_genus\":{},\"twists\":[",
        f.fiber_genus, f.base_genus
    );
    for (k, c) in f.cycles.iter().enumerate() {
        let t = OutTwist {
            base: Shown(&c.base),
            conj: c.conj.iter().map(Shown).collect(),
        };
        out.push_str(if k == 0 { "\n" } else { ",\n" });
        out.push_str(&serde_json::to_string(&t).expect("plain strings serialize"));
    }
    out.push_str("\n]}\n");
    out
}
