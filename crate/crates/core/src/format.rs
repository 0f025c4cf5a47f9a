//! Text and JSON formats.
//!
//! Words: `n=<int>;` followed by whitespace-separated tokens, each a signed
//! generator index or `D` / `D^-1`. Braids: `{"n":…,"inf":…,"factors":[[…]]}`
//! with 1-based one-line images.

use std::fmt::Write as _;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::canonical::{BraidWord, CanonicalBraid, Letter};
use crate::error::{Error, Result};
use crate::perm::PermutationBraid;

/// Parses the word text format, reporting 1-based line and column on error.
pub fn parse_word(text: &str) -> Result<BraidWord> {
    let mut tokens = Tokens::new(text);
    let (line, column, head) = tokens
        .next()
        .ok_or_else(|| parse_err(1, 1, "empty input, expected `n=<int>;`"))?;
    let (n, rest) = parse_header(head, line, column)?;
    if n < 2 {
        return Err(parse_err(
            line,
            column,
            &format!("braid index must be at least 2, got {n}"),
        ));
    }
    let mut letters = Vec::new();
    let mut push = |tok: &str, line: usize, column: usize| -> Result<()> {
        letters.push(parse_token(tok, n, line, column)?);
        Ok(())
    };
    if let Some((off, tok)) = rest {
        push(tok, line, column + off)?;
    }
    for (line, column, tok) in tokens {
        push(tok, line, column)?;
    }
    BraidWord::new(n, letters)
}

fn parse_err(line: usize, column: usize, message: &str) -> Error {
    Error::Parse {
        line,
        column,
        message: message.to_string(),
    }
}

type HeaderRest<'a> = Option<(usize, &'a str)>;

/// Splits `n=3;` or `n=3;1` into the index and any token glued after `;`.
fn parse_header(tok: &str, line: usize, column: usize) -> Result<(usize, HeaderRest<'_>)> {
    let body = tok
        .strip_prefix("n=")
        .ok_or_else(|| parse_err(line, column, "expected header `n=<int>;`"))?;
    let semi = body
        .find(';')
        .ok_or_else(|| parse_err(line, column + tok.len(), "expected `;` after braid index"))?;
    let n = body[..semi].parse::<usize>().map_err(|_| {
        parse_err(
            line,
            column + 2,
            "braid index is not a non-negative integer",
        )
    })?;
    let rest = &body[semi + 1..];
    let rest = (!rest.is_empty()).then_some((semi + 3, rest));
    Ok((n, rest))
}

fn parse_token(tok: &str, n: usize, line: usize, column: usize) -> Result<Letter> {
    match tok {
        "D" => return Ok(Letter::Delta { inverse: false }),
        "D^-1" => return Ok(Letter::Delta { inverse: true }),
        _ => {}
    }
    let v: i64 = tok
        .parse()
        .map_err(|_| parse_err(line, column, &format!("unrecognized token {tok:?}")))?;
    let index = v.unsigned_abs() as usize;
    if v == 0 || index >= n {
        return Err(parse_err(
            line,
            column,
            &format!("generator {v} out of range for B_{n}"),
        ));
    }
    Ok(Letter::Sigma {
        index,
        inverse: v < 0,
    })
}

struct Tokens<'a> {
    lines: std::iter::Enumerate<std::str::Lines<'a>>,
    current: Option<(usize, &'a str, usize)>,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        Tokens {
            lines: text.lines().enumerate(),
            current: None,
        }
    }
}

impl<'a> Iterator for Tokens<'a> {
    type Item = (usize, usize, &'a str);

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if let Some((line, text, pos)) = self.current {
                let rest = &text[pos..];
                if let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
                    let from = pos + start;
                    let len = text[from..]
                        .find(char::is_whitespace)
                        .unwrap_or(text.len() - from);
                    self.current = Some((line, text, from + len));
                    let column = text[..from].chars().count() + 1;
                    return Some((line + 1, column, &text[from..from + len]));
                }
            }
            let (line, text) = self.lines.next()?;
            self.current = Some((line, text, 0));
        }
    }
}

/// Renders a word in the text format; `parse_word` inverts it exactly.
pub fn render_word(word: &BraidWord) -> String {
    let mut out = format!("n={};", word.n());
    for l in word.letters() {
        match *l {
            Letter::Sigma { index, inverse } => {
                let _ = write!(out, " {}{index}", if inverse { "-" } else { "" });
            }
            Letter::Delta { inverse: false } => out.push_str(" D"),
            Letter::Delta { inverse: true } => out.push_str(" D^-1"),
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BraidJson {
    n: usize,
    inf: i64,
    factors: Vec<Vec<usize>>,
}

impl Serialize for CanonicalBraid {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BraidJson {
            n: self.n(),
            inf: self.inf(),
            factors: self
                .factors()
                .iter()
                .map(PermutationBraid::images)
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CanonicalBraid {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = BraidJson::deserialize(d)?;
        braid_from_json(j).map_err(serde::de::Error::custom)
    }
}

fn braid_from_json(j: BraidJson) -> Result<CanonicalBraid> {
    let factors = j
        .factors
        .iter()
        .map(|f| {
            let p = PermutationBraid::from_images(f)?;
            if p.n() != j.n {
                return Err(Error::IndexMismatch {
                    left: j.n,
                    right: p.n(),
                });
            }
            Ok(p)
        })
        .collect::<Result<Vec<_>>>()?;
    CanonicalBraid::from_weighted(j.n, j.inf, factors)
}

/// Canonical JSON text (compact, fixed key order).
pub fn braid_to_json(x: &CanonicalBraid) -> String {
    serde_json::to_string(x).expect("braid serialization is infallible")
}

pub fn braid_from_json_str(text: &str) -> Result<CanonicalBraid> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Reads a braid from word text or canonical JSON, picking by the first
/// non-blank character.
pub fn parse_braid(text: &str) -> Result<CanonicalBraid> {
    if text.trim_start().starts_with('{') {
        braid_from_json_str(text)
    } else {
        parse_word(text).map(|w| crate::canonical::normalize(&w))
    }
}
