//! Reader for the line-oriented presentation format:
//!
//! ```text
//! gens: a b c
//! order a 5
//! pow a = b^2 c
//! conj b^a = b c
//! ```
//!
//! `#` starts a comment. Omitted relations are trivial. Words are
//! space-separated `name` or `name^k` tokens, or `1` for the identity;
//! right-hand sides must already be in normal form.

use super::presentation::{PcPresentation, PresentationBuilder};
use crate::error::{Error, Result};

/// Metadata headers recognised in presentation files.
pub const METADATA_KEYS: [&str; 3] = ["key", "provenance", "prime"];

/// A parsed file: the presentation plus any metadata headers in file order.
#[derive(Clone, Debug)]
pub struct ParsedDocument {
    pub presentation: PcPresentation,
    pub metadata: Vec<(String, String)>,
}

impl ParsedDocument {
    pub fn metadata(&self, key: &str) -> Option<&str> {
        self.metadata.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

/// Parses presentation source; metadata headers are accepted and dropped.
pub fn parse_presentation(text: &str) -> Result<PcPresentation> {
    parse_document(text).map(|d| d.presentation)
}

#[derive(Clone, Debug)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (pos, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..pos],
                    column: line[..s].chars().count() + 1,
                });
            }
        } else if start.is_none() {
            start = Some(pos);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: line[..s].chars().count() + 1,
        });
    }
    out
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

struct Syllable<'a> {
    name: &'a str,
    exponent: i64,
    column: usize,
}

struct RawWord<'a> {
    syllables: Vec<Syllable<'a>>,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn semantic(line: usize, message: impl Into<String>) -> Error {
    Error::Semantic {
        line,
        message: message.into(),
    }
}

fn parse_word<'a>(toks: &[Token<'a>], line: usize, end_column: usize) -> Result<RawWord<'a>> {
    if toks.is_empty() {
        return Err(syntax(line, end_column, "expected a word (use `1` for the identity)"));
    }
    if toks.len() == 1 && toks[0].text == "1" {
        return Ok(RawWord { syllables: vec![] });
    }
    let mut syllables = Vec::new();
    for t in toks {
        let (name, exponent) = match t.text.split_once('^') {
            None => (t.text, 1),
            Some((name, exp)) => {
                let exponent: i64 = exp.parse().map_err(|_| {
                    syntax(
                        line,
                        t.column + name.chars().count() + 1,
                        format!("invalid exponent `{exp}`"),
                    )
                })?;
                (name, exponent)
            }
        };
        if !is_identifier(name) {
            return Err(syntax(line, t.column, format!("invalid generator name `{name}`")));
        }
        syllables.push(Syllable {
            name,
            exponent,
            column: t.column,
        });
    }
    Ok(RawWord { syllables })
}

enum Relation<'a> {
    Power { base: Token<'a>, rhs: RawWord<'a> },
    Conjugate { conjugated: &'a str, by: &'a str, column: usize, rhs: RawWord<'a> },
}

/// Parses presentation source together with `key:`, `provenance:` and
/// `prime:` metadata headers.
pub fn parse_document(text: &str) -> Result<ParsedDocument> {
    let mut names: Option<(usize, Vec<String>)> = None;
    let mut orders: Vec<(usize, Token<'_>, u64)> = Vec::new();
    let mut relations: Vec<(usize, Relation<'_>)> = Vec::new();
    let mut metadata = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokens(line);
        let Some(head) = toks.first() else { continue };
        let line_end = line.chars().count() + 1;

        if let Some(key) = head.text.strip_suffix(':') {
            let value = line[line.find(':').unwrap() + 1..].trim().to_string();
            if key == "gens" {
                if names.is_some() {
                    return Err(semantic(line_no, "duplicate `gens:` line"));
                }
                let mut list = Vec::new();
                for t in &toks[1..] {
                    if !is_identifier(t.text) {
                        return Err(syntax(line_no, t.column, format!("invalid generator name `{}`", t.text)));
                    }
                    if list.iter().any(|n: &String| n == t.text) {
                        return Err(semantic(line_no, format!("generator `{}` listed twice", t.text)));
                    }
                    list.push(t.text.to_string());
                }
                names = Some((line_no, list));
            } else if METADATA_KEYS.contains(&key) {
                metadata.push((key.to_string(), value));
            } else {
                return Err(syntax(line_no, head.column, format!("unknown header `{key}:`")));
            }
            continue;
        }

        match head.text {
            "order" => {
                if toks.len() != 3 {
                    return Err(syntax(line_no, head.column, "expected `order <generator> <integer>`"));
                }
                let r: u64 = toks[2]
                    .text
                    .parse()
                    .map_err(|_| syntax(line_no, toks[2].column, format!("invalid relative order `{}`", toks[2].text)))?;
                orders.push((line_no, toks[1].clone(), r));
            }
            "pow" => {
                if toks.len() < 3 || toks[2].text != "=" {
                    let col = toks.get(2).map_or(line_end, |t| t.column);
                    return Err(syntax(line_no, col, "expected `pow <generator> = <word>`"));
                }
                let rhs = parse_word(&toks[3..], line_no, line_end)?;
                relations.push((line_no, Relation::Power { base: toks[1].clone(), rhs }));
            }
            "conj" => {
                if toks.len() < 3 || toks[2].text != "=" {
                    let col = toks.get(2).map_or(line_end, |t| t.column);
                    return Err(syntax(line_no, col, "expected `conj <generator>^<generator> = <word>`"));
                }
                let Some((conjugated, by)) = toks[1].text.split_once('^') else {
                    return Err(syntax(line_no, toks[1].column, "expected `<generator>^<generator>`"));
                };
                if !is_identifier(conjugated) || !is_identifier(by) {
                    return Err(syntax(line_no, toks[1].column, format!("invalid conjugate `{}`", toks[1].text)));
                }
                let rhs = parse_word(&toks[3..], line_no, line_end)?;
                relations.push((
                    line_no,
                    Relation::Conjugate {
                        conjugated,
                        by,
                        column: toks[1].column,
                        rhs,
                    },
                ));
            }
            other => {
                return Err(syntax(line_no, head.column, format!("unknown directive `{other}`")));
            }
        }
    }

    let Some((gens_line, names)) = names else {
        return Err(semantic(text.lines().count().max(1), "missing `gens:` line"));
    };
    let index = |name: &str, line: usize| -> Result<usize> {
        names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| semantic(line, format!("unknown generator `{name}`")))
    };

    let n = names.len();
    let mut rel_orders: Vec<Option<u64>> = vec![None; n];
    for (line, tok, r) in &orders {
        let i = index(tok.text, *line)?;
        if rel_orders[i].is_some() {
            return Err(semantic(*line, format!("relative order of `{}` given twice", tok.text)));
        }
        if *r < 2 {
            return Err(semantic(*line, format!("relative order of `{}` must be at least 2", tok.text)));
        }
        rel_orders[i] = Some(*r);
    }
    let rel_orders: Vec<u64> = rel_orders
        .into_iter()
        .enumerate()
        .map(|(i, r)| r.ok_or_else(|| semantic(gens_line, format!("no `order` line for `{}`", names[i]))))
        .collect::<Result<_>>()?;

    // Right-hand side as an exponent vector, required to be a normal word
    // over generators with index >= min_index.
    let normal_rhs = |w: &RawWord<'_>, line: usize, min_index: usize, what: &str| -> Result<Vec<u64>> {
        let mut v = vec![0u64; n];
        let mut last: Option<usize> = None;
        for s in &w.syllables {
            let k = index(s.name, line)?;
            if k < min_index {
                return Err(semantic(
                    line,
                    format!("{what}: right-hand side mentions `{}`, which is not permitted here", s.name),
                ));
            }
            if last.is_some_and(|l| k <= l) {
                return Err(semantic(
                    line,
                    format!("{what}: right-hand side is not in normal form at column {}", s.column),
                ));
            }
            if s.exponent < 1 || s.exponent as u64 >= rel_orders[k] {
                return Err(semantic(
                    line,
                    format!(
                        "{what}: exponent {} of `{}` must lie in 1..{}",
                        s.exponent,
                        s.name,
                        rel_orders[k] - 1
                    ),
                ));
            }
            v[k] = s.exponent as u64;
            last = Some(k);
        }
        Ok(v)
    };

    let mut builder = PresentationBuilder::new(names.clone(), rel_orders.clone())?;
    let mut seen_power = vec![false; n];
    let mut seen_conj = vec![vec![false; n]; n];
    for (line, rel) in &relations {
        let line = *line;
        match rel {
            Relation::Power { base, rhs } => {
                let i = index(base.text, line)?;
                if std::mem::replace(&mut seen_power[i], true) {
                    return Err(semantic(line, format!("power relation of `{}` given twice", base.text)));
                }
                let v = normal_rhs(rhs, line, i + 1, &format!("pow {}", base.text))?;
                builder.set_power(i, v).map_err(|e| semantic(line, e.to_string()))?;
            }
            Relation::Conjugate {
                conjugated,
                by,
                column,
                rhs,
            } => {
                let j = index(conjugated, line)?;
                let i = index(by, line)?;
                if i >= j {
                    return Err(semantic(
                        line,
                        format!(
                            "conj {conjugated}^{by} (column {column}): the conjugating generator must come before the conjugated one"
                        ),
                    ));
                }
                if std::mem::replace(&mut seen_conj[i][j], true) {
                    return Err(semantic(line, format!("relation `{conjugated}^{by}` given twice")));
                }
                let v = normal_rhs(rhs, line, j, &format!("conj {conjugated}^{by}"))?;
                builder.set_conjugate(i, j, v).map_err(|e| semantic(line, e.to_string()))?;
            }
        }
    }

    Ok(ParsedDocument {
        presentation: builder.build(),
        metadata,
    })
}
