//! Text formats for genomes and objects.
//!
//! Genome files hold one rule per line, `<name> <KIND> <p1> <p2> [<p3>] <weight>`.
//! Object files hold `<word> <multiplicity>` lines. In both, `_` stands for the
//! empty word and blank or `#` lines are skipped.

use std::collections::HashSet;
use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::object::{canonicalize, MultiSetObject, Word};
use crate::rule::{Genome, Rule, RuleKind};

pub const EMPTY_WORD_TOKEN: &str = "_";

#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParseErrorKind {
    Malformed(String),
    DuplicateName(String),
    Arity {
        kind: RuleKind,
        expected: usize,
        got: usize,
    },
    NonPositiveWeight(String),
    NonPositiveMultiplicity(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Malformed(m) => write!(f, "malformed line: {m}"),
            ParseErrorKind::DuplicateName(n) => write!(f, "duplicate rule name {n}"),
            ParseErrorKind::Arity {
                kind,
                expected,
                got,
            } => write!(f, "{kind} takes {expected} parameter words, got {got}"),
            ParseErrorKind::NonPositiveWeight(w) => write!(f, "weight must be positive, got {w}"),
            ParseErrorKind::NonPositiveMultiplicity(m) => {
                write!(f, "multiplicity must be a positive integer, got {m}")
            }
        }
    }
}

/// Whitespace-separated tokens with 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(byte, tok)| (line[..byte].chars().count() + 1, tok))
        .collect()
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<(usize, &str)>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let toks = tokens(line);
        match toks.first() {
            None => None,
            Some((_, t)) if t.starts_with('#') => None,
            Some(_) => Some((i + 1, toks)),
        }
    })
}

fn parse_word(token: &str) -> Result<Word, String> {
    if token == EMPTY_WORD_TOKEN {
        return Ok(Word::empty());
    }
    Word::new(token).map_err(|e| e.to_string())
}

fn word_token(word: &Word) -> &str {
    if word.is_empty() {
        EMPTY_WORD_TOKEN
    } else {
        word.as_str()
    }
}

pub fn parse_genome_file(text: &str) -> Result<Genome, ParseError> {
    let mut rules = Vec::new();
    let mut names = HashSet::new();
    for (line, toks) in content_lines(text) {
        let err = |column: usize, kind| ParseError { line, column, kind };
        if toks.len() < 2 {
            return Err(err(
                toks[0].0,
                ParseErrorKind::Malformed("expected <name> <KIND> ...".into()),
            ));
        }
        let (name_col, name) = toks[0];
        let (kind_col, kind_tok) = toks[1];
        let kind: RuleKind = kind_tok.parse().map_err(|_| {
            err(
                kind_col,
                ParseErrorKind::Malformed(format!("unknown rule kind {kind_tok:?}")),
            )
        })?;
        let got = toks.len().saturating_sub(3);
        if toks.len() != kind.arity() + 3 {
            return Err(err(
                kind_col,
                ParseErrorKind::Arity {
                    kind,
                    expected: kind.arity(),
                    got,
                },
            ));
        }
        let (weight_col, weight_tok) = toks[toks.len() - 1];
        let weight: f64 = weight_tok.parse().map_err(|_| {
            err(
                weight_col,
                ParseErrorKind::Malformed(format!("weight {weight_tok:?} is not a number")),
            )
        })?;
        if !(weight.is_finite() && weight > 0.0) {
            return Err(err(
                weight_col,
                ParseErrorKind::NonPositiveWeight(weight_tok.into()),
            ));
        }
        let mut params = Vec::new();
        for &(col, tok) in &toks[2..toks.len() - 1] {
            params.push(parse_word(tok).map_err(|m| err(col, ParseErrorKind::Malformed(m)))?);
        }
        if !names.insert(name.to_string()) {
            return Err(err(name_col, ParseErrorKind::DuplicateName(name.into())));
        }
        let rule = Rule::from_parts(name, kind, params, weight)
            .map_err(|e| err(kind_col, ParseErrorKind::Malformed(e.to_string())))?;
        rules.push(rule);
    }
    Ok(Genome::new(rules).expect("names checked"))
}

pub fn render_genome_file(genome: &Genome) -> String {
    let mut out = String::new();
    for r in genome.rules() {
        let _ = write!(out, "{} {}", r.name(), r.kind());
        for p in r.schema().params() {
            let _ = write!(out, " {}", word_token(p));
        }
        let _ = writeln!(out, " {}", r.weight());
    }
    out
}

pub fn parse_object_file(text: &str) -> Result<MultiSetObject, ParseError> {
    let mut raw = Vec::new();
    for (line, toks) in content_lines(text) {
        let err = |column: usize, kind| ParseError { line, column, kind };
        if toks.len() != 2 {
            return Err(err(
                toks[0].0,
                ParseErrorKind::Malformed("expected <word> <multiplicity>".into()),
            ));
        }
        let (word_col, word_tok) = toks[0];
        let (mult_col, mult_tok) = toks[1];
        let word = parse_word(word_tok).map_err(|m| err(word_col, ParseErrorKind::Malformed(m)))?;
        let mult: u64 = match mult_tok.parse::<i128>() {
            Ok(m) if m > 0 && m <= u64::MAX as i128 => m as u64,
            Ok(_) => {
                return Err(err(
                    mult_col,
                    ParseErrorKind::NonPositiveMultiplicity(mult_tok.into()),
                ))
            }
            Err(_) => {
                return Err(err(
                    mult_col,
                    ParseErrorKind::Malformed(format!(
                        "multiplicity {mult_tok:?} is not an integer"
                    )),
                ))
            }
        };
        raw.push((word, mult));
    }
    Ok(canonicalize(raw))
}

pub fn render_object_file(object: &MultiSetObject) -> String {
    let mut out = String::new();
    for (w, m) in object.iter() {
        let _ = writeln!(out, "{w} {m}");
    }
    out
}
