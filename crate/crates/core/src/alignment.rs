//! Global pairwise alignment with match 0, mismatch μ and indel σ.
//!
//! Lower scores are better. [`edit_genome`] expresses the same edit operations
//! as rewriting rules, so the cheapest reduction walk between two single-word
//! objects can be compared with the optimal alignment score.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::object::{is_word_symbol, Word};
use crate::rule::{Genome, Rule};

pub const GAP: u8 = b'-';

/// Largest `|V| + |W|` accepted by [`brute_force_min_score`].
pub const BRUTE_FORCE_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlignError {
    #[error("mismatch score must be nonnegative and finite, got {0}")]
    BadMismatch(f64),
    #[error("indel score must be positive and finite, got {0}")]
    BadIndel(f64),
    #[error("rows have different lengths {top} and {bottom}")]
    RaggedRows { top: usize, bottom: usize },
    #[error("column {0} has a gap in both rows")]
    DoubleGap(usize),
    #[error("invalid sequence symbol {0:?}")]
    BadSymbol(char),
    #[error("brute force limited to |V|+|W| <= {BRUTE_FORCE_LIMIT}, got {0}")]
    TooLarge(usize),
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("substitution rules need a positive mismatch score")]
    ZeroMismatchRule,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoreScheme {
    mu: f64,
    sigma: f64,
}

impl ScoreScheme {
    pub fn new(mu: f64, sigma: f64) -> Result<Self, AlignError> {
        if !(mu.is_finite() && mu >= 0.0) {
            return Err(AlignError::BadMismatch(mu));
        }
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(AlignError::BadIndel(sigma));
        }
        Ok(ScoreScheme { mu, sigma })
    }

    pub fn mismatch(&self) -> f64 {
        self.mu
    }

    pub fn indel(&self) -> f64 {
        self.sigma
    }

    /// Column score; `None` for a double-gap column.
    pub fn column(&self, top: u8, bottom: u8) -> Option<f64> {
        match (top, bottom) {
            (GAP, GAP) => None,
            (GAP, _) | (_, GAP) => Some(self.sigma),
            (a, b) if a == b => Some(0.0),
            _ => Some(self.mu),
        }
    }
}

/// Two gapped rows of equal length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alignment {
    top: Vec<u8>,
    bottom: Vec<u8>,
}

impl Alignment {
    pub fn new(top: &str, bottom: &str) -> Result<Self, AlignError> {
        let (top, bottom) = (top.as_bytes().to_vec(), bottom.as_bytes().to_vec());
        if top.len() != bottom.len() {
            return Err(AlignError::RaggedRows {
                top: top.len(),
                bottom: bottom.len(),
            });
        }
        if let Some(c) = top
            .iter()
            .chain(&bottom)
            .find(|&&c| !is_word_symbol(c as char))
        {
            return Err(AlignError::BadSymbol(*c as char));
        }
        if let Some(i) = (0..top.len()).find(|&i| top[i] == GAP && bottom[i] == GAP) {
            return Err(AlignError::DoubleGap(i));
        }
        Ok(Alignment { top, bottom })
    }

    pub fn top(&self) -> &str {
        std::str::from_utf8(&self.top).expect("ASCII")
    }

    pub fn bottom(&self) -> &str {
        std::str::from_utf8(&self.bottom).expect("ASCII")
    }

    pub fn len(&self) -> usize {
        self.top.len()
    }

    pub fn is_empty(&self) -> bool {
        self.top.is_empty()
    }

    /// The aligned sequences with gaps removed.
    pub fn sequences(&self) -> (String, String) {
        let strip = |row: &[u8]| {
            row.iter()
                .filter(|&&c| c != GAP)
                .map(|&c| c as char)
                .collect()
        };
        (strip(&self.top), strip(&self.bottom))
    }
}

impl fmt::Display for Alignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.top())?;
        write!(f, "{}", self.bottom())
    }
}

pub fn alignment_score(alignment: &Alignment, scheme: &ScoreScheme) -> Result<f64, AlignError> {
    alignment
        .top
        .iter()
        .zip(&alignment.bottom)
        .enumerate()
        .map(|(i, (&a, &b))| scheme.column(a, b).ok_or(AlignError::DoubleGap(i)))
        .sum()
}

fn check_sequence(s: &str) -> Result<&[u8], AlignError> {
    match s.chars().find(|&c| c == GAP as char || !is_word_symbol(c)) {
        Some(c) => Err(AlignError::BadSymbol(c)),
        None => Ok(s.as_bytes()),
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Move {
    Diagonal,
    Deletion,
    Insertion,
}

/// Minimum-score global alignment by dynamic programming.
///
/// Ties prefer a diagonal column, then a deletion (`x` over `-`), then an insertion.
pub fn align_dp(v: &str, w: &str, scheme: &ScoreScheme) -> Result<(Alignment, f64), AlignError> {
    let (v, w) = (check_sequence(v)?, check_sequence(w)?);
    let (n, m) = (v.len(), w.len());
    let mut cost = vec![vec![0.0f64; m + 1]; n + 1];
    let mut back = vec![vec![Move::Diagonal; m + 1]; n + 1];
    for i in 1..=n {
        cost[i][0] = cost[i - 1][0] + scheme.sigma;
        back[i][0] = Move::Deletion;
    }
    for j in 1..=m {
        cost[0][j] = cost[0][j - 1] + scheme.sigma;
        back[0][j] = Move::Insertion;
    }
    for i in 1..=n {
        for j in 1..=m {
            let sub = if v[i - 1] == w[j - 1] { 0.0 } else { scheme.mu };
            let mut best = (cost[i - 1][j - 1] + sub, Move::Diagonal);
            let del = cost[i - 1][j] + scheme.sigma;
            if del < best.0 {
                best = (del, Move::Deletion);
            }
            let ins = cost[i][j - 1] + scheme.sigma;
            if ins < best.0 {
                best = (ins, Move::Insertion);
            }
            cost[i][j] = best.0;
            back[i][j] = best.1;
        }
    }

    let (mut top, mut bottom) = (Vec::new(), Vec::new());
    let (mut i, mut j) = (n, m);
    while i > 0 || j > 0 {
        match back[i][j] {
            Move::Diagonal => {
                i -= 1;
                j -= 1;
                top.push(v[i]);
                bottom.push(w[j]);
            }
            Move::Deletion => {
                i -= 1;
                top.push(v[i]);
                bottom.push(GAP);
            }
            Move::Insertion => {
                j -= 1;
                top.push(GAP);
                bottom.push(w[j]);
            }
        }
    }
    top.reverse();
    bottom.reverse();
    let alignment = Alignment { top, bottom };
    let score = alignment_score(&alignment, scheme)?;
    Ok((alignment, score))
}

/// Minimum score over every valid alignment, by exhaustive enumeration.
pub fn brute_force_min_score(v: &str, w: &str, scheme: &ScoreScheme) -> Result<f64, AlignError> {
    let (v, w) = (check_sequence(v)?, check_sequence(w)?);
    if v.len() + w.len() > BRUTE_FORCE_LIMIT {
        return Err(AlignError::TooLarge(v.len() + w.len()));
    }
    fn go(v: &[u8], w: &[u8], scheme: &ScoreScheme) -> f64 {
        let mut best = f64::INFINITY;
        if let (Some((&a, vr)), Some((&b, wr))) = (v.split_first(), w.split_first()) {
            best = best.min(scheme.column(a, b).unwrap() + go(vr, wr, scheme));
        }
        if let Some((_, vr)) = v.split_first() {
            best = best.min(scheme.sigma + go(vr, w, scheme));
        }
        if let Some((_, wr)) = w.split_first() {
            best = best.min(scheme.sigma + go(v, wr, scheme));
        }
        if v.is_empty() && w.is_empty() {
            best = 0.0;
        }
        best
    }
    Ok(go(v, w, scheme))
}

/// Edit operations as rules: substitutions at weight μ, single-symbol deletions
/// and insertions (anywhere) at weight σ.
///
/// The alphabet is deduplicated and sorted; rules come as all substitutions,
/// then deletions, then insertions.
pub fn edit_genome(alphabet: &str, scheme: &ScoreScheme) -> Result<Genome, AlignError> {
    let symbols: BTreeSet<char> = alphabet.chars().collect();
    if symbols.is_empty() {
        return Err(AlignError::EmptyAlphabet);
    }
    if let Some(&c) = symbols
        .iter()
        .find(|&&c| c == GAP as char || !is_word_symbol(c))
    {
        return Err(AlignError::BadSymbol(c));
    }
    if symbols.len() > 1 && scheme.mu == 0.0 {
        return Err(AlignError::ZeroMismatchRule);
    }
    let s = |c: char| c.to_string();
    let mut rules = Vec::new();
    for &a in &symbols {
        for &b in symbols.iter().filter(|&&b| b != a) {
            rules.push(Rule::sub(format!("sub_{a}_{b}"), &s(a), &s(b), scheme.mu).expect("valid"));
        }
    }
    for &a in &symbols {
        rules.push(Rule::sub(format!("del_{a}"), &s(a), "", scheme.sigma).expect("valid"));
    }
    for &a in &symbols {
        rules.push(Rule::ins(format!("ins_{a}"), "", &s(a), "", scheme.sigma).expect("valid"));
    }
    Ok(Genome::new(rules).expect("names unique"))
}

/// Convenience for starting a rewriting run from a sequence.
pub fn sequence_word(s: &str) -> Result<Word, AlignError> {
    check_sequence(s)?;
    Ok(Word::new(s).expect("checked symbols"))
}
