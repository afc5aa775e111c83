//! Words and finite multisets of words.
//!
//! A [`MultiSetObject`] is always canonical: every multiplicity is positive,
//! the empty word never appears, and entries iterate in lexicographic order.
//! Equality of objects is therefore plain structural equality.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("invalid symbol {symbol:?} at offset {offset} (words use printable ASCII without whitespace)")]
    InvalidSymbol { symbol: char, offset: usize },
}

/// A finite string over printable, non-whitespace ASCII.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(String);

impl Word {
    pub fn new(text: impl Into<String>) -> Result<Self, WordError> {
        let text = text.into();
        if let Some((offset, symbol)) = text.char_indices().find(|&(_, c)| !is_word_symbol(c)) {
            return Err(WordError::InvalidSymbol { symbol, offset });
        }
        Ok(Word(text))
    }

    pub fn empty() -> Self {
        Word(String::new())
    }

    /// Caller guarantees `bytes` came from slicing and joining valid words.
    pub(crate) fn from_valid_bytes(bytes: Vec<u8>) -> Self {
        debug_assert!(bytes.iter().all(|&b| is_word_symbol(b as char)));
        // ASCII only, so always valid UTF-8.
        Word(String::from_utf8(bytes).expect("word bytes are ASCII"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every offset `i` with `self[i..]` starting with `pattern`, overlaps included.
    /// An empty pattern matches at every offset `0..=len`.
    pub fn occurrences(&self, pattern: &[u8]) -> impl Iterator<Item = usize> + '_ {
        let hay = self.as_bytes();
        let last = hay.len().checked_sub(pattern.len());
        let pattern = pattern.to_vec();
        (0..last.map_or(0, |l| l + 1)).filter(move |&i| hay[i..].starts_with(&pattern))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::str::FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::new(s)
    }
}

pub fn is_word_symbol(c: char) -> bool {
    c.is_ascii_graphic()
}

/// A canonical finite multiset of nonempty words.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MultiSetObject {
    entries: BTreeMap<Word, u64>,
}

/// Merge, sort and drop empty words and zero multiplicities.
pub fn canonicalize<I>(raw: I) -> MultiSetObject
where
    I: IntoIterator<Item = (Word, u64)>,
{
    let mut entries = BTreeMap::new();
    for (word, mult) in raw {
        if word.is_empty() || mult == 0 {
            continue;
        }
        *entries.entry(word).or_insert(0) += mult;
    }
    MultiSetObject { entries }
}

impl MultiSetObject {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Convenience constructor for literals; panics on invalid symbols.
    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, u64)>) -> Self {
        canonicalize(
            pairs
                .into_iter()
                .map(|(w, m)| (Word::new(w).expect("valid word literal"), m)),
        )
    }

    pub fn singleton(word: Word) -> Self {
        canonicalize([(word, 1)])
    }

    pub fn multiplicity(&self, word: &Word) -> u64 {
        self.entries.get(word).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, u64)> + '_ {
        self.entries.iter().map(|(w, &m)| (w, m))
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> + '_ {
        self.entries.keys()
    }

    /// Number of distinct words.
    pub fn distinct_len(&self) -> usize {
        self.entries.len()
    }

    /// Total number of words counted with multiplicity.
    pub fn total_count(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Σ |word| · multiplicity.
    pub fn total_symbols(&self) -> u64 {
        self.entries.iter().map(|(w, &m)| w.len() as u64 * m).sum()
    }

    pub fn max_word_len(&self) -> usize {
        self.entries.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Size of the multiset symmetric difference, counting multiplicities.
    pub fn symmetric_difference_size(&self, other: &MultiSetObject) -> u64 {
        let mut total = 0;
        for (w, &m) in &self.entries {
            total += m.abs_diff(other.multiplicity(w));
        }
        for (w, &m) in &other.entries {
            if !self.entries.contains_key(w) {
                total += m;
            }
        }
        total
    }

    /// Remove `removed` (one copy each) and add `added`, returning the canonical result.
    /// Returns `None` if some removed word is not present often enough.
    pub(crate) fn replace(&self, removed: &[&Word], added: Vec<Word>) -> Option<MultiSetObject> {
        let mut entries = self.entries.clone();
        for w in removed {
            let slot = entries.get_mut(*w)?;
            if *slot == 0 {
                return None;
            }
            *slot -= 1;
        }
        for w in added {
            *entries.entry(w).or_insert(0) += 1;
        }
        Some(canonicalize(entries))
    }
}

impl fmt::Display for MultiSetObject {
    /// Renders `word^mult` terms joined by `+`; the empty object renders as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, m)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{w}^{m}")?;
        }
        Ok(())
    }
}
