//! Rule schemas (genes) and genomes.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::object::Word;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RuleError {
    #[error("rule {name}: weight must be positive and finite, got {weight}")]
    BadWeight { name: String, weight: f64 },
    #[error("rule {name}: {kind} takes {expected} parameter words, got {got}")]
    BadArity {
        name: String,
        kind: RuleKind,
        expected: usize,
        got: usize,
    },
    #[error("rule {name}: {kind} requires a nonempty {param} word")]
    EmptyParam {
        name: String,
        kind: RuleKind,
        param: &'static str,
    },
    #[error("duplicate rule name {0}")]
    DuplicateName(String),
    #[error("unknown rule kind {0:?}")]
    UnknownKind(String),
}

/// The seven rewriting schemas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleKind {
    Glue,
    Cleave,
    Sub,
    Del,
    Ins,
    Splice,
    Dup,
}

impl RuleKind {
    pub const ALL: [RuleKind; 7] = [
        RuleKind::Glue,
        RuleKind::Cleave,
        RuleKind::Sub,
        RuleKind::Del,
        RuleKind::Ins,
        RuleKind::Splice,
        RuleKind::Dup,
    ];

    pub fn arity(self) -> usize {
        match self {
            RuleKind::Ins => 3,
            _ => 2,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            RuleKind::Glue => "GLUE",
            RuleKind::Cleave => "CLEAVE",
            RuleKind::Sub => "SUB",
            RuleKind::Del => "DEL",
            RuleKind::Ins => "INS",
            RuleKind::Splice => "SPLICE",
            RuleKind::Dup => "DUP",
        }
    }

    /// One-letter tag used by the genome codec.
    pub fn letter(self) -> char {
        match self {
            RuleKind::Glue => 'G',
            RuleKind::Cleave => 'C',
            RuleKind::Sub => 'S',
            RuleKind::Del => 'D',
            RuleKind::Ins => 'I',
            RuleKind::Splice => 'P',
            RuleKind::Dup => 'U',
        }
    }

    pub fn from_letter(letter: &str) -> Option<RuleKind> {
        RuleKind::ALL
            .into_iter()
            .find(|k| letter.len() == 1 && letter.starts_with(k.letter()))
    }
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

impl FromStr for RuleKind {
    type Err = RuleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleKind::ALL
            .into_iter()
            .find(|k| k.keyword() == s)
            .ok_or_else(|| RuleError::UnknownKind(s.to_string()))
    }
}

/// Anchor and payload words of a rule.
///
/// * `Glue`: a word ending in `left` plus a word starting with `right` become their concatenation.
/// * `Cleave`: an occurrence of `left·right` is split between the two anchors.
/// * `Sub`: an occurrence of `from` is replaced by `to` (`to` may be empty).
/// * `Del`: the nonempty infix between an occurrence of `left` and a later `right` is removed.
/// * `Ins`: `insert` is placed between adjacent `left` and `right`; empty anchors match anywhere.
/// * `Splice`: a whole separate donor word is inserted between adjacent `left` and `right`.
/// * `Dup`: the nonempty infix between `left` and a later `right` is doubled.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Schema {
    Glue {
        left: Word,
        right: Word,
    },
    Cleave {
        left: Word,
        right: Word,
    },
    Sub {
        from: Word,
        to: Word,
    },
    Del {
        left: Word,
        right: Word,
    },
    Ins {
        left: Word,
        insert: Word,
        right: Word,
    },
    Splice {
        left: Word,
        right: Word,
    },
    Dup {
        left: Word,
        right: Word,
    },
}

impl Schema {
    pub fn kind(&self) -> RuleKind {
        match self {
            Schema::Glue { .. } => RuleKind::Glue,
            Schema::Cleave { .. } => RuleKind::Cleave,
            Schema::Sub { .. } => RuleKind::Sub,
            Schema::Del { .. } => RuleKind::Del,
            Schema::Ins { .. } => RuleKind::Ins,
            Schema::Splice { .. } => RuleKind::Splice,
            Schema::Dup { .. } => RuleKind::Dup,
        }
    }

    /// Parameter words in positional order.
    pub fn params(&self) -> Vec<&Word> {
        match self {
            Schema::Glue { left, right }
            | Schema::Cleave { left, right }
            | Schema::Del { left, right }
            | Schema::Splice { left, right }
            | Schema::Dup { left, right } => vec![left, right],
            Schema::Sub { from, to } => vec![from, to],
            Schema::Ins {
                left,
                insert,
                right,
            } => vec![left, insert, right],
        }
    }

    fn from_params(kind: RuleKind, params: Vec<Word>) -> Option<Schema> {
        let mut it = params.into_iter();
        let mut next = || it.next();
        let schema = match kind {
            RuleKind::Glue => Schema::Glue {
                left: next()?,
                right: next()?,
            },
            RuleKind::Cleave => Schema::Cleave {
                left: next()?,
                right: next()?,
            },
            RuleKind::Sub => Schema::Sub {
                from: next()?,
                to: next()?,
            },
            RuleKind::Del => Schema::Del {
                left: next()?,
                right: next()?,
            },
            RuleKind::Ins => Schema::Ins {
                left: next()?,
                insert: next()?,
                right: next()?,
            },
            RuleKind::Splice => Schema::Splice {
                left: next()?,
                right: next()?,
            },
            RuleKind::Dup => Schema::Dup {
                left: next()?,
                right: next()?,
            },
        };
        Some(schema)
    }
}

/// One gene: a named schema with positive weight `K`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    name: String,
    schema: Schema,
    weight: f64,
}

impl Rule {
    pub fn new(name: impl Into<String>, schema: Schema, weight: f64) -> Result<Self, RuleError> {
        let name = name.into();
        if !(weight.is_finite() && weight > 0.0) {
            return Err(RuleError::BadWeight { name, weight });
        }
        let kind = schema.kind();
        match &schema {
            Schema::Sub { from, .. } if from.is_empty() => {
                return Err(RuleError::EmptyParam {
                    name,
                    kind,
                    param: "from",
                })
            }
            Schema::Ins { insert, .. } if insert.is_empty() => {
                return Err(RuleError::EmptyParam {
                    name,
                    kind,
                    param: "insert",
                })
            }
            _ => {}
        }
        Ok(Rule {
            name,
            schema,
            weight,
        })
    }

    /// Build from a kind tag and a positional parameter list, checking arity.
    pub fn from_parts(
        name: impl Into<String>,
        kind: RuleKind,
        params: Vec<Word>,
        weight: f64,
    ) -> Result<Self, RuleError> {
        let name = name.into();
        if params.len() != kind.arity() {
            return Err(RuleError::BadArity {
                name,
                kind,
                expected: kind.arity(),
                got: params.len(),
            });
        }
        let schema = Schema::from_params(kind, params).expect("arity checked");
        Rule::new(name, schema, weight)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn kind(&self) -> RuleKind {
        self.schema.kind()
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn with_weight(&self, weight: f64) -> Result<Self, RuleError> {
        Rule::new(self.name.clone(), self.schema.clone(), weight)
    }

    pub fn with_name(&self, name: impl Into<String>) -> Rule {
        Rule {
            name: name.into(),
            ..self.clone()
        }
    }
}

macro_rules! two_word_ctor {
    ($fn:ident, $variant:ident, $a:ident, $b:ident) => {
        pub fn $fn(
            name: impl Into<String>,
            $a: &str,
            $b: &str,
            weight: f64,
        ) -> Result<Rule, RuleError> {
            Rule::new(
                name,
                Schema::$variant {
                    $a: word_param($a),
                    $b: word_param($b),
                },
                weight,
            )
        }
    };
}

/// Shorthand constructors taking string literals; panic on invalid symbols.
impl Rule {
    two_word_ctor!(glue, Glue, left, right);
    two_word_ctor!(cleave, Cleave, left, right);
    two_word_ctor!(sub, Sub, from, to);
    two_word_ctor!(del, Del, left, right);
    two_word_ctor!(splice, Splice, left, right);
    two_word_ctor!(dup, Dup, left, right);

    pub fn ins(
        name: impl Into<String>,
        left: &str,
        insert: &str,
        right: &str,
        weight: f64,
    ) -> Result<Rule, RuleError> {
        Rule::new(
            name,
            Schema::Ins {
                left: word_param(left),
                insert: word_param(insert),
                right: word_param(right),
            },
            weight,
        )
    }
}

fn word_param(s: &str) -> Word {
    Word::new(s).expect("valid parameter word literal")
}

/// An ordered list of rules with unique names.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Genome {
    rules: Vec<Rule>,
}

impl Genome {
    pub fn new(rules: Vec<Rule>) -> Result<Self, RuleError> {
        let mut seen = HashSet::new();
        for r in &rules {
            if !seen.insert(r.name()) {
                return Err(RuleError::DuplicateName(r.name().to_string()));
            }
        }
        Ok(Genome { rules })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&Rule> {
        self.rules.iter().find(|r| r.name() == name)
    }
}
