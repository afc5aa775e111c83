//! Genomes as objects, and the partition sum over an evolving ensemble.
//!
//! Each gene is written as one word `<letter>|<p1>|<p2>[|<p3>]|<weight>`, so a
//! genome is itself a multiset of words and an evolution genome can rewrite it
//! with the ordinary rule schemas. Every genome reachable from the ancestor is
//! weighted by its own inner partition sum and by the evolution walks reaching it.

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{build_graph, ExplorationBounds, GraphError, ReductionGraph};
use crate::object::{canonicalize, MultiSetObject, Word};
use crate::rule::{Genome, Rule, RuleKind};
use crate::statmech::{partition_function, walk_sums, Beta, FitnessSpec, StatError, SumMode};

pub const FIELD_SEPARATOR: char = '|';
pub const EMPTY_TOKEN: &str = "_";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error(
        "rule {rule}: parameter {param:?} cannot be encoded (contains '|' or is the reserved '_')"
    )]
    Unencodable { rule: String, param: String },
}

/// Why an object does not decode to a genome.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("word {word:?}: {reason}")]
pub struct InvalidGenome {
    pub word: String,
    pub reason: String,
}

#[derive(Debug, Error)]
pub enum EvolutionError {
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Stat(#[from] StatError),
}

pub fn encode_rule(rule: &Rule) -> Result<Word, CodecError> {
    let mut text = String::new();
    text.push(rule.kind().letter());
    for p in rule.schema().params() {
        if p.as_str().contains(FIELD_SEPARATOR) || p.as_str() == EMPTY_TOKEN {
            return Err(CodecError::Unencodable {
                rule: rule.name().to_string(),
                param: p.to_string(),
            });
        }
        text.push(FIELD_SEPARATOR);
        text.push_str(if p.is_empty() {
            EMPTY_TOKEN
        } else {
            p.as_str()
        });
    }
    text.push(FIELD_SEPARATOR);
    // `Display` for f64 is the shortest decimal that round-trips.
    text.push_str(&rule.weight().to_string());
    Ok(Word::new(text).expect("encoded gene uses word symbols"))
}

/// One word per gene; gene names are not part of the encoding.
pub fn encode_genome(genome: &Genome) -> Result<MultiSetObject, CodecError> {
    let words = genome
        .rules()
        .iter()
        .map(|r| Ok((encode_rule(r)?, 1)))
        .collect::<Result<Vec<_>, CodecError>>()?;
    Ok(canonicalize(words))
}

fn decode_word(word: &Word, name: String) -> Result<Rule, InvalidGenome> {
    let invalid = |reason: String| InvalidGenome {
        word: word.to_string(),
        reason,
    };
    let fields: Vec<&str> = word.as_str().split(FIELD_SEPARATOR).collect();
    let kind = RuleKind::from_letter(fields[0])
        .ok_or_else(|| invalid(format!("unknown kind letter {:?}", fields[0])))?;
    if fields.len() != kind.arity() + 2 {
        return Err(invalid(format!(
            "{kind} needs {} parameters, found {}",
            kind.arity(),
            fields.len().saturating_sub(2)
        )));
    }
    let weight_text = fields[fields.len() - 1];
    let weight: f64 = weight_text
        .parse()
        .map_err(|_| invalid(format!("weight {weight_text:?} is not a number")))?;
    let params = fields[1..fields.len() - 1]
        .iter()
        .map(|&p| match p {
            "" => Err(invalid("empty parameter field".into())),
            EMPTY_TOKEN => Ok(Word::empty()),
            p => Ok(Word::new(p).expect("substring of a word")),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Rule::from_parts(name, kind, params, weight).map_err(|e| invalid(e.to_string()))
}

/// Parse every word as a gene, one rule per copy, named `g1, g2, …` in canonical order.
pub fn decode_genome(object: &MultiSetObject) -> Result<Genome, InvalidGenome> {
    let mut rules = Vec::new();
    for (word, mult) in object.iter() {
        for _ in 0..mult {
            let name = format!("g{}", rules.len() + 1);
            rules.push(decode_word(word, name)?);
        }
    }
    Ok(Genome::new(rules).expect("generated names are unique"))
}

/// Settings for the per-genome (inner) partition sums.
#[derive(Debug, Clone)]
pub struct InnerConfig {
    pub v0: MultiSetObject,
    pub fitness: FitnessSpec,
    pub beta: Beta,
    pub bounds: ExplorationBounds,
    pub mode: SumMode,
}

#[derive(Debug, Clone)]
pub struct EvolutionConfig {
    pub evolution_genome: Genome,
    pub beta_prime: Beta,
    pub inner: InnerConfig,
    pub outer_bounds: ExplorationBounds,
    pub outer_mode: SumMode,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenomeTerm {
    /// Vertex in the evolution graph.
    pub vertex: usize,
    pub genome: Result<Genome, InvalidGenome>,
    /// Inner partition sum, 0 for invalid genomes.
    pub inner_z: f64,
    pub inner_log_z: f64,
    pub outer_walk_sum: f64,
    pub outer_log_walk_sum: f64,
    pub inner_vertices: usize,
    pub inner_truncated: bool,
    pub inner_diverged: bool,
}

#[derive(Debug, Clone)]
pub struct EvolutionResult {
    pub z_outer: f64,
    pub log_z_outer: f64,
    pub per_genome: Vec<GenomeTerm>,
    pub outer_graph: ReductionGraph,
    pub outer_truncated: bool,
    pub outer_diverged: bool,
}

impl EvolutionResult {
    pub fn any_inner_truncated(&self) -> bool {
        self.per_genome.iter().any(|t| t.inner_truncated)
    }

    pub fn any_inner_diverged(&self) -> bool {
        self.per_genome.iter().any(|t| t.inner_diverged)
    }
}

/// Combine inner partition sums with outer walk sums, in vertex order.
///
/// Returns `(Z, ln Z)`; terms are `inner_z · outer_walk_sum`.
pub fn aggregate(terms: &[GenomeTerm]) -> (f64, f64) {
    let z = terms.iter().map(|t| t.inner_z * t.outer_walk_sum).sum();
    let logs: Vec<f64> = terms
        .iter()
        .map(|t| t.inner_log_z + t.outer_log_walk_sum)
        .filter(|l| *l > f64::NEG_INFINITY)
        .collect();
    let log_z = match logs.iter().copied().reduce(f64::max) {
        None => f64::NEG_INFINITY,
        Some(m) => m + logs.iter().map(|l| (l - m).exp()).sum::<f64>().ln(),
    };
    (z, log_z)
}

/// Sum over genomes reachable from `g0` of inner `Z` times evolution walk weight at `β′`.
pub fn evolution_partition_function(
    g0: &Genome,
    config: &EvolutionConfig,
) -> Result<EvolutionResult, EvolutionError> {
    let root = encode_genome(g0)?;
    let outer_graph = build_graph(&config.evolution_genome, &root, &config.outer_bounds)?;
    let outer = walk_sums(&outer_graph, config.beta_prime, config.outer_mode)?;
    let inner = &config.inner;

    let per_genome = outer_graph
        .vertices()
        .par_iter()
        .enumerate()
        .map(|(vertex, encoded)| {
            let genome = decode_genome(encoded);
            let mut term = GenomeTerm {
                vertex,
                genome: genome.clone(),
                inner_z: 0.0,
                inner_log_z: f64::NEG_INFINITY,
                outer_walk_sum: outer.values[vertex],
                outer_log_walk_sum: outer.log_values[vertex],
                inner_vertices: 0,
                inner_truncated: false,
                inner_diverged: false,
            };
            if let Ok(genome) = genome {
                let graph = build_graph(&genome, &inner.v0, &inner.bounds)?;
                let r = partition_function(&graph, &inner.fitness, inner.beta, inner.mode)?;
                term.inner_z = r.z;
                term.inner_log_z = r.log_z;
                term.inner_vertices = graph.vertex_count();
                term.inner_truncated = graph.truncated();
                term.inner_diverged = r.diverged;
            }
            Ok(term)
        })
        .collect::<Result<Vec<_>, EvolutionError>>()?;

    let (z_outer, log_z_outer) = aggregate(&per_genome);
    Ok(EvolutionResult {
        z_outer,
        log_z_outer,
        per_genome,
        outer_truncated: outer_graph.truncated(),
        outer_graph,
        outer_diverged: outer.diverged,
    })
}
