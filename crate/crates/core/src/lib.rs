//! A laboratory for genomes modelled as lists of multivalued string-rewriting
//! rules acting on multisets of words.
//!
//! * [`object`]: words and canonical multisets of words.
//! * [`rule`], [`apply`]: the seven rule schemas and their single-step application.
//! * [`graph`]: bounded reduction graphs of everything reachable from a start object.
//! * [`statmech`]: action along walks, walk sums, partition sums, the
//!   zero-temperature limit and inverse-temperature sweeps.
//! * [`evolution`]: genomes encoded as objects and the partition sum over an
//!   evolving ensemble of genomes.
//! * [`alignment`]: global alignment, an exhaustive oracle, and edit operations as rules.
//! * [`cli`]: file formats and the command-line front end.

pub mod alignment;
pub mod apply;
pub mod cli;
pub mod evolution;
pub mod graph;
pub mod object;
pub mod rule;
pub mod statmech;

pub use apply::{apply_at, enumerate_applications, Site};
pub use graph::{
    build_graph, export_dot, Digraph, ExplorationBounds, ReductionGraph, WeightedDigraph,
};
pub use object::{canonicalize, MultiSetObject, Word};
pub use rule::{Genome, Rule, RuleKind, Schema};
pub use statmech::{Beta, FitnessSpec, SumMode};
