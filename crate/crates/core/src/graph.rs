//! Bounded reduction graphs.
//!
//! [`build_graph`] explores every object reachable from `v0` by repeated rule
//! application, breadth first. Vertices are deduplicated by canonical equality,
//! so two application orders that meet at the same multiset share a vertex.
//! Real reduction graphs are often infinite (duplication grows words without
//! limit), so exploration is cut off by [`ExplorationBounds`] and the graph
//! records whether anything was cut.

use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use thiserror::Error;

use crate::apply::{enumerate_applications, Site};
use crate::object::MultiSetObject;
use crate::rule::Genome;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("initial object {object} violates exploration bounds: {reason}")]
    InitialOutOfBounds { object: String, reason: String },
    #[error("exploration bound {0} must be positive")]
    ZeroBound(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExplorationBounds {
    pub max_depth: usize,
    pub max_vertices: usize,
    pub max_word_len: usize,
    pub max_total_symbols: u64,
}

impl Default for ExplorationBounds {
    fn default() -> Self {
        ExplorationBounds {
            max_depth: 16,
            max_vertices: 10_000,
            max_word_len: 64,
            max_total_symbols: 256,
        }
    }
}

impl ExplorationBounds {
    pub fn with_depth(max_depth: usize) -> Self {
        ExplorationBounds {
            max_depth,
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<(), GraphError> {
        if self.max_vertices == 0 {
            return Err(GraphError::ZeroBound("max_vertices"));
        }
        if self.max_word_len == 0 {
            return Err(GraphError::ZeroBound("max_word_len"));
        }
        if self.max_total_symbols == 0 {
            return Err(GraphError::ZeroBound("max_total_symbols"));
        }
        Ok(())
    }

    /// Why `object` may not be stored, if it may not.
    pub fn violation(&self, object: &MultiSetObject) -> Option<String> {
        if object.max_word_len() > self.max_word_len {
            return Some(format!(
                "word length {} exceeds {}",
                object.max_word_len(),
                self.max_word_len
            ));
        }
        if object.total_symbols() > self.max_total_symbols {
            return Some(format!(
                "total symbols {} exceed {}",
                object.total_symbols(),
                self.max_total_symbols
            ));
        }
        None
    }
}

/// A single rule application between two vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub rule: String,
    pub site: Site,
    pub weight: f64,
}

#[derive(Debug, Clone)]
pub struct ReductionGraph {
    vertices: Vec<MultiSetObject>,
    index: HashMap<MultiSetObject, usize>,
    edges: Vec<Edge>,
    depth: Vec<usize>,
    truncated: bool,
}

impl ReductionGraph {
    pub fn vertices(&self) -> &[MultiSetObject] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &MultiSetObject {
        &self.vertices[i]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Depth at which each vertex was first reached.
    pub fn depths(&self) -> &[usize] {
        &self.depth
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn find(&self, object: &MultiSetObject) -> Option<usize> {
        self.index.get(object).copied()
    }
}

/// Anything with vertices `0..n` (vertex 0 the root) and weighted directed arcs.
///
/// The statistical sums only need this view, which lets tests and examples
/// use hand-built graphs alongside reduction graphs.
pub trait WeightedDigraph {
    fn vertex_count(&self) -> usize;
    /// `(source, target, weight)` in a fixed order.
    fn arcs(&self) -> Vec<(usize, usize, f64)>;
}

impl WeightedDigraph for ReductionGraph {
    fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    fn arcs(&self) -> Vec<(usize, usize, f64)> {
        self.edges
            .iter()
            .map(|e| (e.source, e.target, e.weight))
            .collect()
    }
}

/// Plain weighted digraph.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Digraph {
    pub vertex_count: usize,
    pub arcs: Vec<(usize, usize, f64)>,
}

impl Digraph {
    pub fn new(vertex_count: usize, arcs: Vec<(usize, usize, f64)>) -> Self {
        assert!(
            arcs.iter()
                .all(|&(s, t, _)| s < vertex_count && t < vertex_count),
            "arc endpoint out of range"
        );
        Digraph { vertex_count, arcs }
    }
}

impl WeightedDigraph for Digraph {
    fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    fn arcs(&self) -> Vec<(usize, usize, f64)> {
        self.arcs.clone()
    }
}

/// Breadth-first closure of `genome` applied to `v0`, within `bounds`.
pub fn build_graph(
    genome: &Genome,
    v0: &MultiSetObject,
    bounds: &ExplorationBounds,
) -> Result<ReductionGraph, GraphError> {
    bounds.validate()?;
    if let Some(reason) = bounds.violation(v0) {
        return Err(GraphError::InitialOutOfBounds {
            object: v0.to_string(),
            reason,
        });
    }

    let mut graph = ReductionGraph {
        vertices: vec![v0.clone()],
        index: HashMap::from([(v0.clone(), 0)]),
        edges: Vec::new(),
        depth: vec![0],
        truncated: false,
    };

    let mut frontier = vec![0usize];
    let mut level = 0;
    while !frontier.is_empty() {
        if level == bounds.max_depth {
            // Anything still applicable here is cut off.
            graph.truncated |= frontier.par_iter().any(|&v| {
                let object = &graph.vertices[v];
                genome
                    .rules()
                    .iter()
                    .any(|r| !enumerate_applications(r, object).is_empty())
            });
            break;
        }

        let expansions: Vec<Vec<(usize, Site, MultiSetObject)>> = frontier
            .par_iter()
            .map(|&v| {
                let object = &graph.vertices[v];
                genome
                    .rules()
                    .iter()
                    .enumerate()
                    .flat_map(|(ri, rule)| {
                        enumerate_applications(rule, object)
                            .into_iter()
                            .map(move |(site, result)| (ri, site, result))
                    })
                    .collect()
            })
            .collect();

        let mut next = Vec::new();
        for (&source, apps) in frontier.iter().zip(expansions) {
            for (ri, site, result) in apps {
                let target = match graph.index.get(&result) {
                    Some(&t) => t,
                    None => {
                        if bounds.violation(&result).is_some()
                            || graph.vertices.len() >= bounds.max_vertices
                        {
                            graph.truncated = true;
                            continue;
                        }
                        let t = graph.vertices.len();
                        graph.index.insert(result.clone(), t);
                        graph.vertices.push(result);
                        graph.depth.push(level + 1);
                        next.push(t);
                        t
                    }
                };
                let rule = &genome.rules()[ri];
                graph.edges.push(Edge {
                    source,
                    target,
                    rule: rule.name().to_string(),
                    site,
                    weight: rule.weight(),
                });
            }
        }
        frontier = next;
        level += 1;
    }
    Ok(graph)
}

fn escape_label(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering; node labels are the multisets, edge labels `rule (K=weight)`.
pub fn export_dot(graph: &ReductionGraph) -> String {
    let mut out = String::from("digraph reduction {\n");
    for (i, v) in graph.vertices.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", escape_label(&v.to_string()));
    }
    for e in &graph.edges {
        let _ = writeln!(
            out,
            "  n{} -> n{} [label=\"{} (K={})\"];",
            e.source,
            e.target,
            escape_label(&e.rule),
            e.weight
        );
    }
    out.push_str("}\n");
    out
}
