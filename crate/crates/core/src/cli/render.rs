//! Deterministic text, JSON and CSV output.
//!
//! Floats are printed with Rust's shortest round-trip formatting in every
//! format, so identical results render to identical bytes.

use std::fmt::Write as _;

use serde::Serialize;

use crate::alignment::Alignment;
use crate::evolution::EvolutionResult;
use crate::graph::ReductionGraph;
use crate::statmech::{FitnessSpec, PartitionResult, SweepRow, ZeroTemperature};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

pub const SWEEP_HEADER: &str = "beta,Z,free_energy";

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn render_sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(out, "{},{},{}", r.beta, r.z, r.free_energy);
    }
    out
}

#[derive(Serialize)]
struct PartitionJson {
    #[serde(rename = "Z")]
    z: f64,
    #[serde(rename = "log_Z")]
    log_z: f64,
    num_vertices: usize,
    num_edges: usize,
    truncated: bool,
    diverged: bool,
    beta: f64,
    steps: usize,
}

pub fn render_partition(
    result: &PartitionResult,
    graph: &ReductionGraph,
    beta: f64,
    format: Format,
) -> String {
    match format {
        Format::Json => json(&PartitionJson {
            z: result.z,
            log_z: result.log_z,
            num_vertices: graph.vertex_count(),
            num_edges: graph.edge_count(),
            truncated: graph.truncated(),
            diverged: result.diverged,
            beta,
            steps: result.steps,
        }),
        Format::Text => format!(
            "Z = {}\nlog_Z = {}\nfree_energy = {}\nnum_vertices = {}\nnum_edges = {}\ntruncated = {}\ndiverged = {}\nsteps = {}\n",
            result.z,
            result.log_z,
            -result.log_z / beta,
            graph.vertex_count(),
            graph.edge_count(),
            graph.truncated(),
            result.diverged,
            result.steps
        ),
    }
}

#[derive(Serialize)]
struct VertexJson {
    index: usize,
    depth: usize,
    object: String,
}

#[derive(Serialize)]
struct EdgeJson<'a> {
    source: usize,
    target: usize,
    rule: &'a str,
    weight: f64,
}

#[derive(Serialize)]
struct GraphJson<'a> {
    num_vertices: usize,
    num_edges: usize,
    truncated: bool,
    vertices: Vec<VertexJson>,
    edges: Vec<EdgeJson<'a>>,
}

pub fn render_graph(graph: &ReductionGraph, format: Format) -> String {
    match format {
        Format::Json => json(&GraphJson {
            num_vertices: graph.vertex_count(),
            num_edges: graph.edge_count(),
            truncated: graph.truncated(),
            vertices: graph
                .vertices()
                .iter()
                .zip(graph.depths())
                .enumerate()
                .map(|(index, (v, &depth))| VertexJson {
                    index,
                    depth,
                    object: v.to_string(),
                })
                .collect(),
            edges: graph
                .edges()
                .iter()
                .map(|e| EdgeJson {
                    source: e.source,
                    target: e.target,
                    rule: &e.rule,
                    weight: e.weight,
                })
                .collect(),
        }),
        Format::Text => {
            let mut out = format!(
                "vertices: {}\nedges: {}\ntruncated: {}\n",
                graph.vertex_count(),
                graph.edge_count(),
                graph.truncated()
            );
            for (i, (v, d)) in graph.vertices().iter().zip(graph.depths()).enumerate() {
                let _ = writeln!(out, "  v{i} depth={d} {v}");
            }
            for e in graph.edges() {
                let _ = writeln!(
                    out,
                    "  v{} -> v{} {} (K={})",
                    e.source, e.target, e.rule, e.weight
                );
            }
            out
        }
    }
}

#[derive(Serialize)]
struct CostJson {
    vertex: usize,
    object: String,
    fitness: f64,
    distance: f64,
}

#[derive(Serialize)]
struct MinCostJson {
    best_vertex: usize,
    best_object: String,
    best_value: f64,
    num_vertices: usize,
    truncated: bool,
    vertices: Vec<CostJson>,
}

pub fn render_min_cost(
    zt: &ZeroTemperature,
    graph: &ReductionGraph,
    fitness: &FitnessSpec,
    format: Format,
) -> String {
    let rows: Vec<CostJson> = graph
        .vertices()
        .iter()
        .zip(&zt.distances)
        .enumerate()
        .map(|(vertex, (v, &distance))| CostJson {
            vertex,
            object: v.to_string(),
            fitness: fitness.evaluate(v),
            distance,
        })
        .collect();
    let best_object = graph.vertex(zt.best_vertex).to_string();
    match format {
        Format::Json => json(&MinCostJson {
            best_vertex: zt.best_vertex,
            best_object,
            best_value: zt.best_value,
            num_vertices: graph.vertex_count(),
            truncated: graph.truncated(),
            vertices: rows,
        }),
        Format::Text => {
            let mut out = format!(
                "best_vertex = {}\nbest_object = {}\nbest_value = {}\ntruncated = {}\n",
                zt.best_vertex,
                best_object,
                zt.best_value,
                graph.truncated()
            );
            for r in rows {
                let _ = writeln!(
                    out,
                    "  v{} d={} F={} {}",
                    r.vertex, r.distance, r.fitness, r.object
                );
            }
            out
        }
    }
}

#[derive(Serialize)]
struct AlignJson<'a> {
    top: &'a str,
    bottom: &'a str,
    score: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    brute_force_score: Option<f64>,
}

pub fn render_alignment(
    alignment: &Alignment,
    score: f64,
    brute: Option<f64>,
    format: Format,
) -> String {
    match format {
        Format::Json => json(&AlignJson {
            top: alignment.top(),
            bottom: alignment.bottom(),
            score,
            brute_force_score: brute,
        }),
        Format::Text => {
            let mut out = format!("{alignment}\nscore: {score}\n");
            if let Some(b) = brute {
                let _ = writeln!(out, "brute_force_score: {b}");
            }
            out
        }
    }
}

#[derive(Serialize)]
struct GenomeTermJson {
    vertex: usize,
    encoded: String,
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    invalid_reason: Option<String>,
    inner_z: f64,
    outer_walk_sum: f64,
    inner_vertices: usize,
    inner_truncated: bool,
    inner_diverged: bool,
}

#[derive(Serialize)]
struct EvolutionJson {
    #[serde(rename = "Z")]
    z: f64,
    #[serde(rename = "log_Z")]
    log_z: f64,
    num_vertices: usize,
    truncated: bool,
    diverged: bool,
    per_genome: Vec<GenomeTermJson>,
}

pub fn render_evolution(result: &EvolutionResult, format: Format) -> String {
    let truncated = result.outer_truncated || result.any_inner_truncated();
    let diverged = result.outer_diverged || result.any_inner_diverged();
    let terms: Vec<GenomeTermJson> = result
        .per_genome
        .iter()
        .map(|t| GenomeTermJson {
            vertex: t.vertex,
            encoded: result.outer_graph.vertex(t.vertex).to_string(),
            valid: t.genome.is_ok(),
            invalid_reason: t.genome.as_ref().err().map(|e| e.to_string()),
            inner_z: t.inner_z,
            outer_walk_sum: t.outer_walk_sum,
            inner_vertices: t.inner_vertices,
            inner_truncated: t.inner_truncated,
            inner_diverged: t.inner_diverged,
        })
        .collect();
    match format {
        Format::Json => json(&EvolutionJson {
            z: result.z_outer,
            log_z: result.log_z_outer,
            num_vertices: result.outer_graph.vertex_count(),
            truncated,
            diverged,
            per_genome: terms,
        }),
        Format::Text => {
            let mut out = format!(
                "Z = {}\nlog_Z = {}\nnum_vertices = {}\ntruncated = {}\ndiverged = {}\n",
                result.z_outer,
                result.log_z_outer,
                result.outer_graph.vertex_count(),
                truncated,
                diverged
            );
            for t in terms {
                let status = if t.valid { "valid" } else { "invalid" };
                let _ = writeln!(
                    out,
                    "  v{} {} inner_Z={} outer_walk_sum={} {}",
                    t.vertex, status, t.inner_z, t.outer_walk_sum, t.encoded
                );
            }
            out
        }
    }
}
