//! Gibbs sums over reduction walks.
//!
//! For a graph rooted at vertex 0, the walk sum of a vertex `v` is
//! `S(v) = Σ_{walks 0→v} exp(−β·action(walk))`, where the action of a walk is
//! the sum of its edge weights and the empty walk contributes 1 at the root.
//! The partition sum is `Z = Σ_v exp(−β·F(v))·S(v)`.
//!
//! Walks may revisit vertices, so on cyclic graphs `S` is a power series in
//! the weighted adjacency matrix. Each vertex is accumulated relative to its
//! cheapest walk `d(v)`: the iteration runs on `x(v) = S(v)·exp(β·d(v))`,
//! whose arc factors `exp(−β(K + d(u) − d(v)))` never exceed 1. This keeps
//! `ln S` and `ln Z` accurate when `β·action` is far beyond the `f64` range.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::graph::{ReductionGraph, WeightedDigraph};
use crate::object::{MultiSetObject, Word};

/// Consecutive non-decreasing increments after which a series is declared divergent.
pub const DIVERGENCE_PATIENCE: usize = 10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatError {
    #[error("inverse temperature must be positive and finite, got {0}")]
    BadBeta(f64),
    #[error("edge index {0} out of range")]
    EdgeOutOfRange(usize),
    #[error("walk is not contiguous from the root at step {step}: edge starts at {found}, expected {expected}")]
    NonContiguous {
        step: usize,
        expected: usize,
        found: usize,
    },
    #[error("negative edge weight {0}")]
    NegativeWeight(f64),
    #[error("convergence tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("energy vector has {got} entries for {expected} vertices")]
    EnergyLength { expected: usize, got: usize },
}

/// Inverse temperature β > 0.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Beta(f64);

impl Beta {
    pub fn new(beta: f64) -> Result<Self, StatError> {
        if beta.is_finite() && beta > 0.0 {
            Ok(Beta(beta))
        } else {
            Err(StatError::BadBeta(beta))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Fitness `F` on objects.
#[derive(Debug, Clone, PartialEq)]
pub enum FitnessSpec {
    /// `F(v) = a`.
    Const(f64),
    /// `F(v) = −c · multiplicity of target in v`.
    Count { target: Word, c: f64 },
    /// `F(v) = c · |v Δ target|`, counting multiplicities.
    Dist { target: MultiSetObject, c: f64 },
}

impl FitnessSpec {
    pub fn evaluate(&self, v: &MultiSetObject) -> f64 {
        match self {
            FitnessSpec::Const(a) => *a,
            FitnessSpec::Count { target, c } => -c * v.multiplicity(target) as f64,
            FitnessSpec::Dist { target, c } => c * v.symmetric_difference_size(target) as f64,
        }
    }

    pub fn energies(&self, graph: &ReductionGraph) -> Vec<f64> {
        graph.vertices().iter().map(|v| self.evaluate(v)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SumMode {
    /// Exact sum over walks of length at most `max_walk_len`.
    Truncated { max_walk_len: usize },
    /// Add walk-length shells until the largest increment drops below `tolerance`.
    Converge {
        tolerance: f64,
        max_iterations: usize,
    },
}

impl Default for SumMode {
    fn default() -> Self {
        SumMode::Converge {
            tolerance: 1e-12,
            max_iterations: 10_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WalkSums {
    /// `S(v)`; may underflow to zero when `β·d(v)` is large.
    pub values: Vec<f64>,
    /// `ln S(v)`, `−∞` for unreachable vertices.
    pub log_values: Vec<f64>,
    /// Walk length summed up to (truncated) or iterations performed (converge).
    pub steps: usize,
    pub diverged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartitionResult {
    pub z: f64,
    pub log_z: f64,
    pub per_vertex_walk_sum: Vec<f64>,
    pub steps: usize,
    pub diverged: bool,
}

/// Sum of the weights along a walk given by edge indices, starting at the root.
pub fn path_action<G: WeightedDigraph>(graph: &G, path: &[usize]) -> Result<f64, StatError> {
    let arcs = graph.arcs();
    let mut at = 0;
    let mut total = 0.0;
    for (step, &e) in path.iter().enumerate() {
        let &(source, target, weight) = arcs.get(e).ok_or(StatError::EdgeOutOfRange(e))?;
        if source != at {
            return Err(StatError::NonContiguous {
                step,
                expected: at,
                found: source,
            });
        }
        total += weight;
        at = target;
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct HeapEntry {
    dist: f64,
    vertex: usize,
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dijkstra from vertex 0 over `(source, target, weight)` arcs; unreachable → `∞`.
fn shortest_distances(n: usize, arcs: &[(usize, usize, f64)]) -> Result<Vec<f64>, StatError> {
    let mut adj = vec![Vec::new(); n];
    for &(s, t, w) in arcs {
        if w < 0.0 || w.is_nan() {
            return Err(StatError::NegativeWeight(w));
        }
        adj[s].push((t, w));
    }
    let mut dist = vec![f64::INFINITY; n];
    if n == 0 {
        return Ok(dist);
    }
    dist[0] = 0.0;
    let mut heap = BinaryHeap::from([HeapEntry {
        dist: 0.0,
        vertex: 0,
    }]);
    while let Some(HeapEntry { dist: d, vertex: u }) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, w) in &adj[u] {
            let nd = d + w;
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(HeapEntry {
                    dist: nd,
                    vertex: v,
                });
            }
        }
    }
    Ok(dist)
}

/// Per-vertex sums of `exp(−β·action)` over all walks from the root.
pub fn walk_sums<G: WeightedDigraph>(
    graph: &G,
    beta: Beta,
    mode: SumMode,
) -> Result<WalkSums, StatError> {
    let n = graph.vertex_count();
    let arcs = graph.arcs();
    let dist = shortest_distances(n, &arcs)?;
    let b = beta.value();
    let scaled_arcs: Vec<(usize, usize, f64)> = arcs
        .iter()
        .filter(|&&(s, _, _)| dist[s].is_finite())
        .map(|&(s, t, w)| (s, t, (-b * (w + dist[s] - dist[t])).exp()))
        .collect();

    let step = |x: &[f64]| {
        let mut next = vec![0.0; n];
        for &(s, t, f) in &scaled_arcs {
            next[t] += x[s] * f;
        }
        next
    };

    let mut shell = vec![0.0; n];
    if n > 0 {
        shell[0] = 1.0;
    }
    let mut acc = shell.clone();
    let mut steps = 0;
    let mut diverged = false;

    match mode {
        SumMode::Truncated { max_walk_len } => {
            for _ in 0..max_walk_len {
                if shell.iter().all(|&x| x == 0.0) {
                    break;
                }
                shell = step(&shell);
                for (a, x) in acc.iter_mut().zip(&shell) {
                    *a += x;
                }
            }
            steps = max_walk_len;
        }
        SumMode::Converge {
            tolerance,
            max_iterations,
        } => {
            if tolerance.is_nan() || tolerance <= 0.0 {
                return Err(StatError::BadTolerance(tolerance));
            }
            let mut prev_norm = f64::INFINITY;
            let mut rising = 0;
            let mut converged = false;
            while steps < max_iterations {
                shell = step(&shell);
                steps += 1;
                for (a, x) in acc.iter_mut().zip(&shell) {
                    *a += x;
                }
                let norm = shell.iter().fold(0.0f64, |m, x| m.max(x.abs()));
                if norm < tolerance {
                    converged = true;
                    break;
                }
                rising = if norm >= prev_norm { rising + 1 } else { 0 };
                prev_norm = norm;
                if rising >= DIVERGENCE_PATIENCE {
                    break;
                }
            }
            diverged = !converged;
        }
    }

    let log_values: Vec<f64> = acc
        .iter()
        .zip(&dist)
        .map(|(&a, &d)| {
            if a > 0.0 && d.is_finite() {
                a.ln() - b * d
            } else {
                f64::NEG_INFINITY
            }
        })
        .collect();
    let values = log_values.iter().map(|l| l.exp()).collect();
    Ok(WalkSums {
        values,
        log_values,
        steps,
        diverged,
    })
}

fn log_sum_exp(terms: impl IntoIterator<Item = f64>) -> f64 {
    let terms: Vec<f64> = terms
        .into_iter()
        .filter(|t| *t > f64::NEG_INFINITY)
        .collect();
    let Some(max) = terms.iter().copied().reduce(f64::max) else {
        return f64::NEG_INFINITY;
    };
    if max.is_infinite() {
        return max;
    }
    max + terms.iter().map(|t| (t - max).exp()).sum::<f64>().ln()
}

/// Partition sum with explicit per-vertex energies `F(v)`.
pub fn partition_from_energies<G: WeightedDigraph>(
    graph: &G,
    energies: &[f64],
    beta: Beta,
    mode: SumMode,
) -> Result<PartitionResult, StatError> {
    if energies.len() != graph.vertex_count() {
        return Err(StatError::EnergyLength {
            expected: graph.vertex_count(),
            got: energies.len(),
        });
    }
    let sums = walk_sums(graph, beta, mode)?;
    let b = beta.value();
    let log_terms: Vec<f64> = energies
        .iter()
        .zip(&sums.log_values)
        .map(|(&f, &l)| if l == f64::NEG_INFINITY { l } else { l - b * f })
        .collect();
    let z = log_terms.iter().map(|t| t.exp()).sum();
    let log_z = log_sum_exp(log_terms);
    Ok(PartitionResult {
        z,
        log_z,
        per_vertex_walk_sum: sums.values,
        steps: sums.steps,
        diverged: sums.diverged,
    })
}

/// `Z = Σ_v exp(−β·F(v)) · S(v)` over the reduction graph.
pub fn partition_function(
    graph: &ReductionGraph,
    fitness: &FitnessSpec,
    beta: Beta,
    mode: SumMode,
) -> Result<PartitionResult, StatError> {
    partition_from_energies(graph, &fitness.energies(graph), beta, mode)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTemperature {
    /// Cheapest walk action from the root; `∞` if unreachable.
    pub distances: Vec<f64>,
    pub best_vertex: usize,
    /// `min_v F(v) + d(v)`.
    pub best_value: f64,
}

pub fn min_cost_from_energies<G: WeightedDigraph>(
    graph: &G,
    energies: &[f64],
) -> Result<ZeroTemperature, StatError> {
    if energies.len() != graph.vertex_count() {
        return Err(StatError::EnergyLength {
            expected: graph.vertex_count(),
            got: energies.len(),
        });
    }
    let distances = shortest_distances(graph.vertex_count(), &graph.arcs())?;
    let mut best_vertex = 0;
    let mut best_value = f64::INFINITY;
    for (v, (&d, &f)) in distances.iter().zip(energies).enumerate() {
        if d.is_finite() && f + d < best_value {
            best_vertex = v;
            best_value = f + d;
        }
    }
    Ok(ZeroTemperature {
        distances,
        best_vertex,
        best_value,
    })
}

/// β → ∞ limit: the vertex minimizing fitness plus cheapest reduction cost.
pub fn min_total_cost(
    graph: &ReductionGraph,
    fitness: &FitnessSpec,
) -> Result<ZeroTemperature, StatError> {
    min_cost_from_energies(graph, &fitness.energies(graph))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub beta: f64,
    pub z: f64,
    pub log_z: f64,
    /// `−ln(Z)/β`.
    pub free_energy: f64,
    pub diverged: bool,
}

pub fn beta_sweep(
    graph: &ReductionGraph,
    fitness: &FitnessSpec,
    betas: &[Beta],
    mode: SumMode,
) -> Result<Vec<SweepRow>, StatError> {
    let energies = fitness.energies(graph);
    betas
        .iter()
        .map(|&beta| {
            let r = partition_from_energies(graph, &energies, beta, mode)?;
            Ok(SweepRow {
                beta: beta.value(),
                z: r.z,
                log_z: r.log_z,
                free_energy: -r.log_z / beta.value(),
                diverged: r.diverged,
            })
        })
        .collect()
}
