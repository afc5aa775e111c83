//! Test-only oracles. Nothing here calls into the summation or shortest-path code.
#![allow(dead_code)]

use genolab::WeightedDigraph;

/// Every walk from vertex 0 with at most `max_len` edges, as `(end vertex, action)`.
/// The empty walk is included.
pub fn enumerate_walks<G: WeightedDigraph>(graph: &G, max_len: usize) -> Vec<(usize, f64)> {
    let arcs = graph.arcs();
    let mut out = Vec::new();
    let mut stack = vec![(0usize, 0.0f64, 0usize)];
    while let Some((at, action, len)) = stack.pop() {
        out.push((at, action));
        if len == max_len {
            continue;
        }
        for &(s, t, w) in &arcs {
            if s == at {
                stack.push((t, action + w, len + 1));
            }
        }
    }
    out
}

/// Per-vertex Σ exp(−β·action) over the enumerated walks.
pub fn brute_walk_sums<G: WeightedDigraph>(graph: &G, beta: f64, max_len: usize) -> Vec<f64> {
    let mut sums = vec![0.0; graph.vertex_count()];
    for (v, action) in enumerate_walks(graph, max_len) {
        sums[v] += (-beta * action).exp();
    }
    sums
}

/// Per-vertex minimum action over walks with fewer edges than vertices.
pub fn brute_min_action<G: WeightedDigraph>(graph: &G) -> Vec<f64> {
    let n = graph.vertex_count();
    let mut best = vec![f64::INFINITY; n];
    for (v, action) in enumerate_walks(graph, n.saturating_sub(1)) {
        best[v] = best[v].min(action);
    }
    best
}

/// Longest walk length in a DAG, found by enumeration.
pub fn longest_walk(graph: &impl WeightedDigraph) -> usize {
    let n = graph.vertex_count();
    let arcs = graph.arcs();
    let mut longest = 0;
    let mut stack = vec![(0usize, 0usize)];
    while let Some((at, len)) = stack.pop() {
        longest = longest.max(len);
        assert!(len <= n, "graph is not acyclic");
        for &(s, t, _) in &arcs {
            if s == at {
                stack.push((t, len + 1));
            }
        }
    }
    longest
}
