//! Global alignment two ways: dynamic programming, and the cheapest rewrite
//! path under edit rules.
//!
//! $ cargo run --example alignment_bridge -- GATT GCAT

use genolab::alignment::{align_dp, edit_genome, ScoreScheme};
use genolab::statmech::min_total_cost;
use genolab::{build_graph, ExplorationBounds, FitnessSpec, MultiSetObject};

fn main() {
    let mut args = std::env::args().skip(1);
    let v = args.next().unwrap_or_else(|| "GATT".into());
    let w = args.next().unwrap_or_else(|| "GCAT".into());
    let scheme = ScoreScheme::new(1.0, 1.0).unwrap();

    let (alignment, score) = align_dp(&v, &w, &scheme).unwrap();
    println!("{alignment}\nscore: {score}");

    let alphabet: String = v.chars().chain(w.chars()).collect();
    let genome = edit_genome(&alphabet, &scheme).unwrap();
    let n = v.len() + w.len();
    let bounds = ExplorationBounds {
        max_depth: 1_000,
        max_vertices: 200_000,
        max_word_len: n,
        max_total_symbols: n as u64,
    };
    let graph = build_graph(
        &genome,
        &MultiSetObject::from_pairs([(v.as_str(), 1)]),
        &bounds,
    )
    .unwrap();
    let zt = min_total_cost(&graph, &FitnessSpec::Const(0.0)).unwrap();
    match graph.find(&MultiSetObject::from_pairs([(w.as_str(), 1)])) {
        Some(i) => println!(
            "rewrite cost: {} ({} objects explored)",
            zt.distances[i],
            graph.vertex_count()
        ),
        None => println!("target not reached within bounds"),
    }
}
