//! As beta grows, -ln(Z)/beta approaches the cheapest fitness-plus-path cost.
//!
//! $ cargo run --example zero_temperature

use genolab::statmech::{min_total_cost, partition_function};
use genolab::{
    build_graph, Beta, ExplorationBounds, FitnessSpec, Genome, MultiSetObject, Rule, SumMode,
};

fn main() {
    let genome = Genome::new(vec![
        Rule::sub("1", "a", "b", 0.4).unwrap(),
        Rule::sub("2", "b", "c", 1.1).unwrap(),
        Rule::sub("3", "a", "c", 2.0).unwrap(),
        Rule::sub("4", "c", "d", 0.3).unwrap(),
    ])
    .unwrap();
    let graph = build_graph(
        &genome,
        &MultiSetObject::from_pairs([("a", 1)]),
        &ExplorationBounds::default(),
    )
    .unwrap();
    let fitness = FitnessSpec::Dist {
        target: MultiSetObject::from_pairs([("d", 1)]),
        c: 1.0,
    };

    let zt = min_total_cost(&graph, &fitness).unwrap();
    println!(
        "best: {} at cost {} (path cost {})",
        graph.vertex(zt.best_vertex),
        zt.best_value,
        zt.distances[zt.best_vertex]
    );
    for b in [1.0, 10.0, 100.0, 1000.0] {
        let z = partition_function(&graph, &fitness, Beta::new(b).unwrap(), SumMode::default())
            .unwrap();
        println!("beta = {b:>6}: -ln(Z)/beta = {}", -z.log_z / b);
    }
}
