//! Partition sums over reduction walks, including a cyclic graph.
//!
//! $ cargo run --example partition_sum

use genolab::statmech::{partition_function, walk_sums};
use genolab::{
    build_graph, Beta, ExplorationBounds, FitnessSpec, Genome, MultiSetObject, Rule, SumMode,
};

fn main() {
    // a <-> b with both weights ln 2: walk sums are 4/3 and 2/3.
    let k = 2f64.ln();
    let genome = Genome::new(vec![
        Rule::sub("ab", "a", "b", k).unwrap(),
        Rule::sub("ba", "b", "a", k).unwrap(),
    ])
    .unwrap();
    let graph = build_graph(
        &genome,
        &MultiSetObject::from_pairs([("a", 1)]),
        &ExplorationBounds::default(),
    )
    .unwrap();
    let beta = Beta::new(1.0).unwrap();

    for mode in [
        SumMode::Truncated { max_walk_len: 4 },
        SumMode::Truncated { max_walk_len: 40 },
        SumMode::default(),
    ] {
        let s = walk_sums(&graph, beta, mode).unwrap();
        println!("{mode:?}: S = {:?} (diverged: {})", s.values, s.diverged);
    }

    let fitness = FitnessSpec::Count {
        target: genolab::Word::new("b").unwrap(),
        c: 1.0,
    };
    let z = partition_function(&graph, &fitness, beta, SumMode::default()).unwrap();
    println!("Z with F = -count(b): {} (ln Z = {})", z.z, z.log_z);
}
