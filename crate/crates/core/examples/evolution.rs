//! Genomes encoded as objects, mutated by an evolution genome.
//!
//! $ cargo run --example evolution

use genolab::evolution::{
    encode_genome, evolution_partition_function, EvolutionConfig, InnerConfig,
};
use genolab::{Beta, ExplorationBounds, FitnessSpec, Genome, MultiSetObject, Rule, SumMode};

fn main() {
    let g0 = Genome::new(vec![
        Rule::sub("g", "a", "b", 1.5).unwrap(),
        Rule::sub("h", "b", "c", 2.0).unwrap(),
    ])
    .unwrap();
    println!("ancestor encodes as {}", encode_genome(&g0).unwrap());

    let config = EvolutionConfig {
        evolution_genome: Genome::new(vec![
            // cheaper first gene
            Rule::sub("m1", "1.5", "0.5", 1.0).unwrap(),
            // retarget the second gene
            Rule::sub("m2", "|c|", "|d|", 2.0).unwrap(),
            // breaks the kind letter, giving an invalid genome
            Rule::sub("m3", "S|b", "Q|b", 3.0).unwrap(),
        ])
        .unwrap(),
        beta_prime: Beta::new(1.0).unwrap(),
        inner: InnerConfig {
            v0: MultiSetObject::from_pairs([("a", 1)]),
            fitness: FitnessSpec::Const(0.0),
            beta: Beta::new(1.0).unwrap(),
            bounds: ExplorationBounds::default(),
            mode: SumMode::default(),
        },
        outer_bounds: ExplorationBounds::with_depth(3),
        outer_mode: SumMode::default(),
    };
    let r = evolution_partition_function(&g0, &config).unwrap();
    for t in &r.per_genome {
        println!(
            "{:<40} inner Z = {:<20} walk sum = {}",
            r.outer_graph.vertex(t.vertex).to_string(),
            t.inner_z,
            t.outer_walk_sum
        );
    }
    println!("Z = {}", r.z_outer);
}
