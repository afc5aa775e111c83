//! Free energy across inverse temperatures, printed as CSV.
//!
//! $ cargo run --example beta_sweep

use genolab::cli::render_sweep_csv;
use genolab::statmech::beta_sweep;
use genolab::{
    build_graph, Beta, ExplorationBounds, FitnessSpec, Genome, MultiSetObject, Rule, SumMode,
};

fn main() {
    let genome = Genome::new(vec![Rule::sub("s", "a", "b", 1.0).unwrap()]).unwrap();
    let graph = build_graph(
        &genome,
        &MultiSetObject::from_pairs([("a", 1)]),
        &ExplorationBounds::default(),
    )
    .unwrap();
    // F(a) = 10, F(b) = 0: at low temperature the free energy settles at 1.
    let fitness = FitnessSpec::Dist {
        target: MultiSetObject::from_pairs([("b", 1)]),
        c: 5.0,
    };
    let betas: Vec<Beta> = [0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0]
        .into_iter()
        .map(|b| Beta::new(b).unwrap())
        .collect();
    let rows = beta_sweep(&graph, &fitness, &betas, SumMode::default()).unwrap();
    print!("{}", render_sweep_csv(&rows));
}
