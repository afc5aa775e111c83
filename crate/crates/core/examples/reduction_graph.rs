//! Build the reduction graph of a small genome and print it as Graphviz DOT.
//!
//! $ cargo run --example reduction_graph | dot -Tsvg > graph.svg

use genolab::{build_graph, export_dot, ExplorationBounds, Genome, MultiSetObject, Rule};

fn main() {
    let genome = Genome::new(vec![
        Rule::sub("ab", "a", "b", 1.0).unwrap(),
        Rule::sub("cd", "c", "d", 1.0).unwrap(),
        Rule::glue("join", "b", "d", 2.0).unwrap(),
        Rule::cleave("split", "b", "d", 0.5).unwrap(),
    ])
    .unwrap();
    let v0 = MultiSetObject::from_pairs([("a", 1), ("c", 1)]);
    let graph = build_graph(&genome, &v0, &ExplorationBounds::default()).unwrap();
    eprintln!(
        "{} vertices, {} edges, truncated: {}",
        graph.vertex_count(),
        graph.edge_count(),
        graph.truncated()
    );
    print!("{}", export_dot(&graph));
}
