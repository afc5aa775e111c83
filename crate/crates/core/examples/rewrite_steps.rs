//! Apply each rule schema once and list every distinct result.
//!
//! $ cargo run --example rewrite_steps

use genolab::{enumerate_applications, MultiSetObject, Rule};

fn main() {
    let start = MultiSetObject::from_pairs([("zaby", 1), ("w", 1), ("ab", 2)]);
    let rules = [
        Rule::glue("glue", "ab", "w", 1.0).unwrap(),
        Rule::cleave("cleave", "a", "b", 1.0).unwrap(),
        Rule::sub("sub", "ab", "ba", 1.0).unwrap(),
        Rule::del("del", "z", "y", 1.0).unwrap(),
        Rule::ins("ins", "a", "x", "b", 1.0).unwrap(),
        Rule::splice("splice", "a", "b", 1.0).unwrap(),
        Rule::dup("dup", "z", "y", 1.0).unwrap(),
    ];
    println!("start: {start}");
    for rule in &rules {
        println!("{} {:?}", rule.name(), rule.schema());
        for (site, result) in enumerate_applications(rule, &start) {
            println!("  {site:?}\n    -> {result}");
        }
    }
}
