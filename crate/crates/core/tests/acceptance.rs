//! Acceptance checks, one line per criterion. Run with `cargo test --test acceptance`.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use genolab::alignment::{align_dp, brute_force_min_score, edit_genome, ScoreScheme};
use genolab::evolution::{evolution_partition_function, EvolutionConfig, InnerConfig};
use genolab::statmech::{min_total_cost, partition_function, walk_sums};
use genolab::{
    build_graph, Beta, ExplorationBounds, FitnessSpec, Genome, MultiSetObject, ReductionGraph,
    Rule, SumMode,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($fmt)+));
        }
    };
}

fn beta(b: f64) -> Beta {
    Beta::new(b).unwrap()
}

fn obj(word: &str) -> MultiSetObject {
    MultiSetObject::from_pairs([(word, 1)])
}

fn converge() -> SumMode {
    SumMode::Converge {
        tolerance: 1e-12,
        max_iterations: 10_000,
    }
}

fn words(alphabet: &[u8], max_len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| alphabet.iter().map(move |&c| format!("{w}{}", c as char)))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn ac1() -> Check {
    let all = words(b"AC", 4);
    let mut pairs = 0;
    for (mu, sigma) in [(1.0, 1.0), (3.0, 2.0)] {
        let s = ScoreScheme::new(mu, sigma).unwrap();
        for v in &all {
            for w in &all {
                let dp = align_dp(v, w, &s).unwrap().1;
                let brute = brute_force_min_score(v, w, &s).unwrap();
                ensure!(
                    dp == brute,
                    "{v}/{w} at mu={mu} sigma={sigma}: dp {dp} brute {brute}"
                );
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs equal"))
}

fn ac2() -> Check {
    let s = ScoreScheme::new(1.0, 1.0).unwrap();
    let genome = edit_genome("ACG", &s).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut word = |lo: usize| -> String {
        let len = rng.gen_range(lo..=4);
        (0..len)
            .map(|_| b"ACG"[rng.gen_range(0..3)] as char)
            .collect()
    };
    let mut largest = 0;
    for _ in 0..50 {
        // The empty object has no sites, so V is nonempty.
        let v = word(1);
        let w = word(0);
        let n = v.len() + w.len();
        let bounds = ExplorationBounds {
            max_depth: 1_000,
            max_vertices: 200_000,
            max_word_len: n,
            max_total_symbols: n as u64,
        };
        let graph = build_graph(&genome, &obj(&v), &bounds).unwrap();
        largest = largest.max(graph.vertex_count());
        let zt = min_total_cost(&graph, &FitnessSpec::Const(0.0)).unwrap();
        let Some(target) = graph.find(&obj(&w)) else {
            return Err(format!("{v} -> {w}: target not reached"));
        };
        let dp = align_dp(&v, &w, &s).unwrap().1;
        ensure!(
            zt.distances[target] == dp,
            "{v} -> {w}: distance {} dp {dp}",
            zt.distances[target]
        );
    }
    Ok(format!("50 pairs equal, largest graph {largest} vertices"))
}

fn ac3() -> Check {
    let k = 2f64.ln();
    let g = Genome::new(vec![
        Rule::sub("ab", "a", "b", k).unwrap(),
        Rule::sub("ba", "b", "a", k).unwrap(),
    ])
    .unwrap();
    let graph = build_graph(&g, &obj("a"), &ExplorationBounds::default()).unwrap();
    ensure!(
        graph.vertex_count() == 2 && graph.edge_count() == 2,
        "not a 2-cycle"
    );
    for mode in [converge(), SumMode::Truncated { max_walk_len: 40 }] {
        let s = walk_sums(&graph, beta(1.0), mode).unwrap();
        ensure!(
            (s.values[0] - 4.0 / 3.0).abs() < 1e-9 && (s.values[1] - 2.0 / 3.0).abs() < 1e-9,
            "{mode:?}: {:?}",
            s.values
        );
    }
    Ok("converge and truncated(40) match 4/3, 2/3".into())
}

fn ac4() -> Check {
    let g = Genome::new(vec![Rule::sub("s", "a", "b", 1.0).unwrap()]).unwrap();
    let graph = build_graph(&g, &obj("a"), &ExplorationBounds::default()).unwrap();
    let z = partition_function(&graph, &FitnessSpec::Const(0.0), beta(1.0), converge())
        .unwrap()
        .z;
    let expected = 1.0 + (-1f64).exp();
    ensure!((z - expected).abs() < 1e-12, "Z = {z}, expected {expected}");
    Ok(format!("Z = {z}"))
}

fn ac5() -> Check {
    let sub = |n: &str, a: &str, b: &str, k: f64| Rule::sub(n, a, b, k).unwrap();
    let cases: Vec<(&str, Vec<Rule>, MultiSetObject, FitnessSpec)> = vec![
        (
            "chain5",
            vec![
                sub("1", "a", "b", 0.4),
                sub("2", "b", "c", 1.1),
                sub("3", "c", "d", 0.3),
                sub("4", "d", "e", 2.0),
            ],
            obj("a"),
            FitnessSpec::Dist {
                target: obj("d"),
                c: 1.0,
            },
        ),
        (
            "diamond",
            vec![sub("1", "a", "b", 1.0), sub("2", "c", "d", 0.5)],
            MultiSetObject::from_pairs([("a", 1), ("c", 1)]),
            FitnessSpec::Count {
                target: genolab::Word::new("d").unwrap(),
                c: 0.7,
            },
        ),
        (
            "grid6",
            vec![
                sub("1", "a", "b", 0.2),
                sub("2", "b", "e", 0.9),
                sub("3", "c", "d", 0.6),
            ],
            MultiSetObject::from_pairs([("a", 1), ("c", 1)]),
            FitnessSpec::Dist {
                target: MultiSetObject::from_pairs([("e", 1), ("c", 1)]),
                c: 0.5,
            },
        ),
    ];
    let b = 100.0;
    let mut report = Vec::new();
    for (name, rules, v0, fitness) in cases {
        let graph = build_graph(
            &Genome::new(rules).unwrap(),
            &v0,
            &ExplorationBounds::default(),
        )
        .unwrap();
        ensure!(
            graph.vertex_count() <= 6 && !graph.truncated(),
            "{name}: bad graph"
        );
        let m = common::enumerate_walks(&graph, common::longest_walk(&graph)).len() as f64;
        let z = partition_function(&graph, &fitness, beta(b), converge()).unwrap();
        let best = min_total_cost(&graph, &fitness).unwrap().best_value;
        let gap = (-z.log_z / b - best).abs();
        ensure!(gap <= m.ln() / b, "{name}: gap {gap} exceeds ln({m})/{b}");
        report.push(format!("{name} M={m}"));
    }
    Ok(report.join(", "))
}

fn edge_multiset(g: &ReductionGraph) -> (Vec<String>, Vec<(String, String, String)>) {
    let mut v: Vec<String> = g.vertices().iter().map(|o| o.to_string()).collect();
    v.sort();
    let mut e: Vec<_> = g
        .edges()
        .iter()
        .map(|e| {
            (
                g.vertex(e.source).to_string(),
                g.vertex(e.target).to_string(),
                e.rule.clone(),
            )
        })
        .collect();
    e.sort();
    (v, e)
}

fn ac6() -> Check {
    let r1 = Rule::sub("ab", "a", "b", 1.0).unwrap();
    let r2 = Rule::sub("cd", "c", "d", 1.0).unwrap();
    let v0 = MultiSetObject::from_pairs([("a", 1), ("c", 1)]);
    let bounds = ExplorationBounds::default();
    let g12 = build_graph(
        &Genome::new(vec![r1.clone(), r2.clone()]).unwrap(),
        &v0,
        &bounds,
    )
    .unwrap();
    let g21 = build_graph(&Genome::new(vec![r2, r1]).unwrap(), &v0, &bounds).unwrap();
    ensure!(
        g12.vertex_count() == 4 && g12.edge_count() == 4,
        "{} vertices, {} edges",
        g12.vertex_count(),
        g12.edge_count()
    );
    ensure!(
        edge_multiset(&g12) == edge_multiset(&g21),
        "permutation changed the graph"
    );
    Ok("4 vertices, 4 edges, permutation invariant".into())
}

fn ac7() -> Check {
    let g0 = Genome::new(vec![Rule::sub("g", "a", "b", 1.5).unwrap()]).unwrap();
    let inner = InnerConfig {
        v0: obj("a"),
        fitness: FitnessSpec::Const(0.0),
        beta: beta(1.0),
        bounds: ExplorationBounds::default(),
        mode: converge(),
    };
    let direct = |g: &Genome| {
        let graph = build_graph(g, &inner.v0, &inner.bounds).unwrap();
        partition_function(&graph, &inner.fitness, inner.beta, inner.mode)
            .unwrap()
            .z
    };
    let config = |depth| EvolutionConfig {
        evolution_genome: Genome::new(vec![Rule::sub("m", "1.5", "0.5", 1.0).unwrap()]).unwrap(),
        beta_prime: beta(1.0),
        inner: inner.clone(),
        outer_bounds: ExplorationBounds::with_depth(depth),
        outer_mode: converge(),
    };
    let z0 = evolution_partition_function(&g0, &config(0))
        .unwrap()
        .z_outer;
    ensure!(z0 == direct(&g0), "depth 0: {z0} vs {}", direct(&g0));
    let z1 = evolution_partition_function(&g0, &config(1))
        .unwrap()
        .z_outer;
    let g1 = Genome::new(vec![Rule::sub("g", "a", "b", 0.5).unwrap()]).unwrap();
    let composed = direct(&g0) + (-1f64).exp() * direct(&g1);
    ensure!((z1 - composed).abs() < 1e-10, "depth 1: {z1} vs {composed}");
    Ok(format!("depth 0 exact, depth 1 Z = {z1}"))
}

fn ac8() -> Check {
    let g = Genome::new(vec![Rule::dup("grow", "[", "]", 1.0).unwrap()]).unwrap();
    let bounds = ExplorationBounds {
        max_depth: 6,
        max_word_len: 32,
        ..Default::default()
    };
    let graph = build_graph(&g, &obj("[ab]"), &bounds).unwrap();
    ensure!(graph.truncated(), "truncated flag not set");
    let longest = graph
        .vertices()
        .iter()
        .map(|v| v.max_word_len())
        .max()
        .unwrap();
    ensure!(longest <= 32, "word of length {longest}");
    Ok(format!(
        "{} vertices, longest word {longest}",
        graph.vertex_count()
    ))
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn ac9() -> Check {
    let dir = tempfile::tempdir().unwrap();
    let dot = |i: usize| {
        dir.path()
            .join(format!("run{i}.dot"))
            .to_string_lossy()
            .into_owned()
    };
    let diamond = |cmd: &str| {
        vec![
            cmd.to_string(),
            "--genome".into(),
            data("diamond.genome"),
            "--object".into(),
            data("diamond.object"),
        ]
    };
    let with = |mut base: Vec<String>, extra: &[&str]| {
        base.extend(extra.iter().map(|s| s.to_string()));
        base
    };
    let dist = format!("dist:{}:1", data("target.object"));
    let commands: Vec<Vec<String>> = vec![
        diamond("graph"),
        with(diamond("graph"), &["--format", "json"]),
        with(diamond("z"), &["--fitness", &dist]),
        with(diamond("z"), &["--format", "json", "--mode", "trunc:5"]),
        with(diamond("sweep"), &["--betas", "0.1,1,10,100"]),
        with(
            diamond("mincost"),
            &["--fitness", "count:d:2", "--format", "json"],
        ),
        vec![
            "align".into(),
            "--v".into(),
            "GATTAC".into(),
            "--w".into(),
            "GCATG".into(),
            "--brute-check".into(),
        ],
        vec![
            "evolve".into(),
            "--genome".into(),
            data("ancestor.genome"),
            "--object".into(),
            data("a.object"),
            "--egenome".into(),
            data("mutate.egenome"),
            "--format".into(),
            "json".into(),
        ],
    ];
    let mut count = 0;
    for args in &commands {
        let runs: Vec<_> = (0..2)
            .map(|_| {
                Command::new(env!("CARGO_BIN_EXE_genolab"))
                    .args(args)
                    .output()
                    .unwrap()
            })
            .collect();
        ensure!(
            runs[0].status.success(),
            "{args:?} failed: {}",
            String::from_utf8_lossy(&runs[0].stderr)
        );
        ensure!(
            runs[0].stdout == runs[1].stdout
                && runs[0].stderr == runs[1].stderr
                && runs[0].status == runs[1].status,
            "{args:?} output differs between runs"
        );
        count += 1;
    }
    let files: Vec<Vec<u8>> = (0..2)
        .map(|i| {
            let out = Command::new(env!("CARGO_BIN_EXE_genolab"))
                .args(with(diamond("graph"), &["--dot", &dot(i)]))
                .output()
                .unwrap();
            assert!(out.status.success());
            std::fs::read(dot(i)).unwrap()
        })
        .collect();
    ensure!(files[0] == files[1], "DOT files differ");
    Ok(format!("{} invocations byte-identical", count + 1))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("AC1", "alignment oracle equivalence", ac1),
        ("AC2", "rewriting-alignment bridge", ac2),
        ("AC3", "walk-sum closed form", ac3),
        ("AC4", "partition sanity", ac4),
        ("AC5", "zero-temperature consistency", ac5),
        ("AC6", "commutation and dedup", ac6),
        ("AC7", "evolution identities", ac7),
        ("AC8", "termination under growth", ac8),
        ("AC9", "CLI determinism", ac9),
    ];
    let budget = [60, 300, 60, 60, 60, 60, 60, 60, 60];
    let mut failed = 0;
    for ((id, name, check), limit) in criteria.into_iter().zip(budget) {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(_) if elapsed > Duration::from_secs(limit) => {
                Err(format!("took {elapsed:.1?}, limit {limit}s"))
            }
            r => r,
        };
        match result {
            Ok(detail) => println!("[PASS] {id} {name}: {detail} ({elapsed:.2?})"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {id} {name}: {why} ({elapsed:.2?})");
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
