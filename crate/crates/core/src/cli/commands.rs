use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use super::formats::{parse_genome_file, parse_object_file, ParseError};
use super::render::{
    render_alignment, render_evolution, render_graph, render_min_cost, render_partition,
    render_sweep_csv, Format,
};
use crate::alignment::{align_dp, brute_force_min_score, AlignError, ScoreScheme};
use crate::evolution::{
    evolution_partition_function, EvolutionConfig, EvolutionError, InnerConfig,
};
use crate::graph::{build_graph, export_dot, ExplorationBounds, GraphError, ReductionGraph};
use crate::object::{MultiSetObject, Word};
use crate::rule::Genome;
use crate::statmech::{
    beta_sweep, min_total_cost, partition_function, Beta, FitnessSpec, StatError, SumMode,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_STRICT: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Stat(#[from] StatError),
    #[error(transparent)]
    Align(#[from] AlignError),
    #[error(transparent)]
    Evolution(#[from] EvolutionError),
    #[error("brute-force check failed: dp score {dp}, exhaustive minimum {brute}")]
    BruteMismatch { dp: f64, brute: f64 },
}

#[derive(Debug, Parser)]
#[command(
    name = "genolab",
    version,
    about = "Rewriting genomes, reduction graphs and Gibbs sums over reduction walks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the reduction graph and optionally write it as DOT.
    Graph(GraphCmd),
    /// Partition sum over vertices and reduction walks.
    Z(ZCmd),
    /// Partition sum and free energy over a grid of inverse temperatures (CSV).
    Sweep(SweepCmd),
    /// Zero-temperature limit: cheapest fitness plus reduction cost.
    Mincost(MincostCmd),
    /// Optimal global alignment of two sequences.
    Align(AlignCmd),
    /// Partition sum over genomes reachable under an evolution genome.
    Evolve(EvolveCmd),
}

#[derive(Debug, Args)]
pub struct Inputs {
    #[arg(long)]
    pub genome: PathBuf,
    #[arg(long)]
    pub object: PathBuf,
}

#[derive(Debug, Args)]
pub struct Bounds {
    #[arg(long, default_value_t = 16)]
    pub max_depth: usize,
    #[arg(long, default_value_t = 10_000)]
    pub max_vertices: usize,
    #[arg(long, default_value_t = 64)]
    pub max_word_len: usize,
    #[arg(long, default_value_t = 256)]
    pub max_symbols: u64,
}

impl From<&Bounds> for ExplorationBounds {
    fn from(b: &Bounds) -> Self {
        ExplorationBounds {
            max_depth: b.max_depth,
            max_vertices: b.max_vertices,
            max_word_len: b.max_word_len,
            max_total_symbols: b.max_symbols,
        }
    }
}

#[derive(Debug, Args)]
pub struct InnerBounds {
    #[arg(long, default_value_t = 16)]
    pub inner_max_depth: usize,
    #[arg(long, default_value_t = 10_000)]
    pub inner_max_vertices: usize,
    #[arg(long, default_value_t = 64)]
    pub inner_max_word_len: usize,
    #[arg(long, default_value_t = 256)]
    pub inner_max_symbols: u64,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Exit with status 2 when the result is truncated or divergent.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct Physics {
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    /// `trunc:L` or `iter:TOL,MAXIT`.
    #[arg(long, default_value = "iter:1e-12,10000", value_parser = parse_mode)]
    pub mode: SumMode,
    /// `const:A`, `count:WORD:C` or `dist:PATH:C`.
    #[arg(long, default_value = "const:0", value_parser = parse_fitness)]
    pub fitness: FitnessArg,
}

#[derive(Debug, Args)]
pub struct GraphCmd {
    #[command(flatten)]
    pub inputs: Inputs,
    #[command(flatten)]
    pub bounds: Bounds,
    #[command(flatten)]
    pub output: Output,
    /// Write the graph in Graphviz DOT format to this path.
    #[arg(long)]
    pub dot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ZCmd {
    #[command(flatten)]
    pub inputs: Inputs,
    #[command(flatten)]
    pub bounds: Bounds,
    #[command(flatten)]
    pub physics: Physics,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SweepCmd {
    #[command(flatten)]
    pub inputs: Inputs,
    #[command(flatten)]
    pub bounds: Bounds,
    /// Comma-separated inverse temperatures.
    #[arg(long, value_delimiter = ',', required = true)]
    pub betas: Vec<f64>,
    #[arg(long, default_value = "iter:1e-12,10000", value_parser = parse_mode)]
    pub mode: SumMode,
    #[arg(long, default_value = "const:0", value_parser = parse_fitness)]
    pub fitness: FitnessArg,
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct MincostCmd {
    #[command(flatten)]
    pub inputs: Inputs,
    #[command(flatten)]
    pub bounds: Bounds,
    #[arg(long, default_value = "const:0", value_parser = parse_fitness)]
    pub fitness: FitnessArg,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct AlignCmd {
    #[arg(long)]
    pub v: String,
    #[arg(long)]
    pub w: String,
    #[arg(long, default_value_t = 1.0)]
    pub mu: f64,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    /// Also compute the exhaustive minimum and fail if it disagrees.
    #[arg(long)]
    pub brute_check: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct EvolveCmd {
    /// Ancestor genome.
    #[command(flatten)]
    pub inputs: Inputs,
    /// Evolution genome acting on encoded genomes.
    #[arg(long)]
    pub egenome: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    pub beta_prime: f64,
    /// Bounds of the evolution graph.
    #[command(flatten)]
    pub bounds: Bounds,
    #[command(flatten)]
    pub inner_bounds: InnerBounds,
    /// Summation mode for the inner partition sums.
    #[command(flatten)]
    pub physics: Physics,
    /// Summation mode for the evolution walk sums.
    #[arg(long, default_value = "iter:1e-12,10000", value_parser = parse_mode)]
    pub outer_mode: SumMode,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FitnessArg {
    Const(f64),
    Count(String, f64),
    Dist(PathBuf, f64),
}

pub fn parse_mode(s: &str) -> Result<SumMode, String> {
    if let Some(len) = s.strip_prefix("trunc:") {
        let max_walk_len = len
            .parse()
            .map_err(|_| format!("bad walk length {len:?}"))?;
        return Ok(SumMode::Truncated { max_walk_len });
    }
    if let Some(rest) = s.strip_prefix("iter:") {
        let (tol, maxit) = rest.split_once(',').ok_or("expected iter:TOL,MAXIT")?;
        let tolerance: f64 = tol.parse().map_err(|_| format!("bad tolerance {tol:?}"))?;
        if tolerance.is_nan() || tolerance <= 0.0 {
            return Err("tolerance must be positive".into());
        }
        let max_iterations = maxit
            .parse()
            .map_err(|_| format!("bad iteration count {maxit:?}"))?;
        return Ok(SumMode::Converge {
            tolerance,
            max_iterations,
        });
    }
    Err(format!("unknown mode {s:?}; use trunc:L or iter:TOL,MAXIT"))
}

pub fn parse_fitness(s: &str) -> Result<FitnessArg, String> {
    let number = |t: &str| t.parse::<f64>().map_err(|_| format!("bad number {t:?}"));
    if let Some(a) = s.strip_prefix("const:") {
        return Ok(FitnessArg::Const(number(a)?));
    }
    if let Some(rest) = s.strip_prefix("count:") {
        let (word, c) = rest.rsplit_once(':').ok_or("expected count:WORD:C")?;
        Word::new(word).map_err(|e| e.to_string())?;
        return Ok(FitnessArg::Count(word.to_string(), number(c)?));
    }
    if let Some(rest) = s.strip_prefix("dist:") {
        let (path, c) = rest.rsplit_once(':').ok_or("expected dist:PATH:C")?;
        return Ok(FitnessArg::Dist(PathBuf::from(path), number(c)?));
    }
    Err(format!(
        "unknown fitness {s:?}; use const:A, count:WORD:C or dist:PATH:C"
    ))
}

/// What a command produced. `stdout` is the full deterministic output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

impl Outcome {
    fn new(stdout: String, strict: bool, problems: &[&str]) -> Self {
        let stderr: String = problems.iter().map(|p| format!("warning: {p}\n")).collect();
        let exit_code = if strict && !problems.is_empty() {
            EXIT_STRICT
        } else {
            EXIT_OK
        };
        Outcome {
            stdout,
            stderr,
            exit_code,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_genome(path: &Path) -> Result<Genome, CliError> {
    parse_genome_file(&read(path)?).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn load_object(path: &Path) -> Result<MultiSetObject, CliError> {
    parse_object_file(&read(path)?).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn resolve_fitness(arg: &FitnessArg) -> Result<FitnessSpec, CliError> {
    Ok(match arg {
        FitnessArg::Const(a) => FitnessSpec::Const(*a),
        FitnessArg::Count(w, c) => FitnessSpec::Count {
            target: Word::new(w.as_str()).expect("checked when parsed"),
            c: *c,
        },
        FitnessArg::Dist(path, c) => FitnessSpec::Dist {
            target: load_object(path)?,
            c: *c,
        },
    })
}

fn load_graph(inputs: &Inputs, bounds: &Bounds) -> Result<ReductionGraph, CliError> {
    let genome = load_genome(&inputs.genome)?;
    let v0 = load_object(&inputs.object)?;
    Ok(build_graph(&genome, &v0, &bounds.into())?)
}

fn truncation(graph: &ReductionGraph) -> Option<&'static str> {
    graph
        .truncated()
        .then_some("reduction graph truncated by exploration bounds")
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Graph(cmd) => {
            let graph = load_graph(&cmd.inputs, &cmd.bounds)?;
            if let Some(path) = &cmd.dot {
                fs::write(path, export_dot(&graph)).map_err(|source| CliError::Io {
                    path: path.clone(),
                    source,
                })?;
            }
            let problems: Vec<_> = truncation(&graph).into_iter().collect();
            Ok(Outcome::new(
                render_graph(&graph, cmd.output.format),
                cmd.output.strict,
                &problems,
            ))
        }
        Command::Z(cmd) => {
            let graph = load_graph(&cmd.inputs, &cmd.bounds)?;
            let fitness = resolve_fitness(&cmd.physics.fitness)?;
            let beta = Beta::new(cmd.physics.beta)?;
            let result = partition_function(&graph, &fitness, beta, cmd.physics.mode)?;
            let mut problems: Vec<_> = truncation(&graph).into_iter().collect();
            if result.diverged {
                problems.push("walk series did not converge");
            }
            let text = render_partition(&result, &graph, beta.value(), cmd.output.format);
            Ok(Outcome::new(text, cmd.output.strict, &problems))
        }
        Command::Sweep(cmd) => {
            let graph = load_graph(&cmd.inputs, &cmd.bounds)?;
            let fitness = resolve_fitness(&cmd.fitness)?;
            let betas = cmd
                .betas
                .iter()
                .map(|&b| Beta::new(b))
                .collect::<Result<Vec<_>, _>>()?;
            let rows = beta_sweep(&graph, &fitness, &betas, cmd.mode)?;
            let mut problems: Vec<String> =
                truncation(&graph).into_iter().map(String::from).collect();
            for r in rows.iter().filter(|r| r.diverged) {
                problems.push(format!("walk series did not converge at beta={}", r.beta));
            }
            let refs: Vec<&str> = problems.iter().map(String::as_str).collect();
            Ok(Outcome::new(render_sweep_csv(&rows), cmd.strict, &refs))
        }
        Command::Mincost(cmd) => {
            let graph = load_graph(&cmd.inputs, &cmd.bounds)?;
            let fitness = resolve_fitness(&cmd.fitness)?;
            let zt = min_total_cost(&graph, &fitness)?;
            let problems: Vec<_> = truncation(&graph).into_iter().collect();
            let text = render_min_cost(&zt, &graph, &fitness, cmd.output.format);
            Ok(Outcome::new(text, cmd.output.strict, &problems))
        }
        Command::Align(cmd) => {
            let scheme = ScoreScheme::new(cmd.mu, cmd.sigma)?;
            let (alignment, score) = align_dp(&cmd.v, &cmd.w, &scheme)?;
            let brute = if cmd.brute_check {
                let brute = brute_force_min_score(&cmd.v, &cmd.w, &scheme)?;
                if brute != score {
                    return Err(CliError::BruteMismatch { dp: score, brute });
                }
                Some(brute)
            } else {
                None
            };
            Ok(Outcome::new(
                render_alignment(&alignment, score, brute, cmd.format),
                false,
                &[],
            ))
        }
        Command::Evolve(cmd) => {
            let g0 = load_genome(&cmd.inputs.genome)?;
            let v0 = load_object(&cmd.inputs.object)?;
            let ib = &cmd.inner_bounds;
            let config = EvolutionConfig {
                evolution_genome: load_genome(&cmd.egenome)?,
                beta_prime: Beta::new(cmd.beta_prime)?,
                inner: InnerConfig {
                    v0,
                    fitness: resolve_fitness(&cmd.physics.fitness)?,
                    beta: Beta::new(cmd.physics.beta)?,
                    bounds: ExplorationBounds {
                        max_depth: ib.inner_max_depth,
                        max_vertices: ib.inner_max_vertices,
                        max_word_len: ib.inner_max_word_len,
                        max_total_symbols: ib.inner_max_symbols,
                    },
                    mode: cmd.physics.mode,
                },
                outer_bounds: (&cmd.bounds).into(),
                outer_mode: cmd.outer_mode,
            };
            let result = evolution_partition_function(&g0, &config)?;
            let mut problems = Vec::new();
            if result.outer_truncated {
                problems.push("evolution graph truncated by exploration bounds");
            }
            if result.any_inner_truncated() {
                problems.push("some inner reduction graphs truncated by exploration bounds");
            }
            if result.outer_diverged || result.any_inner_diverged() {
                problems.push("walk series did not converge");
            }
            Ok(Outcome::new(
                render_evolution(&result, cmd.output.format),
                cmd.output.strict,
                &problems,
            ))
        }
    }
}

/// Parse process arguments and run; returns the outcome with an exit code.
pub fn run_from_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let exit_code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() {
                (String::new(), rendered)
            } else {
                (rendered, String::new())
            };
            return Outcome {
                stdout,
                stderr,
                exit_code,
            };
        }
    };
    match run(cli) {
        Ok(outcome) => outcome,
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            exit_code: EXIT_INPUT,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mode_flags() {
        assert_eq!(
            parse_mode("trunc:40").unwrap(),
            SumMode::Truncated { max_walk_len: 40 }
        );
        assert_eq!(
            parse_mode("iter:1e-9,500").unwrap(),
            SumMode::Converge {
                tolerance: 1e-9,
                max_iterations: 500
            }
        );
        for bad in ["trunc:x", "iter:1e-9", "iter:0,5", "geom:1"] {
            assert!(parse_mode(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn fitness_flags() {
        assert_eq!(parse_fitness("const:2.5").unwrap(), FitnessArg::Const(2.5));
        assert_eq!(
            parse_fitness("count:ab:1").unwrap(),
            FitnessArg::Count("ab".into(), 1.0)
        );
        assert_eq!(
            parse_fitness("count:a:b:-2").unwrap(),
            FitnessArg::Count("a:b".into(), -2.0)
        );
        assert_eq!(
            parse_fitness("dist:dir/t.obj:0.5").unwrap(),
            FitnessArg::Dist("dir/t.obj".into(), 0.5)
        );
        for bad in ["const:x", "count:ab", "dist:p", "energy:1"] {
            assert!(parse_fitness(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn usage_errors_exit_one() {
        let out = run_from_args(["genolab", "z"]);
        assert_eq!(out.exit_code, EXIT_INPUT);
        let out = run_from_args(["genolab", "align", "--v", "A-", "--w", "A"]);
        assert_eq!(out.exit_code, EXIT_INPUT);
        assert!(out.stderr.contains("invalid sequence symbol"));
    }

    #[test]
    fn align_command() {
        let out = run_from_args([
            "genolab",
            "align",
            "--v",
            "ATC",
            "--w",
            "AC",
            "--brute-check",
        ]);
        assert_eq!(out.exit_code, EXIT_OK);
        assert_eq!(out.stdout, "ATC\nA-C\nscore: 1\nbrute_force_score: 1\n");
    }
}
