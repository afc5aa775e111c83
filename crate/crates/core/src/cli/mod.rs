//! File formats, output rendering and command dispatch for the `genolab` binary.

pub mod commands;
pub mod formats;
pub mod render;

pub use commands::{run, run_from_args, Cli, CliError, Outcome};
pub use formats::{
    parse_genome_file, parse_object_file, render_genome_file, render_object_file, ParseError,
};
pub use render::{render_sweep_csv, Format, SWEEP_HEADER};
