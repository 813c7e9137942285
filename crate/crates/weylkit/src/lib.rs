//! Command-line front end, spec files and presets for `weylkit-core`.

pub mod commands;
pub mod error;
pub mod expr;
pub mod presets;
pub mod spec;

pub use weylkit_core as core;

use clap::Parser;
use std::path::PathBuf;

use commands::{run_command, Command};
use error::CliError;
use spec::{AlgebraSpec, Loaded};

#[derive(Debug, Parser)]
#[command(name = "weylkit", version, about = "Generalized Weyl algebras and diskew polynomial rings")]
pub struct Cli {
    /// Algebra spec file (TOML).
    #[arg(long, global = true, conflicts_with = "preset")]
    pub spec: Option<PathBuf>,
    /// Built-in algebra by name.
    #[arg(long, global = true)]
    pub preset: Option<String>,
    /// Add wall-clock timings to the report.
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

pub fn load(cli: &Cli) -> Result<Option<Loaded>, CliError> {
    let spec = match (&cli.spec, &cli.preset) {
        (Some(p), _) => AlgebraSpec::load(p)?,
        (None, Some(name)) => presets::preset(name)?,
        (None, None) => return Ok(None),
    };
    Ok(Some(spec.build()?))
}

/// Runs a parsed command line. Returns the JSON report or an error report, with the exit code.
pub fn run(cli: &Cli) -> (i32, serde_json::Value) {
    let start = std::time::Instant::now();
    let out = load(cli).and_then(|l| run_command(l.as_ref(), &cli.command));
    match out {
        Ok(mut v) => {
            if cli.timings {
                v["timings"] = serde_json::json!({ "total_ms": start.elapsed().as_secs_f64() * 1e3 });
            }
            (0, v)
        }
        Err(e) => (
            2,
            serde_json::json!({
                "command": cli.command.name(),
                "error": { "kind": e.kind(), "message": e.to_string() },
            }),
        ),
    }
}
