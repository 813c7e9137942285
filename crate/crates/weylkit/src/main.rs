use std::io::Write;

use clap::Parser;
use weylkit::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let (code, report) = run(&cli);
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    // a closed pipe is not an error for a report printer
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    std::process::exit(code);
}
