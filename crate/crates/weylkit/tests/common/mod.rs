#![allow(dead_code)]

use clap::Parser;
use weylkit::{run, Cli};

const GWA: &[&str] = &["verify", "structure-constants", "simplicity", "normal-form|y*x*x", "mul|x^2|y", "involution-check"];
const DPR: &[&str] = &[
    "verify",
    "to-gwa",
    "roundtrip|--samples|25",
    "bi-table|--max|6",
    "alpha-solve",
    "normal-element",
    "simplicity",
    "mul|x|y",
    "involution-check",
];
const RANKN: &[&str] = &["verify", "mul|x2|x1", "normal-form|y1*x1*x2*y2"];

/// Every preset command the golden files and the determinism check exercise, as argv lists.
pub fn preset_commands() -> Vec<Vec<String>> {
    let mut out = Vec::new();
    let mut push = |preset: Option<&str>, cmd: &str| {
        let mut argv = vec!["weylkit".to_string()];
        if let Some(p) = preset {
            argv.extend(["--preset".to_string(), p.to_string()]);
        }
        argv.extend(cmd.split('|').map(str::to_string));
        out.push(argv);
    };
    for p in ["weyl-q", "weyl-fp", "hh3-gwa", "quantum-plane-gwa"] {
        GWA.iter().for_each(|c| push(Some(p), c));
    }
    for p in ["weyl-q-dpr", "weyl-fp-dpr", "usl2-dpr", "oq2so3-dpr"] {
        DPR.iter().for_each(|c| push(Some(p), c));
    }
    for p in ["rank2-weyl", "theta-rank2"] {
        RANKN.iter().for_each(|c| push(Some(p), c));
    }
    push(Some("weyl-q"), "iprime|--ideal|h|--depth|2");
    push(Some("hh3-gwa"), "iprime|--ideal|h - 3|--depth|3");
    for c in ["lucas|10|4|3", "neighbour|6|2", "neighbour|12|2", "vp|12|2"] {
        push(None, c);
    }
    out
}

pub fn golden_name(argv: &[String]) -> String {
    let s: String = argv[1..]
        .iter()
        .filter(|a| a.as_str() != "--preset")
        .map(|a| a.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' }).collect::<String>())
        .collect::<Vec<_>>()
        .join("__");
    format!("{s}.json")
}

/// Runs a command line in-process; returns the exit code and the printed report text.
pub fn run_argv(argv: &[String]) -> (i32, String) {
    let cli = Cli::try_parse_from(argv).expect("command line parses");
    let (code, v) = run(&cli);
    (code, serde_json::to_string_pretty(&v).unwrap() + "\n")
}
