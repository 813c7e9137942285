use std::io::Write;
use std::process::Command;

use serde_json::Value;

fn weylkit(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_weylkit")).args(args).output().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v)
}

#[test]
fn completed_analyses_exit_zero() {
    let (code, v) = weylkit(&["--preset", "weyl-fp", "simplicity"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], "NotSimple");
    let (code, v) = weylkit(&["--preset", "weyl-q", "simplicity"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], "Simple");
    let (code, v) = weylkit(&["neighbour", "6", "2"]);
    assert_eq!((code, v["result"]["neighbour"].as_str()), (0, Some("4")));
    let (_, v) = weylkit(&["--preset", "usl2-dpr", "bi-table", "--max", "5"]);
    let rows: Vec<&str> = v["result"]["rows"].as_array().unwrap().iter().map(|r| r["b"].as_str().unwrap()).collect();
    assert_eq!(&rows[..2], ["2*H", "4*H - 2"]);
}

#[test]
fn report_shape() {
    let (_, v) = weylkit(&["--preset", "hh3-gwa", "verify"]);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["command", "inputs", "result"]);
    assert_eq!(v["inputs"]["spec"], "hh3-gwa");
    let (_, v) = weylkit(&["--timings", "--preset", "hh3-gwa", "verify"]);
    assert!(v["timings"]["total_ms"].is_number());
}

#[test]
fn errors_exit_two() {
    for (args, kind) in [
        (&["--preset", "nope", "verify"][..], "CommandUnknown"),
        (&["--spec", "/does/not/exist.toml", "verify"][..], "FileNotFound"),
        (&["neighbour", "5", "2"][..], "AlgebraError"),
        (&["vp", "0", "3"][..], "AlgebraError"),
        (&["--preset", "weyl-q", "mul", "2x", "y"][..], "SyntaxError"),
        (&["--preset", "weyl-q", "mul", "z", "y"][..], "UnknownVariable"),
        (&["--preset", "weyl-q", "mul", "h^-1", "y"][..], "NegativeExponentOutsideLaurent"),
        (&["--preset", "rank2-weyl", "to-gwa"][..], "SpecInvalid"),
    ] {
        let (code, v) = weylkit(args);
        assert_eq!(code, 2, "{args:?}");
        assert_eq!(v["error"]["kind"], kind, "{args:?}: {v}");
        assert!(v.get("result").is_none());
    }
    let (code, _) = weylkit(&["frobnicate"]);
    assert_ne!(code, 0);
}

#[test]
fn spec_files() {
    let dir = std::env::temp_dir().join(format!("weylkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("shift.toml");
    let mut f = std::fs::File::create(&good).unwrap();
    writeln!(
        f,
        "name = \"hh2\"\n[base]\nfield = \"Q\"\nvars = [\"h\"]\n[endo.sigma]\nh = \"h - 1\"\n[endo.tau]\nh = \"h + 1\"\n[gwa]\nsigma = \"sigma\"\ntau = \"tau\"\na = \"h*(h-2)\""
    )
    .unwrap();
    let path = good.to_str().unwrap();
    let (code, v) = weylkit(&["--spec", path, "simplicity"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["witness"]["index"], 2);

    let bad = dir.join("bad.toml");
    std::fs::write(&bad, "[base]\nfield = \"Q\"\nvars = [\"h\"]\n[gwa]\nsigma = \"missing\"\ntau = \"missing\"\na = \"h\"\n").unwrap();
    let (code, v) = weylkit(&["--spec", bad.to_str().unwrap(), "verify"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "SpecInvalid");
    std::fs::remove_dir_all(&dir).unwrap();
}
