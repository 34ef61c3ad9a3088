//! In-process runs of the command line: artifacts go to a temporary file.

use std::path::Path;

use clap::Parser;
use serde_json::Value;

use crate::{run, Cli};

struct Output {
    code: u8,
    stdout: Vec<u8>,
    message: String,
}

fn holohad(args: &[&str]) -> Output {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("artifact");
    let mut argv = vec!["holohad"];
    argv.extend_from_slice(args);
    if !args.contains(&"--out") {
        argv.extend(["--out", path.to_str().unwrap()]);
    }
    let (code, message) = match Cli::try_parse_from(&argv) {
        Err(e) => {
            return Output {
                code: e.exit_code() as u8,
                stdout: e.render().to_string().into_bytes(),
                message: String::new(),
            }
        }
        Ok(cli) => match run(cli) {
            Ok(()) => (0, String::new()),
            Err(e) => (e.code, e.message),
        },
    };
    Output { code, stdout: std::fs::read(&path).unwrap_or_default(), message }
}

fn json(out: &Output) -> Value {
    assert_eq!(out.code, 0, "{}", out.message);
    serde_json::from_slice(&out.stdout).unwrap()
}

fn csv_body(text: &str) -> Vec<Vec<String>> {
    text.lines().filter(|l| !l.starts_with('#')).map(|l| l.split(',').map(str::to_owned).collect()).collect()
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn gate_reports_the_hadamard_construction() {
    let doc = json(&holohad(&["gate", "--lx", "1", "--ly", "1", "--no-timestamp"]));
    let r = &doc["result"];
    assert!(r["deviation"].as_f64().unwrap() < 1e-12);
    assert!((r["d_x"].as_f64().unwrap() - 0.769_485_445_281_183_6).abs() < 1e-12);
    assert!((r["sigma_i"].as_f64().unwrap() - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
    assert!((r["sigma_ii"].as_f64().unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    assert_eq!(doc["artifact_version"], hadamard_core::ARTIFACT_VERSION);
    assert!(doc.get("timestamp").is_none());
    assert_eq!(doc["config"]["lx"], 1.0);
}

#[test]
fn gate_json_round_trips_exactly() {
    let out = holohad(&["gate", "--lx", "1.3", "--ly", "0.7", "--format", "json", "--no-timestamp"]);
    let doc = json(&out);
    let again: Value = serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(doc, again);
    let d_x = doc["result"]["d_x"].as_f64().unwrap();
    assert_eq!(d_x, -0.5 * (-std::f64::consts::PI / (4.0 * 1.3)).ln_1p());
}

#[test]
fn gate_csv_matches_json() {
    let csv = holohad(&["gate", "--format", "csv", "--no-timestamp"]);
    let doc = json(&holohad(&["gate", "--no-timestamp"]));
    let rows = csv_body(&String::from_utf8(csv.stdout).unwrap());
    assert_eq!(rows[0], ["quantity", "value"]);
    let d_x = rows.iter().find(|r| r[0] == "d_x").unwrap()[1].parse::<f64>().unwrap();
    assert_eq!(d_x, doc["result"]["d_x"].as_f64().unwrap());
}

#[test]
fn domain_errors_exit_2() {
    let out = holohad(&["gate", "--lx", "0.7"]);
    assert_eq!(out.code, 2);
    assert!(out.message.contains("l_x > π/4"));
    for args in [
        &["gate", "--lx", "nan"][..],
        &["gate", "--lx", "abc"],
        &["gate", "--ly", "-1"],
        &["fidelity", "--eps", "-0.1"],
        &["fidelity", "--samples", "0"],
        &["fidelity", "--grid", "1"],
        &["fidelity", "--noise", "pink"],
        &["scan-lx", "--lx-min", "2", "--lx-max", "1"],
        &["scan-lx", "--lx-min", "0.5", "--lx-max", "1"],
        &["order-fit", "--eps-list", "0.01,0.02"],
        &["order-fit", "--eps-list", "0.01,0.02,0.5"],
        &["verify-oracle", "--nf", "2"],
        &["verify-oracle", "--fd-step", "0.5"],
        &["verify-oracle", "--ladder", "32,64"],
        &["--config", "/nonexistent/config.toml", "gate"],
    ] {
        assert_eq!(holohad(args).code, 2, "{args:?}");
    }
}

#[test]
fn zero_noise_gives_unit_fidelity_columns() {
    let out = holohad(&["fidelity", "--eps", "0", "--samples", "3", "--no-timestamp"]);
    assert_eq!(out.code, 0, "{}", out.message);
    let rows = csv_body(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(
        rows[0],
        [
            "sample_index",
            "seed",
            "l_x",
            "l_y",
            "eps",
            "msq",
            "delta_sigma_I",
            "delta_sigma_II",
            "f_exact_j0",
            "f_exact_j1",
            "f_analytic",
            "f_approx_cos",
            "f_approx_quartic"
        ]
    );
    assert_eq!(rows.len(), 1 + 3 + 1);
    assert_eq!(rows[4][0], "mean");
    for row in &rows[1..] {
        for v in &row[8..] {
            assert!((v.parse::<f64>().unwrap() - 1.0).abs() < 1e-15, "{row:?}");
        }
    }
}

#[test]
fn fidelity_rows_follow_the_cosine_law() {
    let out = holohad(&["fidelity", "--samples", "1000", "--eps", "0.01", "--grid", "256", "--no-timestamp"]);
    assert_eq!(out.code, 0, "{}", out.message);
    let rows = csv_body(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(rows.len(), 1002);
    for row in &rows[1..1001] {
        let f: Vec<f64> = row[8..11].iter().map(|v| v.parse().unwrap()).collect();
        assert!((f[0] - f[2]).abs() < 1e-12 && (f[1] - f[2]).abs() < 1e-12, "{row:?}");
    }
    let seeds: Vec<u64> = rows[1..4].iter().map(|r| r[1].parse().unwrap()).collect();
    assert_eq!(seeds, [1, 2, 3]);
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.csv");
    let p = path.to_str().unwrap();
    let args = ["--seed", "42", "--out", p, "--no-timestamp", "fidelity", "--samples", "50", "--noise", "gaussian"];
    assert_eq!(holohad(&args).code, 0);
    let first = read(&path);
    assert_eq!(holohad(&args).code, 0);
    assert_eq!(first, read(&path));
    assert!(!first.contains("# timestamp:"));

    let other = holohad(&["--seed", "43", "--no-timestamp", "fidelity", "--samples", "50", "--noise", "gaussian"]);
    assert_ne!(first.as_bytes(), &other.stdout[..]);
}

#[test]
fn timestamp_is_optional() {
    let doc = json(&holohad(&["gate"]));
    assert!(doc["timestamp"].as_u64().is_some());
    let out = String::from_utf8(holohad(&["gate", "--format", "csv"]).stdout).unwrap();
    assert!(out.lines().any(|l| l.starts_with("# timestamp: ")));
}

#[test]
fn emitted_config_reproduces_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    let direct = holohad(&[
        "--seed",
        "7",
        "--no-timestamp",
        "--emit-config",
        cfg.to_str().unwrap(),
        "scan-lx",
        "--lx-min",
        "0.9",
        "--lx-max",
        "3",
        "--points",
        "9",
        "--spacing",
        "log",
        "--samples",
        "4",
        "--noise",
        "sinusoid",
        "--eps",
        "0.02",
        "--periods",
        "2",
        "--zero-mean",
        "false",
    ]);
    assert_eq!(direct.code, 0, "{}", direct.message);
    let from_file = holohad(&["--config", cfg.to_str().unwrap(), "scan-lx"]);
    assert_eq!(from_file.code, 0);
    assert_eq!(direct.stdout, from_file.stdout);

    let text = read(&cfg);
    assert!(text.contains("spacing = \"log\"") && text.contains("zero-mean = false"), "{text}");
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("gate.toml");
    std::fs::write(&cfg, "lx = 2.0\nly = 3.0\nno-timestamp = true\n").unwrap();
    let doc = json(&holohad(&["--config", cfg.to_str().unwrap(), "gate", "--ly", "1.5"]));
    assert_eq!(doc["config"]["lx"], 2.0);
    assert_eq!(doc["config"]["ly"], 1.5);

    std::fs::write(&cfg, "lx = \"wide\"\n").unwrap();
    assert_eq!(holohad(&["--config", cfg.to_str().unwrap(), "gate"]).code, 2);
}

#[test]
fn scan_marks_columns_and_boundary() {
    let out = holohad(&[
        "scan-lx",
        "--lx-min",
        "0.7853991634",
        "--lx-max",
        "0.79",
        "--points",
        "5",
        "--samples",
        "4",
        "--no-timestamp",
    ]);
    assert_eq!(out.code, 0, "{}", out.message);
    let rows = csv_body(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(
        rows[0],
        ["l_x", "d_x", "msq", "mean_one_minus_f_exact", "f_approx_cos", "f_approx_quartic", "is_local_max"]
    );
    let deficit: f64 = rows[1][3].parse().unwrap();
    assert!(deficit < 1e-12, "{deficit}");
    assert!(rows[1..].iter().all(|r| r[6] == "true" || r[6] == "false"));
}

#[test]
fn order_fit_expectations() {
    let pass = holohad(&["order-fit", "--samples", "40", "--expect-slope", "4", "--tol", "0.1", "--no-timestamp"]);
    let doc = json(&pass);
    assert!((doc["result"]["slope"].as_f64().unwrap() - 4.0).abs() < 0.1);
    assert_eq!(doc["result"]["points"].as_array().unwrap().len(), 6);
    assert_eq!(doc["result"]["passed"], true);

    let constant = ["order-fit", "--noise", "constant", "--zero-mean", "false", "--samples", "4", "--no-timestamp"];
    let doc = json(&holohad(&constant));
    assert!((doc["result"]["slope"].as_f64().unwrap() - 2.0).abs() < 0.1);

    let mut failing = constant.to_vec();
    failing.extend(["--expect-slope", "4"]);
    let out = holohad(&failing);
    assert_eq!(out.code, 1);
    assert!(!out.stdout.is_empty());
}

#[test]
fn under_truncated_oracle_exits_1() {
    let out = holohad(&["verify-oracle", "--nf", "8", "--ladder", "8,12,16", "--steps", "10", "--no-timestamp"]);
    assert_eq!(out.code, 1);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["result"]["passed"], false);
    let again = holohad(&["verify-oracle", "--nf", "8", "--ladder", "8,12,16", "--steps", "10", "--no-timestamp"]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn help_lists_subcommands() {
    let out = holohad(&["--help"]);
    assert_eq!(out.code, 0, "{}", out.message);
    let text = String::from_utf8(out.stdout).unwrap();
    for cmd in ["gate", "fidelity", "scan-lx", "order-fit", "verify-oracle"] {
        assert!(text.contains(cmd), "{cmd}");
    }
}
