use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    path.to_string_lossy().into_owned()
}

fn sbbd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sbbd"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn sbbd_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sbbd"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn succeeded(o: &Output) -> bool {
    if !o.status.success() {
        eprintln!("stderr: {}", String::from_utf8_lossy(&o.stderr));
    }
    o.status.success()
}

#[test]
fn analyze_3x3_example() {
    let o = sbbd(&["analyze", &fixture("example_3x3.csv")]);
    assert!(succeeded(&o));
    let text = stdout(&o);
    assert!(text.contains("SBBD(3, 3, 9; Λ = (6, 3, 4, 4))"), "{text}");
    assert!(text.contains("spectrum: 36 (x1), 3 (x6), 0 (x2)"), "{text}");
    assert!(text.contains("spanning: true"));

    let j = json_of(&sbbd(&["analyze", &fixture("example_3x3.csv"), "--json"]));
    assert_eq!(j["lambda"], serde_json::json!([6, 3, 4, 4]));
    assert_eq!(j["spanning"], true);
    assert_eq!(
        j["spectrum"],
        serde_json::json!([
            {"value": "36", "mult": 1},
            {"value": "3", "mult": 6},
            {"value": "0", "mult": 2}
        ])
    );
    assert_eq!(j["a_criterion"], "4/3");
}

#[test]
fn fano_pipeline_through_a_pipe() {
    let composed = sbbd(&["compose", "--design", "catalog:fano", "--od", "7"]);
    assert!(succeeded(&composed));
    assert_eq!(stdout(&composed).lines().count(), 42);
    let o = sbbd_stdin(&["analyze", "-", "--json"], &composed.stdout);
    assert!(succeeded(&o));
    let j = json_of(&o);
    assert_eq!(j["lambda"], serde_json::json!([18, 6, 6, 8]));
    assert_eq!(j["a_criterion"], "18/7");
    assert_eq!(j["a_lower_bound"], "18/7");
    assert_eq!(j["regular"], true);
    assert_eq!(j["a_optimal_in_omega"], true);
}

#[test]
fn piped_and_file_input_give_identical_reports() {
    let path = fixture("example_3x3.csv");
    let from_file = sbbd(&["analyze", &path, "--json"]);
    let from_pipe = sbbd_stdin(&["analyze", "-", "--json"], &std::fs::read(&path).unwrap());
    assert!(succeeded(&from_file) && succeeded(&from_pipe));
    assert_eq!(from_file.stdout, from_pipe.stdout);
}

#[test]
fn compose_reproduces_the_published_4x3_design() {
    let o = sbbd(&[
        "compose",
        "--design",
        &fixture("rl_3_points.json"),
        "--od",
        &fixture("od4_published.csv"),
        "--format",
        "json",
    ]);
    assert!(succeeded(&o));
    let expected: Value = serde_json::from_str(&std::fs::read_to_string(fixture("example_4x3.json")).unwrap()).unwrap();
    assert_eq!(json_of(&o), expected);
    assert!(String::from_utf8_lossy(&o.stderr).contains("Λ = (9, 6, 6, 7)"));

    let j = json_of(&sbbd(&["analyze", &fixture("example_4x3.json"), "--json"]));
    assert_eq!(j["lambda"], serde_json::json!([9, 6, 6, 7]));
    assert_eq!(j["spectrum"][0], serde_json::json!({"value": "81", "mult": 1}));
}

#[test]
fn cyclic_layers_scale_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("stacked.json");
    let o = sbbd(&[
        "compose",
        "--design",
        &fixture("rl_3_points.json"),
        "--od",
        "4",
        "--perms",
        "cyclic:3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(succeeded(&o));
    let j = json_of(&sbbd(&["analyze", out.to_str().unwrap(), "--json"]));
    assert_eq!(j["lambda"], serde_json::json!([27, 18, 18, 21]));
    assert_eq!(j["n"], 36);

    let explicit = sbbd(&[
        "compose",
        "--design",
        &fixture("rl_3_points.json"),
        "--od",
        "4",
        "--perms",
        "2,3,1;3,1,2",
    ]);
    let cyclic = sbbd(&[
        "compose",
        "--design",
        &fixture("rl_3_points.json"),
        "--od",
        "4",
        "--perms",
        "cyclic:3",
    ]);
    assert_eq!(explicit.stdout, cyclic.stdout);
}

#[test]
fn ordered_design_commands() {
    let o = sbbd(&["od", "verify", &fixture("od3.csv"), "--json"]);
    assert!(succeeded(&o));
    assert_eq!(json_of(&o), serde_json::json!({"n": 3, "s": 3, "eta": 1, "rows": 6}));

    let built = sbbd(&["od", "construct", "--q", "9"]);
    assert!(succeeded(&built));
    let j = json_of(&sbbd_stdin(&["od", "verify", "-", "--json"], &built.stdout));
    assert_eq!(j["rows"], 72);
    assert_eq!(j["eta"], 1);

    let bad = sbbd(&["od", "verify", &fixture("bad_od.csv")]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("ordered pair"));

    assert_eq!(sbbd(&["od", "construct", "--q", "6"]).status.code(), Some(2));
}

#[test]
fn design_verify_reports_block_sizes() {
    let o = sbbd(&["design", "verify", &fixture("rl_3_points.json")]);
    assert!(succeeded(&o));
    assert!(stdout(&o).contains("v = 3, b = 4, r = 3, λ = 2, k = variable"));
    let j = json_of(&sbbd(&["design", "verify", "catalog:pg23", "--json"]));
    assert_eq!(
        (j["v"].as_u64(), j["k"].as_u64(), j["symmetric"].as_bool()),
        (Some(13), Some(4), Some(true))
    );

    let broken = sbbd_stdin(&["design", "verify", "-"], br#"{"v": 3, "blocks": [[1, 2], [2, 3]]}"#);
    assert_eq!(broken.status.code(), Some(1));
}

#[test]
fn masks_in_both_formats() {
    let j = json_of(&sbbd(&["mask", &fixture("example_3x3.csv")]));
    let masks = j["masks"].as_array().unwrap();
    assert_eq!(masks.len(), 9);
    let mut totals = [[0u64; 3]; 3];
    for m in masks {
        for (i, row) in m.as_array().unwrap().iter().enumerate() {
            let row: Vec<u64> = row.as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
            assert_eq!(row.iter().sum::<u64>(), 2);
            for (j, x) in row.iter().enumerate() {
                totals[i][j] += x;
            }
        }
    }
    assert_eq!(totals, [[6; 3]; 3]);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("masks.bin");
    let o = sbbd(&[
        "mask",
        &fixture("example_3x3.csv"),
        "--format",
        "bin",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(succeeded(&o));
    let bytes = std::fs::read(&out).unwrap();
    assert_eq!(&bytes[..12], &[9, 0, 0, 0, 3, 0, 0, 0, 3, 0, 0, 0]);
    assert_eq!(bytes.len(), 12 + 81);
    assert_eq!(&bytes[12..21], &[0, 1, 1, 1, 1, 0, 1, 1, 0]);

    assert_eq!(sbbd(&["mask", &fixture("not_spanning.csv")]).status.code(), Some(1));
    assert_eq!(
        sbbd(&["mask", &fixture("example_3x3.csv"), "--format", "bin"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn simulation_is_reproducible() {
    let args = [
        "simulate",
        &fixture("example_3x3.csv"),
        "--runs",
        "3000",
        "--seed",
        "17",
        "--json",
    ];
    let a = sbbd(&args);
    let b = sbbd(&args);
    let mut serial_args = args.to_vec();
    serial_args.push("--serial");
    let c = sbbd(&serial_args);
    assert!(succeeded(&a));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let j = json_of(&a);
    assert_eq!(j["alpha"], 3);
    assert_eq!(j["contrasts"].as_array().unwrap().len(), 4);
}

#[test]
fn noiseless_simulation_recovers_given_effects() {
    let o = sbbd(&[
        "simulate",
        &fixture("example_3x3.csv"),
        "--sigma",
        "0",
        "--runs",
        "1",
        "--tau",
        &fixture("tau_3x3.txt"),
        "--json",
    ]);
    assert!(succeeded(&o));
    for c in json_of(&o)["contrasts"].as_array().unwrap() {
        let (t, m) = (c["true"].as_f64().unwrap(), c["mean"].as_f64().unwrap());
        assert!((t - m).abs() <= 1e-9, "{c}");
    }
}

#[test]
fn estimate_removes_the_grand_mean() {
    let rows: Vec<Vec<f64>> = std::fs::read_to_string(fixture("example_3x3.csv"))
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    let tau = [1.5, -1.0, -0.5, -1.0, 2.0, -1.0, -0.5, -1.0, 1.5];
    let y: Vec<String> = rows
        .iter()
        .map(|r| (100.0 + r.iter().zip(&tau).map(|(a, b)| a * b).sum::<f64>()).to_string())
        .collect();
    let dir = tempfile::tempdir().unwrap();
    let y_path = dir.path().join("y.txt");
    std::fs::write(&y_path, y.join("\n")).unwrap();
    let est = json_of(&sbbd(&[
        "estimate",
        &fixture("example_3x3.csv"),
        "--y",
        y_path.to_str().unwrap(),
        "--json",
    ]));
    let sim = json_of(&sbbd(&[
        "simulate",
        &fixture("example_3x3.csv"),
        "--sigma",
        "0",
        "--runs",
        "1",
        "--tau",
        &fixture("tau_3x3.txt"),
        "--json",
    ]));
    let got = est["contrasts"].as_array().unwrap();
    let want = sim["contrasts"].as_array().unwrap();
    for (g, w) in got.iter().zip(want) {
        let (g, w) = (g["estimate"].as_f64().unwrap(), w["true"].as_f64().unwrap());
        assert!((g - w).abs() < 1e-9, "{g} vs {w}");
    }
}

#[test]
fn violations_exit_with_one() {
    let mut text = std::fs::read_to_string(fixture("example_3x3.csv")).unwrap();
    text.replace_range(0..1, "1");
    let o = sbbd_stdin(&["analyze", "-", "--json"], text.as_bytes());
    assert_eq!(o.status.code(), Some(1));
    let j = json_of(&o);
    assert_eq!(j["sbbd"], false);
    assert_eq!(j["violations"][0]["condition"], "II");
}

#[test]
fn usage_errors_exit_with_two() {
    let composed = sbbd(&["compose", "--design", &fixture("rl_3_points.json"), "--od", "4"]);
    assert!(succeeded(&composed));
    assert_eq!(sbbd_stdin(&["analyze", "-"], &composed.stdout).status.code(), Some(2));
    assert!(succeeded(&sbbd_stdin(&["analyze", "-", "--v1", "4"], &composed.stdout)));
    assert_eq!(sbbd(&["analyze", "does-not-exist.csv"]).status.code(), Some(2));
    assert_eq!(
        sbbd(&["compose", "--design", "catalog:nope", "--od", "7"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(sbbd(&["analyze"]).status.code(), Some(2));
    assert_eq!(
        sbbd(&["compose", "--design", "catalog:fano", "--od", "5"])
            .status
            .code(),
        Some(2)
    );
}
