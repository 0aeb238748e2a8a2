//! End-to-end tests of the command-line binary: golden files, exit codes,
//! determinism, and cache behavior.

use std::io::Write as _;
use std::process::{Command, Stdio};

fn run_bin(args: &[&str], stdin: Option<&str>) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pong"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = cmd.spawn().unwrap();
    if let Some(input) = stdin {
        child
            .stdin
            .as_mut()
            .unwrap()
            .write_all(input.as_bytes())
            .unwrap();
    }
    drop(child.stdin.take());
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn fixture(name: &str) -> String {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn diff_matches_bigon_golden_file() {
    let (code, stdout, _) = run_bin(
        &["diff"],
        Some(r#"{"m":3,"k":1,"domain":[2],"values":[-1]}"#),
    );
    assert_eq!(code, 0);
    assert_eq!(stdout, fixture("bigon_diff.json"));
}

#[test]
fn diff_matches_asteroids_golden_file() {
    let (code, stdout, _) = run_bin(
        &["diff"],
        Some(r#"{"algebra":"asteroids","m":3,"k":2,"domain":[1,2],"values":[6,1]}"#),
    );
    assert_eq!(code, 0);
    assert_eq!(stdout, fixture("asteroids_diff.json"));
}

#[test]
fn mul_of_elements_from_stdin() {
    let (code, stdout, _) = run_bin(
        &["mul"],
        Some(
            r#"[{"m":3,"k":1,"domain":[2],"values":[-1]},
                {"m":3,"k":1,"domain":[2],"values":[5]}]"#,
        ),
    );
    assert_eq!(code, 0);
    assert_eq!(
        stdout,
        concat!(
            r#"{"terms":[{"generator":{"algebra":"pong","m":3,"k":1,"#,
            r#""domain":[2],"values":[-4]},"monomials":[[0,0,0]]}]}"#,
            "\n"
        )
    );
}

#[test]
fn mul_rejects_bad_shapes() {
    let (code, _, _) = run_bin(&["mul"], Some(r#"{"m":3,"k":1,"domain":[2],"values":[5]}"#));
    assert_eq!(code, 2);
    let (code, _, _) = run_bin(&["mul"], Some("[]"));
    assert_eq!(code, 2);
}

#[test]
fn gens_counts_and_records() {
    let (code, stdout, _) = run_bin(&["gens", "--m", "2", "--k", "1", "--max-disp", "0"], None);
    assert_eq!(code, 0);
    assert_eq!(
        stdout,
        "[{\"algebra\":\"pong\",\"m\":2,\"k\":1,\"domain\":[1],\"values\":[1]}]\n"
    );

    let (_, stdout, _) = run_bin(&["gens", "--m", "2", "--k", "1", "--max-disp", "2"], None);
    let records: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(records.as_array().unwrap().len(), 5);

    // A zero displacement bound keeps only the idempotent of each domain.
    let (_, stdout, _) = run_bin(&["gens", "--m", "3", "--k", "2", "--max-disp", "0"], None);
    let records: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(records.as_array().unwrap().len(), 1);
}

#[test]
fn verify_examples_and_exit_codes() {
    let (code, stdout, _) = run_bin(
        &[
            "verify",
            "--suite",
            "dga",
            "--m",
            "3",
            "--k",
            "1",
            "--max-disp",
            "4",
        ],
        None,
    );
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["suite"], "dga");
    assert_eq!(report["failures"].as_array().unwrap().len(), 0);

    let (code, _, _) = run_bin(
        &[
            "verify",
            "--suite",
            "oracle-mul",
            "--m",
            "3",
            "--k",
            "2",
            "--max-disp",
            "3",
        ],
        None,
    );
    assert_eq!(code, 0);

    let (code, _, stderr) = run_bin(&["verify", "--suite", "dga", "--m", "1", "--k", "1"], None);
    assert_eq!(code, 2, "stderr: {stderr}");

    let (code, _, _) = run_bin(
        &["verify", "--suite", "nonsense", "--m", "2", "--k", "1"],
        None,
    );
    assert_eq!(code, 2);

    let (code, _, _) = run_bin(&["diff"], Some("not json"));
    assert_eq!(code, 2);
}

#[test]
fn verify_accepts_thread_flag() {
    let (code, _, _) = run_bin(
        &[
            "verify",
            "--suite",
            "dga",
            "--m",
            "2",
            "--k",
            "1",
            "--max-disp",
            "2",
            "--jobs",
            "2",
        ],
        None,
    );
    assert_eq!(code, 0);
}

#[test]
fn outputs_are_deterministic() {
    let gens = || run_bin(&["gens", "--m", "3", "--k", "2", "--max-disp", "2"], None).1;
    assert_eq!(gens(), gens());

    let table = || {
        run_bin(
            &["export-table", "--m", "2", "--k", "1", "--max-disp", "2"],
            None,
        )
        .1
    };
    assert_eq!(table(), table());
}

#[test]
fn export_table_shape() {
    let (code, stdout, _) = run_bin(
        &["export-table", "--m", "3", "--k", "1", "--max-disp", "2"],
        None,
    );
    assert_eq!(code, 0);
    let table: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(table["format_version"], 1);
    assert_eq!(table["algebra"], "pong");
    assert_eq!(table["m"], 3);
    let gens = table["generators"].as_array().unwrap();
    assert!(!gens.is_empty());
    for entry in table["products"].as_array().unwrap() {
        let left = entry["left"].as_u64().unwrap() as usize;
        assert!(left < gens.len());
        assert!(!entry["element"]["terms"].as_array().unwrap().is_empty());
    }
    for entry in table["differential"].as_array().unwrap() {
        let from = entry["from"].as_u64().unwrap() as usize;
        assert!(from < gens.len());
    }
}

#[test]
fn cache_round_trip_through_the_binary() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = [
        "gens",
        "--m",
        "3",
        "--k",
        "1",
        "--max-disp",
        "2",
        "--cache",
        cache,
    ];
    let (code, first, _) = run_bin(&args, None);
    assert_eq!(code, 0);
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);

    let (code, second, stderr) = run_bin(&args, None);
    assert_eq!(code, 0);
    assert_eq!(first, second);
    assert!(stderr.is_empty(), "unexpected warnings: {stderr}");

    // Corrupt the cache file: the run must warn, recompute, and still agree.
    let path = files[0].as_ref().unwrap().path();
    std::fs::write(&path, "{broken").unwrap();
    let (code, third, stderr) = run_bin(&args, None);
    assert_eq!(code, 0);
    assert_eq!(first, third);
    assert!(stderr.contains("warning"), "missing warning: {stderr}");
}

#[test]
fn element_input_round_trips_through_diff() {
    // d^2 = 0, exercised through the binary by feeding diff its own output.
    let (_, first, _) = run_bin(
        &["diff"],
        Some(r#"{"m":3,"k":1,"domain":[1],"values":[-2]}"#),
    );
    let (code, second, _) = run_bin(&["diff"], Some(&first));
    assert_eq!(code, 0);
    assert_eq!(second, "{\"terms\":[]}\n");
}
