//! CLI acceptance: determinism across worker counts (criterion 9) and
//! the exit-code / report-shape contract.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn entrolab() -> Command {
    Command::new(env!("CARGO_BIN_EXE_entrolab"))
}

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path
}

fn run_to(config: &Path, out: &Path, extra: &[&str]) -> Output {
    entrolab()
        .arg("run")
        .arg("--config")
        .arg(config)
        .arg("--out")
        .arg(out)
        .args(extra)
        .output()
        .unwrap()
}

const POINTWISE_MARKOV: &str = r#"
experiment = "pointwise"

[source]
kind = "markov"
transition = [[0.9, 0.1], [0.1, 0.9]]

[code]
kind = "huffman"
block = 8

[grid]
n = [8, 16, 64]
trials = 200
seed = 42
"#;

#[test]
fn criterion_9_determinism_across_worker_counts() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), "pointwise.toml", POINTWISE_MARKOV);

    let runs = [
        ("w1", vec!["--workers", "1"]),
        ("w4", vec!["--workers", "4"]),
        ("w4-again", vec!["--workers", "4"]),
        ("default", vec![]),
    ];
    let mut bodies: Vec<(Vec<u8>, Vec<u8>)> = Vec::new();
    for (name, extra) in &runs {
        let out_dir = tmp.path().join(name);
        let output = run_to(&config, &out_dir, extra);
        assert!(output.status.success(), "{name}: {output:?}");
        bodies.push((
            fs::read(out_dir.join("pointwise.csv")).unwrap(),
            fs::read(out_dir.join("pointwise.summary.json")).unwrap(),
        ));
    }
    let identical = bodies.iter().all(|b| *b == bodies[0]);
    println!(
        "criterion 9 determinism: {}",
        if identical { "PASS" } else { "FAIL" }
    );
    assert!(identical, "report bodies differ across worker counts");
}

#[test]
fn rerunning_a_config_is_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(
        tmp.path(),
        "nq.toml",
        r#"
experiment = "nq"

[source]
kind = "iid"
probs = [0.7, 0.3]

[grid]
n = [12, 16]
q = [0.1, 0.5, 0.9]
"#,
    );
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    assert!(run_to(&config, &a, &[]).status.success());
    assert!(run_to(&config, &b, &[]).status.success());
    assert_eq!(
        fs::read(a.join("nq.csv")).unwrap(),
        fs::read(b.join("nq.csv")).unwrap()
    );
    assert_eq!(
        fs::read(a.join("nq.summary.json")).unwrap(),
        fs::read(b.join("nq.summary.json")).unwrap()
    );
    // row count = |n| * |q|
    let csv = fs::read_to_string(a.join("nq.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 2 * 3);
}

#[test]
fn cset_passes_and_entropy_matches_oracle() {
    let tmp = tempfile::tempdir().unwrap();
    let cset = write_config(
        tmp.path(),
        "cset.toml",
        r#"
experiment = "cset"

[source]
kind = "iid"
probs = [0.7, 0.3]

[grid]
n = [16]
epsilon = [0.1]
"#,
    );
    let out = run_to(&cset, &tmp.path().join("cset"), &[]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");

    let entropy = write_config(
        tmp.path(),
        "entropy.toml",
        r#"
experiment = "entropy"

[source]
kind = "iid"
probs = [0.8, 0.2]
"#,
    );
    let out_dir = tmp.path().join("entropy");
    assert!(run_to(&entropy, &out_dir, &[]).status.success());
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("entropy.summary.json")).unwrap())
            .unwrap();
    let h = summary["details"]["entropy_bits_per_symbol"]
        .as_f64()
        .unwrap();
    assert!((h - 0.7219281).abs() <= 1e-6);
}

#[test]
fn config_errors_exit_2() {
    let tmp = tempfile::tempdir().unwrap();

    // epsilon = 0 violates a precondition
    let bad_eps = write_config(
        tmp.path(),
        "bad-eps.toml",
        "experiment = \"cset\"\n[source]\nkind = \"iid\"\nprobs = [0.7, 0.3]\n[grid]\nn = [8]\nepsilon = [0.0]\n",
    );
    let out = run_to(&bad_eps, &tmp.path().join("x"), &[]);
    assert_eq!(out.status.code(), Some(2));

    // malformed TOML reports a line-numbered message
    let bad_toml = write_config(tmp.path(), "bad.toml", "experiment = \"cset\n");
    let out = run_to(&bad_toml, &tmp.path().join("y"), &[]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(msg.contains("line"), "missing line info: {msg}");

    // missing file
    let out = run_to(
        Path::new("/nonexistent/config.toml"),
        &tmp.path().join("z"),
        &[],
    );
    assert_eq!(out.status.code(), Some(2));

    // capacity error names the limit
    let big = write_config(
        tmp.path(),
        "big.toml",
        "experiment = \"encode\"\n[source]\nkind = \"iid\"\nprobs = [0.7, 0.3]\n[grid]\nn = [40]\n",
    );
    let out = run_to(&big, &tmp.path().join("w"), &[]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(msg.contains("1048576"), "missing limit: {msg}");

    // unknown flags are usage errors (clap uses exit code 2)
    let out = entrolab().arg("run").arg("--bogus").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn encode_single_shot_contract() {
    let out = entrolab()
        .args(["encode", "--probs", "0.8,0.2", "--sequence", "0"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("rank 0"));
    assert!(text.contains("length 0"));

    let out = entrolab()
        .args(["encode", "--probs", "0.8,0.2", "--sequence", "11"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("rank 3"));
    assert!(text.contains("codeword 00"));

    let out = entrolab()
        .args(["encode", "--probs", "0.8,0.2", "--sequence", "0,2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn grid_cardinality_matches_row_counts() {
    let tmp = tempfile::tempdir().unwrap();

    let aep = write_config(
        tmp.path(),
        "aep.toml",
        "experiment = \"aep\"\n[source]\nkind = \"iid\"\nprobs = [0.7, 0.3]\n[grid]\nn = [8, 16, 32]\nepsilon = [0.1, 0.2]\n",
    );
    let out_dir = tmp.path().join("aep");
    assert!(run_to(&aep, &out_dir, &[]).status.success());
    let csv = fs::read_to_string(out_dir.join("aep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 3 * 2);

    let avg = write_config(
        tmp.path(),
        "avg.toml",
        "experiment = \"average\"\n[source]\nkind = \"iid\"\nprobs = [0.7, 0.3]\n[grid]\nn = [4, 8, 16, 32]\n",
    );
    let out_dir = tmp.path().join("avg");
    assert!(run_to(&avg, &out_dir, &[]).status.success());
    let csv = fs::read_to_string(out_dir.join("average.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 4);

    let pw = write_config(
        tmp.path(),
        "pw.toml",
        "experiment = \"pointwise\"\n[source]\nkind = \"iid\"\nprobs = [0.7, 0.3]\n[grid]\nn = [8, 16]\ntrials = 10\n",
    );
    let out_dir = tmp.path().join("pw");
    assert!(run_to(&pw, &out_dir, &[]).status.success());
    let csv = fs::read_to_string(out_dir.join("pointwise.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 10 * 2);

    let enc = write_config(
        tmp.path(),
        "enc.toml",
        "experiment = \"encode\"\n[source]\nkind = \"iid\"\nprobs = [0.7, 0.3]\n[grid]\nn = [4]\n",
    );
    let out_dir = tmp.path().join("enc");
    assert!(run_to(&enc, &out_dir, &[]).status.success());
    let csv = fs::read_to_string(out_dir.join("encode.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 16);
    assert!(csv.starts_with("rank,codeword,length\n"));
}

#[test]
fn format_flag_selects_bodies() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(
        tmp.path(),
        "e.toml",
        "experiment = \"entropy\"\n[source]\nkind = \"iid\"\nprobs = [0.5, 0.5]\n",
    );
    let csv_only = tmp.path().join("csv-only");
    assert!(run_to(&config, &csv_only, &["--format", "csv"])
        .status
        .success());
    assert!(csv_only.join("entropy.csv").exists());
    assert!(!csv_only.join("entropy.summary.json").exists());

    let json_only = tmp.path().join("json-only");
    assert!(run_to(&config, &json_only, &["--format", "json"])
        .status
        .success());
    assert!(!json_only.join("entropy.csv").exists());
    assert!(json_only.join("entropy.summary.json").exists());
}

#[test]
fn huffman_table_dump_shape() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(
        tmp.path(),
        "h.toml",
        "experiment = \"encode\"\n[source]\nkind = \"markov\"\ntransition = [[0.9, 0.1], [0.1, 0.9]]\n[code]\nkind = \"huffman\"\nblock = 4\n[grid]\nn = [4]\n",
    );
    let out_dir = tmp.path().join("h");
    let out = run_to(&config, &out_dir, &[]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let csv = fs::read_to_string(out_dir.join("encode.csv")).unwrap();
    assert!(csv.starts_with("block_index,codeword,length\n"));
    assert_eq!(csv.lines().count(), 1 + 16);
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("encode.summary.json")).unwrap())
            .unwrap();
    assert_eq!(summary["verdicts"]["kraft_exactly_one"], true);
    assert_eq!(summary["verdicts"]["prefix_free"], true);
}
