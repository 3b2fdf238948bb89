//! End-to-end CLI tests: the exit-code contract, file/stdin input, the
//! report formats, and run-to-run determinism.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_corering"))
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, content).unwrap();
    path
}

fn tempdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("corering-cli-{tag}-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn compute_core_success_and_failure() {
    let dir = tempdir("core");
    let a = write(&dir, "a.txt", "Q 2\n1 1\n0 0\n");
    let out = run(bin().args(["compute", "--kind", "core"]).arg(&a));
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("\"1\""));
    assert!(text.contains("xa^2 = a"));

    let nil = write(&dir, "nil.txt", "Q 2\n0 1\n0 0\n");
    let out = run(bin().args(["compute", "--kind", "core"]).arg(&nil));
    assert_eq!(out.status.code(), Some(2), "nonexistence exits 2");
    let text = stdout_of(&out);
    assert!(text.contains("not-core-invertible"));
    assert!(text.contains("index > 1"));
}

#[test]
fn compute_weighted_core_rejects_bad_weight() {
    let dir = tempdir("weight");
    let a = write(&dir, "a.txt", "Q 2\n1 0\n0 1\n");
    let e = write(&dir, "e.txt", "Q 2\n1 1\n0 1\n"); // not Hermitian
    let out = run(bin()
        .args(["compute", "--kind", "weighted-core", "--weight"])
        .arg(&e)
        .arg(&a));
    assert_eq!(out.status.code(), Some(1), "invalid weight exits 1");
    assert!(stdout_of(&out).contains("invalid-weight"));
}

#[test]
fn compute_reads_stdin_and_json_elements() {
    use std::io::Write as _;
    let mut child = bin()
        .args(["compute", "--kind", "mp", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(b"ZN 1 6\n5\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));

    // JSON element files are accepted transparently.
    let dir = tempdir("json-elem");
    let a = write(
        &dir,
        "a.json",
        r#"{"spec":{"domain":"Q","dim":2,"involution":"transpose"},"entries":[["1","1"],["0","0"]]}"#,
    );
    let out = run(bin().args(["compute", "--kind", "core"]).arg(&a));
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_pass_and_fail_exit_codes() {
    let dir = tempdir("verify");
    let a = write(&dir, "a.txt", "ZN 1 6\n2\n");
    let good = write(&dir, "x.txt", "ZN 1 6\n2\n");
    let bad = write(&dir, "y.txt", "ZN 1 6\n5\n");
    let out = run(bin()
        .args(["verify", "--kind", "core"])
        .arg(&a)
        .arg(&good));
    assert_eq!(out.status.code(), Some(0));
    let out = run(bin().args(["verify", "--kind", "core"]).arg(&a).arg(&bad));
    assert_eq!(out.status.code(), Some(3), "failed verification exits 3");
}

#[test]
fn law_known_failure_pair_reports_equivalence() {
    let dir = tempdir("law39");
    let a = write(&dir, "a.txt", "ZN 2 2\n1 1\n0 1\n");
    let b = write(&dir, "b.txt", "ZN 2 2\n1 0\n1 1\n");
    let out = run(bin()
        .args(["law", "--id", "thm39"])
        .arg(&a)
        .arg(&b));
    assert_eq!(out.status.code(), Some(0), "equivalence holds -> exit 0");
    let text = stdout_of(&out);
    assert!(text.contains("EquivalenceHolds"));
    // Both biconditional sides are false for this pair.
    assert_eq!(text.matches("\"satisfied\": false").count(), 2);
}

#[test]
fn law_identity_pair_holds() {
    let dir = tempdir("law32");
    let one = write(&dir, "one.txt", "ZN 1 6\n1\n");
    let out = run(bin()
        .args(["law", "--id", "thm32"])
        .arg(&one)
        .arg(&one));
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("ImplicationHolds"));
}

#[test]
fn law_mismatched_carriers_exit_1() {
    let dir = tempdir("mismatch");
    let a = write(&dir, "a.txt", "ZN 1 6\n1\n");
    let b = write(&dir, "b.txt", "ZN 1 8\n1\n");
    let out = run(bin().args(["law", "--id", "thm32"]).arg(&a).arg(&b));
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_of(&out).contains("spec-mismatch"));
}

#[test]
fn mine_exhaustive_clean_and_infinite_carrier() {
    let out = run(bin().args([
        "mine", "--domain", "zn", "--modulus", "2", "--dim", "2", "--law", "thm34", "--mode",
        "exhaustive",
    ]));
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("\"counterexamples\": 0"));

    let out = run(bin().args([
        "mine", "--domain", "q", "--dim", "2", "--law", "thm34", "--mode", "exhaustive",
    ]));
    assert_eq!(out.status.code(), Some(1), "infinite carrier exits 1");
    assert!(stdout_of(&out).contains("infinite-carrier"));
}

#[test]
fn mine_random_requires_seed() {
    let out = run(bin().args([
        "mine", "--domain", "zn", "--modulus", "6", "--dim", "1", "--law", "thm32", "--mode",
        "random", "--samples", "10",
    ]));
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_of(&out).contains("seed"));
}

#[test]
fn mine_determinism_across_runs_and_workers() {
    let dir = tempdir("determinism");
    let strip = |path: &Path| -> serde_json::Value {
        let mut v: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    let r1 = dir.join("r1.json");
    let r2 = dir.join("r2.json");
    for (out_path, workers) in [(&r1, "1"), (&r2, "4")] {
        let out = run(bin()
            .args([
                "mine", "--domain", "zn", "--modulus", "6", "--dim", "1", "--law", "weighted",
                "--mode", "random", "--seed", "7", "--samples", "120", "--workers", workers,
            ])
            .arg("--out")
            .arg(out_path));
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(
        serde_json::to_string(&strip(&r1)).unwrap(),
        serde_json::to_string(&strip(&r2)).unwrap(),
        "same seed must give identical contents regardless of workers"
    );
}

#[test]
fn mine_budget_partial_exits_4() {
    let out = run(bin().args([
        "mine",
        "--domain",
        "zn",
        "--modulus",
        "2",
        "--dim",
        "2",
        "--law",
        "thm32",
        "--mode",
        "exhaustive",
        "--max-inputs",
        "10",
    ]));
    assert_eq!(out.status.code(), Some(4), "partial report exits 4");
    assert!(stdout_of(&out).contains("\"partial\": true"));
}

#[test]
fn mine_classify_and_csv() {
    let out = run(bin().args([
        "mine", "--domain", "zn", "--modulus", "6", "--dim", "1", "--classify",
    ]));
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("\"units\": 2"));
    assert!(text.contains("\"idempotents\": 4"));

    let out = run(bin().args([
        "mine", "--domain", "zn", "--modulus", "6", "--dim", "1", "--law", "thm32", "--format",
        "csv",
    ]));
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.starts_with("law,domain,dim,modulus"));
    assert!(text.contains("thm32,ZN,1,6"));
}

#[test]
fn classify_element_report() {
    let dir = tempdir("classify");
    let a = write(&dir, "a.txt", "ZN 1 6\n3\n");
    let out = run(bin().args(["classify", "--element"]).arg(&a));
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("\"idempotent\": true"));
    assert!(text.contains("\"core_invertible\": true"));
    assert!(text.contains("\"unit\": false"));
}

#[test]
fn config_file_provides_defaults_and_flags_override() {
    let dir = tempdir("config");
    let config = write(
        &dir,
        "config.json",
        r#"{"enumeration_bound": 4, "worker_count": 2}"#,
    );
    // Bound 4 from the config rejects Z_6.
    let out = run(bin()
        .arg("--config")
        .arg(&config)
        .args(["mine", "--domain", "zn", "--modulus", "6", "--dim", "1", "--law", "thm32"]));
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_of(&out).contains("carrier-too-large"));
    // The flag overrides the config.
    let out = run(bin()
        .arg("--config")
        .arg(&config)
        .args([
            "--bound", "100", "mine", "--domain", "zn", "--modulus", "6", "--dim", "1", "--law",
            "thm32",
        ]));
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_1() {
    let out = run(bin().args(["compute", "--kind", "nonsense", "x.txt"]));
    assert_eq!(out.status.code(), Some(1));
    let out = run(bin().args(["law", "--id", "thm99", "a", "b"]));
    assert_eq!(out.status.code(), Some(1));
}
