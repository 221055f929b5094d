//! End-to-end tests of the `doring` binary: exit codes, report content and
//! determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn repo_config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_doring"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_config(name: &str, command: &str, extra: &[&str]) -> Output {
    let cfg = repo_config(name);
    let mut args = vec![
        "--config".to_string(),
        cfg.display().to_string(),
        "--command".to_string(),
        command.to_string(),
    ];
    args.extend(extra.iter().map(|s| s.to_string()));
    Command::new(env!("CARGO_BIN_EXE_doring"))
        .args(&args)
        .output()
        .expect("binary runs")
}

#[test]
fn validate_good_fixture_exits_zero() {
    let out = run_config("heisenberg_sridharan.json", "validate", &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn validate_bad_cocycle_exits_one_and_names_the_triple() {
    let out = run_config("bad_cocycle.json", "validate", &[]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("presentation-confluence"), "{text}");
    assert!(text.contains("(z, y, x)"), "{text}");
}

#[test]
fn cohomology_tables() {
    let tmp = std::env::temp_dir().join("doring-abelian3.json");
    let out = run_config(
        "abelian3_trivial.json",
        "cohomology",
        &["--out", tmp.to_str().unwrap()],
    );
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&tmp).unwrap()).unwrap();
    assert_eq!(report["betti"], serde_json::json!([1, 3, 3, 1]));

    let out = run_config("sl2_trivial.json", "homology", &[]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("[1, 0, 0, 1]"));
}

#[test]
fn field_override_preserves_integral_results() {
    let out = run_config("abelian3_trivial.json", "cohomology", &["--field", "fp:10007"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("[1, 3, 3, 1]"));
}

#[test]
fn non_prime_field_is_a_config_error() {
    let out = run_config("abelian3_trivial.json", "cohomology", &["--field", "fp:4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not prime"));
}

#[test]
fn unknown_command_is_a_config_error() {
    let out = run_config("abelian3_trivial.json", "frobnicate", &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn schema_errors_name_the_entry() {
    let dir = std::env::temp_dir();
    let path = dir.join("doring-bad-entry.json");
    let text = std::fs::read_to_string(repo_config("abelian3_trivial.json")).unwrap();
    let broken = text.replace("\"mul\": [[0, 0, 0, \"1\"]]", "\"mul\": [[0, 9, 0, \"1\"]]");
    std::fs::write(&path, broken).unwrap();
    let out = run(&[
        "--config",
        path.to_str().unwrap(),
        "--command",
        "validate",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("algebra.mul[0]"));

    let unknown = text.replace("\"schema\": 1,", "\"schema\": 1, \"mystery\": 3,");
    std::fs::write(&path, unknown).unwrap();
    let out = run(&[
        "--config",
        path.to_str().unwrap(),
        "--command",
        "validate",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn weyl_symmetric_report_values_and_determinism() {
    let a = std::env::temp_dir().join("doring-weyl-a.json");
    let b = std::env::temp_dir().join("doring-weyl-b.json");
    for path in [&a, &b] {
        let out = run_config("weyl.json", "symmetric", &["--out", path.to_str().unwrap()]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let ja = std::fs::read_to_string(&a).unwrap();
    let jb = std::fs::read_to_string(&b).unwrap();
    assert_eq!(ja, jb, "reports must be byte-identical across runs");
    let report: serde_json::Value = serde_json::from_str(&ja).unwrap();
    let bounds: Vec<u64> = report["truncated"]["degrees"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["lower_bound"].as_u64().unwrap())
        .collect();
    assert_eq!(bounds, vec![1, 0, 0]);
    let bounds: Vec<u64> = report["truncated_homology"]["degrees"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["lower_bound"].as_u64().unwrap())
        .collect();
    assert_eq!(bounds, vec![0, 0, 1]);
}

#[test]
fn compare_and_products_pass() {
    for (cfg, cmd) in [
        ("heisenberg_sridharan.json", "compare"),
        ("dual_numbers.json", "compare"),
        ("dual_numbers.json", "cup"),
        ("dual_numbers.json", "cap"),
        ("abelian3_trivial.json", "compare"),
    ] {
        let out = run_config(cfg, cmd, &["--seed", "5"]);
        assert!(
            out.status.success(),
            "{cfg} {cmd}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
        let text = String::from_utf8_lossy(&out.stdout);
        assert!(!text.contains("FAIL"), "{text}");
    }
}

#[test]
fn regular_module_runs_truncated_reports() {
    let out = run_config("dual_numbers.json", "cohomology", &[]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("truncated cohomology"), "{text}");
    assert!(text.contains("lower bounds [1, "), "{text}");
}
