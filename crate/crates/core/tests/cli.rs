use std::process::{Command, Output};

use disco_top::report::parse_report_json;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_disco-top")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn constants_csv_has_header_and_rows() {
    let out = cli(&["constants", "--n", "1", "--k-max", "5", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,k,exact,lower,upper,provenance"));
    assert_eq!(lines.count(), 5);
}

#[test]
fn inapplicable_bound_exits_with_usage_status() {
    let out = cli(&["bound", "--scenario", "tverberg", "--r", "6", "--d", "19"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("inapplicable"));
    let ok = stdout_json(&cli(&["bound", "--scenario", "tverberg", "--r", "2", "--d", "1"]));
    assert_eq!(ok["bound"], std::f64::consts::PI);
}

#[test]
fn homology_and_vr_subcommands() {
    let h = stdout_json(&cli(&["homology", "--n", "4", "--d", "1", "--deleted-join"]));
    assert_eq!(h["betti"], serde_json::json!([1, 0, 0, 1]));
    let p = stdout_json(&cli(&["homology", "--n", "4", "--d", "1", "--deleted-product", "2"]));
    assert_eq!(p["cells"], serde_json::json!([20, 60, 30]));
    let v = stdout_json(&cli(&["vr", "--n", "6", "--t", "1.0471975511965979"]));
    assert_eq!(v["betti"], serde_json::json!([1, 1]));
    let missing_seed = cli(&["vr", "--k", "2", "--t", "0.5"]);
    assert_eq!(missing_seed.status.code(), Some(2));
}

#[test]
fn estimate_reports_ladder_and_witness() {
    let v = stdout_json(&cli(&["estimate", "--witness", "nonmonotone-step", "--grid", "20"]));
    assert_eq!(v["estimates"]["alpha"]["value"], std::f64::consts::PI);
    assert_eq!(v["verification"]["passed"], true);
    assert!(v["estimates"]["delta"]["ladder"].as_array().unwrap().len() == 4);
}

#[test]
fn witness_export_writes_table_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("tv");
    let out = cli(&["witness", "tverberg-one-point", "--grid", "12", "--out", prefix.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let table = std::fs::read_to_string(dir.path().join("tv.csv")).unwrap();
    assert!(table.starts_with("index,"));
    let side: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("tv.json")).unwrap()).unwrap();
    assert_eq!(side["spec"]["kind"], "tverberg-one-point");
    assert_eq!(side["verification"]["passed"], true);
    assert_eq!(side["hot_spots"].as_array().unwrap().len(), 1);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"experiment": "lemma-suite", "seed": 3, "functions": 5, "pairs": 100}"#).unwrap();
    let out = dir.path().join("rep.json");
    let run = cli(&[
        "experiment",
        "lemma-suite",
        "--config",
        cfg.to_str().unwrap(),
        "--seed",
        "4",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let rep = parse_report_json(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(rep.provenance.seed, Some(4));
    assert_eq!(rep.config["functions"], 5);
    assert!(rep.passed());
    assert!(String::from_utf8_lossy(&run.stderr).lines().all(|l| l.starts_with("PASS ")));
}

#[test]
fn unknown_config_fields_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"experiment": "constants", "colour": 1}"#).unwrap();
    let run = cli(&["experiment", "constants", "--config", cfg.to_str().unwrap()]);
    assert_ne!(run.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&run.stderr).contains("colour"));
}

#[test]
fn thread_count_does_not_change_reports() {
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_disco-top"))
            .args(["experiment", "lemma-suite", "--seed", "11", "--functions", "10", "--format", "csv"])
            .env("DISCO_TOP_THREADS", threads)
            .output()
            .unwrap();
        assert!(out.status.success());
        String::from_utf8(out.stdout).unwrap().lines().filter(|l| !l.contains("wall_time")).collect::<Vec<_>>().join("\n")
    };
    assert_eq!(run("1"), run("3"));
}

#[test]
fn sampled_experiments_require_a_seed() {
    let run = cli(&["experiment", "lemma-suite"]);
    assert_eq!(run.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&run.stderr).contains("seed"));
}
