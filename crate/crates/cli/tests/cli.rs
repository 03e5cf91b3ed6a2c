use std::process::{Command, Output};

fn gelfand(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gelfand"))
        .args(args)
        .env_remove("GELFAND_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn build_bc3_json() {
    let out = gelfand(&["build", "--type", "bc", "--rank", "3", "--family", "m", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 20);
    assert_eq!(doc["edges"].as_array().unwrap().len(), 36);
    assert_eq!(doc["type"], "BC");
    assert_eq!(doc["rank"], 3);
    assert_eq!(doc["family"], "m");
}

#[test]
fn stats_row_s5() {
    let out = gelfand(&["stats", "--type", "a", "--rank", "5", "--family", "n"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "n,A,4,26,57,{1},3,7,7\n");
    let out = gelfand(&["stats", "--type", "a", "--rank", "5", "--family", "n", "--header"]);
    assert!(stdout(&out).starts_with("family,type,rank,vertices,edges,weights,wcc,cells,molecules\n"));
}

#[test]
fn stats_quotes_multi_weight_sets() {
    let out = gelfand(&["stats", "--type", "bc", "--rank", "4"]);
    assert_eq!(stdout(&out), "m,BC,4,76,206,\"{-1,1}\",3,15,15\n");
}

#[test]
fn verify_duality_passes() {
    let out = gelfand(&["verify", "duality", "--type", "bc", "--rank", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("PASS"));
    let out = gelfand(&["verify", "duality", "--type", "a", "--rank", "3"]);
    assert!(!out.status.success());
}

#[test]
fn verify_targets_pass() {
    for target in ["axioms", "table", "phi", "admissible", "trace"] {
        let out = gelfand(&["verify", target, "--type", "d", "--rank", "3"]);
        assert!(out.status.success(), "{target}: {}", stdout(&out));
    }
}

#[test]
fn verify_trace_d4_reports_failure() {
    let out = gelfand(&["verify", "trace", "--type", "d", "--rank", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("FAIL"));
}

#[test]
fn tilde_requires_type_d() {
    let out = gelfand(&["build", "--type", "bc", "--rank", "2", "--family", "m-tilde"]);
    assert!(!out.status.success());
    let out = gelfand(&["build", "--type", "d", "--rank", "3", "--family", "n-tilde", "--format", "dot"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("digraph"));
}

#[test]
fn rank_cap_names_the_cap() {
    let out = gelfand(&["stats", "--type", "bc", "--rank", "6"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap 5"));
}

#[test]
fn enumerate_and_cells() {
    let out = gelfand(&["enumerate", "--type", "a", "--rank", "4"]);
    assert_eq!(stdout(&out).lines().count(), 10);
    let out = gelfand(&["cells", "--type", "d", "--rank", "4"]);
    assert_eq!(stdout(&out).lines().count(), 10);
    let out = gelfand(&["cells", "--type", "d", "--rank", "4", "--molecules"]);
    assert_eq!(stdout(&out).lines().count(), 11);
}

#[test]
fn trace_table_s4() {
    let out = gelfand(&["trace", "--type", "a", "--rank", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1 + 5);
    assert!(text.contains("\"1,2,3,4\",1,10,10,10,ok"));
}

#[test]
fn export_writes_into_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_gelfand"))
        .args(["export", "--type", "a", "--rank", "3", "--format", "dot"])
        .env("GELFAND_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let path = dir.path().join("m_S_3.dot");
    assert!(std::fs::read_to_string(path).unwrap().starts_with("digraph"));
    let explicit = dir.path().join("nested/g.json");
    let out = gelfand(&["export", "--type", "a", "--rank", "3", "--out", explicit.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(explicit.exists());
}

#[test]
fn output_is_deterministic() {
    let args = ["build", "--type", "d", "--rank", "4", "--format", "json", "--threads", "3"];
    assert_eq!(gelfand(&args).stdout, gelfand(&args).stdout);
    let serial = gelfand(&["build", "--type", "d", "--rank", "4", "--format", "json"]);
    assert_eq!(gelfand(&args).stdout, serial.stdout);
}
