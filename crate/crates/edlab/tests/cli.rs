//! End-to-end checks of the command-line interface: file I/O, schema
//! stability, and byte-identical reruns.

use std::io::Write;
use std::process::Command;

fn edlab() -> Command {
    Command::new(env!("CARGO_BIN_EXE_edlab"))
}

fn write_tmp(name: &str, content: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join("edlab-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(content.as_bytes()).unwrap();
    path
}

#[test]
fn gedeg_reports_reference_values() {
    let out = edlab()
        .args(["gedeg", "--d", "1,1", "--n", "1,1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["generic_ed_degree"], "6");
    assert_eq!(v["result"]["frobenius_ed_degree"], "2");
    assert_eq!(v["tool_version"], env!("CARGO_PKG_VERSION"));
    assert!(v["inputs_digest"].is_string());
    assert!(v["seed"].is_number());
}

#[test]
fn tables_contain_golden_corners() {
    let out = edlab().args(["tables"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("2733508864"));
    assert!(text.contains("3628800"));
    assert!(text.contains("740526303"));
    assert!(text.contains("2205"));
}

#[test]
fn quadric_pipeline() {
    let f = write_tmp(
        "f.json",
        r#"[["0","0","0","1/2"],["0","0","-1/2","0"],["0","-1/2","0","0"],["1/2","0","0","0"]]"#,
    );
    let q = write_tmp(
        "q.json",
        r#"[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]"#,
    );
    let out = edlab()
        .args(["quadric", "--f", f.to_str().unwrap(), "--q", q.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["ed_degree"], 2);
    assert_eq!(v["result"]["ed_defect"], 4);
    assert_eq!(v["result"]["segre_symbol"], "[(1,1),(1,1)]");
}

#[test]
fn rnc_rejects_floats_and_accepts_exact() {
    let bad = write_tmp("qbad.json", r#"[[1.5,0,0],[0,2,0],[0,0,1]]"#);
    let out = edlab()
        .args(["rnc", "--d", "2", "--q", bad.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("exact"), "stderr: {err}");

    let good = write_tmp("qgood.json", r#"[[1,0,0],[0,2,0],[0,0,1]]"#);
    let out = edlab()
        .args(["rnc", "--d", "2", "--q", good.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["ed_degree"], 2);
    assert_eq!(v["result"]["defect"], 2);
}

#[test]
fn critpoints_is_byte_identical_across_reruns() {
    let u = write_tmp("u.json", r#"[[3,0],[0,1]]"#);
    let q = write_tmp(
        "qid.json",
        r#"[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]"#,
    );
    let run = || {
        edlab()
            .args([
                "critpoints",
                "matrix",
                "--u",
                u.to_str().unwrap(),
                "--q",
                q.to_str().unwrap(),
                "--seed",
                "7",
                "--starts",
                "120",
            ])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout, "reports must be byte-identical");
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["result"]["census"]["m"], serde_json::json!([2, 4, 2]));
    assert_eq!(v["result"]["checks"]["passed"], true);
    assert_eq!(v["seed"], 7);
}

#[test]
fn edpoly_pipeline() {
    let u = write_tmp("uvec.json", r#"["3","1","-2"]"#);
    let q = write_tmp("qfrob.json", r#"[[1,0,0],[0,2,0],[0,0,1]]"#);
    let out = edlab()
        .args([
            "edpoly",
            "--d",
            "2",
            "--u",
            u.to_str().unwrap(),
            "--q",
            q.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["degree"], 2);
    assert_eq!(v["result"]["coefficients"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_subcommand_scopes() {
    let out = edlab().args(["verify", "formulas"]).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS tables-binary-segre"));
    assert!(text.contains("PASS formula-triangle"));

    let out = edlab().args(["verify", "bogus"]).output().unwrap();
    assert!(!out.status.success());
}

#[test]
fn malformed_gedeg_input_is_a_usage_error() {
    let out = edlab().args(["gedeg", "--d", "1,1", "--n", "1"]).output().unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("example"), "stderr should show an example: {err}");
}
