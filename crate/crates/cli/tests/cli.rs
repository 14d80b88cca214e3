use std::process::{Command, Output};

use serde_json::Value;

fn tempiric(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tempiric")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = tempiric(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    stdout(&out)
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

fn group_file(dir: &tempfile::TempDir, name: &str, contents: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn tempiric_table_sl2r_csv() {
    let text = ok(&["tempiric-table", "--group", "SL2R", "--bound", "9"]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("kind,parameters,minimal_ktype,split,norm"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 7);
    assert_eq!(rows.iter().filter(|r| r.starts_with("DiscreteSeries")).count(), 4);
    assert_eq!(rows.iter().filter(|r| r.contains(",true,")).count(), 2);
}

#[test]
fn tempiric_table_so31_json() {
    let records = json(&["tempiric-table", "--group", "SO31", "--bound", "16", "--format", "json"]);
    let records = records.as_array().unwrap();
    // K-types 0..3 have norms 1, 4, 9, 16: one unsplit constituent each
    assert_eq!(records.len(), 4);
    assert!(records.iter().all(|r| r["kind"] == "PSConstituent" && r["split"] == false));
    let text = ok(&["tempiric-table", "--group", "SO31", "--bound", "16", "--format", "json"]);
    let at = |k: &str| text.find(&format!("\"{k}\"")).unwrap();
    assert!(at("kind") < at("parameters") && at("parameters") < at("minimal_ktype"));
    assert!(at("minimal_ktype") < at("split") && at("split") < at("norm"));
}

#[test]
fn usage_errors_exit_2() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["tempiric-table", "--group", "bogus", "--bound", "3"],
        vec!["tempiric-table", "--group", "SL2R"],
        vec!["tempiric-table", "--group", "SL2R", "--bound", "-1"],
        vec!["tempiric-table", "--group", "SL2R", "--bound", "1/0"],
        vec!["tempiric-table", "--bound", "3"],
        vec!["tempiric-table", "--group", "SL2R", "--bound", "3", "--format", "svg"],
        vec!["figure", "--group", "Sp11", "--grid-bound", "-2"],
        vec!["branch", "--group", "Sp11", "--label", "(1,-2)"],
        vec!["branch", "--group", "Sp11"],
        vec!["nonsense"],
        vec![],
    ];
    for args in cases {
        let out = tempiric(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    let out = tempiric(&["tempiric-table", "--group", "bogus", "--bound", "3"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("usage"));
}

#[test]
fn malformed_group_files_exit_2_without_panicking() {
    let dir = tempfile::tempdir().unwrap();
    let sp11: Value = serde_json::from_str(&ok(&["catalog", "--group", "Sp11"])).unwrap();
    let mut nonsymmetric = sp11.clone();
    nonsymmetric["gram"] = serde_json::json!([["1", "1"], ["0", "1"]]);
    let mut bad_table = sp11.clone();
    bad_table["weyl_on_mhat"] = serde_json::json!({"table": [[[1], [3]]]});
    let mut huge = sp11.clone();
    huge["two_rho_c"] = serde_json::json!([9223372036854775807i64, 2]);
    let texts = [
        String::new(),
        "{".into(),
        "\u{0}\u{1}".into(),
        "[1, 2, 3]".into(),
        nonsymmetric.to_string(),
        bad_table.to_string(),
        huge.to_string(),
    ];
    for (i, text) in texts.iter().enumerate() {
        let path = group_file(&dir, &format!("g{i}.json"), text);
        for cmd in ["verify", "tempiric-table", "ck-matrix", "ktypes"] {
            let out = tempiric(&[cmd, "--group-file", &path, "--bound", "10"]);
            assert_eq!(out.status.code(), Some(2), "{cmd} on {text}: {}", String::from_utf8_lossy(&out.stderr));
            assert!(!String::from_utf8_lossy(&out.stderr).contains("panicked"));
        }
    }
    let missing = dir.path().join("missing.json");
    let out = tempiric(&["ktypes", "--group-file", missing.to_str().unwrap(), "--bound", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_builtins_pass() {
    for (group, bound) in [("SO31", "25"), ("Sp11", "41"), ("SL2R", "9")] {
        let text = ok(&["verify", "--group", group, "--bound", bound]);
        assert!(text.starts_with(&format!("# verify group={group} bound={bound} seed=20240917")), "{text}");
        assert!(text.contains("result: pass"));
        assert!(!text.contains("FAIL"));
    }
    let text = ok(&["verify", "--group", "SO31", "--bound", "9", "--seed", "7"]);
    assert!(text.lines().next().unwrap().ends_with("seed=7"));
}

#[test]
fn verify_corrupted_rho_exits_1_and_names_the_check() {
    let dir = tempfile::tempdir().unwrap();
    let mut doc: Value = serde_json::from_str(&ok(&["catalog", "--group", "Sp11"])).unwrap();
    doc["name"] = Value::from("Sp11-corrupted");
    doc["two_rho_c"] = serde_json::json!([2, 0]);
    let path = group_file(&dir, "corrupted.json", &doc.to_string());
    let out = tempiric(&["verify", "--group-file", &path, "--bound", "41"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    let line = text.lines().find(|l| l.starts_with("first failure: ")).expect(&text);
    assert!(line.starts_with("first failure: catalog_consistency: "), "{line}");
    assert!(String::from_utf8_lossy(&out.stderr).contains("catalog_consistency"));
}

#[test]
fn ck_matrix_so31_has_inverse() {
    let m = json(&["ck-matrix", "--group", "SO31", "--bound", "16", "--format", "json"]);
    assert_eq!(m["rows"], serde_json::json!(["0", "1", "2", "3"]));
    assert_eq!(m["entries"].as_array().unwrap().len(), 10);
    assert!(m["resolution"].as_array().unwrap().iter().all(|r| r == "exact"));
    assert!(m.get("refusal").is_none());
    let inv = m["inverse"]["entries"].as_array().unwrap();
    assert_eq!(inv.len(), 7);
    assert!(inv.contains(&serde_json::json!([1, 0, -1])));
    let keys: Vec<&str> = m.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    assert!(keys.contains(&"cols") && keys.contains(&"bound") && keys.contains(&"group"));
}

#[test]
fn ck_matrix_sp11_refuses_odd_columns() {
    let m = json(&["ck-matrix", "--group", "Sp11", "--bound", "20", "--format", "json"]);
    assert!(m.get("inverse").is_none());
    assert!(!m["entries"].as_array().unwrap().is_empty());
    let cols: Vec<String> = m["refusal"]["columns"].as_array().unwrap().iter().map(|c| c.as_str().unwrap().to_string()).collect();
    assert!(!cols.is_empty());
    for c in &cols {
        let sigma: i64 = c.split("sigma={").nth(1).unwrap().split('}').next().unwrap().parse().unwrap();
        assert_eq!(sigma % 2, 1, "{c}");
        assert!(c.contains(";split"));
    }
    let aggregate = m["resolution"].as_array().unwrap().iter().filter(|r| *r == "aggregate-only").count();
    assert_eq!(aggregate, cols.len());
}

#[test]
fn ck_matrix_sl2r_csv() {
    let text = ok(&["ck-matrix", "--group", "SL2R", "--bound", "9", "--format", "csv"]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("matrix,i,j,row,col,value,resolution"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.iter().any(|r| r.starts_with("mult,")));
    assert!(rows.iter().any(|r| r.starts_with("inverse,")));
    assert!(!rows.iter().any(|r| r.starts_with("refusal,")));
    let sp = ok(&["ck-matrix", "--group", "Sp11", "--bound", "20", "--format", "csv"]);
    assert!(sp.lines().any(|r| r.starts_with("refusal,")));
    assert!(!sp.lines().any(|r| r.starts_with("inverse,")));
}

#[test]
fn figures() {
    let sl2 = ok(&["figure", "--group", "SL2R", "--grid-bound", "4"]);
    assert!(sl2.starts_with("# derived"));
    let marks: String = sl2.lines().nth(3).unwrap().split_whitespace().collect();
    assert_eq!(marks, "OOO#^#OOO");
    assert!(sl2.contains("pairs: -1-1"));

    let dot = ok(&["figure", "--group", "Sp11", "--grid-bound", "6", "--format", "dot"]);
    assert!(dot.contains("graph \"Sp11\" {"));
    let edges: Vec<&str> = dot.lines().filter(|l| l.contains(" -- ")).collect();
    assert_eq!(edges.len(), 6);
    assert_eq!(dot.matches("shape=square").count(), 12);

    let svg = ok(&["figure", "--group", "Sp11", "--grid-bound", "3", "--format", "svg"]);
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));

    let so = ok(&["figure", "--group", "SO31", "--grid-bound", "5"]);
    assert!(so.contains("triangles=6 squares=0 pairs=0 circles=0"));
}

#[test]
fn catalog_ktypes_and_branch() {
    let list = ok(&["catalog"]);
    assert_eq!(list.lines().count(), 3);
    assert!(list.lines().all(|l| l.contains(": K = ")));
    let docs = json(&["catalog", "--format", "json"]);
    assert_eq!(docs.as_array().unwrap().len(), 3);

    let k = ok(&["ktypes", "--group", "Sp11", "--bound", "10"]);
    assert_eq!(k, "label,norm,dim\n\"(0,0)\",8,1\n");
    let k = ok(&["ktypes", "--group", "Sp11", "--bound", "13"]);
    assert_eq!(k, "label,norm,dim\n\"(0,0)\",8,1\n\"(0,1)\",13,2\n\"(1,0)\",13,2\n");
    let k = json(&["ktypes", "--group", "SL2R", "--bound", "4", "--format", "json"]);
    let labels: Vec<&str> = k.as_array().unwrap().iter().map(|r| r["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["0", "-1", "1", "-2", "2"]);

    let b = ok(&["branch", "--group", "Sp11", "--label", "(1,2)"]);
    assert_eq!(b, "ktype,mtype,mult,dim\n\"(1,2)\",1,1,2\n\"(1,2)\",3,1,4\n");
    let b = json(&["branch", "--group", "SO31", "--bound", "4", "--format", "json"]);
    assert_eq!(b.as_array().unwrap().len(), 1 + 3);
}

#[test]
fn outputs_are_deterministic_and_out_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("verify.txt");
    let args = ["verify", "--group", "Sp11", "--bound", "20", "--out", path.to_str().unwrap()];
    assert!(ok(&args).is_empty());
    let first = std::fs::read_to_string(&path).unwrap();
    ok(&args);
    assert_eq!(first, std::fs::read_to_string(&path).unwrap());
    for args in [
        vec!["ck-matrix", "--group", "Sp11", "--bound", "30"],
        vec!["tempiric-table", "--group", "SL2R", "--bound", "50", "--format", "json"],
        vec!["figure", "--group", "Sp11", "--grid-bound", "4", "--format", "svg"],
    ] {
        assert_eq!(ok(&args), ok(&args));
    }
}
