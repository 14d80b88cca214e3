use std::io::Write;

use tempiric::cktheory::{verify_suite, DEFAULT_SEED};
use tempiric::rational::int;
use tempiric::weights::enumerate_ktypes;
use tempiric::{builtin, load_path, load_str, Error, Label};

fn sp11_json() -> serde_json::Value {
    serde_json::from_str(&builtin("Sp11").unwrap().to_json()).unwrap()
}

#[test]
fn builtin_documents_load_from_disk() {
    let dir = std::env::temp_dir().join(format!("tempiric-group-files-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for name in ["SL2R", "SO31", "Sp11"] {
        let path = dir.join(format!("{name}.json"));
        std::fs::File::create(&path).unwrap().write_all(builtin(name).unwrap().to_json().as_bytes()).unwrap();
        assert_eq!(load_path(&path).unwrap(), builtin(name).unwrap());
    }
    std::fs::remove_dir_all(&dir).unwrap();
    assert!(load_path(dir.join("missing.json")).is_err());
}

#[test]
fn field_errors_name_the_field() {
    let cases: Vec<(&str, serde_json::Value, &str)> = vec![
        ("gram", serde_json::json!([["1", "1/2"], ["0", "1"]]), "gram"),
        ("gram", serde_json::json!([["1", "0"], ["0", "-1"]]), "gram"),
        ("two_rho_c", serde_json::json!([2]), "two_rho_c"),
        ("branching_rule", serde_json::json!("parity"), "branching_rule"),
        ("equal_rank", serde_json::json!(false), "ds"),
        ("weyl_on_mhat", serde_json::json!({"table": [[[1], [2]]]}), "weyl_on_mhat"),
    ];
    for (field, value, expected) in cases {
        let mut doc = sp11_json();
        doc[field] = value;
        match load_str(&doc.to_string()) {
            Err(Error::Validation { field, .. }) => assert!(field.starts_with(expected), "{field}"),
            other => panic!("{field}: expected a validation error, got {other:?}"),
        }
    }
}

#[test]
fn malformed_documents_are_parse_errors() {
    for text in ["", "{", "[]", "{\"name\": 3}", "null"] {
        assert!(matches!(load_str(text), Err(Error::Parse(_))), "{text:?}");
    }
    let mut doc = sp11_json();
    doc["extra"] = serde_json::json!(1);
    assert!(matches!(load_str(&doc.to_string()), Err(Error::Parse(_))));
}

#[test]
fn rescaled_form_changes_windows_not_verdicts() {
    let mut doc = sp11_json();
    doc["name"] = serde_json::json!("Sp11-scaled");
    doc["gram"] = serde_json::json!([["1/2", "0"], ["0", "1/2"]]);
    let scaled = load_str(&doc.to_string()).unwrap();
    let plain = builtin("Sp11").unwrap();
    assert_eq!(enumerate_ktypes(&scaled, &int(20)).unwrap(), enumerate_ktypes(&plain, &int(40)).unwrap());
    assert!(enumerate_ktypes(&scaled, &int(20)).unwrap().contains(&Label(vec![2, 2])));
    let report = verify_suite(&scaled, &int(30), DEFAULT_SEED).unwrap();
    assert!(report.passed(), "{report}");
}

#[test]
fn corrupted_rho_fails_verification_with_a_named_check() {
    let mut doc = sp11_json();
    doc["two_rho_c"] = serde_json::json!([2, 0]);
    let bad = load_str(&doc.to_string()).unwrap();
    let report = verify_suite(&bad, &int(41), DEFAULT_SEED).unwrap();
    let failure = report.first_failure().expect("a failing check");
    assert!(!failure.name.is_empty());
    assert!(failure.counterexample.as_deref().is_some_and(|c| !c.is_empty()));
}
