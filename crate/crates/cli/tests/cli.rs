use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use trop_theta_cli::run;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name]
        .iter()
        .collect();
    p.display().to_string()
}

fn json_of(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["trop-theta"];
    all.extend_from_slice(args);
    let out = run(all);
    let body = if out.code == 0 || out.code == 1 {
        &out.stdout
    } else {
        &out.stderr
    };
    (out.code, serde_json::from_str(body).unwrap_or(Value::Null))
}

#[test]
fn binary_reports_h0() {
    let out = Command::new(env!("CARGO_BIN_EXE_trop-theta"))
        .args(["h0", &data("hexagonal.json")])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["h0"], 4);
    assert_eq!(v["polyhedron_dimension"], 4);
}

#[test]
fn binary_exit_codes() {
    let bad = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(
        bad.path(),
        r#"{"lattice": [["1"]], "Q": [["1/2"]], "alpha": ["0"]}"#,
    )
    .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_trop-theta"))
        .args(["h0", bad.path().to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let e: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(e["error"]["kind"], "IntegralityViolation");

    let out = Command::new(env!("CARGO_BIN_EXE_trop-theta"))
        .args(["divisor", &data("indefinite.json")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn malformed_input_is_a_validation_error() {
    let f = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(
        f.path(),
        r#"{"lattice": [["1", "x"]], "Q": [["1"]], "alpha": ["0"]}"#,
    )
    .unwrap();
    let (code, e) = json_of(&["sections", f.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(e["error"]["kind"], "Parse");
    let (code, _) = json_of(&["no-such-command"]);
    assert_eq!(code, 2);
}

#[test]
fn sections_with_oracle() {
    let (code, v) = json_of(&["sections", &data("circle_q3.json"), "--oracle"]);
    assert_eq!(code, 0);
    assert_eq!(v["h0"], 3);
    assert_eq!(
        v["generators"][1]["cell_vertices"],
        serde_json::json!([["-1/6"], ["5/6"]])
    );
    assert_eq!(v["phi"], serde_json::json!(["0", "0", "0"]));
    assert_eq!(v["oracle"]["agree"], true);
}

#[test]
fn polyhedron_slice_choice() {
    let (code, v) = json_of(&[
        "polyhedron",
        &data("circle_q3.json"),
        "--slice-coordinate",
        "2",
        "--oracle",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["slice_coordinate"], 2);
    assert_eq!(v["slice_vertex_count"], 3);
    assert_eq!(v["oracle"]["agree"], true);
    let (code, _) = json_of(&[
        "polyhedron",
        &data("circle_q3.json"),
        "--slice-coordinate",
        "3",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn max_box_caps_the_search() {
    let (code, e) = json_of(&["sections", &data("hexagonal.json"), "--max-box", "1"]);
    assert_eq!(code, 2);
    assert_eq!(e["error"]["kind"], "TruncationNotCertified");
    let (code, _) = json_of(&["sections", &data("hexagonal.json"), "--max-box", "100000"]);
    assert_eq!(code, 0);
}

#[test]
fn divisor_and_self_intersection() {
    let (_, v) = json_of(&["divisor", &data("grid.json")]);
    assert_eq!(v["balancing"], "Balanced");
    assert_eq!(v["divisor"]["cells"].as_array().unwrap().len(), 2);
    let (code, v) = json_of(&["self-intersect", &data("grid.json"), "--oracle"]);
    assert_eq!(code, 0);
    assert_eq!(v["stable"]["total"], 2);
    assert_eq!(v["formula"], "2");
    let (_, v) = json_of(&["self-intersect", &data("indefinite.json")]);
    assert_eq!(v["formula"], "-2");
    assert_eq!(v["stable"], Value::Null);
}

#[test]
fn intersect_two_bundles() {
    let other = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(
        other.path(),
        r#"{"lattice": [["1","0"],["0","1"]], "Q": [["2","1"],["1","1"]], "alpha": ["1/3","0"]}"#,
    )
    .unwrap();
    let (code, v) = json_of(&[
        "intersect",
        &data("grid.json"),
        "--with",
        other.path().to_str().unwrap(),
        "--oracle",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["stable"]["total"], 3);
    assert_eq!(v["formula"], "3");
    let (code, _) = json_of(&[
        "intersect",
        &data("grid.json"),
        "--with",
        &data("hexagonal.json"),
    ]);
    assert_eq!(code, 2);
}

#[test]
fn rr_cases() {
    for (file, case, sum) in [
        ("hexagonal.json", "1", 4),
        ("zero_form.json", "2b", 2),
        ("zero_form_sectionless.json", "2c", 0),
        ("rank_one.json", "2a", 2),
        ("indefinite.json", "3", 0),
    ] {
        let (code, v) = json_of(&["rr-check", &data(file)]);
        assert_eq!(code, 0, "{file}");
        assert_eq!(v["case"], case, "{file}");
        assert_eq!(
            v["h0_d"].as_u64().unwrap() + v["h0_neg_d"].as_u64().unwrap(),
            sum,
            "{file}"
        );
        assert_eq!(v["matches_case_table"], true, "{file}");
        assert_eq!(v["consistent"], true, "{file}");
    }
    let (code, _) = json_of(&["rr-check", &data("circle_q3.json")]);
    assert_eq!(code, 3);
}

#[test]
fn interpolate_with_oracle() {
    let (code, v) = json_of(&["interpolate", &data("circle_interpolate.json"), "--oracle"]);
    assert_eq!(code, 0);
    assert_eq!(v["contains"], serde_json::json!([true, true]));
    assert_eq!(v["oracle"]["agree"], true);
    let (code, e) = json_of(&["interpolate", &data("circle_q3.json")]);
    assert_eq!(code, 2);
    assert_eq!(e["error"]["kind"], "Parse");
}

#[test]
fn figures_are_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let (code, v) = json_of(&[
            "figures",
            &data("hexagonal.json"),
            "--svg-out",
            dir.path().to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        assert_eq!(v["written"].as_array().unwrap().len(), 6);
    }
    for name in [
        "divisor.svg",
        "polyhedron.svg",
        "self_intersection.svg",
        "figure1.svg",
        "figure2.svg",
        "figure3.svg",
    ] {
        let x = std::fs::read(a.path().join(name)).unwrap();
        let y = std::fs::read(b.path().join(name)).unwrap();
        assert_eq!(x, y, "{name}");
    }
    let poly = std::fs::read_to_string(a.path().join("polyhedron.svg")).unwrap();
    assert_eq!(poly.matches("<circle").count(), 14);
    assert_eq!(poly.matches("<line").count(), 24);
    let (code, _) = json_of(&["figures", &data("hexagonal.json")]);
    assert_eq!(code, 2);
}

#[test]
fn help_succeeds() {
    let (code, _) = json_of(&["--help"]);
    assert_eq!(code, 0);
}
