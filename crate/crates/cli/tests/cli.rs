mod common;

use halfdisk_cli::plot::PlotDocument;
use serde_json::Value;

fn stdout_json(args: &[&str]) -> Value {
    let out = common::run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr(out: &std::process::Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn list_examples_matches_generator_ids() {
    let out = common::run(&["--list-examples"]);
    assert!(out.status.success());
    let listed: Vec<String> = String::from_utf8(out.stdout).unwrap().lines().map(String::from).collect();
    assert_eq!(listed, halfdisk::generators::EXAMPLE_IDS);
}

#[test]
fn every_builtin_resolves() {
    for id in ["a3", "b5", "c7", "hesse-a", "hesse-h", "blocks:k=3,b=3,seed=1", "random:k=4,seed=9", "random:k=4,seed=9,scramble=1"] {
        let m = stdout_json(&["example", id]);
        common::validate("matrix", &m).unwrap();
    }
}

#[test]
fn hesse_half_disks() {
    let disks = stdout_json(&["disks", "hesse-h", "--half"]);
    let disks = disks.as_array().unwrap();
    assert_eq!(disks.len(), 9);
    for d in disks {
        assert_eq!(d["center"]["re"], 4.0);
        assert_eq!(d["radius"], 4.0);
        assert_eq!(d["kind"], "half");
    }
}

#[test]
fn a3_half_and_median_disks() {
    let disks = stdout_json(&["disks", "a3", "--half", "--median"]);
    let disks = disks.as_array().unwrap();
    assert_eq!(disks.len(), 6);
    for d in disks {
        assert_eq!((d["center"]["re"].as_f64(), d["radius"].as_f64()), (Some(0.0), Some(1.0)));
    }
    assert_eq!(disks[0]["kind"], "half");
    assert_eq!(disks[5]["kind"], "median");
}

#[test]
fn identity_file_and_default_kinds() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("identity.json");
    let entry = |x: f64| serde_json::json!({"re": x, "im": 0.0});
    let rows: Vec<Value> = (0..4)
        .map(|i| Value::Array((0..4).map(|j| entry(if i == j { 1.0 } else { 0.0 })).collect()))
        .collect();
    std::fs::write(&path, serde_json::json!({"rows": 4, "cols": 4, "entries": rows}).to_string()).unwrap();
    let full = stdout_json(&["disks", path.to_str().unwrap(), "--full"]);
    assert_eq!(full.as_array().unwrap().len(), 4);
    for d in full.as_array().unwrap() {
        assert_eq!((d["center"]["re"].as_f64(), d["radius"].as_f64()), (Some(1.0), Some(0.0)));
    }
    let default = stdout_json(&["disks", path.to_str().unwrap()]);
    let kinds: Vec<&str> = default.as_array().unwrap().iter().map(|d| d["kind"].as_str().unwrap()).collect();
    assert_eq!(kinds, ["full", "full", "full", "full", "half", "half", "half", "half"]);
}

#[test]
fn csv_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.csv");
    std::fs::write(&path, "0,1,1\n1,0,1\n1,1,0\n").unwrap();
    let report = stdout_json(&["localize", path.to_str().unwrap()]);
    assert_eq!(report["multiple"][0]["geometric_multiplicity"], 2);
}

#[test]
fn malformed_files_exit_2_with_positions() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("bad.json");
    std::fs::write(&json, "{\n  \"rows\": 2,\n  \"cols\": 2,\n  \"entries\": [[{\"re\": 1, \"im\": 0}, oops]]\n}\n").unwrap();
    let out = common::run(&["disks", json.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 4, column"), "{}", stderr(&out));

    let csv = dir.path().join("bad.csv");
    std::fs::write(&csv, "1,2\n3,4i\n").unwrap();
    let out = common::run(&["disks", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2, column 2"), "{}", stderr(&out));

    let rect = dir.path().join("rect.csv");
    std::fs::write(&rect, "1,2,3\n4,5,6\n").unwrap();
    assert_eq!(common::run(&["localize", rect.to_str().unwrap()]).status.code(), Some(2));

    assert_eq!(common::run(&["disks", "no/such/file.json"]).status.code(), Some(2));
    assert_eq!(common::run(&["disks", "a3", "--fraction", "3"]).status.code(), Some(2));
    assert_eq!(common::run(&["bogus"]).status.code(), Some(2));
}

#[test]
fn median_on_signed_matrix_is_a_domain_error() {
    let out = common::run(&["disks", "b5", "--median"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("non-negative"));
}

#[test]
fn localize_counterexample_banner() {
    let out = common::run(&["localize", "b5"]);
    assert_eq!(out.status.code(), Some(0));
    let err = stderr(&out);
    assert!(err.starts_with("warning:") && !err.contains('\x1b'), "{err}");
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["nonnegative"], false);
    let outside = report["outside_all_half"].as_array().unwrap();
    assert_eq!(outside.len(), 2);
    for z in outside {
        assert!((z["re"].as_f64().unwrap().abs() - 5f64.sqrt()).abs() < 1e-12);
    }
}

#[test]
fn localize_blocks_and_a3() {
    let report = stdout_json(&["localize", "blocks:k=3,b=3,seed=1"]);
    let mult = &report["multiple"][0];
    assert_eq!(mult["value"]["re"], 1.0);
    assert_eq!(mult["geometric_multiplicity"], 3);
    for kind in mult["kinds"].as_array().unwrap() {
        if kind["kind"] == "half" || kind["kind"] == "third" {
            assert!(kind["rows"].as_array().unwrap().iter().all(|r| r["status"] == "on_boundary"));
        }
    }

    let report = stdout_json(&["localize", "a3"]);
    let mult = &report["multiple"][0];
    assert_eq!(mult["value"]["re"], -1.0);
    assert_eq!(mult["geometric_multiplicity"], 2);
    let half = mult["kinds"].as_array().unwrap().iter().find(|k| k["kind"] == "half").unwrap();
    assert!(half["rows"].as_array().unwrap().iter().all(|r| r["status"] == "on_boundary"));
}

#[test]
fn localize_rejects_bad_tolerance() {
    assert_eq!(common::run(&["localize", "a3", "--tol", "-1"]).status.code(), Some(2));
}

#[test]
fn check_inequalities_runs() {
    let summary = stdout_json(&["check-inequalities", "--trials", "1", "--n-max", "2", "--d", "1", "--seed", "0"]);
    common::validate("check", &summary).unwrap();
    assert_eq!(summary["trials"], 1);
    let summary = stdout_json(&["check-inequalities", "--trials", "300", "--n-max", "7", "--d", "2", "--seed", "7"]);
    for b in summary["bounds"].as_array().unwrap() {
        assert!(b["max_ratio"].as_f64().unwrap() <= 1.0 + 1e-9);
        assert_eq!(b["violations"], 0);
    }
    assert!(summary["median_shift_better"].is_object());
    assert!(summary["zonotope_better"].is_object());
    assert_eq!(common::run(&["check-inequalities", "--trials", "0"]).status.code(), Some(2));
}

#[test]
fn check_inequalities_is_deterministic() {
    let args = ["check-inequalities", "--trials", "40", "--n-max", "10", "--d", "3", "--seed", "11"];
    let a = common::run(&args);
    let b = common::run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn plot_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a3.json");
    let out = common::run(&["plot", "a3", "--half", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let doc: PlotDocument = serde_json::from_str(&text).unwrap();
    let m = halfdisk::generators::matrix_a3::<f64>();
    let again = halfdisk_cli::plot::plot_document(&m, &[halfdisk::disks::RadiusKind::Half], &[]).unwrap();
    assert_eq!(doc.disks, again.disks);
    assert_eq!(serde_json::to_string_pretty(&doc).unwrap() + "\n", text);
    let values: Vec<f64> = doc.eigenvalues.iter().map(|e| e.value.re).collect();
    assert!((values[0] + 1.0).abs() < 1e-12 && (values[1] - 2.0).abs() < 1e-12);
    assert_eq!(doc.eigenvalues[0].geometric_multiplicity, 2);
}

#[test]
fn plot_svg_structure() {
    let out = common::run(&["plot", "hesse-h", "--full", "--half"]);
    assert!(out.status.success());
    let svg = String::from_utf8(out.stdout).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains(r#"width="1000" height="1000""#));
    assert_eq!(svg.matches(r#"class="disk full""#).count(), 9);
    assert_eq!(svg.matches(r#"class="disk half""#).count(), 9);
    assert_eq!(svg.matches(r#"class="eigenvalue""#).count(), 2);
    assert!(svg.contains("0 ×3") && svg.contains("6 ×6"));
    // Imaginary axis points up: a tick above the real axis is labelled positive.
    assert!(svg.contains(r#"class="tick""#) && svg.contains("2i</text>"));
}

#[test]
fn unwritable_output_is_an_io_error() {
    let out = common::run(&["plot", "a3", "--out", "/nonexistent-dir/plot.svg"]);
    assert_eq!(out.status.code(), Some(5));
    let out = common::run(&["disks", "a3", "--out", "/nonexistent-dir/d.json"]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn example_csv_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c7.csv");
    let out = common::run(&["example", "c7", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let loaded = halfdisk_cli::input::load(path.to_str().unwrap()).unwrap();
    assert_eq!(loaded.matrix, halfdisk::generators::matrix_c7::<f64>());
    assert_eq!(common::run(&["example", "hesse-h", "--format", "csv"]).status.code(), Some(2));
}
