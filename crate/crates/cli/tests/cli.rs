use std::path::PathBuf;
use std::process::{Command, Output};

use regz_core::hecke::HeckeSymmetry;
use regz_exact::io::matrix_to_json;
use regz_exact::{ExactMatrix, RatFunc};
use serde_json::Value;

fn regz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regz")).args(args).output().expect("binary runs")
}

fn lines(o: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&o.stdout).lines().map(|l| serde_json::from_str(l).expect("JSON line")).collect()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("regz-{}-{name}", std::process::id()));
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn validate_dj2_file_passes() {
    let p = scratch("dj2.json", &matrix_to_json(HeckeSymmetry::dj(2).r()));
    let o = regz(&["validate", "--input", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let r = &lines(&o)[0];
    assert_eq!(r["status"], "pass");
    assert_eq!(r["details"]["classification"], "hecke");
}

#[test]
fn non_braiding_matrix_fails_with_witness() {
    let upper = ExactMatrix::from_fn(4, |i, j| RatFunc::int((i <= j) as i64));
    let p = scratch("upper.json", &matrix_to_json(&upper));
    let o = regz(&["validate", "--input", p.to_str().unwrap(), "--q-samples", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let r = &lines(&o)[0];
    assert_eq!(r["details"]["classification"], "not_braiding");
    assert!(r["details"]["witness"]["braid_residual"].is_object());
}

#[test]
fn gl2_example_reproduces_the_table() {
    let o = regz(&["poisson", "--example", "gl2", "--alpha", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let table = lines(&o).into_iter().find(|r| r["check"] == "poisson.gl2_table").expect("table report");
    assert_eq!(table["status"], "pass");
    let got: Vec<(String, String)> = table["details"]["table"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["bracket"].as_str().unwrap().to_string(), e["value"].as_str().unwrap().to_string()))
        .collect();
    assert_eq!(got.len(), 6);
    assert_eq!(got[2], ("{a,d}".to_string(), "0".to_string()));
}

#[test]
fn centrality_certificates_for_rank_two() {
    let o = regz(&["centrality", "--N", "2", "--k", "2", "--max-deg", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let rs = lines(&o);
    assert_eq!(rs.len(), 2);
    for r in &rs {
        assert_eq!(r["status"], "pass");
        let entries = r["details"]["entries"].as_array().unwrap();
        assert_eq!(entries.len(), 4);
        assert!(entries.iter().all(|e| e["result"]["certified"].is_u64()));
    }
}

#[test]
fn non_central_generator_is_refuted() {
    let o = regz(&["centrality", "--N", "2", "--generator", "1,2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(lines(&o)[0]["status"], "fail");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(regz(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(regz(&["validate", "--input", "/nonexistent/x.json"]).status.code(), Some(2));
    let bad = scratch("bad.json", "[{\"block\":\"+z\"}]");
    assert_eq!(regz(&["gz-spectrum", "--input", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(regz(&["full-suite", "--criteria", "13"]).status.code(), Some(2));
    assert_eq!(regz(&["characters", "--n", "0"]).status.code(), Some(2));
}

#[test]
fn reports_are_byte_stable() {
    let args = ["skew-inverse", "--N", "3"];
    let a = regz(&args);
    let b = regz(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(!String::from_utf8_lossy(&a.stdout).contains("wall_time_ms"));
    assert!(String::from_utf8_lossy(&regz(&["newton", "--m", "1", "--timings"]).stdout).contains("wall_time_ms"));
}

#[test]
fn bundle_round_trip_through_files() {
    let dir = std::env::temp_dir();
    let bundle = dir.join(format!("regz-{}-cg.json", std::process::id()));
    let o = regz(&["build-hecke", "--family", "cg3", "--alpha", "2", "--beta", "1", "--save", bundle.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let r = &lines(&o)[0];
    assert_eq!(r["details"]["kind"], "hecke");
    assert!(r["details"]["bundle"]["R"]["entries"].is_array());
    let s = regz(&["skew-inverse", "--input", bundle.to_str().unwrap()]);
    assert_eq!(s.status.code(), Some(0));
    let out = dir.join(format!("regz-{}-report.jsonl", std::process::id()));
    let v = regz(&["validate", "--input", bundle.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0));
    assert!(v.stdout.is_empty());
    assert!(std::fs::read_to_string(&out).unwrap().contains("\"status\":\"pass\""));
}

#[test]
fn glue_spec_input_for_gz_spectrum() {
    let spec = scratch("chain.json", r#"[{"block":"+q"},{"block":"+q","alpha":"q"}]"#);
    let o = regz(&["gz-spectrum", "--input", spec.to_str().unwrap(), "--shapes", "1;2", "--labelling", "module"]);
    assert_eq!(o.status.code(), Some(0));
    let rs = lines(&o);
    assert_eq!(rs.iter().filter(|r| r["check"] == "gz.joint_spectrum").count(), 2);
    let lit = regz(&["gz-spectrum", "--input", spec.to_str().unwrap(), "--shapes", "1", "--labelling", "literal"]);
    assert_eq!(lit.status.code(), Some(1));
}

#[test]
fn orbit_rejection_names_the_condition() {
    let o = regz(&["orbit-check", "--mu", "1,q^2", "--k", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let w = lines(&o)[0]["details"]["witness"].as_str().unwrap().to_string();
    assert!(w.contains("mu2 = q^2 mu1"), "{w}");
    assert_eq!(regz(&["orbit-check", "--mu", "1,2"]).status.code(), Some(0));
}

#[test]
fn full_suite_subset_and_summary_lines() {
    let ok = regz(&["full-suite", "--criteria", "3,12"]);
    assert_eq!(ok.status.code(), Some(0));
    let summaries: Vec<Value> = lines(&ok).into_iter().filter(|r| r["check"] == "criterion").collect();
    assert_eq!(summaries.len(), 2);
    let rep = regz(&["full-suite", "--criteria", "7"]);
    assert_eq!(rep.status.code(), Some(1));
}

#[test]
fn rep_check_reports_the_power_used() {
    let o = regz(&["rep-check", "--N", "1", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(lines(&o)[0]["details"]["jm_power"], "inverse");
    let o = regz(&["rep-check", "--N", "2", "--n", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let rs = lines(&o);
    assert_eq!(rs[0]["details"]["jm_power"], "direct");
    assert!(rs.iter().any(|r| r["check"] == "rep.dual_limit" && r["status"] == "pass"));
}
