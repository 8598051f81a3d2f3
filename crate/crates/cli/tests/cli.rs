use std::fs;
use std::process::{Command, Output};

use ngt_core::ngt::MinNgtJson;
use serde_json::Value;

fn ngt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ngt")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid json on stdout")
}

#[test]
fn lambda_of_the_f4_example() {
    let out = ngt(&["--json", "lambda", "F4", "2132132432132432"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["length"], 16);
    let written: Vec<&str> = v["written"].as_array().unwrap().iter().map(|r| r.as_str().unwrap()).collect();
    assert_eq!(&written[..4], ["1242", "1120", "1232", "2342"]);
    assert_eq!(&written[12..], ["0120", "0111", "0110", "0100"]);
}

#[test]
fn non_reduced_word_exits_with_2() {
    let out = ngt(&["lambda", "A2", "11"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn bad_letter_is_an_error() {
    let out = ngt(&["lambda", "A2", "13"]);
    assert!(!out.status.success());
}

#[test]
fn reduce_reports_shortlex() {
    let out = ngt(&["--json", "reduce", "B3", "3232"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["length"], 4);
    assert_eq!(v["shortlex"], "2323");
}

#[test]
fn gather_finds_the_ngt_of_the_example() {
    let out = ngt(&["--json", "gather", "F4", "2132132432132432", "--alpha", "0100", "--beta", "1242"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let first = if v.is_array() { v[0].clone() } else { v };
    assert_eq!(first["outcome"], "not_gatherable");
}

#[test]
fn search_f4_round_trips_through_json() {
    let out = ngt(&["--json", "search-ngt", "F4"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let recs: Vec<MinNgtJson> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(recs.len(), 10);
    assert_eq!(recs.iter().filter(|r| !r.embedded.is_empty()).count(), 2);
    let again = serde_json::to_value(&recs).unwrap();
    assert_eq!(again, stdout_json(&out));
}

#[test]
fn search_csv_has_one_row_per_record() {
    let out = ngt(&["--format", "csv", "search-ngt", "B3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    // header plus the single classical record of B3
    assert_eq!(text.lines().count(), 2, "{text}");
}

#[test]
fn checkpoint_resume_gives_the_same_records() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f4.json");
    let p = path.to_str().unwrap();

    let full = ngt(&["--json", "search-ngt", "F4", "--checkpoint", p]);
    assert!(full.status.success());
    let all: Vec<MinNgtJson> = serde_json::from_slice(&full.stdout).unwrap();
    let cp: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(cp["system"], "F4");
    assert_eq!(cp["words"].as_array().unwrap().len(), 10);

    // Pretend the run stopped after length 9.
    let early: Vec<&str> = all.iter().filter(|r| r.length <= 9).map(|r| r.word.as_str()).collect();
    let partial = serde_json::json!({ "system": "F4", "completed_length": 9, "words": early });
    fs::write(&path, partial.to_string()).unwrap();
    let resumed = ngt(&["--json", "search-ngt", "F4", "--checkpoint", p]);
    assert!(resumed.status.success());
    assert!(String::from_utf8_lossy(&resumed.stderr).contains("resuming after length 9"));
    let again: Vec<MinNgtJson> = serde_json::from_slice(&resumed.stdout).unwrap();
    let words = |v: &[MinNgtJson]| v.iter().map(|r| r.word.clone()).collect::<Vec<_>>();
    assert_eq!(words(&all), words(&again));
}

#[test]
fn checkpoint_for_another_system_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cp.json");
    fs::write(&path, r#"{"system":"B3","completed_length":3,"words":[]}"#).unwrap();
    let out = ngt(&["search-ngt", "F4", "--checkpoint", path.to_str().unwrap()]);
    assert!(!out.status.success());
}

#[test]
fn verify_tables_passes_for_f4_and_e6() {
    for sys in ["F4", "E6"] {
        let out = ngt(&["verify", "tables", sys]);
        assert!(out.status.success(), "{sys}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn verify_classical_passes() {
    let out = ngt(&["--json", "verify", "classical", "C4"]);
    assert!(out.status.success());
    assert!(stdout_json(&out)["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn theorem1_sample_on_f4() {
    let out = ngt(&["verify", "theorem1", "F4", "--sample", "200", "--seed", "7"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn blocks_of_the_example() {
    let out = ngt(&["--json", "blocks", "F4", "2132132432132432"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("1122"), "{text}");
}

#[test]
fn render_svg_is_well_formed() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b3.svg");
    let out = ngt(&["--format", "svg", "render", "B3", "321323", "-o", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let svg = fs::read_to_string(&path).unwrap();
    let doc = roxmltree::Document::parse(&svg).unwrap();
    assert_eq!(doc.root_element().tag_name().name(), "svg");
    assert!(doc.descendants().any(|n| n.has_tag_name("polyline")));
}

#[test]
fn render_ascii_notes_pseudo_lines() {
    let out = ngt(&["render", "D4", "424"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("pseudo"));
    let genuine = ngt(&["render", "D4", "242"]);
    assert!(!String::from_utf8_lossy(&genuine.stderr).contains("pseudo"));
}

#[test]
fn render_rejects_exceptional_types() {
    assert!(!ngt(&["render", "F4", "1234"]).status.success());
}

#[test]
fn time_limit_stops_early_and_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b4.json");
    let p = path.to_str().unwrap();
    let first = ngt(&["--json", "--time-limit", "0", "search-ngt", "B4", "--checkpoint", p]);
    assert_eq!(first.status.code(), Some(3));
    let cp: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(cp["completed_length"], 0);
    let rest = ngt(&["--json", "search-ngt", "B4", "--checkpoint", p]);
    assert!(rest.status.success());
    let recs: Vec<MinNgtJson> = serde_json::from_slice(&rest.stdout).unwrap();
    assert_eq!(recs.len(), 3);
}
