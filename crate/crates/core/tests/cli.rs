use std::process::{Command, Output};

fn bandq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bandq")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn present_b5() {
    let out = bandq(&["present", "b5"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["schema"], "bandquiver-report/1");
    assert_eq!(r["relations"][0]["relation"], "αβ");
    assert_eq!(r["quotient_rank"], 5);
    assert_eq!(r["passed"], true);
}

#[test]
fn analyze_reports() {
    let r = json(&bandq(&["analyze", "b5"]));
    assert_eq!(r["nilpotency"]["index"], 3);
    assert_eq!(r["nilpotency"]["bound"], "5");
    assert_eq!(r["unit"]["display"], "1");

    let out = bandq(&["analyze", "right_zero:2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["connected"], false);
    assert!(r["unit"].is_null());

    let r = json(&bandq(&["analyze", "signs:2"]));
    assert_eq!(r["connected"], true);
    assert!(r["nilpotency"]["index"].as_u64().unwrap() <= 9);
    assert_eq!(r["unit"]["display"], "00");
}

#[test]
fn present_other_fixtures() {
    let r = json(&bandq(&["present", "free_lrb1:2"]));
    assert_eq!(r["hereditary"]["hereditary"], true);
    assert_eq!(r["relations"].as_array().unwrap().len(), 0);
    let r = json(&bandq(&["present", "signs:2"]));
    assert_eq!(r["hereditary"]["hereditary"], false);
    assert_eq!(r["relations"].as_array().unwrap().len(), 1);
}

#[test]
fn exit_codes() {
    assert_eq!(bandq(&["present", "right_zero:2"]).status.code(), Some(2));
    assert_eq!(bandq(&["analyze", "nonsense:3"]).status.code(), Some(2));
    assert_eq!(bandq(&["--max-size", "4", "analyze", "b5"]).status.code(), Some(2));
    assert_eq!(bandq(&["cw", "b5"]).status.code(), Some(2));
    // truncating below the nilpotency index breaks J^L ⊆ I
    assert_eq!(bandq(&["present", "b5", "--truncation-override", "2"]).status.code(), Some(3));
    assert_eq!(bandq(&["cw", "free_lrb1:2"]).status.code(), Some(3));
}

#[test]
fn corrupted_table_file() {
    let dir = std::env::temp_dir().join(format!("bandq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"n": 3, "table": [[0,1,2],[1,1,1],[2,2,1]]}"#).unwrap();
    let out = bandq(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a band"));
    let out = bandq(&["verify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_byte_deterministic() {
    for args in [&["present", "signs:3"][..], &["verify", "--seed", "11"][..], &["cw", "signs:2"][..]] {
        assert_eq!(bandq(args).stdout, bandq(args).stdout);
    }
}

#[test]
fn dot_and_files() {
    let dir = std::env::temp_dir().join(format!("bandq-dot-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let dot = dir.join("q.dot");
    let report = dir.join("r.json");
    let out = bandq(&["present", "b5", "--dot", dot.to_str().unwrap(), "-o", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let d = std::fs::read_to_string(&dot).unwrap();
    assert!(d.starts_with("digraph quiver"));
    assert_eq!(d.matches("->").count(), 2);
    assert!(std::fs::read_to_string(&report).unwrap().contains("\"αβ\""));
    let s = bandq(&["export-dot", "signs:2", "--what", "supports"]);
    assert_eq!(String::from_utf8_lossy(&s.stdout).matches("->").count(), 4);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_battery_and_census() {
    let out = bandq(&["verify", "--census", "3", "--idempotents", "generic"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["passed"], true);
    let checks = r["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["name"] == "signs:3/cw_theorem"));
}

#[test]
fn text_summary() {
    let out = bandq(&["present", "b5", "--text"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("αβ = 0"));
}
