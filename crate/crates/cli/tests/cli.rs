use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn rfl(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rfl"))
        .args(args)
        .env_remove("RFL_NODE_CAP")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    let mut pipe = child.stdin.take().expect("stdin");
    pipe.write_all(stdin.unwrap_or("").as_bytes()).expect("write stdin");
    drop(pipe);
    child.wait_with_output().expect("exits")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o)
        .lines()
        .map(|l| serde_json::from_str(l).expect("json line"))
        .collect()
}

fn last_json(o: &Output) -> Value {
    json_lines(o).pop().expect("output")
}

fn f(v: &Value) -> f64 {
    v.as_f64().expect("number")
}

fn temp_file(name: &str, text: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("rfl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn radius_of_k5_from_graph6_on_stdin() {
    let o = rfl(&["radius", "--format", "csv"], Some("D~{\n"));
    assert!(o.status.success());
    let out = stdout(&o);
    let row: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
    assert_eq!((row[0], row[1]), ("4/1", "4/1"));
}

#[test]
fn radius_of_hnk_builder() {
    for extra in [&[][..], &["--exact"][..]] {
        let mut args = vec!["radius", "--hnk", "7", "2", "--format", "csv"];
        args.extend_from_slice(extra);
        let o = rfl(&args, None);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let out = stdout(&o);
        let row: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
        let (lo, hi): (f64, f64) = (row[2].parse().unwrap(), row[3].parse().unwrap());
        assert!(lo > 5.03 && hi < 5.04, "{lo} {hi}");
    }
}

#[test]
fn radius_compare_files() {
    let k5 = temp_file("k5.g6", "D~{");
    let path = temp_file("p5.json", r#"{"n":5,"edges":[[1,2],[2,3],[3,4],[4,5]]}"#);
    let (k5, path) = (k5.to_str().unwrap(), path.to_str().unwrap());
    let o = rfl(&["radius", "--compare", path, k5], None);
    assert_eq!(last_json(&o)["ordering"], "Less");
    let o = rfl(&["radius", "--compare", k5, path, "--exact"], None);
    assert_eq!(last_json(&o)["ordering"], "Greater");
    let o = rfl(&["radius", "--compare", k5, k5], None);
    assert_eq!(last_json(&o)["ordering"], "Equal");
}

#[test]
fn malformed_input_is_an_error() {
    let o = rfl(&["radius"], Some("{\"n\": 3, \"edges\": [[1, 4]]}"));
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn hnk_table_rows() {
    let o = rfl(
        &["hnk-table", "--n-max", "9", "--k-max", "2", "--precision", "1/1000000"],
        None,
    );
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "n,k,lo,hi,lo_f64,hi_f64,sandwich");
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    let r71 = rows.iter().find(|r| r[0] == "7" && r[1] == "1").unwrap();
    assert_eq!((r71[2], r71[3]), ("5/1", "5/1"));
    let r72 = rows.iter().find(|r| r[0] == "7" && r[1] == "2").unwrap();
    assert!(r72[4].parse::<f64>().unwrap() > 5.03 && r72[5].parse::<f64>().unwrap() < 5.04);
    assert!(rows.iter().all(|r| r[6] == "true"));
}

#[test]
fn lemma_scan_report() {
    let o = rfl(&["check-lemma36", "--k-range", "2..=3", "--n-range", "7-12"], None);
    assert!(o.status.success());
    let lines = json_lines(&o);
    let summary = lines.last().unwrap();
    assert_eq!(summary["counts"]["fail"], 0);
    assert_eq!(f(&summary["counts"]["pass"]) as usize, lines.len() - 1);
    assert!(lines[..lines.len() - 1]
        .iter()
        .all(|l| l["experiment"] == "check-lemma36"));
}

#[test]
fn lemma_p_zero_rejected() {
    let o = rfl(
        &["check-lemma36", "--k-range", "2", "--n-range", "7", "--p-range", "0"],
        None,
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn theorem_reports_are_deterministic() {
    let args = [
        "check-theorem",
        "--n",
        "7",
        "--k",
        "2",
        "--case",
        "a",
        "--samples",
        "6",
        "--seed",
        "11",
    ];
    let strip = |o: &Output| {
        json_lines(o)
            .into_iter()
            .map(|mut v| {
                v.as_object_mut().unwrap().remove("wall_clock_ms");
                v
            })
            .collect::<Vec<_>>()
    };
    let a = rfl(&args, None);
    let b = rfl(&[&args[..], &["--jobs", "1"]].concat(), None);
    assert!(a.status.success());
    assert_eq!(strip(&a), strip(&b));
    assert_eq!(last_json(&a)["counts"]["pass"], 6);
}

#[test]
fn theorem_extremal_case() {
    let o = rfl(&["check-theorem", "--n", "8", "--k", "2", "--case", "c"], None);
    assert!(o.status.success());
    assert_eq!(last_json(&o)["counts"]["pass"], 1);
}

#[test]
fn node_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_rfl"))
        .args(["check-theorem", "--n", "7", "--k", "2", "--case", "b", "--samples", "1"])
        .env("RFL_NODE_CAP", "123")
        .output()
        .unwrap();
    assert_eq!(last_json(&o)["parameters"]["node_cap"], 123);
}

#[test]
fn schedules_print() {
    let o = rfl(&["schedule", "6", "2"], None);
    let s = last_json(&o);
    assert_eq!(s["parity"], "even");
    assert_eq!(s["entries"].as_array().unwrap().len(), 6);
    let o = rfl(&["schedule", "7", "2", "--format", "csv"], None);
    assert_eq!(stdout(&o).lines().count(), 8);
    let o = rfl(&["schedule", "7", "3"], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn repair_demo_ends_verified() {
    for scenario in ["colliding-matchings", "colliding-cycle"] {
        for seed in ["1", "2", "3"] {
            let o = rfl(&["repair-demo", "--scenario", scenario, "--seed", seed], None);
            assert!(o.status.success());
            let lines = json_lines(&o);
            let last = lines.last().unwrap();
            assert_eq!(last["verify_rainbow"], true, "{scenario} {seed}");
            assert!(lines[..lines.len() - 1].iter().all(|l| l["tag"].is_string()));
        }
    }
    let o = rfl(&["repair-demo", "--scenario", "colliding-cycle", "--n", "8"], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn ko_pair_and_full() {
    let g = r#"{"n":4,"edges":[[1,2],[3,4]]}"#;
    let o = rfl(&["ko", "--u", "1", "--v", "3"], Some(g));
    let t = last_json(&o);
    assert_eq!(t["moved"], serde_json::json!([[3, 4]]));
    assert_eq!(t["after"], serde_json::json!([[1, 2], [1, 4]]));
    let o = rfl(&["ko", "--full"], Some(g));
    assert_eq!(last_json(&o)["after"].as_array().unwrap().len(), 2);
    let o = rfl(&["ko"], Some(g));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn find_rainbow_on_collections() {
    let tri = r#"{"n":3,"edges":[[1,2],[2,3],[1,3]]}"#;
    let gc = format!(r#"{{"k":2,"graphs":[{tri},{tri},{tri}]}}"#);
    let o = rfl(&["find-rainbow"], Some(&gc));
    let v = last_json(&o);
    assert_eq!(v["outcome"], "found");
    assert_eq!(v["verify_rainbow"], true);

    let path = r#"{"n":3,"edges":[[1,2],[2,3]]}"#;
    let gc = format!(r#"{{"k":2,"graphs":[{path},{path},{path}]}}"#);
    assert_eq!(last_json(&rfl(&["find-rainbow"], Some(&gc)))["outcome"], "not-found");
}
