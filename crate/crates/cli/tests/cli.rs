use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_ghilb");

fn ghilb(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn order_one_is_an_input_error() {
    let out = ghilb(&["analyze", "--group", "1/1(0,0,0)"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no nontrivial characters"));
}

#[test]
fn malformed_input_exits_one() {
    assert_eq!(ghilb(&["analyze", "--group", "1/5(1,1)"]).status.code(), Some(1));
    assert_eq!(ghilb(&["analyze", "--group", "1/5(1,1,2)"]).status.code(), Some(1));
    assert_eq!(ghilb(&["analyze"]).status.code(), Some(1));
    assert_eq!(ghilb(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(ghilb(&["sweep", "--r-min", "9", "--r-max", "4", "--csv", "/dev/null"]).status.code(), Some(1));
    assert_eq!(ghilb(&["analyze", "--group", "1/3(1,1,1)", "--annotate", "labels"]).status.code(), Some(1));
}

#[test]
fn json_report_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.json");
    let out = ghilb(&[
        "analyze",
        "--group",
        "1/2(1,0,1);1/2(0,1,1)",
        "--json",
        path.to_str().unwrap(),
        "--degrees",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["b0"], serde_json::json!({"num": 1, "den": 1}));
    assert_eq!(v["junior_points"].as_array().unwrap().len(), 6);
    assert_eq!(v["walls"][0]["degrees"].as_array().unwrap().len(), 4);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    let coords: Vec<&str> = v["junior_points"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|p| p["coords"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()))
        .collect();
    assert!(coords.contains(&"1/2"));
}

#[test]
fn json_to_stdout() {
    let out = ghilb(&["analyze", "--group", "1/3(1,1,1)", "--json", "-"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["r"], 3);
}

#[test]
fn drawings_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("f.svg");
    let tex = dir.path().join("f.tex");
    let out = ghilb(&[
        "analyze",
        "--group",
        "1/5(1,1,3)",
        "--svg",
        svg.to_str().unwrap(),
        "--tikz",
        tex.to_str().unwrap(),
        "--annotate",
        "h0-classes",
    ]);
    assert!(out.status.success());
    let svg = std::fs::read_to_string(svg).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 9);
    assert_eq!(svg.matches("<circle").count(), 2);
    let tex = std::fs::read_to_string(tex).unwrap();
    assert_eq!(tex.matches("\\draw").count(), 9);
}

#[test]
fn verify_reports_each_invariant() {
    let out = ghilb(&["verify", "--group", "1/6(1,1,4)", "--samples", "200"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("PASS interior-edge-bound: interior edges = 7 < (3r-3)/2 = 15/2"));
    assert!(text.contains("gcd(4,6) = 2"));
    for name in [
        "tiling",
        "sampling-oracle",
        "duality-identity",
        "euler-at-zero",
        "polynomial-fit",
        "ample-convexity",
        "wall-relations",
        "duality-oracle",
    ] {
        assert!(text.contains(&format!("PASS {name}:")), "{name}");
    }
    let out = ghilb(&["verify", "--group", "1/3(1,1,1)"]);
    assert!(stdout(&out).contains("PASS duality-identity: 3x3 pairing matrix is the identity"));
}

#[test]
fn sweep_rows_and_symmetry() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let out = ghilb(&["sweep", "--r-min", "5", "--r-max", "5", "--csv", csv.to_str().unwrap(), "--jobs", "2"]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(
        rows[0],
        "r,a,b,junior_points,triangles,interior_edges,boundary_edges,h0_size,b0_num,b0_den,isolated_flag,runtime_ms"
    );
    let tail = |row: &str| row.split(',').skip(3).collect::<Vec<_>>().join(",");
    let r13 = rows.iter().find(|r| r.starts_with("5,1,3,")).unwrap();
    let r31 = rows.iter().find(|r| r.starts_with("5,3,1,")).unwrap();
    assert_eq!(tail(r13), tail(r31));
    assert!(stdout(&out).contains("symmetry mismatches 0"));

    let out = ghilb(&[
        "sweep",
        "--r-min",
        "4",
        "--r-max",
        "12",
        "--isolated-only",
        "--dedupe-symmetry",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("bound violations    0"));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.lines().skip(1).all(|l| l.split(',').nth(10) == Some("1")));
}
