use std::process::{Command, Output};

fn triarray(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_triarray"))
        .args(args)
        .output()
        .expect("run triarray")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn params_reports_resolvable_set() {
    let o = triarray(&["params", "7", "15", "35"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("e=3 lrr=5 lcc=1 lrrc=1 k=5"), "{s}");
    assert!(s.contains("ta=true quad=true resolvable=true"), "{s}");
}

#[test]
fn params_inadmissible_exits_one() {
    let o = triarray(&["params", "4", "5", "7"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn order_three_by_four_has_no_ordering() {
    let o = triarray(&["order", "fixtures/fig2-uta-3x4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("no ordering exists"));
}

#[test]
fn order_then_verify_round_trip() {
    let dir = std::env::temp_dir().join(format!("triarray-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let uta = dir.join("ag32.uta");
    let o = triarray(&["construct", "family-ag", "3", "2"]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::write(&uta, &o.stdout).unwrap();

    let o = triarray(&["order", uta.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let ta = dir.join("ag32.ta");
    std::fs::write(&ta, &o.stdout).unwrap();

    let o = triarray(&["verify", ta.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("valid triple array 4x9"), "{s}");
    assert!(s.contains("resolvable: true"), "{s}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_rejects_broken_array() {
    let dir = std::env::temp_dir().join(format!("triarray-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.ta");
    std::fs::write(&path, "2 2 2\n0 1\n0 1\n").unwrap();
    let o = triarray(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not verified"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn canon_and_aut_of_fano() {
    let o = triarray(&["canon", "design-fano"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("aut=168"));
    let o = triarray(&["aut", "fig2-uta-3x4", "--format", "structured"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["aut_order"], "24");
}

#[test]
fn extremal_enumeration_of_sixteen_six_two() {
    let o = triarray(&["enumerate", "extremal", "--params", "16,6,2", "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let auts: Vec<&str> = v["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["aut_order"].as_str().unwrap())
        .collect();
    let mut auts = auts;
    auts.sort();
    assert_eq!(auts, ["24", "48", "720"]);
}

#[test]
fn orderings_of_single_uta() {
    let o = triarray(&["enumerate", "orderings", "--uta", "fig1-ta-4x9"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("|Aut U|=432 labelled orderings=144 classes=1"), "{s}");
}

#[test]
fn derange_q2_has_no_solution() {
    let o = triarray(&["derange", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = triarray(&["derange", "3", "--count"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("144 solutions"));
}

#[test]
fn derange_through_partiteness_gives_triple_array() {
    let o = triarray(&["derange", "4", "--partiteness", "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["params"]["r"], 5);
    assert_eq!(v["params"]["c"], 16);
}

#[test]
fn scan_quad_finds_nothing() {
    let o = triarray(&["scan-quad", "--emax", "300"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 admissible in both orientations"));
}

#[test]
fn paley_lists_and_builds() {
    let o = triarray(&["construct", "paley", "7"]);
    let first = stdout(&o).lines().next().unwrap().to_string();
    let ab: Vec<&str> = first.split_whitespace().collect();
    let o = triarray(&["construct", "paley", "7", ab[0], ab[1]]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("7 8 14\n"));
}

#[test]
fn fixtures_are_listed() {
    let o = triarray(&["fixtures"]);
    let s = stdout(&o);
    assert!(s.lines().any(|l| l == "figC1-ta-21x15"));
    assert!(s.lines().any(|l| l == "parade-61"));
}

#[test]
fn ingest_reports_duplicates() {
    let dir = std::env::temp_dir().join(format!("triarray-ingest-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let fano = stdout(&triarray(&["fixtures", "design-fano"]));
    let path = dir.join("two.txt");
    std::fs::write(&path, format!("{fano}\n{fano}")).unwrap();
    let o = triarray(&["ingest", path.to_str().unwrap(), "--params", "7,3,1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("2 designs, 1 isomorphism classes"), "{s}");
    assert!(s.contains("duplicate"), "{s}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(triarray(&["params", "x"]).status.code(), Some(2));
    assert_eq!(triarray(&["verify", "no-such-thing"]).status.code(), Some(2));
}
