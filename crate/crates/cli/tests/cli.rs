use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};
use tempfile::TempDir;

const EXAMPLE1: &str = "n=3\n000\n100\n110\n111\n011\n001\n";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_teachlab"))
        .args(args)
        .env_remove("TEACHLAB_BUDGET_SECS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn json(args: &[&str]) -> Value {
    let mut a = vec!["--json"];
    a.extend_from_slice(args);
    serde_json::from_str(&ok(&a)).unwrap()
}

fn p(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn read(path: &str) -> String {
    std::fs::read_to_string(Path::new(path)).unwrap()
}

#[test]
fn bounds_d1() {
    assert_eq!(ok(&["bounds", "--n", "4", "--d", "1"]), "n       4\nd       1\nksz     8\nfactor  1.0\n");
}

#[test]
fn bounds_d2_text_and_csv() {
    let dir = TempDir::new().unwrap();
    let csv = p(&dir, "b.csv");
    let out = ok(&["bounds", "--n", "4", "--d", "2", "--csv", &csv]);
    assert_eq!(
        out,
        "n         4\nd         2\nt         2\nksz       24\ngub       64/3\ngub_real  21.3333333333\n\
         factor    0.966326495189\nh_used    2/3\nh_kind    exact\n"
    );
    assert_eq!(
        read(&csv),
        "n,d,t,ksz,gub,factor,h_used,h_kind\n4,2,2,24,64/3,0.966326495189,2/3,exact\n"
    );
    let csv1 = p(&dir, "b1.csv");
    ok(&["bounds", "--n", "5", "--d", "1", "--csv", &csv1]);
    assert_eq!(read(&csv1), "n,d,t,ksz,gub,factor,h_used,h_kind\n5,1,,10,,1.0,,\n");
    let v = json(&["bounds", "--n", "7", "--d", "7"]);
    assert_eq!(v["factor"], 0.75);
    assert_eq!(v["gub"], "128/1");
}

#[test]
fn tournament_pipeline_reproduces_example1() {
    let dir = TempDir::new().unwrap();
    let g = p(&dir, "g.txt");
    let k = p(&dir, "k.txt");
    ok(&["tournament", "gen", "--n", "3", "--linear", "--out", &g]);
    assert_eq!(read(&g), "n=3\n1 2\n1 3\n2 3\n");
    assert_eq!(ok(&["tournament", "class", "--mode", "2", "--in", &g]), EXAMPLE1);
    ok(&["tournament", "class", "--mode", "2", "--in", &g, "--out", &k]);
    assert_eq!(read(&k), EXAMPLE1);
    assert_eq!(ok(&["tournament", "class", "--mode", "1", "--in", &g]), "n=3\n111\n011\n001\n");
    // recovery via search
    assert_eq!(ok(&["tournament", "recover", "--class", &k]).lines().next(), Some("n=3"));
}

#[test]
fn seeded_tournaments_are_deterministic() {
    let a = ok(&["tournament", "gen", "--n", "9", "--seed", "42"]);
    let b = ok(&["tournament", "gen", "--n", "9", "--seed", "42"]);
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 1 + 36);
    assert_eq!(run(&["tournament", "gen", "--n", "3"]).status.code(), Some(2));
}

#[test]
fn td_and_rtd_reports() {
    let dir = TempDir::new().unwrap();
    let k = p(&dir, "k.txt");
    std::fs::write(&k, EXAMPLE1).unwrap();
    let out = ok(&["td", "--class", &k]);
    assert!(out.starts_with("n         3\nconcepts  6\ntd_min    2\ntd_max    2\n"));
    assert!(out.contains("   1  000  td=2  witness={1,3}\n"));
    let one = json(&["td", "--class", &k, "--concept", "2"]);
    assert_eq!(one["td"], 2);
    assert_eq!(one["witness"], serde_json::json!([1, 2]));
    let csv = p(&dir, "td.csv");
    ok(&["td", "--class", &k, "--csv", &csv]);
    assert!(read(&csv).starts_with("concept,labels,td,witness\n1,000,2,1 3\n"));
    assert_eq!(run(&["td", "--class", &k, "--concept", "9"]).status.code(), Some(2));
    let r = json(&["rtd", "--class", &k, "--oracle"]);
    assert_eq!(r["rtd"], 2);
    assert_eq!(r["agree"], true);
}

#[test]
fn nctd_teacher_round_trip() {
    let dir = TempDir::new().unwrap();
    let k = p(&dir, "k.txt");
    let t = p(&dir, "t.txt");
    std::fs::write(&k, EXAMPLE1).unwrap();
    let v = json(&["nctd", "--class", &k, "--emit-teacher", &t]);
    assert_eq!(v["nctd"], 1);
    let text = read(&t);
    assert!(text.starts_with("n=3 d=1\n"));
    assert_eq!(ok(&["verify-teacher", "--class", &k, "--teacher", &t]).lines().last(), Some("admissible  true"));
    let back = ok(&["tournament", "recover", "--class", &k, "--teacher", &t]);
    assert_eq!(back, "n=3\n1 2\n1 3\n2 3\n");

    let bad = p(&dir, "bad.txt");
    std::fs::write(&bad, "n=3 d=1\n000 : 1\n100 : 1\n110 : 3\n111 : 1\n011 : 2\n001 : 3\n").unwrap();
    let o = run(&["verify-teacher", "--class", &k, "--teacher", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("admissible  false"));
    let o = run(&["tournament", "recover", "--class", &k, "--teacher", &bad]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn nctd_limits() {
    let dir = TempDir::new().unwrap();
    let k = p(&dir, "cube.txt");
    let cube: String = (0..8u32).map(|w| format!("{}{}{}\n", w & 1, w >> 1 & 1, w >> 2 & 1)).collect();
    std::fs::write(&k, format!("n=3\n{cube}")).unwrap();
    assert_eq!(json(&["nctd", "--class", &k])["nctd"], 2);
    let v = json(&["nctd", "--class", &k, "--max-d", "1"]);
    assert_eq!(v["nctd"], Value::Null);
    assert_eq!(v["max_d"], 1);
}

#[test]
fn malformed_files_exit_2() {
    let dir = TempDir::new().unwrap();
    let k = p(&dir, "k.txt");
    std::fs::write(&k, "n=3\n000\n01\n").unwrap();
    let o = run(&["td", "--class", &k]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    std::fs::write(&k, "n=2\n00\n00\n").unwrap();
    assert_eq!(run(&["nctd", "--class", &k]).status.code(), Some(2));
    assert_eq!(run(&["td", "--class", &p(&dir, "missing")]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["bounds", "--n", "3", "--d", "5"]).status.code(), Some(2));
}

#[test]
fn verify_dim1_exit_codes() {
    let out = ok(&["verify", "dim1", "--n", "3"]);
    assert!(out.contains("nctd_one_classes    4\n"));
    assert!(out.contains("matches             true\n"));
    assert_eq!(json(&["verify", "dim1", "--n", "2", "--prefilter"])["matches"], true);
    assert_eq!(run(&["verify", "dim1", "--n", "6"]).status.code(), Some(2));
}

#[test]
fn maxclass_and_hmax() {
    let v = json(&["search", "maxclass", "--n", "3", "--d", "1"]);
    assert_eq!(v["m_nc"], 6);
    assert_eq!(v["witnesses"], 2);
    let dir = TempDir::new().unwrap();
    let w = p(&dir, "w.txt");
    let v = json(&["johnson", "hmax", "--n", "4", "--k", "2", "--t", "2", "--witness", &w]);
    assert_eq!(v["h_max"], 4);
    assert_eq!(v["ratio"], "2/3");
    assert_eq!(read(&w).lines().count(), 4);
    let o = run(&["johnson", "hmax", "--n", "9", "--k", "3", "--t", "2", "--timeout", "0.000001"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn tdmin_csv_is_reproducible_across_job_counts() {
    let dir = TempDir::new().unwrap();
    let a = p(&dir, "a.csv");
    let b = p(&dir, "b.csv");
    ok(&["experiment", "tdmin", "--n", "12", "--trials", "30", "--seed", "7", "--out", &a]);
    ok(&["--jobs", "1", "experiment", "tdmin", "--n", "12", "--trials", "30", "--seed", "7", "--out", &b]);
    let text = read(&a);
    assert_eq!(text, read(&b));
    assert!(text.starts_with("trial,seed,n,td_min,nctd\n0,"));
    assert_eq!(text.lines().count(), 31);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",1")));
}

#[test]
fn tau_and_claim() {
    let v = json(&["experiment", "tau", "--n", "16", "--trials", "50", "--seed", "3"]);
    assert_eq!(v["vacuous"], true);
    assert_eq!(v["fraction"], 0.0);
    assert_eq!(v["ci95_low"], 0.0);
    let a = ok(&["experiment", "tau", "--n", "16", "--trials", "200", "--seed", "3", "--k", "2"]);
    assert_eq!(a, ok(&["experiment", "tau", "--n", "16", "--trials", "200", "--seed", "3", "--k", "2"]));
    let dir = TempDir::new().unwrap();
    let csv = p(&dir, "claim.csv");
    let v = json(&["experiment", "claim", "--scan-max", "1000000", "--csv", &csv]);
    assert_eq!(v["first_applicable"], v["n0"]);
    assert_eq!(v["sufficient_implies_ineq2"], true);
    assert!(read(&csv).starts_with("n,k_prime,k,applicable,"));
}

#[test]
fn recovered_tournament_induces_same_class() {
    let dir = TempDir::new().unwrap();
    let g = p(&dir, "g.txt");
    let k = p(&dir, "k.txt");
    let g2 = p(&dir, "g2.txt");
    ok(&["tournament", "gen", "--n", "6", "--seed", "5", "--out", &g]);
    ok(&["tournament", "class", "--mode", "2", "--in", &g, "--out", &k]);
    ok(&["tournament", "recover", "--class", &k, "--out", &g2]);
    // the recovered tournament induces the same class
    let k2 = ok(&["tournament", "class", "--mode", "2", "--in", &g2]);
    let k1 = read(&k);
    let mut a: Vec<&str> = k1.lines().collect();
    let mut b: Vec<&str> = k2.lines().collect();
    a.sort_unstable();
    b.sort_unstable();
    assert_eq!(a, b);
}
