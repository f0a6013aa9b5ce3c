use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn orthkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orthkit"))
        .args(args)
        .env_remove("ORTHKIT_MAX_N")
        .output()
        .expect("spawn orthkit")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const K4: &str = "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";
const DOUBLE_STAR: &str = "x y\nx a\nx b\ny c\ny d\nleaves:\na 0\nb 1\nc 2\nd 3\n";

#[test]
fn recognize_exit_codes() {
    let dir = TempDir::new().unwrap();
    let p3 = file(&dir, "p3.edges", "a b\nb c\n");
    let c4 = file(&dir, "c4.edges", "a b\nb c\nc d\nd a\n");
    assert_eq!(code(&orthkit(&["recognize", "--h", "3", "--t", "2", s(&p3)])), 0);
    assert_eq!(code(&orthkit(&["recognize", "--h", "3", "--t", "2", s(&c4)])), 1);
}

#[test]
fn lk5_at_33_has_subdivision_witness() {
    let dir = TempDir::new().unwrap();
    let gen = orthkit(&["generate", "line-of-complete", "5"]);
    assert_eq!(code(&gen), 0);
    let text = stdout(&gen);
    assert_eq!(text.lines().count(), 30);
    let lk5 = file(&dir, "lk5.edges", &text);
    let dot = dir.path().join("w.dot");
    let out = orthkit(&["recognize", "--h", "3", "--t", "3", s(&lk5), "--emit-certificate", s(&dot)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("K5_minus_2K2"));
    assert!(fs::read_to_string(&dot).unwrap().contains("color=red"));
}

#[test]
fn member_certificate_validates() {
    let dir = TempDir::new().unwrap();
    for (name, text) in [
        ("k3", "0 1\n1 2\n2 0\n"),
        ("p5", "a b\nb c\nc d\nd e\n"),
        // line graph of a triangle with a pendant edge
        ("lpaw", "ab bc\nbc ca\nca ab\nca cd\nbc cd\n"),
    ] {
        let g = file(&dir, &format!("{name}.edges"), text);
        let dot = dir.path().join(format!("{name}.dot"));
        let out = orthkit(&["recognize", "--h", "3", "--t", "2", s(&g), "--emit-certificate", s(&dot)]);
        assert_eq!(code(&out), 0, "{name}: {}", stdout(&out));
        let rep = dot.with_extension("rep");
        let v = orthkit(&["validate", "--h", "3", "--t", "2", s(&g), "--representation", s(&rep)]);
        assert_eq!(code(&v), 0, "{name}: {}", stdout(&v));
    }
}

#[test]
fn degree_bound_violation() {
    let dir = TempDir::new().unwrap();
    let k4 = file(&dir, "k4.edges", K4);
    let star = file(&dir, "star.layout", "c a\nc b\nc d\nc e\nleaves:\na 0\nb 1\nd 2\ne 3\n");
    let out = orthkit(&["validate", "--h", "3", "--t", "2", s(&k4), "--layout", s(&star)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("DegreeBound"));
    assert_eq!(code(&orthkit(&["validate", "--h", "4", "--t", "2", s(&k4), "--layout", s(&star)])), 0);
}

#[test]
fn represent_then_validate() {
    let dir = TempDir::new().unwrap();
    let k4 = file(&dir, "k4.edges", K4);
    let layout = file(&dir, "ds.layout", DOUBLE_STAR);
    let lk4 = dir.path().join("lk4.edges");
    let out = orthkit(&["represent", "--h", "3", "--t", "3", s(&k4), s(&layout), "--line-graph-out", s(&lk4)]);
    assert_eq!(code(&out), 0);
    let rep = file(&dir, "lk4.rep", &stdout(&out));
    let v = orthkit(&["validate", "--h", "3", "--t", "3", s(&lk4), "--representation", s(&rep)]);
    assert_eq!(code(&v), 0, "{}", stdout(&v));
    // the same representation is not one at t = 2
    let v = orthkit(&["validate", "--h", "3", "--t", "2", s(&lk4), "--representation", s(&rep)]);
    assert_eq!(code(&v), 1);
}

#[test]
fn validate_layout_examples() {
    let dir = TempDir::new().unwrap();
    let k4 = file(&dir, "k4.edges", K4);
    let layout = file(&dir, "ds.layout", DOUBLE_STAR);
    assert_eq!(code(&orthkit(&["validate", "--h", "3", "--t", "3", s(&k4), "--layout", s(&layout)])), 0);
    let out = orthkit(&["validate", "--h", "3", "--t", "2", s(&k4), "--layout", s(&layout)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("IntersectionTooLarge"));
    let missing = file(&dir, "m.layout", "x y\nx a\nx b\ny c\ny d\nleaves:\na 0\nb 1\nc 2\n");
    let out = orthkit(&["validate", "--h", "3", "--t", "3", s(&k4), "--layout", s(&missing)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("BijectionBroken"));
}

#[test]
fn generate_families() {
    let out = orthkit(&["generate", "extremal-tree", "--h", "3", "--t", "3"]);
    assert_eq!(code(&out), 0);
    let dot = stdout(&out);
    assert!(dot.starts_with("graph T {"));
    assert_eq!(dot.matches("shape=box").count(), 4);
    assert_eq!(dot.matches(" -- ").count(), 5);

    let out = orthkit(&["generate", "separating-example", "--h", "3", "--t", "3"]);
    let text = stdout(&out);
    assert!(text.lines().next().unwrap().contains("∈ ORTH[4,2,3] ∖ ORTH[3,2,3]"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 30);
}

#[test]
fn extremal_layout_of_k6_validates_at_43() {
    let dir = TempDir::new().unwrap();
    let out = orthkit(&["generate", "extremal-tree", "--h", "4", "--t", "3", "--format", "layout"]);
    let layout = file(&dir, "t.layout", &stdout(&out));
    let mut k6 = String::new();
    for a in 0..6 {
        for b in a + 1..6 {
            k6.push_str(&format!("{a} {b}\n"));
        }
    }
    let k6 = file(&dir, "k6.edges", &k6);
    assert_eq!(code(&orthkit(&["validate", "--h", "4", "--t", "3", s(&k6), "--layout", s(&layout)])), 0);
    assert_eq!(code(&orthkit(&["validate", "--h", "3", "--t", "3", s(&k6), "--layout", s(&layout)])), 1);
}

#[test]
fn json_report_schema() {
    let dir = TempDir::new().unwrap();
    let p3 = file(&dir, "p3.edges", "a b\nb c\n");
    let out = orthkit(&["recognize", "--h", "3", "--t", "2", s(&p3), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["verdict"], "Member");
    assert!(v["pipeline_log"].as_array().unwrap().len() >= 2);
}

#[test]
fn root_and_bounds() {
    let dir = TempDir::new().unwrap();
    let claw = file(&dir, "claw.edges", "c a\nc b\nc d\n");
    assert_eq!(code(&orthkit(&["root", s(&claw)])), 1);
    let c4 = file(&dir, "c4.edges", "a b\nb c\nc d\nd a\n");
    let out = orthkit(&["root", s(&c4)]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("root:") && text.contains("phi:"));

    let out = orthkit(&["bounds", "--h", "3", "--t", "3"]);
    let text = stdout(&out);
    assert!(text.contains("max_leaves(3,3) = 4"));
    assert!(text.contains("[5, 6]"));
}

#[test]
fn obstruct_patterns() {
    let dir = TempDir::new().unwrap();
    let petersen = "0 1\n1 2\n2 3\n3 4\n4 0\n0 5\n1 6\n2 7\n3 8\n4 9\n5 7\n7 9\n9 6\n6 8\n8 5\n";
    let p = file(&dir, "pet.edges", petersen);
    let dot = dir.path().join("w.dot");
    let out = orthkit(&["obstruct", s(&p), "--pattern", "K33", "--dot", s(&dot)]);
    assert_eq!(code(&out), 0);
    assert!(fs::read_to_string(&dot).unwrap().starts_with("graph \"K33\""));
    let k4 = file(&dir, "k4.edges", K4);
    assert_eq!(code(&orthkit(&["obstruct", s(&k4), "--pattern", "K33"])), 1);
}

#[test]
fn parameter_and_input_errors() {
    let dir = TempDir::new().unwrap();
    let p3 = file(&dir, "p3.edges", "a b\nb c\n");
    assert!(code(&orthkit(&["recognize", "--h", "1", "--t", "2", s(&p3)])) > 2);
    assert!(code(&orthkit(&["recognize", "--h", "3", "--t", "0", s(&p3)])) > 2);
    let bad = file(&dir, "bad.edges", "a a\n");
    assert!(code(&orthkit(&["recognize", "--h", "3", "--t", "2", s(&bad)])) > 2);
    assert!(code(&orthkit(&["recognize", "--h", "3", "--t", "2", "/nonexistent"])) > 2);
}

#[test]
fn max_n_env_caps_input() {
    let dir = TempDir::new().unwrap();
    let p3 = file(&dir, "p3.edges", "a b\nb c\n");
    let out = Command::new(env!("CARGO_BIN_EXE_orthkit"))
        .args(["recognize", "--h", "3", "--t", "2", s(&p3)])
        .env("ORTHKIT_MAX_N", "2")
        .output()
        .unwrap();
    assert!(code(&out) > 2);
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "g.edges", "a b\nb c\nc a\nc d\nd e\ne f\nf d\nf g\n");
    let a = orthkit(&["recognize", "--h", "4", "--t", "2", s(&g), "--json"]);
    let b = orthkit(&["recognize", "--h", "4", "--t", "2", s(&g), "--json"]);
    assert_eq!(a.stdout, b.stdout);
}
