//! End-to-end tests of the command-line surface: golden outputs for the
//! documented examples, exit codes, and round-trips through verify.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_totalgraph"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, content: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, content).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_families_are_deterministic() {
    let a = run(&["gen", "--family", "complete", "--n", "6"]);
    assert_eq!(code(&a), 0);
    assert!(stdout(&a).starts_with("p 6 15\n"));

    let c5 = run(&["gen", "--family", "cycle", "--n", "5"]);
    assert_eq!(stdout(&c5), "p 5 5\ne 0 1\ne 0 4\ne 1 2\ne 2 3\ne 3 4\n");

    let r1 = run(&["gen", "--family", "random-5-partite", "--n", "40", "--p", "0.3", "--seed", "7"]);
    let r2 = run(&["gen", "--family", "random-5-partite", "--n", "40", "--p", "0.3", "--seed", "7"]);
    assert_eq!(stdout(&r1), stdout(&r2));
    let r3 = run(&["gen", "--family", "random-5-partite", "--n", "40", "--p", "0.3", "--seed", "8"]);
    assert_ne!(stdout(&r1), stdout(&r3));

    assert_eq!(code(&run(&["gen", "--family", "cycle", "--n", "2"])), 2);
}

#[test]
fn derive_total_on_k2_is_a_triangle() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "k2.txt", "p 2 1\ne 0 1\n");
    let out = run(&["derive", "--input", path_str(&input), "--which", "total"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "p 3 3\ne 0 1\ne 0 2\ne 1 2\nc element 0 v 0\nc element 1 v 1\nc element 2 e 0 1\n"
    );
}

#[test]
fn derive_line_of_p3_is_k2() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "p3.txt", "p 3 2\ne 0 1\ne 1 2\n");
    let out = run(&["derive", "--input", path_str(&input), "--which", "line"]);
    assert_eq!(stdout(&out), "p 2 1\ne 0 1\n");
}

#[test]
fn derive_square_of_subdivision_matches_total() {
    let dir = TempDir::new().unwrap();
    let k3 = write(&dir, "k3.txt", "p 3 3\ne 0 1\ne 0 2\ne 1 2\n");
    let sub = dir.path().join("sub.txt");
    let out = run(&[
        "derive",
        "--input",
        path_str(&k3),
        "--which",
        "subdivision",
        "--output",
        path_str(&sub),
    ]);
    assert_eq!(code(&out), 0);
    let squared = run(&["derive", "--input", path_str(&sub), "--which", "square"]);
    let total = run(&["derive", "--input", path_str(&k3), "--which", "total"]);
    // the total output carries element-map comments; the edge lists must agree
    let total_graph_only: String = stdout(&total)
        .lines()
        .filter(|l| !l.starts_with('c'))
        .map(|l| format!("{l}\n"))
        .collect();
    assert_eq!(stdout(&squared), total_graph_only);
}

#[test]
fn derive_dot_styles_evertices() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "k2.txt", "p 2 1\ne 0 1\n");
    let out = run(&["derive", "--input", path_str(&input), "--which", "total", "--format", "dot"]);
    let text = stdout(&out);
    assert!(text.contains("shape=circle"));
    assert!(text.contains("shape=box"));
}

#[test]
fn parse_errors_carry_line_numbers_and_exit_2() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "bad.txt", "p 3 1\ne 0 3\n");
    let out = run(&["derive", "--input", path_str(&input), "--which", "line"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn color_total_round_trips_through_verify() {
    let dir = TempDir::new().unwrap();
    let c5 = write(&dir, "c5.txt", "p 5 5\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 0\n");
    let coloring = dir.path().join("coloring.json");
    let out = run(&[
        "color-total",
        "--input",
        path_str(&c5),
        "--output",
        path_str(&coloring),
    ]);
    assert_eq!(code(&out), 0);
    let verify = run(&[
        "verify",
        "--input",
        path_str(&c5),
        "--artifact",
        path_str(&coloring),
        "--kind",
        "coloring",
    ]);
    assert_eq!(code(&verify), 0, "{}", stdout(&verify));
    assert!(stdout(&verify).contains("valid"));
}

#[test]
fn color_total_on_petersen_stays_within_six_colors() {
    let dir = TempDir::new().unwrap();
    let petersen = stdout(&run(&["gen", "--family", "petersen"]));
    let pfile = write(&dir, "petersen.txt", &petersen);
    let coloring = dir.path().join("coloring.json");
    let out = run(&[
        "color-total",
        "--input",
        path_str(&pfile),
        "--output",
        path_str(&coloring),
    ]);
    assert_eq!(code(&out), 0);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("(Delta+3 = 6)"), "{stderr}");
    let verify = run(&[
        "verify",
        "--input",
        path_str(&pfile),
        "--artifact",
        path_str(&coloring),
        "--kind",
        "coloring",
    ]);
    assert_eq!(code(&verify), 0);
}

#[test]
fn derive_json_exposes_the_element_map() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "k2.txt", "p 2 1\ne 0 1\n");
    let out = run(&["derive", "--input", path_str(&input), "--which", "total", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["n"], 3);
    assert_eq!(value["element_map"][0], serde_json::json!({"kind": "v", "id": 0}));
    assert_eq!(value["element_map"][2], serde_json::json!({"kind": "e", "u": 0, "v": 1}));
}

#[test]
fn color_total_rejects_k6() {
    let dir = TempDir::new().unwrap();
    let k6 = write(
        &dir,
        "k6.txt",
        &{
            let mut s = String::from("p 6 15\n");
            for u in 0..6 {
                for v in u + 1..6 {
                    s.push_str(&format!("e {u} {v}\n"));
                }
            }
            s
        },
    );
    let out = run(&["color-total", "--input", path_str(&k6)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not 5-colorable"));
}

#[test]
fn color_total_accepts_external_coloring() {
    let dir = TempDir::new().unwrap();
    let c4 = write(&dir, "c4.txt", "p 4 4\ne 0 1\ne 1 2\ne 2 3\ne 3 0\n");
    let ext = write(&dir, "ext.json", r#"{"vertex_colors": [1, 2, 1, 2]}"#);
    let out = run(&[
        "color-total",
        "--input",
        path_str(&c4),
        "--external-coloring",
        path_str(&ext),
    ]);
    assert_eq!(code(&out), 0);

    let bad = write(&dir, "bad.json", r#"{"vertex_colors": [1, 1, 1, 1]}"#);
    let out = run(&[
        "color-total",
        "--input",
        path_str(&c4),
        "--external-coloring",
        path_str(&bad),
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_flags_a_conflicting_coloring() {
    let dir = TempDir::new().unwrap();
    let k2 = write(&dir, "k2.txt", "p 2 1\ne 0 1\n");
    let artifact = write(
        &dir,
        "coloring.json",
        r#"{"vertex_colors": [1, 2], "edge_colors": [{"u": 0, "v": 1, "color": 1}]}"#,
    );
    let out = run(&[
        "verify",
        "--input",
        path_str(&k2),
        "--artifact",
        path_str(&artifact),
        "--kind",
        "coloring",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("violation"));
}

#[test]
fn oracle_values_and_guards() {
    let dir = TempDir::new().unwrap();
    let c5 = write(&dir, "c5.txt", "p 5 5\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 0\n");
    let out = run(&["oracle", "--input", path_str(&c5), "--quantity", "chi-double-prime"]);
    assert_eq!(stdout(&out), "4\n");

    let petersen = stdout(&run(&["gen", "--family", "petersen"]));
    let pfile = write(&dir, "petersen.txt", &petersen);
    let out = run(&["oracle", "--input", path_str(&pfile), "--quantity", "chi"]);
    assert_eq!(stdout(&out), "3\n");

    let k30 = stdout(&run(&["gen", "--family", "complete", "--n", "30"]));
    let kfile = write(&dir, "k30.txt", &k30);
    let out = run(&["oracle", "--input", path_str(&kfile), "--quantity", "chi-double-prime"]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("too large"));

    let out = run(&[
        "oracle",
        "--input",
        path_str(&c5),
        "--quantity",
        "criticality",
        "--t",
        "4",
    ]);
    assert_eq!(stdout(&out), "true\n");
}

#[test]
fn minor_modes_and_preconditions() {
    let dir = TempDir::new().unwrap();
    let k6 = stdout(&run(&["gen", "--family", "complete", "--n", "6"]));
    let k6file = write(&dir, "k6.txt", &k6);
    let cert = dir.path().join("cert.json");
    let out = run(&[
        "minor",
        "--input",
        path_str(&k6file),
        "--mode",
        "connectivity",
        "--k",
        "3",
        "--output",
        path_str(&cert),
    ]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("order 8"));
    let verify = run(&[
        "verify",
        "--input",
        path_str(&k6file),
        "--artifact",
        path_str(&cert),
        "--kind",
        "certificate",
    ]);
    assert_eq!(code(&verify), 0);

    let c4 = write(&dir, "c4.txt", "p 4 4\ne 0 1\ne 1 2\ne 2 3\ne 3 0\n");
    let out = run(&["minor", "--input", path_str(&c4), "--mode", "connectivity", "--k", "3"]);
    assert_eq!(code(&out), 2);

    let c5 = write(&dir, "c5.txt", "p 5 5\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 0\n");
    let out = run(&["minor", "--input", path_str(&c5), "--mode", "critical2"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("order 4"));
}
