use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const FIGURE: &str = "a,a,a\na,a,a\na,a,a\na,a,a\na,b,a\nb,b,b\nb,b,c\n";
const K4: &str = "p 4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

fn kanon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kanon"))
        .args(args)
        .env_remove("KANON_THREADS")
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn report(p: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn worked_example_suppresses_four_entries() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "t.csv", FIGURE);
    let rep = dir.path().join("r.json");
    let out = kanon(&["anonymize", s(&input), "--k", "2", "--report", s(&rep)]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.matches('*').count(), 4);
    let r = report(&rep);
    assert_eq!(r["cost"], 4);
    assert_eq!(r["suppressed"].as_array().unwrap().len(), 4);
    assert_eq!(r["blocks"], serde_json::json!([[0, 1, 2], [3, 4], [5, 6]]));
}

#[test]
fn both_algorithms_agree_on_cost() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "t.csv", FIGURE);
    for alg in ["fpt", "brute"] {
        let rep = dir.path().join(format!("{alg}.json"));
        let out = kanon(&[
            "anonymize",
            s(&input),
            "--k",
            "2",
            "--algorithm",
            alg,
            "--report",
            s(&rep),
        ]);
        assert!(out.status.success());
        assert_eq!(report(&rep)["cost"], 4, "{alg}");
        assert_eq!(
            String::from_utf8(out.stdout).unwrap().matches('*').count(),
            4
        );
    }
}

#[test]
fn anonymous_input_is_unchanged() {
    let dir = TempDir::new().unwrap();
    let text = "x,y\nx,y\nz,w\nz,w\n";
    let input = write(&dir, "t.csv", text);
    let rep = dir.path().join("r.json");
    let out = kanon(&["anonymize", s(&input), "--k", "2", "--report", s(&rep)]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), text);
    assert_eq!(report(&rep)["cost"], 0);
}

#[test]
fn header_is_preserved() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "t.csv", "age,zip\n30,1\n31,1\n");
    let out = kanon(&["anonymize", s(&input), "--k", "2", "--header"]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "age,zip\n*,1\n*,1\n"
    );
}

#[test]
fn unmet_budget_exits_two() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "t.csv", FIGURE);
    let rep = dir.path().join("r.json");
    let out = kanon(&[
        "anonymize",
        s(&input),
        "--k",
        "2",
        "--budget",
        "3",
        "--report",
        s(&rep),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert_eq!(report(&rep)["solved"], false);
    let ok = kanon(&["anonymize", s(&input), "--k", "2", "--budget", "4"]);
    assert!(ok.status.success());
}

#[test]
fn malformed_inputs_exit_one() {
    let dir = TempDir::new().unwrap();
    let ragged = write(&dir, "ragged.csv", "a,b\nc\n");
    let star = write(&dir, "star.csv", "a,*\na,b\n");
    let small = write(&dir, "small.csv", "a\nb\n");
    for (path, k) in [(&ragged, "1"), (&star, "1"), (&small, "3"), (&small, "0")] {
        let out = kanon(&["anonymize", s(path), "--k", k]);
        assert_eq!(out.status.code(), Some(1), "{} k={k}", path.display());
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    }
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "t.csv", "1,2,3\n1,2,4\n1,3,3\n2,2,3\n2,3,4\n1,1,1\n");
    let run = |tag: &str| {
        let rep = dir.path().join(format!("{tag}.json"));
        let out = kanon(&["anonymize", s(&input), "--k", "2", "--report", s(&rep)]);
        assert!(out.status.success());
        (out.stdout, std::fs::read(&rep).unwrap())
    };
    assert_eq!(run("a"), run("b"));
}

#[test]
fn report_cost_matches_star_count() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "t.csv", "p,q,r\np,q,s\nt,q,r\nt,u,r\nt,u,s\n");
    for k in 1..=5 {
        let rep = dir.path().join("r.json");
        let out = kanon(&[
            "anonymize",
            s(&input),
            "--k",
            &k.to_string(),
            "--report",
            s(&rep),
        ]);
        assert!(out.status.success());
        let stars = String::from_utf8(out.stdout).unwrap().matches('*').count();
        assert_eq!(report(&rep)["cost"], stars, "k={k}");
    }
}

#[test]
fn vcc_gadget_on_k4() {
    let dir = TempDir::new().unwrap();
    let graph = write(&dir, "k4.txt", K4);
    let table = dir.path().join("g.csv");
    let meta = dir.path().join("g.json");
    let out = kanon(&[
        "gadget",
        "vcc",
        s(&graph),
        "--out",
        s(&table),
        "--report",
        s(&meta),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(std::fs::read_to_string(&table).unwrap().lines().count(), 81);
    let m = report(&meta);
    assert_eq!(m["k"], 3);
    assert_eq!(m["rows"], 81);
    assert_eq!(m["base_cost"], 99);

    let cover = write(&dir, "cover.txt", "0 1 2\n");
    let out = kanon(&["gadget", "vcc", s(&graph), "--certify", s(&cover)]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .starts_with("cost 108 "));

    let not_cover = write(&dir, "bad.txt", "0 1\n");
    let out = kanon(&["gadget", "vcc", s(&graph), "--certify", s(&not_cover)]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn vcc_rejects_non_cubic_graph() {
    let dir = TempDir::new().unwrap();
    let graph = write(&dir, "path.txt", "0 1\n1 2\n");
    let out = kanon(&["gadget", "vcc", s(&graph)]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn clique_gadget_on_triangle() {
    let dir = TempDir::new().unwrap();
    let graph = write(&dir, "tri.txt", "0 1\n1 2\n0 2\n");
    let meta = dir.path().join("g.json");
    let out = kanon(&[
        "gadget",
        "clique",
        s(&graph),
        "--h",
        "2",
        "--report",
        s(&meta),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 34);
    let m = report(&meta);
    assert_eq!(
        (m["k"].as_u64(), m["budget"].as_u64(), m["rows"].as_u64()),
        (Some(8), Some(48), Some(34))
    );

    let clique = write(&dir, "c.txt", "0 2\n");
    let out = kanon(&[
        "gadget",
        "clique",
        s(&graph),
        "--h",
        "2",
        "--certify",
        s(&clique),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("clique recovered"));

    let out = kanon(&["gadget", "clique", s(&graph), "--h", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn selftest_passes_and_detects_faults() {
    let out = kanon(&["selftest", "--seed", "7", "--trials", "40"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let again = kanon(&["selftest", "--seed", "7", "--trials", "40"]);
    assert_eq!(out.stdout, again.stdout);

    let broken = kanon(&["selftest", "--trials", "3", "--inject-fault"]);
    assert_eq!(broken.status.code(), Some(3));
    assert!(!broken.stderr.is_empty());
}
