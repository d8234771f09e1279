use std::fs;
use std::path::Path;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv: Vec<&str> = std::iter::once("chvd").chain(args.iter().copied()).collect();
    let code = chvd_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

const C4: &str = "p chvd 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\nn 1 5\nn 2 5\nn 3 2\nn 4 5\n";

#[test]
fn solve_four_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "c4.gr", C4);
    let (code, out, err) = run(&["solve", &g]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out, "deletion_weight 2\n3\nVERIFIED\n");
    assert!(err.starts_with("warning: no decomposition given"));
}

#[test]
fn solve_with_given_decomposition() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "c4.gr", C4);
    let td = write(dir.path(), "c4.td", "s td 2 3 4\nb 1 1 2 3\nb 2 1 3 4\n1 2\n");
    let (code, out, err) = run(&["solve", &g, "--td", &td]);
    assert_eq!(code, 0, "{err}");
    assert!(out.starts_with("deletion_weight 2\n"));
    assert!(err.is_empty());
    assert_eq!(run(&["check-td", &g, &td]).1, "valid width 2\n");
}

#[test]
fn oracle_agrees() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "c4.gr", C4);
    assert_eq!(run(&["oracle", &g]).1, "deletion_weight 2\n3\nVERIFIED\n");
}

#[test]
fn random_cross_check() {
    let (code, out, _) = run(&["cross", "--random", "50", "--n", "10", "--seed", "3"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("agree 50\n"));
}

#[test]
fn generated_choice_gadget() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h1.gr");
    let (code, _, _) = run(&["gen", "choice", "--s", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let g = chvd_core::io::read_graph(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(g.n(), 75);
    let labels = fs::read_to_string(dir.path().join("h1.gr.labels")).unwrap();
    let labels = chvd_core::io::read_labels(&labels).unwrap();
    assert_eq!(labels.entries.len(), 2 + 3 + 4 * 11);
    assert!(labels.entries.iter().all(|(_, v)| *v < 75));
    assert!(labels.get("v_left").is_some());
}

#[test]
fn generated_reduction_to_stdout() {
    let (code, out, _) = run(&["gen", "perm-clique", "--k", "2", "--seed", "1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("c budget "));
    assert!(out.lines().any(|l| l.starts_with("c planted permutation ")));
    assert!(out.lines().any(|l| l.starts_with("c label C1_2:")));
    chvd_core::io::read_graph(&out).unwrap();
}

#[test]
fn subdivision_doubles_up() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "c4.gr", C4);
    let (code, out, _) = run(&["gen", "fvs-subdivision", &g]);
    assert_eq!(code, 0);
    let h = chvd_core::io::read_graph(&out).unwrap();
    assert_eq!((h.n(), h.m()), (8, 8));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.gr", "p chvd 2 1\ne 1 3\n");
    let (code, _, err) = run(&["solve", &bad]);
    assert_eq!(code, 1);
    assert!(err.contains("line 2"), "{err}");
    assert_eq!(run(&["solve", "/nonexistent/graph"]).0, 1);
    assert_eq!(run(&["frobnicate"]).0, 1);

    let g = write(dir.path(), "c4.gr", C4);
    let uncovering = write(dir.path(), "u.td", "s td 2 2 4\nb 1 1 2\nb 2 3 4\n1 2\n");
    let (code, _, err) = run(&["check-td", &g, &uncovering]);
    assert_eq!(code, 2, "{err}");
    assert_eq!(run(&["solve", &g, "--td", &uncovering]).0, 2);
    assert_eq!(run(&["gen", "perm-clique", "--k", "9"]).0, 2);
    assert_eq!(run(&["cross"]).0, 2);
}

#[test]
fn selftest_passes() {
    let (code, out, _) = run(&["selftest", "--count", "10"]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains("FAIL"));
}
