use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const H1: &str = "1, 0, D\nD, 1+D, 0\n";
const Z1: &str = "110 101 101 011\n";
const H2: &str = "D^2+D^3, D, 1\nD^2, 1+D+D^2, D^2\n";
const H2_DELAYED: &str = "D^2+D^3, D^3, D^2\nD^2, D^2+D^3+D^4, D^4\n";
const Z2: &str = "110 011 101 001 100 111\n";
const G1: &str = "D+D^2, D^2, 1+D\n";

/// The four error paths through state (1,0) of the H1 error trellis.
const E_Q: [&str; 4] = [
    "100 110 010 111",
    "100 111 111 001",
    "101 010 001 001",
    "101 011 100 111",
];

/// The same paths after shifting column 3 forward by one.
const E_P: [&str; 4] = [
    "101 110 010 110",
    "101 110 111 001",
    "101 011 000 001",
    "101 011 101 110",
];

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace {
            dir: tempfile::tempdir().expect("tempdir"),
        }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        fs::write(&path, contents).expect("write input");
        path
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

fn run<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_tbtrellis"))
        .args(args)
        .output()
        .expect("spawn tbtrellis")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 stdout")
}

fn p(path: &Path) -> &str {
    path.to_str().expect("utf-8 path")
}

#[test]
fn check_reports_canonical_matrix() {
    let ws = Workspace::new();
    let h2 = ws.file("h2.txt", H2);
    let out = run(["check", p(&h2)]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("m=2, n=3"), "{text}");
    assert!(text.contains("row degrees: 3, 2"), "{text}");
    assert!(text.contains("M=3, ν=5, canonical"), "{text}");
}

#[test]
fn check_diagnoses_delayed_matrix() {
    let ws = Workspace::new();
    let h = ws.file("h2p.txt", H2_DELAYED);
    let out = run(["check", p(&h)]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("not canonical (rows share monomial factors)"));
}

#[test]
fn empty_matrix_is_a_parse_error() {
    let ws = Workspace::new();
    let empty = ws.file("empty.txt", "");
    let out = run(["check", p(&empty)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("parse error at line 1"), "{err}");
}

#[test]
fn missing_file_is_an_io_error() {
    let ws = Workspace::new();
    let out = run(["check", p(&ws.path("absent.txt"))]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn error_trellis_summary() {
    let ws = Workspace::new();
    let (h, z) = (ws.file("h1.txt", H1), ws.file("z.txt", Z1));
    let out = run(["trellis", p(&h), "--error", p(&z)]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("error trellis: N=4, 4 states/section"), "{text}");
    assert!(text.contains("σ_fin=(1,1)"), "{text}");
    assert!(text.contains("ζ=00 10 01 10"), "{text}");
}

#[test]
fn code_trellis_summary() {
    let ws = Workspace::new();
    let g = ws.file("g1.txt", G1);
    let out = run(["trellis", p(&g), "--code", "4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("code trellis: N=4, 4 states/section"));
}

#[test]
fn highlight_exports_four_bold_paths() {
    let ws = Workspace::new();
    let (h, z) = (ws.file("h1.txt", H1), ws.file("z.txt", Z1));
    let dot = ws.path("t.dot");
    let out = run([
        "trellis", p(&h), "--error", p(&z), "--highlight", "(1,0)", "--export", p(&dot),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("subtrellis (1,0): 4 paths"), "{text}");
    for path in E_Q {
        assert!(text.contains(path), "missing {path}");
    }
    let graph = fs::read_to_string(&dot).unwrap();
    assert!(graph.starts_with("digraph"));
    assert!(graph.contains("bold"));
}

#[test]
fn forward_reduction_verifies() {
    let ws = Workspace::new();
    let (h, z) = (ws.file("h1.txt", H1), ws.file("z.txt", Z1));
    let plan = ws.path("plan.txt");
    let out = run([
        "reduce", p(&h), "--error", p(&z), "--auto-forward", "--verify", "--plan-out", p(&plan),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("ν 2→1"), "{text}");
    assert!(text.contains("z~=111 100 101 011"), "{text}");
    assert!(text.contains("σ~_fin=(1)"), "{text}");
    assert!(text.contains("(1,0) -> (0)  admissible: column 3 section 1 = 1"), "{text}");
    assert!(text.contains("all 4 subtrellises embedded: pass"), "{text}");
    assert_eq!(fs::read_to_string(&plan).unwrap(), "column 3: forward 1\n");
}

#[test]
fn forward_reduction_of_h2_prints_reduced_matrix() {
    let ws = Workspace::new();
    let (h, z) = (ws.file("h2.txt", H2), ws.file("z.txt", Z2));
    let out = run(["reduce", p(&h), "--error", p(&z), "--auto-forward"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("H~:\n  1+D, D, 1\n  1, 1+D+D^2, D^2\n"), "{text}");
    assert!(text.contains("ν 5→3"), "{text}");
}

#[test]
fn backward_reduction_of_h2() {
    let ws = Workspace::new();
    let (h, z) = (ws.file("h2.txt", H2), ws.file("z.txt", Z2));
    let out = run(["reduce", p(&h), "--error", p(&z), "--backward", "2:2,3:2", "--verify"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("H':\n  D^2+D^3, D^3, D^2\n  D^2, D^2+D^3+D^4, D^4\n"), "{text}");
    assert!(text.contains("H~:\n  1+D, D, 1\n  1, 1+D+D^2, D^2\n"), "{text}");
    assert!(text.contains("restored path set: pass"), "{text}");
}

#[test]
fn code_reduction_verifies() {
    let ws = Workspace::new();
    let g = ws.file("g1.txt", G1);
    let out = run(["reduce", p(&g), "--code", "4", "--verify"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("G~:\n  1+D, D, 1+D\n"), "{text}");
    assert!(text.contains("all 4 subtrellises embedded: pass"), "{text}");
}

#[test]
fn matrix_without_factors_is_a_plan_error() {
    let ws = Workspace::new();
    let h = ws.file("h.txt", "1+D^2, 1+D, 1\n");
    let z = ws.file("z.txt", "0 0 0 0\n");
    let out = run(["reduce", p(&h), "--error", p(&z), "--auto-forward"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn malformed_backward_spec_is_a_usage_error() {
    let ws = Workspace::new();
    let (h, z) = (ws.file("h2.txt", H2), ws.file("z.txt", Z2));
    let out = run(["reduce", p(&h), "--error", p(&z), "--backward", "9:2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_passes_for_reference_trellises() {
    let ws = Workspace::new();
    let (h, z, g) = (ws.file("h1.txt", H1), ws.file("z.txt", Z1), ws.file("g1.txt", G1));
    let out = run(["verify", p(&h), "--error", p(&z)]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("subtrellises vs brute force: 4 of 4 pass"));
    let out = run(["verify", p(&g), "--code", "4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("trellis paths vs brute force: pass (16 paths)"));
}

#[test]
fn restore_maps_reduced_paths_to_original() {
    let ws = Workspace::new();
    let plan = ws.file("plan.txt", "column 3: forward 1\n");
    let reduced = ws.file("ep.txt", &format!("# reduced\n{}\n", E_P.join("\n")));
    let out = run(["restore", p(&reduced), "--plan", p(&plan)]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), format!("{}\n", E_Q.join("\n")));
}

#[test]
fn restore_of_empty_file_is_empty() {
    let ws = Workspace::new();
    let plan = ws.file("plan.txt", "column 3: forward 1\n");
    let empty = ws.file("empty.txt", "");
    let target = ws.path("out.txt");
    let out = run(["restore", p(&empty), "--plan", p(&plan), "-o", p(&target)]);
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(&target).unwrap(), "");
}

#[test]
fn shift_then_restore_round_trips() {
    let ws = Workspace::new();
    let plan = ws.file("plan.txt", "column 1: backward 2\ncolumn 3: backward 1\n");
    let lines = "110 011 101 001 100 111\n000 111 010 101 011 001\n";
    let input = ws.file("in.txt", lines);
    let shifted = ws.path("shifted.txt");
    let restored = ws.path("restored.txt");
    assert!(run(["shift", p(&input), "--plan", p(&plan), "-o", p(&shifted)]).status.success());
    assert_ne!(fs::read_to_string(&shifted).unwrap(), lines);
    assert!(run(["restore", p(&shifted), "--plan", p(&plan), "-o", p(&restored)]).status.success());
    assert_eq!(fs::read_to_string(&restored).unwrap(), lines);
}

#[test]
fn bad_sequence_line_reports_its_line() {
    let ws = Workspace::new();
    let plan = ws.file("plan.txt", "column 3: forward 1\n");
    let input = ws.file("in.txt", "# header\n100 110 010 111\n100 11 010 111\n");
    let out = run(["restore", p(&input), "--plan", p(&plan)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn output_is_deterministic() {
    let ws = Workspace::new();
    let (h, z) = (ws.file("h2.txt", H2), ws.file("z.txt", Z2));
    let args = ["reduce", p(&h), "--error", p(&z), "--verify", "--export", "-"];
    let first = run(args);
    let second = run(args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}
