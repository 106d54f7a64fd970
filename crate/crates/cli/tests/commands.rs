use std::path::Path;
use std::process::{Command, Output};

fn semilab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semilab")).args(args).output().expect("run semilab")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn table_counts() {
    let o = semilab(&["table", "b2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("H=5 L=3 R=3 D=2 J=2"));
    assert!(stdout(&semilab(&["table", "np:4"])).contains("H=5 L=5 R=5 D=5 J=5"));
    assert!(stdout(&semilab(&["table", "prod:rz:3,null:2"])).contains(" R=4 "));
}

#[test]
fn parse_failures_exit_2() {
    assert_eq!(semilab(&["table", "b3"]).status.code(), Some(2));
    assert_eq!(semilab(&["table", "bicyclic:4"]).status.code(), Some(2));
    assert_eq!(semilab(&["munn", ""]).status.code(), Some(2));
    assert_eq!(semilab(&["identity", "b2", "x = (y"]).status.code(), Some(2));
    assert_eq!(semilab(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn table_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "z2.table", "elements: e g\nrow e: e g\nrow g: g e\n");
    let o = semilab(&["table", &path]);
    assert!(stdout(&o).contains("H=1 L=1 R=1 D=1 J=1"), "{}", stdout(&o));
}

#[test]
fn munn_examples() {
    assert!(stdout(&semilab(&["munn", "a a^-1"])).contains("idempotent: true"));
    assert!(stdout(&semilab(&["munn", "a^-1 a a"])).contains("triple: (1,1,1)"));
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("t.dot");
    let o = semilab(&["munn", "a b b^-1", "--dot", dot.to_str().unwrap()]);
    assert!(stdout(&o).contains("vertices: 3"));
    assert!(std::fs::read_to_string(dot).unwrap().starts_with("digraph"));
}

#[test]
fn stephen_examples() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.pres", "inv-monoid a b ; b b = b ; b = b a b a^-1 ; a a^-1 = 1\n");
    let o = semilab(&["stephen", &m, "b", "--equal", "b b"]);
    assert!(stdout(&o).contains("equal (stage"), "{}", stdout(&o));
    let o = semilab(&["stephen", &m, "b", "--stages", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("unknown") && stdout(&o).contains("stage vertices: 2 2 3 4 5"));
    let idem = write(dir.path(), "idem.pres", "inv-monoid a ; a a = a\n");
    let dots = dir.path().join("dots");
    let o = semilab(&["stephen", &idem, "a", "--dot-dir", dots.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("closed"));
    assert!(dots.join("stage1.dot").is_file());
    let bad = write(dir.path(), "bad.pres", "inv-group a\n");
    assert_eq!(semilab(&["stephen", &bad, "a"]).status.code(), Some(2));
}

#[test]
fn identity_examples() {
    let o = semilab(&["identity", "pz:15", "ROLSTAR", "--window", "15"]);
    assert!(stdout(&o).contains("holds on [-15, 15] (window-verified, not certified)"), "{}", stdout(&o));
    assert!(stdout(&semilab(&["identity", "b2", "inverse"])).contains("holds"));
    let o = semilab(&["identity", "lz:2", "inverse"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("counterexample x=l0, y=l1"));
}

#[test]
fn vmaps_text_form() {
    let o = semilab(&["vmaps", "phi^2"]);
    assert!(stdout(&o).starts_with("V(1,0) + (0,2)\nimage: V(1,2)"));
    let o = semilab(&["vmaps", "--ball", "2"]);
    assert!(stdout(&o).lines().nth(1).unwrap().contains("phi\tV(0,0)\t(0,1)"));
}

#[test]
fn deterministic_output() {
    let a = semilab(&["green", "bicyclic:5"]);
    let b = semilab(&["green", "bicyclic:5"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("L witnessed (radius:classes) 1:2 2:3 3:4 4:5 5:6 [apparently infinite]"));
}
