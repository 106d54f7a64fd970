//! Acceptance suite: criteria 1–11 through the report runner, criterion 12
//! through the built binary. Prints one PASS/FAIL line per criterion.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use semilab_core::engine::write_table;
use semilab_core::report::{run_criterion, Fixtures, Status, CRITERIA};
use semilab_core::zoo::b2;

const REPORT_LIMIT: Duration = Duration::from_secs(120);

fn line(id: u8, ok: bool, elapsed: Duration, limit: Duration, note: &str) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    let text = format!("criterion {id:>2}: {verdict} ({} ms, limit {} s) {note}\n", elapsed.as_millis(), limit.as_secs());
    let _ = std::io::stderr().write_all(text.as_bytes());
}

fn corrupted_b2() -> String {
    // one product entry changed: 0·a becomes a
    let text = write_table(&b2());
    let mut out = String::new();
    for l in text.lines() {
        if let Some(rest) = l.strip_prefix("row 0: ") {
            let mut cells: Vec<&str> = rest.split_whitespace().collect();
            cells[0] = "a";
            out.push_str(&format!("row 0: {}\n", cells.join(" ")));
        } else {
            out.push_str(l);
            out.push('\n');
        }
    }
    assert_ne!(out, text);
    out
}

fn criterion_12() -> (bool, String) {
    let bin = env!("CARGO_BIN_EXE_semilab");
    let dir = tempfile::tempdir().expect("tempdir");
    let out = dir.path().join("report");
    let clean = Command::new(bin).arg("paper-report").arg("--out").arg(&out).output().expect("run semilab");
    let files_ok = ["report.md", "report.json"].iter().all(|f| out.join(f).is_file())
        && (1..=CRITERIA).all(|id| out.join(format!("criterion-{id:02}.json")).is_file());

    let fixtures = dir.path().join("fixtures");
    std::fs::create_dir(&fixtures).expect("fixture dir");
    std::fs::write(fixtures.join("b2.table"), corrupted_b2()).expect("fixture");
    let tampered = Command::new(bin)
        .args(["paper-report", "--only", "1", "--out"])
        .arg(dir.path().join("tampered"))
        .arg("--fixtures")
        .arg(&fixtures)
        .output()
        .expect("run semilab");

    let ok = clean.status.code() == Some(0) && files_ok && tampered.status.code() == Some(1);
    let note = format!(
        "clean exit {:?}, files {}, tampered exit {:?}",
        clean.status.code(),
        if files_ok { "present" } else { "missing" },
        tampered.status.code()
    );
    (ok, note)
}

#[test]
fn acceptance_criteria() {
    let mut failed = Vec::new();
    for id in 1..=CRITERIA {
        let e = run_criterion(id, &Fixtures::default());
        let limit = Duration::from_secs(e.limit_s);
        let ok = e.status != Status::Failed && e.within_limit();
        let failures: Vec<String> = e.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect();
        line(id, ok, e.elapsed(), limit, &format!("[{}] {}", e.status, failures.join("; ")));
        if !ok {
            failed.push(id);
        }
    }
    let start = Instant::now();
    let (ok, note) = criterion_12();
    let elapsed = start.elapsed();
    let ok = ok && elapsed <= REPORT_LIMIT;
    line(12, ok, elapsed, REPORT_LIMIT, &note);
    if !ok {
        failed.push(12);
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
