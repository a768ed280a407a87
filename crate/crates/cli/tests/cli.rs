use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_instanton"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("instanton-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn sample_then_validate() {
    let dir = scratch("validate");
    let m = dir.join("m.json");
    let m = m.to_str().unwrap();
    let o = run(&["sample", "-r", "2", "-n", "2", "--seed", "7", "-o", m]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["validate", m]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn cohomology_csv_has_seven_rows() {
    let dir = scratch("coh");
    let m = dir.join("m.json");
    let m = m.to_str().unwrap();
    run(&["sample", "-r", "2", "-n", "2", "--seed", "7", "-o", m]);
    let o = run(&["cohomology", m, "--twists", "-4:2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "k,h0,h1,h2,h3");
    assert_eq!(lines.len(), 8);
    assert_eq!(lines[3], "-2,0,0,0,0");
    assert_eq!(lines[4], "-1,0,2,0,0");
}

#[test]
fn roundtrip_enforces_canonical_form() {
    let dir = scratch("rt");
    let m = dir.join("m.json");
    run(&["sample", "-r", "2", "-n", "1", "-o", m.to_str().unwrap()]);
    let o = run(&["roundtrip", m.to_str().unwrap()]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "true\n"));
    let spaced = dir.join("spaced.json");
    fs::write(&spaced, fs::read_to_string(&m).unwrap().replacen(':', ": ", 1)).unwrap();
    let o = run(&["roundtrip", spaced.to_str().unwrap()]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(1), "false\n"));
    let a = dir.join("a.json");
    run(&["adhm", "solve", "-r", "2", "-o", a.to_str().unwrap()]);
    assert_eq!(run(&["roundtrip", a.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn reports_are_reproducible() {
    let dir = scratch("repro");
    let m = dir.join("m.json");
    let m = m.to_str().unwrap();
    run(&["sample", "-r", "2", "-n", "1", "--seed", "3", "-o", m]);
    let a = run(&["end-check", m, "--seed", "5"]);
    let b = run(&["end-check", m, "--seed", "5"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let line = stdout(&a);
    for key in ["\"version\"", "\"prime\"", "\"bound\"", "\"field\""] {
        assert!(line.contains(key), "{key} missing from {line}");
    }
}

#[test]
fn suite_on_small_grid() {
    let dir = scratch("suite");
    let summary = dir.join("summary.csv");
    let o = run(&[
        "suite",
        "--grid",
        "2:1,2:2",
        "--seed",
        "1",
        "--summary",
        summary.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().count() >= 10);
    let csv = fs::read_to_string(summary).unwrap();
    assert!(csv.starts_with("check,status,inputs\n"));
    assert!(!csv.contains(",fail,"));
}

#[test]
fn adhm_pipeline() {
    let dir = scratch("adhm");
    let a = dir.join("a.json");
    let m = dir.join("m.json");
    run(&["adhm", "solve", "-r", "2", "--seed", "4", "-o", a.to_str().unwrap()]);
    let o = run(&["adhm", "convert", a.to_str().unwrap(), "-o", m.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&["adhm", "real-check", m.to_str().unwrap(), "--trials", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn hirzebruch_pipeline() {
    let dir = scratch("hirz");
    let h = dir.join("h.json");
    let o = run(&["hirzebruch", "build", "-r", "2", "-m", "4", "-o", h.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    for op in ["normalize", "act"] {
        let o = run(&["hirzebruch", op, h.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{op}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn usage_and_io_errors_exit_2() {
    assert_eq!(run(&["sample", "-r", "2"]).status.code(), Some(2));
    assert_eq!(run(&["validate", "/nonexistent/m.json"]).status.code(), Some(2));
    let dir = scratch("bad");
    let bad = dir.join("bad.json");
    fs::write(&bad, "{\"field\": \"Q\",\n \"r\": }").unwrap();
    let o = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}
