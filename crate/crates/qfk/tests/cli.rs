use std::path::Path;
use std::process::{Command, Output};

fn qfk(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfk"))
        .current_dir(dir)
        .env_remove("QFK_TOLERANCE")
        .args(args)
        .output()
        .expect("run qfk")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn pgm(w: usize, h: usize) -> String {
    let mut s = format!("P2\n{w} {h}\n255\n");
    for r in 0..h {
        let row: Vec<String> = (0..w).map(|c| ((r * 31 + c * 17 + r * c) % 256).to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

#[test]
fn gen_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let o = qfk(dir.path(), &["gen", "thm22", "--n", "2", "-o", "b.json", "--with-report"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("4 filters"));

    let o = qfk(dir.path(), &["verify", "b.json", "--json", "r.json"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("sum rules        4"), "{text}");
    assert!(text.contains("vmo              4,2,2"), "{text}");
    let rep: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert!(rep["report"]["tight_residual"].as_f64().unwrap() < 1e-12);
    assert_eq!(rep["pass"], true);
}

#[test]
fn six_multiple_has_twelve_filters() {
    let dir = tempfile::tempdir().unwrap();
    let o = qfk(dir.path(), &["gen", "six-multiple", "--a", "interp2", "-o", "s.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("12 filters"));
    assert_eq!(code(&qfk(dir.path(), &["verify", "s.json"])), 0);
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&qfk(dir.path(), &["gen", "thm22", "--n", "0"])), 2);
    assert_eq!(code(&qfk(dir.path(), &["gen", "thm22"])), 2);
    assert_eq!(code(&qfk(dir.path(), &["frobnicate"])), 2);
    assert_eq!(code(&qfk(dir.path(), &["gen", "six-multiple", "--a", "nope"])), 2);
    assert_eq!(code(&qfk(dir.path(), &["smoothness", "--table1", "--n", "2"])), 2);

    assert_eq!(code(&qfk(dir.path(), &["gen", "thm22", "--n", "1", "-o", "b.json"])), 0);
    let o = Command::new(env!("CARGO_BIN_EXE_qfk"))
        .current_dir(dir.path())
        .env("QFK_TOLERANCE", "lots")
        .args(["verify", "b.json"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn unreadable_input_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.json"), "{\"format_version\": 1,").unwrap();
    assert_eq!(code(&qfk(dir.path(), &["verify", "bad.json"])), 3);
    assert_eq!(code(&qfk(dir.path(), &["verify", "missing.json"])), 3);
}

#[test]
fn bad_shift_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    // γ₃ must lie outside the quincunx lattice
    let o = qfk(dir.path(), &["gen", "general", "--n", "2", "--g3", "1,1"]);
    assert_eq!(code(&o), 4, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn corrupted_bank_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&qfk(dir.path(), &["gen", "thm22", "--n", "2", "-o", "b.json"])), 0);
    let path = dir.path().join("b.json");
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let x = v["filters"][2]["re"][1][1].as_f64().unwrap();
    v["filters"][2]["re"][1][1] = serde_json::json!(x + 0.01);
    std::fs::write(&path, v.to_string()).unwrap();
    let o = qfk(dir.path(), &["verify", "b.json"]);
    assert_eq!(code(&o), 5);
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn transform_round_trip_and_bad_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&qfk(dir.path(), &["gen", "thm22", "--n", "2", "-o", "b.json"])), 0);
    std::fs::write(dir.path().join("img.pgm"), pgm(32, 32)).unwrap();
    let o = qfk(
        dir.path(),
        &["transform", "--bank", "b.json", "--image", "img.pgm", "--levels", "3", "-o", "c", "--roundtrip"],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("max abs error"));
    for f in ["c.json", "c.bin", "c_recon.pgm"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    assert_eq!(std::fs::read_to_string(dir.path().join("c_recon.pgm")).unwrap(), pgm(32, 32));

    std::fs::write(dir.path().join("odd.pgm"), pgm(15, 16)).unwrap();
    let o = qfk(dir.path(), &["transform", "--bank", "b.json", "--image", "odd.pgm", "--levels", "1"]);
    assert_eq!(code(&o), 6);
}

#[test]
fn smoothness_csv() {
    let dir = tempfile::tempdir().unwrap();
    let o = qfk(dir.path(), &["smoothness", "--table1", "--nmax", "2"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,sm_quincunx,sm_dyadic,method,delta");
    assert_eq!(lines.len(), 3);
    let f: Vec<&str> = lines[2].split(',').collect();
    assert!((f[1].parse::<f64>().unwrap() - 3.0365).abs() < 1e-3);
    assert!((f[2].parse::<f64>().unwrap() - 2.4408).abs() < 1e-3);
}

#[test]
fn export_formats() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&qfk(dir.path(), &["gen", "thm22", "--n", "1", "-o", "b.json"])), 0);
    let o = qfk(dir.path(), &["export", "b.json", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().count() > 4);
    let o = qfk(dir.path(), &["export", "b.json", "--format", "c-header", "--name", "haar", "-o", "h.h"]);
    assert_eq!(code(&o), 0);
    let h = std::fs::read_to_string(dir.path().join("h.h")).unwrap();
    assert!(h.contains("haar"));
    assert_eq!(code(&qfk(dir.path(), &["export", "b.json", "--format", "c-header", "--name", "1bad"])), 2);
}
