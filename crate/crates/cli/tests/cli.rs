use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_opetope-kit"))
}

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn golden(name: &str) -> String {
    fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

fn run(args: &[&str], files: &[(&str, &str)]) -> Output {
    let dir = tempfile::tempdir().unwrap();
    for (name, text) in files {
        fs::write(dir.path().join(name), text).unwrap();
    }
    bin().current_dir(dir.path()).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const TWO_POINTS: &str = "face a : 0\nface b : 0\n";

#[test]
fn validate_both_passes_on_two_cell() {
    let o = bin().arg("validate").arg(corpus("two_cell_2.dsl")).args(["--mode", "both"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "dfc: pass\nopetope: pass\nagreement: yes\n");
    assert!(o.stderr.is_empty());
}

#[test]
fn validate_two_points_fails_dfc() {
    let o = run(&["validate", "two-points.dsl", "--mode", "dfc"], &[("two-points.dsl", TWO_POINTS)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("greatest element: not found"));
}

#[test]
fn syntax_error_exits_2_with_location() {
    let o = run(&["validate", "broken.dsl"], &[("broken.dsl", "tgt f ->\n")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1, column 9: expected identifier"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn json_shape_error_exits_2_with_path() {
    let o = run(&["validate", "bad.json"], &[("bad.json", r#"{"faces":{"f":1}}"#)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("target.f"), "{}", stderr(&o));
}

#[test]
fn stdin_needs_format() {
    let o = run(&["validate", "-"], &[]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_reports_match_goldens() {
    let o = bin().arg("validate").arg(corpus("two_cell_2.json")).arg("--json").output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("validate_two_cell_2_both.json"));

    let files = [("two-points.dsl", TWO_POINTS)];
    let o = run(&["validate", "two-points.dsl", "--mode", "dfc", "--json"], &files);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), golden("validate_two_points_dfc.json"));
    let o = run(&["validate", "two-points.dsl", "--mode", "opetope", "--json"], &files);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), golden("validate_two_points_opetope.json"));
}

#[test]
fn morphism_reports_match_goldens() {
    for (map, code, gold) in [
        ("x => x0\ny => x2\nf => h\n", 0, "morphism_arrow_h.json"),
        ("x => x0\ny => x1\nf => f2\n", 1, "morphism_arrow_bad.json"),
    ] {
        let dir = tempfile::tempdir().unwrap();
        let map_path = dir.path().join("m.map");
        fs::write(&map_path, map).unwrap();
        let o = bin()
            .arg("morphism")
            .arg("--from")
            .arg(corpus("arrow.dsl"))
            .arg("--to")
            .arg(corpus("two_cell_2.dsl"))
            .arg("--map")
            .arg(&map_path)
            .arg("--json")
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(code));
        assert_eq!(stdout(&o), golden(gold));
    }
}

#[test]
fn certificate_commands() {
    let o = bin().arg("order").arg(corpus("two_cell_2.json")).output().unwrap();
    assert_eq!(stdout(&o), "x0\nx1\nx2\n");

    let o = bin().arg("tree").arg(corpus("two_cell_2.json")).args(["--face", "alpha"]).output().unwrap();
    let text = stdout(&o);
    assert!(text.starts_with("f2\n"));
    assert!(text.contains("x1 -> f1"));

    let o = bin().arg("tree").arg(corpus("two_cell_2.dsl")).args(["--face", "alpha", "--dot"]).output().unwrap();
    assert!(stdout(&o).contains(r#""f1" -> "f2" [label="x1"]"#), "{}", stdout(&o));

    let o = bin().arg("zigzag").arg(corpus("two_cell_2.dsl")).args(["--anchor", "alpha", "--from", "f2", "--to", "f1"]).output().unwrap();
    assert_eq!(stdout(&o), "f2 >- x1 <+ f1\n");

    let o = bin().arg("partition").arg(corpus("two_cell_2.dsl")).args(["--dim", "1"]).output().unwrap();
    assert_eq!(stdout(&o), "alpha <- f1, f2\nleftover: h\n");

    let o = bin().arg("partition").arg(corpus("two_cell_2.dsl")).args(["--dim", "2"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn certificates_refuse_non_dfc() {
    let o = run(&["order", "two-points.dsl"], &[("two-points.dsl", TWO_POINTS)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn export_dot() {
    let o = bin().arg("export-dot").arg(corpus("arrow.dsl")).output().unwrap();
    let text = stdout(&o);
    assert_eq!(text.matches("->").count(), 2);
    assert!(text.contains(r#""x" -> "f" [sign="-", style=solid]"#));
    assert!(text.contains(r#""y" -> "f" [sign="+", style=dashed]"#));
}

#[test]
fn convert_between_formats() {
    let o = bin().arg("convert").arg(corpus("arrow.dsl")).args(["--to", "json"]).output().unwrap();
    assert_eq!(stdout(&o), r#"{"faces":{"f":1,"x":0,"y":0},"sources":{"f":["x"]},"target":{"f":"y"}}"#.to_string() + "\n");
    let o = bin().arg("convert").arg(corpus("arrow.json")).args(["--to", "dsl"]).output().unwrap();
    assert_eq!(stdout(&o), fs::read_to_string(corpus("arrow.dsl")).unwrap());
}

#[test]
fn enumerate_counts_and_corpus() {
    let count = |d: &str, n: &str| {
        let o = bin().args(["enumerate", "--max-dim", d, "--max-faces", n, "--opetopes-only", "--count-only"]).output().unwrap();
        stdout(&o)
    };
    assert_eq!(count("2", "7"), "4\n");
    assert_eq!(count("1", "3"), "2\n");
    assert_eq!(count("2", "9"), "5\n");

    let seq = bin().args(["enumerate", "--max-dim", "2", "--max-faces", "6", "--sequential"]).output().unwrap();
    let par = bin().args(["enumerate", "--max-dim", "2", "--max-faces", "6"]).output().unwrap();
    assert_eq!(seq.stdout, par.stdout);

    let dir = tempfile::tempdir().unwrap();
    let o = bin()
        .args(["enumerate", "--max-dim", "2", "--max-faces", "7", "--opetopes-only", "--emit-dir"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    let written: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(written.len(), 4);
    for entry in written {
        let v = bin().arg("validate").arg(entry.unwrap().path()).output().unwrap();
        assert_eq!(v.status.code(), Some(0));
    }
}

#[test]
fn work_limit_guard() {
    let o = bin()
        .env("OPETOPE_KIT_WORK_LIMIT", "10")
        .args(["enumerate", "--max-dim", "3", "--max-faces", "8", "--count-only"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("work limit"));
    let o = bin().env("OPETOPE_KIT_WORK_LIMIT", "lots").args(["enumerate", "--max-dim", "1", "--max-faces", "2"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}
