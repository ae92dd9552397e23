use std::process::{Command, Output};

fn graftlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graftlab")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn intersect_prints_the_number() {
    let o = graftlab(&["mc", "intersect", "--genus", "2", "-c", "1*a1", "-c", "1*b1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn smoothing_disjoint_curves_gives_the_sum() {
    let o = graftlab(&["mc", "smooth", "--mode", "sharp", "--genus", "2", "-l", "1*a1", "-m", "1*b2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1*a1\n1*b2\n");
}

#[test]
fn smoothing_output_reparses() {
    let o = graftlab(&["mc", "smooth", "--mode", "flat", "-l", "1*a1", "-m", "2*b1"]);
    let text = stdout(&o);
    let again = graftlab(&["mc", "normalize", "-c", text.trim()]);
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(stdout(&again), text);
}

#[test]
fn exit_codes() {
    let domain = graftlab(&["mc", "normalize", "--genus", "2", "-c", "1*a1", "-c", "1*b1"]);
    assert_eq!(domain.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&domain.stderr).contains("intersect"));
    assert_eq!(graftlab(&["mc", "intersect", "-c", "1*x9", "-c", "1*a1"]).status.code(), Some(1));
    assert_eq!(graftlab(&["mc", "intersect", "-c", "1*a1"]).status.code(), Some(1));
    assert_eq!(graftlab(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(graftlab(&["converge", "--path", "3,3", "--terminal", "1,1"]).status.code(), Some(2));
}

#[test]
fn limset_writes_a_circle() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f.txt");
    let o = graftlab(&[
        "limset", "--traces", "3", "3", "--root", "minus", "--eps", "1e-3", "--depth", "14", "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let residual: f64 = text
        .split("max residual ")
        .nth(1)
        .and_then(|s| s.split_whitespace().next())
        .unwrap()
        .parse()
        .unwrap();
    assert!(residual <= 1e-6);
    let sample = std::fs::read_to_string(&out).unwrap();
    assert!(sample.starts_with("# eps 1e-3 depth 14"));
    assert!(sample.lines().count() > 500);
}

#[test]
fn slice_writes_a_p6_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.ppm");
    let o = graftlab(&[
        "slice", "--center", "3+0i", "--span", "4", "--res", "64", "--fixed-y", "3", "--depth", "6", "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let bytes = std::fs::read(&out).unwrap();
    let header = b"P6\n64 64\n255\n";
    assert_eq!(&bytes[..header.len()], header);
    assert_eq!(bytes.len(), header.len() + 3 * 64 * 64);
}

#[test]
fn converge_prints_a_decreasing_series() {
    let o = graftlab(&[
        "converge", "--path", "3+0.5i,3;3+0.25i,3;3+0.125i,3", "--terminal", "3,3", "--eps", "1e-2", "--depth", "12",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let ds: Vec<f64> = stdout(&o)
        .lines()
        .map(|l| l.split_whitespace().last().unwrap().parse().unwrap())
        .collect();
    assert_eq!(ds.len(), 3);
    assert!(ds.windows(2).all(|w| w[1] < w[0]), "{ds:?}");
}

#[test]
fn pullback_reports_the_lattice() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.txt");
    let o = graftlab(&[
        "pullback", "--traces", "3", "3", "--eta", "ab", "--eps", "1e-2", "--depth", "10", "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("lattice"));
    let bad = graftlab(&[
        "pullback", "--traces", "3", "3", "--eta", "abAB", "--eps", "1e-2", "--depth", "6", "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn config_file_and_show() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "eps=2e-3\ndepth=12\n").unwrap();
    let o = graftlab(&["--config", cfg.to_str().unwrap(), "config", "show"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("eps=2e-3\n") && text.contains("depth=12\n"));
    std::fs::write(&cfg, "colour=red\n").unwrap();
    assert_eq!(graftlab(&["--config", cfg.to_str().unwrap(), "config", "show"]).status.code(), Some(1));
}

#[test]
fn commands_are_deterministic() {
    let args = ["model", "dump", "--genus", "3"];
    assert_eq!(graftlab(&args).stdout, graftlab(&args).stdout);
    let conv = ["converge", "--path", "3+0.5i,3", "--terminal", "3,3", "--eps", "2e-2", "--depth", "10"];
    assert_eq!(graftlab(&conv).stdout, graftlab(&conv).stdout);
}
