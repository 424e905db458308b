use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn ordlift(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordlift")).args(args).current_dir(dir).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn tau_of_half_translation() {
    let dir = TempDir::new().unwrap();
    file(&dir, "t.txt", "# T_{1/2}\npl: [(0, 1/2)]\n");
    let o = ordlift(&["tau", "--input", "t.txt"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "tau,1/2,1/2"), "{out}");
    assert!(out.ends_with("verdict,pass\n"));
}

#[test]
fn integer_growth_demo() {
    let dir = TempDir::new().unwrap();
    let o = ordlift(&["growth", "--g", "2", "--h", "3", "--n", "10"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let e: Vec<&str> = out.lines().filter(|l| l.starts_with("e_n,")).collect();
    assert_eq!(e.len(), 10);
    assert_eq!(e[9], "e_n,10,15,3/2");
    assert!(out.contains("\nestimate,3/2\n"));
}

#[test]
fn rep_check_of_modular_torus_against_itself() {
    let dir = TempDir::new().unwrap();
    file(&dir, "torus.txt", "surface genus=1 boundary=1\nexample\n");
    let o = ordlift(&["rep-check", "--input", "torus.txt", "--q", "0", "--samples", "50", "--seed", "7", "--tol", "0"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for row in ["words,50", "positive_words,50", "lambda,1,1", "toledo,1,1", "verdict,pass"] {
        assert!(out.lines().any(|l| l == row), "missing {row} in {out}");
    }
}

#[test]
fn rep_check_rejects_commuting_images() {
    let dir = TempDir::new().unwrap();
    file(
        &dir,
        "flat.txt",
        "surface genus=1 boundary=1\na: moebius: [[0,-1],[1,0]] winding 0\nb: moebius: [[0,-1],[1,0]] winding 0\n",
    );
    let o = ordlift(&["rep-check", "--input", "flat.txt", "--samples", "20"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("maps to the identity"));
}

#[test]
fn reports_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let args = ["sandwich-audit", "--kind", "moebius", "--samples", "40", "--seed", "3"];
    let (a, b) = (ordlift(&args, dir.path()), ordlift(&args, dir.path()));
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("# seed=3\n"));
}

#[test]
fn config_file_and_flag_override() {
    let dir = TempDir::new().unwrap();
    file(&dir, "run.cfg", "command = growth\nn = 4\npower-cap = 1024\nseed = 5\n");
    let o = ordlift(&["--config", "run.cfg", "--seed", "9"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("# seed=9\n# power_cap=1024\n"), "{out}");
    assert!(out.contains("\ne_n,4,6,3/2\n"));
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    file(&dir, "bad.txt", "pl: [(0, 1/2\n");
    assert_eq!(ordlift(&["tau", "--input", "bad.txt"], dir.path()).status.code(), Some(2));
    assert_eq!(ordlift(&["tau", "--input", "missing.txt"], dir.path()).status.code(), Some(2));
    assert_eq!(ordlift(&["frobnicate"], dir.path()).status.code(), Some(2));
    assert_eq!(ordlift(&["growth", "--seed", "x"], dir.path()).status.code(), Some(2));
    assert_eq!(ordlift(&["growth", "--format", "svg"], dir.path()).status.code(), Some(2));
    file(&dir, "mixed.txt", "pl: [(0, 1/3)]\nmoebius: [[2,0],[0,1/2]] winding 1\n");
    assert_eq!(ordlift(&["compare", "--input", "mixed.txt"], dir.path()).status.code(), Some(2));
}

#[test]
fn misdeclared_spread_fails() {
    let dir = TempDir::new().unwrap();
    let o = ordlift(&["causal", "--cover", "circle(d=1/10)", "--samples", "10"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("instance inconsistent"));
}

#[test]
fn causal_circle_passes() {
    let dir = TempDir::new().unwrap();
    let o = ordlift(&["causal", "--cover", "circle(kind=moebius)", "--samples", "30", "--n", "200"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("\nbounds,30,0\n"));
}

#[cfg(feature = "lagrangian")]
#[test]
fn causal_lagrangian_reports_agreement() {
    let dir = TempDir::new().unwrap();
    let o = ordlift(&["causal", "--cover", "lagrangian(n=2)", "--samples", "20"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().any(|l| l.starts_with("agreement,path_search,")));
}

#[test]
fn growth_plot_written() {
    let dir = TempDir::new().unwrap();
    let o = ordlift(&["growth", "--format", "svg", "--out", "g.csv"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(dir.path().join("g.svg")).unwrap();
    assert_eq!(svg.matches("<circle").count(), 10);
    assert!(std::fs::read_to_string(dir.path().join("g.csv")).unwrap().contains("estimate,3/2"));
}

#[test]
fn rep_check_scatter_plot() {
    let dir = TempDir::new().unwrap();
    file(&dir, "torus.txt", "surface genus=1 boundary=1\nexample\n");
    let o = ordlift(&["rep-check", "--input", "torus.txt", "--samples", "8", "--format", "svg", "--out", "r.csv"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(dir.path().join("r.svg")).unwrap();
    assert_eq!(svg.matches("<circle").count(), 8);
}

#[test]
fn suite_single_criterion() {
    let dir = TempDir::new().unwrap();
    let o = ordlift(&["suite", "--criterion", "4"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("criterion,4,euler cocycle,pass,"));
    assert_eq!(ordlift(&["suite", "--criterion", "11"], dir.path()).status.code(), Some(2));
}

#[test]
fn compare_checks_translation_numbers() {
    let dir = TempDir::new().unwrap();
    file(&dir, "c.txt", "pl: [(0, 0), (1/2, 1/4)]\npl: [(0, 1/2)]\n");
    let o = ordlift(&["compare", "--input", "c.txt"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("compare,0,strictly-below\ntau_g,0,0\ntau_h,1/2,1/2\n"));
}
