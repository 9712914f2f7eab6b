use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cancellative-lab"))
        .arg("--no-cache")
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn sts_count() {
    let o = lab(&["sts", "count", "--k", "13"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "2");
}

#[test]
fn f5_violation_exits_one() {
    let f5 = data("f5.h3");
    let o = lab(&["check", "cancellative", "--in", f5.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("A=012 B=013 C=234"));
}

#[test]
fn extremal_six() {
    let o = lab(&["extremal", "max", "--n", "6"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("optimum 8"), "{s}");
    assert!(s.contains("t_3(6,3)=8"), "{s}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&lab(&["frobnicate"])), 2);
    assert_eq!(code(&lab(&["sts", "count", "--k", "11"])), 2);
    assert_eq!(code(&lab(&["--workers", "0", "sts", "count", "--k", "7"])), 2);
    let missing = data("missing.h3");
    assert_eq!(code(&lab(&["check", "cancellative", "--in", missing.to_str().unwrap()])), 2);
    // shadow has no CSV rendering
    let fano = data("fano.h3");
    assert_eq!(code(&lab(&["--format", "csv", "shadow", "--in", fano.to_str().unwrap()])), 2);
}

#[test]
fn budget_exits_three() {
    assert_eq!(code(&lab(&["extremal", "max", "--n", "12"])), 3);
    let o = lab(&["--time-limit", "0.001", "extremal", "max", "--n", "9", "--order", "reverse-degree"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn bounds_and_pairs() {
    let fano = data("fano.h3");
    let o = lab(&["check", "bounds", "--in", fano.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).matches("holds").count(), 2);
    // asymptotic reports are informational: exit 0 whatever they say
    let o = lab(&["check", "bounds", "--in", fano.to_str().unwrap(), "--k", "7", "--variant", "lem41"]);
    assert_eq!(code(&o), 0);

    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("k7.g2");
    assert_eq!(code(&lab(&["shadow", "--in", fano.to_str().unwrap(), "--out", g.to_str().unwrap()])), 0);
    let o = lab(&["check", "pair", "--graph", g.to_str().unwrap(), "--in", fano.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAILS"));
    // a graph missing part of the shadow is an input error
    let f5 = data("f5.h3");
    let o = lab(&["check", "pair", "--graph", g.to_str().unwrap(), "--in", f5.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn blowup_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let h = dir.path().join("b.h3");
    let o = lab(&["blowup", "--k", "7", "--parts", "1,2,1,1,1,1,2", "--out", h.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(std::fs::read_to_string(&h).unwrap(), stdout(&o));
    let o = lab(&["check", "cancellative", "--in", h.to_str().unwrap()]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "cancellative"));
    let o = lab(&["--format", "json", "color", "--in", h.to_str().unwrap(), "--k", "7"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["colorable"], true);
    let o = lab(&["--format", "json", "distance", "--in", h.to_str().unwrap(), "--k", "7"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["deletions"], 0);
}

#[test]
fn catalog_cache_is_reused() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_cancellative-lab"))
            .args(["--format", "json", "sts", "enum", "--k", "13"])
            .env("CANCELLATIVE_LAB_CACHE", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    assert_eq!(code(&first), 0);
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    let second = run();
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn checkpoint_resume_gives_same_answer() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("n8.ckpt");
    let args = ["--format", "json", "extremal", "max", "--n", "8", "--checkpoint", ck.to_str().unwrap()];
    let a = lab(&args);
    assert_eq!(code(&a), 0);
    assert!(ck.exists());
    let b = lab(&args);
    let strip = |o: &Output| {
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v.as_object_mut().unwrap().remove("nodes");
        v
    };
    assert_eq!(strip(&a), strip(&b));
    assert_eq!(strip(&a)["optimum"], 18);
}

#[test]
fn region_and_probes() {
    let o = lab(&["region", "curve", "--x", "2/3"]);
    assert!(stdout(&o).contains("2/9"));
    let o = lab(&["--format", "csv", "region", "sample", "--k", "3", "--max-part", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("k,parts,n,"));
    let o = lab(&["probe", "local-max", "--k", "9", "--eps", "0.001", "--side", "right"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("holds"));
    let o = lab(&["probe", "local-max", "--k", "9", "--eps", "-1/10", "--side", "right"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn stability_is_seeded() {
    let run = |seed: &str| {
        lab(&["--seed", seed, "--format", "json", "stability", "run", "--k", "3", "--n", "9", "--deletions", "4", "--trials", "3"])
    };
    let (a, b, c) = (run("5"), run("5"), run("6"));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn snk_modes_agree() {
    for mode in ["auto", "exhaustive", "near-balanced"] {
        let o = lab(&["--format", "json", "sts", "snk", "--n", "14", "--k", "7", "--mode", mode]);
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["value"], 56, "{mode}");
    }
}
