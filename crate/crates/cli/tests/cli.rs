use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn bsg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bsg")).args(args).output().expect("run bsg")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn corpus_files() -> Vec<PathBuf> {
    let mut files = Vec::new();
    for dir in [corpus(""), corpus("pendant")] {
        for e in std::fs::read_dir(dir).unwrap() {
            let p = e.unwrap().path();
            if p.extension().is_some_and(|x| x == "bsg") {
                files.push(p);
            }
        }
    }
    files.sort();
    files
}

#[test]
fn tau_examples() {
    let o = bsg(&["tau", corpus("theta0.bsg").to_str().unwrap(), "--u", "u1"]);
    assert_eq!(stdout(&o), "1\n");
    let o = bsg(&["tau", corpus("theta5.bsg").to_str().unwrap(), "--u", "u1", "--vars", "t"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "-t2^3 + t2^2 - t2 - t3 + 1\n");
}

#[test]
fn oracle_matches_on_connected_corpus() {
    for f in corpus_files().iter().filter(|f| !f.ends_with("theta_theta.bsg")) {
        let o = bsg(&["oracle", f.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", f.display());
        assert!(stdout(&o).ends_with("MATCH\n"));
    }
}

#[test]
fn validate_and_disconnected() {
    for f in corpus_files().iter().filter(|f| !f.ends_with("theta_theta.bsg")) {
        let o = bsg(&["validate", f.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", f.display());
    }
    let tt = corpus("theta_theta.bsg");
    assert_eq!(bsg(&["validate", tt.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(bsg(&["tau", tt.to_str().unwrap()]).status.code(), Some(1));
    let o = bsg(&["--format", "tsv", "admissible", tt.to_str().unwrap()]);
    assert!(stdout(&o).contains("verdict\tnot-guaranteed\nrank\t2\n"));
}

#[test]
fn census_and_states() {
    let f = corpus("theta5.bsg");
    let o = bsg(&["census", f.to_str().unwrap(), "--u", "u1"]);
    assert_eq!(stdout(&o), "g=7 d=7 m=3 |V1|=1 |V2|=1\n");
    let o = bsg(&["states", f.to_str().unwrap(), "--list", "--jobs", "3"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "5");
    assert_eq!(lines[1], "s: c1->R2 c2->R3 c3->R4 c4->R1 c5->R5 sign=-1");
    assert_eq!(lines.len(), 6);
}

#[test]
fn errors_exit_one() {
    let dir = std::env::temp_dir().join(format!("bsg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.bsg");
    std::fs::write(&bad, "vertex u1 V2 3\nfrobnicate\n").unwrap();
    let o = bsg(&["tau", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let f = corpus("theta0.bsg");
    assert_eq!(bsg(&["tau", f.to_str().unwrap(), "--u", "v1"]).status.code(), Some(1));
    assert_eq!(bsg(&["tau", f.to_str().unwrap(), "--nope"]).status.code(), Some(1));
    assert_eq!(bsg(&["states", f.to_str().unwrap(), "--terminal", "u1=9"]).status.code(), Some(0));
}

#[test]
fn perturb_round_trip_is_deterministic() {
    let f = corpus("trefoil.bsg");
    let args = ["perturb", f.to_str().unwrap(), "--seed", "11", "--steps", "5"];
    let a = bsg(&args);
    assert_eq!(a.stdout, bsg(&args).stdout);
    let dir = std::env::temp_dir().join(format!("bsg-perturb-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("p.bsg");
    std::fs::write(&p, &a.stdout).unwrap();
    let o = bsg(&["tau", p.to_str().unwrap()]);
    assert_eq!(stdout(&o), "t2^2 - t2 + 1\n");
}

#[test]
fn tsv_output() {
    let f = corpus("theta5.bsg");
    let o = bsg(&["--format", "tsv", "tau", f.to_str().unwrap()]);
    assert_eq!(stdout(&o), "tau\t-t2^3 + t2^2 - t2 - t3 + 1\nstates\t5\n");
}
