use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn cwkit(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cwkit"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn gen_solve_and_eval() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(cwkit(&["gen", "--family", "Z", "--k", "1", "-o", "z1.graph"], d).status.success());
    let out = cwkit(&["solve", "lcwd", "z1.graph", "--emit-cert", "z1.cw"], d);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("lcwd = 3"), "{}", stdout(&out));
    let out = cwkit(&["expr", "eval", "z1.cw", "--against", "z1.graph", "--width-limit", "3", "--require-linear"], d);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = cwkit(&["expr", "eval", "z1.cw", "--against", "z1.graph", "--width-limit", "2"], d);
    assert_eq!(out.status.code(), Some(1));

    let out = cwkit(&["solve", "cwd", "z1.graph", "--decide", "2"], d);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("no"));
}

#[test]
fn unknown_answers_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(cwkit(&["gen", "--family", "Z", "--k", "3", "-o", "z3.graph"], d).status.success());
    let out = cwkit(&["solve", "cwd", "z3.graph", "--decide", "4", "--budget", "0"], d);
    assert_eq!(out.status.code(), Some(2), "{}", stdout(&out));
}

#[test]
fn embeddings_by_map_and_by_search() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = cwkit(&["embed", "--map", "phi-z", "--k", "3", "--t", "4"], d);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("v_5 -> z_9"), "{}", stdout(&out));

    let out = cwkit(&["embed", "--map", "phi-s", "--k", "3", "--t", "5", "--case", "c"], d);
    assert_eq!(out.status.code(), Some(2));

    assert!(cwkit(&["gen", "--family", "gem", "-o", "gem.graph"], d).status.success());
    assert!(cwkit(&["gen", "--family", "M2+", "-o", "m2.graph"], d).status.success());
    let out = cwkit(&["embed", "--guest", "gem.graph", "--host", "m2.graph"], d);
    assert_eq!(out.status.code(), Some(0));
    let out = cwkit(&["embed", "--guest", "m2.graph", "--host", "gem.graph"], d);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bubbles_mark_the_hole() {
    let dir = tempfile::tempdir().unwrap();
    let out = cwkit(&["bubbles", "--family", "J", "--k", "2", "--mark", "z_g"], dir.path());
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("*z_3*"), "{text}");
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn synth_emits_a_checked_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(cwkit(&["gen", "--family", "J", "--k", "3", "-o", "j3.graph"], d).status.success());
    let g = fs::read_to_string(d.join("j3.graph")).unwrap();
    // Remove z_8 by hand: keep every edge not touching vertex 8, renumber above it.
    let mut lines = vec![];
    let mut edges = vec![];
    for line in g.lines() {
        let f: Vec<&str> = line.split_whitespace().collect();
        match f.as_slice() {
            ["v", id, name] => {
                let id: usize = id.parse().unwrap();
                if id != 8 {
                    lines.push(format!("v {} {name}", id - usize::from(id > 8)));
                }
            }
            ["e", u, v] => {
                let (u, v): (usize, usize) = (u.parse().unwrap(), v.parse().unwrap());
                if u != 8 && v != 8 {
                    edges.push(format!("e {} {}", u - usize::from(u > 8), v - usize::from(v > 8)));
                }
            }
            _ => {}
        }
    }
    let text = format!("g 20 {}\n{}\n{}\n", edges.len(), lines.join("\n"), edges.join("\n"));
    fs::write(d.join("h.graph"), text).unwrap();
    let out = cwkit(&["synth", "--graph", "h.graph", "--width", "4", "--emit", "h.cw"], d);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = cwkit(&["expr", "eval", "h.cw", "--against", "h.graph", "--width-limit", "4", "--require-linear"], d);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn verify_writes_summary_and_rechecks() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = cwkit(&["verify", "thm2.3", "--out", "ev"], d);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let summary = fs::read_to_string(d.join("ev/summary.tsv")).unwrap();
    assert!(summary.lines().nth(1).unwrap().starts_with("thm2.3\t-\tverified\t"));
    let out = cwkit(&["verify", "lemma1", "--k", "3", "--out", "ev"], d);
    assert_eq!(out.status.code(), Some(0));
    let out = cwkit(&["verify", "ev", "--recheck"], d);
    assert!(stdout(&out).contains("rechecked 1 certificates"), "{}", stdout(&out));

    let out = cwkit(&["verify", "thm1", "--k", "0"], d);
    assert_eq!(out.status.code(), Some(2));
    let out = cwkit(&["verify", "nonsense"], d);
    assert!(!out.status.success());
}
