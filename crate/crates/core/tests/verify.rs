use std::fs;
use std::path::{Path, PathBuf};

use cwkit_core::verify::{recheck_evidence, run_all, run_check, Level, Params, Status};
use cwkit_core::Budget;

fn files_with_suffix(dir: &Path, suffix: &str) -> Vec<PathBuf> {
    let mut out = Vec::new();
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.is_dir() {
            out.extend(files_with_suffix(&path, suffix));
        } else if path.to_string_lossy().ends_with(suffix) {
            out.push(path);
        }
    }
    out.sort();
    out
}

#[test]
fn smoke_level_writes_rechecked_evidence() {
    let dir = tempfile::tempdir().unwrap();
    let report = run_all(Level::Smoke, Some(dir.path())).unwrap();
    for c in &report.checks {
        let expected = if c.claim == "thm1" && c.params.k == Some(0) {
            Status::Unknown
        } else {
            Status::Verified
        };
        assert_eq!(c.status, expected, "{} {}: {:?}", c.claim, c.params, c.notes);
    }
    let summary = fs::read_to_string(dir.path().join("summary.tsv")).unwrap();
    let mut lines = summary.lines();
    assert_eq!(lines.next(), Some("claim\tparams\tstatus\tseconds\tevidence-path"));
    assert_eq!(lines.count(), report.checks.len());
    for line in summary.lines().skip(1) {
        assert_eq!(line.split('\t').count(), 5, "{line}");
    }

    let counts = recheck_evidence(dir.path()).unwrap();
    assert!(counts.certificates > 0 && counts.embeddings > 0, "{counts:?}");
}

#[test]
fn tampered_certificates_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let c = run_check("prop6.1", Params::default(), Budget::unlimited()).unwrap();
    assert_eq!(c.status, Status::Verified);
    cwkit_core::verify::write_evidence(&c, dir.path()).unwrap();
    recheck_evidence(dir.path()).unwrap();

    let cw = files_with_suffix(dir.path(), ".cw");
    let text = fs::read_to_string(&cw[0]).unwrap();
    // Unwrap the first edge-adding operation, keeping its operand.
    let at = text.find("eta(").expect("expression adds edges");
    let open = at + text[at..].find('{').unwrap();
    let mut depth = 0;
    let close = open
        + text[open..]
            .char_indices()
            .find(|&(_, ch)| {
                depth += match ch {
                    '{' => 1,
                    '}' => -1,
                    _ => 0,
                };
                depth == 0
            })
            .unwrap()
            .0;
    let tampered = format!("{}{}{}", &text[..at], &text[open + 1..close], &text[close + 1..]);
    fs::write(&cw[0], tampered).unwrap();
    let err = recheck_evidence(dir.path()).unwrap_err().to_string();
    assert!(err.contains("rejected"), "{err}");
}

#[test]
fn tampered_embeddings_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let c = run_check("lemma2", Params::k(3), Budget::unlimited()).unwrap();
    assert_eq!(c.status, Status::Verified);
    cwkit_core::verify::write_evidence(&c, dir.path()).unwrap();
    assert_eq!(recheck_evidence(dir.path()).unwrap().embeddings, 14);

    let map = &files_with_suffix(dir.path(), ".map")[0];
    let text = fs::read_to_string(map).unwrap();
    let mut lines: Vec<String> = text.lines().map(str::to_owned).collect();
    let (a, _) = lines[0].split_once(" -> ").unwrap();
    let (_, b) = lines[1].split_once(" -> ").unwrap();
    lines[0] = format!("{a} -> {b}");
    fs::write(map, lines.join("\n")).unwrap();
    assert!(recheck_evidence(dir.path()).is_err());
}

#[test]
fn lemma4_uses_the_host_certificate_and_the_exception() {
    let c = run_check("lemma4", Params::k(3), Budget::unlimited()).unwrap();
    assert_eq!(c.status, Status::Verified, "{:?}", c.notes);
    let unavailable: Vec<&String> = c.notes.iter().filter(|n| n.contains("unavailable")).collect();
    // t = 5 directly, and t = 6 because the reversal maps it to t = 5.
    assert_eq!(unavailable.len(), 8, "{unavailable:?}");
    assert!(unavailable.iter().all(|n| n.contains("-v5:") || n.contains("-v6.reversed:")));
}
