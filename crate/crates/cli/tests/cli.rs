use std::path::Path;
use std::process::{Command, Output};

use hurwitz_pel::corpus::{shipped_corpus_dir, CorpusFile, CorpusSummary};
use hurwitz_pel::Report;
use hurwitz_pel_core::peldatum::equivalent_datum;
use hurwitz_pel_core::{CyclotomicField, HermitianDatum};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hurwitz-pel")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn quintic_report_has_the_expected_form() {
    let out = run(&["--m", "5", "--inertia", "1,3,3,3", "--json"]);
    assert_eq!(code(&out), 0);
    let report = Report::from_json(&stdout(&out)).unwrap();
    assert_eq!(report.signature, [1, 2, 0, 1]);
    assert!(report.signature_check.matches);
    assert_eq!(report.determinant, "1");
    let f = CyclotomicField::new(5).unwrap();
    let parse = |s: &str| f.parse(s).unwrap();
    let computed = HermitianDatum::diagonal(report.hermitian.iter().map(|v| parse(&v.exact)).collect()).unwrap();
    let expected = HermitianDatum::diagonal(vec![parse("(z^3 - z^2)/5"), parse("(z - z^4)/5")]).unwrap();
    assert!(equivalent_datum(&computed, &expected, false).unwrap());
}

#[test]
fn json_round_trips_byte_for_byte() {
    for args in [
        &["--m", "7", "--inertia", "2,4,4,4", "--json"][..],
        &["--m", "5", "--inertia", "1,2,3,4", "--json", "--allow-galois-compare", "--precision", "200"][..],
        &["--m", "3", "--inertia", "1,1,1,1,1,1", "--json", "--no-timing"][..],
    ] {
        let out = run(args);
        assert_eq!(code(&out), 0);
        let text = stdout(&out);
        let report = Report::from_json(&text).unwrap();
        assert_eq!(report.to_json(), text.trim_end());
    }
}

#[test]
fn untimed_reports_are_deterministic() {
    let args = ["--m", "7", "--inertia", "1,1,2,3", "--json", "--no-timing"];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
}

#[test]
fn galois_comparison_of_degenerations() {
    let out = run(&["--m", "5", "--inertia", "1,2,3,4", "--json", "--allow-galois-compare"]);
    let report = Report::from_json(&stdout(&out)).unwrap();
    assert!(!report.alternatives.is_empty());
    assert!(report.alternatives.iter().all(|a| a.equivalent == Some(true)), "{:?}", report.alternatives);
}

#[test]
fn text_report() {
    let out = run(&["--m", "7", "--inertia", "2,4,4,4"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("signature        (1,2,0,2,0,1)"));
    assert!(text.contains("relies on uniqueness"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&run(&["--m", "6", "--inertia", "1,1,1,3"])), 3);
    assert_eq!(code(&run(&["--m", "23", "--inertia", "1,1,21"])), 4);
    assert_eq!(code(&run(&["--m", "9", "--inertia", "3,5,5,5"])), 5);
    assert_eq!(code(&run(&["--m", "5", "--inertia", "1,1"])), 7);
    assert_eq!(code(&run(&["--m", "5"])), 2);
    assert_eq!(code(&run(&["--m", "five", "--inertia", "1,4"])), 2);
    assert_eq!(code(&run(&["--inertia", "1,2,3"])), 2);
    assert_eq!(code(&run(&["--m", "5", "--inertia", "1,2,2", "corpus"])), 2);
}

fn corpus_summary(args: &[&str]) -> (i32, CorpusSummary) {
    let mut full = vec!["corpus", "--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let summary = serde_json::from_str(&stdout(&out)).unwrap();
    (code(&out), summary)
}

#[test]
fn shipped_corpus_passes() {
    let dir = shipped_corpus_dir();
    let (status, summary) = corpus_summary(&[dir.to_str().unwrap()]);
    assert_eq!(status, 0, "{}", summary.render_text());
    assert_eq!(summary.total, 18);
    assert!(summary.fixtures.iter().all(|f| f.passed));
    let (_, again) = corpus_summary(&[dir.to_str().unwrap()]);
    assert_eq!(summary, again);
}

fn write_corpus(dir: &Path, name: &str, file: &CorpusFile) -> String {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(file).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn negated_entry_fails_the_sign_condition() {
    let text = std::fs::read_to_string(shipped_corpus_dir().join("prime.json")).unwrap();
    let mut file: CorpusFile = serde_json::from_str(&text).unwrap();
    let family = file.fixtures.iter_mut().find(|f| f.name == "m5 (1,3,3,3)").unwrap();
    let xi = &mut family.blocks[0].entries[0].xi;
    *xi = format!("-({xi})");
    let dir = tempfile::tempdir().unwrap();
    let path = write_corpus(dir.path(), "faulty.json", &file);
    let (status, summary) = corpus_summary(&[&path]);
    assert_eq!(status, 1);
    assert_eq!(summary.failed, 1);
    let bad = summary.fixtures.iter().find(|f| !f.passed).unwrap();
    assert_eq!(bad.name, "m5 (1,3,3,3)");
    let check = bad.checks.iter().find(|c| c.name == "block 0 entry 0: conditions").unwrap();
    assert!(!check.passed && check.detail.contains("signs_negative: false"));
    assert!(check.detail.contains("generates_different: true, antisymmetric: true"));
}

#[test]
fn empty_corpus_passes_with_zero_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_corpus(dir.path(), "empty.json", &CorpusFile { fixtures: Vec::new() });
    let (status, summary) = corpus_summary(&[&path]);
    assert_eq!((status, summary.total), (0, 0));
    let (status, summary) = corpus_summary(&[]);
    assert_eq!((status, summary.total), (0, 0));
    let out = run(&["corpus", &path]);
    assert!(stdout(&out).contains("0 fixtures, 0 passed, 0 failed"));
}

#[test]
fn unreadable_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"fixtures\": [{\"name\": 1}]}").unwrap();
    assert_eq!(code(&run(&["corpus", bad.to_str().unwrap()])), 8);
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&run(&["corpus", missing.to_str().unwrap()])), 8);
    let mismatch = dir.path().join("count.json");
    let text = std::fs::read_to_string(shipped_corpus_dir().join("composite.json")).unwrap();
    std::fs::write(&mismatch, text.replacen("\"n\": 4", "\"n\": 5", 1)).unwrap();
    let out = run(&["corpus", mismatch.to_str().unwrap()]);
    assert_eq!(code(&out), 8);
    assert!(String::from_utf8(out.stderr).unwrap().contains("declares n = 5"));
}
