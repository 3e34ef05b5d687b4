use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use hurwitz_pel_core::peldatum::{verify_fixture, Fixture, FixtureBlock, FixtureEntry};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusFile {
    pub fixtures: Vec<FixtureRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryRecord {
    pub xi: String,
    pub cm_type: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockRecord {
    pub modulus: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub written_in: Option<u32>,
    pub entries: Vec<EntryRecord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompareRecord {
    pub allow_galois: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureRecord {
    pub name: String,
    pub m: u32,
    pub n: usize,
    pub inertia: Vec<i64>,
    pub blocks: Vec<BlockRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_signature: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compare_assembly: Option<CompareRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degeneration: Option<Vec<[i64; 3]>>,
}

impl FixtureRecord {
    pub fn to_fixture(&self) -> Fixture {
        Fixture {
            name: self.name.clone(),
            m: self.m,
            inertia: self.inertia.clone(),
            blocks: self
                .blocks
                .iter()
                .map(|b| FixtureBlock {
                    modulus: b.modulus,
                    written_in: b.written_in,
                    entries: b.entries.iter().map(|e| FixtureEntry { xi: e.xi.clone(), cm_type: e.cm_type.clone() }).collect(),
                })
                .collect(),
            expected_signature: self.expected_signature.clone(),
            compare_assembly: self.compare_assembly.map(|c| c.allow_galois),
            degeneration: self.degeneration.clone(),
        }
    }
}

#[derive(Debug)]
pub enum CorpusError {
    Io { path: PathBuf, source: std::io::Error },
    Format { path: PathBuf, source: serde_json::Error },
    BranchCount { path: PathBuf, name: String, declared: usize, actual: usize },
}

impl fmt::Display for CorpusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorpusError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CorpusError::Format { path, source } => write!(f, "{}: {source}", path.display()),
            CorpusError::BranchCount { path, name, declared, actual } => {
                write!(f, "{}: fixture {name} declares n = {declared} but lists {actual} inertia entries", path.display())
            }
        }
    }
}

impl std::error::Error for CorpusError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            CorpusError::Io { source, .. } => Some(source),
            CorpusError::Format { source, .. } => Some(source),
            CorpusError::BranchCount { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureOutcome {
    pub source: String,
    pub name: String,
    pub passed: bool,
    pub checks: Vec<CheckRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub fixtures: Vec<FixtureOutcome>,
}

impl CorpusSummary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summaries always serialize")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for f in &self.fixtures {
            out.push_str(&format!("{} {} ({})\n", if f.passed { "PASS" } else { "FAIL" }, f.name, f.source));
            for c in f.checks.iter().filter(|c| !c.passed) {
                out.push_str(&format!("    failed: {}: {}\n", c.name, c.detail));
            }
        }
        out.push_str(&format!("{} fixtures, {} passed, {} failed\n", self.total, self.passed, self.failed));
        out
    }
}

/// Files named directly, plus the `*.json` files of named directories in
/// name order.
fn expand(paths: &[PathBuf]) -> Result<Vec<PathBuf>, CorpusError> {
    let mut files = Vec::new();
    for path in paths {
        if path.is_dir() {
            let read = fs::read_dir(path).map_err(|source| CorpusError::Io { path: path.clone(), source })?;
            let mut found = Vec::new();
            for entry in read {
                let entry = entry.map_err(|source| CorpusError::Io { path: path.clone(), source })?;
                let p = entry.path();
                if p.extension().is_some_and(|e| e == "json") {
                    found.push(p);
                }
            }
            found.sort();
            files.extend(found);
        } else {
            files.push(path.clone());
        }
    }
    Ok(files)
}

pub fn load_file(path: &Path) -> Result<CorpusFile, CorpusError> {
    let text = fs::read_to_string(path).map_err(|source| CorpusError::Io { path: path.to_path_buf(), source })?;
    let file: CorpusFile =
        serde_json::from_str(&text).map_err(|source| CorpusError::Format { path: path.to_path_buf(), source })?;
    for f in &file.fixtures {
        if f.n != f.inertia.len() {
            return Err(CorpusError::BranchCount {
                path: path.to_path_buf(),
                name: f.name.clone(),
                declared: f.n,
                actual: f.inertia.len(),
            });
        }
    }
    Ok(file)
}

/// Every fixture with the file it came from, in file then record order.
pub fn load_corpus(paths: &[PathBuf]) -> Result<Vec<(String, FixtureRecord)>, CorpusError> {
    let mut out = Vec::new();
    for path in expand(paths)? {
        let source = path.display().to_string();
        out.extend(load_file(&path)?.fixtures.into_iter().map(|f| (source.clone(), f)));
    }
    Ok(out)
}

/// Fixtures are checked in parallel; the summary keeps load order.
pub fn run_records(records: &[(String, FixtureRecord)]) -> CorpusSummary {
    let fixtures: Vec<FixtureOutcome> = records
        .par_iter()
        .map(|(source, record)| {
            let report = verify_fixture(&record.to_fixture());
            FixtureOutcome {
                source: source.clone(),
                name: report.name.clone(),
                passed: report.passed(),
                checks: report
                    .checks
                    .into_iter()
                    .map(|c| CheckRecord { name: c.name, passed: c.passed, detail: c.detail })
                    .collect(),
            }
        })
        .collect();
    let passed = fixtures.iter().filter(|f| f.passed).count();
    CorpusSummary { total: fixtures.len(), passed, failed: fixtures.len() - passed, fixtures }
}

pub fn run_corpus(paths: &[PathBuf]) -> Result<CorpusSummary, CorpusError> {
    Ok(run_records(&load_corpus(paths)?))
}

/// Directory of the corpus shipped with the crate.
pub fn shipped_corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}
