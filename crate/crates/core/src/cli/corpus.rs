//! Runs every domain file in a directory against its `[expect]` section.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use super::file::DomainFile;
use super::job::{run_job, Got, Invariant, JobSpec, EXIT_ERROR, EXIT_OK};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub case: String,
    pub invariant: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusReport {
    pub rows: Vec<Row>,
    /// Per-case reports keyed by case name; no timings.
    pub json: Value,
    pub exit: i32,
}

impl CorpusReport {
    pub fn passed(&self) -> usize {
        self.rows.iter().filter(|r| r.pass).count()
    }

    pub fn table(&self) -> String {
        let w = |f: fn(&Row) -> &str, title: &str| self.rows.iter().map(|r| f(r).chars().count()).max().unwrap_or(0).max(title.len());
        let (wc, wi, we) = (w(|r| &r.case, "case"), w(|r| &r.invariant, "invariant"), w(|r| &r.expected, "expected"));
        let mut out = format!("{:wc$}  {:wi$}  {:we$}  {}  status\n", "case", "invariant", "expected", "got");
        for r in &self.rows {
            out += &format!("{:wc$}  {:wi$}  {:we$}  {}  {}\n", r.case, r.invariant, r.expected, r.got, if r.pass { "pass" } else { "FAIL" });
        }
        out += &format!("{}/{} passed\n", self.passed(), self.rows.len());
        out
    }
}

/// `.dom` files in `dir` whose file names match `filter` (a glob), sorted.
pub fn corpus_files(dir: &Path, filter: Option<&str>) -> Result<Vec<PathBuf>> {
    let pattern = match filter {
        Some(f) => glob::Pattern::new(f).map_err(|e| Error::Io(format!("bad filter: {e}")))?,
        None => glob::Pattern::new("*").unwrap(),
    };
    let entries = std::fs::read_dir(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "dom"))
        .filter(|p| p.file_name().and_then(|n| n.to_str()).is_some_and(|n| pattern.matches(n)))
        .collect();
    files.sort();
    Ok(files)
}

fn run_case(path: &Path) -> (String, Vec<Row>, Value) {
    let case = path.file_stem().and_then(|s| s.to_str()).unwrap_or("?").to_string();
    let fail = |inv: &str, msg: String| Row { case: case.clone(), invariant: inv.into(), expected: "-".into(), got: format!("error: {msg}"), pass: false };
    let file = match DomainFile::load(path) {
        Ok(f) => f,
        Err(e) => return (case.clone(), vec![fail("-", e.to_string())], json!({ "error": e.to_string() })),
    };
    let mut invs = Vec::new();
    for key in file.expect.keys() {
        match key.parse::<Invariant>() {
            Ok(i) => invs.push(i),
            Err(e) => return (case.clone(), vec![fail(key, e.to_string())], json!({ "error": e.to_string() })),
        }
    }
    let expect = file.expect.clone();
    let report = JobSpec::new(file, &invs).and_then(|j| run_job(&j));
    match report {
        Err(e) => (case.clone(), vec![fail("-", e.to_string())], json!({ "error": e.to_string() })),
        Ok(r) => {
            let rows = invs
                .iter()
                .map(|inv| {
                    let e = &expect[inv.name()];
                    let g = r.got.get(inv).cloned().unwrap_or(Got::Failed("not run".into()));
                    Row { case: case.clone(), invariant: inv.name().into(), expected: e.to_string(), got: g.to_string(), pass: g.matches(e) }
                })
                .collect();
            (case.clone(), rows, r.json)
        }
    }
}

pub fn run_corpus(dir: &Path, filter: Option<&str>) -> Result<CorpusReport> {
    let files = corpus_files(dir, filter)?;
    let cases: Vec<_> = files.par_iter().map(|p| run_case(p)).collect();
    let mut rows = Vec::new();
    let mut json = Map::new();
    for (name, r, v) in cases {
        rows.extend(r);
        json.insert(name, v);
    }
    let exit = if rows.iter().all(|r| r.pass) { EXIT_OK } else { EXIT_ERROR };
    Ok(CorpusReport { rows, json: json!({ "version": env!("CARGO_PKG_VERSION"), "cases": Value::Object(json) }), exit })
}
