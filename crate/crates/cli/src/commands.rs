use std::fs;
use std::path::{Path, PathBuf};

use kahler_core::obstructions::analyze_presentation;
use kahler_core::oracle::oracle_dims;
use kahler_core::{parse_presentation, ParseError, Q};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::fixtures;
use crate::report::ReportDocument;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}:{source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error(
        "oracle mismatch: pipeline (q, dim Gamma_2/Gamma_3) = ({}, {}), oracle = ({}, {})",
        pipeline.0, pipeline.1, oracle.0, oracle.1
    )]
    OracleMismatch {
        pipeline: (usize, usize),
        oracle: (usize, usize),
    },
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Internal(_) => 1,
            CliError::Parse { .. } => 2,
            CliError::OracleMismatch { .. } => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AnalyzeOptions {
    pub json: bool,
    pub explain: bool,
    pub oracle: bool,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Parses and analyzes one presentation, returning the checked report.
pub fn build_report(text: &str, path: &Path, oracle: bool) -> Result<ReportDocument, CliError> {
    let p = parse_presentation(text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })?;
    let (analysis, report) = analyze_presentation(&p);
    let doc = ReportDocument::build(&p, &analysis, &report);
    doc.check_identities().map_err(CliError::Internal)?;
    if oracle {
        let expected = oracle_dims::<Q>(&p);
        let got = (doc.q, doc.dim_gamma2_gamma3);
        if expected != got {
            return Err(CliError::OracleMismatch {
                pipeline: got,
                oracle: expected,
            });
        }
    }
    Ok(doc)
}

pub fn render(doc: &ReportDocument, opts: AnalyzeOptions) -> String {
    if opts.json {
        doc.to_json()
    } else {
        doc.to_text(opts.explain)
    }
}

pub fn cmd_analyze(path: &Path, opts: AnalyzeOptions) -> Result<String, CliError> {
    let text = read(path)?;
    let doc = build_report(&text, path, opts.oracle)?;
    Ok(render(&doc, opts))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatchRow {
    pub name: String,
    pub n: usize,
    pub s: usize,
    pub q: usize,
    pub dim2: usize,
    pub overall: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatchError {
    pub name: String,
    pub error: String,
}

#[derive(Debug, Serialize)]
pub struct BatchOutcome {
    pub schema: u32,
    pub rows: Vec<BatchRow>,
    pub errors: Vec<BatchError>,
    #[serde(skip)]
    pub exit_code: i32,
}

impl BatchOutcome {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("batch serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let header = ["name", "n", "s", "q", "dim2", "overall"];
        let cells: Vec<[String; 6]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.name.clone(),
                    r.n.to_string(),
                    r.s.to_string(),
                    r.q.to_string(),
                    r.dim2.to_string(),
                    r.overall.clone(),
                ]
            })
            .collect();
        let mut widths = header.map(str::len);
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.len());
            }
        }
        let line = |row: &[String]| {
            let parts: Vec<String> = row
                .iter()
                .zip(widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            parts.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(&header.map(String::from));
        for row in &cells {
            out.push_str(&line(row));
        }
        if !self.errors.is_empty() {
            out.push_str("errors:\n");
            for e in &self.errors {
                out.push_str(&format!("  {}: {}\n", e.name, e.error));
            }
        }
        out
    }
}

/// Analyzes every `*.pres` file in `dir` in parallel; rows come back sorted
/// by file name.
pub fn cmd_batch(dir: &Path) -> Result<BatchOutcome, CliError> {
    let io_err = |source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    };
    let mut files: Vec<PathBuf> = Vec::new();
    for entry in fs::read_dir(dir).map_err(io_err)? {
        let path = entry.map_err(io_err)?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == fixtures::EXTENSION) {
            files.push(path);
        }
    }

    let results: Vec<(String, Result<ReportDocument, CliError>)> = files
        .par_iter()
        .map(|path| {
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            (name, read(path).and_then(|t| build_report(&t, path, false)))
        })
        .collect();

    let mut rows = Vec::new();
    let mut errors = Vec::new();
    let mut exit_code = 0;
    for (name, result) in results {
        match result {
            Ok(doc) => rows.push(BatchRow {
                name,
                n: doc.n,
                s: doc.s,
                q: doc.q,
                dim2: doc.dim_gamma2_gamma3,
                overall: doc.overall,
            }),
            Err(e) => {
                exit_code = exit_code.max(e.exit_code());
                errors.push(BatchError {
                    name,
                    error: e.to_string(),
                });
            }
        }
    }
    rows.sort_by(|a, b| a.name.cmp(&b.name));
    errors.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(BatchOutcome {
        schema: crate::report::SCHEMA_VERSION,
        rows,
        errors,
        exit_code,
    })
}

pub fn cmd_fixtures(dir: &Path) -> Result<Vec<String>, CliError> {
    fixtures::write_corpus(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })
}
