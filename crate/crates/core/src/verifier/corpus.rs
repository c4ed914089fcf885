//! Formula corpora: directories of `*.hfi` files.
//!
//! A file holds one formula, possibly spread over several lines. Lines
//! starting with `#` are comments; the directive `#! syntax-only` marks a
//! formula that is only parsed and typed, never checked semantically.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::syntax::{parse_formula, Formula};

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusEntry {
    pub name: String,
    pub formula: Formula,
    pub syntax_only: bool,
}

const DEFAULT: &[(&str, &str)] = &[
    ("00_running", include_str!("../../corpus/00_running.hfi")),
    ("01_st", include_str!("../../corpus/01_st.hfi")),
    ("02_eq", include_str!("../../corpus/02_eq.hfi")),
    ("03_exists_st", include_str!("../../corpus/03_exists_st.hfi")),
    ("04_forall_st", include_str!("../../corpus/04_forall_st.hfi")),
    ("05_impl_exists", include_str!("../../corpus/05_impl_exists.hfi")),
    ("06_forall_exists_st", include_str!("../../corpus/06_forall_exists_st.hfi")),
    ("07_ncr", include_str!("../../corpus/07_ncr.hfi")),
    ("08_us", include_str!("../../corpus/08_us.hfi")),
    ("09_and", include_str!("../../corpus/09_and.hfi")),
    ("10_exists_internal", include_str!("../../corpus/10_exists_internal.hfi")),
    ("11_impl_neg", include_str!("../../corpus/11_impl_neg.hfi")),
    ("12_impl_forall_st", include_str!("../../corpus/12_impl_forall_st.hfi")),
];

/// The corpus shipped with the crate.
pub fn default_corpus() -> Vec<CorpusEntry> {
    DEFAULT
        .iter()
        .map(|(name, text)| parse_entry(name, text).expect("shipped corpus parses"))
        .collect()
}

/// Parses the text of a single corpus file.
pub fn parse_entry(name: &str, text: &str) -> Result<CorpusEntry> {
    let mut syntax_only = false;
    let mut body = String::new();
    for line in text.lines() {
        let trimmed = line.trim();
        if let Some(directive) = trimmed.strip_prefix("#!") {
            match directive.trim() {
                "syntax-only" => syntax_only = true,
                other => return Err(Error::Config(format!("{name}: unknown directive `{other}`"))),
            }
        } else if !trimmed.starts_with('#') && !trimmed.is_empty() {
            if !body.is_empty() {
                body.push(' ');
            }
            body.push_str(trimmed);
        }
    }
    if body.is_empty() {
        return Err(Error::Config(format!("{name}: no formula")));
    }
    let formula = parse_formula(&body).map_err(|e| Error::Config(format!("{name}: {e}")))?;
    Ok(CorpusEntry {
        name: name.to_string(),
        formula,
        syntax_only,
    })
}

/// Every `*.hfi` file of `dir`, in file-name order.
pub fn load_dir(dir: &Path) -> Result<Vec<CorpusEntry>> {
    let mut paths = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))? {
        let path = entry?.path();
        if path.extension().is_some_and(|x| x == "hfi") && path.is_file() {
            paths.push(path);
        }
    }
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let name = p.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            let text = fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            parse_entry(&name, &text)
        })
        .collect()
}
