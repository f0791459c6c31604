//! Shared helpers for the integration suites: corpus location and loading.
//! Each suite uses a subset, so unused-function lints are off.
#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use pielift::dsl::{parse_files, Workspace};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn corpus_sources() -> Vec<(String, String)> {
    let dir = corpus_dir();
    let mut names: Vec<PathBuf> = fs::read_dir(&dir)
        .expect("corpus directory exists")
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.extension()
                .and_then(|e| e.to_str())
                .is_some_and(|e| ["2cat", "diag", "wt", "alg"].contains(&e))
        })
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|p| {
            let name = p.file_name().unwrap().to_str().unwrap().to_string();
            (name, fs::read_to_string(&p).expect("corpus file readable"))
        })
        .collect()
}

pub fn load_corpus() -> Workspace {
    parse_files(&corpus_sources(), true).expect("shipped corpus parses and validates")
}
