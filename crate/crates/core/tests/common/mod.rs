#![allow(dead_code)]

use std::path::PathBuf;

use moy_core::web::{parse, WebDiagram};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

/// Every `.web` file of the shipped corpus, parsed, sorted by file name.
pub fn load_corpus() -> Vec<(String, WebDiagram)> {
    let mut paths: Vec<_> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "web"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            let w = parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
            (name, w)
        })
        .collect()
}

pub fn closed_corpus() -> Vec<(String, WebDiagram)> {
    load_corpus()
        .into_iter()
        .filter(|(_, w)| w.is_closed())
        .collect()
}
