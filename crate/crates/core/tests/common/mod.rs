#![allow(dead_code)]

use std::path::PathBuf;

use coverreg::hypergraph::{is_totally_unimodular, DEFAULT_TU_CAP};
use coverreg::Hypergraph;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// `(file stem, hypergraph)` for every corpus member, sorted by name.
pub fn corpus() -> Vec<(String, Hypergraph)> {
    let mut out: Vec<(String, Hypergraph)> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .map(|p| {
            let text = std::fs::read_to_string(&p).expect("readable corpus file");
            let h = Hypergraph::from_json_str(&text).expect("valid corpus file");
            (p.file_stem().unwrap().to_string_lossy().into_owned(), h)
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

pub fn is_tu(h: &Hypergraph) -> bool {
    is_totally_unimodular(&h.incidence_matrix(), DEFAULT_TU_CAP)
        .expect("corpus fits the TU cap")
        .is_unimodular()
}

pub fn tu_corpus() -> Vec<(String, Hypergraph)> {
    corpus().into_iter().filter(|(_, h)| is_tu(h)).collect()
}
