#![allow(dead_code)]

pub mod oracle;

use std::path::PathBuf;

use cyalg::quiver_algebra::GradedQuiverPresentation;

pub fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
}

pub fn corpus_text(name: &str) -> String {
    std::fs::read_to_string(corpus_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn load(name: &str) -> GradedQuiverPresentation {
    GradedQuiverPresentation::parse(&corpus_text(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}
