#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use sigmalat_core::{builtin_corpus, Group, Limits, SigmaPartition};

pub const GRID: [&str; 4] = [
    "sigma1",
    "pi:[2,3]",
    "pi:[2,3,5]",
    "classes=[[3],[7]];rest=one-class",
];

/// Every corpus group, built once per test binary so caches are shared.
pub fn corpus(max_order: usize) -> Vec<(String, Arc<Group>)> {
    static ALL: OnceLock<Vec<(String, Arc<Group>)>> = OnceLock::new();
    ALL.get_or_init(|| {
        builtin_corpus(usize::MAX)
            .into_iter()
            .map(|e| {
                let g = e.build(Limits::default()).expect("corpus entry builds");
                (e.name, Arc::new(g))
            })
            .collect()
    })
    .iter()
    .filter(|(_, g)| g.order() <= max_order)
    .cloned()
    .collect()
}

pub fn group(name: &str) -> Arc<Group> {
    corpus(usize::MAX)
        .into_iter()
        .find(|(n, _)| n == name)
        .unwrap_or_else(|| panic!("no corpus group {name}"))
        .1
}

pub fn grid() -> Vec<SigmaPartition> {
    GRID.iter()
        .map(|s| s.parse().expect("grid sigma parses"))
        .collect()
}

/// The grid plus a class that makes A5 σ-primary and the one-class partition.
pub fn wide_grid() -> Vec<SigmaPartition> {
    let mut out = grid();
    out.push("classes=[[2,3,5]];rest=singletons".parse().unwrap());
    out.push("classes=[];rest=one-class".parse().unwrap());
    out
}

pub fn sigma(s: &str) -> SigmaPartition {
    s.parse().unwrap()
}
