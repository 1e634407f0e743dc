#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use qsymk_core::kernel::{relation_edges, RelationId};

/// Edge and marked-vertex lines for all compositions of size `0..=max_n`.
pub fn render_relations(rels: &[RelationId], max_n: usize) -> BTreeSet<String> {
    let mut lines = BTreeSet::new();
    for n in 0..=max_n {
        let g = relation_edges(rels, n).unwrap();
        for e in g.edges() {
            lines.insert(format!("{} -> {} {}", e.from, e.to, e.relation.label()));
        }
        for v in g.marked() {
            lines.insert(format!("{v} marked"));
        }
    }
    lines
}

/// Non-comment lines of a file under `tests/golden`.
pub fn load_golden(name: &str) -> BTreeSet<String> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("reading {}: {e}", path.display()))
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect()
}
