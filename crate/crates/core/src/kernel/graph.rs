use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::composition::{check_degree, compositions_of, num_compositions, Composition};
use crate::error::Result;

use super::relations::{is_ctilde, successors, RelationId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: Composition,
    pub to: Composition,
    pub relation: RelationId,
}

/// Directed graph on the compositions of `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationGraph {
    degree: usize,
    edges: Vec<Edge>,
    /// Vertices marked by a unary relation.
    marked: Vec<Composition>,
}

impl RelationGraph {
    /// A graph with the given edges; repeated ordered pairs are kept once.
    pub fn from_edges(degree: usize, edges: Vec<Edge>) -> Self {
        let mut seen = BTreeSet::new();
        let edges = edges
            .into_iter()
            .filter(|e| seen.insert((e.from.index(), e.to.index())))
            .collect();
        RelationGraph {
            degree,
            edges,
            marked: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn marked(&self) -> &[Composition] {
        &self.marked
    }

    pub fn vertices(&self) -> Vec<Composition> {
        compositions_of(self.degree).expect("degree was checked on construction")
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph relations_{} {{", self.degree);
        let _ = writeln!(out, "  node [shape=plaintext];");
        let marked: BTreeSet<u32> = self.marked.iter().map(|c| c.index()).collect();
        for v in self.vertices() {
            if marked.contains(&v.index()) {
                let _ = writeln!(out, "  \"{v}\" [shape=box];");
            } else {
                let _ = writeln!(out, "  \"{v}\";");
            }
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                e.from,
                e.to,
                e.relation.label()
            );
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "degree": self.degree,
            "vertices": self.vertices().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| serde_json::json!({
                "from": e.from.to_string(),
                "to": e.to.to_string(),
                "label": e.relation.label(),
                "relation": e.relation.name(),
            })).collect::<Vec<_>>(),
            "marked": self.marked.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        })
    }

    /// `from,to,label` lines.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("from,to,label\n");
        for e in &self.edges {
            let _ = writeln!(out, "\"{}\",\"{}\",{}", e.from, e.to, e.relation.label());
        }
        out
    }
}

/// Every edge `J rel K` with `J ⊨ n`, ordered by `J`, then relation, then `K`.
/// `CTilde` marks vertices instead of adding edges.
pub fn relation_edges(rels: &[RelationId], n: usize) -> Result<RelationGraph> {
    check_degree(n)?;
    let mut rels = rels.to_vec();
    rels.sort();
    rels.dedup();
    let mut edges = Vec::new();
    let mut marked = Vec::new();
    for j in compositions_of(n)? {
        for &rel in &rels {
            if rel == RelationId::CTilde {
                if is_ctilde(&j) {
                    marked.push(j.clone());
                }
                continue;
            }
            for k in successors(rel, &j) {
                edges.push(Edge {
                    from: j.clone(),
                    to: k,
                    relation: rel,
                });
            }
        }
    }
    let mut g = RelationGraph::from_edges(n, edges);
    g.marked = marked;
    Ok(g)
}

/// Disjoint-set forest over `0..len` with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `a` and `b`; `false` if they were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// Components of the underlying undirected graph, each sorted by index and
/// ordered by smallest member.
pub fn connected_components(g: &RelationGraph) -> Vec<Vec<Composition>> {
    let len = num_compositions(g.degree);
    let mut uf = UnionFind::new(len);
    for e in &g.edges {
        uf.union(e.from.index() as usize, e.to.index() as usize);
    }
    let mut block_of = vec![usize::MAX; len];
    let mut blocks: Vec<Vec<Composition>> = Vec::new();
    for v in g.vertices() {
        let root = uf.find(v.index() as usize);
        if block_of[root] == usize::MAX {
            block_of[root] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[block_of[root]].push(v);
    }
    blocks
}

/// Whether the underlying undirected multigraph is acyclic. Loops and
/// antiparallel pairs count as cycles.
pub fn is_forest(g: &RelationGraph) -> bool {
    let mut uf = UnionFind::new(num_compositions(g.degree));
    g.edges
        .iter()
        .all(|e| uf.union(e.from.index() as usize, e.to.index() as usize))
}
