//! The P2-graph of a patch: tiles as vertices, full shared edges as edges.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::geometry::{validate_patch, Patch};
use crate::ring::Cyclo10;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P2Graph {
    adj: Vec<Vec<usize>>,
    interior: Vec<bool>,
}

impl P2Graph {
    /// Graph on `n` vertices. Edges may repeat and come in any order;
    /// self-loops are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], interior: &[usize]) -> Result<P2Graph> {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a == b || a >= n || b >= n {
                return Err(Error::Structural(format!("bad edge {a}-{b} on {n} vertices")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let mut flags = vec![false; n];
        for &v in interior {
            if v >= n {
                return Err(Error::Structural(format!("interior vertex {v} out of range")));
            }
            flags[v] = true;
        }
        Ok(P2Graph {
            adj,
            interior: flags,
        })
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn is_interior(&self, v: usize) -> bool {
        self.interior[v]
    }

    /// Edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("P2GRAPH v1\n");
        for (a, b) in self.edges() {
            writeln!(s, "edge {a} {b}").unwrap();
        }
        for v in interior_tiles(self) {
            writeln!(s, "interior {v}").unwrap();
        }
        s
    }

    /// Parse the text format. The format lists no vertex count, so the graph
    /// has `1 + max id` vertices and isolated tiles past the last id vanish.
    pub fn from_text(text: &str) -> Result<P2Graph> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, "P2GRAPH v1")) => {}
            _ => return Err(Error::parse(1, "expected `P2GRAPH v1`")),
        }
        let mut edges = Vec::new();
        let mut interior = Vec::new();
        let mut n = 0;
        for (i, line) in lines {
            let lineno = i + 1;
            let f: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| s.parse::<usize>().map_err(|_| Error::parse(lineno, format!("bad id `{s}`")));
            match f.as_slice() {
                ["edge", a, b] => {
                    let (a, b) = (num(a)?, num(b)?);
                    if a >= b {
                        return Err(Error::parse(lineno, "edge ids must satisfy id1 < id2"));
                    }
                    if !interior.is_empty() {
                        return Err(Error::parse(lineno, "edge after interior lines"));
                    }
                    n = n.max(b + 1);
                    edges.push((a, b));
                }
                ["interior", v] => {
                    let v = num(v)?;
                    n = n.max(v + 1);
                    interior.push(v);
                }
                [] => {}
                _ => return Err(Error::parse(lineno, format!("unrecognised line `{line}`"))),
            }
        }
        if edges.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::parse(0, "edges not in lexicographic order"));
        }
        if interior.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::parse(0, "interior ids not ascending"));
        }
        P2Graph::from_edges(n, &edges, &interior)
    }
}

/// Dual graph of a valid patch. Loose half-tiles are ignored.
pub fn build_dual(p: &Patch) -> Result<P2Graph> {
    let violations = validate_patch(p);
    if !violations.is_empty() {
        return Err(Error::InvalidPatch(violations));
    }
    Ok(build_dual_unchecked(p))
}

pub(crate) fn build_dual_unchecked(p: &Patch) -> P2Graph {
    let mut owners: HashMap<(Cyclo10, Cyclo10), Vec<usize>> = HashMap::with_capacity(2 * p.len());
    for t in &p.tiles {
        for (a, b) in t.edges() {
            let key = if a < b { (a, b) } else { (b, a) };
            owners.entry(key).or_default().push(t.id);
        }
    }
    let mut edges = Vec::new();
    for ids in owners.values() {
        if let [a, b] = ids[..] {
            edges.push((a.min(b), a.max(b)));
        }
    }
    let mut g = P2Graph::from_edges(p.len(), &edges, &[]).expect("tile ids are dense");
    g.interior = g.adj.iter().map(|l| l.len() == 4).collect();
    g
}

/// Tiles with all four sides shared, i.e. of degree 4.
pub fn interior_tiles(g: &P2Graph) -> Vec<usize> {
    (0..g.len()).filter(|&v| g.is_interior(v)).collect()
}
