//! Undirected simple graphs with bit-vector adjacency rows.

use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    labels: Vec<String>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        SimpleGraph { n, words, rows: vec![0; n * words], labels: (0..n).map(|v| v.to_string()).collect() }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            g.add_edge(u, (u + 1) % n);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 1..n {
            g.add_edge(u - 1, u);
        }
        g
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n, "one label per vertex");
        self.labels = labels;
        self
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub(crate) fn words(&self) -> usize {
        self.words
    }

    pub(crate) fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    /// Adds `{u, v}`. Loops are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "vertex out of range");
        if u == v {
            return;
        }
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(u).iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|u| self.degree(u)).collect();
        d.sort_unstable();
        d
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    /// Graph with vertex `u` renamed `perm[u]`.
    pub fn permuted(&self, perm: &[usize]) -> SimpleGraph {
        assert_eq!(perm.len(), self.n);
        let mut g = SimpleGraph::new(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        let mut labels = vec![String::new(); self.n];
        for (u, &pu) in perm.iter().enumerate() {
            labels[pu] = self.labels[u].clone();
        }
        g.with_labels(labels)
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        writeln!(out, "graph {} {{", quote(name)).unwrap();
        for l in &self.labels {
            writeln!(out, "  {};", quote(l)).unwrap();
        }
        for (u, v) in self.edges() {
            writeln!(out, "  {} -- {};", quote(&self.labels[u]), quote(&self.labels[v])).unwrap();
        }
        out.push_str("}\n");
        out
    }
}

pub(crate) fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}
