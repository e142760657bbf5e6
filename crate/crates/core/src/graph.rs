//! Immutable undirected simple graphs.
//!
//! Adjacency is stored in compressed (CSR) form with each neighbor list
//! sorted ascending. Node ids from edge lists are mapped to dense indices in
//! first-appearance order and the original tokens are kept as labels.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    edge_count: usize,
    labels: Option<Vec<String>>,
}

/// What happened to the raw edge list during construction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeListReport {
    pub edges_kept: usize,
    pub self_loops_dropped: usize,
    pub duplicates_merged: usize,
    pub node_count: usize,
}

impl Graph {
    /// Builds a graph from pairs of node tokens.
    pub fn from_edges<I, S>(edges: I) -> Result<(Graph, EdgeListReport)>
    where
        I: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        Self::from_nodes_and_edges(std::iter::empty::<&str>(), edges)
    }

    /// Builds a graph from an explicit node list followed by edges. Nodes that
    /// appear only in `nodes` become isolated vertices.
    pub fn from_nodes_and_edges<N, T, I, S>(nodes: N, edges: I) -> Result<(Graph, EdgeListReport)>
    where
        N: IntoIterator<Item = T>,
        T: AsRef<str>,
        I: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut labels: Vec<String> = Vec::new();
        let mut intern = |token: &str| -> usize {
            if let Some(&i) = index.get(token) {
                return i;
            }
            let i = labels.len();
            labels.push(token.to_owned());
            index.insert(token.to_owned(), i);
            i
        };
        for n in nodes {
            intern(n.as_ref());
        }
        let pairs: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(a, b)| (intern(a.as_ref()), intern(b.as_ref())))
            .collect();
        if labels.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let (mut graph, report) = Self::from_index_edges(labels.len(), &pairs)?;
        graph.labels = Some(labels);
        Ok((graph, report))
    }

    /// Builds a graph on nodes `0..node_count` from index pairs.
    pub fn from_index_edges(node_count: usize, edges: &[(usize, usize)]) -> Result<(Graph, EdgeListReport)> {
        let mut report = EdgeListReport { node_count, ..Default::default() };
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); node_count];
        for &(a, b) in edges {
            for i in [a, b] {
                if i >= node_count {
                    return Err(Error::NodeOutOfRange { index: i, node_count });
                }
            }
            if a == b {
                report.self_loops_dropped += 1;
                continue;
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        let mut total = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            total += list.len();
        }
        let edge_count = total / 2;
        report.edges_kept = edge_count;
        report.duplicates_merged = edges.len() - report.self_loops_dropped - edge_count;
        Ok((Self::from_sorted_adjacency(adjacency, None), report))
    }

    fn from_sorted_adjacency(adjacency: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Graph {
        let mut offsets = Vec::with_capacity(adjacency.len() + 1);
        offsets.push(0);
        let mut targets = Vec::with_capacity(adjacency.iter().map(Vec::len).sum());
        for list in adjacency {
            targets.extend_from_slice(&list);
            offsets.push(targets.len());
        }
        let edge_count = targets.len() / 2;
        Graph { offsets, targets, edge_count, labels }
    }

    /// Copies the labels of `other`, which must have the same node count.
    pub(crate) fn with_labels_of(mut self, other: &Graph) -> Graph {
        debug_assert_eq!(self.node_count(), other.node_count());
        self.labels = other.labels.clone();
        self
    }

    /// A graph with no nodes. Only reachable through node removal.
    pub fn empty() -> Graph {
        Graph { offsets: vec![0], targets: Vec::new(), edge_count: 0, labels: None }
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sorted neighbors of `i`. Panics if `i` is out of range.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn degree(&self, i: usize) -> Result<usize> {
        if i >= self.node_count() {
            return Err(Error::NodeOutOfRange { index: i, node_count: self.node_count() });
        }
        Ok(self.offsets[i + 1] - self.offsets[i])
    }

    /// Degree without the range check.
    #[inline]
    pub fn deg(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    pub fn degrees(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.offsets.windows(2).map(|w| w[1] - w[0])
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().min().unwrap_or(0)
    }

    pub fn is_regular(&self) -> bool {
        self.max_degree() == self.min_degree()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.node_count() && b < self.node_count() && self.neighbors(a).binary_search(&b).is_ok()
    }

    /// Original identifier of node `i`, or its index when the graph was built
    /// from indices.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(labels) => labels[i].clone(),
            None => i.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Every undirected edge in both orientations, `2 * edge_count` pairs.
    pub fn directed_edges(&self) -> impl Iterator<Item = (usize, usize)> + Clone + '_ {
        (0..self.node_count()).flat_map(move |i| self.neighbors(i).iter().map(move |&j| (i, j)))
    }

    /// Each undirected edge once, as `(i, j)` with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + Clone + '_ {
        self.directed_edges().filter(|&(i, j)| i < j)
    }

    /// Deletes `victims` and their incident edges. Survivors are re-indexed
    /// densely in their original order; labels follow their nodes.
    pub fn remove_nodes(&self, victims: &[usize]) -> Result<Graph> {
        let n = self.node_count();
        let mut removed = vec![false; n];
        for &v in victims {
            if v >= n {
                return Err(Error::NodeOutOfRange { index: v, node_count: n });
            }
            removed[v] = true;
        }
        Ok(self.retain(|i| !removed[i]))
    }

    /// Keeps the nodes for which `keep` is true.
    pub fn retain(&self, keep: impl Fn(usize) -> bool) -> Graph {
        let n = self.node_count();
        let mut new_index = vec![usize::MAX; n];
        let mut next = 0;
        for (i, slot) in new_index.iter_mut().enumerate() {
            if keep(i) {
                *slot = next;
                next += 1;
            }
        }
        let mut adjacency = Vec::with_capacity(next);
        let mut labels = self.labels.as_ref().map(|_| Vec::with_capacity(next));
        for i in (0..n).filter(|&i| new_index[i] != usize::MAX) {
            // Relabeling is monotone, so the filtered lists stay sorted.
            adjacency.push(
                self.neighbors(i)
                    .iter()
                    .filter_map(|&j| (new_index[j] != usize::MAX).then_some(new_index[j]))
                    .collect::<Vec<_>>(),
            );
            if let (Some(out), Some(src)) = (labels.as_mut(), self.labels.as_ref()) {
                out.push(src[i].clone());
            }
        }
        Self::from_sorted_adjacency(adjacency, labels)
    }

    /// Drops degree-0 nodes, returning the pruned graph and how many were removed.
    pub fn without_isolated(&self) -> (Graph, usize) {
        let isolated = self.degrees().filter(|&d| d == 0).count();
        if isolated == 0 {
            return (self.clone(), 0);
        }
        (self.retain(|i| self.deg(i) > 0), isolated)
    }

    /// Connected components as lists of node indices, in order of smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            stack.push(start);
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.node_count() > 0 && self.components().len() == 1
    }

    /// Checks symmetry, simplicity and the edge count. Used by tests and
    /// debug assertions.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let n = self.node_count();
        for i in 0..n {
            let list = self.neighbors(i);
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("adjacency of {i} not strictly sorted"));
            }
            for &j in list {
                if j == i {
                    return Err(format!("self-neighbor at {i}"));
                }
                if j >= n || self.neighbors(j).binary_search(&i).is_err() {
                    return Err(format!("asymmetric edge {i}-{j}"));
                }
            }
        }
        if self.targets.len() != 2 * self.edge_count {
            return Err("edge count mismatch".into());
        }
        Ok(())
    }
}

/// Parses the edge-list text format: one edge per line, two
/// whitespace-separated tokens, `#` comments and blank lines skipped.
pub fn parse_edge_list(text: &str) -> Result<(Graph, EdgeListReport)> {
    read_edge_list(text.as_bytes())
}

pub fn read_edge_list<R: BufRead>(reader: R) -> Result<(Graph, EdgeListReport)> {
    let mut edges = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => edges.push((a.to_owned(), b.to_owned())),
            _ => {
                return Err(Error::Parse {
                    line: lineno + 1,
                    message: format!("expected two tokens, got {trimmed:?}"),
                })
            }
        }
    }
    Graph::from_edges(edges)
}

pub fn read_edge_list_file(path: &std::path::Path) -> Result<(Graph, EdgeListReport)> {
    let file = std::fs::File::open(path)?;
    read_edge_list(std::io::BufReader::new(file))
}

/// Writes each undirected edge once using node labels. Isolated nodes are
/// not representable in the format and are omitted.
pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    for (i, j) in g.edges() {
        writeln!(out, "{} {}", g.label(i), g.label(j))?;
    }
    Ok(())
}

/// Deterministic fixtures.
pub mod fixtures {
    use super::Graph;

    fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_index_edges(n, edges).expect("fixture edges in range").0
    }

    /// Hub 0 joined to `n - 1` spokes.
    pub fn star(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        build(n, &edges)
    }

    pub fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        build(n, &edges)
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        build(n, &edges)
    }

    /// Ring where each node links to its `k / 2` nearest neighbors on each side.
    pub fn ring_lattice(n: usize, k: usize) -> Graph {
        let edges: Vec<_> = (0..n).flat_map(|i| (1..=k / 2).map(move |j| (i, (i + j) % n))).collect();
        build(n, &edges)
    }

    /// Four nodes a, b, c, d with edges a-b, a-c, b-c, c-d; degrees (2, 2, 3, 1).
    pub fn friendship_example() -> Graph {
        Graph::from_edges([("a", "b"), ("a", "c"), ("b", "c"), ("c", "d")])
            .expect("non-empty")
            .0
    }
}
