//! Simple directed graphs, vertex sequences and the brute-force
//! Hamiltonian-path oracles.

use std::fmt;

use thiserror::Error;

/// Largest vertex count [`enumerate_graphs`] accepts by default.
pub const DEFAULT_ENUMERATION_CAP: usize = 4;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    OutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge ({u},{v})")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("vertex count must be at least 1")]
    Empty,
    #[error("enumeration over {n} vertices exceeds the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
}

/// Simple directed graph on vertices `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        Ok(Graph { n, adj: vec![false; n * n] })
    }

    /// Builds a graph from 1-based edges. Line numbers in errors are the
    /// 1-based index into `edges` plus one (the header line).
    pub fn new<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (k, (u, v)) in edges.into_iter().enumerate() {
            g.add_edge(k + 2, u, v)?;
        }
        Ok(g)
    }

    fn add_edge(&mut self, line: usize, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w == 0 || w > self.n {
                return Err(GraphError::OutOfRange { line, vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop { line, vertex: u });
        }
        let slot = &mut self.adj[(u - 1) * self.n + (v - 1)];
        if *slot {
            return Err(GraphError::DuplicateEdge { line, u, v });
        }
        *slot = true;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u >= 1 && v >= 1 && u <= self.n && v <= self.n && self.adj[(u - 1) * self.n + (v - 1)]
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (1..=n).flat_map(move |u| (1..=n).map(move |v| (u, v))).filter(|&(u, v)| self.has_edge(u, v))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&b| b).count()
    }

    /// Ordered pairs `(v, w)`, `v ≠ w`, that are not edges, in lexicographic order.
    pub fn missing_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (1..=n)
            .flat_map(move |u| (1..=n).map(move |v| (u, v)))
            .filter(|&(u, v)| u != v && !self.has_edge(u, v))
    }

    /// Serializes in the edge-list text format accepted by [`parse_graph`].
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edge_count());
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph{{n={}, edges={:?}}}", self.n, self.edges().collect::<Vec<_>>())
    }
}

fn parse_usize(tok: &str, line: usize) -> Result<usize, GraphError> {
    tok.parse()
        .map_err(|_| GraphError::Malformed { line, reason: format!("expected a decimal number, got {tok:?}") })
}

fn two_numbers(text: &str, line: usize) -> Result<(usize, usize), GraphError> {
    let toks: Vec<&str> = text.split_ascii_whitespace().collect();
    match toks.as_slice() {
        [a, b] => Ok((parse_usize(a, line)?, parse_usize(b, line)?)),
        _ => Err(GraphError::Malformed { line, reason: format!("expected two numbers, got {text:?}") }),
    }
}

/// Parses the edge-list format: a header line `n m` followed by `m` lines
/// `u v`. Lines starting with `#` and blank lines are skipped.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.starts_with('#') && !l.trim().is_empty());
    let (hline, header) = lines.next().ok_or(GraphError::Malformed { line: 1, reason: "missing header".into() })?;
    let (n, m) = two_numbers(header, hline)?;
    let mut g = Graph::empty(n).map_err(|_| GraphError::Malformed { line: hline, reason: "n must be at least 1".into() })?;
    let mut seen = 0;
    let mut last = hline;
    for (line, l) in lines {
        let (u, v) = two_numbers(l, line)?;
        g.add_edge(line, u, v)?;
        seen += 1;
        last = line;
    }
    if seen != m {
        return Err(GraphError::Malformed { line: last, reason: format!("header announces {m} edges, found {seen}") });
    }
    Ok(g)
}

/// A length-`n` sequence of vertices; repetitions allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeSeq(pub Vec<usize>);

impl NodeSeq {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for NodeSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Witness that a sequence is not a Hamiltonian path. Positions are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Violation {
    Repeat { i: usize, j: usize, v: usize },
    MissingEdge { i: usize, v: usize, w: usize },
}

/// Least violation of `p` (a full sequence or a prefix of one).
///
/// Repeats take priority over missing edges; within each kind the
/// lexicographically least position wins.
pub fn find_violation(p: &[usize], g: &Graph) -> Option<Violation> {
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] == p[j] {
                return Some(Violation::Repeat { i: i + 1, j: j + 1, v: p[i] });
            }
        }
    }
    p.windows(2).enumerate().find_map(|(i, w)| {
        (!g.has_edge(w[0], w[1])).then_some(Violation::MissingEdge { i: i + 1, v: w[0], w: w[1] })
    })
}

/// Lexicographic next permutation in place; false once the last one is passed.
fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = p.iter().rposition(|&x| x > p[i]).expect("pivot has a successor");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Exhaustive search over all `n!` orderings; returns the lexicographically
/// first Hamiltonian path.
pub fn is_hamiltonian(g: &Graph) -> Option<NodeSeq> {
    let mut p: Vec<usize> = (1..=g.n()).collect();
    loop {
        if p.windows(2).all(|w| g.has_edge(w[0], w[1])) {
            return Some(NodeSeq(p));
        }
        if !next_permutation(&mut p) {
            return None;
        }
    }
}

/// All `2^(n(n-1))` simple digraphs on `1..=n`. The index of a graph in the
/// stream is its edge bitmask over ordered pairs in lexicographic order.
pub fn enumerate_graphs(n: usize) -> Result<impl Iterator<Item = Graph>, GraphError> {
    enumerate_graphs_capped(n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_graphs_capped(n: usize, cap: usize) -> Result<impl Iterator<Item = Graph>, GraphError> {
    if n == 0 {
        return Err(GraphError::Empty);
    }
    if n > cap {
        return Err(GraphError::CapExceeded { n, cap });
    }
    let pairs: Vec<(usize, usize)> =
        (1..=n).flat_map(|u| (1..=n).map(move |v| (u, v))).filter(|(u, v)| u != v).collect();
    let total: u64 = 1 << pairs.len();
    Ok((0..total).map(move |mask| graph_from_mask(n, &pairs, mask)))
}

fn graph_from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> Graph {
    let edges = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e);
    Graph::new(n, edges).expect("enumerated pairs are valid")
}

/// The chain `1→2→…→n` with its last edge removed.
pub fn chain_minus_last_edge(n: usize) -> Graph {
    Graph::new(n, (1..n.saturating_sub(1)).map(|i| (i, i + 1))).expect("valid chain")
}
