//! Core types for quivers, exchange matrices, and their underlying graphs.
//!
//! A quiver here is a finite directed multigraph without loops and without
//! directed 2-cycles. It is stored as a multiplicity matrix: `mult[i][j]` is
//! the number of arrows from `i` to `j`, and at most one of `mult[i][j]`,
//! `mult[j][i]` is nonzero. The equivalent skew-symmetric integer matrix
//! representation is [`ExchangeMatrix`], with `b[i][j] = mult[i][j] - mult[j][i]`.
//!
//! Mutation is implemented twice on purpose: once on the matrix via the
//! standard exchange formula, and once on the quiver via the arrow rule
//! (compose through the mutated vertex, reverse incident arrows, cancel
//! 2-cycles). The two routes are checked against each other in tests and by
//! downstream property tests.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

/// Errors produced by quiver and graph construction, mutation, and parsing.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuiverError {
    #[error("vertex index {index} out of range for {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("matrix entry ({i},{j}) breaks skew-symmetry")]
    NotSkewSymmetric { i: usize, j: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("directed 2-cycle between vertices {0} and {1}")]
    TwoCycle(usize, usize),
    #[error("negative arrow multiplicity at ({i},{j})")]
    NegativeMultiplicity { i: usize, j: usize },
    #[error("integer overflow while mutating")]
    EntryOverflow,
    #[error("self-loop edge at vertex {0}")]
    GraphLoop(usize),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

fn check_index(index: usize, n: usize) -> Result<(), QuiverError> {
    if index < n {
        Ok(())
    } else {
        Err(QuiverError::IndexOutOfRange { index, n })
    }
}

/// Skew-symmetric integer matrix subject to mutation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExchangeMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl ExchangeMatrix {
    /// Builds a matrix from row-major entries, rejecting non-skew input.
    pub fn from_entries(n: usize, entries: Vec<i64>) -> Result<Self, QuiverError> {
        assert_eq!(entries.len(), n * n, "entry vector must have n*n elements");
        for i in 0..n {
            for j in i..n {
                if entries[i * n + j] != -entries[j * n + i] {
                    return Err(QuiverError::NotSkewSymmetric { i, j });
                }
            }
        }
        Ok(ExchangeMatrix { n, entries })
    }

    /// Zero matrix on `n` vertices.
    pub fn zero(n: usize) -> Self {
        ExchangeMatrix {
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    /// Sets `b[i][j] = v` and `b[j][i] = -v` in one step.
    pub fn set_pair(&mut self, i: usize, j: usize, v: i64) {
        assert_ne!(i, j, "diagonal entries are fixed at zero");
        self.entries[i * self.n + j] = v;
        self.entries[j * self.n + i] = -v;
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// Mutates at vertex `k` using the exchange formula:
    /// entries in row or column `k` flip sign, and every other entry becomes
    /// `b[i][j] + (|b[i][k]| b[k][j] + b[i][k] |b[k][j]|) / 2`.
    pub fn mutate(&self, k: usize) -> Result<Self, QuiverError> {
        check_index(k, self.n)?;
        let n = self.n;
        let mut out = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                let b = self.entries[i * n + j];
                out[i * n + j] = if i == k || j == k {
                    b.checked_neg().ok_or(QuiverError::EntryOverflow)?
                } else {
                    let bik = self.entries[i * n + k];
                    let bkj = self.entries[k * n + j];
                    let t1 = bik
                        .abs()
                        .checked_mul(bkj)
                        .ok_or(QuiverError::EntryOverflow)?;
                    let t2 = bik
                        .checked_mul(bkj.abs())
                        .ok_or(QuiverError::EntryOverflow)?;
                    let corr = t1.checked_add(t2).ok_or(QuiverError::EntryOverflow)? / 2;
                    b.checked_add(corr).ok_or(QuiverError::EntryOverflow)?
                };
            }
        }
        Ok(ExchangeMatrix { n, entries: out })
    }

    /// Applies mutations left to right.
    pub fn apply_sequence(&self, ks: &[usize]) -> Result<Self, QuiverError> {
        let mut m = self.clone();
        for &k in ks {
            m = m.mutate(k)?;
        }
        Ok(m)
    }

    /// Matrix with every entry negated (all arrows reversed).
    pub fn opposite(&self) -> Self {
        ExchangeMatrix {
            n: self.n,
            entries: self.entries.iter().map(|&v| -v).collect(),
        }
    }

    /// Relabels vertices: old vertex `i` becomes `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.n;
        assert_eq!(perm.len(), n);
        let mut out = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                out[perm[i] * n + perm[j]] = self.entries[i * n + j];
            }
        }
        ExchangeMatrix { n, entries: out }
    }

    /// Underlying simple graph: an edge wherever an entry is nonzero.
    pub fn underlying_graph(&self) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.n);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.get(i, j) != 0 {
                    g.add_edge(i, j).expect("indices in range, i != j");
                }
            }
        }
        g
    }
}

impl From<&Quiver> for ExchangeMatrix {
    fn from(q: &Quiver) -> Self {
        let n = q.n;
        let mut entries = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = q.mult[i * n + j] - q.mult[j * n + i];
            }
        }
        ExchangeMatrix { n, entries }
    }
}

/// Directed multigraph without loops or 2-cycles, stored as arrow
/// multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quiver {
    n: usize,
    mult: Vec<i64>,
}

impl Quiver {
    /// Quiver with `n` vertices and no arrows.
    pub fn new(n: usize) -> Self {
        Quiver {
            n,
            mult: vec![0; n * n],
        }
    }

    /// Builds a quiver from `(source, target, multiplicity)` triples.
    /// Multiplicities of repeated triples accumulate.
    pub fn from_arrows(n: usize, arrows: &[(usize, usize, i64)]) -> Result<Self, QuiverError> {
        let mut mult = vec![0i64; n * n];
        for &(i, j, m) in arrows {
            check_index(i, n)?;
            check_index(j, n)?;
            if i == j {
                return Err(QuiverError::Loop(i));
            }
            if m < 0 {
                return Err(QuiverError::NegativeMultiplicity { i, j });
            }
            mult[i * n + j] += m;
        }
        let q = Quiver { n, mult };
        q.check_no_two_cycles()?;
        Ok(q)
    }

    fn check_no_two_cycles(&self) -> Result<(), QuiverError> {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.mult[i * self.n + j] > 0 && self.mult[j * self.n + i] > 0 {
                    return Err(QuiverError::TwoCycle(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Number of arrows from `i` to `j`.
    pub fn arrows(&self, i: usize, j: usize) -> i64 {
        self.mult[i * self.n + j]
    }

    /// Total arrow count with multiplicity.
    pub fn arrow_count(&self) -> i64 {
        self.mult.iter().sum()
    }

    /// Largest multiplicity of any arrow bundle.
    pub fn max_arrow_multiplicity(&self) -> i64 {
        self.mult.iter().copied().max().unwrap_or(0)
    }

    /// List of `(source, target, multiplicity)` triples with positive
    /// multiplicity, ordered by source then target.
    pub fn arrow_list(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let m = self.mult[i * self.n + j];
                if m > 0 {
                    out.push((i, j, m));
                }
            }
        }
        out
    }

    /// Mutates at vertex `k` by the arrow rule: for every path `i -> k -> j`
    /// add a composite arrow `i -> j`, then reverse all arrows at `k`, then
    /// cancel directed 2-cycles in pairs.
    pub fn mutate(&self, k: usize) -> Result<Self, QuiverError> {
        check_index(k, self.n)?;
        let n = self.n;
        let mut m = self.mult.clone();
        for i in 0..n {
            if i == k {
                continue;
            }
            let ik = self.mult[i * n + k];
            if ik == 0 {
                continue;
            }
            for j in 0..n {
                if j == k || j == i {
                    continue;
                }
                let kj = self.mult[k * n + j];
                if kj == 0 {
                    continue;
                }
                let add = ik.checked_mul(kj).ok_or(QuiverError::EntryOverflow)?;
                m[i * n + j] = m[i * n + j]
                    .checked_add(add)
                    .ok_or(QuiverError::EntryOverflow)?;
            }
        }
        for i in 0..n {
            if i != k {
                m.swap(i * n + k, k * n + i);
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let c = m[i * n + j].min(m[j * n + i]);
                if c > 0 {
                    m[i * n + j] -= c;
                    m[j * n + i] -= c;
                }
            }
        }
        Ok(Quiver { n, mult: m })
    }

    /// Applies mutations left to right.
    pub fn apply_sequence(&self, ks: &[usize]) -> Result<Self, QuiverError> {
        let mut q = self.clone();
        for &k in ks {
            q = q.mutate(k)?;
        }
        Ok(q)
    }

    /// Quiver with every arrow reversed.
    pub fn opposite(&self) -> Self {
        let n = self.n;
        let mut mult = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                mult[j * n + i] = self.mult[i * n + j];
            }
        }
        Quiver { n, mult }
    }

    /// Relabels vertices: old vertex `i` becomes `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.n;
        assert_eq!(perm.len(), n);
        let mut mult = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                mult[perm[i] * n + perm[j]] = self.mult[i * n + j];
            }
        }
        Quiver { n, mult }
    }

    /// Underlying simple graph: one edge wherever arrows run in either
    /// direction, multiplicity forgotten.
    pub fn underlying_graph(&self) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.n);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.mult[i * self.n + j] > 0 || self.mult[j * self.n + i] > 0 {
                    g.add_edge(i, j).expect("indices in range, i != j");
                }
            }
        }
        g
    }

    /// Serializes to the line-oriented text format: a `quiver <n>` header,
    /// then one `<i> <j> <m>` line per arrow bundle, 1-based, sorted.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "quiver {}", self.n).unwrap();
        for (i, j, m) in self.arrow_list() {
            writeln!(s, "{} {} {}", i + 1, j + 1, m).unwrap();
        }
        s
    }

    /// Parses the text format produced by [`Quiver::to_text`]. Blank lines
    /// and `#` comments are ignored; an arrow line may omit the multiplicity,
    /// which then defaults to 1; repeated lines accumulate.
    pub fn from_text(text: &str) -> Result<Self, QuiverError> {
        let mut n: Option<usize> = None;
        let mut arrows: Vec<(usize, usize, i64)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match n {
                None => {
                    if fields.len() != 2 || fields[0] != "quiver" {
                        return Err(QuiverError::Parse {
                            line: line_no,
                            msg: format!("expected `quiver <n>` header, got `{line}`"),
                        });
                    }
                    let size: usize = fields[1].parse().map_err(|_| QuiverError::Parse {
                        line: line_no,
                        msg: format!("bad vertex count `{}`", fields[1]),
                    })?;
                    n = Some(size);
                }
                Some(size) => {
                    if fields.len() != 2 && fields.len() != 3 {
                        return Err(QuiverError::Parse {
                            line: line_no,
                            msg: format!("expected `<i> <j> [m]`, got `{line}`"),
                        });
                    }
                    let parse_vertex = |s: &str| -> Result<usize, QuiverError> {
                        let v: usize = s.parse().map_err(|_| QuiverError::Parse {
                            line: line_no,
                            msg: format!("bad vertex `{s}`"),
                        })?;
                        if v == 0 || v > size {
                            return Err(QuiverError::Parse {
                                line: line_no,
                                msg: format!("vertex {v} outside 1..={size}"),
                            });
                        }
                        Ok(v - 1)
                    };
                    let i = parse_vertex(fields[0])?;
                    let j = parse_vertex(fields[1])?;
                    let m: i64 = if fields.len() == 3 {
                        fields[2].parse().map_err(|_| QuiverError::Parse {
                            line: line_no,
                            msg: format!("bad multiplicity `{}`", fields[2]),
                        })?
                    } else {
                        1
                    };
                    if m < 0 {
                        return Err(QuiverError::Parse {
                            line: line_no,
                            msg: format!("negative multiplicity {m}"),
                        });
                    }
                    arrows.push((i, j, m));
                }
            }
        }
        match n {
            None => Err(QuiverError::Parse {
                line: 0,
                msg: "missing `quiver <n>` header".into(),
            }),
            Some(size) => Quiver::from_arrows(size, &arrows).map_err(|e| match e {
                QuiverError::Loop(i) => QuiverError::Parse {
                    line: 0,
                    msg: format!("loop at vertex {}", i + 1),
                },
                QuiverError::TwoCycle(i, j) => QuiverError::Parse {
                    line: 0,
                    msg: format!("directed 2-cycle between vertices {} and {}", i + 1, j + 1),
                },
                other => other,
            }),
        }
    }
}

impl TryFrom<&ExchangeMatrix> for Quiver {
    type Error = QuiverError;

    /// Reads positive entries as arrow multiplicities.
    fn try_from(b: &ExchangeMatrix) -> Result<Self, QuiverError> {
        let n = b.size();
        let mut mult = vec![0i64; n * n];
        for i in 0..n {
            if b.get(i, i) != 0 {
                return Err(QuiverError::Loop(i));
            }
            for j in 0..n {
                mult[i * n + j] = b.get(i, j).max(0);
            }
        }
        Ok(Quiver { n, mult })
    }
}

/// Undirected simple graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph {
            n,
            edges: BTreeSet::new(),
        }
    }

    /// Builds a graph from an edge list; duplicates collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, QuiverError> {
        let mut g = SimpleGraph::new(n);
        for &(i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<(), QuiverError> {
        check_index(i, self.n)?;
        check_index(j, self.n)?;
        if i == j {
            return Err(QuiverError::GraphLoop(i));
        }
        self.edges.insert((i.min(j), i.max(j)));
        Ok(())
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i.min(j), i.max(j)))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    /// Neighbor lists for all vertices at once.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Connected components as sorted vertex lists, sorted by minimum vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
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
        self.components().len() <= 1
    }

    /// Relabels vertices: old vertex `i` becomes `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut g = SimpleGraph::new(self.n);
        for &(a, b) in &self.edges {
            g.add_edge(perm[a], perm[b]).expect("permutation in range");
        }
        g
    }

    /// Length of the shortest cycle, or `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        let adj = self.adjacency();
        let mut best: Option<usize> = None;
        // BFS from every vertex; a non-tree edge at depths d1, d2 closes a
        // cycle of length d1 + d2 + 1 through the root.
        for start in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    } else if parent[v] != w {
                        let len = dist[v] + dist[w] + 1;
                        if best.is_none_or(|b| len < b) {
                            best = Some(len);
                        }
                    }
                }
            }
        }
        best
    }

    /// Serializes to the text format: a `graph <n>` header then one
    /// `<i> <j>` line per edge, 1-based, sorted.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "graph {}", self.n).unwrap();
        for &(a, b) in &self.edges {
            writeln!(s, "{} {}", a + 1, b + 1).unwrap();
        }
        s
    }

    /// Parses the text format produced by [`SimpleGraph::to_text`].
    pub fn from_text(text: &str) -> Result<Self, QuiverError> {
        let mut g: Option<SimpleGraph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match g {
                None => {
                    if fields.len() != 2 || fields[0] != "graph" {
                        return Err(QuiverError::Parse {
                            line: line_no,
                            msg: format!("expected `graph <n>` header, got `{line}`"),
                        });
                    }
                    let size: usize = fields[1].parse().map_err(|_| QuiverError::Parse {
                        line: line_no,
                        msg: format!("bad vertex count `{}`", fields[1]),
                    })?;
                    g = Some(SimpleGraph::new(size));
                }
                Some(ref mut graph) => {
                    if fields.len() != 2 {
                        return Err(QuiverError::Parse {
                            line: line_no,
                            msg: format!("expected `<i> <j>`, got `{line}`"),
                        });
                    }
                    let parse_vertex = |s: &str| -> Result<usize, QuiverError> {
                        let v: usize = s.parse().map_err(|_| QuiverError::Parse {
                            line: line_no,
                            msg: format!("bad vertex `{s}`"),
                        })?;
                        if v == 0 || v > graph.n {
                            return Err(QuiverError::Parse {
                                line: line_no,
                                msg: format!("vertex {v} outside 1..={}", graph.n),
                            });
                        }
                        Ok(v - 1)
                    };
                    let i = parse_vertex(fields[0])?;
                    let j = parse_vertex(fields[1])?;
                    if i == j {
                        return Err(QuiverError::Parse {
                            line: line_no,
                            msg: format!("self-loop at vertex {}", i + 1),
                        });
                    }
                    graph.add_edge(i, j).expect("validated above");
                }
            }
        }
        g.ok_or(QuiverError::Parse {
            line: 0,
            msg: "missing `graph <n>` header".into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn markov() -> ExchangeMatrix {
        ExchangeMatrix::from_entries(3, vec![0, 2, -2, -2, 0, 2, 2, -2, 0]).unwrap()
    }

    #[test]
    fn matrix_mutation_matches_hand_computation() {
        let m = markov().mutate(0).unwrap();
        assert_eq!(m.entries(), &[0, -2, 2, 2, 0, -2, -2, 2, 0]);
    }

    #[test]
    fn mutation_is_an_involution() {
        let b = markov();
        assert_eq!(b.mutate(1).unwrap().mutate(1).unwrap(), b);

        let c = ExchangeMatrix::from_entries(
            4,
            vec![0, 1, 0, -3, -1, 0, 2, 0, 0, -2, 0, 1, 3, 0, -1, 0],
        )
        .unwrap();
        for k in 0..4 {
            assert_eq!(c.mutate(k).unwrap().mutate(k).unwrap(), c);
        }
    }

    #[test]
    fn mutation_preserves_skew_symmetry() {
        let mut b = ExchangeMatrix::from_entries(
            4,
            vec![0, 1, 0, -3, -1, 0, 2, 0, 0, -2, 0, 1, 3, 0, -1, 0],
        )
        .unwrap();
        for k in [0, 2, 3, 1, 0, 2] {
            b = b.mutate(k).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    assert_eq!(b.get(i, j), -b.get(j, i));
                }
            }
        }
    }

    #[test]
    fn quiver_and_matrix_mutation_agree() {
        let b = ExchangeMatrix::from_entries(
            4,
            vec![0, 1, 0, -3, -1, 0, 2, 0, 0, -2, 0, 1, 3, 0, -1, 0],
        )
        .unwrap();
        let q = Quiver::try_from(&b).unwrap();
        for seq in [vec![0], vec![1, 2], vec![3, 0, 1], vec![2, 2, 1, 0, 3]] {
            let via_matrix = b.apply_sequence(&seq).unwrap();
            let via_quiver = q.apply_sequence(&seq).unwrap();
            assert_eq!(ExchangeMatrix::from(&via_quiver), via_matrix);
        }
    }

    #[test]
    fn sink_source_flip_on_path() {
        // 1 -> 2 -> 3, mutate at the middle vertex.
        let q = Quiver::from_arrows(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        let m = q.mutate(1).unwrap();
        // Arrows at 2 reverse and a composite 1 -> 3 appears.
        assert_eq!(m.arrows(1, 0), 1);
        assert_eq!(m.arrows(2, 1), 1);
        assert_eq!(m.arrows(0, 2), 1);
        assert_eq!(m.arrow_count(), 3);
    }

    #[test]
    fn composite_cancellation() {
        // 1 -> 2 -> 3 together with 3 -> 1: mutating at 2 creates a
        // composite 1 -> 3 which cancels against the existing 3 -> 1.
        let q = Quiver::from_arrows(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
        let m = q.mutate(1).unwrap();
        assert_eq!(m.arrows(0, 2), 0);
        assert_eq!(m.arrows(2, 0), 0);
        assert_eq!(m.arrows(1, 0), 1);
        assert_eq!(m.arrows(2, 1), 1);
        assert_eq!(m.arrow_count(), 2);
    }

    #[test]
    fn doubled_arrows_compose_multiplicatively() {
        let q = Quiver::from_arrows(3, &[(0, 1, 2), (1, 2, 2)]).unwrap();
        let m = q.mutate(1).unwrap();
        assert_eq!(m.arrows(0, 2), 4);
    }

    #[test]
    fn rejects_two_cycles_and_loops() {
        assert_eq!(
            Quiver::from_arrows(2, &[(0, 1, 1), (1, 0, 1)]),
            Err(QuiverError::TwoCycle(0, 1))
        );
        assert_eq!(
            Quiver::from_arrows(2, &[(0, 0, 1)]),
            Err(QuiverError::Loop(0))
        );
    }

    #[test]
    fn quiver_text_round_trip() {
        let q = Quiver::from_arrows(4, &[(0, 1, 1), (1, 2, 2), (3, 0, 1)]).unwrap();
        let text = q.to_text();
        assert_eq!(Quiver::from_text(&text).unwrap(), q);
        // Lenient input: comments, blank lines, implicit multiplicity.
        let hand = "# a quiver\nquiver 4\n\n1 2\n2 3 2\n4 1 1\n";
        assert_eq!(Quiver::from_text(hand).unwrap(), q);
    }

    #[test]
    fn quiver_text_rejects_bad_input() {
        assert!(Quiver::from_text("quiver 2\n1 1\n").is_err());
        assert!(Quiver::from_text("quiver 2\n1 2\n2 1\n").is_err());
        assert!(Quiver::from_text("quiver 2\n1 3\n").is_err());
        assert!(Quiver::from_text("1 2\n").is_err());
    }

    #[test]
    fn graph_text_round_trip() {
        let g = SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let text = g.to_text();
        assert_eq!(SimpleGraph::from_text(&text).unwrap(), g);
    }

    #[test]
    fn graph_basics() {
        let g = SimpleGraph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (3, 4)]).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.degree(1), 2);
        assert!(!g.is_connected());
        assert_eq!(g.components(), vec![vec![0, 1, 2], vec![3, 4]]);
        assert_eq!(g.girth(), Some(3));

        let square = SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(square.girth(), Some(4));

        let tree = SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        assert_eq!(tree.girth(), None);
    }

    #[test]
    fn opposite_is_involutive_and_flips_arrows() {
        let q = Quiver::from_arrows(3, &[(0, 1, 2), (2, 1, 1)]).unwrap();
        let op = q.opposite();
        assert_eq!(op.arrows(1, 0), 2);
        assert_eq!(op.arrows(1, 2), 1);
        assert_eq!(op.opposite(), q);
        assert_eq!(
            ExchangeMatrix::from(&op),
            ExchangeMatrix::from(&q).opposite()
        );
    }

    #[test]
    fn relabel_round_trip() {
        let q = Quiver::from_arrows(3, &[(0, 1, 1), (1, 2, 2)]).unwrap();
        let perm = [2, 0, 1];
        let r = q.relabel(&perm);
        assert_eq!(r.arrows(2, 0), 1);
        assert_eq!(r.arrows(0, 1), 2);
        let inverse = [1, 2, 0];
        assert_eq!(r.relabel(&inverse), q);
    }

    #[test]
    fn mutation_at_isolated_vertex_is_identity() {
        let q = Quiver::from_arrows(3, &[(0, 1, 1)]).unwrap();
        assert_eq!(q.mutate(2).unwrap(), q);
    }

    #[test]
    fn zero_matrix_is_fixed_by_mutation() {
        let z = ExchangeMatrix::zero(4);
        for k in 0..4 {
            assert_eq!(z.mutate(k).unwrap(), z);
        }
    }
}
