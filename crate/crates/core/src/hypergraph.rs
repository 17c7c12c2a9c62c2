//! Hypergraphs on `{1..n}`: validation, simplification, incidence matrices,
//! total unimodularity, minimal vertex covers and localization.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactlin::{det_small_integer, int, Rational, RationalMatrix};

/// Largest supported vertex count; vertex sets are stored as bitmasks.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("vertex count {0} is outside 1..={MAX_VERTICES}")]
    VertexCount(usize),
    #[error("edges[{edge}]: vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { edge: usize, vertex: usize, n: usize },
    #[error("edges[{edge}] is empty")]
    EmptyEdge { edge: usize },
    #[error("edges[{edge}] repeats vertex {vertex}")]
    DuplicateVertex { edge: usize, vertex: usize },
    #[error("edges[{edge}] duplicates edges[{first}]")]
    DuplicateEdge { edge: usize, first: usize },
    #[error("hypergraph has no edges")]
    NoEdges,
    #[error("invalid construction: {0}")]
    InvalidConstruction(String),
    #[error("malformed hypergraph JSON: {0}")]
    Json(String),
    #[error("total unimodularity check refused: {rows}x{cols} matrix exceeds the {cap}x{cap} cap")]
    TuCapExceeded { rows: usize, cols: usize, cap: usize },
}

/// A subset of `{1..n}`, stored as a bitmask (bit `i - 1` for vertex `i`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        Self(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// All of `{1..n}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            Self(u64::MAX)
        } else {
            Self((1u64 << n) - 1)
        }
    }

    /// From 1-based vertices. Panics on vertex 0 or vertices above 64.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Self {
        let mut s = Self::EMPTY;
        for v in vertices {
            s.insert(v);
        }
        s
    }

    pub fn insert(&mut self, v: usize) {
        assert!((1..=MAX_VERTICES).contains(&v), "vertex {v} out of range");
        self.0 |= 1 << (v - 1);
    }

    pub fn remove(&mut self, v: usize) {
        if (1..=MAX_VERTICES).contains(&v) {
            self.0 &= !(1 << (v - 1));
        }
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 & (1 << (v - 1)) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: VertexSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    /// Vertices in increasing order, 1-based.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize + 1;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Ordering by size, then lexicographically on the sorted vertex lists.
    pub fn cmp_graded_lex(&self, other: &VertexSet) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.to_vec().cmp(&other.to_vec()))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Wire form: `{"n": int, "edges": [[int, ...], ...]}` with 1-based vertices.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct HypergraphJson {
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
}

/// Vertex set `{1..n}` with an ordered list of distinct nonempty edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<VertexSet>,
}

/// Result of [`Hypergraph::localize`]: the restricted hypergraph on
/// `V \ G`, relabeled `1..|V \ G|`, with `vertex_map[i - 1]` giving the
/// original label of new vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Localization {
    pub hypergraph: Hypergraph,
    pub vertex_map: Vec<usize>,
}

impl Hypergraph {
    /// Strict constructor: rejects out-of-range vertices, empty edges,
    /// repeated vertices within an edge and duplicate edges.
    pub fn new(n: usize, edges: &[Vec<usize>]) -> Result<Self, HypergraphError> {
        check_vertex_count(n)?;
        let mut sets: Vec<VertexSet> = Vec::with_capacity(edges.len());
        for (idx, edge) in edges.iter().enumerate() {
            let set = edge_to_set(idx, edge, n)?;
            if set.len() != edge.len() {
                let vertex = first_repeat(edge);
                return Err(HypergraphError::DuplicateVertex { edge: idx, vertex });
            }
            if let Some(first) = sets.iter().position(|&s| s == set) {
                return Err(HypergraphError::DuplicateEdge { edge: idx, first });
            }
            sets.push(set);
        }
        Ok(Self { n, edges: sets })
    }

    /// Like [`Hypergraph::new`] but merges repeated vertices and duplicate
    /// edges instead of rejecting them.
    pub fn new_lenient(n: usize, edges: &[Vec<usize>]) -> Result<Self, HypergraphError> {
        check_vertex_count(n)?;
        let mut sets: Vec<VertexSet> = Vec::with_capacity(edges.len());
        for (idx, edge) in edges.iter().enumerate() {
            let set = edge_to_set(idx, edge, n)?;
            if !sets.contains(&set) {
                sets.push(set);
            }
        }
        Ok(Self { n, edges: sets })
    }

    /// From already-built vertex sets; same validation as [`Hypergraph::new`].
    pub fn from_sets(n: usize, sets: Vec<VertexSet>) -> Result<Self, HypergraphError> {
        let lists: Vec<Vec<usize>> = sets.iter().map(|s| s.to_vec()).collect();
        Self::new(n, &lists)
    }

    pub fn from_json_str(text: &str) -> Result<Self, HypergraphError> {
        let raw: HypergraphJson =
            serde_json::from_str(text).map_err(|e| HypergraphError::Json(e.to_string()))?;
        Self::new(raw.n, &raw.edges)
    }

    pub fn to_json(&self) -> HypergraphJson {
        HypergraphJson {
            n: self.n,
            edges: self.edges.iter().map(|e| e.to_vec()).collect(),
        }
    }

    /// The cycle `1-2-...-n-1` with edges `{i, i+1}` then `{n, 1}`.
    pub fn cycle(n: usize) -> Result<Self, HypergraphError> {
        if n < 3 {
            return Err(HypergraphError::InvalidConstruction(format!(
                "cycle needs at least 3 vertices, got {n}"
            )));
        }
        let edges: Vec<Vec<usize>> = (1..=n).map(|i| vec![i, i % n + 1]).collect();
        Self::new(n, &edges)
    }

    /// The path `1-2-...-n`.
    pub fn path(n: usize) -> Result<Self, HypergraphError> {
        if n < 2 {
            return Err(HypergraphError::InvalidConstruction(format!(
                "path needs at least 2 vertices, got {n}"
            )));
        }
        let edges: Vec<Vec<usize>> = (1..n).map(|i| vec![i, i + 1]).collect();
        Self::new(n, &edges)
    }

    /// `K_{a,b}` with parts `{1..a}` and `{a+1..a+b}`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self, HypergraphError> {
        if a == 0 || b == 0 {
            return Err(HypergraphError::InvalidConstruction(format!(
                "complete bipartite graph needs nonempty parts, got {a}+{b}"
            )));
        }
        let pairs: Vec<(usize, usize)> = (1..=a)
            .flat_map(|u| (1..=b).map(move |w| (u, w)))
            .collect();
        Self::bipartite_from_edge_list(a, b, &pairs)
    }

    /// Bipartite graph with left part `{1..left}` and right part
    /// `{left+1..left+right}`; each pair `(u, w)` joins left vertex `u` to
    /// right vertex `w` (both 1-based within their part).
    pub fn bipartite_from_edge_list(
        left: usize,
        right: usize,
        pairs: &[(usize, usize)],
    ) -> Result<Self, HypergraphError> {
        let mut edges = Vec::with_capacity(pairs.len());
        for &(u, w) in pairs {
            if !(1..=left).contains(&u) || !(1..=right).contains(&w) {
                return Err(HypergraphError::InvalidConstruction(format!(
                    "pair ({u}, {w}) outside parts of sizes {left} and {right}"
                )));
            }
            edges.push(vec![u, left + w]);
        }
        Self::new(left + right, &edges)
    }

    /// Edges are the integer intervals `[lo, hi]` (inclusive) on `1..n`.
    pub fn interval_hypergraph(n: usize, intervals: &[(usize, usize)]) -> Result<Self, HypergraphError> {
        let mut edges = Vec::with_capacity(intervals.len());
        for &(lo, hi) in intervals {
            if lo == 0 || lo > hi || hi > n {
                return Err(HypergraphError::InvalidConstruction(format!(
                    "interval [{lo}, {hi}] is not inside 1..={n}"
                )));
            }
            edges.push((lo..=hi).collect());
        }
        Self::new(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Keeps only inclusion-minimal edges, in input order.
    pub fn simplify(&self) -> Hypergraph {
        let mut kept: Vec<VertexSet> = Vec::new();
        for (i, &e) in self.edges.iter().enumerate() {
            let dominated = self.edges.iter().enumerate().any(|(j, &f)| {
                f.is_subset(e) && (f != e || j < i)
            });
            if !dominated {
                kept.push(e);
            }
        }
        Hypergraph {
            n: self.n,
            edges: kept,
        }
    }

    pub fn is_simple(&self) -> bool {
        self.edges.iter().enumerate().all(|(i, &e)| {
            self.edges
                .iter()
                .enumerate()
                .all(|(j, &f)| i == j || !f.is_subset(e))
        })
    }

    /// Maximum edge size.
    pub fn rank(&self) -> Result<usize, HypergraphError> {
        self.edges
            .iter()
            .map(|e| e.len())
            .max()
            .ok_or(HypergraphError::NoEdges)
    }

    /// Minimum edge size.
    pub fn min_edge_size(&self) -> Result<usize, HypergraphError> {
        self.edges
            .iter()
            .map(|e| e.len())
            .min()
            .ok_or(HypergraphError::NoEdges)
    }

    /// The `n x m` 0/1 matrix with `a[i][j] = 1` iff vertex `i + 1` lies in edge `j`.
    pub fn incidence_matrix(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.n, self.edges.len());
        for (j, e) in self.edges.iter().enumerate() {
            for v in e.iter() {
                m.set(v - 1, j, int(1));
            }
        }
        m
    }

    /// Inclusion-minimal transversals, ordered by size then lexicographically.
    pub fn minimal_vertex_covers(&self) -> Vec<VertexSet> {
        let mut covers = minimal_transversals(&self.edges);
        covers.sort_by(VertexSet::cmp_graded_lex);
        covers
    }

    /// Deletes the vertices of `removed`, keeps the edges inside what remains
    /// and relabels the survivors contiguously. The result is simplified.
    pub fn localize(&self, removed: VertexSet) -> Localization {
        let remaining = self.vertices().difference(removed);
        let vertex_map: Vec<usize> = remaining.iter().collect();
        let mut new_label = vec![0usize; self.n + 1];
        for (i, &v) in vertex_map.iter().enumerate() {
            new_label[v] = i + 1;
        }
        let edges: Vec<VertexSet> = self
            .edges
            .iter()
            .filter(|e| e.is_subset(remaining))
            .map(|e| VertexSet::from_vertices(e.iter().map(|v| new_label[v])))
            .collect();
        let hypergraph = Hypergraph {
            n: vertex_map.len(),
            edges,
        }
        .simplify();
        Localization {
            hypergraph,
            vertex_map,
        }
    }

    /// True when every edge has exactly two vertices and the graph is 2-colorable.
    pub fn is_bipartite_graph(&self) -> bool {
        if self.edges.is_empty() || self.edges.iter().any(|e| e.len() != 2) {
            return false;
        }
        let mut color: Vec<Option<bool>> = vec![None; self.n + 1];
        for start in 1..=self.n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap_or(false);
                for e in self.edges.iter().filter(|e| e.contains(u)) {
                    for w in e.iter().filter(|&w| w != u) {
                        match color[w] {
                            None => {
                                color[w] = Some(!cu);
                                queue.push_back(w);
                            }
                            Some(cw) if cw == cu => return false,
                            Some(_) => {}
                        }
                    }
                }
            }
        }
        true
    }
}

fn check_vertex_count(n: usize) -> Result<(), HypergraphError> {
    if (1..=MAX_VERTICES).contains(&n) {
        Ok(())
    } else {
        Err(HypergraphError::VertexCount(n))
    }
}

fn edge_to_set(idx: usize, edge: &[usize], n: usize) -> Result<VertexSet, HypergraphError> {
    if edge.is_empty() {
        return Err(HypergraphError::EmptyEdge { edge: idx });
    }
    let mut set = VertexSet::EMPTY;
    for &v in edge {
        if v == 0 || v > n {
            return Err(HypergraphError::VertexOutOfRange { edge: idx, vertex: v, n });
        }
        set.insert(v);
    }
    Ok(set)
}

fn first_repeat(edge: &[usize]) -> usize {
    edge.iter()
        .enumerate()
        .find(|(i, v)| edge[..*i].contains(v))
        .map_or(0, |(_, &v)| v)
}

/// Inclusion-minimal sets meeting every member of `family`.
///
/// Built member by member: every partial transversal that misses the next
/// set is extended by each of its elements, then the family is minimized.
/// An empty family has the single transversal `{}`; a family containing the
/// empty set has none.
pub fn minimal_transversals(family: &[VertexSet]) -> Vec<VertexSet> {
    let mut covers = vec![VertexSet::EMPTY];
    for &edge in family {
        let mut next: Vec<VertexSet> = Vec::new();
        for &t in &covers {
            if t.intersects(edge) {
                next.push(t);
            } else {
                next.extend(edge.iter().map(|v| {
                    let mut u = t;
                    u.insert(v);
                    u
                }));
            }
        }
        covers = minimize_family(next);
    }
    covers
}

/// Drops duplicates and every set that strictly contains another member.
pub fn minimize_family(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort_by_key(|s| (s.len(), s.bits()));
    sets.dedup();
    let mut out: Vec<VertexSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !out.iter().any(|t| t.is_subset(s)) {
            out.push(s);
        }
    }
    out
}

/// A square submatrix whose determinant is not in `{-1, 0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TuWitness {
    /// 0-based row indices.
    pub rows: Vec<usize>,
    /// 0-based column indices.
    pub cols: Vec<usize>,
    #[serde(serialize_with = "crate::checks::serialize_rational")]
    pub det: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TuVerdict {
    TotallyUnimodular,
    Violated(TuWitness),
}

impl TuVerdict {
    pub fn is_unimodular(&self) -> bool {
        matches!(self, TuVerdict::TotallyUnimodular)
    }

    pub fn witness(&self) -> Option<&TuWitness> {
        match self {
            TuVerdict::Violated(w) => Some(w),
            TuVerdict::TotallyUnimodular => None,
        }
    }
}

/// Default side-length cap for the exhaustive minor scan.
pub const DEFAULT_TU_CAP: usize = 12;

/// Exhaustive check that every square minor lies in `{-1, 0, 1}`.
///
/// Minors are scanned by increasing size, so a returned witness is of
/// minimum order. Refuses matrices with more than `cap` rows or columns.
pub fn is_totally_unimodular(m: &RationalMatrix, cap: usize) -> Result<TuVerdict, HypergraphError> {
    let (rows, cols) = (m.rows(), m.cols());
    if rows > cap || cols > cap {
        return Err(HypergraphError::TuCapExceeded { rows, cols, cap });
    }
    for i in 0..rows {
        for j in 0..cols {
            let x = m.get(i, j);
            if *x != int(0) && *x != int(1) && *x != int(-1) {
                return Ok(TuVerdict::Violated(TuWitness {
                    rows: vec![i],
                    cols: vec![j],
                    det: x.clone(),
                }));
            }
        }
    }
    let entries = m.to_i64_entries().expect("entries checked to be in {-1,0,1}");
    let mut buf = Vec::new();
    for k in 2..=rows.min(cols) {
        let mut found = None;
        for_each_combination(rows, k, |rsel| {
            for_each_combination(cols, k, |csel| {
                buf.clear();
                for &i in rsel {
                    buf.extend(csel.iter().map(|&j| entries[i * cols + j]));
                }
                let det = det_small_integer(&buf, k);
                if det.abs() > 1 {
                    found = Some(TuWitness {
                        rows: rsel.to_vec(),
                        cols: csel.to_vec(),
                        det: int(det as i64),
                    });
                    return false;
                }
                true
            })
        });
        if let Some(w) = found {
            return Ok(TuVerdict::Violated(w));
        }
    }
    Ok(TuVerdict::TotallyUnimodular)
}

/// Calls `f` on each `k`-subset of `0..n` in lexicographic order until it
/// returns `false`. Returns `false` iff stopped early.
pub fn for_each_combination<F: FnMut(&[usize]) -> bool>(n: usize, k: usize, mut f: F) -> bool {
    if k > n {
        return true;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return false;
        }
        let Some(pos) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return true;
        };
        idx[pos] += 1;
        for i in pos + 1..k {
            idx[i] = idx[i - 1] + 1;
        }
    }
}
