//! Dense simple undirected graphs with bitset adjacency rows, plus the
//! neighbourhood bookkeeping used throughout the extremal arguments:
//! `N(u)`, `N[u]`, `N_i(u)`, `N²(u)`, `W = V \ N[u]`, `d_S(v)` and `e(S, T)`.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of vertices the CLI accepts unless told otherwise. The graph type
/// itself widens its rows to any number of 64-bit words.
pub const DEFAULT_MAX_VERTICES: usize = 64;

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

/// A set of vertex indices backed by a growable bitset.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: Vec<u64>,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut bits = vec![0u64; words_for(n)];
        for (w, word) in bits.iter_mut().enumerate() {
            let lo = w * 64;
            if n >= lo + 64 {
                *word = u64::MAX;
            } else if n > lo {
                *word = (1u64 << (n - lo)) - 1;
            }
        }
        Self { bits }
    }

    pub fn from_words(bits: &[u64]) -> Self {
        Self {
            bits: bits.to_vec(),
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.bits
    }

    pub fn insert(&mut self, v: usize) -> bool {
        let w = v / 64;
        if w >= self.bits.len() {
            self.bits.resize(w + 1, 0);
        }
        let mask = 1u64 << (v % 64);
        let fresh = self.bits[w] & mask == 0;
        self.bits[w] |= mask;
        fresh
    }

    pub fn remove(&mut self, v: usize) -> bool {
        let w = v / 64;
        if w >= self.bits.len() {
            return false;
        }
        let mask = 1u64 << (v % 64);
        let present = self.bits[w] & mask != 0;
        self.bits[w] &= !mask;
        present
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.bits
            .get(v / 64)
            .is_some_and(|w| w & (1u64 << (v % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        let len = self.bits.len().max(other.bits.len());
        let bits = (0..len)
            .map(|i| {
                f(
                    self.bits.get(i).copied().unwrap_or(0),
                    other.bits.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        Self { bits }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.bits
            .iter()
            .zip(&other.bits)
            .all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits
            .iter()
            .enumerate()
            .all(|(i, a)| a & !other.bits.get(i).copied().unwrap_or(0) == 0)
    }

    /// `|self ∩ words|` without allocating.
    #[inline]
    pub fn count_in(&self, words: &[u64]) -> usize {
        self.bits
            .iter()
            .zip(words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<usize> = Vec::deserialize(d)?;
        Ok(v.into_iter().collect())
    }
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    m: usize,
}

impl Graph {
    /// Edgeless graph of order `n`.
    pub fn new(n: usize) -> Self {
        let words = words_for(n);
        Self {
            n,
            words,
            rows: vec![0; n * words],
            m: 0,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds from single-word rows; requires `rows.len() <= 64`.
    pub fn from_rows64(rows: &[u64]) -> Self {
        let n = rows.len();
        debug_assert!(n <= 64);
        let mut g = Self::new(n);
        let mut deg = 0;
        for (v, &r) in rows.iter().enumerate() {
            g.rows[v] = r;
            deg += r.count_ones() as usize;
        }
        g.m = deg / 2;
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// First adjacency word of `v`; the whole row when `n <= 64`.
    #[inline]
    pub fn row64(&self, v: usize) -> u64 {
        self.rows[v * self.words]
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u * self.words + v / 64] & (1u64 << (v % 64)) != 0
    }

    /// Adds `uv`; returns `false` if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::Loop(u, v));
        }
        if self.has_edge(u, v) {
            return Ok(false);
        }
        self.rows[u * self.words + v / 64] |= 1u64 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1u64 << (u % 64);
        self.m += 1;
        Ok(true)
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        if !self.has_edge(u, v) {
            return Ok(false);
        }
        self.rows[u * self.words + v / 64] &= !(1u64 << (v % 64));
        self.rows[v * self.words + u / 64] &= !(1u64 << (u % 64));
        self.m -= 1;
        Ok(true)
    }

    pub fn with_edge(mut self, u: usize, v: usize) -> Result<Self> {
        self.add_edge(u, v)?;
        Ok(self)
    }

    /// Appends `k` isolated vertices.
    pub fn grow(&self, k: usize) -> Self {
        let mut g = Graph::new(self.n + k);
        for (u, v) in self.edges() {
            g.add_edge(u, v).expect("in range");
        }
        g
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet::from_words(self.row(v))
    }

    pub fn neighbor_iter(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|v| self.neighbor_iter(v).collect()).collect()
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Degrees in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbor_iter(u)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) == 0).collect()
    }

    pub fn has_isolated_vertices(&self) -> bool {
        (0..self.n).any(|v| self.degree(v) == 0)
    }

    /// Subgraph induced by `vs`, relabelled `0..vs.len()` in the given order.
    pub fn induced(&self, vs: &[usize]) -> Graph {
        let mut g = Graph::new(vs.len());
        for (i, &a) in vs.iter().enumerate() {
            for (j, &b) in vs.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(i, j).expect("in range");
                }
            }
        }
        g
    }

    /// Graph with vertex `perm[i]` of `self` renamed to `i`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        self.induced(perm)
    }

    /// Copy with isolated vertices deleted, preserving the order of the rest.
    pub fn without_isolated(&self) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|&v| self.degree(v) > 0).collect();
        self.induced(&keep)
    }

    /// `d_S(v) = |N(v) ∩ S|`.
    pub fn degree_in(&self, v: usize, s: &VertexSet) -> Result<usize> {
        self.check(v)?;
        Ok(s.count_in(self.row(v)))
    }

    /// `e(S, T)`: edges with one end in `S` and the other in `T`; an edge
    /// with both ends in `S ∩ T` is counted once, so `e(S, S) = e(S)`.
    pub fn edge_count(&self, s: &VertexSet, t: &VertexSet) -> usize {
        let ordered: usize = s
            .iter()
            .filter(|&x| x < self.n)
            .map(|x| t.count_in(self.row(x)))
            .sum();
        let both = s.intersection(t);
        let inside: usize = both
            .iter()
            .filter(|&x| x < self.n)
            .map(|x| both.count_in(self.row(x)))
            .sum();
        ordered - inside / 2
    }

    /// `e(S)`.
    pub fn edges_within(&self, s: &VertexSet) -> usize {
        self.edge_count(s, s)
    }

    pub fn cut(&self, s: &VertexSet, t: &VertexSet) -> EdgeCut {
        EdgeCut {
            s: s.clone(),
            t: t.clone(),
            count: self.edge_count(s, t),
        }
    }

    pub fn strata(&self, u: usize) -> Result<NeighborhoodStrata> {
        self.check(u)?;
        let nbrs = self.neighbors(u);
        let mut closed = nbrs.clone();
        closed.insert(u);
        let mut by_inner: Vec<VertexSet> = Vec::new();
        for v in nbrs.iter() {
            let i = nbrs.count_in(self.row(v));
            if by_inner.len() <= i {
                by_inner.resize(i + 1, VertexSet::new());
            }
            by_inner[i].insert(v);
        }
        if by_inner.len() < 2 {
            by_inner.resize(2, VertexSet::new());
        }
        let w = self.vertices().difference(&closed);
        let n2: VertexSet = w
            .iter()
            .filter(|&x| nbrs.count_in(self.row(x)) > 0)
            .collect();
        Ok(NeighborhoodStrata {
            center: u,
            neighbors: nbrs,
            closed,
            by_inner_degree: by_inner,
            n2,
            w,
        })
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let x = comp[i];
                i += 1;
                for y in self.neighbor_iter(x) {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The empty graph and `K_1` count as connected.
    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    pub fn bipartition(&self) -> Bipartition {
        let mut color: Vec<Option<u8>> = vec![None; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut depth = vec![0usize; self.n];
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(0);
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                let cx = color[x].unwrap();
                for y in self.neighbor_iter(x) {
                    match color[y] {
                        None => {
                            color[y] = Some(1 - cx);
                            parent[y] = x;
                            depth[y] = depth[x] + 1;
                            queue.push_back(y);
                        }
                        Some(cy) if cy == cx => {
                            return Bipartition::OddCycle(tree_cycle(x, y, &parent, &depth));
                        }
                        _ => {}
                    }
                }
            }
        }
        Bipartition::Bipartite(color.into_iter().map(|c| c.unwrap_or(0)).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        matches!(self.bipartition(), Bipartition::Bipartite(_))
    }

    /// Articulation points via DFS low-links.
    pub fn cut_vertices(&self) -> Vec<usize> {
        let n = self.n;
        let adj = self.adjacency_lists();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut is_cut = vec![false; n];
        let mut timer = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // (vertex, parent, next neighbour index)
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            let mut root_children = 0;
            while let Some(&mut (v, p, ref mut idx)) = stack.last_mut() {
                if *idx < adj[v].len() {
                    let w = adj[v][*idx];
                    *idx += 1;
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((w, v, 0));
                    } else if w != p {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if p != usize::MAX {
                        low[p] = low[p].min(low[v]);
                        if p != root && low[v] >= disc[p] {
                            is_cut[p] = true;
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        (0..n).filter(|&v| is_cut[v]).collect()
    }
}

fn tree_cycle(x: usize, y: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let (mut a, mut b) = (x, y);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=", self.n)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

/// Two-colouring or an odd closed walk that is a simple odd cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bipartition {
    Bipartite(Vec<u8>),
    OddCycle(Vec<usize>),
}

/// The sets `N[u]`, `N_i(u)`, `N²(u)` and `W` around a centre `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborhoodStrata {
    pub center: usize,
    pub neighbors: VertexSet,
    pub closed: VertexSet,
    by_inner_degree: Vec<VertexSet>,
    pub n2: VertexSet,
    pub w: VertexSet,
}

impl NeighborhoodStrata {
    /// `N_i(u)`: neighbours with exactly `i` neighbours inside `N(u)`.
    pub fn ni(&self, i: usize) -> VertexSet {
        self.by_inner_degree.get(i).cloned().unwrap_or_default()
    }

    pub fn n0(&self) -> &VertexSet {
        &self.by_inner_degree[0]
    }

    pub fn n1(&self) -> &VertexSet {
        &self.by_inner_degree[1]
    }

    /// `N_+(u) = N(u) \ N_0(u)`.
    pub fn n_plus(&self) -> VertexSet {
        self.neighbors.difference(self.n0())
    }

    pub fn max_inner_degree(&self) -> usize {
        self.by_inner_degree.len() - 1
    }

    pub fn to_json(&self) -> StrataJson {
        StrataJson {
            center: self.center,
            n0: self.n0().to_vec(),
            n1: self.n1().to_vec(),
            n2: self.n2.to_vec(),
            w: self.w.to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrataJson {
    pub center: usize,
    pub n0: Vec<usize>,
    pub n1: Vec<usize>,
    pub n2: Vec<usize>,
    pub w: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeCut {
    pub s: VertexSet,
    pub t: VertexSet,
    pub count: usize,
}
