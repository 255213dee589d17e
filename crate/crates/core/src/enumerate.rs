//! Isomorphism-free generation of all graphs with exactly `m` edges and no
//! isolated vertices, by canonical augmentation on edges.
//!
//! A child is its parent plus one edge (between two parent vertices, from a
//! parent vertex to a new vertex, or between two new vertices). The child is
//! kept only if deleting its canonical last edge, and any vertex that
//! leaves isolated, gives back the parent's isomorphism class. Siblings are
//! deduplicated by certificate. Edge-monotone filters prune during growth,
//! the rest are applied at the leaves.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonicalize, orbit_representatives, Canonical, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;
use crate::motifs::{contains_ct_plus, contains_cycle};
use crate::poly::IntPoly;
use crate::spectral::{char_poly, rho_bounds, spectral_radius, SpectralResult};

pub const SOFT_LIMIT: usize = 14;
pub const HARD_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Flag {
    C3Free,
    C4Free,
    C4PlusFree,
    C5PlusFree,
    NonBipartite,
    Connected,
}

impl Flag {
    pub const ALL: [Flag; 6] = [
        Flag::C3Free,
        Flag::C4Free,
        Flag::C4PlusFree,
        Flag::C5PlusFree,
        Flag::NonBipartite,
        Flag::Connected,
    ];

    /// Closed under edge deletion, so safe to prune during growth.
    pub fn is_monotone(self) -> bool {
        matches!(self, Flag::C3Free | Flag::C4Free | Flag::C4PlusFree | Flag::C5PlusFree)
    }

    pub fn accepts(self, g: &Graph) -> bool {
        match self {
            Flag::C3Free => contains_cycle(g, 3).is_none(),
            Flag::C4Free => contains_cycle(g, 4).is_none(),
            Flag::C4PlusFree => contains_ct_plus(g, 4).is_none(),
            Flag::C5PlusFree => contains_ct_plus(g, 5).is_none(),
            Flag::NonBipartite => !g.is_bipartite(),
            Flag::Connected => g.is_connected(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Flag::C3Free => "c3free",
            Flag::C4Free => "c4free",
            Flag::C4PlusFree => "c4plusfree",
            Flag::C5PlusFree => "c5plusfree",
            Flag::NonBipartite => "nonbipartite",
            Flag::Connected => "connected",
        }
    }
}

impl FromStr for Flag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric() || *c == '+')
            .collect::<String>()
            .to_ascii_lowercase()
            .replace('+', "plus");
        Flag::ALL
            .into_iter()
            .find(|f| f.name() == key)
            .ok_or_else(|| Error::Domain(format!("unknown filter flag {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EnumFilter {
    pub m: usize,
    flags: Vec<Flag>,
}

impl EnumFilter {
    pub fn new(m: usize, flags: &[Flag]) -> Self {
        let mut flags = flags.to_vec();
        flags.sort();
        flags.dedup();
        Self { m, flags }
    }

    /// Parses a comma-separated flag list such as `c4free,nonbipartite`.
    pub fn parse(m: usize, list: &str) -> Result<Self> {
        let flags = list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(Flag::from_str)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(m, &flags))
    }

    pub fn flags(&self) -> &[Flag] {
        &self.flags
    }

    pub fn accepts(&self, g: &Graph) -> bool {
        g.m() == self.m && !g.has_isolated_vertices() && self.flags.iter().all(|f| f.accepts(g))
    }

    fn accepts_growth(&self, g: &Graph) -> bool {
        self.flags.iter().filter(|f| f.is_monotone()).all(|f| f.accepts(g))
    }

    fn accepts_leaf(&self, g: &Graph) -> bool {
        self.flags.iter().filter(|f| !f.is_monotone()).all(|f| f.accepts(g))
    }

    /// Stable key used for cache file names.
    pub fn key(&self) -> String {
        let names: Vec<&str> = self.flags.iter().map(|f| f.name()).collect();
        if names.is_empty() {
            format!("m{}", self.m)
        } else {
            format!("m{}-{}", self.m, names.join("-"))
        }
    }
}

impl fmt::Display for EnumFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.flags.iter().map(|f| f.name()).collect();
        write!(f, "m={} [{}]", self.m, names.join(","))
    }
}

#[derive(Clone, Debug)]
pub struct EnumOptions {
    /// Worker threads; results do not depend on this.
    pub threads: usize,
    /// Permit `m` above [`SOFT_LIMIT`] (never above [`HARD_CAP`]).
    pub allow_large: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        Self {
            threads: 1,
            allow_large: false,
        }
    }
}

/// One isomorphism class, stored in canonical labeling.
#[derive(Clone, Debug)]
pub struct GraphClass {
    pub form: CanonicalForm,
    pub graph: Graph,
}

struct Node {
    graph: Graph,
    cert: String,
    generators: Vec<Vec<usize>>,
}

impl Node {
    fn from_canonical(c: Canonical) -> Self {
        // move generators into canonical labels
        let lab = &c.labeling;
        let generators = c
            .generators
            .iter()
            .map(|g| {
                let mut out = vec![0; g.len()];
                for (v, &img) in g.iter().enumerate() {
                    out[lab[v]] = lab[img];
                }
                out
            })
            .collect();
        Node {
            graph: c.graph,
            cert: c.form.cert,
            generators,
        }
    }
}

fn check_limits(m: usize, opts: &EnumOptions) -> Result<()> {
    if m == 0 {
        return Err(Error::Domain("m must be at least 1".into()));
    }
    if m > HARD_CAP {
        return Err(Error::ResourceCap(format!("m = {m} exceeds the hard cap {HARD_CAP}")));
    }
    if m > SOFT_LIMIT && !opts.allow_large {
        return Err(Error::ResourceCap(format!(
            "m = {m} exceeds the soft limit {SOFT_LIMIT}; pass allow_large to override"
        )));
    }
    Ok(())
}

/// Canonical last edge: in canonical labels the edge `(i, j)`, `i < j`, with
/// the largest `j` and then the largest `i`; returned in the input labels.
fn canonical_last_edge(c: &Canonical) -> (usize, usize) {
    let h = &c.graph;
    let mut inv = vec![0; h.n()];
    for (v, &i) in c.labeling.iter().enumerate() {
        inv[i] = v;
    }
    for j in (0..h.n()).rev() {
        let below = h.row64(j) & ((1u64 << j) - 1);
        if below != 0 {
            let i = 63 - below.leading_zeros() as usize;
            return (inv[i], inv[j]);
        }
    }
    unreachable!("graph has an edge")
}

/// Representatives of the orbits of non-edges (including edges to one or
/// two new vertices) under the group generated by `gens`.
fn candidate_edges(g: &Graph, gens: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let n = g.n();
    let mut out = Vec::new();
    // pairs inside the graph
    let idx = |u: usize, v: usize| u * n + v;
    let mut uf: Vec<usize> = (0..n * n).collect();
    fn find(uf: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while uf[r] != r {
            r = uf[r];
        }
        let mut y = x;
        while uf[y] != r {
            let nx = uf[y];
            uf[y] = r;
            y = nx;
        }
        r
    }
    for gen in gens {
        for u in 0..n {
            for v in u + 1..n {
                let (a, b) = (gen[u].min(gen[v]), gen[u].max(gen[v]));
                let (x, y) = (find(&mut uf, idx(u, v)), find(&mut uf, idx(a, b)));
                if x != y {
                    uf[x.max(y)] = x.min(y);
                }
            }
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) && find(&mut uf, idx(u, v)) == idx(u, v) {
                out.push((u, v));
            }
        }
    }
    let reps = orbit_representatives(n, gens);
    for u in 0..n {
        if reps[u] == u {
            out.push((u, n));
        }
    }
    out.push((n, n + 1));
    out
}

fn children(node: &Node, filter: &EnumFilter) -> Vec<Node> {
    let g = &node.graph;
    let n = g.n();
    let mut seen: HashSet<String> = HashSet::new();
    let mut out = Vec::new();
    let parent_degrees = g.degree_sequence();
    for (u, v) in candidate_edges(g, &node.generators) {
        let grow = if v == n + 1 { 2 } else if v == n { 1 } else { 0 };
        let mut child = g.grow(grow);
        child.add_edge(u, v).expect("in range");
        if !filter.accepts_growth(&child) {
            continue;
        }
        let c = canonicalize(&child).expect("within canonical cap");
        if seen.contains(&c.form.cert) {
            continue;
        }
        let (a, b) = canonical_last_edge(&c);
        let accept = if (a.min(b), a.max(b)) == (u, v) {
            true
        } else {
            let reps = edge_orbit_same(&c.generators, (u, v), (a, b), child.n());
            reps || {
                let mut reduced = child.clone();
                reduced.remove_edge(a, b).expect("edge exists");
                let reduced = reduced.without_isolated();
                reduced.n() == n
                    && reduced.degree_sequence() == parent_degrees
                    && canonicalize(&reduced).expect("within cap").form.cert == node.cert
            }
        };
        if accept {
            seen.insert(c.form.cert.clone());
            out.push(Node::from_canonical(c));
        }
    }
    out
}

/// Whether the generated group maps edge `e` onto edge `f`.
fn edge_orbit_same(gens: &[Vec<usize>], e: (usize, usize), f: (usize, usize), _n: usize) -> bool {
    if gens.is_empty() {
        return false;
    }
    let norm = |(a, b): (usize, usize)| (a.min(b), a.max(b));
    let target = norm(f);
    let mut seen = vec![norm(e)];
    let mut i = 0;
    while i < seen.len() {
        let (a, b) = seen[i];
        if (a, b) == target {
            return true;
        }
        for g in gens {
            let img = norm((g[a], g[b]));
            if !seen.contains(&img) {
                seen.push(img);
            }
        }
        i += 1;
    }
    false
}

fn grow_subtree(node: Node, target: usize, filter: &EnumFilter, out: &mut Vec<GraphClass>) {
    if node.graph.m() == target {
        if filter.accepts_leaf(&node.graph) {
            out.push(GraphClass {
                form: CanonicalForm { cert: node.cert },
                graph: node.graph,
            });
        }
        return;
    }
    for child in children(&node, filter) {
        grow_subtree(child, target, filter, out);
    }
}

fn root_node() -> Node {
    let k2 = Graph::from_edges(2, &[(0, 1)]).expect("K2");
    Node::from_canonical(canonicalize(&k2).expect("K2"))
}

/// All classes passing `filter`, sorted by certificate.
pub fn enumerate_classes(filter: &EnumFilter, opts: &EnumOptions) -> Result<Vec<GraphClass>> {
    check_limits(filter.m, opts)?;
    let root = root_node();
    if !filter.accepts_growth(&root.graph) {
        return Ok(vec![]);
    }
    // expand breadth-first a few levels to get independent subtrees
    let split = filter.m.min(4);
    let mut frontier = vec![root];
    for _ in 1..split {
        frontier = frontier.iter().flat_map(|n| children(n, filter)).collect();
    }
    let m = filter.m;
    let run = |frontier: Vec<Node>| -> Vec<GraphClass> {
        let mut out: Vec<GraphClass> = frontier
            .into_par_iter()
            .flat_map_iter(|node| {
                let mut local = Vec::new();
                grow_subtree(node, m, filter, &mut local);
                local
            })
            .collect();
        out.sort_by(|a, b| a.form.cert.cmp(&b.form.cert));
        out
    };
    let classes = if opts.threads <= 1 {
        let mut out = Vec::new();
        for node in frontier {
            grow_subtree(node, m, filter, &mut out);
        }
        out.sort_by(|a, b| a.form.cert.cmp(&b.form.cert));
        out
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::ResourceCap(format!("thread pool: {e}")))?
            .install(|| run(frontier))
    };
    Ok(classes)
}

/// Visits every class once, in certificate order; returns the count.
pub fn enumerate<F: FnMut(&GraphClass)>(filter: &EnumFilter, opts: &EnumOptions, mut visit: F) -> Result<usize> {
    let classes = enumerate_classes(filter, opts)?;
    for c in &classes {
        visit(c);
    }
    Ok(classes.len())
}

/// Proof that a graph maximises `ρ` over a filter's class. Only
/// [`extremal_rho`] creates these.
#[derive(Clone, Debug, Serialize)]
pub struct ExtremalRecord {
    filter: EnumFilter,
    count: usize,
    cert: String,
    rho: f64,
    bracket: [f64; 2],
    tied: Vec<String>,
}

impl ExtremalRecord {
    pub fn filter(&self) -> &EnumFilter {
        &self.filter
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn cert(&self) -> &str {
        &self.cert
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn bracket(&self) -> [f64; 2] {
        self.bracket
    }

    /// Certificates of every class attaining the maximum.
    pub fn tied(&self) -> &[String] {
        &self.tied
    }

    /// Whether `g` is one of the certified maximisers.
    pub fn covers(&self, g: &Graph) -> bool {
        canonicalize(g)
            .map(|c| self.tied.contains(&c.form.cert))
            .unwrap_or(false)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RankedClass {
    pub cert: String,
    pub rho: f64,
    pub bracket: [f64; 2],
}

#[derive(Clone, Debug, Serialize)]
pub struct Extremal {
    pub graph: String,
    pub result: SpectralResult,
    /// Every class attaining the maximum, by certificate.
    pub ties: Vec<String>,
    /// The next classes below the maximum, best first (at most five).
    pub runners_up: Vec<RankedClass>,
    pub count: usize,
    pub record: ExtremalRecord,
}

const RUNNERS_UP: usize = 5;

/// Maximiser of `ρ` over the filter's class, compared with certified
/// arithmetic.
pub fn extremal_rho(filter: &EnumFilter, opts: &EnumOptions, tol: f64) -> Result<Extremal> {
    let classes = enumerate_classes(filter, opts)?;
    extremal_of(filter, &classes, tol)
}

pub(crate) fn extremal_of(filter: &EnumFilter, classes: &[GraphClass], tol: f64) -> Result<Extremal> {
    if classes.is_empty() {
        return Err(Error::EmptyFamily(filter.to_string()));
    }
    let bounds: Vec<(f64, f64)> = classes.iter().map(|c| rho_bounds(&c.graph)).collect();
    // the (RUNNERS_UP + 1)-th best lower bound; anything whose upper bound
    // falls below it cannot place
    let mut lows: Vec<f64> = bounds.iter().map(|b| b.0).collect();
    lows.sort_by(|a, b| b.total_cmp(a));
    let cutoff = lows[lows.len().min(RUNNERS_UP + 1) - 1];
    let slack = 1e-9 * cutoff.max(1.0);
    let mut ranked: Vec<(usize, SpectralResult)> = Vec::new();
    for (i, c) in classes.iter().enumerate() {
        if bounds[i].1 + slack >= cutoff {
            ranked.push((i, spectral_radius(&c.graph, tol)?));
        }
    }
    ranked.sort_by(|a, b| b.1.cmp_rho(&a.1).then_with(|| a.0.cmp(&b.0)));
    let top = ranked[0].1.clone();
    let ties: Vec<String> = ranked
        .iter()
        .take_while(|(_, r)| r.cmp_rho(&top) == Ordering::Equal)
        .map(|(i, _)| classes[*i].form.cert.clone())
        .collect();
    // runners-up: distinct values below the top, best first
    let runners_up: Vec<RankedClass> = ranked
        .iter()
        .skip(ties.len())
        .take(RUNNERS_UP)
        .map(|(i, r)| RankedClass {
            cert: classes[*i].form.cert.clone(),
            rho: r.rho,
            bracket: r.bracket,
        })
        .collect();
    let graph = ties[0].clone();
    let record = ExtremalRecord {
        filter: filter.clone(),
        count: classes.len(),
        cert: graph.clone(),
        rho: top.rho,
        bracket: top.bracket,
        tied: ties.clone(),
    };
    Ok(Extremal {
        graph,
        result: top,
        ties,
        runners_up,
        count: classes.len(),
        record,
    })
}

/// Classes whose characteristic polynomial is divisible by `poly`.
pub fn find_matching_graphs(filter: &EnumFilter, poly: &IntPoly, opts: &EnumOptions) -> Result<Vec<Graph>> {
    if poly.degree() > 2 * filter.m {
        return Ok(vec![]);
    }
    Ok(enumerate_classes(filter, opts)?
        .into_iter()
        .filter(|c| c.graph.n() >= poly.degree() && poly.divides(&char_poly(&c.graph)))
        .map(|c| c.graph)
        .collect())
}

/// On-disk cache entry for one `(m, flags)` run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub filter: EnumFilter,
    pub count: usize,
    pub extremal: Option<String>,
    pub bracket: Option<[f64; 2]>,
}

pub fn cache_path(dir: &Path, filter: &EnumFilter) -> PathBuf {
    dir.join(format!("{}.json", filter.key()))
}

/// Loads a cache entry; the stored extremal bracket is re-validated against
/// a fresh certified computation and the entry is ignored if it disagrees.
pub fn cache_load(dir: &Path, filter: &EnumFilter) -> Option<CacheEntry> {
    let text = std::fs::read_to_string(cache_path(dir, filter)).ok()?;
    let entry: CacheEntry = serde_json::from_str(&text).ok()?;
    if entry.filter != *filter {
        return None;
    }
    if let (Some(cert), Some([lo, hi])) = (&entry.extremal, entry.bracket) {
        let g = graph6::decode(cert).ok()?;
        let r = spectral_radius(&g, 1e-10).ok()?;
        if r.root().cmp_f64(lo) == Ordering::Less || r.root().cmp_f64(hi) == Ordering::Greater {
            return None;
        }
    }
    Some(entry)
}

pub fn cache_store(dir: &Path, entry: &CacheEntry) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Domain(format!("cache dir: {e}")))?;
    let text = serde_json::to_string_pretty(entry).expect("serialisable");
    std::fs::write(cache_path(dir, &entry.filter), text).map_err(|e| Error::Domain(format!("cache write: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(m: usize, flags: &[Flag]) -> usize {
        enumerate_classes(&EnumFilter::new(m, flags), &EnumOptions::default())
            .unwrap()
            .len()
    }

    #[test]
    fn known_counts() {
        let expected = [1, 2, 5, 11, 26, 68, 177, 497];
        for (i, &e) in expected.iter().enumerate() {
            assert_eq!(count(i + 1, &[]), e, "m={}", i + 1);
        }
    }

    #[test]
    fn c5_among_triangle_free_nonbipartite() {
        let f = EnumFilter::new(5, &[Flag::Connected, Flag::NonBipartite, Flag::C3Free]);
        let classes = enumerate_classes(&f, &EnumOptions::default()).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].graph.degree_sequence(), vec![2; 5]);
        let ex = extremal_rho(&f, &EnumOptions::default(), 1e-10).unwrap();
        assert_eq!(ex.result.root().cmp_f64(2.0), Ordering::Equal);
    }

    #[test]
    fn flags_parse() {
        let f = EnumFilter::parse(9, "c4+free, NonBipartite").unwrap();
        assert_eq!(f.flags(), &[Flag::C4PlusFree, Flag::NonBipartite]);
        assert!(EnumFilter::parse(9, "c7free").is_err());
        assert_eq!(f.key(), "m9-c4plusfree-nonbipartite");
    }

    #[test]
    fn limits() {
        let opts = EnumOptions::default();
        assert!(matches!(
            enumerate_classes(&EnumFilter::new(15, &[]), &opts),
            Err(Error::ResourceCap(_))
        ));
        assert!(matches!(
            enumerate_classes(
                &EnumFilter::new(21, &[]),
                &EnumOptions {
                    allow_large: true,
                    ..opts.clone()
                }
            ),
            Err(Error::ResourceCap(_))
        ));
        let empty = EnumFilter::new(3, &[Flag::C3Free, Flag::NonBipartite]);
        assert!(matches!(extremal_rho(&empty, &opts, 1e-9), Err(Error::EmptyFamily(_))));
    }
}
