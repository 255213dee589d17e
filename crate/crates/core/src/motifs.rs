//! Subgraph (not induced) detection of the forbidden motifs `C_3`, `C_4`,
//! `C_t` and `C_t^+`, and the shape classifier for components of `G[N(u)]`
//! in `C_5^+`-free graphs.

use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MotifKind {
    C3,
    C4,
    Ct(usize),
    CtPlus(usize),
}

impl fmt::Display for MotifKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MotifKind::C3 => write!(f, "C3"),
            MotifKind::C4 => write!(f, "C4"),
            MotifKind::Ct(t) => write!(f, "C{t}"),
            MotifKind::CtPlus(t) => write!(f, "C{t}+"),
        }
    }
}

impl Serialize for MotifKind {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for MotifKind {
    type Err = Error;

    /// `c3`, `c4`, `c<t>`, `c<t>+`, `ct:<t>` or `ct+:<t>`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let key = s.trim().to_ascii_lowercase().replace("plus", "+");
        let bad = || Error::Domain(format!("unknown motif {s:?}"));
        let (digits, plus) = if let Some(rest) = key.strip_prefix("ct+:") {
            (rest.to_string(), true)
        } else if let Some(rest) = key.strip_prefix("ct:") {
            (rest.to_string(), false)
        } else if let Some(rest) = key.strip_prefix('c') {
            match rest.strip_suffix('+') {
                Some(r) => (r.to_string(), true),
                None => (rest.to_string(), false),
            }
        } else {
            return Err(bad());
        };
        let t: usize = digits.parse().map_err(|_| bad())?;
        if t < 3 {
            return Err(bad());
        }
        Ok(match (t, plus) {
            (3, false) => MotifKind::C3,
            (4, false) => MotifKind::C4,
            (t, false) => MotifKind::Ct(t),
            (t, true) => MotifKind::CtPlus(t),
        })
    }
}

impl MotifKind {
    pub fn cycle_length(&self) -> usize {
        match *self {
            MotifKind::C3 => 3,
            MotifKind::C4 => 4,
            MotifKind::Ct(t) | MotifKind::CtPlus(t) => t,
        }
    }

    /// Does `g` contain this motif as a subgraph?
    pub fn find(&self, g: &Graph) -> Option<MotifWitness> {
        match *self {
            MotifKind::C3 => contains_cycle(g, 3),
            MotifKind::C4 => contains_cycle(g, 4),
            MotifKind::Ct(t) => contains_cycle(g, t),
            MotifKind::CtPlus(t) => contains_ct_plus(g, t),
        }
    }

    /// `C4`-containing motifs: `C4` itself and `C_4^+`.
    pub fn contains_c4(&self) -> bool {
        matches!(self, MotifKind::C4 | MotifKind::Ct(4) | MotifKind::CtPlus(4))
    }
}

/// Witness vertices: the cycle in order, followed by the apex for `C_t^+`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MotifWitness {
    pub kind: MotifKind,
    pub vertices: Vec<usize>,
}

impl MotifWitness {
    /// Re-checks the witness by direct adjacency lookups.
    pub fn verify(&self, g: &Graph) -> bool {
        let t = self.kind.cycle_length();
        let plus = matches!(self.kind, MotifKind::CtPlus(_));
        let expected = if plus { t + 1 } else { t };
        if self.vertices.len() != expected || t < 3 {
            return false;
        }
        let mut sorted = self.vertices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != expected || sorted.last().is_some_and(|&v| v >= g.n()) {
            return false;
        }
        let cyc = &self.vertices[..t];
        let closed = (0..t).all(|i| g.has_edge(cyc[i], cyc[(i + 1) % t]));
        if !closed {
            return false;
        }
        if plus {
            let apex = self.vertices[t];
            return (0..t).any(|i| g.has_edge(apex, cyc[i]) && g.has_edge(apex, cyc[(i + 1) % t]));
        }
        true
    }
}

#[inline]
fn common_words<'a>(a: &'a [u64], b: &'a [u64]) -> impl Iterator<Item = u64> + 'a {
    a.iter().zip(b).map(|(x, y)| x & y)
}

fn first_bit(words: impl Iterator<Item = u64>, skip: &[usize]) -> Option<usize> {
    for (i, mut w) in words.enumerate() {
        for &s in skip {
            if s / 64 == i {
                w &= !(1u64 << (s % 64));
            }
        }
        if w != 0 {
            return Some(i * 64 + w.trailing_zeros() as usize);
        }
    }
    None
}

fn find_triangle(g: &Graph) -> Option<Vec<usize>> {
    for (u, v) in g.edges() {
        if let Some(w) = first_bit(common_words(g.row(u), g.row(v)), &[]) {
            return Some(vec![u, v, w]);
        }
    }
    None
}

fn find_c4(g: &Graph) -> Option<Vec<usize>> {
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            let common: Vec<u64> = common_words(g.row(u), g.row(v)).collect();
            let c: u32 = common.iter().map(|w| w.count_ones()).sum();
            if c >= 2 {
                let a = first_bit(common.iter().copied(), &[]).unwrap();
                let b = first_bit(common.iter().copied(), &[a]).unwrap();
                return Some(vec![u, a, v, b]);
            }
        }
    }
    None
}

/// Calls `f` on every cycle of length exactly `t` once, as a vertex sequence
/// starting at its smallest vertex with `seq[1] < seq[t-1]`.
pub fn for_each_cycle<F>(g: &Graph, t: usize, mut f: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = g.n();
    if t < 3 || t > n {
        return ControlFlow::Continue(());
    }
    let adj = g.adjacency_lists();
    let mut path = Vec::with_capacity(t);
    let mut on_path = vec![false; n];
    let mut dist = vec![usize::MAX; n];
    for s in 0..n {
        if adj[s].len() < 2 {
            continue;
        }
        // distances from s inside {v >= s}
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[s] = 0;
        let mut queue = vec![s];
        let mut qi = 0;
        while qi < queue.len() {
            let x = queue[qi];
            qi += 1;
            for &y in &adj[x] {
                if y > s && dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push(y);
                }
            }
        }
        path.clear();
        path.push(s);
        on_path[s] = true;
        let flow = extend(&adj, t, s, &mut path, &mut on_path, &dist, &mut f);
        on_path[s] = false;
        flow?;
    }
    ControlFlow::Continue(())
}

fn extend<F>(
    adj: &[Vec<usize>],
    t: usize,
    s: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    dist: &[usize],
    f: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let x = *path.last().unwrap();
    let k = path.len();
    if k == t {
        if path[1] < path[t - 1] && adj[x].contains(&s) {
            return f(path);
        }
        return ControlFlow::Continue(());
    }
    for &y in &adj[x] {
        if y <= s || on_path[y] {
            continue;
        }
        // after y there are t-k-1 more vertices, then the closing edge
        if dist[y] > t - k {
            continue;
        }
        path.push(y);
        on_path[y] = true;
        let flow = extend(adj, t, s, path, on_path, dist, f);
        on_path[y] = false;
        path.pop();
        flow?;
    }
    ControlFlow::Continue(())
}

pub fn contains_cycle(g: &Graph, t: usize) -> Option<MotifWitness> {
    let vertices = match t {
        3 => find_triangle(g),
        4 => find_c4(g),
        _ => {
            let mut found = None;
            let _ = for_each_cycle(g, t, |c| {
                found = Some(c.to_vec());
                ControlFlow::Break(())
            });
            found
        }
    }?;
    let kind = match t {
        3 => MotifKind::C3,
        4 => MotifKind::C4,
        _ => MotifKind::Ct(t),
    };
    Some(MotifWitness { kind, vertices })
}

/// A `t`-cycle plus an apex off the cycle adjacent to two consecutive cycle
/// vertices.
pub fn contains_ct_plus(g: &Graph, t: usize) -> Option<MotifWitness> {
    if t < 3 || t + 1 > g.n() || g.m() < t + 2 {
        return None;
    }
    let mut found = None;
    let _ = for_each_cycle(g, t, |c| {
        for i in 0..t {
            let (a, b) = (c[i], c[(i + 1) % t]);
            if let Some(apex) = first_bit(common_words(g.row(a), g.row(b)), c) {
                let mut v = c.to_vec();
                v.push(apex);
                found = Some(v);
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    found.map(|vertices| MotifWitness {
        kind: MotifKind::CtPlus(t),
        vertices,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SpanningKind {
    C4,
    C3Plus,
    K4,
}

/// Shape of a component `L` of `G[N(u)]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ComponentClass {
    /// `K_{1,r}`; `r = 0` is a single vertex.
    Star(usize),
    /// Two adjacent centres carrying `a <= b` leaves, `a, b >= 1`.
    DoubleStar(usize, usize),
    /// `S_{r+1}^1`: `K_{1,r}` plus one edge between leaves, `r >= 2`.
    S1(usize),
    C4Spanning(SpanningKind),
    Other,
}

fn classify(h: &Graph) -> ComponentClass {
    let k = h.n();
    let e = h.m();
    if k == 1 {
        return ComponentClass::Star(0);
    }
    let degs: Vec<usize> = (0..k).map(|v| h.degree(v)).collect();
    let has_dominating = degs.iter().any(|&d| d == k - 1);
    if e + 1 == k {
        if has_dominating {
            return ComponentClass::Star(k - 1);
        }
        let inner: Vec<usize> = (0..k).filter(|&v| degs[v] > 1).collect();
        if inner.len() == 2 && h.has_edge(inner[0], inner[1]) {
            let a = degs[inner[0]] - 1;
            let b = degs[inner[1]] - 1;
            return ComponentClass::DoubleStar(a.min(b), a.max(b));
        }
        return ComponentClass::Other;
    }
    if e == k && k >= 3 && has_dominating {
        return ComponentClass::S1(k - 1);
    }
    if k == 4 {
        match e {
            4 if degs.iter().all(|&d| d == 2) => {
                return ComponentClass::C4Spanning(SpanningKind::C4)
            }
            5 => return ComponentClass::C4Spanning(SpanningKind::C3Plus),
            6 => return ComponentClass::C4Spanning(SpanningKind::K4),
            _ => {}
        }
    }
    ComponentClass::Other
}

/// Every component of `G[N(u)]` with its class; components are listed by
/// smallest vertex.
pub fn classify_neighborhood_components(g: &Graph, u: usize) -> Vec<(Vec<usize>, ComponentClass)> {
    let nbrs: Vec<usize> = g.neighbor_iter(u).collect();
    let h = g.induced(&nbrs);
    h.components()
        .into_iter()
        .map(|comp| {
            let class = classify(&h.induced(&comp));
            (comp.into_iter().map(|i| nbrs[i]).collect(), class)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn wheel(rim: usize) -> Graph {
        let mut g = cycle(rim).grow(1);
        for i in 0..rim {
            g.add_edge(rim, i).unwrap();
        }
        g
    }

    fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    #[test]
    fn cycle_examples() {
        let w = contains_cycle(&complete(4), 3).unwrap();
        assert!(w.verify(&complete(4)));
        assert!(contains_cycle(&cycle(6), 4).is_none());
        assert!(contains_cycle(&cycle(6), 3).is_none());
        let c6 = contains_cycle(&cycle(6), 6).unwrap();
        assert!(c6.verify(&cycle(6)));
        assert!(contains_cycle(&cycle(6), 7).is_none());
        assert!(contains_cycle(&cycle(5), 2).is_none());
    }

    #[test]
    fn ct_plus_examples() {
        let diamond = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 3)]).unwrap();
        let w = contains_ct_plus(&diamond, 3).unwrap();
        assert!(w.verify(&diamond));
        let w5 = wheel(5);
        let w = contains_ct_plus(&w5, 5).unwrap();
        assert!(w.verify(&w5));
        assert!(contains_ct_plus(&cycle(5), 5).is_none());
        // house = C4^+
        let house = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4)]).unwrap();
        assert!(contains_ct_plus(&house, 4).is_some());
        assert!(contains_ct_plus(&house, 5).is_none());
    }

    #[test]
    fn bogus_witness_rejected() {
        let g = cycle(5);
        let w = MotifWitness {
            kind: MotifKind::C4,
            vertices: vec![0, 1, 2, 3],
        };
        assert!(!w.verify(&g));
        let w = MotifWitness {
            kind: MotifKind::C3,
            vertices: vec![0, 0, 1],
        };
        assert!(!w.verify(&g));
    }

    #[test]
    fn classifier_examples() {
        let w4 = wheel(4);
        let cls = classify_neighborhood_components(&w4, 4);
        assert_eq!(cls.len(), 1);
        assert_eq!(cls[0].1, ComponentClass::C4Spanning(SpanningKind::C4));

        let diamond = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 3)]).unwrap();
        let mut hub = diamond.grow(1);
        for i in 0..4 {
            hub.add_edge(4, i).unwrap();
        }
        assert_eq!(
            classify_neighborhood_components(&hub, 4)[0].1,
            ComponentClass::C4Spanning(SpanningKind::C3Plus)
        );

        let mut k5 = complete(5);
        assert_eq!(
            classify_neighborhood_components(&k5, 4)[0].1,
            ComponentClass::C4Spanning(SpanningKind::K4)
        );
        k5.remove_edge(0, 1).unwrap();
        k5.remove_edge(2, 3).unwrap();
        // N(4) induces C4 0-2-1-3
        assert_eq!(
            classify_neighborhood_components(&k5, 4)[0].1,
            ComponentClass::C4Spanning(SpanningKind::C4)
        );
    }

    #[test]
    fn classifier_trees_and_unicyclic() {
        // hub 0 over path 1-2-3-4 (P4 = D_{1,1})
        let mut g = Graph::from_edges(5, &[(1, 2), (2, 3), (3, 4)]).unwrap();
        for i in 1..5 {
            g.add_edge(0, i).unwrap();
        }
        assert_eq!(
            classify_neighborhood_components(&g, 0)[0].1,
            ComponentClass::DoubleStar(1, 1)
        );
        // hub over triangle: S_3^1
        let mut t = Graph::from_edges(4, &[(1, 2), (2, 3), (3, 1)]).unwrap();
        for i in 1..4 {
            t.add_edge(0, i).unwrap();
        }
        assert_eq!(classify_neighborhood_components(&t, 0)[0].1, ComponentClass::S1(2));
        // hub over a single edge is Star(1), not a degenerate double star
        let e = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(classify_neighborhood_components(&e, 0)[0].1, ComponentClass::Star(1));
        // hub over P5 is none of the shapes
        let mut p = Graph::from_edges(6, &[(1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        for i in 1..6 {
            p.add_edge(0, i).unwrap();
        }
        assert_eq!(classify_neighborhood_components(&p, 0)[0].1, ComponentClass::Other);
        assert!(contains_ct_plus(&p, 5).is_some());
    }
}
