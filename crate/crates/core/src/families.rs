//! Constructors for the named graphs. Labels are hub-first: centres and
//! dominating vertices come first, then structured vertices, then pendants.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    /// `K_{1,n}`.
    Star(usize),
    CompleteBipartite(usize, usize),
    /// `S_n^k`: `K_{1,n-1}` plus `k` disjoint edges among the leaves.
    Snk(usize, usize),
    /// `S_{n,k}`: `K_k` joined to `n - k` isolated vertices.
    SnK(usize, usize),
    /// `S_{n,k}^-`: `S_{n,k}` minus one edge at a degree-two vertex.
    SnKMinus(usize, usize),
    CtPlus(usize),
    /// `SK_{2,h}`: `K_{2,h}` with one edge subdivided.
    SK2(usize),
    /// `C_5 • K_{1,m-5}`.
    C5StarDot(usize),
    /// `S_m^e`: a pendant hung on a pendant of `K_{1,m-1}`.
    SmE(usize),
    G10(usize),
    G11(usize),
    G12(usize),
    G14(usize, usize),
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FamilySpec::*;
        match *self {
            Path(n) => write!(f, "Path({n})"),
            Cycle(n) => write!(f, "Cycle({n})"),
            Star(n) => write!(f, "Star({n})"),
            CompleteBipartite(a, b) => write!(f, "CompleteBipartite({a},{b})"),
            Snk(n, k) => write!(f, "Snk({n},{k})"),
            SnK(n, k) => write!(f, "Sn_k({n},{k})"),
            SnKMinus(n, k) => write!(f, "Sn_k_minus({n},{k})"),
            CtPlus(t) => write!(f, "CtPlus({t})"),
            SK2(h) => write!(f, "SK2({h})"),
            C5StarDot(m) => write!(f, "C5StarDot({m})"),
            SmE(m) => write!(f, "SmE({m})"),
            G10(m) => write!(f, "G10({m})"),
            G11(m) => write!(f, "G11({m})"),
            G12(m) => write!(f, "G12({m})"),
            G14(r, t) => write!(f, "G14({r},{t})"),
        }
    }
}

/// Family names accepted by [`FamilySpec::from_name`], with the parameters
/// each one reads.
pub const FAMILY_NAMES: &[(&str, &[&str])] = &[
    ("Path", &["n"]),
    ("Cycle", &["n"]),
    ("Star", &["n"]),
    ("CompleteBipartite", &["a", "b"]),
    ("Snk", &["n", "k"]),
    ("Sn_k", &["n", "k"]),
    ("Sn_k_minus", &["n", "k"]),
    ("CtPlus", &["t"]),
    ("SK2", &["h"]),
    ("C5StarDot", &["m"]),
    ("SmE", &["m"]),
    ("G10", &["m"]),
    ("G11", &["m"]),
    ("G12", &["m"]),
    ("G14", &["r", "t"]),
];

fn fail(spec: &FamilySpec, constraint: impl Into<String>) -> Error {
    Error::Construction {
        family: spec.to_string(),
        constraint: constraint.into(),
    }
}

fn require(spec: &FamilySpec, ok: bool, constraint: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(fail(spec, constraint))
    }
}

impl FamilySpec {
    /// Looks a family up by name; `param` returns the named integer
    /// parameter if it was supplied.
    pub fn from_name(name: &str, param: impl Fn(&str) -> Option<usize>) -> Result<Self> {
        let (canonical, keys) = FAMILY_NAMES
            .iter()
            .find(|(n, _)| n.eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::Domain(format!("unknown family {name:?}")))?;
        let mut vals = Vec::new();
        for key in keys.iter() {
            vals.push(param(key).ok_or_else(|| {
                Error::Domain(format!("family {canonical} needs parameter --{key}"))
            })?);
        }
        use FamilySpec::*;
        Ok(match *canonical {
            "Path" => Path(vals[0]),
            "Cycle" => Cycle(vals[0]),
            "Star" => Star(vals[0]),
            "CompleteBipartite" => CompleteBipartite(vals[0], vals[1]),
            "Snk" => Snk(vals[0], vals[1]),
            "Sn_k" => SnK(vals[0], vals[1]),
            "Sn_k_minus" => SnKMinus(vals[0], vals[1]),
            "CtPlus" => CtPlus(vals[0]),
            "SK2" => SK2(vals[0]),
            "C5StarDot" => C5StarDot(vals[0]),
            "SmE" => SmE(vals[0]),
            "G10" => G10(vals[0]),
            "G11" => G11(vals[0]),
            "G12" => G12(vals[0]),
            "G14" => G14(vals[0], vals[1]),
            _ => unreachable!(),
        })
    }

    /// Closed-form edge count, once the parameters are known to be valid.
    pub fn expected_edges(&self) -> usize {
        use FamilySpec::*;
        match *self {
            Path(n) => n.saturating_sub(1),
            Cycle(n) => n,
            Star(n) => n,
            CompleteBipartite(a, b) => a * b,
            Snk(n, k) => n - 1 + k,
            SnK(n, k) => k * (k - 1) / 2 + k * (n - k),
            SnKMinus(n, k) => k * (k - 1) / 2 + k * (n - k) - 1,
            CtPlus(t) => t + 2,
            SK2(h) => 2 * h + 1,
            C5StarDot(m) | SmE(m) | G10(m) | G11(m) | G12(m) => m,
            G14(r, t) => 2 * r + t + 1,
        }
    }

    pub fn build(&self) -> Result<Graph> {
        use FamilySpec::*;
        let spec = self;
        let g = match *self {
            Path(n) => {
                require(spec, n >= 1, "n >= 1")?;
                let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
                Graph::from_edges(n, &edges)?
            }
            Cycle(n) => {
                require(spec, n >= 3, "n >= 3")?;
                let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
                Graph::from_edges(n, &edges)?
            }
            Star(n) => {
                require(spec, n >= 1, "n >= 1")?;
                let edges: Vec<_> = (1..=n).map(|i| (0, i)).collect();
                Graph::from_edges(n + 1, &edges)?
            }
            CompleteBipartite(a, b) => {
                require(spec, a >= 1 && b >= 1, "a >= 1 and b >= 1")?;
                let mut edges = Vec::with_capacity(a * b);
                for i in 0..a {
                    for j in 0..b {
                        edges.push((i, a + j));
                    }
                }
                Graph::from_edges(a + b, &edges)?
            }
            Snk(n, k) => {
                require(spec, n >= 2, "n >= 2")?;
                require(spec, 2 * k < n, "2k <= n - 1")?;
                let mut edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
                edges.extend((0..k).map(|i| (2 * i + 1, 2 * i + 2)));
                Graph::from_edges(n, &edges)?
            }
            SnK(n, k) => {
                require(spec, k >= 1, "k >= 1")?;
                require(spec, k <= n, "k <= n")?;
                Graph::from_edges(n, &join_edges(n, k))?
            }
            SnKMinus(n, k) => {
                // outer vertices have degree k and clique vertices degree
                // n - 1, so a degree-two vertex with n >= k + 2 forces k = 2
                require(spec, k == 2, "a degree-two vertex requires k = 2")?;
                require(spec, n >= k + 2, "n >= k + 2")?;
                // the pendant keeps its edge to vertex 0 and sits last
                let mut edges = join_edges(n, k);
                edges.retain(|&e| e != (1, n - 1));
                Graph::from_edges(n, &edges)?
            }
            CtPlus(t) => {
                require(spec, t >= 3, "t >= 3")?;
                let mut edges: Vec<_> = (0..t).map(|i| (i, (i + 1) % t)).collect();
                edges.push((0, t));
                edges.push((1, t));
                Graph::from_edges(t + 1, &edges)?
            }
            SK2(h) => {
                require(spec, h >= 1, "h >= 1")?;
                // hubs 0 and 1, others 2..h+1; the edge 0-(h+1) is
                // subdivided by vertex h+2
                let mut edges = Vec::new();
                for j in 2..h + 2 {
                    if j != h + 1 {
                        edges.push((0, j));
                    }
                    edges.push((1, j));
                }
                edges.push((0, h + 2));
                edges.push((h + 1, h + 2));
                Graph::from_edges(h + 3, &edges)?
            }
            C5StarDot(m) => {
                require(spec, m >= 6, "m >= 6")?;
                let mut edges: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
                edges.extend((5..m).map(|i| (0, i)));
                Graph::from_edges(m, &edges)?
            }
            SmE(m) => {
                require(spec, m >= 3, "m >= 3")?;
                let mut edges: Vec<_> = (1..m).map(|i| (0, i)).collect();
                edges.push((1, m));
                Graph::from_edges(m + 1, &edges)?
            }
            G10(m) => {
                require(spec, m >= 6, "m >= 6")?;
                // centre 0, u1 = 1, u2 = 2, other leaves, pendant w1 on u1
                let mut edges: Vec<_> = (1..m - 1).map(|i| (0, i)).collect();
                edges.push((1, 2));
                edges.push((1, m - 1));
                Graph::from_edges(m, &edges)?
            }
            G11(m) | G12(m) => {
                require(spec, m >= 7, "m >= 7")?;
                return crate::reconstruct::build(spec);
            }
            G14(r, t) => {
                require(spec, r >= 1, "r >= 1")?;
                require(spec, t >= 1, "t >= 1")?;
                // u* = 0, star centre 1, r common leaves, t pendants on u*
                let mut edges = vec![(0, 1)];
                for j in 2..r + 2 {
                    edges.push((0, j));
                    edges.push((1, j));
                }
                edges.extend((r + 2..r + 2 + t).map(|j| (0, j)));
                Graph::from_edges(r + t + 2, &edges)?
            }
        };
        debug_assert_eq!(g.m(), self.expected_edges());
        Ok(g)
    }
}

fn join_edges(n: usize, k: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..k {
        for j in i + 1..n {
            edges.push((i, j));
        }
    }
    edges
}

pub fn build(spec: FamilySpec) -> Result<Graph> {
    spec.build()
}

pub fn build_g10(m: usize) -> Result<Graph> {
    FamilySpec::G10(m).build()
}

pub fn build_c5_dot_star(m: usize) -> Result<Graph> {
    FamilySpec::C5StarDot(m).build()
}
