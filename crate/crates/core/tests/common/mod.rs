#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use spectral_turan::Graph;

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    heap(n, &mut p, &mut out);
    out
}

fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..k - 1 {
        heap(k - 1, p, out);
        if k.is_multiple_of(2) {
            p.swap(i, k - 1);
        } else {
            p.swap(0, k - 1);
        }
    }
    heap(k - 1, p, out);
}

/// Smallest sorted edge list over all relabelings.
pub fn brute_canonical(g: &Graph, perms: &[Vec<usize>]) -> Vec<(usize, usize)> {
    perms
        .iter()
        .map(|p| {
            let mut e: Vec<(usize, usize)> = g
                .edges()
                .map(|(a, b)| {
                    let (x, y) = (p[a], p[b]);
                    (x.min(y), x.max(y))
                })
                .collect();
            e.sort_unstable();
            e
        })
        .min()
        .unwrap_or_default()
}

pub fn brute_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.m() == b.m() && {
        let perms = permutations(a.n());
        brute_canonical(a, &perms) == brute_canonical(b, &perms)
    }
}

/// Connected classes with 1..=max edges, grown one edge at a time and
/// deduplicated by brute-force relabeling.
pub fn connected_classes(max: usize) -> Vec<usize> {
    let perms: Vec<Vec<Vec<usize>>> = (0..=max + 1).map(permutations).collect();
    let mut level: Vec<Graph> = vec![Graph::from_edges(2, &[(0, 1)]).unwrap()];
    let mut counts = vec![0, 1];
    for _ in 2..=max {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for g in &level {
            let n = g.n();
            let mut candidates = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if !g.has_edge(u, v) {
                        candidates.push(g.clone().with_edge(u, v).unwrap());
                    }
                }
                candidates.push(g.grow(1).with_edge(u, n).unwrap());
            }
            for h in candidates {
                if seen.insert((h.n(), brute_canonical(&h, &perms[h.n()]))) {
                    next.push(h);
                }
            }
        }
        counts.push(next.len());
        level = next;
    }
    counts
}

/// Multisets of connected classes with total size `m` (Euler transform).
pub fn euler_transform(connected: &[usize], m: usize) -> usize {
    let mut ways = vec![0usize; m + 1];
    ways[0] = 1;
    for (k, &c) in connected.iter().enumerate().skip(1) {
        // c classes of size k, each usable any number of times
        for _ in 0..c {
            for total in k..=m {
                ways[total] += ways[total - k];
            }
        }
    }
    ways[m]
}

/// A random spanning tree on `n` vertices plus each other pair with
/// probability `p`.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for v in 1..n {
        let parent = rng.gen_range(0..v);
        g.add_edge(parent, v).unwrap();
    }
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) && rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}
