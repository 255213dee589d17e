//! Canonical labeling by partition refinement and individualisation.
//!
//! Each connected component is labeled separately: starting from the unit
//! partition, cells are split by neighbour counts into the other cells until
//! stable, then the first smallest non-singleton cell is individualised
//! vertex by vertex. Every discrete partition gives a relabeled adjacency
//! matrix; the lexicographically least one is canonical. Automorphisms found
//! along the way (plus twin transpositions) prune sibling branches.
//! Components are then ordered by their canonical code.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;

pub const MAX_CANON_VERTICES: usize = 64;

/// Canonical graph6 certificate: equal iff the graphs are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalForm {
    pub cert: String,
}

#[derive(Clone, Debug)]
pub struct Canonical {
    pub form: CanonicalForm,
    /// `labeling[v]` is the canonical index of vertex `v`.
    pub labeling: Vec<usize>,
    /// Automorphisms of the input graph, as vertex maps. They generate a
    /// subgroup of the automorphism group (often all of it).
    pub generators: Vec<Vec<usize>>,
    /// The relabeled graph whose graph6 string is the certificate.
    pub graph: Graph,
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    Ok(canonicalize(g)?.form)
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    if a.n() != b.n() || a.m() != b.m() || a.degree_sequence() != b.degree_sequence() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

struct Search<'a> {
    rows: &'a [u64],
    n: usize,
    best: Option<(Vec<u64>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

#[inline]
fn bits(mut w: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if w == 0 {
            None
        } else {
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(b)
        }
    })
}

/// Refines an ordered partition (cells as bitmasks) to the coarsest
/// equitable one; split fragments are ordered by their count signature.
fn refine(rows: &[u64], cells: &mut Vec<u64>) {
    loop {
        let mut next: Vec<u64> = Vec::with_capacity(cells.len() + 4);
        let mut sigs: Vec<(Vec<u8>, usize)> = Vec::new();
        for &c in cells.iter() {
            if c.count_ones() == 1 {
                next.push(c);
                continue;
            }
            sigs.clear();
            for v in bits(c) {
                let sig: Vec<u8> = cells.iter().map(|&s| (rows[v] & s).count_ones() as u8).collect();
                sigs.push((sig, v));
            }
            sigs.sort_unstable();
            let mut cur = 0u64;
            for i in 0..sigs.len() {
                if i > 0 && sigs[i].0 != sigs[i - 1].0 {
                    next.push(cur);
                    cur = 0;
                }
                cur |= 1 << sigs[i].1;
            }
            next.push(cur);
        }
        let done = next.len() == cells.len();
        *cells = next;
        if done {
            return;
        }
    }
}

fn relabeled_rows(rows: &[u64], order: &[usize]) -> Vec<u64> {
    let mut pos = [0u8; 64];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i as u8;
    }
    order
        .iter()
        .map(|&v| bits(rows[v]).fold(0u64, |acc, w| acc | 1 << pos[w]))
        .collect()
}

fn find(uf: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while uf[r] != r {
        r = uf[r];
    }
    let mut y = x;
    while uf[y] != r {
        let nxt = uf[y];
        uf[y] = r;
        y = nxt;
    }
    r
}

impl<'a> Search<'a> {
    fn run(&mut self, cells: Vec<u64>, seq: &mut Vec<usize>) {
        if cells.len() == self.n {
            let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
            let code = relabeled_rows(self.rows, &order);
            match &self.best {
                None => self.best = Some((code, order)),
                Some((bc, border)) => match code.cmp(bc) {
                    Ordering::Less => self.best = Some((code, order)),
                    Ordering::Equal => {
                        let mut gamma = vec![0; self.n];
                        for (i, &v) in order.iter().enumerate() {
                            gamma[v] = border[i];
                        }
                        self.autos.push(gamma);
                    }
                    Ordering::Greater => {}
                },
            }
            return;
        }
        let target_idx = (0..cells.len())
            .filter(|&i| cells[i].count_ones() > 1)
            .min_by_key(|&i| (cells[i].count_ones(), i))
            .unwrap();
        let target = cells[target_idx];
        let mut explored: Vec<usize> = Vec::new();
        for v in bits(target) {
            if !explored.is_empty() && self.equivalent_to_explored(v, &explored, seq) {
                continue;
            }
            explored.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target_idx]);
            child.push(1 << v);
            child.push(target & !(1 << v));
            child.extend_from_slice(&cells[target_idx + 1..]);
            refine(self.rows, &mut child);
            seq.push(v);
            self.run(child, seq);
            seq.pop();
        }
    }

    fn equivalent_to_explored(&self, v: usize, explored: &[usize], seq: &[usize]) -> bool {
        let mut uf: Vec<usize> = (0..self.n).collect();
        let mut any = false;
        for g in &self.autos {
            if seq.iter().all(|&s| g[s] == s) {
                any = true;
                for x in 0..self.n {
                    let (a, b) = (find(&mut uf, x), find(&mut uf, g[x]));
                    if a != b {
                        uf[a] = b;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut uf, v);
        explored.iter().any(|&u| find(&mut uf, u) == rv)
    }
}

/// Twin transpositions: vertices with equal neighbourhoods apart from each
/// other can be swapped.
fn twin_autos(rows: &[u64]) -> Vec<Vec<usize>> {
    let n = rows.len();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let mask = !((1u64 << u) | (1u64 << v));
            if rows[u] & mask == rows[v] & mask {
                let mut g: Vec<usize> = (0..n).collect();
                g.swap(u, v);
                out.push(g);
                break;
            }
        }
    }
    out
}

struct ComponentCanon {
    code: Vec<u64>,
    /// canonical order: order[i] is the local vertex placed at index i
    order: Vec<usize>,
    autos: Vec<Vec<usize>>,
}

fn canon_connected(rows: &[u64]) -> ComponentCanon {
    let n = rows.len();
    if n == 1 {
        return ComponentCanon {
            code: vec![0],
            order: vec![0],
            autos: vec![],
        };
    }
    let mut s = Search {
        rows,
        n,
        best: None,
        autos: twin_autos(rows),
    };
    let mut cells = vec![if n == 64 { u64::MAX } else { (1u64 << n) - 1 }];
    refine(rows, &mut cells);
    s.run(cells, &mut Vec::new());
    let (code, order) = s.best.expect("search reaches a leaf");
    ComponentCanon {
        code,
        order,
        autos: s.autos,
    }
}

pub fn canonicalize(g: &Graph) -> Result<Canonical> {
    let n = g.n();
    if n > MAX_CANON_VERTICES {
        return Err(Error::ResourceCap(format!(
            "canonical labeling supports at most {MAX_CANON_VERTICES} vertices, got {n}"
        )));
    }
    let comps = g.components();
    let mut parts: Vec<(Vec<usize>, ComponentCanon)> = comps
        .into_iter()
        .map(|comp| {
            let mut local = [0usize; 64];
            for (i, &v) in comp.iter().enumerate() {
                local[v] = i;
            }
            let rows: Vec<u64> = comp
                .iter()
                .map(|&v| bits(g.row64(v)).fold(0u64, |acc, w| acc | 1 << local[w]))
                .collect();
            let c = canon_connected(&rows);
            (comp, c)
        })
        .collect();
    // larger components first, then by code
    parts.sort_by(|a, b| {
        b.1.code
            .len()
            .cmp(&a.1.code.len())
            .then_with(|| a.1.code.cmp(&b.1.code))
    });

    let mut labeling = vec![0usize; n];
    let mut generators = Vec::new();
    let mut offset = 0;
    let mut canon = Graph::new(n);
    for (idx, (comp, c)) in parts.iter().enumerate() {
        for (i, &lv) in c.order.iter().enumerate() {
            labeling[comp[lv]] = offset + i;
        }
        for (i, &row) in c.code.iter().enumerate() {
            for j in bits(row) {
                if i < j {
                    canon.add_edge(offset + i, offset + j).expect("in range");
                }
            }
        }
        for a in &c.autos {
            let mut gen: Vec<usize> = (0..n).collect();
            for (lv, &img) in a.iter().enumerate() {
                gen[comp[lv]] = comp[img];
            }
            generators.push(gen);
        }
        if idx > 0 && parts[idx - 1].1.code == c.code {
            // swap this component with the previous identical one
            let (pcomp, pc) = &parts[idx - 1];
            let mut gen: Vec<usize> = (0..n).collect();
            for i in 0..c.order.len() {
                let a = pcomp[pc.order[i]];
                let b = comp[c.order[i]];
                gen[a] = b;
                gen[b] = a;
            }
            generators.push(gen);
        }
        offset += c.order.len();
    }
    Ok(Canonical {
        form: CanonicalForm {
            cert: graph6::encode(&canon),
        },
        labeling,
        generators,
        graph: canon,
    })
}

/// Orbits of the group generated by `gens` on `0..n`, as a representative
/// map (smallest element of each orbit).
pub fn orbit_representatives(n: usize, gens: &[Vec<usize>]) -> Vec<usize> {
    let mut uf: Vec<usize> = (0..n).collect();
    for g in gens {
        for x in 0..n {
            let (a, b) = (find(&mut uf, x), find(&mut uf, g[x]));
            if a != b {
                uf[a.max(b)] = a.min(b);
            }
        }
    }
    (0..n).map(|x| find(&mut uf, x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilySpec;

    fn is_automorphism(g: &Graph, p: &[usize]) -> bool {
        g.edges().all(|(u, v)| g.has_edge(p[u], p[v]))
    }

    #[test]
    fn relabel_invariance() {
        let g = FamilySpec::G14(3, 2).build().unwrap();
        let perm = [6, 3, 0, 5, 1, 2, 4];
        let h = g.relabel(&perm);
        assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
    }

    #[test]
    fn g14_t1_is_s62_minus() {
        let a = FamilySpec::G14(3, 1).build().unwrap();
        let b = FamilySpec::SnKMinus(6, 2).build().unwrap();
        assert!(is_isomorphic(&a, &b).unwrap());
        let c = FamilySpec::G14(2, 3).build().unwrap();
        assert!(!is_isomorphic(&a, &c).unwrap());
    }

    #[test]
    fn generators_are_automorphisms() {
        for spec in [
            FamilySpec::Cycle(8),
            FamilySpec::CompleteBipartite(3, 4),
            FamilySpec::G14(4, 3),
            FamilySpec::SK2(4),
        ] {
            let g = spec.build().unwrap();
            let c = canonicalize(&g).unwrap();
            assert!(!c.generators.is_empty());
            for gen in &c.generators {
                assert!(is_automorphism(&g, gen), "{spec}");
            }
            let mut inv = vec![0; g.n()];
            for (v, &i) in c.labeling.iter().enumerate() {
                inv[i] = v;
            }
            assert_eq!(g.relabel(&inv), c.graph);
        }
    }

    #[test]
    fn disjoint_copies() {
        let g = Graph::from_edges(8, &[(0, 1), (2, 3), (4, 5), (6, 7)]).unwrap();
        let c = canonicalize(&g).unwrap();
        let reps = orbit_representatives(8, &c.generators);
        assert!(reps.iter().all(|&r| r == 0));
        let h = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4), (4, 5), (5, 3)]).unwrap();
        let h2 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5)]).unwrap();
        assert_eq!(canonical_form(&h).unwrap(), canonical_form(&h2).unwrap());
    }
}
