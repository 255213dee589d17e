//! Spectral radius with a certified enclosure, Perron vectors, exact
//! characteristic polynomials, equitable quotients and edge rotation.
//!
//! The certificate for `ρ` of a component is the characteristic polynomial
//! of the quotient of its coarsest equitable partition: the Perron vector is
//! constant on the cells, so `ρ` is the largest root of that polynomial.

mod charpoly;
mod partition;

use std::cmp::Ordering;

use serde::Serialize;

use crate::algebraic::CertifiedRoot;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::poly::IntPoly;

pub use charpoly::{char_poly, matrix_char_poly};
pub use partition::{equitable_partition, QuotientMatrix};

pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Clone, Debug, Serialize)]
pub struct SpectralResult {
    pub rho: f64,
    pub bracket: [f64; 2],
    /// Unit 2-norm, supported on `component`.
    pub perron: Vec<f64>,
    pub ustar: usize,
    pub component: Vec<usize>,
    /// Polynomial whose largest root is `rho`.
    pub certificate: IntPoly,
    #[serde(skip)]
    root: CertifiedRoot,
}

impl SpectralResult {
    pub fn root(&self) -> &CertifiedRoot {
        &self.root
    }

    /// Exact comparison of the two spectral radii.
    pub fn cmp_rho(&self, other: &Self) -> Ordering {
        self.root.cmp_root(&other.root)
    }

    /// `‖A x − ρ x‖_∞` for the stored Perron vector.
    pub fn residual(&self, g: &Graph) -> f64 {
        perron_residual(g, &self.perron, self.rho)
    }
}

pub fn perron_residual(g: &Graph, x: &[f64], rho: f64) -> f64 {
    (0..g.n())
        .map(|v| {
            let ax: f64 = g.neighbor_iter(v).map(|w| x[w]).sum();
            (ax - rho * x[v]).abs()
        })
        .fold(0.0, f64::max)
}

/// Power iteration from the all-ones vector; switches to `A + I` when the
/// gap between the bounds stalls (period-two behaviour on bipartite
/// components). Returns the Rayleigh quotient (a lower bound on `ρ`) and the
/// Collatz–Wielandt maximum ratio (an upper bound).
fn power_bounds(adj: &[Vec<usize>], comp: &[usize], max_iter: usize, rel: f64) -> (f64, f64) {
    if comp.len() == 1 {
        return (0.0, 0.0);
    }
    let mut x: Vec<f64> = vec![1.0; comp.len()];
    let mut local = vec![usize::MAX; adj.len()];
    for (i, &v) in comp.iter().enumerate() {
        local[v] = i;
    }
    let ladj: Vec<Vec<usize>> = comp
        .iter()
        .map(|&v| adj[v].iter().map(|&w| local[w]).collect())
        .collect();
    let mut shift = 0.0;
    let mut checkpoint = f64::INFINITY;
    let mut lo = 0.0f64;
    let mut hi = f64::INFINITY;
    for iter in 1..=max_iter {
        let ax: Vec<f64> = ladj.iter().map(|ns| ns.iter().map(|&w| x[w]).sum()).collect();
        let xx: f64 = x.iter().map(|a| a * a).sum();
        let rq = x.iter().zip(&ax).map(|(a, b)| a * b).sum::<f64>() / xx;
        let cw = ax
            .iter()
            .zip(&x)
            .map(|(a, b)| if *b > 0.0 { a / b } else { f64::INFINITY })
            .fold(0.0, f64::max);
        lo = lo.max(rq);
        hi = hi.min(cw);
        let gap = hi - lo;
        if gap <= rel * hi.max(1.0) {
            break;
        }
        if iter % 32 == 0 {
            if shift == 0.0 && gap > 0.9 * checkpoint {
                shift = 1.0;
            }
            checkpoint = gap;
        }
        let y: Vec<f64> = ax.iter().zip(&x).map(|(a, b)| a + shift * b).collect();
        let norm = y.iter().fold(0.0f64, |a, &b| a.max(b));
        x = y.into_iter().map(|v| v / norm).collect();
    }
    (lo, hi)
}

/// Floating-point enclosure of `ρ(g)` from power iteration (up to rounding
/// error). Cheap screening before certified comparison.
pub fn rho_bounds(g: &Graph) -> (f64, f64) {
    let adj = g.adjacency_lists();
    g.components()
        .iter()
        .map(|c| power_bounds(&adj, c, 2000, 1e-12))
        .fold((0.0, 0.0), |(a, b), (c, d)| (a.max(c), b.max(d)))
}

/// Solves `M y = b` by Gaussian elimination with partial pivoting.
fn solve(mut m: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        m.swap(col, piv);
        b.swap(col, piv);
        let mut p = m[col][col];
        if p == 0.0 {
            p = f64::MIN_POSITIVE;
            m[col][col] = p;
        }
        for r in col + 1..n {
            let f = m[r][col] / p;
            if f == 0.0 {
                continue;
            }
            for c in col..n {
                m[r][c] -= f * m[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut y = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| m[r][c] * y[c]).sum();
        y[r] = (b[r] - s) / m[r][r];
    }
    y
}

/// Perron vector of a connected component by inverse iteration at `rho`.
fn perron_vector(adj: &[Vec<usize>], comp: &[usize], rho: f64) -> Vec<f64> {
    let k = comp.len();
    if k == 1 {
        return vec![1.0];
    }
    let mut local = vec![usize::MAX; adj.len()];
    for (i, &v) in comp.iter().enumerate() {
        local[v] = i;
    }
    let sigma = rho + 1e-9 * rho.max(1.0);
    let mut m = vec![vec![0.0; k]; k];
    for (i, &v) in comp.iter().enumerate() {
        m[i][i] = -sigma;
        for &w in &adj[v] {
            m[i][local[w]] = 1.0;
        }
    }
    let mut x = vec![1.0 / (k as f64).sqrt(); k];
    for _ in 0..3 {
        let y = solve(m.clone(), x.clone());
        let sign = if y.iter().sum::<f64>() < 0.0 { -1.0 } else { 1.0 };
        let norm = y.iter().map(|a| a * a).sum::<f64>().sqrt();
        x = y.into_iter().map(|a| (sign * a / norm).max(0.0)).collect();
    }
    let norm = x.iter().map(|a| a * a).sum::<f64>().sqrt();
    x.into_iter().map(|a| a / norm).collect()
}

fn component_root(g: &Graph, comp: &[usize], estimate: f64, tol: f64) -> Result<CertifiedRoot> {
    let h = g.induced(comp);
    let q = equitable_partition(&h, None)?;
    CertifiedRoot::largest_near(&q.char_poly(), estimate, tol)
}

/// Spectral radius of `g` with a certified bracket of width at most `tol`.
/// For disconnected graphs the Perron vector lives on the first component
/// (by smallest vertex) attaining `ρ`.
pub fn spectral_radius(g: &Graph, tol: f64) -> Result<SpectralResult> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    if g.n() == 0 {
        return Err(Error::Domain("spectral radius of the empty graph".into()));
    }
    let adj = g.adjacency_lists();
    let comps = g.components();
    let bounds: Vec<(f64, f64)> = comps
        .iter()
        .map(|c| power_bounds(&adj, c, 5000, 1e-13))
        .collect();
    let top = bounds.iter().map(|b| b.0).fold(f64::NEG_INFINITY, f64::max);
    let mut best: Option<(usize, CertifiedRoot)> = None;
    for (i, comp) in comps.iter().enumerate() {
        // a component whose upper bound is clearly below another's lower
        // bound cannot attain the maximum
        if bounds[i].1 < top - 1e-9 * top.max(1.0) {
            continue;
        }
        let root = component_root(g, comp, bounds[i].0, tol)?;
        best = match best {
            None => Some((i, root)),
            Some((j, mut cur)) => {
                let mut root = root;
                if root.compare(&mut cur) == Ordering::Greater {
                    Some((i, root))
                } else {
                    Some((j, cur))
                }
            }
        };
    }
    let (ci, mut root) = best.expect("at least one component");
    root.refine_to(tol);
    let comp = comps[ci].clone();
    let rho = root.value_f64();
    let local = perron_vector(&adj, &comp, rho);
    let mut perron = vec![0.0; g.n()];
    for (i, &v) in comp.iter().enumerate() {
        perron[v] = local[i];
    }
    let max = perron.iter().cloned().fold(0.0, f64::max);
    let ustar = perron
        .iter()
        .position(|&x| x >= max * (1.0 - 1e-12))
        .unwrap_or(comp[0]);
    Ok(SpectralResult {
        rho,
        bracket: root.bracket_f64(),
        perron,
        ustar,
        component: comp,
        certificate: root.poly().clone(),
        root,
    })
}

/// Certified ordering of `ρ(a)` against `ρ(b)`.
pub fn compare_rho(a: &Graph, b: &Graph) -> Result<Ordering> {
    let ra = spectral_radius(a, 1e-6)?;
    let rb = spectral_radius(b, 1e-6)?;
    Ok(ra.cmp_rho(&rb))
}

/// `G − Σ v_i v + Σ v_i u` over the moved vertices `v_i`.
pub fn rotate_edges(g: &Graph, v: usize, u: usize, moved: &VertexSet) -> Result<Graph> {
    let n = g.n();
    for x in [v, u].into_iter().chain(moved.iter()) {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x, n });
        }
    }
    if u == v {
        return Err(Error::Rotation {
            vertex: u,
            reason: "source and target coincide".into(),
        });
    }
    for (x, who) in [(v, "source"), (u, "target")] {
        if moved.contains(x) {
            return Err(Error::Rotation {
                vertex: x,
                reason: format!("the {who} vertex cannot be moved"),
            });
        }
    }
    let mut out = g.clone();
    for w in moved.iter() {
        if !g.has_edge(w, v) {
            return Err(Error::Rotation {
                vertex: w,
                reason: format!("not adjacent to source {v}"),
            });
        }
        if g.has_edge(w, u) {
            return Err(Error::Rotation {
                vertex: w,
                reason: format!("already adjacent to target {u}"),
            });
        }
        out.remove_edge(w, v)?;
        out.add_edge(w, u)?;
    }
    Ok(out)
}
