//! Exact characteristic polynomials by Faddeev–LeVerrier over the integers.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::graph::Graph;
use crate::poly::IntPoly;

/// `det(xI - M)` for a square integer matrix given by a product routine
/// `apply(M_k) = A * M_k`.
fn faddeev(n: usize, apply: impl Fn(&[Vec<BigInt>]) -> Vec<Vec<BigInt>>) -> IntPoly {
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::from(1);
    // M_1 = I
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row = vec![BigInt::zero(); n];
            row[i] = BigInt::from(1);
            row
        })
        .collect();
    for k in 1..=n {
        let am = apply(&m);
        let trace: BigInt = (0..n).map(|i| &am[i][i]).sum();
        let c = -trace / BigInt::from(k);
        coeffs[n - k] = c.clone();
        if k < n {
            m = am;
            for (i, row) in m.iter_mut().enumerate() {
                row[i] += &c;
            }
        }
    }
    IntPoly::new(coeffs)
}

/// Characteristic polynomial `det(xI - A(G))`, monic of degree `n`.
pub fn char_poly(g: &Graph) -> IntPoly {
    let adj = g.adjacency_lists();
    let n = g.n();
    faddeev(n, |m| {
        adj.iter()
            .map(|nbrs| {
                let mut row = vec![BigInt::zero(); n];
                for &l in nbrs {
                    for (r, x) in row.iter_mut().zip(&m[l]) {
                        *r += x;
                    }
                }
                row
            })
            .collect()
    })
}

/// Characteristic polynomial of a square integer matrix.
pub fn matrix_char_poly(b: &[Vec<i64>]) -> IntPoly {
    let n = b.len();
    faddeev(n, |m| {
        b.iter()
            .map(|brow| {
                let mut row = vec![BigInt::zero(); n];
                for (l, &w) in brow.iter().enumerate() {
                    if w == 0 {
                        continue;
                    }
                    let w = BigInt::from(w);
                    for (r, x) in row.iter_mut().zip(&m[l]) {
                        *r += &w * x;
                    }
                }
                row
            })
            .collect()
    })
}
