//! Equitable partitions and their quotient matrices.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebraic::CertifiedRoot;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poly::IntPoly;

use super::charpoly::matrix_char_poly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientMatrix {
    pub cells: Vec<Vec<usize>>,
    /// `b[i][j]` is the number of neighbours in cell `j` of any vertex in
    /// cell `i`.
    pub b: Vec<Vec<i64>>,
}

fn cell_index(n: usize, cells: &[Vec<usize>]) -> Result<Vec<usize>> {
    let mut cell_of = vec![usize::MAX; n];
    for (i, cell) in cells.iter().enumerate() {
        if cell.is_empty() {
            return Err(Error::Partition(format!("cell {i} is empty")));
        }
        for &v in cell {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if cell_of[v] != usize::MAX {
                return Err(Error::Partition(format!("vertex {v} appears in two cells")));
            }
            cell_of[v] = i;
        }
    }
    if let Some(v) = cell_of.iter().position(|&c| c == usize::MAX) {
        return Err(Error::Partition(format!("vertex {v} is in no cell")));
    }
    Ok(cell_of)
}

fn normalise(mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for c in cells.iter_mut() {
        c.sort_unstable();
    }
    cells.sort_by_key(|c| c[0]);
    cells
}

/// Coarsest equitable refinement of `seed` (default: one cell holding every
/// vertex). Cells are listed by smallest vertex.
pub fn equitable_partition(g: &Graph, seed: Option<&[Vec<usize>]>) -> Result<QuotientMatrix> {
    let n = g.n();
    let mut cells = match seed {
        Some(s) => {
            cell_index(n, s)?;
            normalise(s.to_vec())
        }
        None if n == 0 => vec![],
        None => vec![(0..n).collect()],
    };
    let adj = g.adjacency_lists();
    loop {
        let cell_of = cell_index(n, &cells)?;
        let mut groups: BTreeMap<(usize, Vec<(usize, usize)>), Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
            for &w in &adj[v] {
                *counts.entry(cell_of[w]).or_default() += 1;
            }
            groups
                .entry((cell_of[v], counts.into_iter().collect()))
                .or_default()
                .push(v);
        }
        let next = normalise(groups.into_values().collect());
        let stable = next.len() == cells.len();
        cells = next;
        if stable {
            break;
        }
    }
    QuotientMatrix::from_cells(g, cells)
}

impl QuotientMatrix {
    /// Quotient of a given partition; fails unless the partition is equitable.
    pub fn from_cells(g: &Graph, cells: Vec<Vec<usize>>) -> Result<Self> {
        let cell_of = cell_index(g.n(), &cells)?;
        let k = cells.len();
        let mut b = vec![vec![0i64; k]; k];
        for (i, cell) in cells.iter().enumerate() {
            for (pos, &v) in cell.iter().enumerate() {
                let mut row = vec![0i64; k];
                for w in g.neighbor_iter(v) {
                    row[cell_of[w]] += 1;
                }
                if pos == 0 {
                    b[i] = row;
                } else if row != b[i] {
                    return Err(Error::Partition(format!(
                        "vertex {v} has neighbour counts {row:?} but cell {i} has {:?}",
                        b[i]
                    )));
                }
            }
        }
        Ok(Self { cells, b })
    }

    /// Re-checks equitability against `g` from the definition.
    pub fn is_equitable(&self, g: &Graph) -> bool {
        let Ok(cell_of) = cell_index(g.n(), &self.cells) else {
            return false;
        };
        self.cells.iter().enumerate().all(|(i, cell)| {
            cell.iter().all(|&v| {
                let mut row = vec![0i64; self.cells.len()];
                for w in g.neighbor_iter(v) {
                    row[cell_of[w]] += 1;
                }
                row == self.b[i]
            })
        })
    }

    pub fn char_poly(&self) -> IntPoly {
        matrix_char_poly(&self.b)
    }

    pub fn largest_eigenvalue(&self, tol: f64) -> Result<CertifiedRoot> {
        CertifiedRoot::largest(&self.char_poly(), tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilySpec;

    #[test]
    fn c5_single_cell() {
        let c5 = FamilySpec::Cycle(5).build().unwrap();
        let q = equitable_partition(&c5, None).unwrap();
        assert_eq!(q.cells.len(), 1);
        assert_eq!(q.b, vec![vec![2]]);
    }

    #[test]
    fn s62_minus_cells() {
        let g = FamilySpec::SnKMinus(6, 2).build().unwrap();
        let q = equitable_partition(&g, None).unwrap();
        assert_eq!(q.cells, vec![vec![0], vec![1], vec![2, 3, 4], vec![5]]);
        assert_eq!(q.b[0], vec![0, 1, 3, 1]);
        assert!(q.is_equitable(&g));
    }

    #[test]
    fn bad_partitions() {
        let p4 = FamilySpec::Path(4).build().unwrap();
        assert!(matches!(
            QuotientMatrix::from_cells(&p4, vec![vec![0, 1, 2, 3]]),
            Err(Error::Partition(_))
        ));
        assert!(equitable_partition(&p4, Some(&[vec![0, 1]])).is_err());
        assert!(equitable_partition(&p4, Some(&[vec![0, 1, 2], vec![2, 3]])).is_err());
        let q = equitable_partition(&p4, Some(&[vec![0, 1], vec![2, 3]])).unwrap();
        assert_eq!(q.cells.len(), 4);
    }
}
