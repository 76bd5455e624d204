//! Incremental row echelon form for large, very sparse homogeneous systems.
//!
//! Leibniz systems have tens of thousands of equations with a handful of
//! nonzero coefficients each. Rows are fed one at a time and reduced against
//! the pivot rows seen so far, so memory stays proportional to the rank.

use std::collections::HashMap;

use super::matrix::{zero_vector, Vector};
use super::scalar::Scalar;

/// Sorted `(column, coefficient)` pairs without zeros.
pub type SparseRow = Vec<(usize, Scalar)>;

pub fn sparse_from_map(map: HashMap<usize, Scalar>) -> SparseRow {
    let mut row: SparseRow = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    row.sort_by_key(|e| e.0);
    row
}

#[derive(Clone, Debug)]
pub struct SparseEchelon {
    cols: usize,
    /// pivot column → normalized row with leading coefficient 1
    rows: HashMap<usize, SparseRow>,
}

/// `a − c·b` for sorted sparse rows.
fn axpy(a: &[(usize, Scalar)], c: &Scalar, b: &[(usize, Scalar)]) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, -(c * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(c * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl SparseEchelon {
    pub fn new(cols: usize) -> Self {
        SparseEchelon { cols, rows: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Adds an equation; returns true if it increased the rank.
    pub fn push(&mut self, mut row: SparseRow) -> bool {
        loop {
            let Some((lead, coeff)) = row.first().cloned() else {
                return false;
            };
            match self.rows.get(&lead) {
                Some(p) => row = axpy(&row, &coeff, p),
                None => {
                    let inv = coeff.inv().expect("nonzero lead");
                    for e in row.iter_mut() {
                        e.1 = &e.1 * &inv;
                    }
                    self.rows.insert(lead, row);
                    return true;
                }
            }
        }
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Basis of the solution space of all pushed equations, one vector per
    /// free column in increasing order.
    pub fn kernel(&self) -> Vec<Vector> {
        let mut pivots: Vec<usize> = self.rows.keys().copied().collect();
        pivots.sort_unstable();
        let free: Vec<usize> = (0..self.cols).filter(|c| !self.rows.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = zero_vector(self.cols);
                x[f] = Scalar::one();
                for &p in pivots.iter().rev() {
                    if p > f {
                        continue;
                    }
                    let row = &self.rows[&p];
                    let mut acc = Scalar::zero();
                    for (c, v) in row.iter().skip(1) {
                        if !x[*c].is_zero() {
                            acc -= &(v * &x[*c]);
                        }
                    }
                    x[p] = acc;
                }
                x
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::matrix::{kernel_basis, Matrix};

    fn row(xs: &[(usize, i64)]) -> SparseRow {
        xs.iter().map(|&(c, v)| (c, Scalar::from_int(v))).collect()
    }

    #[test]
    fn matches_dense_kernel() {
        let rows = [vec![(0, 1), (2, -1)], vec![(1, 2), (3, 1)], vec![(0, 2), (1, 2), (2, -2), (3, 1)]];
        let mut e = SparseEchelon::new(4);
        for r in &rows {
            e.push(row(r));
        }
        assert_eq!(e.rank(), 2);
        let k = e.kernel();
        let dense = Matrix::from_ints(&[&[1, 0, -1, 0], &[0, 2, 0, 1], &[2, 2, -2, 1]]);
        assert_eq!(k.len(), kernel_basis(&dense).len());
        for v in &k {
            assert!(dense.mul_vec(v).iter().all(Scalar::is_zero));
        }
    }
}
