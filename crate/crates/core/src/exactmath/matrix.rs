//! Dense exact matrices and fraction-free elimination.

use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Column vector of scalars.
pub type Vector = Vec<Scalar>;

pub fn zero_vector(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn add_scaled(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += &(c * x);
        }
    }
}

pub fn scale(v: &[Scalar], c: &Scalar) -> Vector {
    v.iter().map(|x| x * c).collect()
}

pub fn sub_vec(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    /// Panicking convenience constructor for integer literals.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect();
        Matrix::from_rows(rows).expect("rectangular literal")
    }

    pub fn from_columns(cols: &[Vector], rows: usize) -> Self {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector size mismatch");
        (0..self.rows).map(|i| self.row(i).iter().zip(v).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product size mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scaled(&self, c: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Row echelon form produced by Bareiss elimination.
///
/// Entries below each pivot are zero; each stored pivot is a leading minor of
/// the input, so intermediate values stay bounded by Hadamard's bound.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: Matrix,
    /// `(row, column)` of each pivot, in order.
    pub pivots: Vec<(usize, usize)>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Fraction-free Gaussian elimination restricted to the first `ncols` columns.
fn bareiss(mut m: Matrix, ncols: usize) -> Echelon {
    let mut prev = Scalar::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..ncols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        let piv = m[(r, c)].clone();
        for i in r + 1..m.rows {
            let lead = m[(i, c)].clone();
            for j in c + 1..m.cols {
                let updated = &piv * &m[(i, j)] - &lead * &m[(r, j)];
                m[(i, j)] = if prev.is_one() { updated } else { &updated / &prev };
            }
            m[(i, c)] = Scalar::zero();
        }
        prev = piv;
        pivots.push((r, c));
        r += 1;
    }
    Echelon { matrix: m, pivots }
}

pub fn echelon(a: &Matrix) -> Echelon {
    bareiss(a.clone(), a.cols())
}

pub fn rank(a: &Matrix) -> usize {
    echelon(a).rank()
}

/// Back-substitute an echelon system for the unknowns `0..n`, with the given
/// values for the free unknowns and right-hand side column `rhs` (if any).
fn back_substitute(e: &Echelon, n: usize, free_values: &[(usize, Scalar)], rhs: Option<usize>) -> Vector {
    let mut x = zero_vector(n);
    for (f, v) in free_values {
        x[*f] = v.clone();
    }
    for &(r, c) in e.pivots.iter().rev() {
        let row = e.matrix.row(r);
        let mut acc = match rhs {
            Some(col) => row[col].clone(),
            None => Scalar::zero(),
        };
        for j in c + 1..n {
            if !row[j].is_zero() && !x[j].is_zero() {
                acc -= &(&row[j] * &x[j]);
            }
        }
        x[c] = &acc / &row[c];
    }
    x
}

fn kernel_from_echelon(e: &Echelon, n: usize) -> Vec<Vector> {
    let pivot_cols: Vec<usize> = e.pivots.iter().map(|p| p.1).collect();
    (0..n).filter(|c| !pivot_cols.contains(c)).map(|f| back_substitute(e, n, &[(f, Scalar::one())], None)).collect()
}

/// Basis of the null space of `a`; its length is `cols − rank(a)`.
pub fn kernel_basis(a: &Matrix) -> Vec<Vector> {
    let e = echelon(a);
    kernel_from_echelon(&e, a.cols())
}

/// A particular solution and the homogeneous solution space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vector,
    pub kernel: Vec<Vector>,
}

/// Outcome of checking `A x = b` for consistency, with the rank pair.
#[derive(Clone, Debug)]
pub struct Consistency {
    pub coefficient_rank: usize,
    pub augmented_rank: usize,
    pub solution: Option<Solution>,
}

pub fn solve_with_ranks(a: &Matrix, b: &[Scalar]) -> Result<Consistency> {
    if b.len() != a.rows() {
        return Err(Error::Dimension(format!("matrix has {} rows but right-hand side has {}", a.rows(), b.len())));
    }
    let n = a.cols();
    let mut aug = Matrix::zeros(a.rows(), n + 1);
    for i in 0..a.rows() {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n)] = b[i].clone();
    }
    let e = bareiss(aug, n + 1);
    let coefficient_rank = e.pivots.iter().filter(|p| p.1 < n).count();
    let augmented_rank = e.rank();
    if augmented_rank > coefficient_rank {
        return Ok(Consistency { coefficient_rank, augmented_rank, solution: None });
    }
    let particular = back_substitute(&e, n, &[], Some(n));
    let kernel = kernel_from_echelon(&e, n);
    Ok(Consistency { coefficient_rank, augmented_rank, solution: Some(Solution { particular, kernel }) })
}

/// Solve `A x = b`; `None` when inconsistent.
pub fn solve_linear(a: &Matrix, b: &[Scalar]) -> Result<Option<Solution>> {
    Ok(solve_with_ranks(a, b)?.solution)
}

/// Reduced row echelon basis of a row space. Pivot entries are 1 and pivot
/// columns are zero in every other row, which makes coordinates and
/// membership tests cheap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rows: Vec<Vector>,
    pub pivots: Vec<usize>,
    pub dim: usize,
}

impl Rref {
    pub fn new(vectors: &[Vector], dim: usize) -> Self {
        let mut out = Rref { rows: Vec::new(), pivots: Vec::new(), dim };
        for v in vectors {
            out.insert(v.clone());
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Residue of `v` after subtracting its projection along the stored rows.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let c = r[p].clone();
                add_scaled(&mut r, &(-c), row);
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vector(&self.reduce(v))
    }

    /// Adds `v` to the span; returns false when it was already inside.
    pub fn insert(&mut self, v: Vector) -> bool {
        let mut r = self.reduce(&v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero");
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                add_scaled(row, &(-c), &r);
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, r);
        true
    }

    /// Coordinates of `v` in the RREF basis, or `None` if outside the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        let coords: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = zero_vector(self.dim);
        for (c, row) in coords.iter().zip(&self.rows) {
            add_scaled(&mut rebuilt, c, row);
        }
        if rebuilt.as_slice() == v {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains_all(&self, other: &Rref) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }
}

/// Coordinates relative to an arbitrary (not necessarily RREF) basis.
#[derive(Clone, Debug)]
pub struct BasisCoordinates {
    rref: Rref,
    /// `to_basis[i]` expresses RREF row `i` in the original basis.
    to_basis: Vec<Vector>,
    basis_len: usize,
}

impl BasisCoordinates {
    pub fn new(basis: &[Vector], dim: usize) -> Result<Self> {
        let k = basis.len();
        // run RREF on [basis | I] to record the change of basis
        let augmented: Vec<Vector> = basis
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let mut row = b.clone();
                row.extend(unit_vector(k, i));
                row
            })
            .collect();
        let full = Rref::new(&augmented, dim + k);
        if full.pivots.iter().any(|&p| p >= dim) {
            return Err(Error::Dimension("basis vectors are linearly dependent".into()));
        }
        let rows: Vec<Vector> = full.rows.iter().map(|r| r[..dim].to_vec()).collect();
        let to_basis = full.rows.iter().map(|r| r[dim..].to_vec()).collect();
        Ok(BasisCoordinates { rref: Rref { rows, pivots: full.pivots.clone(), dim }, to_basis, basis_len: k })
    }

    /// Coordinates of `v` in the original basis, or `None` when outside the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        let c = self.rref.coordinates(v)?;
        let mut out = zero_vector(self.basis_len);
        for (ci, row) in c.iter().zip(&self.to_basis) {
            add_scaled(&mut out, ci, row);
        }
        Some(out)
    }

    /// Linear functionals `coord_i(v) = Σ_p w[i][p] v[p]`, one per basis vector;
    /// only pivot positions carry weight.
    pub fn functionals(&self) -> Vec<Vec<(usize, Scalar)>> {
        (0..self.basis_len)
            .map(|i| {
                self.rref.pivots.iter().zip(&self.to_basis).filter(|(_, tb)| !tb[i].is_zero()).map(|(&p, tb)| (p, tb[i].clone())).collect()
            })
            .collect()
    }

    pub fn span(&self) -> &Rref {
        &self.rref
    }
}

/// Intersection of two subspaces given by spanning sets.
pub fn intersect(a: &[Vector], b: &[Vector], dim: usize) -> Vec<Vector> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // solve Σ s_i a_i − Σ t_j b_j = 0
    let cols: Vec<Vector> = a.iter().cloned().chain(b.iter().map(|v| v.iter().map(|x| -x).collect())).collect();
    let m = Matrix::from_columns(&cols, dim);
    let mut span = Rref::new(&[], dim);
    for k in kernel_basis(&m) {
        let mut v = zero_vector(dim);
        for (s, ai) in k.iter().zip(a) {
            add_scaled(&mut v, s, ai);
        }
        span.insert(v);
    }
    span.rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn solve_examples() {
        let a = Matrix::from_ints(&[&[1, 0], &[0, 0]]);
        let s = solve_linear(&a, &v(&[1, 0])).unwrap().unwrap();
        assert_eq!(s.particular, v(&[1, 0]));
        assert_eq!(s.kernel, vec![v(&[0, 1])]);

        let a = Matrix::from_ints(&[&[1], &[0]]);
        assert!(solve_linear(&a, &v(&[0, 1])).unwrap().is_none());

        let a = Matrix::zeros(2, 2);
        let s = solve_linear(&a, &v(&[0, 0])).unwrap().unwrap();
        assert_eq!(s.particular, v(&[0, 0]));
        assert_eq!(s.kernel.len(), 2);

        assert!(solve_linear(&a, &v(&[0])).is_err());
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&Matrix::identity(3)).is_empty());
        assert_eq!(kernel_basis(&Matrix::zeros(2, 3)).len(), 3);
        let k = kernel_basis(&Matrix::from_ints(&[&[1, 1]]));
        assert_eq!(k.len(), 1);
        assert_eq!(&k[0][0] + &k[0][1], Scalar::zero());
        assert!(!k[0][0].is_zero());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::zeros(3, 4)), 0);
        assert_eq!(rank(&Matrix::identity(5)), 5);
        assert_eq!(rank(&Matrix::from_ints(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn basis_coordinates_roundtrip() {
        let basis = vec![v(&[1, 1, 0]), v(&[0, 1, 1])];
        let bc = BasisCoordinates::new(&basis, 3).unwrap();
        assert_eq!(bc.coordinates(&v(&[2, 5, 3])), Some(v(&[2, 3])));
        assert_eq!(bc.coordinates(&v(&[1, 0, 0])), None);
        assert!(BasisCoordinates::new(&[v(&[1, 2]), v(&[2, 4])], 2).is_err());
    }

    #[test]
    fn intersection_of_planes() {
        let a = vec![v(&[1, 0, 0]), v(&[0, 1, 0])];
        let b = vec![v(&[0, 1, 0]), v(&[0, 0, 1])];
        let i = intersect(&a, &b, 3);
        assert_eq!(i, vec![v(&[0, 1, 0])]);
    }

    fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-3i64..4, r * c)))
    }

    fn build(r: usize, c: usize, xs: &[i64]) -> Matrix {
        let rows = (0..r).map(|i| xs[i * c..(i + 1) * c].iter().map(|&x| Scalar::from_int(x)).collect()).collect();
        Matrix::from_rows(rows).unwrap()
    }

    proptest! {
        #[test]
        fn solutions_satisfy_system((r, c, xs) in small_matrix(), bs in prop::collection::vec(-3i64..4, 6)) {
            let a = build(r, c, &xs);
            let b: Vector = bs[..r].iter().map(|&x| Scalar::from_int(x)).collect();
            if let Some(s) = solve_linear(&a, &b).unwrap() {
                prop_assert_eq!(a.mul_vec(&s.particular), b);
                for k in &s.kernel {
                    prop_assert!(is_zero_vector(&a.mul_vec(k)));
                }
                prop_assert_eq!(s.kernel.len(), c - rank(&a));
            }
        }

        #[test]
        fn rank_invariant_under_permutation((r, c, xs) in small_matrix(), seed in 0u64..1000) {
            let a = build(r, c, &xs);
            let mut p = a.clone();
            let mut s = seed;
            for _ in 0..8 {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let i = (s >> 33) as usize;
                p.swap_rows(i % r, (i / 7) % r);
                p.swap_cols(i % c, (i / 11) % c);
            }
            prop_assert_eq!(rank(&a), rank(&p));
        }

        #[test]
        fn rank_invariant_under_extension((r, c, xs) in small_matrix()) {
            let a = build(r, c, &xs);
            // embed into Q(√2) by a nontrivial change of basis on the rows: row_i += √2 row_{i+1}
            let s2 = Scalar::sqrt_of(2);
            let mut e = a.clone();
            for i in 0..r.saturating_sub(1) {
                for j in 0..c {
                    let add = &s2 * &a[(i + 1, j)];
                    e[(i, j)] += &add;
                }
            }
            prop_assert_eq!(rank(&a), rank(&e));
        }
    }
}
