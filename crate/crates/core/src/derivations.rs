//! Derivation superalgebras, inner derivations and outer quotients.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::matrix::{is_zero_vector, solve_with_ranks, unit_vector, zero_vector, Rref};
use crate::exactmath::modular::sparse_kernel;
use crate::exactmath::sparse::SparseRow;
use crate::exactmath::{Matrix, Scalar, Vector};
use crate::supercore::{Dims, GradedMap, LieSuperalgebra, Parity};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Computed,
    Euler,
    User,
    /// `ad_a`
    InnerOf(Vector),
    Bracket,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub map: GradedMap,
    pub provenance: Provenance,
}

impl Derivation {
    pub fn degree(&self) -> Parity {
        self.map.degree
    }

    pub fn matrix(&self) -> &Matrix {
        &self.map.matrix
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        self.map.apply(v)
    }

    /// Checked constructor: the map must respect parity and satisfy Leibniz.
    pub fn new(l: &LieSuperalgebra, degree: Parity, matrix: Matrix, provenance: Provenance) -> Result<Self> {
        let map = GradedMap::new(l, degree, matrix)?;
        if !is_derivation(l, &map) {
            return Err(Error::InvalidAlgebra("map violates the graded Leibniz identity".into()));
        }
        Ok(Derivation { map, provenance })
    }

    pub fn inner(l: &LieSuperalgebra, a: &[Scalar]) -> Result<Self> {
        let degree = l.parity_of(a).ok_or(Error::Inhomogeneous)?;
        Ok(Derivation { map: GradedMap { degree, matrix: l.ad(a) }, provenance: Provenance::InnerOf(a.to_vec()) })
    }

    /// Z-shift of the map, when the algebra is graded and the map is homogeneous.
    pub fn shift(&self, l: &LieSuperalgebra) -> Option<i64> {
        let g = l.grading()?;
        let m = self.matrix();
        let mut found = None;
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if !m[(i, j)].is_zero() {
                    let s = g.labels[i] - g.labels[j];
                    match found {
                        None => found = Some(s),
                        Some(x) if x != s => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(found.unwrap_or(0))
    }

    fn flat(&self) -> Vector {
        self.matrix().entries().to_vec()
    }
}

/// Exact check of `D[x,y] = [Dx,y] + (−1)^{δ|x|}[x,Dy]` on all basis pairs.
pub fn is_derivation(l: &LieSuperalgebra, d: &GradedMap) -> bool {
    let n = l.dim();
    if d.matrix.rows() != n || d.matrix.cols() != n {
        return false;
    }
    let images: Vec<Vector> = (0..n).map(|j| d.matrix.column(j)).collect();
    for i in 0..n {
        let s = d.degree.sign_scalar(l.parity(i));
        for j in i..n {
            let mut lhs = zero_vector(n);
            for (m, c) in l.basis_bracket(i, j) {
                for (k, dk) in images[*m].iter().enumerate() {
                    if !dk.is_zero() {
                        lhs[k] += &(c * dk);
                    }
                }
            }
            let a = l.bracket(&images[i], &unit_vector(n, j));
            let b = l.bracket(&unit_vector(n, i), &images[j]);
            for k in 0..n {
                lhs[k] -= &a[k];
                lhs[k] -= &(&s * &b[k]);
            }
            if !is_zero_vector(&lhs) {
                return false;
            }
        }
    }
    true
}

/// Unknown `D_km` (row `k`, column `m`) is allowed when `|k| = |m| + δ`.
fn unknowns(l: &LieSuperalgebra, degree: Parity) -> Vec<(usize, usize)> {
    let n = l.dim();
    let mut out = Vec::new();
    for k in 0..n {
        for m in 0..n {
            if l.parity(k) == l.parity(m) + degree {
                out.push((k, m));
            }
        }
    }
    out
}

/// Degree-δ derivations, as the exact kernel of the Leibniz system.
///
/// With a Z-grading the system splits by shift `grade(k) − grade(m)` and the
/// returned basis is a concatenation of shift-homogeneous pieces, in
/// increasing shift order.
pub fn derivation_space(l: &LieSuperalgebra, degree: Parity) -> Result<Vec<Derivation>> {
    let report = l.validate();
    if !report.is_empty() {
        return Err(Error::InvalidAlgebra(format!("{} axiom violations", report.violations.len())));
    }
    Ok(derivation_space_unchecked(l, degree))
}

pub(crate) fn derivation_space_unchecked(l: &LieSuperalgebra, degree: Parity) -> Vec<Derivation> {
    let n = l.dim();
    let grade = |i: usize| l.zgrade(i).unwrap_or(0);
    // group unknowns by shift
    let mut groups: BTreeMap<i64, Vec<(usize, usize)>> = BTreeMap::new();
    for (k, m) in unknowns(l, degree) {
        groups.entry(grade(k) - grade(m)).or_default().push((k, m));
    }
    // by_right[j][k] = [(m, c)] with c = c_{mj}^k; by_left[i][k] = [(m, c)] with c = c_{im}^k
    let mut by_right: Vec<Vec<Vec<(usize, Scalar)>>> = vec![vec![Vec::new(); n]; n];
    let mut by_left: Vec<Vec<Vec<(usize, Scalar)>>> = vec![vec![Vec::new(); n]; n];
    for a in 0..n {
        for b in 0..n {
            for (k, c) in l.basis_bracket(a, b) {
                by_right[b][*k].push((a, c.clone()));
                by_left[a][*k].push((b, c.clone()));
            }
        }
    }
    let mut out = Vec::new();
    for (shift, vars) in groups {
        let index: std::collections::HashMap<(usize, usize), usize> = vars.iter().enumerate().map(|(t, &km)| (km, t)).collect();
        let mut rows: Vec<SparseRow> = Vec::new();
        for i in 0..n {
            let s = degree.sign_scalar(l.parity(i));
            for j in i..n {
                for k in 0..n {
                    if l.parity(k) != l.parity(i) + l.parity(j) + degree || grade(k) - grade(i) - grade(j) != shift {
                        continue;
                    }
                    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                    let mut add = |key: (usize, usize), c: Scalar| {
                        if let Some(&t) = index.get(&key) {
                            let e = acc.entry(t).or_insert_with(Scalar::zero);
                            *e += &c;
                        }
                    };
                    for (m, c) in l.basis_bracket(i, j) {
                        add((k, *m), c.clone());
                    }
                    for (m, c) in &by_right[j][k] {
                        add((*m, i), -c);
                    }
                    for (m, c) in &by_left[i][k] {
                        add((*m, j), -(&s * c));
                    }
                    let row: SparseRow = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                    if !row.is_empty() {
                        rows.push(row);
                    }
                }
            }
        }
        for v in sparse_kernel(&rows, vars.len()) {
            let mut m = Matrix::zeros(n, n);
            for (t, c) in v.into_iter().enumerate() {
                if !c.is_zero() {
                    m[vars[t]] = c;
                }
            }
            out.push(Derivation { map: GradedMap { degree, matrix: m }, provenance: Provenance::Computed });
        }
    }
    out
}

/// Basis of `{ad_a}` chosen greedily from `ad_{e_0}, ad_{e_1}, …`.
pub fn inner_derivations(l: &LieSuperalgebra) -> Vec<Derivation> {
    let n = l.dim();
    let mut span = Rref::new(&[], n * n);
    let mut out = Vec::new();
    for i in 0..n {
        let d = Derivation::inner(l, &unit_vector(n, i)).expect("basis vectors are homogeneous");
        if span.insert(d.flat()) {
            out.push(d);
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct DerivationData {
    pub even_basis: Vec<Derivation>,
    pub odd_basis: Vec<Derivation>,
    pub ider_basis: Vec<Derivation>,
    pub outer_reps: Vec<Derivation>,
    pub der_dims: Dims,
    pub ider_dims: Dims,
    pub outer_dims: Dims,
    pub center_dims: Dims,
}

fn dims_of(ds: &[Derivation]) -> Dims {
    let odd = ds.iter().filter(|d| d.degree().is_odd()).count();
    Dims::new(ds.len() - odd, odd)
}

/// Der, IDer and coset representatives of the outer quotient. Representatives
/// are the derivation-space basis vectors, in order, that are independent of
/// the inner derivations and of earlier representatives.
pub fn outer_data(l: &LieSuperalgebra) -> Result<DerivationData> {
    let report = l.validate();
    if !report.is_empty() {
        return Err(Error::InvalidAlgebra(format!("{} axiom violations", report.violations.len())));
    }
    let (even_basis, odd_basis) =
        rayon::join(|| derivation_space_unchecked(l, Parity::Even), || derivation_space_unchecked(l, Parity::Odd));
    let ider_basis = inner_derivations(l);
    let n = l.dim();
    let mut outer_reps = Vec::new();
    for (basis, p) in [(&even_basis, Parity::Even), (&odd_basis, Parity::Odd)] {
        let inner: Vec<Vector> = ider_basis.iter().filter(|d| d.degree() == p).map(Derivation::flat).collect();
        let mut span = Rref::new(&inner, n * n);
        for d in basis.iter() {
            if span.insert(d.flat()) {
                outer_reps.push(d.clone());
            }
        }
    }
    let center = l.center();
    let center_odd = center.iter().filter(|v| l.parity_of(v) == Some(Parity::Odd)).count();
    let der_dims = Dims::new(even_basis.len(), odd_basis.len());
    let ider_dims = dims_of(&ider_basis);
    Ok(DerivationData {
        outer_dims: der_dims.minus(ider_dims),
        der_dims,
        ider_dims,
        center_dims: Dims::new(center.len() - center_odd, center_odd),
        outer_reps,
        even_basis,
        odd_basis,
        ider_basis,
    })
}

/// `E(x) = i x` for `x` of grade `i`. Only additivity of the grading is needed.
pub fn euler_derivation(l: &LieSuperalgebra) -> Result<Derivation> {
    let g = l.grading().ok_or(Error::NoGrading)?;
    let n = l.dim();
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = Scalar::from_int(g.labels[i]);
    }
    Derivation::new(l, Parity::Even, m, Provenance::Euler)
}

/// Element `a ∈ L_{|D|}` with `ad_a = D`, if one exists.
pub fn is_inner(l: &LieSuperalgebra, d: &Derivation) -> Option<Vector> {
    let n = l.dim();
    let idx = l.indices(d.degree());
    let mut a = Matrix::zeros(n * n, idx.len());
    let mut b = vec![Scalar::zero(); n * n];
    for (t, &i) in idx.iter().enumerate() {
        for j in 0..n {
            for (k, c) in l.basis_bracket(i, j) {
                a[(k * n + j, t)] = c.clone();
            }
        }
    }
    for k in 0..n {
        for j in 0..n {
            b[k * n + j] = d.matrix()[(k, j)].clone();
        }
    }
    // drop identically zero equations to keep the elimination small
    let keep: Vec<usize> = (0..n * n).filter(|&r| !b[r].is_zero() || (0..idx.len()).any(|t| !a[(r, t)].is_zero())).collect();
    let mut a2 = Matrix::zeros(keep.len(), idx.len());
    let mut b2 = Vec::with_capacity(keep.len());
    for (r, &k) in keep.iter().enumerate() {
        for t in 0..idx.len() {
            a2[(r, t)] = a[(k, t)].clone();
        }
        b2.push(b[k].clone());
    }
    let sol = solve_with_ranks(&a2, &b2).ok()?.solution?;
    let mut out = zero_vector(n);
    for (t, &i) in idx.iter().enumerate() {
        out[i] = sol.particular[t].clone();
    }
    Some(out)
}

/// `[D1, D2] = D1 D2 − (−1)^{|D1||D2|} D2 D1`.
pub fn derivation_bracket(l: &LieSuperalgebra, d1: &Derivation, d2: &Derivation) -> Result<Derivation> {
    let n = l.dim();
    if d1.matrix().rows() != n || d2.matrix().rows() != n {
        return Err(Error::AlgebraMismatch);
    }
    let s = d1.degree().sign_scalar(d2.degree());
    let m = d1.matrix().mul(d2.matrix()).sub(&d2.matrix().mul(d1.matrix()).scaled(&s));
    let out = Derivation { map: GradedMap { degree: d1.degree() + d2.degree(), matrix: m }, provenance: Provenance::Bracket };
    assert!(is_derivation(l, &out.map), "bracket of derivations must be a derivation");
    Ok(out)
}

/// Derivations vanishing on the even part, per parity.
pub fn der_vanishing_on_even(l: &LieSuperalgebra) -> Result<Vec<Derivation>> {
    let n = l.dim();
    let even = l.indices(Parity::Even);
    let mut out = Vec::new();
    for p in [Parity::Even, Parity::Odd] {
        let basis = derivation_space(l, p)?;
        if basis.is_empty() {
            continue;
        }
        // coefficients c with Σ c_t D_t(e_j) = 0 for even j
        let mut rows = Vec::new();
        for &j in &even {
            for k in 0..n {
                let row: Vector = basis.iter().map(|d| d.matrix()[(k, j)].clone()).collect();
                if !is_zero_vector(&row) {
                    rows.push(row);
                }
            }
        }
        let kernel = if rows.is_empty() {
            (0..basis.len()).map(|t| unit_vector(basis.len(), t)).collect()
        } else {
            crate::exactmath::kernel_basis(&Matrix::from_rows(rows)?)
        };
        for c in kernel {
            let mut m = Matrix::zeros(n, n);
            for (ct, d) in c.iter().zip(&basis) {
                if !ct.is_zero() {
                    m = m.add(&d.matrix().scaled(ct));
                }
            }
            out.push(Derivation { map: GradedMap { degree: p, matrix: m }, provenance: Provenance::Computed });
        }
    }
    Ok(out)
}

/// Linear combination of derivations of one parity.
pub fn combine_derivations(coeffs: &[Scalar], ds: &[Derivation]) -> Option<Derivation> {
    let first = ds.first()?;
    let (r, c) = (first.matrix().rows(), first.matrix().cols());
    let mut m = Matrix::zeros(r, c);
    for (ct, d) in coeffs.iter().zip(ds) {
        if !ct.is_zero() {
            m = m.add(&d.matrix().scaled(ct));
        }
    }
    Some(Derivation { map: GradedMap { degree: first.degree(), matrix: m }, provenance: Provenance::Computed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::supercore::SuperSpace;

    fn sl2() -> LieSuperalgebra {
        // h, e, f
        let s = |xs: &[(usize, i64)]| xs.iter().map(|&(k, c)| (k, Scalar::from_int(c))).collect::<SparseRow>();
        LieSuperalgebra::from_upper(
            SuperSpace::new(vec!["h".into(), "e".into(), "f".into()], vec![Parity::Even; 3]).unwrap(),
            vec![(0, 1, s(&[(1, 2)])), (0, 2, s(&[(2, -2)])), (1, 2, s(&[(0, 1)]))],
        )
        .unwrap()
        .with_grading(vec![0, 1, -1], false)
        .unwrap()
    }

    #[test]
    fn abelian_all_maps() {
        let a = LieSuperalgebra::abelian(2, 0);
        assert_eq!(derivation_space(&a, Parity::Even).unwrap().len(), 4);
        assert!(inner_derivations(&a).is_empty());
    }

    #[test]
    fn sl2_is_complete() {
        let l = sl2();
        let data = outer_data(&l).unwrap();
        assert_eq!(data.der_dims, Dims::new(3, 0));
        assert_eq!(data.outer_dims, Dims::new(0, 0));
        let e = euler_derivation(&l).unwrap();
        let h = is_inner(&l, &e).unwrap();
        assert_eq!(h, vec![Scalar::from_frac(1, 2), Scalar::zero(), Scalar::zero()]);
        for d in &data.even_basis {
            assert!(is_derivation(&l, &d.map));
        }
    }

    #[test]
    fn bracket_of_inner_is_inner() {
        let l = sl2();
        let x = vec![Scalar::from_int(1), Scalar::from_int(2), Scalar::from_int(-1)];
        let y = vec![Scalar::from_int(0), Scalar::from_int(3), Scalar::from_int(5)];
        let b = derivation_bracket(&l, &Derivation::inner(&l, &x).unwrap(), &Derivation::inner(&l, &y).unwrap()).unwrap();
        assert_eq!(b.matrix(), &l.ad(&l.bracket(&x, &y)));
        let d = Derivation::inner(&l, &x).unwrap();
        assert!(derivation_bracket(&l, &d, &d).unwrap().matrix().is_zero());
    }
}
