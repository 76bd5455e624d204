//! Lie superalgebras given by structure constants.
//!
//! The bracket of basis vectors `e_i, e_j` is stored as a sparse vector for
//! every ordered pair. Constructors that take only `i ≤ j` fill the other
//! half by the sign rule; the raw constructor exists so that malformed
//! tables can be represented and reported by [`LieSuperalgebra::validate`].

use std::collections::HashSet;
use std::fmt;
use std::ops::Add;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::matrix::{add_scaled, is_zero_vector, scale, unit_vector, zero_vector, BasisCoordinates, Rref};
use crate::exactmath::sparse::{SparseEchelon, SparseRow};
use crate::exactmath::{Matrix, Scalar, Vector};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: i64) -> Parity {
        if b.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> i64 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// `(−1)^{|a||b|}`.
    pub fn sign(self, other: Parity) -> i64 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }

    pub fn sign_scalar(self, other: Parity) -> Scalar {
        Scalar::from_int(self.sign(other))
    }

    pub fn parse(s: &str) -> Result<Parity> {
        match s {
            "even" | "0" => Ok(Parity::Even),
            "odd" | "1" => Ok(Parity::Odd),
            _ => Err(Error::Parse(format!("unknown parity `{s}`"))),
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() + rhs.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Graded dimension `(p|q)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct Dims {
    pub even: usize,
    pub odd: usize,
}

impl Dims {
    pub fn new(even: usize, odd: usize) -> Self {
        Dims { even, odd }
    }

    pub fn total(self) -> usize {
        self.even + self.odd
    }

    pub fn get(self, p: Parity) -> usize {
        match p {
            Parity::Even => self.even,
            Parity::Odd => self.odd,
        }
    }

    pub fn minus(self, other: Dims) -> Dims {
        Dims { even: self.even - other.even, odd: self.odd - other.odd }
    }
}

impl fmt::Display for Dims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.even, self.odd)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperSpace {
    pub names: Vec<String>,
    pub parities: Vec<Parity>,
}

impl SuperSpace {
    pub fn new(names: Vec<String>, parities: Vec<Parity>) -> Result<Self> {
        if names.len() != parities.len() {
            return Err(Error::Dimension("one parity per basis name".into()));
        }
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(Error::InvalidAlgebra(format!("duplicate basis name `{n}`")));
            }
        }
        Ok(SuperSpace { names, parities })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn dims(&self) -> Dims {
        let odd = self.parities.iter().filter(|p| p.is_odd()).count();
        Dims::new(self.dim() - odd, odd)
    }
}

/// Coordinates with the parity they were tagged with, if homogeneous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperVector {
    pub coords: Vector,
    pub parity: Option<Parity>,
}

impl SuperVector {
    pub fn new(l: &LieSuperalgebra, coords: Vector) -> Self {
        let parity = l.parity_of(&coords);
        SuperVector { coords, parity }
    }
}

/// A linear map on coordinates that shifts parity by `degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedMap {
    pub degree: Parity,
    pub matrix: Matrix,
}

impl GradedMap {
    pub fn new(l: &LieSuperalgebra, degree: Parity, matrix: Matrix) -> Result<Self> {
        let n = l.dim();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::Dimension(format!("map must be {n}×{n}")));
        }
        for i in 0..n {
            for j in 0..n {
                if !matrix[(i, j)].is_zero() && l.parity(i) != l.parity(j) + degree {
                    return Err(Error::InvalidAlgebra(format!("entry ({i},{j}) breaks the parity block pattern")));
                }
            }
        }
        Ok(GradedMap { degree, matrix })
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        self.matrix.mul_vec(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `[e_i, e_j]` has a component along `e_k` of the wrong parity.
    Parity {
        i: usize,
        j: usize,
        k: usize,
    },
    /// `[e_i, e_j] + (−1)^{|i||j|}[e_j, e_i] ≠ 0`.
    Skew {
        i: usize,
        j: usize,
    },
    Jacobi {
        i: usize,
        j: usize,
        k: usize,
    },
    /// The bracket does not add Z-grades (or parity disagrees with a compatible grading).
    Grading {
        i: usize,
        j: usize,
        k: usize,
    },
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub labels: Vec<i64>,
    /// parity equals label mod 2
    pub compatible: bool,
}

#[derive(Clone, PartialEq, Eq)]
pub struct LieSuperalgebra {
    space: SuperSpace,
    /// `table[i*n + j]` = `[e_i, e_j]`
    table: Vec<SparseRow>,
    grading: Option<Grading>,
}

fn dense_to_sparse(v: &[Scalar]) -> SparseRow {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()
}

impl LieSuperalgebra {
    /// Builds from brackets with `i ≤ j`; the remaining pairs follow from
    /// `[e_j, e_i] = −(−1)^{|i||j|}[e_i, e_j]`.
    pub fn from_upper(space: SuperSpace, brackets: impl IntoIterator<Item = (usize, usize, SparseRow)>) -> Result<Self> {
        let n = space.dim();
        let mut table = vec![SparseRow::new(); n * n];
        for (i, j, row) in brackets {
            if i > j {
                return Err(Error::InvalidAlgebra(format!("bracket ({i},{j}) given with i > j")));
            }
            if j >= n || row.iter().any(|e| e.0 >= n) {
                return Err(Error::Dimension(format!("bracket ({i},{j}) out of range")));
            }
            let mut row: SparseRow = row.into_iter().filter(|e| !e.1.is_zero()).collect();
            row.sort_by_key(|e| e.0);
            if i != j {
                let s = -space.parities[i].sign_scalar(space.parities[j]);
                table[j * n + i] = row.iter().map(|(k, c)| (*k, c * &s)).collect();
            }
            table[i * n + j] = row;
        }
        Ok(LieSuperalgebra { space, table, grading: None })
    }

    /// Builds from a full table of `n²` brackets without enforcing skew-symmetry.
    pub fn from_full_table(space: SuperSpace, table: Vec<Vector>) -> Result<Self> {
        let n = space.dim();
        if table.len() != n * n || table.iter().any(|v| v.len() != n) {
            return Err(Error::Dimension("full table must hold n² vectors of length n".into()));
        }
        Ok(LieSuperalgebra { space, table: table.iter().map(|v| dense_to_sparse(v)).collect(), grading: None })
    }

    /// Builds from a bracket function on basis indices (evaluated for `i ≤ j`).
    pub fn from_fn(space: SuperSpace, mut f: impl FnMut(usize, usize) -> Vector) -> Result<Self> {
        let n = space.dim();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in i..n {
                entries.push((i, j, dense_to_sparse(&f(i, j))));
            }
        }
        LieSuperalgebra::from_upper(space, entries)
    }

    pub fn abelian(p: usize, q: usize) -> Self {
        let names = (0..p).map(|i| format!("a{i}")).chain((0..q).map(|i| format!("b{i}"))).collect();
        let parities = std::iter::repeat_n(Parity::Even, p).chain(std::iter::repeat_n(Parity::Odd, q)).collect();
        LieSuperalgebra::from_upper(SuperSpace::new(names, parities).unwrap(), []).unwrap()
    }

    pub fn zero() -> Self {
        LieSuperalgebra::abelian(0, 0)
    }

    pub fn with_grading(mut self, labels: Vec<i64>, compatible: bool) -> Result<Self> {
        if labels.len() != self.dim() {
            return Err(Error::Dimension("one grade label per basis vector".into()));
        }
        self.grading = Some(Grading { labels, compatible });
        Ok(self)
    }

    pub fn without_grading(mut self) -> Self {
        self.grading = None;
        self
    }

    pub fn space(&self) -> &SuperSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn dims(&self) -> Dims {
        self.space.dims()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.space.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.space.names
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.space.parities[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.space.parities
    }

    pub fn grading(&self) -> Option<&Grading> {
        self.grading.as_ref()
    }

    pub fn zgrade(&self, i: usize) -> Option<i64> {
        self.grading.as_ref().map(|g| g.labels[i])
    }

    /// Indices of basis vectors of the given parity.
    pub fn indices(&self, p: Parity) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parity(i) == p).collect()
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &SparseRow {
        &self.table[i * self.dim() + j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.basis_bracket(i, j).iter().find(|e| e.0 == k).map(|e| e.1.clone()).unwrap_or_else(Scalar::zero)
    }

    /// Parity of a homogeneous vector; zero counts as even.
    pub fn parity_of(&self, v: &[Scalar]) -> Option<Parity> {
        let mut found: Option<Parity> = None;
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                match found {
                    None => found = Some(self.parity(i)),
                    Some(p) if p != self.parity(i) => return None,
                    _ => {}
                }
            }
        }
        Some(found.unwrap_or(Parity::Even))
    }

    /// Z-grade of a homogeneous vector, if graded.
    pub fn zgrade_of(&self, v: &[Scalar]) -> Option<i64> {
        let g = self.grading.as_ref()?;
        let mut found = None;
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                match found {
                    None => found = Some(g.labels[i]),
                    Some(x) if x != g.labels[i] => return None,
                    _ => {}
                }
            }
        }
        found
    }

    fn check_len(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::Dimension(format!("vector of length {} in algebra of dimension {}", v.len(), self.dim())));
        }
        Ok(())
    }

    /// `[x, y]` by bilinear contraction with the structure constants.
    pub fn bracket_eval(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.bracket(x, y))
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = zero_vector(n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let row = self.basis_bracket(i, j);
                if row.is_empty() {
                    continue;
                }
                let c = xi * yj;
                for (k, v) in row {
                    out[*k] += &(&c * v);
                }
            }
        }
        out
    }

    /// `[x, e_j]` for a basis vector `e_j`.
    pub fn bracket_with_basis(&self, x: &[Scalar], j: usize) -> Vector {
        let mut out = zero_vector(self.dim());
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (k, v) in self.basis_bracket(i, j) {
                out[*k] += &(xi * v);
            }
        }
        out
    }

    /// Matrix of `ad_x`, column `j` being `[x, e_j]`.
    pub fn ad(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.bracket_with_basis(x, j)).collect();
        Matrix::from_columns(&cols, n)
    }

    pub fn ad_basis(&self, i: usize) -> Matrix {
        self.ad(&unit_vector(self.dim(), i))
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        let mut violations = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, _) in self.basis_bracket(i, j) {
                    if self.parity(*k) != self.parity(i) + self.parity(j) {
                        violations.push(Violation::Parity { i, j, k: *k });
                    }
                    if let Some(g) = &self.grading {
                        let additive = g.labels[*k] == g.labels[i] + g.labels[j];
                        if !additive {
                            violations.push(Violation::Grading { i, j, k: *k });
                        }
                    }
                }
            }
        }
        if let Some(g) = &self.grading {
            if g.compatible {
                for i in 0..n {
                    if Parity::from_bit(g.labels[i]) != self.parity(i) {
                        violations.push(Violation::Grading { i, j: i, k: i });
                    }
                }
            }
        }
        for i in 0..n {
            for j in i..n {
                let s = self.parity(i).sign_scalar(self.parity(j));
                let mut sum = zero_vector(n);
                for (k, v) in self.basis_bracket(i, j) {
                    sum[*k] += v;
                }
                for (k, v) in self.basis_bracket(j, i) {
                    sum[*k] += &(v * &s);
                }
                if !is_zero_vector(&sum) {
                    violations.push(Violation::Skew { i, j });
                }
            }
        }
        // [x,[y,z]] = [[x,y],z] + (−1)^{|x||y|}[y,[x,z]]
        let nested = |outer_left: bool, a: usize, inner: &SparseRow, out: &mut Vector, c: &Scalar| {
            for (m, v) in inner {
                let row = if outer_left { self.basis_bracket(a, *m) } else { self.basis_bracket(*m, a) };
                for (k, w) in row {
                    out[*k] += &(&(v * w) * c);
                }
            }
        };
        let one = Scalar::one();
        for x in 0..n {
            for y in 0..n {
                let s = -self.parity(x).sign_scalar(self.parity(y));
                for z in 0..n {
                    let mut acc = zero_vector(n);
                    nested(true, x, self.basis_bracket(y, z), &mut acc, &one);
                    nested(false, z, self.basis_bracket(x, y), &mut acc, &-&one);
                    nested(true, y, self.basis_bracket(x, z), &mut acc, &s);
                    if !is_zero_vector(&acc) {
                        violations.push(Violation::Jacobi { i: x, j: y, k: z });
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// Kernel of `a ↦ ad_a`.
    pub fn center(&self) -> Vec<Vector> {
        let n = self.dim();
        let mut ech = SparseEchelon::new(n);
        for j in 0..n {
            for k in 0..n {
                let row: SparseRow = (0..n)
                    .filter_map(|i| {
                        let c = self.structure_constant(i, j, k);
                        (!c.is_zero()).then_some((i, c))
                    })
                    .collect();
                if !row.is_empty() {
                    ech.push(row);
                }
                if ech.is_full() {
                    return Vec::new();
                }
            }
        }
        ech.kernel()
    }

    /// RREF basis of `[L, L]`.
    pub fn derived_subalgebra(&self) -> Vec<Vector> {
        let n = self.dim();
        let mut span = Rref::new(&[], n);
        for i in 0..n {
            for j in i..n {
                let row = self.basis_bracket(i, j);
                if row.is_empty() {
                    continue;
                }
                let mut v = zero_vector(n);
                for (k, c) in row {
                    v[*k] = c.clone();
                }
                span.insert(v);
            }
        }
        span.rows
    }

    /// True iff `[e_i, v] ∈ span(basis)` for every basis vector `e_i` and `v` in the span.
    pub fn is_ideal(&self, basis: &[Vector]) -> bool {
        let span = Rref::new(basis, self.dim());
        span.rows.iter().all(|v| (0..self.dim()).all(|i| span.contains(&self.bracket_with_basis(v, i))))
    }

    /// Smallest ideal containing the given vectors.
    pub fn ideal_generated(&self, gens: &[Vector]) -> Rref {
        let n = self.dim();
        let mut span = Rref::new(&[], n);
        let mut queue: Vec<Vector> = Vec::new();
        for g in gens {
            if span.insert(g.clone()) {
                queue.push(g.clone());
            }
        }
        while let Some(v) = queue.pop() {
            if span.rank() == n {
                break;
            }
            for i in 0..n {
                let w = self.bracket_with_basis(&v, i);
                if span.insert(w.clone()) {
                    queue.push(w);
                }
            }
        }
        span
    }

    /// Probabilistic simplicity check: the ideal generated by every basis
    /// vector and by `samples` random vectors is the whole algebra.
    pub fn plausibly_simple(&self, rng: &mut impl Rng, samples: usize) -> bool {
        let n = self.dim();
        if n == 0 || self.center().len() == n {
            return false;
        }
        let mut gens: Vec<Vector> = (0..n).map(|i| unit_vector(n, i)).collect();
        gens.extend((0..samples).map(|_| (0..n).map(|_| Scalar::from_int(rng.gen_range(-9..=9))).collect()));
        gens.iter().filter(|g| !is_zero_vector(g)).all(|g| self.ideal_generated(std::slice::from_ref(g)).rank() == n)
    }

    /// Splits a vector into its even and odd parts.
    pub fn parity_parts(&self, v: &[Scalar]) -> (Vector, Vector) {
        let mut even = zero_vector(self.dim());
        let mut odd = zero_vector(self.dim());
        for (i, c) in v.iter().enumerate() {
            match self.parity(i) {
                Parity::Even => even[i] = c.clone(),
                Parity::Odd => odd[i] = c.clone(),
            }
        }
        (even, odd)
    }

    fn is_graded_subspace(&self, span: &Rref) -> bool {
        span.rows.iter().all(|r| {
            let (e, o) = self.parity_parts(r);
            span.contains(&e) && span.contains(&o)
        })
    }

    fn is_zgraded_subspace(&self, span: &Rref) -> bool {
        let Some(g) = &self.grading else { return false };
        span.rows.iter().all(|r| {
            let mut grades: Vec<i64> = r.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| g.labels[i]).collect();
            grades.sort_unstable();
            grades.dedup();
            grades.iter().all(|&d| {
                let part: Vector = r.iter().enumerate().map(|(i, c)| if g.labels[i] == d { c.clone() } else { Scalar::zero() }).collect();
                span.contains(&part)
            })
        })
    }

    /// Quotient by a graded ideal, realized on the basis vectors whose
    /// coordinates are not pivots of the ideal's reduced echelon form.
    pub fn quotient_by_ideal(&self, ideal: &[Vector]) -> Result<LieSuperalgebra> {
        let n = self.dim();
        let span = Rref::new(ideal, n);
        if !self.is_ideal(&span.rows) {
            return Err(Error::NotAnIdeal("[L, I] is not contained in I".into()));
        }
        if !self.is_graded_subspace(&span) {
            return Err(Error::NotAnIdeal("ideal is not parity-graded".into()));
        }
        let complement: Vec<usize> = (0..n).filter(|c| !span.pivots.contains(c)).collect();
        let pos: std::collections::HashMap<usize, usize> = complement.iter().enumerate().map(|(a, &c)| (c, a)).collect();
        let names = complement.iter().map(|&c| self.space.names[c].clone()).collect();
        let parities = complement.iter().map(|&c| self.parity(c)).collect();
        let space = SuperSpace::new(names, parities)?;
        let q = LieSuperalgebra::from_fn(space, |a, b| {
            let v = self.bracket(&unit_vector(n, complement[a]), &unit_vector(n, complement[b]));
            let r = span.reduce(&v);
            let mut out = zero_vector(complement.len());
            for (k, c) in r.iter().enumerate() {
                if !c.is_zero() {
                    out[pos[&k]] = c.clone();
                }
            }
            out
        })?;
        match &self.grading {
            Some(g) if self.is_zgraded_subspace(&span) => q.with_grading(complement.iter().map(|&c| g.labels[c]).collect(), g.compatible),
            _ => Ok(q),
        }
    }

    /// Subalgebra spanned by parity-homogeneous vectors, in that basis.
    pub fn subalgebra(&self, basis: &[Vector], names: Vec<String>) -> Result<LieSuperalgebra> {
        let n = self.dim();
        let coords = BasisCoordinates::new(basis, n)?;
        let mut parities = Vec::with_capacity(basis.len());
        for b in basis {
            parities.push(self.parity_of(b).ok_or(Error::Inhomogeneous)?);
        }
        let space = SuperSpace::new(names, parities)?;
        let mut failure = None;
        let sub = LieSuperalgebra::from_fn(space, |a, b| {
            let v = self.bracket(&basis[a], &basis[b]);
            coords.coordinates(&v).unwrap_or_else(|| {
                failure = Some((a, b));
                zero_vector(basis.len())
            })
        })?;
        if let Some((a, b)) = failure {
            return Err(Error::InvalidAlgebra(format!("span is not closed: [b{a}, b{b}] leaves it")));
        }
        let labels: Option<Vec<i64>> = basis.iter().map(|b| self.zgrade_of(b)).collect();
        match (labels, &self.grading) {
            (Some(l), Some(g)) => sub.with_grading(l, g.compatible),
            _ => Ok(sub),
        }
    }

    pub fn direct_sum(&self, other: &LieSuperalgebra) -> LieSuperalgebra {
        let n1 = self.dim();
        let mut names: Vec<String> = self.space.names.iter().map(|s| format!("{s}.1")).collect();
        names.extend(other.space.names.iter().map(|s| format!("{s}.2")));
        let mut parities = self.space.parities.clone();
        parities.extend(&other.space.parities);
        let mut entries = Vec::new();
        for i in 0..n1 {
            for j in i..n1 {
                entries.push((i, j, self.basis_bracket(i, j).clone()));
            }
        }
        for i in 0..other.dim() {
            for j in i..other.dim() {
                entries.push((n1 + i, n1 + j, other.basis_bracket(i, j).iter().map(|(k, c)| (k + n1, c.clone())).collect()));
            }
        }
        let sum = LieSuperalgebra::from_upper(SuperSpace::new(names, parities).unwrap(), entries).unwrap();
        match (&self.grading, &other.grading) {
            (Some(a), Some(b)) => {
                let mut labels = a.labels.clone();
                labels.extend(&b.labels);
                sum.with_grading(labels, a.compatible && b.compatible).unwrap()
            }
            _ => sum,
        }
    }

    /// Unit vectors of grade `i`.
    pub fn graded_component(&self, i: i64) -> Result<Vec<Vector>> {
        let g = self.grading.as_ref().ok_or(Error::NoGrading)?;
        Ok((0..self.dim()).filter(|&k| g.labels[k] == i).map(|k| unit_vector(self.dim(), k)).collect())
    }

    /// Sorted distinct grade labels.
    pub fn grades(&self) -> Vec<i64> {
        let mut g: Vec<i64> = self.grading.as_ref().map(|g| g.labels.clone()).unwrap_or_default();
        g.sort_unstable();
        g.dedup();
        g
    }

    /// Relabels basis vector `perm[i]` of `self` as vector `i` of the result.
    pub fn permuted(&self, perm: &[usize]) -> LieSuperalgebra {
        let n = self.dim();
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let names = perm.iter().map(|&p| self.space.names[p].clone()).collect();
        let parities = perm.iter().map(|&p| self.parity(p)).collect();
        let space = SuperSpace::new(names, parities).unwrap();
        let table = (0..n * n)
            .map(|ij| {
                let (i, j) = (ij / n, ij % n);
                let mut row: SparseRow = self.basis_bracket(perm[i], perm[j]).iter().map(|(k, c)| (inv[*k], c.clone())).collect();
                row.sort_by_key(|e| e.0);
                row
            })
            .collect();
        let out = LieSuperalgebra { space, table, grading: None };
        match &self.grading {
            Some(g) => out.with_grading(perm.iter().map(|&p| g.labels[p]).collect(), g.compatible).unwrap(),
            None => out,
        }
    }

    /// Killing form `str(ad_x ad_y)` restricted to the span of `vectors`.
    pub fn killing_gram(&self, vectors: &[Vector]) -> Matrix {
        let ads: Vec<Matrix> = vectors.iter().map(|v| self.ad(v)).collect();
        let n = self.dim();
        let k = vectors.len();
        let mut g = Matrix::zeros(k, k);
        for a in 0..k {
            for b in a..k {
                let prod = ads[a].mul(&ads[b]);
                let mut s = Scalar::zero();
                for i in 0..n {
                    match self.parity(i) {
                        Parity::Even => s += &prod[(i, i)],
                        Parity::Odd => s -= &prod[(i, i)],
                    }
                }
                g[(a, b)] = s.clone();
                g[(b, a)] = s;
            }
        }
        g
    }

    pub fn is_lie_algebra(&self) -> bool {
        self.space.parities.iter().all(|p| !p.is_odd())
    }
}

impl fmt::Debug for LieSuperalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieSuperalgebra{} {:?}", self.dims(), self.space.names)
    }
}

/// `Σ c_i v_i`.
pub fn combine(coeffs: &[Scalar], vectors: &[Vector], dim: usize) -> Vector {
    let mut out = zero_vector(dim);
    for (c, v) in coeffs.iter().zip(vectors) {
        add_scaled(&mut out, c, v);
    }
    out
}

pub fn neg(v: &[Scalar]) -> Vector {
    scale(v, &Scalar::from_int(-1))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// gl(1|1) in the basis E11, E22, E12, E21.
    pub(crate) fn gl11() -> LieSuperalgebra {
        let space = SuperSpace::new(
            ["E11", "E22", "E12", "E21"].iter().map(|s| s.to_string()).collect(),
            vec![Parity::Even, Parity::Even, Parity::Odd, Parity::Odd],
        )
        .unwrap();
        let s = |xs: &[(usize, i64)]| xs.iter().map(|&(k, c)| (k, Scalar::from_int(c))).collect::<SparseRow>();
        LieSuperalgebra::from_upper(
            space,
            vec![(0, 2, s(&[(2, 1)])), (0, 3, s(&[(3, -1)])), (1, 2, s(&[(2, -1)])), (1, 3, s(&[(3, 1)])), (2, 3, s(&[(0, 1), (1, 1)]))],
        )
        .unwrap()
    }

    #[test]
    fn gl11_brackets() {
        let l = gl11();
        assert!(l.validate().is_empty());
        let e = |i| unit_vector(4, i);
        let one = Scalar::one();
        assert_eq!(l.bracket_eval(&e(2), &e(3)).unwrap(), vec![one.clone(), one.clone(), Scalar::zero(), Scalar::zero()]);
        assert!(is_zero_vector(&l.bracket(&e(2), &e(2))));
        let x = vec![Scalar::from_int(2), Scalar::from_int(-3), Scalar::zero(), Scalar::zero()];
        assert!(is_zero_vector(&l.bracket(&x, &x)));
        assert_eq!(l.center().len(), 1);
        assert!(l.bracket_eval(&e(2), &[Scalar::one()]).is_err());
    }

    #[test]
    fn flipped_sign_is_reported() {
        let l = gl11();
        let n = 4;
        let mut table: Vec<Vector> = (0..n * n)
            .map(|ij| {
                let mut v = zero_vector(n);
                for (k, c) in l.basis_bracket(ij / n, ij % n) {
                    v[*k] = c.clone();
                }
                v
            })
            .collect();
        table[2 * n + 3] = vec![Scalar::from_int(-1), Scalar::from_int(-1), Scalar::zero(), Scalar::zero()];
        let bad = LieSuperalgebra::from_full_table(l.space().clone(), table).unwrap();
        let report = bad.validate();
        assert!(report.violations.contains(&Violation::Skew { i: 2, j: 3 }));
    }

    #[test]
    fn abelian_and_quotients() {
        let a = LieSuperalgebra::abelian(2, 0);
        assert_eq!(a.center().len(), 2);
        assert!(a.derived_subalgebra().is_empty());
        let l = gl11();
        let all: Vec<Vector> = (0..4).map(|i| unit_vector(4, i)).collect();
        assert_eq!(l.quotient_by_ideal(&all).unwrap().dim(), 0);
        let ident = vec![Scalar::one(), Scalar::one(), Scalar::zero(), Scalar::zero()];
        let q = l.quotient_by_ideal(&[ident]).unwrap();
        assert_eq!(q.dims(), Dims::new(1, 2));
        assert!(q.validate().is_empty());
        assert!(matches!(l.quotient_by_ideal(&[unit_vector(4, 2)]), Err(Error::NotAnIdeal(_))));
        assert!(matches!(l.graded_component(0), Err(Error::NoGrading)));
    }

    #[test]
    fn sums_and_permutations() {
        let l = gl11();
        let s = l.direct_sum(&LieSuperalgebra::zero());
        assert_eq!(s.dims(), l.dims());
        assert!(s.validate().is_empty());
        let p = l.permuted(&[3, 1, 0, 2]);
        assert!(p.validate().is_empty());
        assert_eq!(p.center().len(), 1);
    }
}
