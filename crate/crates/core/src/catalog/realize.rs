//! Algebras realized inside an ambient bracket space (matrices, vector fields).

use crate::error::{Error, Result};
use crate::exactmath::matrix::{BasisCoordinates, Rref};
use crate::exactmath::{Matrix, RatFunc, Scalar, Vector};
use crate::supercore::{LieSuperalgebra, Parity, SuperSpace};

/// A Lie superalgebra together with the ambient vectors of its basis.
#[derive(Clone, Debug)]
pub struct Realized {
    pub algebra: LieSuperalgebra,
    pub elements: Vec<Vector>,
    coords: BasisCoordinates,
}

impl Realized {
    /// Structure constants from an ambient bracket; fails if the span is not closed.
    pub fn new(
        names: Vec<String>,
        parities: Vec<Parity>,
        elements: Vec<Vector>,
        ambient_dim: usize,
        bracket: impl Fn(&Vector, Parity, &Vector, Parity) -> Vector,
    ) -> Result<Self> {
        let coords = BasisCoordinates::new(&elements, ambient_dim)?;
        let space = SuperSpace::new(names, parities.clone())?;
        let mut failure = None;
        let algebra = LieSuperalgebra::from_fn(space, |i, j| {
            let v = bracket(&elements[i], parities[i], &elements[j], parities[j]);
            coords.coordinates(&v).unwrap_or_else(|| {
                failure.get_or_insert((i, j));
                vec![Scalar::zero(); elements.len()]
            })
        })?;
        if let Some((i, j)) = failure {
            return Err(Error::InvalidAlgebra(format!("span is not closed under the bracket: [{}, {}]", algebra.name(i), algebra.name(j))));
        }
        Ok(Realized { algebra, elements, coords })
    }

    pub fn with_grading(mut self, labels: Vec<i64>, compatible: bool) -> Result<Self> {
        self.algebra = self.algebra.with_grading(labels, compatible)?;
        Ok(self)
    }

    /// Coordinates of an ambient vector in the algebra basis.
    pub fn coords_of(&self, v: &[Scalar]) -> Option<Vector> {
        self.coords.coordinates(v)
    }

    /// Coordinates of a symbolic ambient vector known to lie in the span.
    pub fn symbolic_coords(&self, v: &[RatFunc], nvars: usize) -> Vec<RatFunc> {
        self.coords
            .functionals()
            .iter()
            .map(|f| {
                let mut acc = RatFunc::zero(nvars);
                for (p, w) in f {
                    if !v[*p].is_zero() {
                        acc = acc.add(&v[*p].scale(w));
                    }
                }
                acc
            })
            .collect()
    }
}

/// Super matrix space `gl(m|n)`: index `i` is odd iff `i ≥ m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    pub even: usize,
    pub odd: usize,
}

impl Shape {
    pub fn new(even: usize, odd: usize) -> Self {
        Shape { even, odd }
    }

    pub fn size(self) -> usize {
        self.even + self.odd
    }

    pub fn index_parity(self, i: usize) -> Parity {
        if i < self.even {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn entry_parity(self, i: usize, j: usize) -> Parity {
        self.index_parity(i) + self.index_parity(j)
    }

    pub fn unit(self, i: usize, j: usize) -> Matrix {
        let mut m = Matrix::zeros(self.size(), self.size());
        m[(i, j)] = Scalar::one();
        m
    }

    /// Supertrace.
    pub fn str(self, m: &Matrix) -> Scalar {
        let mut s = Scalar::zero();
        for i in 0..self.size() {
            match self.index_parity(i) {
                Parity::Even => s += &m[(i, i)],
                Parity::Odd => s -= &m[(i, i)],
            }
        }
        s
    }
}

pub fn flatten(m: &Matrix) -> Vector {
    m.entries().to_vec()
}

pub fn unflatten(v: &[Scalar], size: usize) -> Matrix {
    let rows = v.chunks(size).map(|r| r.to_vec()).collect();
    Matrix::from_rows(rows).expect("square")
}

/// `XY − (−1)^{|X||Y|} YX` on flattened matrices.
pub fn supercommutator(size: usize) -> impl Fn(&Vector, Parity, &Vector, Parity) -> Vector {
    move |x, p, y, q| {
        let (a, b) = (unflatten(x, size), unflatten(y, size));
        let s = p.sign_scalar(q);
        flatten(&a.mul(&b).sub(&b.mul(&a).scaled(&s)))
    }
}

/// Realizes a span of homogeneous super matrices.
pub fn matrix_algebra(shape: Shape, names: Vec<String>, mats: &[Matrix]) -> Result<Realized> {
    let size = shape.size();
    let mut parities = Vec::with_capacity(mats.len());
    for m in mats {
        let mut p = None;
        for i in 0..size {
            for j in 0..size {
                if !m[(i, j)].is_zero() {
                    let q = shape.entry_parity(i, j);
                    if p.is_some_and(|p| p != q) {
                        return Err(Error::InvalidAlgebra("inhomogeneous basis matrix".into()));
                    }
                    p = Some(q);
                }
            }
        }
        parities.push(p.unwrap_or(Parity::Even));
    }
    let elements = mats.iter().map(flatten).collect();
    Realized::new(names, parities, elements, size * size, supercommutator(size))
}

/// Coordinates of matrices in a matrix algebra or in a quotient of one.
#[derive(Clone, Debug)]
pub struct MatrixModel {
    pub shape: Shape,
    pub realized: Realized,
    /// ideal (in realized coordinates) and complement indices, for quotients
    pub quotient: Option<(Rref, Vec<usize>)>,
}

impl MatrixModel {
    pub fn coords_of(&self, m: &Matrix) -> Option<Vector> {
        let c = self.realized.coords_of(&flatten(m))?;
        match &self.quotient {
            None => Some(c),
            Some((ideal, complement)) => {
                let r = ideal.reduce(&c);
                Some(complement.iter().map(|&k| r[k].clone()).collect())
            }
        }
    }

    /// Matrix of an element given in algebra coordinates (a lift, for quotients).
    pub fn matrix_of(&self, coords: &[Scalar]) -> Matrix {
        let size = self.shape.size();
        let mut v = vec![Scalar::zero(); size * size];
        let full: Vec<(usize, &Scalar)> = match &self.quotient {
            None => coords.iter().enumerate().collect(),
            Some((_, complement)) => complement.iter().copied().zip(coords).collect(),
        };
        for (k, c) in full {
            crate::exactmath::matrix::add_scaled(&mut v, c, &self.realized.elements[k]);
        }
        unflatten(&v, size)
    }
}
