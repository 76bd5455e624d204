//! Kernels of large sparse homogeneous systems over Q.
//!
//! The system is first reduced modulo a 61-bit prime, the kernel basis is
//! lifted by rational reconstruction, and every lifted vector is checked
//! against the original equations exactly. Since the rank over Q is at least
//! the rank modulo p, verified lifts that are independent modulo p span the
//! exact kernel. If any step fails the exact sparse elimination is used.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::matrix::{zero_vector, Vector};
use super::scalar::Scalar;
use super::sparse::{SparseEchelon, SparseRow};

const P: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64) -> u64 {
    pow_mod(a, P - 2)
}

fn int_mod(n: &BigInt) -> u64 {
    let r = n.mod_floor(&BigInt::from(P));
    r.to_u64().expect("reduced residue fits")
}

fn scalar_mod(s: &Scalar) -> Option<u64> {
    let q = s.as_rational()?;
    let den = int_mod(q.denom());
    if den == 0 {
        return None;
    }
    Some(mul_mod(int_mod(q.numer()), inv_mod(den)))
}

/// Smallest `r/s ≡ a (mod P)` with `|r|, s ≤ sqrt(P/2)`.
fn reconstruct(a: u64) -> Option<BigRational> {
    let bound: i128 = ((P / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (P as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    let (num, den) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    Some(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

/// Incremental reduced row echelon form over Z/P with dense pivot rows.
struct ModRref {
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivot_row: Vec<Option<usize>>,
    pivots: Vec<usize>,
}

impl ModRref {
    fn new(cols: usize) -> Self {
        ModRref { cols, rows: Vec::new(), pivot_row: vec![None; cols], pivots: Vec::new() }
    }

    fn push(&mut self, sparse: &[(usize, u64)]) {
        let mut r = vec![0_u64; self.cols];
        for &(c, v) in sparse {
            r[c] = v;
        }
        // pivot rows vanish on every other pivot column, so the original
        // support already lists every pivot column that must be cleared
        for &(c, _) in sparse {
            if let Some(pr) = self.pivot_row[c] {
                let coef = r[c];
                if coef != 0 {
                    let row = &self.rows[pr];
                    for (x, &y) in r.iter_mut().zip(row) {
                        if y != 0 {
                            *x = (*x + P - mul_mod(coef, y)) % P;
                        }
                    }
                }
            }
        }
        let Some(lead) = r.iter().position(|&x| x != 0) else { return };
        let inv = inv_mod(r[lead]);
        for x in r.iter_mut() {
            if *x != 0 {
                *x = mul_mod(*x, inv);
            }
        }
        for row in self.rows.iter_mut() {
            let coef = row[lead];
            if coef != 0 {
                for (x, &y) in row.iter_mut().zip(&r) {
                    if y != 0 {
                        *x = (*x + P - mul_mod(coef, y)) % P;
                    }
                }
            }
        }
        self.pivot_row[lead] = Some(self.rows.len());
        self.pivots.push(lead);
        self.rows.push(r);
    }
}

fn lifted_kernel(rows: &[SparseRow], cols: usize) -> Option<Vec<Vector>> {
    let mut rref = ModRref::new(cols);
    for row in rows {
        let m: Option<Vec<(usize, u64)>> = row.iter().map(|(c, v)| scalar_mod(v).map(|x| (*c, x))).collect();
        rref.push(&m?);
        if rref.pivots.len() == cols {
            return Some(Vec::new());
        }
    }
    let mut kernel = Vec::new();
    for f in (0..cols).filter(|&c| rref.pivot_row[c].is_none()) {
        let mut x = zero_vector(cols);
        x[f] = Scalar::one();
        for (&p, row) in rref.pivots.iter().zip(&rref.rows) {
            if row[f] != 0 {
                x[p] = Scalar::from_rational(-reconstruct(row[f])?);
            }
        }
        kernel.push(x);
    }
    let exact = kernel.iter().all(|x| {
        rows.iter().all(|row| {
            let mut acc = Scalar::zero();
            for (c, v) in row {
                if !x[*c].is_zero() {
                    acc += &(v * &x[*c]);
                }
            }
            acc.is_zero()
        })
    });
    exact.then_some(kernel)
}

/// Exact kernel basis of the sparse system `rows · x = 0`.
pub fn sparse_kernel(rows: &[SparseRow], cols: usize) -> Vec<Vector> {
    if cols == 0 {
        return Vec::new();
    }
    if let Some(k) = lifted_kernel(rows, cols) {
        return k;
    }
    let mut e = SparseEchelon::new(cols);
    for row in rows {
        e.push(row.clone());
        if e.is_full() {
            break;
        }
    }
    e.kernel()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::matrix::{kernel_basis, Matrix};
    use proptest::prelude::*;

    #[test]
    fn reconstruction_roundtrip() {
        for (p, q) in [(1i64, 3i64), (-7, 12), (123456, 789), (0, 1)] {
            let x = scalar_mod(&Scalar::from_frac(p, q)).unwrap();
            assert_eq!(reconstruct(x).unwrap(), BigRational::new(p.into(), q.into()));
        }
    }

    #[test]
    fn irrational_entries_use_exact_path() {
        let s2 = Scalar::sqrt_of(2);
        let rows = vec![vec![(0, Scalar::one()), (1, s2.clone())]];
        let k = sparse_kernel(&rows, 2);
        assert_eq!(k.len(), 1);
        assert!((&k[0][0] + &(&s2 * &k[0][1])).is_zero());
    }

    proptest! {
        #[test]
        fn agrees_with_dense(entries in proptest::collection::vec(-3i64..=3, 20)) {
            let rows: Vec<Vec<i64>> = entries.chunks(5).map(|c| c.to_vec()).collect();
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let dense = Matrix::from_ints(&refs);
            let sparse: Vec<SparseRow> = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|(_, &v)| v != 0).map(|(c, &v)| (c, Scalar::from_int(v))).collect())
                .collect();
            let k = sparse_kernel(&sparse, 5);
            prop_assert_eq!(k.len(), kernel_basis(&dense).len());
            for v in &k {
                prop_assert!(dense.mul_vec(v).iter().all(Scalar::is_zero));
            }
        }
    }
}
