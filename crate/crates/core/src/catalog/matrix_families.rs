//! Matrix realizations: gl, sl, psl, q, sq, psq, spe, osp, D(2,1;a) and the
//! classical Lie algebras used as prehomogeneous data.

use crate::error::{Error, Result};
use crate::exactmath::matrix::{kernel_basis, unit_vector, Rref};
use crate::exactmath::sparse::SparseRow;
use crate::exactmath::{Matrix, Scalar, Vector};
use crate::supercore::{LieSuperalgebra, Parity, SuperSpace};

use super::realize::{flatten, matrix_algebra, MatrixModel, Shape};

fn entry_name(prefix: &str, i: usize, j: usize, size: usize) -> String {
    if size <= 9 {
        format!("{prefix}{}{}", i + 1, j + 1)
    } else {
        format!("{prefix}{}_{}", i + 1, j + 1)
    }
}

fn model(shape: Shape, names: Vec<String>, mats: &[Matrix]) -> Result<MatrixModel> {
    Ok(MatrixModel { shape, realized: matrix_algebra(shape, names, mats)?, quotient: None })
}

fn grade_labels(model: &MatrixModel, deg: impl Fn(usize, usize) -> i64) -> Vec<i64> {
    let size = model.shape.size();
    model
        .realized
        .elements
        .iter()
        .map(|e| {
            let k = e.iter().position(|c| !c.is_zero()).expect("nonzero basis matrix");
            deg(k / size, k % size)
        })
        .collect()
}

fn with_labels(mut m: MatrixModel, deg: impl Fn(usize, usize) -> i64, compatible: bool) -> Result<MatrixModel> {
    let labels = grade_labels(&m, deg);
    m.realized = m.realized.with_grading(labels, compatible)?;
    Ok(m)
}

fn principal(i: usize, j: usize) -> i64 {
    j as i64 - i as i64
}

/// `gl(m|n)`: even units first, then odd, each in row-major order.
pub fn gl(m: usize, n: usize) -> Result<MatrixModel> {
    if m + n == 0 {
        return Err(Error::BadParameters("gl(m|n) needs m + n ≥ 1".into()));
    }
    let shape = Shape::new(m, n);
    let size = shape.size();
    let mut names = Vec::new();
    let mut mats = Vec::new();
    for p in [Parity::Even, Parity::Odd] {
        for i in 0..size {
            for j in 0..size {
                if shape.entry_parity(i, j) == p {
                    names.push(entry_name("E", i, j, size));
                    mats.push(shape.unit(i, j));
                }
            }
        }
    }
    with_labels(model(shape, names, &mats)?, principal, false)
}

/// Which Z-grading to put on `sl(m|n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlGrading {
    /// `deg E_ij = j − i`
    Principal,
    /// odd upper-right block `+1`, lower-left `−1`
    Block,
}

/// `sl(m|n)`: Cartan elements, then even root vectors, then odd ones.
pub fn sl_graded(m: usize, n: usize, grading: SlGrading) -> Result<MatrixModel> {
    if m + n < 2 {
        return Err(Error::BadParameters("sl(m|n) needs m + n ≥ 2".into()));
    }
    let shape = Shape::new(m, n);
    let size = shape.size();
    let mut names = Vec::new();
    let mut mats = Vec::new();
    for k in 0..size - 1 {
        let mut h = shape.unit(k, k);
        let next = shape.unit(k + 1, k + 1);
        h = if k + 1 == m { h.add(&next) } else { h.sub(&next) };
        names.push(format!("h{}", k + 1));
        mats.push(h);
    }
    for p in [Parity::Even, Parity::Odd] {
        for i in 0..size {
            for j in 0..size {
                if i != j && shape.entry_parity(i, j) == p {
                    names.push(entry_name("E", i, j, size));
                    mats.push(shape.unit(i, j));
                }
            }
        }
    }
    let base = model(shape, names, &mats)?;
    match grading {
        SlGrading::Principal => with_labels(base, principal, false),
        SlGrading::Block => with_labels(base, move |i, j| block_degree(m, i, j), true),
    }
}

fn block_degree(m: usize, i: usize, j: usize) -> i64 {
    match (i < m, j < m) {
        (true, false) => 1,
        (false, true) => -1,
        _ => 0,
    }
}

pub fn sl(m: usize, n: usize) -> Result<MatrixModel> {
    sl_graded(m, n, SlGrading::Principal)
}

fn quotient_by_matrix(base: MatrixModel, central: &Matrix) -> Result<MatrixModel> {
    let z = base.realized.coords_of(&flatten(central)).ok_or_else(|| Error::InvalidAlgebra("central element outside algebra".into()))?;
    let algebra = base.realized.algebra.quotient_by_ideal(std::slice::from_ref(&z))?;
    let ideal = Rref::new(&[z], base.realized.algebra.dim());
    let complement = (0..base.realized.algebra.dim()).filter(|c| !ideal.pivots.contains(c)).collect();
    let mut realized = base.realized;
    realized.algebra = algebra;
    Ok(MatrixModel { shape: base.shape, realized, quotient: Some((ideal, complement)) })
}

/// `psl(n|n) = sl(n|n)/⟨I⟩` with the compatible block grading.
pub fn psl(n: usize) -> Result<MatrixModel> {
    if n < 2 {
        return Err(Error::BadParameters("psl(n|n) needs n ≥ 2".into()));
    }
    let base = sl_graded(n, n, SlGrading::Block)?;
    quotient_by_matrix(base, &Matrix::identity(2 * n))
}

fn q_even(n: usize, i: usize, j: usize) -> Matrix {
    let s = Shape::new(n, n);
    s.unit(i, j).add(&s.unit(n + i, n + j))
}

fn q_odd(n: usize, i: usize, j: usize) -> Matrix {
    let s = Shape::new(n, n);
    s.unit(i, n + j).add(&s.unit(n + i, j))
}

fn q_family(n: usize, traceless_odd: bool) -> Result<MatrixModel> {
    let mut names = Vec::new();
    let mut mats = Vec::new();
    for i in 0..n {
        for j in 0..n {
            names.push(entry_name("A", i, j, n));
            mats.push(q_even(n, i, j));
        }
    }
    if traceless_odd {
        for k in 0..n - 1 {
            names.push(format!("hB{}", k + 1));
            mats.push(q_odd(n, k, k).sub(&q_odd(n, k + 1, k + 1)));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !traceless_odd || i != j {
                names.push(entry_name("B", i, j, n));
                mats.push(q_odd(n, i, j));
            }
        }
    }
    model(Shape::new(n, n), names, &mats)
}

/// `q(n) = {[[A,B],[B,A]]}` with odd part `B`.
pub fn q(n: usize) -> Result<MatrixModel> {
    if n == 0 {
        return Err(Error::BadParameters("q(n) needs n ≥ 1".into()));
    }
    q_family(n, false)
}

/// `sq(n)`: the odd part is traceless.
pub fn sq(n: usize) -> Result<MatrixModel> {
    if n < 2 {
        return Err(Error::BadParameters("sq(n) needs n ≥ 2".into()));
    }
    q_family(n, true)
}

pub fn psq(n: usize) -> Result<MatrixModel> {
    if n < 3 {
        return Err(Error::BadParameters("psq(n) needs n ≥ 3".into()));
    }
    quotient_by_matrix(sq(n)?, &Matrix::identity(2 * n))
}

/// Odd q-type matrix `[[0,C],[C,0]]`.
pub fn q_odd_matrix(c: &Matrix) -> Matrix {
    let n = c.rows();
    let mut m = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            m[(i, n + j)] = c[(i, j)].clone();
            m[(n + i, j)] = c[(i, j)].clone();
        }
    }
    m
}

/// `I_n` in the upper-right (or lower-left) block of an `(n|n)` shape.
pub fn block_identity(shape: Shape, upper: bool) -> Matrix {
    let n = shape.even;
    let mut m = Matrix::zeros(shape.size(), shape.size());
    for i in 0..n.min(shape.odd) {
        if upper {
            m[(i, n + i)] = Scalar::one();
        } else {
            m[(n + i, i)] = Scalar::one();
        }
    }
    m
}

/// `spe(n) = {[[A,B],[C,−Aᵀ]] : B = Bᵀ, C = −Cᵀ, tr A = 0}`, graded by
/// `B ↦ 1`, `C ↦ −1`.
pub fn spe(n: usize) -> Result<MatrixModel> {
    if n < 2 {
        return Err(Error::BadParameters("spe(n) needs n ≥ 2".into()));
    }
    let shape = Shape::new(n, n);
    let a = |i: usize, j: usize| shape.unit(i, j).sub(&shape.unit(n + j, n + i));
    let mut names = Vec::new();
    let mut mats = Vec::new();
    for k in 0..n - 1 {
        names.push(format!("h{}", k + 1));
        mats.push(a(k, k).sub(&a(k + 1, k + 1)));
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                names.push(entry_name("A", i, j, n));
                mats.push(a(i, j));
            }
        }
    }
    for i in 0..n {
        for j in i..n {
            names.push(entry_name("B", i, j, n));
            let m = shape.unit(i, n + j);
            mats.push(if i == j { m } else { m.add(&shape.unit(j, n + i)) });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            names.push(entry_name("C", i, j, n));
            mats.push(shape.unit(n + i, j).sub(&shape.unit(n + j, i)));
        }
    }
    with_labels(model(shape, names, &mats)?, move |i, j| block_degree(n, i, j), true)
}

/// Standard form `diag(I_m, J)` with `J = [[0, I_n], [−I_n, 0]]`.
fn osp_form(m: usize, n: usize) -> Matrix {
    let size = m + 2 * n;
    let mut b = Matrix::zeros(size, size);
    for i in 0..m {
        b[(i, i)] = Scalar::one();
    }
    for i in 0..n {
        b[(m + i, m + n + i)] = Scalar::one();
        b[(m + n + i, m + i)] = -Scalar::one();
    }
    b
}

/// Homogeneous matrices `X` with `β(Xu,v) + (−1)^{|X||u|} β(u,Xv) = 0`.
fn form_preserving(shape: Shape, beta: &Matrix) -> Vec<(Parity, Matrix)> {
    let size = shape.size();
    let mut out = Vec::new();
    for p in [Parity::Even, Parity::Odd] {
        let slots: Vec<(usize, usize)> =
            (0..size).flat_map(|i| (0..size).map(move |j| (i, j))).filter(|&(i, j)| shape.entry_parity(i, j) == p).collect();
        let mut rows = Vec::new();
        for a in 0..size {
            for b in 0..size {
                // Σ_c X_ca β_cb + s β_ac X_cb
                let s = p.sign_scalar(shape.index_parity(a));
                let row: Vector = slots
                    .iter()
                    .map(|&(r, c)| {
                        let mut v = Scalar::zero();
                        if c == a {
                            v += &beta[(r, b)];
                        }
                        if c == b {
                            v += &(&s * &beta[(a, r)]);
                        }
                        v
                    })
                    .collect();
                rows.push(row);
            }
        }
        if slots.is_empty() {
            continue;
        }
        let sys = Matrix::from_rows(rows).expect("rectangular");
        for k in kernel_basis(&sys) {
            let mut x = Matrix::zeros(size, size);
            for (&(r, c), v) in slots.iter().zip(&k) {
                x[(r, c)] = v.clone();
            }
            out.push((p, x));
        }
    }
    out
}

fn numbered(mats: Vec<(Parity, Matrix)>) -> (Vec<String>, Vec<Matrix>) {
    let (mut ne, mut no) = (0, 0);
    let names = mats
        .iter()
        .map(|(p, _)| match p {
            Parity::Even => {
                ne += 1;
                format!("x{ne}")
            }
            Parity::Odd => {
                no += 1;
                format!("y{no}")
            }
        })
        .collect();
    (names, mats.into_iter().map(|(_, m)| m).collect())
}

/// `osp(m|2n)`.
pub fn osp(m: usize, n: usize) -> Result<MatrixModel> {
    if m == 0 || n == 0 {
        return Err(Error::BadParameters("osp(m|2n) needs m ≥ 1 and n ≥ 1".into()));
    }
    let shape = Shape::new(m, 2 * n);
    let (names, mats) = numbered(form_preserving(shape, &osp_form(m, n)));
    model(shape, names, &mats)
}

/// `sp(2n)` as matrices `X` with `XᵀJ + JX = 0`.
pub fn lie_sp(n: usize) -> Result<MatrixModel> {
    if n == 0 {
        return Err(Error::BadParameters("sp(2n) needs n ≥ 1".into()));
    }
    let shape = Shape::new(2 * n, 0);
    let (names, mats) = numbered(form_preserving(shape, &osp_form(0, n)));
    model(shape, names, &mats)
}

/// `so(n)` on the basis `E_ij − E_ji`, `i < j`.
pub fn lie_so(n: usize) -> Result<MatrixModel> {
    if n < 2 {
        return Err(Error::BadParameters("so(n) needs n ≥ 2".into()));
    }
    let shape = Shape::new(n, 0);
    let mut names = Vec::new();
    let mut mats = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            names.push(entry_name("M", i, j, n));
            mats.push(shape.unit(i, j).sub(&shape.unit(j, i)));
        }
    }
    model(shape, names, &mats)
}

pub fn lie_gl(n: usize) -> Result<MatrixModel> {
    gl(n, 0)
}

pub fn lie_sl(n: usize) -> Result<MatrixModel> {
    sl(n, 0)
}

/// Strictly upper triangular `n × n` matrices.
pub fn upper_triangular(n: usize) -> Result<MatrixModel> {
    if n < 2 {
        return Err(Error::BadParameters("uppertri needs n ≥ 2".into()));
    }
    let shape = Shape::new(n, 0);
    let mut names = Vec::new();
    let mut mats = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            names.push(entry_name("E", i, j, n));
            mats.push(shape.unit(i, j));
        }
    }
    with_labels(model(shape, names, &mats)?, principal, false)
}

/// `D(2,1;a)`: `sl(2)³ ⊕ V⊗V⊗V`. The odd-odd bracket is
/// `Σ_k σ_k ψ(u_i,v_i) ψ(u_j,v_j) p(u_k,v_k)`; the admissible `σ` are found
/// from the odd Jacobi identity and normalized to `σ = (1, a, σ₃)`.
pub fn d21a(a: &Scalar) -> Result<LieSuperalgebra> {
    if a.is_zero() || (a + &Scalar::one()).is_zero() {
        return Err(Error::BadParameters("D(2,1;a) needs a ∉ {0, −1}".into()));
    }
    let sigmas = d21_sigmas()?;
    // σ with σ₁ = 1, σ₂ = a inside the two-dimensional solution space
    let m = Matrix::from_rows(vec![vec![sigmas[0][0].clone(), sigmas[1][0].clone()], vec![sigmas[0][1].clone(), sigmas[1][1].clone()]])?;
    let sol = crate::exactmath::solve_linear(&m, &[Scalar::one(), a.clone()])?
        .ok_or_else(|| Error::InvalidAlgebra("D(2,1;a) normalization is singular".into()))?;
    let sigma: Vec<Scalar> = (0..3).map(|k| &(&sol.particular[0] * &sigmas[0][k]) + &(&sol.particular[1] * &sigmas[1][k])).collect();
    d21_with(&sigma)
}

/// Solution space of the odd Jacobi constraint for `σ`.
pub fn d21_sigmas() -> Result<Vec<Vector>> {
    let per: Vec<LieSuperalgebra> = (0..3).map(|k| d21_with(&unit_vector(3, k))).collect::<Result<_>>()?;
    let n = per[0].dim();
    let odd = per[0].indices(Parity::Odd);
    let mut rows: Vec<Vector> = Vec::new();
    let mut residuals: Vec<Vec<Vector>> = vec![Vec::new(); 3];
    for &x in &odd {
        for &y in &odd {
            for &z in &odd {
                for (k, l) in per.iter().enumerate() {
                    // [x,[y,z]] − [[x,y],z] − [y,[x,z]] for odd x, y; the triple is linear in σ
                    let (ex, ey, ez) = (unit_vector(n, x), unit_vector(n, y), unit_vector(n, z));
                    let lhs = l.bracket(&ex, &l.bracket(&ey, &ez));
                    let r1 = l.bracket(&l.bracket(&ex, &ey), &ez);
                    let r2 = l.bracket(&ey, &l.bracket(&ex, &ez));
                    residuals[k].push(lhs.iter().zip(&r1).zip(&r2).map(|((a, b), c)| &(a + c) - b).collect());
                }
            }
        }
    }
    // residual uses s = (−1)^{|x||y|} = −1 for odd x, y, hence the `+ c`
    for t in 0..residuals[0].len() {
        for c in 0..n {
            let row: Vector = (0..3).map(|k| residuals[k][t][c].clone()).collect();
            if row.iter().any(|v| !v.is_zero()) {
                rows.push(row);
            }
        }
    }
    let sys = Matrix::from_rows(rows)?;
    let k = kernel_basis(&sys);
    if k.len() != 2 {
        return Err(Error::InvalidAlgebra(format!("odd Jacobi constraint has a {}-dimensional solution space", k.len())));
    }
    Ok(k)
}

fn sl2_basis() -> [Matrix; 3] {
    [Matrix::from_ints(&[&[1, 0], &[0, -1]]), Matrix::from_ints(&[&[0, 1], &[0, 0]]), Matrix::from_ints(&[&[0, 0], &[1, 0]])]
}

/// Coordinates of a traceless 2×2 matrix in `(h, e, f)`.
fn sl2_coords(m: &Matrix) -> [Scalar; 3] {
    [m[(0, 0)].clone(), m[(0, 1)].clone(), m[(1, 0)].clone()]
}

fn d21_with(sigma: &[Scalar]) -> Result<LieSuperalgebra> {
    let basis = sl2_basis();
    let j = Matrix::from_ints(&[&[0, 1], &[-1, 0]]);
    let psi = |u: usize, v: usize| j[(u, v)].clone();
    // p(u,v) = u ψ(v,·) + v ψ(u,·), symmetric and traceless
    let p = |u: usize, v: usize| {
        let mut m = Matrix::zeros(2, 2);
        for w in 0..2 {
            m[(u, w)] += &j[(v, w)];
            m[(v, w)] += &j[(u, w)];
        }
        sl2_coords(&m)
    };
    let mut names = Vec::new();
    let mut parities = Vec::new();
    for k in 1..=3 {
        for s in ["h", "e", "f"] {
            names.push(format!("{s}{k}"));
            parities.push(Parity::Even);
        }
    }
    let triples: Vec<[usize; 3]> = (0..8).map(|t| [(t >> 2) & 1, (t >> 1) & 1, t & 1]).collect();
    for t in &triples {
        names.push(format!("v{}{}{}", t[0] + 1, t[1] + 1, t[2] + 1));
        parities.push(Parity::Odd);
    }
    let n = 17;
    let odd_index = |t: &[usize; 3]| 9 + 4 * t[0] + 2 * t[1] + t[2];
    let space = SuperSpace::new(names, parities)?;
    let mut brackets = Vec::new();
    let push = |out: &mut Vec<(usize, usize, SparseRow)>, i: usize, j: usize, v: Vector| {
        let row: Vec<(usize, Scalar)> = v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        if !row.is_empty() {
            out.push((i, j, row));
        }
    };
    // even-even: three commuting copies of sl(2)
    for k in 0..3 {
        for a in 0..3 {
            for b in a..3 {
                let c = basis[a].mul(&basis[b]).sub(&basis[b].mul(&basis[a]));
                let mut v = vec![Scalar::zero(); n];
                for (q, x) in sl2_coords(&c).into_iter().enumerate() {
                    v[3 * k + q] = x;
                }
                push(&mut brackets, 3 * k + a, 3 * k + b, v);
            }
        }
    }
    // even-odd: factorwise action
    for k in 0..3 {
        for a in 0..3 {
            for t in &triples {
                let mut v = vec![Scalar::zero(); n];
                for w in 0..2 {
                    let c = &basis[a][(w, t[k])];
                    if !c.is_zero() {
                        let mut t2 = *t;
                        t2[k] = w;
                        v[odd_index(&t2)] += c;
                    }
                }
                push(&mut brackets, 3 * k + a, odd_index(t), v);
            }
        }
    }
    // odd-odd
    for (x, t) in triples.iter().enumerate() {
        for u in &triples[x..] {
            let mut v = vec![Scalar::zero(); n];
            for k in 0..3 {
                let (i1, i2) = ((k + 1) % 3, (k + 2) % 3);
                let c = &(&sigma[k] * &psi(t[i1], u[i1])) * &psi(t[i2], u[i2]);
                if c.is_zero() {
                    continue;
                }
                for (q, y) in p(t[k], u[k]).iter().enumerate() {
                    v[3 * k + q] += &(&c * y);
                }
            }
            push(&mut brackets, odd_index(t), odd_index(u), v);
        }
    }
    LieSuperalgebra::from_upper(space, brackets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::supercore::Dims;

    fn check(m: &MatrixModel, dims: (usize, usize)) {
        let l = &m.realized.algebra;
        assert_eq!(l.dims(), Dims::new(dims.0, dims.1));
        assert!(l.validate().is_empty(), "{:?}", l.validate());
    }

    #[test]
    fn dimensions() {
        check(&gl(2, 1).unwrap(), (5, 4));
        check(&sl(2, 1).unwrap(), (4, 4));
        check(&psl(2).unwrap(), (6, 8));
        check(&q(2).unwrap(), (4, 4));
        check(&sq(3).unwrap(), (9, 8));
        check(&psq(3).unwrap(), (8, 8));
        check(&spe(3).unwrap(), (8, 9));
        check(&osp(1, 1).unwrap(), (3, 2));
        check(&osp(3, 1).unwrap(), (6, 6));
        check(&osp(4, 1).unwrap(), (9, 8));
        check(&lie_sp(2).unwrap(), (10, 0));
        check(&lie_so(4).unwrap(), (6, 0));
        check(&upper_triangular(3).unwrap(), (3, 0));
    }

    #[test]
    fn d21_normalization() {
        let a = Scalar::from_int(2);
        let l = d21a(&a).unwrap();
        assert_eq!(l.dims(), Dims::new(9, 8));
        assert!(l.validate().is_empty());
        // every admissible σ sums to zero, so σ₃ = −1 − a
        for s in d21_sigmas().unwrap() {
            assert!((&(&s[0] + &s[1]) + &s[2]).is_zero());
        }
        assert!(d21a(&Scalar::from_int(-1)).is_err());
    }

    #[test]
    fn quotient_model_coordinates() {
        let m = psq(3).unwrap();
        let x = q_odd_matrix(&Matrix::from_ints(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]));
        let c = m.coords_of(&x).unwrap();
        assert_eq!(m.coords_of(&m.matrix_of(&c)).unwrap(), c);
        assert!(m.coords_of(&Matrix::identity(6)).unwrap().iter().all(Scalar::is_zero));
    }

    #[test]
    fn graded_models() {
        let l = psl(2).unwrap().realized.algebra;
        assert!(l.grading().unwrap().compatible);
        assert_eq!(l.grades(), vec![-1, 0, 1]);
        assert!(!gl(1, 1).unwrap().realized.algebra.grading().unwrap().compatible);
    }
}
