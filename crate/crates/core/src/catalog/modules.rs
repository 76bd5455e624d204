//! Lie algebras used as prehomogeneous data and their modules.

use crate::error::{Error, Result};
use crate::exactmath::{Matrix, MultiPoly, RatFunc, Scalar};
use crate::supercore::LieSuperalgebra;

use super::matrix_families::{lie_gl, lie_sl, lie_so, lie_sp, upper_triangular};
use super::realize::MatrixModel;

/// A classical Lie algebra given by its defining matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LieKind {
    Sl(usize),
    Gl(usize),
    /// `sp(2n)`
    Sp(usize),
    So(usize),
    UpperTriangular(usize),
}

impl LieKind {
    pub fn parse(family: &str, n: &str) -> Result<LieKind> {
        let n: usize = n.trim().parse().map_err(|_| Error::Parse(format!("bad size '{n}'")))?;
        Ok(match family.trim() {
            "sl" => LieKind::Sl(n),
            "gl" => LieKind::Gl(n),
            "sp" if n.is_multiple_of(2) => LieKind::Sp(n / 2),
            "sp" => return Err(Error::BadParameters("sp(m) needs even m".into())),
            "so" => LieKind::So(n),
            "uppertri" => LieKind::UpperTriangular(n),
            other => return Err(Error::Parse(format!("unknown Lie algebra '{other}'"))),
        })
    }

    pub fn model(&self) -> Result<MatrixModel> {
        match *self {
            LieKind::Sl(n) => lie_sl(n),
            LieKind::Gl(n) => lie_gl(n),
            LieKind::Sp(n) => lie_sp(n),
            LieKind::So(n) => lie_so(n),
            LieKind::UpperTriangular(n) => upper_triangular(n),
        }
    }

    pub fn label(&self) -> String {
        match *self {
            LieKind::Sl(n) => format!("sl:{n}"),
            LieKind::Gl(n) => format!("gl:{n}"),
            LieKind::Sp(n) => format!("sp:{}", 2 * n),
            LieKind::So(n) => format!("so:{n}"),
            LieKind::UpperTriangular(n) => format!("uppertri:{n}"),
        }
    }
}

/// Representation given by the images of the basis of `g`.
#[derive(Clone, Debug)]
pub struct Module {
    pub name: String,
    pub dim: usize,
    pub action: Vec<Matrix>,
}

impl Module {
    pub fn standard(g: &MatrixModel) -> Module {
        let size = g.shape.size();
        let action = (0..g.realized.algebra.dim())
            .map(|i| g.matrix_of(&crate::exactmath::matrix::unit_vector(g.realized.algebra.dim(), i)))
            .collect();
        Module { name: "std".into(), dim: size, action }
    }

    pub fn dual(&self) -> Module {
        let action = self.action.iter().map(|m| m.transpose().scaled(&-Scalar::one())).collect();
        Module { name: format!("dual({})", self.name), dim: self.dim, action }
    }

    /// `Λ²` on the basis `e_a ∧ e_b`, `a < b`.
    pub fn wedge2(&self) -> Module {
        let pairs: Vec<(usize, usize)> = (0..self.dim).flat_map(|a| (a + 1..self.dim).map(move |b| (a, b))).collect();
        let index = |a: usize, b: usize| pairs.iter().position(|&p| p == (a.min(b), a.max(b)));
        let action = self
            .action
            .iter()
            .map(|x| {
                let mut m = Matrix::zeros(pairs.len(), pairs.len());
                for (col, &(a, b)) in pairs.iter().enumerate() {
                    // X(e_a ∧ e_b) = Xe_a ∧ e_b + e_a ∧ Xe_b
                    for c in 0..self.dim {
                        let xa = &x[(c, a)];
                        if !xa.is_zero() && c != b {
                            let s = if c < b { xa.clone() } else { -xa.clone() };
                            m[(index(c, b).unwrap(), col)] += &s;
                        }
                        let xb = &x[(c, b)];
                        if !xb.is_zero() && c != a {
                            let s = if a < c { xb.clone() } else { -xb.clone() };
                            m[(index(a, c).unwrap(), col)] += &s;
                        }
                    }
                }
                m
            })
            .collect();
        Module { name: format!("wedge2({})", self.name), dim: pairs.len(), action }
    }

    /// `S²` on the basis `e_a e_b`, `a ≤ b`.
    pub fn sym2(&self) -> Module {
        let pairs: Vec<(usize, usize)> = (0..self.dim).flat_map(|a| (a..self.dim).map(move |b| (a, b))).collect();
        let index = |a: usize, b: usize| pairs.iter().position(|&p| p == (a.min(b), a.max(b))).unwrap();
        let action = self
            .action
            .iter()
            .map(|x| {
                let mut m = Matrix::zeros(pairs.len(), pairs.len());
                for (col, &(a, b)) in pairs.iter().enumerate() {
                    for c in 0..self.dim {
                        m[(index(c, b), col)] += &x[(c, a)];
                        m[(index(a, c), col)] += &x[(c, b)];
                    }
                }
                m
            })
            .collect();
        Module { name: format!("sym2({})", self.name), dim: pairs.len(), action }
    }

    /// `V ⊗ W` for the sum `g ⊕ h`, with `g` acting on `V` and `h` on `W`.
    pub fn outer_tensor(&self, other: &Module) -> Module {
        let (p, q) = (self.dim, other.dim);
        let kron = |a: &Matrix, b: &Matrix| {
            let mut m = Matrix::zeros(p * q, p * q);
            for i in 0..a.rows() {
                for j in 0..a.cols() {
                    for k in 0..b.rows() {
                        for l in 0..b.cols() {
                            m[(i * q + k, j * q + l)] = &a[(i, j)] * &b[(k, l)];
                        }
                    }
                }
            }
            m
        };
        let mut action: Vec<Matrix> = self.action.iter().map(|x| kron(x, &Matrix::identity(q))).collect();
        action.extend(other.action.iter().map(|y| kron(&Matrix::identity(p), y)));
        Module { name: format!("{}*{}", self.name, other.name), dim: p * q, action }
    }

    /// `ρ([x_i, x_j]) = [ρ(x_i), ρ(x_j)]` on all basis pairs.
    pub fn is_representation_of(&self, g: &LieSuperalgebra) -> bool {
        if self.action.len() != g.dim() {
            return false;
        }
        let n = g.dim();
        (0..n).all(|i| {
            (i..n).all(|j| {
                let lhs = self.action_of(&g.bracket(&unit(n, i), &unit(n, j)));
                let (a, b) = (&self.action[i], &self.action[j]);
                lhs == a.mul(b).sub(&b.mul(a))
            })
        })
    }

    /// `ρ(x)` for `x` in coordinates of `g`.
    pub fn action_of(&self, x: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (c, a) in x.iter().zip(&self.action) {
            if !c.is_zero() {
                m = m.add(&a.scaled(c));
            }
        }
        m
    }
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    crate::exactmath::matrix::unit_vector(n, i)
}

/// Module spec: `std`, `dual`, `wedge2`, `sym2`, optionally applied to `dual`
/// (`wedge2:dual`).
pub fn module_for(g: &MatrixModel, spec: &str) -> Result<Module> {
    let std = Module::standard(g);
    let mut parts = spec.trim().split(':').rev();
    let base = match parts.next() {
        Some("std") => std,
        Some("dual") => std.dual(),
        Some("wedge2") => std.wedge2(),
        Some("sym2") => std.sym2(),
        _ => return Err(Error::Parse(format!("unknown module '{spec}'"))),
    };
    parts.try_fold(base, |m, op| match op {
        "dual" => Ok(m.dual()),
        "wedge2" => Ok(m.wedge2()),
        "sym2" => Ok(m.sym2()),
        _ => Err(Error::Parse(format!("unknown module operation '{op}'"))),
    })
}

/// A prehomogeneous pair: a Lie algebra (possibly a sum of classical ones)
/// with a module.
#[derive(Clone, Debug)]
pub struct PairGV {
    pub label: String,
    pub g: LieSuperalgebra,
    pub module: Module,
    /// the first factor's model and kind, for explicit stabilizer selectors
    pub factors: Vec<(LieKind, MatrixModel)>,
    pub module_spec: String,
}

impl PairGV {
    /// `g-spec` is `kind:n` or `kind:n+kind:n`; `V-spec` names one module per
    /// factor, separated by `*` (outer tensor product).
    pub fn parse(g_spec: &str, v_spec: &str) -> Result<PairGV> {
        let kinds: Vec<LieKind> = g_spec
            .split('+')
            .map(|part| {
                let (f, n) = part.split_once(':').ok_or_else(|| Error::Parse(format!("bad Lie algebra spec '{part}'")))?;
                LieKind::parse(f, n)
            })
            .collect::<Result<_>>()?;
        let mods: Vec<&str> = v_spec.split('*').collect();
        if mods.len() != kinds.len() {
            return Err(Error::Dimension(format!("{} factors but {} module specs", kinds.len(), mods.len())));
        }
        let mut factors = Vec::new();
        let mut g: Option<LieSuperalgebra> = None;
        let mut module: Option<Module> = None;
        for (kind, m) in kinds.into_iter().zip(&mods) {
            let model = kind.model()?;
            let v = module_for(&model, m)?;
            let a = model.realized.algebra.clone().without_grading();
            g = Some(match g {
                None => a,
                Some(prev) => prev.direct_sum(&a),
            });
            module = Some(match module {
                None => v,
                Some(prev) => prev.outer_tensor(&v),
            });
            factors.push((kind, model));
        }
        let (g, module) = (g.expect("nonempty"), module.expect("nonempty"));
        let label = format!("({g_spec}, {v_spec})");
        Ok(PairGV { label, g, module, factors, module_spec: v_spec.to_string() })
    }

    pub fn from_parts(label: &str, g: LieSuperalgebra, module: Module) -> Result<PairGV> {
        if !module.is_representation_of(&g) {
            return Err(Error::Dimension("action data is not a representation".into()));
        }
        Ok(PairGV { label: label.into(), g, module, factors: Vec::new(), module_spec: String::new() })
    }

    /// Explicit rational `Y(v)` with `ρ(Y)v = v` on the chart `v_j ≠ 0`, in
    /// coordinates of `g`, when one is known for this pair.
    pub fn stabilizer_selector(&self, v: &[RatFunc], j: usize) -> Option<Vec<RatFunc>> {
        let [(kind, model)] = self.factors.as_slice() else { return None };
        let nvars = v[0].nvars();
        let entries = match (kind, self.module_spec.as_str()) {
            (LieKind::Sl(n), "std") => sl_stabilizer(*n, v, j)?,
            (LieKind::Sl(n), "dual") => {
                // ρ(Y) = −Yᵀ, so Y = −Xᵀ for the standard stabilizer X
                transpose_neg(&sl_stabilizer(*n, v, j)?)
            }
            (LieKind::Sp(n), "std") => sp_stabilizer(*n, v, j),
            _ => return None,
        };
        let flat: Vec<RatFunc> = entries.into_iter().flatten().collect();
        Some(model.realized.symbolic_coords(&flat, nvars))
    }
}

fn transpose_neg(m: &[Vec<RatFunc>]) -> Vec<Vec<RatFunc>> {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i].neg()).collect()).collect()
}

/// `v e_jᵀ/v_j + e_i(−e_i + (v_i/v_j) e_j)ᵀ` with `i = j + 1 mod n`: traceless
/// and maps `v` to `v`.
pub fn sl_stabilizer(n: usize, v: &[RatFunc], j: usize) -> Option<Vec<Vec<RatFunc>>> {
    if n < 2 || j >= n {
        return None;
    }
    let nvars = v[0].nvars();
    let i = (j + 1) % n;
    let vj = &v[j];
    let over_vj = |x: &RatFunc| -> Option<RatFunc> {
        let num = x.num.mul(&vj.den);
        let den = x.den.mul(&vj.num);
        RatFunc::new(num, den).ok()
    };
    let mut m = vec![vec![RatFunc::zero(nvars); n]; n];
    for (r, row) in m.iter_mut().enumerate() {
        row[j] = over_vj(&v[r])?;
    }
    m[i][i] = m[i][i].sub(&RatFunc::constant(nvars, Scalar::one()));
    m[i][j] = m[i][j].add(&over_vj(&v[i])?);
    Some(m)
}

/// `J(y zᵀ + z yᵀ)` with `y = −Jv`, `z = e_j/v_j`, for the form `J = [[0,I],[−I,0]]`.
pub fn sp_stabilizer(n: usize, v: &[RatFunc], j: usize) -> Vec<Vec<RatFunc>> {
    let size = 2 * n;
    let nvars = v[0].nvars();
    let jm = |a: usize, b: usize| -> i64 {
        if b == a + n && a < n {
            1
        } else if a == b + n && b < n {
            -1
        } else {
            0
        }
    };
    // y = −Jv
    let y: Vec<RatFunc> = (0..size)
        .map(|a| {
            (0..size).fold(RatFunc::zero(nvars), |acc, b| match jm(a, b) {
                0 => acc,
                s => acc.sub(&v[b].scale(&Scalar::from_int(s))),
            })
        })
        .collect();
    let inv_vj = RatFunc::new(v[j].den.clone(), v[j].num.clone()).expect("chart variable is nonzero");
    let mut s = vec![vec![RatFunc::zero(nvars); size]; size];
    for a in 0..size {
        s[a][j] = s[a][j].add(&y[a].mul(&inv_vj));
        s[j][a] = s[j][a].add(&y[a].mul(&inv_vj));
    }
    (0..size)
        .map(|a| {
            (0..size)
                .map(|b| {
                    (0..size).fold(RatFunc::zero(nvars), |acc, c| match jm(a, c) {
                        0 => acc,
                        k => acc.add(&s[c][b].scale(&Scalar::from_int(k))),
                    })
                })
                .collect()
        })
        .collect()
}

/// Coordinate variables `t_0, …, t_{k−1}` as rational functions.
pub fn variables(nvars: usize, slots: &[usize]) -> Vec<RatFunc> {
    slots.iter().map(|&s| RatFunc::poly(MultiPoly::var(nvars, s))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modules_are_representations() {
        let g = lie_sl(3).unwrap();
        for spec in ["std", "dual", "wedge2", "sym2", "wedge2:dual"] {
            let m = module_for(&g, spec).unwrap();
            assert!(m.is_representation_of(&g.realized.algebra), "{spec}");
        }
        assert_eq!(module_for(&lie_sl(5).unwrap(), "wedge2").unwrap().dim, 10);
        let pair = PairGV::parse("sl:2+sl:3", "std*std").unwrap();
        assert_eq!(pair.module.dim, 6);
        assert!(pair.module.is_representation_of(&pair.g));
    }

    fn eval(m: &[Vec<RatFunc>], p: &[Scalar]) -> Matrix {
        let rows = m
            .iter()
            .map(|r| {
                r.iter()
                    .map(|f| {
                        let d = f.den.eval(p);
                        &f.num.eval(p) * &d.inv().unwrap()
                    })
                    .collect()
            })
            .collect();
        Matrix::from_rows(rows).unwrap()
    }

    #[test]
    fn stabilizers_fix_v() {
        let vars = variables(4, &[0, 1, 2, 3]);
        let p: Vec<Scalar> = [2, -1, 3, 5].iter().map(|&x| Scalar::from_int(x)).collect();
        for j in 0..4 {
            let x = eval(&sl_stabilizer(4, &vars, j).unwrap(), &p);
            assert!(x.trace().is_zero());
            assert_eq!(x.mul_vec(&p), p);
            let y = eval(&sp_stabilizer(2, &vars, j), &p);
            assert_eq!(y.mul_vec(&p), p);
        }
    }
}
