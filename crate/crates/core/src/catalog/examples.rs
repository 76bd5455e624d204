//! Worked examples with distinguished derivations and built-in selector
//! certificates: the transitive-module constructions, the block examples,
//! Takiff superalgebras and the odd derivation of `psq(n)`.

use crate::almostinner::{lift_to_sum, zero_selector, Piece, SelectorCertificate};
use crate::derivations::{euler_derivation, Derivation, Provenance};
use crate::error::{Error, Result};
use crate::exactmath::matrix::unit_vector;
use crate::exactmath::{Matrix, RatFunc, Scalar, Vector};
use crate::supercore::{LieSuperalgebra, Parity, SuperSpace};

use super::matrix_families::{psl, psq, q_odd_matrix, spe};
use super::modules::{sl_stabilizer, variables, LieKind, PairGV};
use super::realize::{matrix_algebra, MatrixModel, Shape};

#[derive(Clone, Debug)]
pub struct NamedDerivation {
    pub name: String,
    pub derivation: Derivation,
    pub certificates: Vec<SelectorCertificate>,
}

/// A constructed algebra with whatever extra data its construction provides.
#[derive(Clone, Debug)]
pub struct Built {
    pub algebra: LieSuperalgebra,
    pub model: Option<MatrixModel>,
    pub derivations: Vec<NamedDerivation>,
    /// candidate witnesses for refuting almost-innerness
    pub structured: Vec<Vector>,
}

impl Built {
    pub fn plain(algebra: LieSuperalgebra) -> Self {
        Built { algebra, model: None, derivations: Vec::new(), structured: Vec::new() }
    }

    pub fn from_model(model: MatrixModel) -> Self {
        Built { algebra: model.realized.algebra.clone(), model: Some(model), derivations: Vec::new(), structured: Vec::new() }
    }

    pub fn derivation(&self, name: &str) -> Option<&NamedDerivation> {
        self.derivations.iter().find(|d| d.name == name)
    }

    /// `A ⊕ B`, with each summand's derivations extended by zero (suffixes
    /// `.1` and `.2`) and certificates and witnesses lifted accordingly.
    pub fn direct_sum(a: &Built, b: &Built) -> Result<Built> {
        let algebra = a.algebra.direct_sum(&b.algebra);
        let (n1, n) = (a.algebra.dim(), algebra.dim());
        let mut derivations = Vec::new();
        for (part, second, suffix) in [(a, false, "1"), (b, true, "2")] {
            let offset = if second { n1 } else { 0 };
            for d in &part.derivations {
                let m = d.derivation.matrix();
                let mut big = Matrix::zeros(n, n);
                for i in 0..m.rows() {
                    for j in 0..m.cols() {
                        big[(offset + i, offset + j)] = m[(i, j)].clone();
                    }
                }
                derivations.push(NamedDerivation {
                    name: format!("{}.{suffix}", d.name),
                    derivation: Derivation::new(&algebra, d.derivation.degree(), big, d.derivation.provenance.clone())?,
                    certificates: d.certificates.iter().map(|c| lift_to_sum(&a.algebra, &b.algebra, c, second)).collect(),
                });
            }
        }
        let pad = |v: &Vector, offset: usize| {
            let mut out = vec![Scalar::zero(); n];
            for (i, c) in v.iter().enumerate() {
                out[offset + i] = c.clone();
            }
            out
        };
        let mut structured: Vec<Vector> = a.structured.iter().map(|v| pad(v, 0)).collect();
        structured.extend(b.structured.iter().map(|v| pad(v, n1)));
        Ok(Built { algebra, model: None, derivations, structured })
    }
}

fn sparse(v: &[Scalar]) -> Vec<(usize, Scalar)> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()
}

/// Pieces covering one component `P = V ⊕ U`: charts `v_j ≠ 0` with the given
/// selectors, then `V = 0` with the zero selector, then the other component
/// with the zero selector.
fn transitive_certificate(
    l: &LieSuperalgebra,
    component: Parity,
    v_slots: &[usize],
    selector: impl Fn(&[RatFunc], usize) -> Option<Vec<RatFunc>>,
) -> Option<SelectorCertificate> {
    let idx = l.indices(component);
    let nvars = idx.len();
    let vars = variables(nvars, v_slots);
    let mut pieces = Vec::new();
    for j in 0..v_slots.len() {
        pieces.push(Piece::chart(component, unit_vector(nvars, v_slots[j]), selector(&vars, j)?));
    }
    let rest: Vec<Vector> = (0..nvars).filter(|s| !v_slots.contains(s)).map(|s| unit_vector(l.dim(), idx[s])).collect();
    let k = rest.len();
    pieces.push(Piece::subspace(component, rest, zero_selector(l.dim(), k)));
    let other = component + Parity::Odd;
    pieces.push(Piece::whole(other, zero_selector(l.dim(), l.indices(other).len())));
    Some(SelectorCertificate { pieces })
}

/// Places `g`-coordinates at `offset` inside an `n`-dimensional selector.
fn embed_selector(g_coords: Vec<RatFunc>, offset: usize, n: usize, nvars: usize) -> Vec<RatFunc> {
    let mut out = zero_selector(n, nvars);
    for (k, f) in g_coords.into_iter().enumerate() {
        out[offset + k] = f;
    }
    out
}

/// `L_0 = g`, `L_1 = V`, `[x, v] = xv`, `[V, V] = 0`, graded `0 / 1`.
pub fn prehom_super(pair: &PairGV) -> Result<LieSuperalgebra> {
    let (g, m) = (&pair.g, &pair.module);
    if m.action.len() != g.dim() {
        return Err(Error::Dimension("action data does not match the Lie algebra".into()));
    }
    let (a, nv) = (g.dim(), m.dim);
    let mut names: Vec<String> = g.names().to_vec();
    names.extend((1..=nv).map(|k| format!("v{k}")));
    let parities = (0..a + nv).map(|i| if i < a { Parity::Even } else { Parity::Odd }).collect();
    let space = SuperSpace::new(names, parities)?;
    let mut brackets = Vec::new();
    for i in 0..a {
        for j in i..a {
            let row: Vec<(usize, Scalar)> = g.basis_bracket(i, j).clone();
            if !row.is_empty() {
                brackets.push((i, j, row));
            }
        }
        for k in 0..nv {
            let col = m.action[i].column(k);
            let row: Vec<(usize, Scalar)> = sparse(&col).into_iter().map(|(t, c)| (a + t, c)).collect();
            if !row.is_empty() {
                brackets.push((i, a + k, row));
            }
        }
    }
    let l = LieSuperalgebra::from_upper(space, brackets)?;
    l.with_grading((0..a + nv).map(|i| if i < a { 0 } else { 1 }).collect(), true)
}

/// The prehomogeneous superalgebra with its Euler derivation, certified when
/// an explicit stabilizer selector is known for the pair.
pub fn prehom_super_built(pair: &PairGV) -> Result<Built> {
    let l = prehom_super(pair)?;
    let d = euler_derivation(&l)?;
    let nv = pair.module.dim;
    let dim = l.dim();
    let cert = transitive_certificate(&l, Parity::Odd, &(0..nv).collect::<Vec<_>>(), |v, j| {
        Some(embed_selector(pair.stabilizer_selector(v, j)?, 0, dim, nv))
    });
    Ok(Built {
        algebra: l,
        model: None,
        derivations: vec![NamedDerivation { name: "euler".into(), derivation: d, certificates: cert.into_iter().collect() }],
        structured: Vec::new(),
    })
}

/// `L_0 = V`, `L_1 = g ⊕ V`, `[(X,w), v] = (0, Xv)`, with `D(v) = (0, v)`.
pub fn prehom_odd(pair: &PairGV) -> Result<Built> {
    let (g, m) = (&pair.g, &pair.module);
    let (a, nv) = (g.dim(), m.dim);
    let n = 2 * nv + a;
    let mut names: Vec<String> = (1..=nv).map(|k| format!("v{k}")).collect();
    names.extend(g.names().iter().cloned());
    names.extend((1..=nv).map(|k| format!("w{k}")));
    let parities = (0..n).map(|i| if i < nv { Parity::Even } else { Parity::Odd }).collect();
    let space = SuperSpace::new(names, parities)?;
    let mut brackets = Vec::new();
    for k in 0..nv {
        for x in 0..a {
            // [v, X] = −[X, v] = −(0, Xv)
            let col = m.action[x].column(k);
            let row: Vec<(usize, Scalar)> = sparse(&col).into_iter().map(|(t, c)| (nv + a + t, -c)).collect();
            if !row.is_empty() {
                brackets.push((k, nv + x, row));
            }
        }
    }
    let l = LieSuperalgebra::from_upper(space, brackets)?;
    let mut dm = Matrix::zeros(n, n);
    for k in 0..nv {
        dm[(nv + a + k, k)] = Scalar::one();
    }
    let d = Derivation::new(&l, Parity::Odd, dm, Provenance::User)?;
    let cert = transitive_certificate(&l, Parity::Even, &(0..nv).collect::<Vec<_>>(), |v, j| {
        Some(embed_selector(pair.stabilizer_selector(v, j)?, nv, n, nv))
    });
    Ok(Built {
        algebra: l,
        model: None,
        derivations: vec![NamedDerivation { name: "D".into(), derivation: d, certificates: cert.into_iter().collect() }],
        structured: Vec::new(),
    })
}

fn sl2_std() -> Result<PairGV> {
    PairGV::parse("sl:2", "std")
}

/// `sl(2) ⋉ V₂` with its Euler derivation.
pub fn example_even() -> Result<Built> {
    prehom_super_built(&sl2_std()?)
}

/// `L_0 = V`, `L_1 = sl(2) ⊕ V`, with the symmetric odd-odd bracket
/// `[(g,w), (g',w')] = gw' + g'w` and `D = pr₂`.
pub fn example_odd() -> Result<Built> {
    let pair = sl2_std()?;
    let (g, m) = (&pair.g, &pair.module);
    let (a, nv) = (g.dim(), m.dim);
    let n = 2 * nv + a;
    let mut names: Vec<String> = (1..=nv).map(|k| format!("v{k}")).collect();
    names.extend(g.names().iter().cloned());
    names.extend((1..=nv).map(|k| format!("w{k}")));
    let parities = (0..n).map(|i| if i < nv { Parity::Even } else { Parity::Odd }).collect();
    let space = SuperSpace::new(names, parities)?;
    let mut brackets = Vec::new();
    for x in 0..a {
        for k in 0..nv {
            let row = sparse(&m.action[x].column(k));
            if !row.is_empty() {
                brackets.push((nv + x, nv + a + k, row));
            }
        }
    }
    let l = LieSuperalgebra::from_upper(space, brackets)?;
    let mut dm = Matrix::zeros(n, n);
    for k in 0..nv {
        dm[(k, nv + a + k)] = Scalar::one();
    }
    let d = Derivation::new(&l, Parity::Odd, dm, Provenance::User)?;
    // odd component coordinates: g first, then w
    let w_slots: Vec<usize> = (a..a + nv).collect();
    let cert =
        transitive_certificate(&l, Parity::Odd, &w_slots, |w, j| Some(embed_selector(pair.stabilizer_selector(w, j)?, nv, n, a + nv)));
    Ok(Built {
        algebra: l,
        model: None,
        derivations: vec![NamedDerivation { name: "pr2".into(), derivation: d, certificates: cert.into_iter().collect() }],
        structured: Vec::new(),
    })
}

/// `k ⊕ kθ` with `[x, yθ] = [x,y]θ`, `[xθ, yθ] = 0`, and `∂/∂θ`.
pub fn takiff(kind: &LieKind) -> Result<Built> {
    let k = kind.model()?.realized.algebra;
    let a = k.dim();
    let mut names: Vec<String> = k.names().to_vec();
    names.extend(k.names().iter().map(|s| format!("{s}.th")));
    let parities = (0..2 * a).map(|i| if i < a { Parity::Even } else { Parity::Odd }).collect();
    let space = SuperSpace::new(names, parities)?;
    let mut brackets = Vec::new();
    for i in 0..a {
        for j in 0..a {
            let row = k.basis_bracket(i, j).clone();
            if row.is_empty() {
                continue;
            }
            if j >= i {
                brackets.push((i, j, row.clone()));
            }
            brackets.push((i, a + j, row.into_iter().map(|(t, c)| (a + t, c)).collect()));
        }
    }
    let l = LieSuperalgebra::from_upper(space, brackets)?;
    let mut dm = Matrix::zeros(2 * a, 2 * a);
    for i in 0..a {
        dm[(i, a + i)] = Scalar::one();
    }
    let d = Derivation::new(&l, Parity::Odd, dm, Provenance::User)?;
    let mut b = Built::plain(l);
    b.derivations.push(NamedDerivation { name: "d/dtheta".into(), derivation: d, certificates: Vec::new() });
    Ok(b)
}

/// Subalgebra choice for a diagonal block of the block examples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockPart {
    Zero,
    Gl,
    Sl,
}

impl BlockPart {
    pub fn parse(s: &str) -> Result<BlockPart> {
        match s {
            "zero" | "0" => Ok(BlockPart::Zero),
            "gl" => Ok(BlockPart::Gl),
            "sl" => Ok(BlockPart::Sl),
            _ => Err(Error::Parse(format!("block selector must be zero, gl or sl, not '{s}'"))),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            BlockPart::Zero => "zero",
            BlockPart::Gl => "gl",
            BlockPart::Sl => "sl",
        }
    }

    fn basis(self, n: usize) -> Vec<(String, Matrix)> {
        let unit = |i: usize, j: usize| {
            let mut m = Matrix::zeros(n, n);
            m[(i, j)] = Scalar::one();
            m
        };
        let mut out = Vec::new();
        match self {
            BlockPart::Zero => {}
            BlockPart::Gl => {
                for i in 0..n {
                    for j in 0..n {
                        out.push((format!("{}{}", i + 1, j + 1), unit(i, j)));
                    }
                }
            }
            BlockPart::Sl => {
                for k in 0..n.saturating_sub(1) {
                    out.push((format!("h{}", k + 1), unit(k, k).sub(&unit(k + 1, k + 1))));
                }
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            out.push((format!("{}{}", i + 1, j + 1), unit(i, j)));
                        }
                    }
                }
            }
        }
        out
    }
}

/// Sum of blocks `(row, col, matrix)` inside a `size × size` matrix.
fn place(size: usize, blocks: &[(usize, usize, &Matrix)]) -> Matrix {
    let mut m = Matrix::zeros(size, size);
    for &(r, c, b) in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                m[(r + i, c + j)] += &b[(i, j)];
            }
        }
    }
    m
}

fn rect_units(rows: usize, cols: usize, prefix: &str) -> Vec<(String, Matrix)> {
    let mut out = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            let mut m = Matrix::zeros(rows, cols);
            m[(i, j)] = Scalar::one();
            out.push((format!("{prefix}{}{}", i + 1, j + 1), m));
        }
    }
    out
}

fn check_block_params(n: usize, k: usize) -> Result<()> {
    if n < 2 || k == 0 || k >= n {
        return Err(Error::BadParameters("block examples need n ≥ 2 and 1 ≤ k < n".into()));
    }
    Ok(())
}

/// Derivation `ad_N` restricted to `L`, for `N` in the normalizer.
fn normalizer_derivation(model: &MatrixModel, n_mat: &Matrix, parity: Parity) -> Result<Derivation> {
    let l = &model.realized.algebra;
    let d = l.dim();
    let mut dm = Matrix::zeros(d, d);
    for b in 0..d {
        let x = model.matrix_of(&unit_vector(d, b));
        let s = parity.sign_scalar(l.parity(b));
        let c = n_mat.mul(&x).sub(&x.mul(n_mat).scaled(&s));
        let coords = model.coords_of(&c).ok_or_else(|| Error::InvalidAlgebra("matrix does not normalize L".into()))?;
        for (r, v) in coords.into_iter().enumerate() {
            dm[(r, b)] = v;
        }
    }
    Derivation::new(l, parity, dm, Provenance::User)
}

/// Block certificate for `k = 1`: charts `d_j ≠ 0` with `B(d)` in the
/// `B`-slot, `d = 0` with the zero selector.
fn block_certificate(model: &MatrixModel, n: usize, d_names: &[String], b_offset: (usize, usize)) -> Option<SelectorCertificate> {
    let l = &model.realized.algebra;
    let idx = l.indices(Parity::Even);
    let slots: Vec<usize> = d_names.iter().map(|nm| idx.iter().position(|&i| l.name(i) == nm)).collect::<Option<_>>()?;
    let size = model.shape.size();
    let nvars = idx.len();
    transitive_certificate(l, Parity::Even, &slots, |d, j| {
        let b = sl_stabilizer(n, d, j)?;
        let mut ambient = vec![RatFunc::zero(nvars); size * size];
        for (r, row) in b.into_iter().enumerate() {
            for (c, f) in row.into_iter().enumerate() {
                ambient[(b_offset.0 + r) * size + b_offset.1 + c] = f;
            }
        }
        Some(model.realized.symbolic_coords(&ambient, nvars))
    })
}

/// `X = [[A,B,c],[0,A,d],[0,0,C]] ⊂ gl(n|n+k)`, `B` traceless, with the odd
/// derivation `ad_N`, `N = [[0,1_n,0],[0,0,0],[0,0,0]]`.
///
/// The chart selector `B(d)` must commute with `A`, so the built-in
/// certificate is attached only for `A = zero` and `k = 1`. For nonzero `A`
/// the structured witness (nilpotent `A`, `d ∉ im A`) is pointwise unsolvable.
pub fn block_super(n: usize, k: usize, a: BlockPart, c: BlockPart) -> Result<Built> {
    check_block_params(n, k)?;
    let shape = Shape::new(n, n + k);
    let size = shape.size();
    let mut names = Vec::new();
    let mut mats = Vec::new();
    for (nm, m) in a.basis(n) {
        names.push(format!("A{nm}"));
        mats.push(place(size, &[(0, 0, &m), (n, n, &m)]));
    }
    let d_units = rect_units(n, k, "d");
    let d_names: Vec<String> = d_units.iter().map(|(nm, _)| nm.clone()).collect();
    for (nm, m) in &d_units {
        names.push(nm.clone());
        mats.push(place(size, &[(n, 2 * n, m)]));
    }
    for (nm, m) in c.basis(k) {
        names.push(format!("C{nm}"));
        mats.push(place(size, &[(2 * n, 2 * n, &m)]));
    }
    for (nm, m) in BlockPart::Sl.basis(n) {
        names.push(format!("B{nm}"));
        mats.push(place(size, &[(0, n, &m)]));
    }
    for (nm, m) in rect_units(n, k, "c") {
        names.push(nm);
        mats.push(place(size, &[(0, 2 * n, &m)]));
    }
    let model = MatrixModel { shape, realized: matrix_algebra(shape, names, &mats)?, quotient: None };
    let nm = place(size, &[(0, n, &Matrix::identity(n))]);
    let d = normalizer_derivation(&model, &nm, Parity::Odd)?;
    let certs =
        if a == BlockPart::Zero && k == 1 { block_certificate(&model, n, &d_names, (0, n)).into_iter().collect() } else { Vec::new() };
    let mut structured = Vec::new();
    if a != BlockPart::Zero {
        let mut e01 = Matrix::zeros(n, n);
        e01[(0, 1)] = Scalar::one();
        let mut dv = Matrix::zeros(n, k);
        dv[(n - 1, 0)] = Scalar::one();
        let x = place(size, &[(0, 0, &e01), (n, n, &e01), (n, 2 * n, &dv)]);
        structured.extend(model.coords_of(&x));
    }
    Ok(Built {
        algebra: model.realized.algebra.clone(),
        derivations: vec![NamedDerivation { name: "ad_N".into(), derivation: d, certificates: certs }],
        model: Some(model),
        structured,
    })
}

/// `X = [[0,B,c],[0,0,d],[0,0,C]] ⊂ gl(2n+k)`, `B` traceless, with `ad_N`.
pub fn block_lie(n: usize, k: usize, c: BlockPart) -> Result<Built> {
    check_block_params(n, k)?;
    let shape = Shape::new(2 * n + k, 0);
    let size = shape.size();
    let mut names = Vec::new();
    let mut mats = Vec::new();
    let d_units = rect_units(n, k, "d");
    let d_names: Vec<String> = d_units.iter().map(|(nm, _)| nm.clone()).collect();
    for (nm, m) in &d_units {
        names.push(nm.clone());
        mats.push(place(size, &[(n, 2 * n, m)]));
    }
    for (nm, m) in c.basis(k) {
        names.push(format!("C{nm}"));
        mats.push(place(size, &[(2 * n, 2 * n, &m)]));
    }
    for (nm, m) in BlockPart::Sl.basis(n) {
        names.push(format!("B{nm}"));
        mats.push(place(size, &[(0, n, &m)]));
    }
    for (nm, m) in rect_units(n, k, "c") {
        names.push(nm);
        mats.push(place(size, &[(0, 2 * n, &m)]));
    }
    let model = MatrixModel { shape, realized: matrix_algebra(shape, names, &mats)?, quotient: None };
    let nm = place(size, &[(0, n, &Matrix::identity(n))]);
    let d = normalizer_derivation(&model, &nm, Parity::Even)?;
    let certs = if k == 1 { block_certificate(&model, n, &d_names, (0, n)).into_iter().collect() } else { Vec::new() };
    Ok(Built {
        algebra: model.realized.algebra.clone(),
        derivations: vec![NamedDerivation { name: "ad_N".into(), derivation: d, certificates: certs }],
        model: Some(model),
        structured: Vec::new(),
    })
}

/// Odd-part witness for the odd derivation of `psq(n)`: the companion matrix
/// of `tⁿ − 1` for odd `n`, `diag(1, −1, 2, −2, …)` for even `n`. In both
/// cases the eigenvalues satisfy `Σλ = Σλ⁻¹ = 0`, which forces
/// `tr y = n/2` for any solution of `xy + yx = x + aI`.
pub fn psq_witness(n: usize) -> Matrix {
    if n % 2 == 1 {
        let mut c = vec![Scalar::zero(); n];
        c[0] = Scalar::one();
        crate::almostinner::companion(&c)
    } else {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            let v = (i / 2 + 1) as i64;
            m[(i, i)] = Scalar::from_int(if i % 2 == 0 { v } else { -v });
        }
        m
    }
}

/// `psq(n)` with the odd derivation `L_1 → L_0`, `[[0,B],[B,0]] ↦ [[B,0],[0,B]]`.
pub fn psq_built(n: usize) -> Result<Built> {
    let model = psq(n)?;
    let l = model.realized.algebra.clone();
    let d = l.dim();
    let mut dm = Matrix::zeros(d, d);
    for b in l.indices(Parity::Odd) {
        let x = model.matrix_of(&unit_vector(d, b));
        // the image swaps the off-diagonal blocks onto the diagonal
        let mut y = Matrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                y[(i, j)] = x[(i, n + j)].clone();
                y[(n + i, n + j)] = x[(i, n + j)].clone();
            }
        }
        let coords = model.coords_of(&y).ok_or_else(|| Error::InvalidAlgebra("image outside psq".into()))?;
        for (r, v) in coords.into_iter().enumerate() {
            dm[(r, b)] = v;
        }
    }
    let der = Derivation::new(&l, Parity::Odd, dm, Provenance::User)?;
    let structured = model.coords_of(&q_odd_matrix(&psq_witness(n))).into_iter().collect();
    Ok(Built {
        algebra: l,
        derivations: vec![NamedDerivation { name: "odd_iso".into(), derivation: der, certificates: Vec::new() }],
        model: Some(model),
        structured,
    })
}

/// `psl(n|n)` with its Euler derivation and the upper and lower identity
/// blocks as witnesses.
pub fn psl_built(n: usize) -> Result<Built> {
    let model = psl(n)?;
    let shape = model.shape;
    let upper = super::matrix_families::block_identity(shape, true);
    let lower = super::matrix_families::block_identity(shape, false);
    let structured = [upper.clone(), lower.clone(), upper.add(&lower)].iter().filter_map(|m| model.coords_of(m)).collect();
    let mut b = Built::from_model(model);
    b.structured = structured;
    b.derivations.push(NamedDerivation { name: "euler".into(), derivation: euler_derivation(&b.algebra)?, certificates: Vec::new() });
    Ok(b)
}

/// `spe(n)` with its Euler derivation and `I_n` in the `B`-slot.
pub fn spe_built(n: usize) -> Result<Built> {
    let model = spe(n)?;
    let upper = super::matrix_families::block_identity(model.shape, true);
    let structured = model.coords_of(&upper).into_iter().collect();
    let mut b = Built::from_model(model);
    b.structured = structured;
    b.derivations.push(NamedDerivation { name: "euler".into(), derivation: euler_derivation(&b.algebra)?, certificates: Vec::new() });
    Ok(b)
}

/// Coordinates of an ambient matrix, when the build carries a model.
pub fn coords_in(built: &Built, m: &Matrix) -> Option<Vector> {
    built.model.as_ref()?.coords_of(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::almostinner::{certificate_problems, pointwise_selector, verify_certificate};
    use crate::derivations::is_inner;
    use crate::supercore::Dims;

    fn check_certified(b: &Built, name: &str) {
        let l = &b.algebra;
        assert!(l.validate().is_empty(), "{:?}", l.validate());
        let nd = b.derivation(name).unwrap();
        assert!(is_inner(l, &nd.derivation).is_none());
        assert_eq!(nd.certificates.len(), 1);
        let c = &nd.certificates[0];
        assert!(certificate_problems(l, &nd.derivation, c).unwrap().is_empty(), "{:?}", certificate_problems(l, &nd.derivation, c));
        assert!(verify_certificate(l, &nd.derivation, c).unwrap());
    }

    #[test]
    fn example_even_certified() {
        let b = example_even().unwrap();
        assert_eq!(b.algebra.dims(), Dims::new(3, 2));
        check_certified(&b, "euler");
    }

    #[test]
    fn example_odd_certified() {
        let b = example_odd().unwrap();
        assert_eq!(b.algebra.dims(), Dims::new(2, 5));
        check_certified(&b, "pr2");
    }

    #[test]
    fn prehom_odd_certified() {
        let b = prehom_odd(&PairGV::parse("sl:2", "std").unwrap()).unwrap();
        assert_eq!(b.algebra.dims(), Dims::new(2, 5));
        check_certified(&b, "D");
        let sp = prehom_odd(&PairGV::parse("sp:4", "std").unwrap()).unwrap();
        check_certified(&sp, "D");
    }

    #[test]
    fn prehom_super_dims_and_certificates() {
        assert_eq!(prehom_super(&PairGV::parse("sl:3", "std").unwrap()).unwrap().dims(), Dims::new(8, 3));
        assert_eq!(prehom_super(&PairGV::parse("sl:5", "wedge2").unwrap()).unwrap().dims(), Dims::new(24, 10));
        check_certified(&prehom_super_built(&PairGV::parse("sl:3", "dual").unwrap()).unwrap(), "euler");
        check_certified(&prehom_super_built(&PairGV::parse("sp:4", "std").unwrap()).unwrap(), "euler");
    }

    #[test]
    fn block_examples_certified() {
        let b = block_super(2, 1, BlockPart::Zero, BlockPart::Zero).unwrap();
        check_certified(&b, "ad_N");
        let b = block_super(3, 1, BlockPart::Zero, BlockPart::Gl).unwrap();
        check_certified(&b, "ad_N");
        let b = block_lie(2, 1, BlockPart::Sl).unwrap();
        assert!(b.algebra.is_lie_algebra());
        check_certified(&b, "ad_N");
    }

    #[test]
    fn block_super_with_sl_is_refuted() {
        let b = block_super(2, 1, BlockPart::Sl, BlockPart::Zero).unwrap();
        let d = &b.derivation("ad_N").unwrap().derivation;
        assert!(pointwise_selector(&b.algebra, d, &b.structured[0]).unwrap().is_none());
    }

    #[test]
    fn takiff_structure() {
        let b = takiff(&LieKind::Sl(2)).unwrap();
        let l = &b.algebra;
        assert_eq!(l.dims(), Dims::new(3, 3));
        assert!(l.validate().is_empty());
        for i in l.indices(Parity::Odd) {
            let x = unit_vector(l.dim(), i);
            assert!(l.bracket(&x, &x).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn psq_odd_derivation_refuted() {
        for n in [3, 4] {
            let b = psq_built(n).unwrap();
            let d = &b.derivation("odd_iso").unwrap().derivation;
            assert!(is_inner(&b.algebra, d).is_none());
            assert!(pointwise_selector(&b.algebra, d, &b.structured[0]).unwrap().is_none(), "n = {n}");
        }
    }

    #[test]
    fn euler_witnesses_refute() {
        for b in [psl_built(2).unwrap(), spe_built(3).unwrap()] {
            let d = &b.derivation("euler").unwrap().derivation;
            assert!(pointwise_selector(&b.algebra, d, &b.structured[0]).unwrap().is_none());
        }
    }
}
