//! Almost-inner classification: pointwise solvability, refutation pools and
//! piecewise rational selector certificates.
//!
//! A certificate piece lives on one parity component of `L`. It is given by
//! a subspace `S` of that component (the whole component when absent), a
//! list of linear forms on `S` that must not vanish, and a selector `a(t)`
//! whose entries are rational functions of the coordinates `t` of
//! `x = Σ t_i s_i`. The piece proves `D(x) = [a(x), x]` for every `x` in its
//! domain once the identity holds as rational functions and each denominator
//! is a product of the piece's chart forms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::derivations::{is_inner, Derivation};
use crate::error::{Error, Result};
use crate::exactmath::matrix::{intersect, is_zero_vector, kernel_basis, solve_with_ranks, unit_vector, zero_vector, BasisCoordinates};
use crate::exactmath::{Matrix, MultiPoly, RatFunc, Scalar, Vector};
use crate::supercore::{LieSuperalgebra, Parity};

#[derive(Clone, Debug, Serialize)]
pub struct Piece {
    pub component: Parity,
    /// basis of a subspace of the component, in coordinates of `L`
    pub subspace: Option<Vec<Vector>>,
    /// linear forms in piece coordinates required to be nonzero
    pub charts: Vec<Vector>,
    /// `a(t)` in coordinates of `L`
    #[serde(serialize_with = "ratfunc_strings")]
    pub selector: Vec<RatFunc>,
}

impl Piece {
    pub fn chart(component: Parity, form: Vector, selector: Vec<RatFunc>) -> Self {
        Piece { component, subspace: None, charts: vec![form], selector }
    }

    pub fn subspace(component: Parity, basis: Vec<Vector>, selector: Vec<RatFunc>) -> Self {
        Piece { component, subspace: Some(basis), charts: Vec::new(), selector }
    }

    /// The whole component with one selector.
    pub fn whole(component: Parity, selector: Vec<RatFunc>) -> Self {
        Piece { component, subspace: None, charts: Vec::new(), selector }
    }

    /// Basis of the piece's ambient subspace.
    pub fn basis(&self, l: &LieSuperalgebra) -> Vec<Vector> {
        match &self.subspace {
            Some(b) => b.clone(),
            None => l.indices(self.component).into_iter().map(|i| unit_vector(l.dim(), i)).collect(),
        }
    }

    pub fn nvars(&self, l: &LieSuperalgebra) -> usize {
        match &self.subspace {
            Some(b) => b.len(),
            None => l.indices(self.component).len(),
        }
    }
}

fn ratfunc_strings<S: serde::Serializer>(fs: &[RatFunc], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(fs.iter().map(|f| f.to_string()))
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SelectorCertificate {
    pub pieces: Vec<Piece>,
}

/// Zero selector in `nvars` coordinates.
pub fn zero_selector(dim: usize, nvars: usize) -> Vec<RatFunc> {
    vec![RatFunc::zero(nvars); dim]
}

/// Constant selector `a(x) = y`.
pub fn constant_selector(y: &[Scalar], nvars: usize) -> Vec<RatFunc> {
    y.iter().map(|c| RatFunc::constant(nvars, c.clone())).collect()
}

/// Certificate for `ad_y`: one piece per parity with the constant selector `y`.
pub fn inner_certificate(l: &LieSuperalgebra, y: &[Scalar]) -> SelectorCertificate {
    let pieces = [Parity::Even, Parity::Odd].into_iter().map(|p| Piece::whole(p, constant_selector(y, l.indices(p).len()))).collect();
    SelectorCertificate { pieces }
}

/// `x(t) = Σ t_i b_i` as polynomial coordinates.
fn generic_point(basis: &[Vector], dim: usize) -> Vec<MultiPoly> {
    (0..dim).map(|k| MultiPoly::linear(&basis.iter().map(|b| b[k].clone()).collect::<Vec<_>>())).collect()
}

/// `[a, x]` for rational `a` and polynomial `x`.
fn bracket_rat_poly(l: &LieSuperalgebra, a: &[RatFunc], x: &[MultiPoly], nvars: usize) -> Vec<RatFunc> {
    let n = l.dim();
    let mut out = vec![RatFunc::zero(nvars); n];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        // Σ_j x_j [e_i, e_j]
        let mut inner = vec![MultiPoly::zero(nvars); n];
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for (k, c) in l.basis_bracket(i, j) {
                inner[k.to_owned()] = inner[*k].add(&xj.scale(c));
            }
        }
        for k in 0..n {
            if !inner[k].is_zero() {
                out[k] = out[k].add(&ai.mul_poly(&inner[k]));
            }
        }
    }
    out
}

fn bracket_rat(l: &LieSuperalgebra, a: &[RatFunc], b: &[RatFunc], nvars: usize) -> Vec<RatFunc> {
    let n = l.dim();
    let mut out = vec![RatFunc::zero(nvars); n];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            let row = l.basis_bracket(i, j);
            if row.is_empty() {
                continue;
            }
            let prod = ai.mul(bj);
            for (k, c) in row {
                out[*k] = out[*k].add(&prod.scale(c));
            }
        }
    }
    out
}

fn apply_rat(m: &Matrix, a: &[RatFunc], nvars: usize) -> Vec<RatFunc> {
    (0..m.rows())
        .map(|k| {
            let mut acc = RatFunc::zero(nvars);
            for (j, aj) in a.iter().enumerate() {
                let c = &m[(k, j)];
                if !c.is_zero() && !aj.is_zero() {
                    acc = acc.add(&aj.scale(c));
                }
            }
            acc
        })
        .collect()
}

/// Divides out chart forms until a nonzero constant remains.
fn factors_into_charts(den: &MultiPoly, charts: &[MultiPoly]) -> bool {
    let mut d = den.clone();
    loop {
        if d.as_constant().is_some_and(|c| !c.is_zero()) {
            return true;
        }
        match charts.iter().find_map(|c| d.div_exact(c)) {
            Some(q) => d = q,
            None => return false,
        }
    }
}

fn check_piece(l: &LieSuperalgebra, d: &Derivation, piece: &Piece, idx: usize, problems: &mut Vec<String>) -> Result<()> {
    let n = l.dim();
    let r = piece.nvars(l);
    let basis = piece.basis(l);
    if piece.selector.len() != n {
        return Err(Error::Malformed(format!("piece {idx}: selector has {} entries, algebra has dimension {n}", piece.selector.len())));
    }
    if piece.selector.iter().any(|s| s.nvars() != r) || piece.charts.iter().any(|c| c.len() != r) {
        return Err(Error::Malformed(format!("piece {idx}: expected {r} coordinates")));
    }
    for b in &basis {
        if b.len() != n || l.parity_of(b) != Some(piece.component) && !is_zero_vector(b) {
            return Err(Error::Malformed(format!("piece {idx}: subspace leaves the {} component", piece.component)));
        }
    }
    for (i, s) in piece.selector.iter().enumerate() {
        if l.parity(i) != d.degree() && !s.is_zero() {
            problems.push(format!("piece {idx}: selector has a component of parity {}", l.parity(i)));
            break;
        }
    }
    let charts: Vec<MultiPoly> = piece.charts.iter().map(|c| MultiPoly::linear(c)).collect();
    if charts.iter().any(MultiPoly::is_zero) {
        problems.push(format!("piece {idx}: zero chart form"));
    }
    for s in &piece.selector {
        if !factors_into_charts(&s.den, &charts) {
            problems.push(format!("piece {idx}: denominator {} is not a product of chart forms", s.den));
            break;
        }
    }
    let x = generic_point(&basis, n);
    let lhs = bracket_rat_poly(l, &piece.selector, &x, r);
    for k in 0..n {
        let mut dx = MultiPoly::zero(r);
        for (j, xj) in x.iter().enumerate() {
            let c = &d.matrix()[(k, j)];
            if !c.is_zero() && !xj.is_zero() {
                dx = dx.add(&xj.scale(c));
            }
        }
        let diff = lhs[k].sub(&RatFunc::poly(dx));
        if !diff.is_zero() {
            problems.push(format!("piece {idx}: [a(x), x] ≠ D(x) in coordinate {k}"));
            break;
        }
    }
    Ok(())
}

/// A piece's domain seen from a subspace `W` of its component: the piece's
/// subspace must contain `W`, and each chart form is pulled back to `W`.
fn pulled_back_charts(l: &LieSuperalgebra, piece: &Piece, w: &[Vector]) -> Option<Vec<Vector>> {
    let n = l.dim();
    let coords = BasisCoordinates::new(&piece.basis(l), n).ok()?;
    let local: Vec<Vector> = w.iter().map(|v| coords.coordinates(v)).collect::<Option<_>>()?;
    Some(piece.charts.iter().map(|form| local.iter().map(|t| t.iter().zip(form).map(|(a, b)| a * b).sum()).collect()).collect())
}

/// Exact coverage test over an infinite field: `W` is covered iff some piece
/// contains `W` with charts not vanishing identically on it, and every
/// hyperplane section `W ∩ ker ℓ` of that piece's charts is covered.
fn covers(l: &LieSuperalgebra, pieces: &[&Piece], w: &[Vector]) -> bool {
    for p in pieces {
        let Some(forms) = pulled_back_charts(l, p, w) else { continue };
        if forms.iter().any(|f| is_zero_vector(f)) {
            continue;
        }
        return forms.iter().all(|f| {
            let k = kernel_basis(&Matrix::from_rows(vec![f.clone()]).expect("one row"));
            let section: Vec<Vector> = k
                .iter()
                .map(|c| {
                    let mut v = zero_vector(l.dim());
                    for (ci, wi) in c.iter().zip(w) {
                        crate::exactmath::matrix::add_scaled(&mut v, ci, wi);
                    }
                    v
                })
                .collect();
            covers(l, pieces, &section)
        });
    }
    false
}

/// Problems found while verifying; empty means the certificate is valid.
pub fn certificate_problems(l: &LieSuperalgebra, d: &Derivation, cert: &SelectorCertificate) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    for (i, piece) in cert.pieces.iter().enumerate() {
        check_piece(l, d, piece, i, &mut problems)?;
    }
    for p in [Parity::Even, Parity::Odd] {
        let comp: Vec<Vector> = l.indices(p).into_iter().map(|i| unit_vector(l.dim(), i)).collect();
        let pieces: Vec<&Piece> = cert.pieces.iter().filter(|q| q.component == p).collect();
        if !covers(l, &pieces, &comp) {
            problems.push(format!("{p} component is not covered"));
        }
    }
    Ok(problems)
}

pub fn verify_certificate(l: &LieSuperalgebra, d: &Derivation, cert: &SelectorCertificate) -> Result<bool> {
    Ok(certificate_problems(l, d, cert)?.is_empty())
}

/// Selector of `piece` rewritten in coordinates `u` of the subspace spanned by `w ⊆ S`.
fn restrict(l: &LieSuperalgebra, piece: &Piece, w: &[Vector]) -> Option<(Vec<RatFunc>, Vec<Vector>)> {
    let nu = w.len();
    let coords = BasisCoordinates::new(&piece.basis(l), l.dim()).ok()?;
    let local: Vec<Vector> = w.iter().map(|v| coords.coordinates(v)).collect::<Option<_>>()?;
    let r = piece.nvars(l);
    // t_i = Σ_k u_k local[k][i]
    let subs: Vec<MultiPoly> = (0..r).map(|i| MultiPoly::linear(&local.iter().map(|t| t[i].clone()).collect::<Vec<_>>())).collect();
    let selector = piece.selector.iter().map(|s| s.substitute_into(&subs, nu)).collect();
    let charts = pulled_back_charts(l, piece, w)?;
    Some((selector, charts))
}

/// Certificate for `[D2, D1]` from certificates of `D1` and `D2`, with
/// selector `D2(a1) − s·D1(a2) + s·[a1, a2]`, `s = (−1)^{|D1||D2|}`, on
/// pairwise intersections of pieces.
pub fn compose_certificates(
    l: &LieSuperalgebra,
    d1: &Derivation,
    cert1: &SelectorCertificate,
    d2: &Derivation,
    cert2: &SelectorCertificate,
) -> Result<SelectorCertificate> {
    if !verify_certificate(l, d1, cert1)? || !verify_certificate(l, d2, cert2)? {
        return Err(Error::Malformed("input certificates do not verify".into()));
    }
    let n = l.dim();
    let s = d1.degree().sign_scalar(d2.degree());
    let mut pieces = Vec::new();
    for p1 in &cert1.pieces {
        for p2 in cert2.pieces.iter().filter(|p| p.component == p1.component) {
            let w = intersect(&p1.basis(l), &p2.basis(l), n);
            let (a1, c1) = restrict(l, p1, &w).expect("intersection lies in both pieces");
            let (a2, c2) = restrict(l, p2, &w).expect("intersection lies in both pieces");
            let charts: Vec<Vector> = c1.into_iter().chain(c2).collect();
            if charts.iter().any(|c| is_zero_vector(c)) {
                continue;
            }
            let nu = w.len();
            let term1 = apply_rat(d2.matrix(), &a1, nu);
            let term2 = apply_rat(d1.matrix(), &a2, nu);
            let term3 = bracket_rat(l, &a1, &a2, nu);
            let selector = (0..n).map(|k| term1[k].sub(&term2[k].scale(&s)).add(&term3[k].scale(&s))).collect();
            pieces.push(Piece { component: p1.component, subspace: Some(w), charts, selector });
        }
    }
    Ok(SelectorCertificate { pieces })
}

/// Lifts a certificate of `D` on `L1` to `D ⊕ 0` on `L1 ⊕ L2` (or `0 ⊕ D`
/// when `second` is set), letting the other summand's coordinates run free.
pub fn lift_to_sum(l1: &LieSuperalgebra, l2: &LieSuperalgebra, cert: &SelectorCertificate, second: bool) -> SelectorCertificate {
    let (n1, n2) = (l1.dim(), l2.dim());
    let n = n1 + n2;
    let (own, other, offset, other_offset) = if second { (l2, l1, n1, 0) } else { (l1, l2, 0, n1) };
    let pieces = cert
        .pieces
        .iter()
        .map(|p| {
            let embed = |v: &Vector| {
                let mut out = zero_vector(n);
                for (i, c) in v.iter().enumerate() {
                    out[offset + i] = c.clone();
                }
                out
            };
            let mut basis: Vec<Vector> = p.basis(own).iter().map(embed).collect();
            let r = basis.len();
            let extra = other.indices(p.component);
            basis.extend(extra.iter().map(|&i| unit_vector(n, other_offset + i)));
            let nv = basis.len();
            let map: Vec<usize> = (0..r).collect();
            let mut selector = vec![RatFunc::zero(nv); n];
            for (i, s) in p.selector.iter().enumerate() {
                selector[offset + i] = s.embed(&map, nv);
            }
            let charts = p
                .charts
                .iter()
                .map(|c| {
                    let mut f = c.clone();
                    f.extend(std::iter::repeat_n(Scalar::zero(), extra.len()));
                    f
                })
                .collect();
            Piece { component: p.component, subspace: Some(basis), charts, selector }
        })
        .collect();
    SelectorCertificate { pieces }
}

/// Rank pair and solution of `[a, x] = D(x)` over `a ∈ L_{|D|}`.
#[derive(Clone, Debug)]
pub struct Pointwise {
    pub selector: Option<Vector>,
    pub coefficient_rank: usize,
    pub augmented_rank: usize,
}

pub fn pointwise_system(l: &LieSuperalgebra, d: &Derivation, x: &[Scalar]) -> Result<Pointwise> {
    if x.len() != l.dim() {
        return Err(Error::Dimension("vector size".into()));
    }
    l.parity_of(x).ok_or(Error::Inhomogeneous)?;
    let n = l.dim();
    let idx = l.indices(d.degree());
    let cols: Vec<Vector> = idx.iter().map(|&i| l.bracket(&unit_vector(n, i), x)).collect();
    let a = Matrix::from_columns(&cols, n);
    let b = d.apply(x);
    let c = solve_with_ranks(&a, &b)?;
    let selector = c.solution.map(|s| {
        let mut out = zero_vector(n);
        for (t, &i) in idx.iter().enumerate() {
            out[i] = s.particular[t].clone();
        }
        out
    });
    Ok(Pointwise { selector, coefficient_rank: c.coefficient_rank, augmented_rank: c.augmented_rank })
}

/// Some `a ∈ L_{|D|}` with `[a, x] = D(x)`, for homogeneous `x`.
pub fn pointwise_selector(l: &LieSuperalgebra, d: &Derivation, x: &[Scalar]) -> Result<Option<Vector>> {
    Ok(pointwise_system(l, d, x)?.selector)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Refutation {
    pub witness: Vector,
    pub coefficient_rank: usize,
    pub augmented_rank: usize,
}

/// Scalar field used for random samples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Field {
    Rational,
    QuadraticExtension(i64),
}

impl Field {
    pub fn parse(s: &str) -> Result<Field> {
        if s == "q" {
            return Ok(Field::Rational);
        }
        let d = s
            .strip_prefix("qsqrt:")
            .and_then(|d| d.parse::<i64>().ok())
            .ok_or_else(|| Error::Parse(format!("field must be `q` or `qsqrt:<d>`, got `{s}`")))?;
        if !crate::exactmath::scalar::valid_extension(d) {
            return Err(Error::Parse(format!("{d} is not a square-free non-unit integer")));
        }
        Ok(Field::QuadraticExtension(d))
    }
}

#[derive(Clone, Debug)]
pub struct WitnessPool {
    pub structured: Vec<Vector>,
    pub basis: Vec<Vector>,
    pub random: Vec<Vector>,
}

impl WitnessPool {
    pub fn len(&self) -> usize {
        self.structured.len() + self.basis.len() + self.random.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vector> {
        self.structured.iter().chain(&self.basis).chain(&self.random)
    }
}

#[derive(Clone, Debug)]
pub struct ClassifyConfig {
    pub seed: u64,
    pub samples: usize,
    pub bound: i64,
    pub field: Field,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig { seed: 0, samples: 64, bound: 9, field: Field::Rational }
    }
}

/// Index sets of the homogeneous components used for sampling: parity
/// components, split further by Z-grade when a grading is present.
pub fn sampling_components(l: &LieSuperalgebra) -> Vec<Vec<usize>> {
    let mut keys: Vec<(Parity, i64)> = (0..l.dim()).map(|i| (l.parity(i), l.zgrade(i).unwrap_or(0))).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter().map(|(p, g)| (0..l.dim()).filter(|&i| l.parity(i) == p && l.zgrade(i).unwrap_or(0) == g).collect()).collect()
}

pub fn random_scalar(rng: &mut ChaCha8Rng, cfg: &ClassifyConfig) -> Scalar {
    let a = Scalar::from_int(rng.gen_range(-cfg.bound..=cfg.bound));
    match cfg.field {
        Field::Rational => a,
        Field::QuadraticExtension(d) => a + Scalar::from_int(rng.gen_range(-cfg.bound..=cfg.bound)) * Scalar::sqrt_of(d),
    }
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random element supported on the basis vectors of one parity.
pub fn random_element(l: &LieSuperalgebra, parity: Parity, rng: &mut ChaCha8Rng, cfg: &ClassifyConfig) -> Vector {
    let mut v = zero_vector(l.dim());
    for i in l.indices(parity) {
        v[i] = random_scalar(rng, cfg);
    }
    v
}

pub fn build_pool(l: &LieSuperalgebra, structured: Vec<Vector>, cfg: &ClassifyConfig) -> WitnessPool {
    let n = l.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let basis = (0..n).map(|i| unit_vector(n, i)).collect();
    let mut random = Vec::new();
    for comp in sampling_components(l) {
        for _ in 0..cfg.samples {
            let mut v = zero_vector(n);
            for &i in &comp {
                v[i] = random_scalar(&mut rng, cfg);
            }
            if !is_zero_vector(&v) {
                random.push(v);
            }
        }
    }
    WitnessPool { structured: structured.into_iter().filter(|v| l.parity_of(v).is_some()).collect(), basis, random }
}

/// First pool element with no pointwise selector.
pub fn refute_almost_inner(l: &LieSuperalgebra, d: &Derivation, pool: &WitnessPool) -> Option<Refutation> {
    for x in pool.iter() {
        let Ok(p) = pointwise_system(l, d, x) else { continue };
        if p.selector.is_none() {
            return Some(Refutation { witness: x.clone(), coefficient_rank: p.coefficient_rank, augmented_rank: p.augmented_rank });
        }
    }
    None
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", content = "evidence", rename_all = "snake_case")]
pub enum AIStatus {
    Inner(Vector),
    CertifiedAlmostInner(SelectorCertificate),
    NotAlmostInner(Refutation),
    Undetermined(usize),
}

impl AIStatus {
    pub fn label(&self) -> &'static str {
        match self {
            AIStatus::Inner(_) => "inner",
            AIStatus::CertifiedAlmostInner(_) => "certified_almost_inner",
            AIStatus::NotAlmostInner(_) => "not_almost_inner",
            AIStatus::Undetermined(_) => "undetermined",
        }
    }
}

/// Inner, then certificates, then refutation over the pool.
pub fn classify_derivation(
    l: &LieSuperalgebra,
    d: &Derivation,
    certs: &[SelectorCertificate],
    structured: Vec<Vector>,
    cfg: &ClassifyConfig,
) -> AIStatus {
    if let Some(a) = is_inner(l, d) {
        return AIStatus::Inner(a);
    }
    for c in certs {
        if verify_certificate(l, d, c).unwrap_or(false) {
            return AIStatus::CertifiedAlmostInner(c.clone());
        }
    }
    let pool = build_pool(l, structured, cfg);
    match refute_almost_inner(l, d, &pool) {
        Some(r) => AIStatus::NotAlmostInner(r),
        None => AIStatus::Undetermined(pool.len()),
    }
}

/// Companion matrix of `t^n − Σ c_k t^k` (`coeffs[k] = c_k`).
pub fn companion(coeffs: &[Scalar]) -> Matrix {
    let n = coeffs.len();
    let mut m = Matrix::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = Scalar::one();
    }
    for (k, c) in coeffs.iter().enumerate() {
        m[(k, n - 1)] = c.clone();
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::sparse::SparseRow;
    use crate::supercore::SuperSpace;

    fn sl2() -> LieSuperalgebra {
        let s = |xs: &[(usize, i64)]| xs.iter().map(|&(k, c)| (k, Scalar::from_int(c))).collect::<SparseRow>();
        LieSuperalgebra::from_upper(
            SuperSpace::new(vec!["h".into(), "e".into(), "f".into()], vec![Parity::Even; 3]).unwrap(),
            vec![(0, 1, s(&[(1, 2)])), (0, 2, s(&[(2, -2)])), (1, 2, s(&[(0, 1)]))],
        )
        .unwrap()
    }

    #[test]
    fn inner_certificates_verify() {
        let l = sl2();
        let y = vec![Scalar::from_int(1), Scalar::from_int(-2), Scalar::from_int(3)];
        let d = Derivation::inner(&l, &y).unwrap();
        assert!(verify_certificate(&l, &d, &inner_certificate(&l, &y)).unwrap());
        let wrong = vec![Scalar::from_int(1), Scalar::from_int(-2), Scalar::from_int(4)];
        assert!(!verify_certificate(&l, &d, &inner_certificate(&l, &wrong)).unwrap());
        let e = Derivation::inner(&l, &unit_vector(3, 1)).unwrap();
        let composed = compose_certificates(&l, &d, &inner_certificate(&l, &y), &e, &inner_certificate(&l, &unit_vector(3, 1))).unwrap();
        let bracket = crate::derivations::derivation_bracket(&l, &e, &d).unwrap();
        assert!(verify_certificate(&l, &bracket, &composed).unwrap());
    }

    #[test]
    fn pointwise_basics() {
        let l = sl2();
        let x = vec![Scalar::from_int(2), Scalar::from_int(1), Scalar::zero()];
        let d = Derivation::inner(&l, &unit_vector(3, 2)).unwrap();
        let a = pointwise_selector(&l, &d, &x).unwrap().unwrap();
        assert_eq!(l.bracket(&a, &x), d.apply(&x));
        assert!(classify_derivation(&l, &d, &[], Vec::new(), &ClassifyConfig::default()).label() == "inner");
    }
}
