//! Grassmann algebra `Λ_n`, vector fields on `F^{0|n}` and the Cartan-type
//! algebras `W(n)`, `S(n)`, `S̃(n)`, `H(n)`, `SH(n)`.
//!
//! Monomials are bitmasks (bit `i` is `ξ_{i+1}`), always kept in increasing
//! order. Derivatives act from the left: `∂_i(ξ_I) = (−1)^{#{k ∈ I : k < i}} ξ_{I∖i}`.
//! Divergence is `Σ_i ∂_i(f_i)` without a parity sign; on homogeneous fields the
//! sign would be a global factor, so `S(n)` is the same either way.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactmath::matrix::{kernel_basis, unit_vector};
use crate::exactmath::{Matrix, Scalar, Vector};
use crate::supercore::{LieSuperalgebra, Parity};

use super::realize::Realized;

/// Sign of `ξ_I ξ_J` when reordered, or `None` if they share a variable.
fn shuffle_sign(a: u32, b: u32) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    // count pairs i ∈ a, j ∈ b with i > j
    let mut inversions = 0;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inversions += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    Some(inversions % 2 == 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassmannElement {
    pub n: usize,
    pub terms: BTreeMap<u32, Scalar>,
}

impl GrassmannElement {
    pub fn zero(n: usize) -> Self {
        GrassmannElement { n, terms: BTreeMap::new() }
    }

    pub fn monomial(n: usize, mask: u32, c: Scalar) -> Self {
        let mut e = Self::zero(n);
        if !c.is_zero() {
            e.terms.insert(mask, c);
        }
        e
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, 0, Scalar::one())
    }

    /// `ξ_{i+1}`.
    pub fn var(n: usize, i: usize) -> Self {
        Self::monomial(n, 1 << i, Scalar::one())
    }

    pub fn top(n: usize) -> Self {
        Self::monomial(n, (1u32 << n) - 1, Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, mask: u32, c: Scalar) {
        let entry = self.terms.entry(mask).or_insert_with(Scalar::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.n);
        for (m, x) in &self.terms {
            out.add_term(*m, x * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some(neg) = shuffle_sign(*a, *b) {
                    let c = x * y;
                    out.add_term(a | b, if neg { -c } else { c });
                }
            }
        }
        out
    }

    /// Left derivative `∂/∂ξ_{i+1}`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            if m & (1 << i) != 0 {
                let neg = (m & ((1 << i) - 1)).count_ones() % 2 == 1;
                out.add_term(m & !(1 << i), if neg { -c.clone() } else { c.clone() });
            }
        }
        out
    }

    /// Parity of a homogeneous element (zero counts as even).
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|m| Parity::from_bit(m.count_ones() as i64));
        let first = it.next().unwrap_or(Parity::Even);
        it.all(|p| p == first).then_some(first)
    }
}

/// `{f, g} = (−1)^{|f|} Σ_i ∂_i f ∂_i g`, the sign that makes `f ↦ L_f` a
/// homomorphism. Requires homogeneous `f`.
pub fn poisson_bracket(f: &GrassmannElement, g: &GrassmannElement) -> GrassmannElement {
    let mut out = GrassmannElement::zero(f.n);
    for i in 0..f.n {
        out = out.add(&f.derivative(i).mul(&g.derivative(i)));
    }
    match f.parity() {
        Some(Parity::Odd) => out.scale(&-Scalar::one()),
        _ => out,
    }
}

/// `Σ f_i ∂_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperVectorField {
    pub components: Vec<GrassmannElement>,
}

impl SuperVectorField {
    pub fn zero(n: usize) -> Self {
        SuperVectorField { components: vec![GrassmannElement::zero(n); n] }
    }

    /// `ξ_I ∂_i`.
    pub fn basis(n: usize, mask: u32, i: usize) -> Self {
        let mut x = Self::zero(n);
        x.components[i] = GrassmannElement::monomial(n, mask, Scalar::one());
        x
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn apply(&self, g: &GrassmannElement) -> GrassmannElement {
        let mut out = GrassmannElement::zero(self.n());
        for (i, f) in self.components.iter().enumerate() {
            out = out.add(&f.mul(&g.derivative(i)));
        }
        out
    }

    /// Parity of a homogeneous field: `|f_i| + 1`.
    pub fn parity(&self) -> Option<Parity> {
        let mut ps = self.components.iter().filter(|f| !f.is_zero()).map(|f| f.parity().map(|p| p + Parity::Odd));
        let Some(first) = ps.next() else { return Some(Parity::Even) };
        let first = first?;
        ps.all(|p| p == Some(first)).then_some(first)
    }

    /// Left multiplication `g·X`.
    pub fn left_mul(&self, g: &GrassmannElement) -> Self {
        SuperVectorField { components: self.components.iter().map(|f| g.mul(f)).collect() }
    }

    /// Bracket of homogeneous fields of parities `p`, `q`.
    pub fn bracket(&self, p: Parity, other: &Self, q: Parity) -> Self {
        let s = p.sign_scalar(q);
        SuperVectorField {
            components: (0..self.n())
                .map(|k| self.apply(&other.components[k]).add(&other.apply(&self.components[k]).scale(&-s.clone())))
                .collect(),
        }
    }
}

pub fn divergence(x: &SuperVectorField) -> GrassmannElement {
    let mut out = GrassmannElement::zero(x.n());
    for (i, f) in x.components.iter().enumerate() {
        out = out.add(&f.derivative(i));
    }
    out
}

/// Hamiltonian field `L_f = Σ ∂_i(f) ∂_i`.
pub fn hamiltonian(f: &GrassmannElement) -> SuperVectorField {
    SuperVectorField { components: (0..f.n).map(|i| f.derivative(i)).collect() }
}

/// Masks ordered by size, then value.
fn masks(n: usize) -> Vec<u32> {
    let mut m: Vec<u32> = (0..1u32 << n).collect();
    m.sort_by_key(|&x| (x.count_ones(), x));
    m
}

fn mask_name(mask: u32) -> String {
    (0..32).filter(|i| mask & (1 << i) != 0).map(|i| (i + 1).to_string()).collect::<Vec<_>>().join("")
}

/// Flattening of fields in the monomial order `(|I|, I, i)`.
#[derive(Clone, Debug)]
pub struct FieldCoordinates {
    pub n: usize,
    /// `(mask, i)` for each coordinate
    pub slots: Vec<(u32, usize)>,
    index: BTreeMap<(u32, usize), usize>,
}

impl FieldCoordinates {
    pub fn new(n: usize) -> Self {
        let slots: Vec<(u32, usize)> = masks(n).into_iter().flat_map(|m| (0..n).map(move |i| (m, i))).collect();
        let index = slots.iter().enumerate().map(|(k, &s)| (s, k)).collect();
        FieldCoordinates { n, slots, index }
    }

    pub fn dim(&self) -> usize {
        self.slots.len()
    }

    pub fn flatten(&self, x: &SuperVectorField) -> Vector {
        let mut v = vec![Scalar::zero(); self.dim()];
        for (i, f) in x.components.iter().enumerate() {
            for (m, c) in &f.terms {
                v[self.index[&(*m, i)]] = c.clone();
            }
        }
        v
    }

    pub fn field(&self, v: &[Scalar]) -> SuperVectorField {
        let mut x = SuperVectorField::zero(self.n);
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                let (m, i) = self.slots[k];
                x.components[i].add_term(m, c.clone());
            }
        }
        x
    }

    pub fn slot_parity(&self, k: usize) -> Parity {
        Parity::from_bit(self.slots[k].0.count_ones() as i64 + 1)
    }

    pub fn slot_grade(&self, k: usize) -> i64 {
        self.slots[k].0.count_ones() as i64 - 1
    }

    fn realize(&self, names: Vec<String>, parities: Vec<Parity>, elements: Vec<Vector>) -> Result<Realized> {
        Realized::new(names, parities, elements, self.dim(), |x, p, y, q| self.flatten(&self.field(x).bracket(p, &self.field(y), q)))
    }
}

fn check_n(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min || n > 12 {
        return Err(Error::BadParameters(format!("{what} needs {min} ≤ n ≤ 12")));
    }
    Ok(())
}

/// `W(n)` on the basis `ξ_I ∂_i`.
pub fn w(n: usize) -> Result<Realized> {
    check_n(n, 1, "W(n)")?;
    let fc = FieldCoordinates::new(n);
    let d = fc.dim();
    let names =
        fc.slots.iter().map(|&(m, i)| if m == 0 { format!("d{}", i + 1) } else { format!("x{}d{}", mask_name(m), i + 1) }).collect();
    let parities = (0..d).map(|k| fc.slot_parity(k)).collect();
    let grades = (0..d).map(|k| fc.slot_grade(k)).collect();
    fc.realize(names, parities, (0..d).map(|k| unit_vector(d, k)).collect())?.with_grading(grades, true)
}

/// Kernel of a linear map `W → Λ` restricted to blocks of slots.
fn kernel_by_blocks(fc: &FieldCoordinates, blocks: &[Vec<usize>], map: impl Fn(&SuperVectorField) -> GrassmannElement) -> Vec<Vector> {
    let all_masks = masks(fc.n);
    let mut out = Vec::new();
    for block in blocks {
        let columns: Vec<GrassmannElement> = block.iter().map(|&k| map(&fc.field(&unit_vector(fc.dim(), k)))).collect();
        let rows: Vec<Vector> =
            all_masks.iter().map(|m| columns.iter().map(|c| c.terms.get(m).cloned().unwrap_or_else(Scalar::zero)).collect()).collect();
        let sys = Matrix::from_rows(rows).expect("rectangular");
        for k in kernel_basis(&sys) {
            let mut v = vec![Scalar::zero(); fc.dim()];
            for (&slot, c) in block.iter().zip(k) {
                v[slot] = c;
            }
            out.push(v);
        }
    }
    out
}

fn numbered_parities(fc: &FieldCoordinates, elements: &[Vector], prefix: &str) -> (Vec<String>, Vec<Parity>) {
    let parities: Vec<Parity> =
        elements.iter().map(|v| fc.slot_parity(v.iter().position(|c| !c.is_zero()).expect("nonzero kernel vector"))).collect();
    let names = (1..=elements.len()).map(|k| format!("{prefix}{k}")).collect();
    (names, parities)
}

/// `S(n) = ker div` inside `W(n)`, computed grade by grade.
pub fn s(n: usize) -> Result<Realized> {
    check_n(n, 2, "S(n)")?;
    let fc = FieldCoordinates::new(n);
    let blocks: Vec<Vec<usize>> = (-1..n as i64).map(|g| (0..fc.dim()).filter(|&k| fc.slot_grade(k) == g).collect()).collect();
    let elements = kernel_by_blocks(&fc, &blocks, divergence);
    let grades = elements.iter().map(|v| fc.slot_grade(v.iter().position(|c| !c.is_zero()).unwrap())).collect();
    let (names, parities) = numbered_parities(&fc, &elements, "s");
    fc.realize(names, parities, elements)?.with_grading(grades, true)
}

/// `S̃(n) = {X : div((1 + ξ₁⋯ξ_n) X) = 0}` for even `n`, ungraded.
pub fn s_tilde(n: usize) -> Result<Realized> {
    check_n(n, 4, "S̃(n)")?;
    if n % 2 == 1 {
        return Err(Error::BadParameters("S̃(n) needs even n".into()));
    }
    let fc = FieldCoordinates::new(n);
    let u = GrassmannElement::one(n).add(&GrassmannElement::top(n));
    let blocks: Vec<Vec<usize>> =
        [Parity::Even, Parity::Odd].iter().map(|&p| (0..fc.dim()).filter(|&k| fc.slot_parity(k) == p).collect()).collect();
    let elements = kernel_by_blocks(&fc, &blocks, |x| divergence(&x.left_mul(&u)));
    let (names, parities) = numbered_parities(&fc, &elements, "t");
    fc.realize(names, parities, elements)
}

/// `H(n)` on the basis `L_{ξ_I}`, `I ≠ ∅`, graded by `|I| − 2`.
pub fn h(n: usize) -> Result<Realized> {
    check_n(n, 2, "H(n)")?;
    let fc = FieldCoordinates::new(n);
    let ms: Vec<u32> = masks(n).into_iter().filter(|&m| m != 0).collect();
    let elements = ms.iter().map(|&m| fc.flatten(&hamiltonian(&GrassmannElement::monomial(n, m, Scalar::one())))).collect();
    let names = ms.iter().map(|&m| format!("L{}", mask_name(m))).collect();
    let parities = ms.iter().map(|&m| Parity::from_bit(m.count_ones() as i64)).collect();
    let grades = ms.iter().map(|&m| m.count_ones() as i64 - 2).collect();
    fc.realize(names, parities, elements)?.with_grading(grades, true)
}

/// `SH(n) = [H(n), H(n)]`.
pub fn sh(n: usize) -> Result<LieSuperalgebra> {
    let hn = h(n)?.algebra;
    let rows = hn.derived_subalgebra();
    let names = rows
        .iter()
        .enumerate()
        .map(|(k, r)| {
            let nz: Vec<usize> = (0..r.len()).filter(|&i| !r[i].is_zero()).collect();
            if nz.len() == 1 && r[nz[0]].is_one() {
                hn.name(nz[0]).to_string()
            } else {
                format!("y{}", k + 1)
            }
        })
        .collect();
    hn.subalgebra(&rows, names)
}

/// `dim S(n)_i = n·C(n, i+1) − C(n, i)`.
pub fn s_component_dim(n: usize, i: i64) -> i64 {
    fn binom(n: i64, k: i64) -> i64 {
        if k < 0 || k > n {
            return 0;
        }
        (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
    }
    let n = n as i64;
    n * binom(n, i + 1) - binom(n, i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::supercore::Dims;

    fn x(n: usize, vars: &[usize]) -> GrassmannElement {
        vars.iter().fold(GrassmannElement::one(n), |acc, &i| acc.mul(&GrassmannElement::var(n, i)))
    }

    #[test]
    fn grassmann_rules() {
        let (a, b) = (GrassmannElement::var(3, 0), GrassmannElement::var(3, 1));
        assert!(a.mul(&a).is_zero());
        assert_eq!(a.mul(&b), b.mul(&a).scale(&-Scalar::one()));
        // ∂₂(ξ₁ξ₂) = −ξ₁
        assert_eq!(x(3, &[0, 1]).derivative(1), a.scale(&-Scalar::one()));
    }

    #[test]
    fn divergence_examples() {
        assert_eq!(divergence(&SuperVectorField::basis(2, 0b01, 0)), GrassmannElement::one(2));
        assert!(divergence(&SuperVectorField::basis(2, 0b01, 1)).is_zero());
        assert_eq!(divergence(&SuperVectorField::basis(2, 0b11, 0)), GrassmannElement::var(2, 1));
    }

    #[test]
    fn poisson_examples() {
        let n = 3;
        let x1 = GrassmannElement::var(n, 0);
        assert_eq!(poisson_bracket(&x1, &x1).terms.len(), 1);
        assert!(poisson_bracket(&x1, &GrassmannElement::var(n, 1)).is_zero());
        let p = poisson_bracket(&x(n, &[0, 1, 2]), &x1);
        assert_eq!(p.terms.keys().copied().collect::<Vec<_>>(), vec![0b110]);
    }

    #[test]
    fn hamiltonian_is_homomorphism() {
        let n = 4;
        let fc = FieldCoordinates::new(n);
        for a in 1..1u32 << n {
            for b in 1..1u32 << n {
                let (f, g) = (GrassmannElement::monomial(n, a, Scalar::one()), GrassmannElement::monomial(n, b, Scalar::one()));
                let lhs = hamiltonian(&f).bracket(f.parity().unwrap(), &hamiltonian(&g), g.parity().unwrap());
                assert_eq!(fc.flatten(&lhs), fc.flatten(&hamiltonian(&poisson_bracket(&f, &g))));
            }
        }
    }

    #[test]
    fn cartan_dimensions() {
        let w3 = w(3).unwrap().algebra;
        assert_eq!(w3.dims(), Dims::new(12, 12));
        assert!(w3.validate().is_empty());
        let s3 = s(3).unwrap().algebra;
        assert!(s3.validate().is_empty());
        for g in -1..3 {
            assert_eq!(s3.graded_component(g).unwrap().len() as i64, s_component_dim(3, g));
        }
        let sh4 = sh(4).unwrap();
        assert_eq!(sh4.dim(), 14);
        assert!(sh4.validate().is_empty());
    }

    #[test]
    fn s_tilde_closes() {
        let t = s_tilde(4).unwrap().algebra;
        assert_eq!(t.dim(), 49);
        assert!(t.grading().is_none());
    }
}
