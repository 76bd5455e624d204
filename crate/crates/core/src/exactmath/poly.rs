//! Sparse multivariate polynomials and rational functions over [`Scalar`].
//!
//! Monomials are ordered graded-lexicographically; terms with zero
//! coefficients are never stored, so structural equality is mathematical
//! equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::scalar::Scalar;
use crate::error::Error;

/// Exponent vector ordered by total degree, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = MultiPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(nvars, Scalar::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = MultiPoly::zero(nvars);
        p.terms.insert(Monomial(e), Scalar::one());
        p
    }

    /// `Σ c_i x_i`.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        let mut p = MultiPoly::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; n];
                e[i] = 1;
                p.terms.insert(Monomial(e), c.clone());
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// The constant value, if the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &MultiPoly) {
        assert_eq!(self.nvars, other.nvars, "polynomials over different variable sets");
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.check(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.check(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.check(other);
        let mut out = MultiPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        self.check(d);
        let (dm, dc) = d.leading()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut q = MultiPoly::zero(self.nvars);
        while let Some((m, c)) = rem.leading() {
            let t = m.div(&dm)?;
            let tc = c / &dc;
            let mut term = MultiPoly::zero(self.nvars);
            term.terms.insert(t.clone(), tc.clone());
            rem = rem.sub(&term.mul(d));
            q.add_term(t, tc);
        }
        Some(q)
    }

    /// Replace variable `i` by `subs[i]` (all over the same target variables).
    pub fn substitute(&self, subs: &[MultiPoly]) -> MultiPoly {
        self.substitute_into(subs, subs.first().map_or(0, MultiPoly::nvars))
    }

    /// As [`MultiPoly::substitute`], with the target variable count given
    /// explicitly (needed when there are no variables to substitute).
    pub fn substitute_into(&self, subs: &[MultiPoly], target: usize) -> MultiPoly {
        assert_eq!(subs.len(), self.nvars, "one substitution per variable");
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&subs[i].pow(e));
                }
            }
            out = out.add(&t);
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = c.clone();
                for (x, &e) in point.iter().zip(&m.0) {
                    if e > 0 {
                        v = &v * &x.pow(e);
                    }
                }
                v
            })
            .sum()
    }

    /// Re-index into a larger variable set: variable `i` becomes `map[i]`.
    pub fn embed(&self, map: &[usize], nvars: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (i, &k) in m.0.iter().enumerate() {
                e[map[i]] += k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Coefficients if the polynomial is homogeneous linear.
    pub fn as_linear_form(&self) -> Option<Vec<Scalar>> {
        let mut out = vec![Scalar::zero(); self.nvars];
        for (m, c) in &self.terms {
            if m.degree() != 1 {
                return None;
            }
            let i = m.0.iter().position(|&e| e == 1).unwrap();
            out[i] = c.clone();
        }
        Some(out)
    }
}

/// True iff all coefficients vanish after canonicalization.
pub fn poly_is_zero(p: &MultiPoly) -> bool {
    p.is_zero()
}

fn write_coeff(f: &mut fmt::Formatter<'_>, c: &Scalar) -> fmt::Result {
    if c.is_rational() {
        write!(f, "{c}")
    } else {
        write!(f, "({c})")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_rational() && c.rational_part() < &num_rational::BigRational::from_integer(0.into());
            let c = if negative { -c } else { c.clone() };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let vars: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
                    .collect();
            if vars.is_empty() {
                write_coeff(f, &c)?;
            } else {
                if !c.is_one() {
                    write_coeff(f, &c)?;
                    f.write_str("*")?;
                }
                f.write_str(&vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Splits at top-level occurrences of `+`/`-` (outside parentheses), keeping signs.
fn split_terms(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth == 0 && (c == '+' || c == '-') && !cur.trim().is_empty() && !cur.ends_with('^') {
            out.push(std::mem::take(&mut cur));
        }
        cur.push(c);
    }
    if !cur.trim().is_empty() {
        out.push(cur);
    }
    out
}

fn split_factors(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Parses a polynomial in variables `x0, x1, …` with `nvars` variables.
pub fn parse_poly(s: &str, nvars: usize) -> Result<MultiPoly, Error> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = MultiPoly::zero(nvars);
    for term in split_terms(&s) {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1, rest.to_string()),
            None => (1, term.trim_start_matches('+').to_string()),
        };
        let mut coeff = Scalar::from_int(sign);
        let mut exps = vec![0u32; nvars];
        for factor in split_factors(&body) {
            if let Some(v) = factor.strip_prefix('x') {
                let (idx, e) = match v.split_once('^') {
                    Some((i, e)) => (i, e.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?),
                    None => (v, 1),
                };
                let idx: usize = idx.parse().map_err(|_| Error::Parse(format!("bad variable `{factor}`")))?;
                if idx >= nvars {
                    return Err(Error::Parse(format!("variable x{idx} out of range ({nvars} variables)")));
                }
                exps[idx] += e;
            } else {
                let inner = factor.strip_prefix('(').and_then(|f| f.strip_suffix(')')).unwrap_or(factor);
                coeff = &coeff * &Scalar::from_str(inner)?;
            }
        }
        p.add_term(Monomial(exps), coeff);
    }
    Ok(p)
}

/// Quotient of polynomials with nonzero denominator. No gcd normalization is
/// performed; equality of values is tested by cross-multiplication.
#[derive(Clone)]
pub struct RatFunc {
    pub num: MultiPoly,
    pub den: MultiPoly,
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::Malformed("rational function with zero denominator".into()));
        }
        assert_eq!(num.nvars(), den.nvars());
        Ok(RatFunc { num, den })
    }

    pub fn poly(p: MultiPoly) -> Self {
        let n = p.nvars();
        RatFunc { num: p, den: MultiPoly::one(n) }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        RatFunc::poly(MultiPoly::constant(nvars, c))
    }

    pub fn zero(nvars: usize) -> Self {
        RatFunc::poly(MultiPoly::zero(nvars))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.den == other.den {
            return RatFunc { num: self.num.add(&other.num), den: self.den.clone() };
        }
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        RatFunc { num: self.num.mul(&other.den).add(&other.num.mul(&self.den)), den: self.den.mul(&other.den) }
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero(self.nvars());
        }
        RatFunc { num: self.num.mul(&other.num), den: self.den.mul(&other.den) }
    }

    pub fn scale(&self, c: &Scalar) -> RatFunc {
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> RatFunc {
        RatFunc { num: self.num.mul(p), den: self.den.clone() }
    }

    pub fn substitute(&self, subs: &[MultiPoly]) -> RatFunc {
        RatFunc { num: self.num.substitute(subs), den: self.den.substitute(subs) }
    }

    pub fn substitute_into(&self, subs: &[MultiPoly], nvars: usize) -> RatFunc {
        RatFunc { num: self.num.substitute_into(subs, nvars), den: self.den.substitute_into(subs, nvars) }
    }

    pub fn embed(&self, map: &[usize], nvars: usize) -> RatFunc {
        RatFunc { num: self.num.embed(map, nvars), den: self.den.embed(map, nvars) }
    }

    pub fn equals(&self, other: &RatFunc) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    pub fn parse(s: &str, nvars: usize) -> Result<RatFunc, Error> {
        let s = s.trim();
        // "(num)/(den)" with balanced parentheses, otherwise a bare polynomial
        if s.starts_with('(') {
            let mut depth = 0;
            for (i, c) in s.char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => {
                        depth -= 1;
                        if depth == 0 {
                            let rest = &s[i + 1..];
                            if let Some(den) = rest.strip_prefix("/(").and_then(|d| d.strip_suffix(')')) {
                                return RatFunc::new(parse_poly(&s[1..i], nvars)?, parse_poly(den, nvars)?);
                            }
                            break;
                        }
                    }
                    _ => {}
                }
            }
        }
        Ok(RatFunc::poly(parse_poly(s, nvars)?))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().is_some_and(|c| c.is_one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(2, i)
    }

    #[test]
    fn zero_tests() {
        let s = x(0).add(&x(1));
        let p = s.mul(&s).sub(&x(0).mul(&x(0))).sub(&x(0).mul(&x(1)).scale(&Scalar::from_int(2))).sub(&x(1).mul(&x(1)));
        assert!(poly_is_zero(&p));
        assert!(poly_is_zero(&x(0).mul(&x(1)).sub(&x(1).mul(&x(0)))));
        assert!(!poly_is_zero(&x(0).sub(&x(1))));
    }

    #[test]
    fn exact_division() {
        let l = x(0).add(&x(1).scale(&Scalar::from_int(3)));
        let p = l.pow(3).mul(&x(1));
        assert_eq!(p.div_exact(&l.pow(2)), Some(l.mul(&x(1))));
        assert_eq!(x(0).div_exact(&x(1)), None);
    }

    #[test]
    fn parse_print_roundtrip() {
        let p = parse_poly("2/3*x0^2*x1 - x1 + 5 + (1/2+1*sqrt(2))*x0", 2).unwrap();
        assert_eq!(parse_poly(&p.to_string(), 2).unwrap(), p);
        let r = RatFunc::parse("(2*x0)/(x1^2)", 2).unwrap();
        assert_eq!(r.to_string(), "(2*x0)/(x1^2)");
        assert!(RatFunc::parse("(x0)/(0)", 2).is_err());
        assert!(parse_poly("x5", 2).is_err());
    }

    #[test]
    fn substitution_and_eval() {
        let p = parse_poly("x0*x1 + 1", 2).unwrap();
        let q = p.substitute(&[x(1), x(0).add(&x(1))]);
        assert_eq!(q, parse_poly("x0*x1 + x1^2 + 1", 2).unwrap());
        assert_eq!(q.eval(&[Scalar::from_int(2), Scalar::from_int(3)]), Scalar::from_int(16));
    }
}
