//! Quasireductive superalgebras and instance-level probes of the structure
//! of almost inner derivations.
//!
//! `L` is quasireductive when `L_0` is reductive and `L_1` is a semisimple
//! `L_0`-module. In characteristic zero this amounts to three exact checks:
//! the Killing form of `[L_0, L_0]` is nondegenerate, `L_0 = z(L_0) ⊕ [L_0, L_0]`,
//! and every central element of `L_0` acts semisimply on `L_1`.

use serde::Serialize;

use crate::almostinner::{classify_derivation, AIStatus, ClassifyConfig};
use crate::catalog::{Built, NamedDerivation};
use crate::derivations::{der_vanishing_on_even, derivation_bracket, is_inner, outer_data, Derivation};
use crate::error::{Error, Result};
use crate::exactmath::matrix::{intersect, rank, solve_linear, unit_vector};
use crate::exactmath::{Matrix, Scalar, Vector};
use crate::supercore::{Dims, LieSuperalgebra, Parity};

#[derive(Clone, Debug, Serialize)]
pub struct QuasireductiveCheck {
    pub is_quasireductive: bool,
    pub reasons: Vec<String>,
}

/// Dense univariate polynomial, lowest coefficient first, no trailing zeros.
type UPoly = Vec<Scalar>;

fn trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(Scalar::is_zero) {
        p.pop();
    }
    p
}

fn rem(a: &UPoly, b: &UPoly) -> UPoly {
    let mut r = a.clone();
    let lead = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() {
        let c = r.last().unwrap() / &lead;
        let shift = r.len() - b.len();
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &(&c * bi);
        }
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn derivative(p: &UPoly) -> UPoly {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * &Scalar::from_int(i as i64)).collect())
}

/// Minimal polynomial of a square matrix, monic.
pub fn minimal_polynomial(m: &Matrix) -> Vec<Scalar> {
    let n = m.rows();
    let mut powers = vec![Matrix::identity(n)];
    loop {
        let next = powers.last().unwrap().mul(m);
        let cols: Vec<Vector> = powers.iter().map(|p| p.entries().to_vec()).collect();
        let a = Matrix::from_columns(&cols, n * n);
        if let Some(s) = solve_linear(&a, next.entries()).expect("sizes agree") {
            let mut p: Vec<Scalar> = s.particular.iter().map(|c| -c).collect();
            p.push(Scalar::one());
            return p;
        }
        powers.push(next);
    }
}

/// Semisimple over the algebraic closure: squarefree minimal polynomial.
pub fn is_semisimple_matrix(m: &Matrix) -> bool {
    let p = minimal_polynomial(m);
    gcd(&p, &derivative(&p)).len() <= 1
}

fn even_part(l: &LieSuperalgebra) -> Result<(LieSuperalgebra, Vec<usize>)> {
    let even = l.indices(Parity::Even);
    let basis: Vec<Vector> = even.iter().map(|&i| unit_vector(l.dim(), i)).collect();
    let names = even.iter().map(|&i| l.name(i).to_string()).collect();
    Ok((l.subalgebra(&basis, names)?.without_grading(), even))
}

pub fn is_quasireductive(l: &LieSuperalgebra) -> Result<QuasireductiveCheck> {
    let (l0, even) = even_part(l)?;
    let mut reasons = Vec::new();
    let mut ok = true;

    let derived = l0.derived_subalgebra();
    let gram_rank = rank(&l0.killing_gram(&derived));
    if gram_rank == derived.len() {
        reasons.push(format!("Killing form of [L_0, L_0] (dimension {}) is nondegenerate", derived.len()));
    } else {
        ok = false;
        reasons.push(format!("Killing form of [L_0, L_0] has rank {gram_rank} < {}", derived.len()));
    }

    let center = l0.center();
    let meet = intersect(&center, &derived, l0.dim()).len();
    if meet == 0 && center.len() + derived.len() == l0.dim() {
        reasons.push(format!("L_0 = z(L_0) ⊕ [L_0, L_0] with dim z(L_0) = {}", center.len()));
    } else {
        ok = false;
        reasons.push(format!(
            "z(L_0) + [L_0, L_0] has dimensions {} + {} with intersection {meet} in dim L_0 = {}",
            center.len(),
            derived.len(),
            l0.dim()
        ));
    }

    let odd = l.indices(Parity::Odd);
    for (t, z) in center.iter().enumerate() {
        let mut x = vec![Scalar::zero(); l.dim()];
        for (k, &i) in even.iter().enumerate() {
            x[i] = z[k].clone();
        }
        let ad = l.ad(&x);
        let mut block = Matrix::zeros(odd.len(), odd.len());
        for (a, &i) in odd.iter().enumerate() {
            for (b, &j) in odd.iter().enumerate() {
                block[(a, b)] = ad[(i, j)].clone();
            }
        }
        if !is_semisimple_matrix(&block) {
            ok = false;
            reasons.push(format!("central element z{t} of L_0 acts on L_1 with a repeated root in its minimal polynomial"));
        }
    }
    if ok && !center.is_empty() {
        reasons.push("z(L_0) acts semisimply on L_1".into());
    }
    Ok(QuasireductiveCheck { is_quasireductive: ok, reasons })
}

#[derive(Clone, Debug, Serialize)]
pub struct AbelianCheck {
    pub derivations: usize,
    pub pairs_checked: usize,
    /// index pairs whose bracket is not inner
    pub non_inner_brackets: Vec<(usize, usize)>,
    pub abelian: bool,
}

/// Checks that the listed almost inner derivations commute modulo inner
/// derivations. Each entry must carry an `Inner` or `CertifiedAlmostInner`
/// status.
pub fn abelian_quotient_check(l: &LieSuperalgebra, certified: &[(Derivation, AIStatus)]) -> Result<AbelianCheck> {
    for (k, (_, s)) in certified.iter().enumerate() {
        if !matches!(s, AIStatus::Inner(_) | AIStatus::CertifiedAlmostInner(_)) {
            return Err(Error::BadParameters(format!("derivation {k} is {}, not certified", s.label())));
        }
    }
    let mut non_inner = Vec::new();
    let mut pairs = 0;
    for i in 0..certified.len() {
        for j in i..certified.len() {
            let b = derivation_bracket(l, &certified[i].0, &certified[j].0)?;
            pairs += 1;
            if is_inner(l, &b).is_none() {
                non_inner.push((i, j));
            }
        }
    }
    Ok(AbelianCheck { derivations: certified.len(), pairs_checked: pairs, abelian: non_inner.is_empty(), non_inner_brackets: non_inner })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeEntry {
    pub name: String,
    pub status: AIStatus,
}

#[derive(Clone, Debug, Serialize)]
pub struct OddProbe {
    pub entries: Vec<ProbeEntry>,
    /// an odd non-inner derivation was certified almost inner
    pub certified_odd: bool,
    pub quasireductive: bool,
    pub centerless: bool,
    /// not a centerless quasireductive algebra, where odd almost inner
    /// derivations are known to be inner
    pub outside_hypotheses: bool,
    /// a certified odd entry in a quasireductive algebra, contradicting the
    /// expectation that such derivations are even
    pub conflicts_with_conjecture: bool,
}

fn odd_candidates(built: &Built) -> Result<Vec<NamedDerivation>> {
    let l = &built.algebra;
    let mut out: Vec<NamedDerivation> = built
        .derivations
        .iter()
        .filter(|d| d.derivation.degree() == Parity::Odd && is_inner(l, &d.derivation).is_none())
        .cloned()
        .collect();
    let data = outer_data(l)?;
    for (k, d) in data.outer_reps.iter().enumerate() {
        if d.degree() == Parity::Odd {
            out.push(NamedDerivation { name: format!("outer:{k}"), derivation: d.clone(), certificates: Vec::new() });
        }
    }
    Ok(out)
}

/// Classifies the odd named derivations and odd outer representatives.
pub fn odd_conjecture_probe(built: &Built, cfg: &ClassifyConfig) -> Result<OddProbe> {
    let qr = is_quasireductive(&built.algebra)?;
    let l = &built.algebra;
    let entries: Vec<ProbeEntry> = odd_candidates(built)?
        .into_iter()
        .map(|d| ProbeEntry { status: classify_derivation(l, &d.derivation, &d.certificates, built.structured.clone(), cfg), name: d.name })
        .collect();
    let certified_odd = entries.iter().any(|e| matches!(e.status, AIStatus::CertifiedAlmostInner(_)));
    let quasireductive = qr.is_quasireductive;
    let centerless = l.center().is_empty();
    Ok(OddProbe {
        entries,
        certified_odd,
        quasireductive,
        centerless,
        outside_hypotheses: !(quasireductive && centerless),
        conflicts_with_conjecture: certified_odd && quasireductive,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct QRReport {
    pub quasireductive: QuasireductiveCheck,
    pub center: Dims,
    /// dimensions of the derivations vanishing on `L_0`
    pub der0: Dims,
    pub abelian_check: AbelianCheck,
    pub odd_probe: OddProbe,
}

/// Runs every check on a built algebra; the abelian check uses those named
/// derivations that classify as inner or certified.
pub fn probe(built: &Built, cfg: &ClassifyConfig) -> Result<QRReport> {
    let l = &built.algebra;
    let der0 = der_vanishing_on_even(l)?;
    let der0_dims =
        Dims::new(der0.iter().filter(|d| d.degree() == Parity::Even).count(), der0.iter().filter(|d| d.degree() == Parity::Odd).count());
    let certified: Vec<(Derivation, AIStatus)> = built
        .derivations
        .iter()
        .map(|d| (d.derivation.clone(), classify_derivation(l, &d.derivation, &d.certificates, built.structured.clone(), cfg)))
        .filter(|(_, s)| matches!(s, AIStatus::Inner(_) | AIStatus::CertifiedAlmostInner(_)))
        .collect();
    let center = l.center();
    let center_dims = Dims::new(
        center.iter().filter(|v| l.parity_of(v) == Some(Parity::Even)).count(),
        center.iter().filter(|v| l.parity_of(v) == Some(Parity::Odd)).count(),
    );
    Ok(QRReport {
        quasireductive: is_quasireductive(l)?,
        center: center_dims,
        der0: der0_dims,
        abelian_check: abelian_quotient_check(l, &certified)?,
        odd_probe: odd_conjecture_probe(built, cfg)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::build;

    fn qr(spec: &str) -> bool {
        is_quasireductive(&build(spec).unwrap().algebra).unwrap().is_quasireductive
    }

    #[test]
    fn minimal_polynomials() {
        let j = Matrix::from_ints(&[&[1, 1], &[0, 1]]);
        assert_eq!(minimal_polynomial(&j), vec![Scalar::from_int(1), Scalar::from_int(-2), Scalar::one()]);
        assert!(!is_semisimple_matrix(&j));
        assert!(is_semisimple_matrix(&Matrix::from_ints(&[&[0, -1], &[1, 0]])));
        assert!(is_semisimple_matrix(&Matrix::from_ints(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 3]])));
    }

    #[test]
    fn quasireductive_instances() {
        assert!(qr("example:even"));
        assert!(qr("takiff:sl:2"));
        assert!(qr("gl:2,1"));
        assert!(!qr("lie:uppertri:3"));
        // L_0 = V is abelian and acts trivially on L_1
        assert!(qr("example:odd"));
    }

    #[test]
    fn direct_sum_invariance() {
        for (a, b) in [("example:even", "takiff:sl:2"), ("example:even", "example:odd"), ("lie:uppertri:3", "sl:2,1")] {
            let sum = build(&format!("sum:{a}|{b}")).unwrap().algebra;
            assert_eq!(is_quasireductive(&sum).unwrap().is_quasireductive, qr(a) && qr(b), "{a} + {b}");
        }
    }

    #[test]
    fn abelian_on_inner_and_euler() {
        let built = build("sum:example:even|example:even").unwrap();
        let l = &built.algebra;
        let cfg = ClassifyConfig::default();
        let list: Vec<(Derivation, AIStatus)> = built
            .derivations
            .iter()
            .map(|d| (d.derivation.clone(), classify_derivation(l, &d.derivation, &d.certificates, Vec::new(), &cfg)))
            .collect();
        assert_eq!(list.len(), 2);
        assert!(list.iter().all(|(_, s)| matches!(s, AIStatus::CertifiedAlmostInner(_))));
        assert!(abelian_quotient_check(l, &list).unwrap().abelian);

        let sl = build("sl:2,1").unwrap().algebra;
        let a = Derivation::inner(&sl, &unit_vector(sl.dim(), 1)).unwrap();
        let b = Derivation::inner(&sl, &unit_vector(sl.dim(), 2)).unwrap();
        assert!(!derivation_bracket(&sl, &a, &b).unwrap().matrix().is_zero());
        let pair = vec![(a, AIStatus::Inner(unit_vector(sl.dim(), 1))), (b, AIStatus::Inner(unit_vector(sl.dim(), 2)))];
        assert!(abelian_quotient_check(&sl, &pair).unwrap().abelian);
        assert!(abelian_quotient_check(&sl, &[(pair[0].0.clone(), AIStatus::Undetermined(0))]).is_err());
    }

    #[test]
    fn odd_probes() {
        let cfg = ClassifyConfig::default();
        for spec in ["psq:3", "takiff:sl:2", "sl:2,1"] {
            let p = odd_conjecture_probe(&build(spec).unwrap(), &cfg).unwrap();
            assert!(!p.certified_odd, "{spec}");
            assert!(!p.outside_hypotheses, "{spec}");
        }
        let t = odd_conjecture_probe(&build("takiff:sl:2").unwrap(), &cfg).unwrap();
        let d = t.entries.iter().find(|e| e.name == "d/dtheta").unwrap();
        assert!(matches!(d.status, AIStatus::NotAlmostInner(_)));

        let p = odd_conjecture_probe(&build("example:odd").unwrap(), &cfg).unwrap();
        assert!(p.certified_odd && p.outside_hypotheses && !p.centerless);
        assert!(p.conflicts_with_conjecture);
    }
}
