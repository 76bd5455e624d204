//! Conical orbits of linear actions and the Euler derivation of the
//! associated superalgebra `g ⊕ V`.
//!
//! A point `v` lies on a conical orbit exactly when `v ∈ g·v`, which is one
//! exact linear system per point. Sampling finds counterexamples; it never
//! proves that every orbit is conical.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::almostinner::{pointwise_system, random_scalar, verify_certificate, AIStatus, ClassifyConfig, Refutation};
use crate::catalog::examples::prehom_super_built;
use crate::catalog::PairGV;
use crate::derivations::is_inner;
use crate::error::{Error, Result};
use crate::exactmath::matrix::{is_zero_vector, solve_with_ranks, unit_vector, zero_vector};
use crate::exactmath::{Matrix, Scalar, Vector};

/// Some `X ∈ g` (in coordinates of `g`) with `ρ(X)v = v`.
pub fn orbit_membership_tangent(pair: &PairGV, v: &[Scalar]) -> Result<Option<Vector>> {
    Ok(tangent_system(pair, v)?.0)
}

/// The solution together with the coefficient and augmented ranks.
fn tangent_system(pair: &PairGV, v: &[Scalar]) -> Result<(Option<Vector>, usize, usize)> {
    let m = &pair.module;
    if v.len() != m.dim {
        return Err(Error::Dimension(format!("vector has length {} but the module has dimension {}", v.len(), m.dim)));
    }
    let cols: Vec<Vector> = m.action.iter().map(|a| a.mul_vec(v)).collect();
    let a = Matrix::from_columns(&cols, m.dim);
    let c = solve_with_ranks(&a, v)?;
    Ok((c.solution.map(|s| s.particular), c.coefficient_rank, c.augmented_rank))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConicalVerdict {
    AllSampledConical,
    Refuted,
}

/// A point off its own tangent space, with the ranks of `[ρ(g)v]` and
/// `[ρ(g)v | v]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConicalFailure {
    pub witness: Vector,
    pub coefficient_rank: usize,
    pub augmented_rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConicalReport {
    pub pair: String,
    pub seed: u64,
    pub samples: usize,
    pub failures: Vec<ConicalFailure>,
    pub verdict: ConicalVerdict,
}

/// Basis vectors first, then `cfg.samples` random nonzero points.
pub fn scan_points(dim: usize, cfg: &ClassifyConfig) -> Vec<Vector> {
    let mut points: Vec<Vector> = (0..dim).map(|i| unit_vector(dim, i)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut drawn = 0;
    while drawn < cfg.samples && dim > 0 {
        let v: Vector = (0..dim).map(|_| random_scalar(&mut rng, cfg)).collect();
        if !is_zero_vector(&v) {
            points.push(v);
            drawn += 1;
        }
    }
    points
}

/// Tests `v ∈ g·v` on [`scan_points`], stopping at the first failure.
pub fn conical_scan(pair: &PairGV, cfg: &ClassifyConfig) -> Result<ConicalReport> {
    let mut samples = 0;
    let mut failures = Vec::new();
    for v in scan_points(pair.module.dim, cfg) {
        samples += 1;
        let (x, coefficient_rank, augmented_rank) = tangent_system(pair, &v)?;
        if x.is_none() {
            failures.push(ConicalFailure { witness: v, coefficient_rank, augmented_rank });
            break;
        }
    }
    let verdict = if failures.is_empty() { ConicalVerdict::AllSampledConical } else { ConicalVerdict::Refuted };
    Ok(ConicalReport { pair: pair.label.clone(), seed: cfg.seed, samples, failures, verdict })
}

/// Classifies the Euler derivation of `g ⊕ V` (with `V` odd). The built-in
/// stabilizer certificate is used when the pair has one; otherwise a conical
/// scan supplies the refutation, and its witness is embedded in `L_1`.
pub fn euler_prehom_classify(pair: &PairGV, cfg: &ClassifyConfig) -> Result<AIStatus> {
    let built = prehom_super_built(pair)?;
    let l = &built.algebra;
    let euler = &built.derivations[0];
    if let Some(a) = is_inner(l, &euler.derivation) {
        return Ok(AIStatus::Inner(a));
    }
    for c in &euler.certificates {
        if verify_certificate(l, &euler.derivation, c)? {
            return Ok(AIStatus::CertifiedAlmostInner(c.clone()));
        }
    }
    let scan = conical_scan(pair, cfg)?;
    let Some(f) = scan.failures.first() else {
        return Ok(AIStatus::Undetermined(scan.samples));
    };
    let offset = pair.g.dim();
    let mut x = zero_vector(l.dim());
    for (k, c) in f.witness.iter().enumerate() {
        x[offset + k] = c.clone();
    }
    let p = pointwise_system(l, &euler.derivation, &x)?;
    debug_assert!(p.selector.is_none());
    Ok(AIStatus::NotAlmostInner(Refutation { witness: x, coefficient_rank: p.coefficient_rank, augmented_rank: p.augmented_rank }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn sl2_tangent() {
        let pair = PairGV::parse("sl:2", "std").unwrap();
        let x = orbit_membership_tangent(&pair, &ints(&[1, 0])).unwrap().unwrap();
        let m = pair.module.action_of(&x);
        assert_eq!(m.mul_vec(&ints(&[1, 0])), ints(&[1, 0]));
    }

    #[test]
    fn so3_is_not_conical() {
        let pair = PairGV::parse("so:3", "std").unwrap();
        assert!(orbit_membership_tangent(&pair, &ints(&[1, 0, 0])).unwrap().is_none());
        let r = conical_scan(&pair, &ClassifyConfig::default()).unwrap();
        assert_eq!(r.verdict, ConicalVerdict::Refuted);
        assert_eq!(r.failures[0].witness, ints(&[1, 0, 0]));
        match euler_prehom_classify(&pair, &ClassifyConfig::default()).unwrap() {
            AIStatus::NotAlmostInner(r) => assert_eq!(r.witness, ints(&[0, 0, 0, 1, 0, 0])),
            other => panic!("{}", other.label()),
        }
    }

    #[test]
    fn rescaling_invariance() {
        let cfg = ClassifyConfig { samples: 8, ..Default::default() };
        for (g, v) in [("sl:3", "std"), ("so:3", "std"), ("sp:4", "std")] {
            let pair = PairGV::parse(g, v).unwrap();
            for p in scan_points(pair.module.dim, &cfg) {
                let scaled: Vector = p.iter().map(|c| c * &Scalar::from_frac(-3, 7)).collect();
                assert_eq!(
                    orbit_membership_tangent(&pair, &p).unwrap().is_some(),
                    orbit_membership_tangent(&pair, &scaled).unwrap().is_some()
                );
            }
        }
    }

    #[test]
    fn transitive_pairs_scan_clean() {
        let cfg = ClassifyConfig::default();
        for (g, v) in [("sl:3", "std"), ("sp:4", "std"), ("sl:5", "wedge2")] {
            let r = conical_scan(&PairGV::parse(g, v).unwrap(), &cfg).unwrap();
            assert_eq!(r.verdict, ConicalVerdict::AllSampledConical, "{g} {v}");
            assert!(r.samples >= 64);
        }
    }

    #[test]
    fn euler_statuses() {
        let cfg = ClassifyConfig::default();
        let s = euler_prehom_classify(&PairGV::parse("sl:2", "std").unwrap(), &cfg).unwrap();
        assert!(matches!(s, AIStatus::CertifiedAlmostInner(_)));
        let s = euler_prehom_classify(&PairGV::parse("gl:1", "std").unwrap(), &cfg).unwrap();
        assert!(matches!(s, AIStatus::Inner(_)));
    }
}
