//! The classification table: for each simple instance, dimensions, center,
//! outer derivations and the verdict on every outer representative, checked
//! against expected values.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::almostinner::{classify_derivation, random_scalar, AIStatus, ClassifyConfig};
use crate::catalog;
use crate::derivations::{euler_derivation, is_inner, outer_data};
use crate::error::{Error, Result};
use crate::exactmath::matrix::{is_zero_vector, rank, sub_vec};
use crate::exactmath::{Matrix, Scalar};
use crate::supercore::{Dims, LieSuperalgebra, Parity};

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// stated in the literature
    Published,
    /// computed independently of the row under test
    Derived,
}

#[derive(Clone, Debug)]
pub struct Expectation {
    pub spec: &'static str,
    pub label: &'static str,
    pub outer: Dims,
    pub source: Source,
    pub undetermined_allowed: bool,
}

const fn row(spec: &'static str, label: &'static str, even: usize, odd: usize, source: Source) -> Expectation {
    Expectation { spec, label, outer: Dims { even, odd }, source, undetermined_allowed: false }
}

pub fn default_rows() -> Vec<Expectation> {
    use Source::*;
    let mut rows = vec![
        row("sl:2,1", "sl(2|1)", 0, 0, Published),
        row("psl:2", "psl(2|2)", 3, 0, Published),
        row("psl:3", "psl(3|3)", 1, 0, Published),
        row("psq:3", "psq(3)", 0, 1, Published),
        row("psq:4", "psq(4)", 0, 1, Published),
        row("spe:3", "spe(3)", 1, 0, Published),
        row("osp:1,2", "osp(1|2)", 0, 0, Published),
        row("osp:3,2", "osp(3|2)", 0, 0, Published),
        row("osp:4,2", "osp(4|2)", 0, 0, Published),
        row("W:3", "W(3)", 0, 0, Published),
        row("S:3", "S(3)", 1, 0, Published),
        row("St:4", "S̃(4)", 0, 0, Published),
        row("SH:4", "SH(4)", 3, 0, Derived),
        row("SH:5", "SH(5)", 1, 1, Derived),
        row("D21a:2", "D(2,1;2)", 0, 0, Published),
    ];
    // even n has no semisimple witness with pairwise nonvanishing eigenvalue sums
    rows[4].undetermined_allowed = true;
    rows
}

/// Rank of `L_0`: the nullity of `ad x` on `L_0` for generic `x ∈ L_0`,
/// minimized over a few seeded samples.
pub fn even_rank(l: &LieSuperalgebra, seed: u64) -> usize {
    let even = l.indices(Parity::Even);
    if even.is_empty() {
        return 0;
    }
    let cfg = ClassifyConfig { seed, ..Default::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = even.len();
    for _ in 0..4 {
        let mut x = vec![Scalar::zero(); l.dim()];
        for &i in &even {
            x[i] = random_scalar(&mut rng, &cfg);
        }
        let ad = l.ad(&x);
        let mut block = Matrix::zeros(even.len(), even.len());
        for (a, &i) in even.iter().enumerate() {
            for (b, &j) in even.iter().enumerate() {
                block[(a, b)] = ad[(i, j)].clone();
            }
        }
        best = best.min(even.len() - rank(&block));
    }
    best
}

#[derive(Clone, Debug, Serialize)]
pub struct OuterEntry {
    pub index: usize,
    pub degree: Parity,
    /// shift in the Z-grading, when the algebra is graded
    pub shift: Option<i64>,
    pub status: AIStatus,
}

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub spec: String,
    pub label: String,
    pub rank: usize,
    pub dims: Dims,
    pub valid: bool,
    pub center: Dims,
    pub outer: Dims,
    pub expected_outer: Dims,
    pub source: Source,
    pub undetermined_allowed: bool,
    pub outer_reps: Vec<OuterEntry>,
    pub pass: bool,
}

fn center_dims(l: &LieSuperalgebra) -> Dims {
    let c = l.center();
    let even = c.iter().filter(|v| l.parity_of(v) == Some(Parity::Even)).count();
    Dims::new(even, c.len() - even)
}

pub fn compute_row(e: &Expectation, cfg: &ClassifyConfig) -> Result<Row> {
    let built = catalog::build(e.spec)?;
    let l = &built.algebra;
    let data = outer_data(l)?;
    let outer_reps: Vec<OuterEntry> = data
        .outer_reps
        .par_iter()
        .enumerate()
        .map(|(index, d)| OuterEntry {
            index,
            degree: d.degree(),
            shift: d.shift(l),
            status: classify_derivation(l, d, &[], built.structured.clone(), cfg),
        })
        .collect();
    let valid = l.validate().is_empty();
    let verdicts_ok = outer_reps.iter().all(|r| match r.status {
        AIStatus::NotAlmostInner(_) => true,
        AIStatus::Undetermined(_) => e.undetermined_allowed,
        AIStatus::Inner(_) | AIStatus::CertifiedAlmostInner(_) => false,
    });
    Ok(Row {
        spec: e.spec.into(),
        label: e.label.into(),
        rank: even_rank(l, cfg.seed),
        dims: l.dims(),
        valid,
        center: center_dims(l),
        outer: data.outer_dims,
        expected_outer: e.outer,
        source: e.source,
        undetermined_allowed: e.undetermined_allowed,
        pass: valid && data.outer_dims == e.outer && verdicts_ok,
        outer_reps,
    })
}

/// `ad_a = E` for the Euler derivation, with `a` compared to an explicit
/// diagonal matrix, exactly or modulo the center.
#[derive(Clone, Debug, Serialize)]
pub struct EulerCheck {
    pub spec: String,
    pub expected_diagonal: Vec<Scalar>,
    pub modulo_center: bool,
    pub status: &'static str,
    pub witness: Option<Vec<Scalar>>,
    pub pass: bool,
}

pub fn euler_check(spec: &str, diagonal: &[i64], modulo_center: bool) -> Result<EulerCheck> {
    let built = catalog::build(spec)?;
    let l = &built.algebra;
    let model = built.model.as_ref().ok_or_else(|| Error::BadParameters(format!("{spec} has no matrix model")))?;
    let n = diagonal.len();
    let mut h = Matrix::zeros(n, n);
    for (i, &c) in diagonal.iter().enumerate() {
        h[(i, i)] = Scalar::from_int(c);
    }
    let e = euler_derivation(l)?;
    let witness = is_inner(l, &e);
    let pass = match (&witness, model.coords_of(&h)) {
        (Some(a), Some(hc)) => {
            let diff = sub_vec(a, &hc);
            if modulo_center {
                l.ad(&diff).is_zero()
            } else {
                is_zero_vector(&diff)
            }
        }
        _ => false,
    };
    Ok(EulerCheck {
        spec: spec.into(),
        expected_diagonal: h.entries().iter().step_by(n + 1).cloned().collect(),
        modulo_center,
        status: if witness.is_some() { "inner" } else { "not_inner" },
        witness,
        pass,
    })
}

/// `H = diag(m+n, …, 1)` on `gl(2|1)` up to the center, and
/// `H − str H/(m−n) I = diag(−1, −2, −3)` on `sl(2|1)`.
pub fn euler_checks() -> Result<Vec<EulerCheck>> {
    Ok(vec![euler_check("gl:2,1", &[3, 2, 1], true)?, euler_check("sl:2,1", &[-1, -2, -3], false)?])
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub samples: usize,
    pub field: String,
    pub max_rank: Option<usize>,
    pub rows: Vec<Row>,
    pub euler_checks: Vec<EulerCheck>,
    pub pass: bool,
}

/// Rows in [`default_rows`] order whose even rank is at most `max_rank`.
pub fn classification_table(cfg: &ClassifyConfig, max_rank: Option<usize>) -> Result<Report> {
    let expectations = default_rows();
    let rows: Vec<Row> = expectations
        .par_iter()
        .map(|e| -> Result<Option<Row>> {
            if let Some(m) = max_rank {
                if even_rank(&catalog::build(e.spec)?.algebra, cfg.seed) > m {
                    return Ok(None);
                }
            }
            compute_row(e, cfg).map(Some)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let euler = if max_rank == Some(0) { Vec::new() } else { euler_checks()? };
    let pass = rows.iter().all(|r| r.pass) && euler.iter().all(|c| c.pass);
    let field = match cfg.field {
        crate::almostinner::Field::Rational => "q".to_string(),
        crate::almostinner::Field::QuadraticExtension(d) => format!("qsqrt:{d}"),
    };
    let command = match max_rank {
        Some(m) => format!("report --seed {} --max-rank {m}", cfg.seed),
        None => format!("report --seed {}", cfg.seed),
    };
    Ok(Report { command, seed: cfg.seed, samples: cfg.samples, field, max_rank, rows, euler_checks: euler, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_witnesses() {
        for c in euler_checks().unwrap() {
            assert!(c.pass, "{}", c.spec);
        }
    }

    #[test]
    fn empty_table() {
        let r = classification_table(&ClassifyConfig::default(), Some(0)).unwrap();
        assert!(r.rows.is_empty());
        assert!(r.pass);
    }

    #[test]
    fn ranks() {
        assert_eq!(even_rank(&catalog::build("sl:2,1").unwrap().algebra, 1), 2);
        assert_eq!(even_rank(&catalog::build("psq:3").unwrap().algebra, 1), 2);
        assert_eq!(even_rank(&catalog::build("osp:1,2").unwrap().algebra, 1), 1);
    }

    #[test]
    fn small_rows() {
        let cfg = ClassifyConfig::default();
        for e in default_rows().iter().filter(|e| ["sl:2,1", "psq:3", "osp:1,2"].contains(&e.spec)) {
            let r = compute_row(e, &cfg).unwrap();
            assert!(r.pass, "{}", r.label);
        }
    }
}
