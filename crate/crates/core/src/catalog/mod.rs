//! Constructors for every algebra family in scope, addressed by spec strings
//! such as `psq:3`, `W:3`, `D21a:2/1` or `blocksuper:n=2,k=1,A=zero,C=zero`.

pub mod examples;
pub mod grassmann;
pub mod matrix_families;
pub mod modules;
pub mod realize;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactmath::Scalar;
use crate::supercore::LieSuperalgebra;

pub use examples::{BlockPart, Built, NamedDerivation};
pub use modules::{LieKind, Module, PairGV};

/// A parsed algebra spec.
#[derive(Clone, Debug, PartialEq)]
pub enum AlgebraSpec {
    Gl(usize, usize),
    Sl(usize, usize),
    Psl(usize),
    Q(usize),
    Sq(usize),
    Psq(usize),
    Spe(usize),
    /// `osp(m|2n)` with the second field `n`
    Osp(usize, usize),
    D21a(Scalar),
    W(usize),
    S(usize),
    STilde(usize),
    H(usize),
    SH(usize),
    Lie(LieKind),
    Takiff(LieKind),
    ExampleEven,
    ExampleOdd,
    BlockSuper {
        n: usize,
        k: usize,
        a: BlockPart,
        c: BlockPart,
    },
    BlockLie {
        n: usize,
        k: usize,
        c: BlockPart,
    },
    PrehomSuper {
        g: String,
        v: String,
    },
    PrehomOdd {
        g: String,
        v: String,
    },
    Abelian(usize, usize),
    Sum(Box<AlgebraSpec>, Box<AlgebraSpec>),
}

fn ints(s: &str, count: usize) -> Result<Vec<usize>> {
    let v: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("expected an integer, got '{t}'"))))
        .collect::<Result<_>>()?;
    if v.len() != count {
        return Err(Error::Parse(format!("expected {count} integer parameter(s), got '{s}'")));
    }
    Ok(v)
}

fn keyed(s: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for part in s.split(',') {
        let (k, v) = part.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value, got '{part}'")))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn key_usize(m: &BTreeMap<String, String>, k: &str) -> Result<usize> {
    m.get(k)
        .ok_or_else(|| Error::Parse(format!("missing parameter '{k}'")))?
        .parse()
        .map_err(|_| Error::Parse(format!("bad value for '{k}'")))
}

fn key_part(m: &BTreeMap<String, String>, k: &str) -> Result<BlockPart> {
    m.get(k).map_or(Ok(BlockPart::Zero), |v| BlockPart::parse(v))
}

fn lie_kind(s: &str) -> Result<LieKind> {
    let (f, n) = s.split_once(':').ok_or_else(|| Error::Parse(format!("expected kind:n, got '{s}'")))?;
    LieKind::parse(f, n)
}

impl AlgebraSpec {
    pub fn parse(s: &str) -> Result<AlgebraSpec> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("sum:") {
            let (a, b) = rest.split_once('|').ok_or_else(|| Error::Parse("sum needs two specs separated by '|'".into()))?;
            return Ok(AlgebraSpec::Sum(Box::new(Self::parse(a)?), Box::new(Self::parse(b)?)));
        }
        let (family, params) = s.split_once(':').ok_or_else(|| Error::Parse(format!("expected family:params, got '{s}'")))?;
        let one = |p: &str| ints(p, 1).map(|v| v[0]);
        Ok(match family {
            "gl" => {
                let v = ints(params, 2)?;
                AlgebraSpec::Gl(v[0], v[1])
            }
            "sl" => {
                let v = ints(params, 2)?;
                AlgebraSpec::Sl(v[0], v[1])
            }
            "psl" => {
                let v: Vec<usize> = params
                    .split(',')
                    .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("bad integer '{t}'"))))
                    .collect::<Result<_>>()?;
                match v.as_slice() {
                    [n] => AlgebraSpec::Psl(*n),
                    [m, n] if m == n => AlgebraSpec::Psl(*n),
                    [_, _] => return Err(Error::BadParameters("psl(m|n) requires equal blocks".into())),
                    _ => return Err(Error::Parse(format!("bad psl parameters '{params}'"))),
                }
            }
            "q" => AlgebraSpec::Q(one(params)?),
            "sq" => AlgebraSpec::Sq(one(params)?),
            "psq" => AlgebraSpec::Psq(one(params)?),
            "spe" => AlgebraSpec::Spe(one(params)?),
            "osp" => {
                let v = ints(params, 2)?;
                if v[1] % 2 == 1 {
                    return Err(Error::BadParameters("osp(m|2n) needs an even second parameter".into()));
                }
                AlgebraSpec::Osp(v[0], v[1] / 2)
            }
            "D21a" => AlgebraSpec::D21a(params.parse::<Scalar>()?),
            "W" => AlgebraSpec::W(one(params)?),
            "S" => AlgebraSpec::S(one(params)?),
            "St" | "S~" => AlgebraSpec::STilde(one(params)?),
            "H" => AlgebraSpec::H(one(params)?),
            "SH" => AlgebraSpec::SH(one(params)?),
            "lie" => AlgebraSpec::Lie(lie_kind(params)?),
            "takiff" => AlgebraSpec::Takiff(lie_kind(params)?),
            "example" => match params {
                "even" => AlgebraSpec::ExampleEven,
                "odd" => AlgebraSpec::ExampleOdd,
                _ => return Err(Error::Parse(format!("unknown example '{params}' (even, odd)"))),
            },
            "blocksuper" => {
                let m = keyed(params)?;
                AlgebraSpec::BlockSuper { n: key_usize(&m, "n")?, k: key_usize(&m, "k")?, a: key_part(&m, "A")?, c: key_part(&m, "C")? }
            }
            "blocklie" => {
                let m = keyed(params)?;
                AlgebraSpec::BlockLie { n: key_usize(&m, "n")?, k: key_usize(&m, "k")?, c: key_part(&m, "C")? }
            }
            "prehomsuper" | "prehomodd" => {
                let m = keyed_pair(params)?;
                if family == "prehomsuper" {
                    AlgebraSpec::PrehomSuper { g: m.0, v: m.1 }
                } else {
                    AlgebraSpec::PrehomOdd { g: m.0, v: m.1 }
                }
            }
            "abelian" => {
                let v = ints(params, 2)?;
                AlgebraSpec::Abelian(v[0], v[1])
            }
            _ => return Err(Error::Parse(format!("unknown family '{family}'; see `list`"))),
        })
    }

    pub fn build(&self) -> Result<Built> {
        use examples as ex;
        use grassmann as gr;
        use matrix_families as mf;
        Ok(match self {
            AlgebraSpec::Gl(m, n) => Built::from_model(mf::gl(*m, *n)?),
            AlgebraSpec::Sl(m, n) => Built::from_model(mf::sl(*m, *n)?),
            AlgebraSpec::Psl(n) => ex::psl_built(*n)?,
            AlgebraSpec::Q(n) => Built::from_model(mf::q(*n)?),
            AlgebraSpec::Sq(n) => Built::from_model(mf::sq(*n)?),
            AlgebraSpec::Psq(n) => ex::psq_built(*n)?,
            AlgebraSpec::Spe(n) => ex::spe_built(*n)?,
            AlgebraSpec::Osp(m, n) => Built::from_model(mf::osp(*m, *n)?),
            AlgebraSpec::D21a(a) => Built::plain(mf::d21a(a)?),
            AlgebraSpec::W(n) => Built::plain(gr::w(*n)?.algebra),
            AlgebraSpec::S(n) => {
                range(*n, 3, "S(n)")?;
                Built::plain(gr::s(*n)?.algebra)
            }
            AlgebraSpec::STilde(n) => Built::plain(gr::s_tilde(*n)?.algebra),
            AlgebraSpec::H(n) => Built::plain(gr::h(*n)?.algebra),
            AlgebraSpec::SH(n) => {
                range(*n, 4, "SH(n)")?;
                Built::plain(gr::sh(*n)?)
            }
            AlgebraSpec::Lie(kind) => {
                let model = kind.model()?;
                let mut b = Built::from_model(model);
                b.algebra = b.algebra.without_grading();
                b
            }
            AlgebraSpec::Takiff(kind) => ex::takiff(kind)?,
            AlgebraSpec::ExampleEven => ex::example_even()?,
            AlgebraSpec::ExampleOdd => ex::example_odd()?,
            AlgebraSpec::BlockSuper { n, k, a, c } => ex::block_super(*n, *k, *a, *c)?,
            AlgebraSpec::BlockLie { n, k, c } => ex::block_lie(*n, *k, *c)?,
            AlgebraSpec::PrehomSuper { g, v } => ex::prehom_super_built(&PairGV::parse(g, v)?)?,
            AlgebraSpec::PrehomOdd { g, v } => ex::prehom_odd(&PairGV::parse(g, v)?)?,
            AlgebraSpec::Abelian(p, q) => Built::plain(LieSuperalgebra::abelian(*p, *q)),
            AlgebraSpec::Sum(a, b) => Built::direct_sum(&a.build()?, &b.build()?)?,
        })
    }
}

fn keyed_pair(params: &str) -> Result<(String, String)> {
    // `g=` may itself contain commas only inside `V`, so split at ",V="
    let (g, v) = params.split_once(",V=").ok_or_else(|| Error::Parse("expected g=<lie>,V=<module>".into()))?;
    let g = g.strip_prefix("g=").ok_or_else(|| Error::Parse("expected g=<lie>,V=<module>".into()))?;
    Ok((g.to_string(), v.to_string()))
}

fn range(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min {
        return Err(Error::BadParameters(format!("{what} needs n ≥ {min}")));
    }
    Ok(())
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraSpec::Gl(m, n) => write!(f, "gl:{m},{n}"),
            AlgebraSpec::Sl(m, n) => write!(f, "sl:{m},{n}"),
            AlgebraSpec::Psl(n) => write!(f, "psl:{n},{n}"),
            AlgebraSpec::Q(n) => write!(f, "q:{n}"),
            AlgebraSpec::Sq(n) => write!(f, "sq:{n}"),
            AlgebraSpec::Psq(n) => write!(f, "psq:{n}"),
            AlgebraSpec::Spe(n) => write!(f, "spe:{n}"),
            AlgebraSpec::Osp(m, n) => write!(f, "osp:{m},{}", 2 * n),
            AlgebraSpec::D21a(a) => write!(f, "D21a:{a}"),
            AlgebraSpec::W(n) => write!(f, "W:{n}"),
            AlgebraSpec::S(n) => write!(f, "S:{n}"),
            AlgebraSpec::STilde(n) => write!(f, "St:{n}"),
            AlgebraSpec::H(n) => write!(f, "H:{n}"),
            AlgebraSpec::SH(n) => write!(f, "SH:{n}"),
            AlgebraSpec::Lie(k) => write!(f, "lie:{}", k.label()),
            AlgebraSpec::Takiff(k) => write!(f, "takiff:{}", k.label()),
            AlgebraSpec::ExampleEven => write!(f, "example:even"),
            AlgebraSpec::ExampleOdd => write!(f, "example:odd"),
            AlgebraSpec::BlockSuper { n, k, a, c } => write!(f, "blocksuper:n={n},k={k},A={},C={}", a.label(), c.label()),
            AlgebraSpec::BlockLie { n, k, c } => write!(f, "blocklie:n={n},k={k},C={}", c.label()),
            AlgebraSpec::PrehomSuper { g, v } => write!(f, "prehomsuper:g={g},V={v}"),
            AlgebraSpec::PrehomOdd { g, v } => write!(f, "prehomodd:g={g},V={v}"),
            AlgebraSpec::Abelian(p, q) => write!(f, "abelian:{p},{q}"),
            AlgebraSpec::Sum(a, b) => write!(f, "sum:{a}|{b}"),
        }
    }
}

/// Builds an algebra from a spec string.
/// Builds a catalog entry, or reads a `superder/v1` file when `spec` ends in `.json`.
pub fn build(spec: &str) -> Result<Built> {
    if spec.ends_with(".json") {
        return Ok(Built::plain(crate::io::read_algebra(std::path::Path::new(spec))?));
    }
    AlgebraSpec::parse(spec)?.build()
}

pub struct CatalogEntry {
    pub syntax: &'static str,
    pub range: &'static str,
    pub description: &'static str,
}

pub fn list() -> Vec<CatalogEntry> {
    let e = |syntax, range, description| CatalogEntry { syntax, range, description };
    vec![
        e("gl:m,n", "m + n ≥ 1", "gl(m|n), graded by deg E_ij = j − i"),
        e("sl:m,n", "m + n ≥ 2", "supertraceless matrices"),
        e("psl:n,n", "n ≥ 2", "sl(n|n)/⟨I⟩ with the block grading"),
        e("q:n", "n ≥ 1", "queer superalgebra [[A,B],[B,A]]"),
        e("sq:n", "n ≥ 2", "q(n) with traceless odd part"),
        e("psq:n", "n ≥ 3", "sq(n)/⟨I⟩"),
        e("spe:n", "n ≥ 2", "periplectic [[A,B],[C,−Aᵀ]], B symmetric, C skew, tr A = 0"),
        e("osp:m,2n", "m ≥ 1, n ≥ 1", "orthosymplectic, form diag(I_m, J)"),
        e("D21a:a", "a ∉ {0, −1}", "D(2,1;a), odd bracket solved from Jacobi"),
        e("W:n", "1 ≤ n ≤ 12", "vector fields on F^{0|n}"),
        e("S:n", "3 ≤ n ≤ 12", "divergence-free vector fields"),
        e("St:n", "even n ≥ 4", "div((1 + ξ₁⋯ξ_n)X) = 0, ungraded"),
        e("H:n", "2 ≤ n ≤ 12", "Hamiltonian fields L_f, f ∈ Λ_n/F"),
        e("SH:n", "4 ≤ n ≤ 12", "[H(n), H(n)]"),
        e("lie:<kind>:n", "kind ∈ sl, gl, sp (even n), so, uppertri", "classical Lie algebra"),
        e("takiff:<kind>:n", "as lie", "k ⊕ kθ"),
        e("example:even", "", "sl(2) ⋉ V₂ with the Euler derivation"),
        e("example:odd", "", "L_0 = V₂, L_1 = sl(2) ⊕ V₂ with D = pr₂"),
        e("blocksuper:n=,k=,A=,C=", "n ≥ 2, 1 ≤ k < n, A/C ∈ zero, gl, sl", "block subalgebra of gl(n|n+k) with ad_N"),
        e("blocklie:n=,k=,C=", "n ≥ 2, 1 ≤ k < n, C ∈ zero, gl, sl", "block subalgebra of gl(2n+k) with ad_N"),
        e("prehomsuper:g=<lie>,V=<module>", "modules std, dual, wedge2, sym2; sums via + and *", "g ⊕ V with V odd, Euler derivation"),
        e("prehomodd:g=<lie>,V=<module>", "as prehomsuper", "L_0 = V, L_1 = g ⊕ V with D(v) = (0, v)"),
        e("abelian:p,q", "", "abelian of dimension (p|q)"),
        e("sum:<spec>|<spec>", "", "direct sum"),
        e("<path>.json", "", "algebra file"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::supercore::Dims;

    #[test]
    fn spec_roundtrip() {
        for s in [
            "gl:2,1",
            "psl:2,2",
            "osp:3,2",
            "D21a:2",
            "St:4",
            "lie:sp:4",
            "takiff:sl:2",
            "blocksuper:n=2,k=1,A=sl,C=zero",
            "prehomsuper:g=sl:2+sl:3,V=std*std",
            "sum:example:even|example:even",
        ] {
            let spec = AlgebraSpec::parse(s).unwrap();
            assert_eq!(AlgebraSpec::parse(&spec.to_string()).unwrap(), spec, "{s}");
        }
    }

    #[test]
    fn bad_specs() {
        assert!(matches!(AlgebraSpec::parse("psl:2,3"), Err(Error::BadParameters(_))));
        assert!(AlgebraSpec::parse("nope:3").is_err());
        assert!(build("psq:2").is_err());
        assert!(build("SH:3").is_err());
        assert!(build("D21a:-1").is_err());
    }

    #[test]
    fn builds() {
        assert_eq!(build("D21a:2/1").unwrap().algebra.dims(), Dims::new(9, 8));
        assert_eq!(build("sum:example:even|example:even").unwrap().algebra.dims(), Dims::new(6, 4));
        assert_eq!(build("prehomodd:g=sl:2,V=std").unwrap().algebra.dims(), Dims::new(2, 5));
    }
}
