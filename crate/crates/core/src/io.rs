//! JSON format for algebras and derivations (`superder/v1`).
//!
//! ```json
//! {
//!   "schema": "superder/v1",
//!   "basis": [{"name": "h", "parity": "even", "zgrade": 0}, ...],
//!   "grading_compatible": true,
//!   "brackets": [{"i": 0, "j": 1, "coeffs": {"1": "2"}}, ...]
//! }
//! ```
//!
//! Brackets are listed for `i ≤ j` only; the rest follow from the sign rule.
//! Either every basis entry carries a `zgrade` or none does.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::derivations::{Derivation, Provenance};
use crate::error::{Error, Result};
use crate::exactmath::{Matrix, Scalar};
use crate::supercore::{LieSuperalgebra, Parity, SuperSpace};

pub const SCHEMA: &str = "superder/v1";

fn schema(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema { location: location.into(), message: message.into() }
}

pub fn algebra_to_json(l: &LieSuperalgebra) -> Value {
    let basis: Vec<Value> = (0..l.dim())
        .map(|i| {
            let mut m = Map::new();
            m.insert("name".into(), json!(l.name(i)));
            m.insert("parity".into(), json!(l.parity(i)));
            if let Some(g) = l.zgrade(i) {
                m.insert("zgrade".into(), json!(g));
            }
            Value::Object(m)
        })
        .collect();
    let mut brackets = Vec::new();
    for i in 0..l.dim() {
        for j in i..l.dim() {
            let row = l.basis_bracket(i, j);
            if row.is_empty() {
                continue;
            }
            let coeffs: BTreeMap<String, String> = row.iter().map(|(k, c)| (k.to_string(), c.to_string())).collect();
            brackets.push(json!({"i": i, "j": j, "coeffs": coeffs}));
        }
    }
    let mut out = Map::new();
    out.insert("schema".into(), json!(SCHEMA));
    out.insert("basis".into(), Value::Array(basis));
    if let Some(g) = l.grading() {
        out.insert("grading_compatible".into(), json!(g.compatible));
    }
    out.insert("brackets".into(), Value::Array(brackets));
    Value::Object(out)
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, at: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| schema(at, format!("missing field '{key}'")))
}

fn as_index(v: &Value, at: &str, bound: usize) -> Result<usize> {
    let i = v.as_u64().ok_or_else(|| schema(at, "expected a nonnegative integer"))? as usize;
    if i >= bound {
        return Err(schema(at, format!("index {i} out of range (dimension {bound})")));
    }
    Ok(i)
}

fn as_scalar(v: &Value, at: &str) -> Result<Scalar> {
    match v {
        Value::String(s) => s.parse::<Scalar>().map_err(|e| schema(at, e.to_string())),
        Value::Number(n) if n.is_i64() => Ok(Scalar::from_int(n.as_i64().unwrap())),
        _ => Err(schema(at, "expected a number or a string like \"p/q\"")),
    }
}

pub fn algebra_from_json(v: &Value) -> Result<LieSuperalgebra> {
    let obj = v.as_object().ok_or_else(|| schema("$", "expected an object"))?;
    if let Some(s) = obj.get("schema") {
        if s.as_str() != Some(SCHEMA) {
            return Err(schema("$.schema", format!("expected \"{SCHEMA}\"")));
        }
    }
    let basis = field(obj, "basis", "$")?.as_array().ok_or_else(|| schema("$.basis", "expected an array"))?;
    let mut names = Vec::new();
    let mut parities = Vec::new();
    let mut grades = Vec::new();
    for (i, b) in basis.iter().enumerate() {
        let at = format!("$.basis[{i}]");
        let b = b.as_object().ok_or_else(|| schema(&at, "expected an object"))?;
        let name = field(b, "name", &at)?.as_str().ok_or_else(|| schema(format!("{at}.name"), "expected a string"))?;
        let parity = field(b, "parity", &at)?.as_str().ok_or_else(|| schema(format!("{at}.parity"), "expected a string"))?;
        let parity = Parity::parse(parity).map_err(|_| schema(format!("{at}.parity"), format!("unknown parity '{parity}'")))?;
        names.push(name.to_string());
        parities.push(parity);
        grades.push(match b.get("zgrade") {
            None => None,
            Some(g) => Some(g.as_i64().ok_or_else(|| schema(format!("{at}.zgrade"), "expected an integer"))?),
        });
    }
    let n = names.len();
    let space = SuperSpace::new(names, parities).map_err(|e| schema("$.basis", e.to_string()))?;
    let mut entries = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    let brackets = match obj.get("brackets") {
        None => &Vec::new(),
        Some(b) => b.as_array().ok_or_else(|| schema("$.brackets", "expected an array"))?,
    };
    for (t, e) in brackets.iter().enumerate() {
        let at = format!("$.brackets[{t}]");
        let e = e.as_object().ok_or_else(|| schema(&at, "expected an object"))?;
        let i = as_index(field(e, "i", &at)?, &format!("{at}.i"), n)?;
        let j = as_index(field(e, "j", &at)?, &format!("{at}.j"), n)?;
        if i > j {
            return Err(schema(&at, format!("bracket [{i}, {j}] must be given with i ≤ j")));
        }
        if !seen.insert((i, j)) {
            return Err(schema(&at, format!("duplicate bracket [{i}, {j}]")));
        }
        let coeffs = field(e, "coeffs", &at)?.as_object().ok_or_else(|| schema(format!("{at}.coeffs"), "expected an object"))?;
        let mut row = Vec::new();
        for (k, c) in coeffs {
            let loc = format!("{at}.coeffs.{k}");
            let k: usize = k.parse().map_err(|_| schema(&loc, "keys must be basis indices"))?;
            if k >= n {
                return Err(schema(&loc, format!("index {k} out of range (dimension {n})")));
            }
            let c = as_scalar(c, &loc)?;
            if !c.is_zero() {
                row.push((k, c));
            }
        }
        row.sort_by_key(|(k, _)| *k);
        entries.push((i, j, row));
    }
    let l = LieSuperalgebra::from_upper(space, entries).map_err(|e| schema("$.brackets", e.to_string()))?;
    match (grades.iter().all(Option::is_some), grades.iter().any(Option::is_some)) {
        (true, true) => {
            let compatible = obj.get("grading_compatible").and_then(Value::as_bool).unwrap_or(false);
            let labels = grades.into_iter().map(Option::unwrap).collect();
            l.with_grading(labels, compatible).map_err(|e| schema("$.basis", e.to_string()))
        }
        (false, true) => Err(schema("$.basis", "zgrade must be given for every basis element or for none")),
        _ => Ok(l),
    }
}

pub fn read_algebra(path: &std::path::Path) -> Result<LieSuperalgebra> {
    let text = std::fs::read_to_string(path)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| schema(format!("line {}, column {}", e.line(), e.column()), e.to_string()))?;
    algebra_from_json(&v)
}

/// `{"degree": "odd", "matrix": [["0", "1"], ...]}` with columns the images
/// of basis vectors.
pub fn derivation_to_json(d: &Derivation) -> Value {
    let m = d.matrix();
    let rows: Vec<Vec<String>> = (0..m.rows()).map(|i| m.row(i).iter().map(|c| c.to_string()).collect()).collect();
    json!({"degree": d.degree(), "matrix": rows})
}

pub fn derivation_from_json(l: &LieSuperalgebra, v: &Value) -> Result<Derivation> {
    let obj = v.as_object().ok_or_else(|| schema("$", "expected an object"))?;
    let degree = field(obj, "degree", "$")?.as_str().ok_or_else(|| schema("$.degree", "expected a string"))?;
    let degree = Parity::parse(degree).map_err(|_| schema("$.degree", format!("unknown parity '{degree}'")))?;
    let rows = field(obj, "matrix", "$")?.as_array().ok_or_else(|| schema("$.matrix", "expected an array"))?;
    if rows.len() != l.dim() {
        return Err(schema("$.matrix", format!("expected {} rows", l.dim())));
    }
    let mut out = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let at = format!("$.matrix[{i}]");
        let r = r.as_array().ok_or_else(|| schema(&at, "expected an array"))?;
        if r.len() != l.dim() {
            return Err(schema(&at, format!("expected {} entries", l.dim())));
        }
        out.push(r.iter().enumerate().map(|(j, c)| as_scalar(c, &format!("{at}[{j}]"))).collect::<Result<Vec<_>>>()?);
    }
    Derivation::new(l, degree, Matrix::from_rows(out)?, Provenance::User)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gl11() -> LieSuperalgebra {
        crate::catalog::build("gl:1,1").unwrap().algebra
    }

    #[test]
    fn roundtrip() {
        for s in ["gl:1,1", "psq:3", "example:odd"] {
            let l = crate::catalog::build(s).unwrap().algebra;
            let back = algebra_from_json(&algebra_to_json(&l)).unwrap();
            assert_eq!(back, l, "{s}");
        }
    }

    #[test]
    fn schema_errors() {
        let mut v = algebra_to_json(&gl11());
        v["basis"][2]["parity"] = json!("sideways");
        match algebra_from_json(&v) {
            Err(Error::Schema { location, .. }) => assert_eq!(location, "$.basis[2].parity"),
            other => panic!("{other:?}"),
        }
        let mut v = algebra_to_json(&gl11());
        v["brackets"][0]["i"] = json!(3);
        v["brackets"][0]["j"] = json!(0);
        assert!(matches!(algebra_from_json(&v), Err(Error::Schema { .. })));
    }

    #[test]
    fn derivation_roundtrip() {
        let l = gl11();
        let d = Derivation::inner(&l, &crate::exactmath::matrix::unit_vector(4, 2)).unwrap();
        let back = derivation_from_json(&l, &derivation_to_json(&d)).unwrap();
        assert_eq!(back.matrix(), d.matrix());
    }
}
