//! JSON and CSV formats for polytopes, moments, cumulants and splines.
//!
//! Rationals are written as `[numerator, denominator]` with arbitrarily
//! long integers. On input a rational may also be a plain integer or a
//! string `"p/q"`.
//!
//! ```text
//! polytope:  {"d": 2, "vertices": [[[0,1],[0,1]], ...], "facets": [[1,2], ...]}
//! moments:   {"d": 2, "r": 3, "values": {"0,0": [1,1], "1,0": [1,2], ...}}
//! cumulants: {"d": 2, "r": 3, "values": {"1,0": [1,2], ...}}
//! spline:    {"d": 1, "nodes": [[2,1], {"poly": [...], "interval": [lo, hi]}],
//!             "numerator": [[1,1], ...]}
//! ```
//!
//! Facet indices are 1-based. `facets` may be left out for polygons with
//! cyclically ordered vertices and for simplices.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Map, Number, Value};

use crate::algebra::index::{Layout, MultiIndex};
use crate::algebra::scalar::{Rat, Scalar};
use crate::cumulants::vector::CumulantVector;
use crate::error::{Error, Result};
use crate::geometry::polytope::Polytope;
use crate::moments::vector::MomentVector;
use crate::recovery::hankel::SplineModel;
use crate::recovery::univariate::RealRoot;

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn int_json(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integer literal"))
}

fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string())
            .map_err(|_| bad(format!("expected an integer, found {n}"))),
        _ => Err(bad(format!("expected an integer, found {v}"))),
    }
}

pub fn rat_to_json(r: &Rat) -> Value {
    json!([int_json(r.numer()), int_json(r.denom())])
}

pub fn rat_from_json(v: &Value) -> Result<Rat> {
    match v {
        Value::Array(a) if a.len() == 2 => {
            let (p, q) = (int_from_json(&a[0])?, int_from_json(&a[1])?);
            if q.is_zero() {
                return Err(bad("zero denominator"));
            }
            Ok(Rat::new(p, q))
        }
        Value::Number(_) => Ok(Rat::from_integer(int_from_json(v)?)),
        Value::String(s) => {
            let (p, q) = s.split_once('/').unwrap_or((s, "1"));
            let p = BigInt::from_str(p.trim()).map_err(|_| bad(format!("bad rational {s:?}")))?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad(format!("bad rational {s:?}")))?;
            if q.is_zero() {
                return Err(bad("zero denominator"));
            }
            Ok(Rat::new(p, q))
        }
        _ => Err(bad(format!("expected a rational, found {v}"))),
    }
}

fn rats_from_json(v: &Value) -> Result<Vec<Rat>> {
    v.as_array()
        .ok_or_else(|| bad(format!("expected an array, found {v}")))?
        .iter()
        .map(rat_from_json)
        .collect()
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn usize_field(obj: &Map<String, Value>, key: &str) -> Result<usize> {
    field(obj, key)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| bad(format!("field {key:?} must be a nonnegative integer")))
}

fn object(v: &Value) -> Result<&Map<String, Value>> {
    v.as_object().ok_or_else(|| bad("expected a JSON object"))
}

pub fn polytope_to_json(p: &Polytope<Rat>) -> Value {
    let vertices: Vec<Value> = p
        .vertices()
        .iter()
        .map(|v| Value::Array(v.iter().map(rat_to_json).collect()))
        .collect();
    let facets: Vec<Value> = p
        .facets()
        .iter()
        .map(|f| json!(f.iter().map(|k| k + 1).collect::<Vec<_>>()))
        .collect();
    json!({"d": p.dim(), "vertices": vertices, "facets": facets})
}

pub fn polytope_from_json(v: &Value) -> Result<Polytope<Rat>> {
    let obj = object(v)?;
    let d = usize_field(obj, "d")?;
    let vertices: Vec<Vec<Rat>> = field(obj, "vertices")?
        .as_array()
        .ok_or_else(|| bad("vertices must be an array"))?
        .iter()
        .map(rats_from_json)
        .collect::<Result<_>>()?;
    if vertices.iter().any(|x| x.len() != d) {
        return Err(Error::Dimension(format!("every vertex must have {d} coordinates")));
    }
    match obj.get("facets") {
        Some(f) => {
            let facets = f
                .as_array()
                .ok_or_else(|| bad("facets must be an array"))?
                .iter()
                .map(|fa| {
                    fa.as_array()
                        .ok_or_else(|| bad("each facet must be an array"))?
                        .iter()
                        .map(|k| match k.as_u64() {
                            Some(k) if k >= 1 && (k as usize) <= vertices.len() => Ok(k as usize - 1),
                            _ => Err(bad(format!("facet index {k} out of range 1..={}", vertices.len()))),
                        })
                        .collect::<Result<Vec<usize>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Polytope::new(vertices, facets)
        }
        None if vertices.len() == d + 1 => Polytope::simplex(vertices),
        None if d == 2 => Polytope::polygon(vertices),
        None => Err(bad("facets are required unless the input is a simplex or polygon")),
    }
}

fn values_to_json<'a>(d: usize, r: u32, entries: impl Iterator<Item = (&'a MultiIndex, &'a Rat)>) -> Value {
    let mut values = Map::new();
    for (idx, v) in entries {
        values.insert(idx.key(), rat_to_json(v));
    }
    json!({"d": d, "r": r, "values": Value::Object(values)})
}

fn values_from_json(v: &Value, skip_zero: bool) -> Result<(usize, u32, Vec<Rat>)> {
    let obj = object(v)?;
    let d = usize_field(obj, "d")?;
    let r = usize_field(obj, "r")? as u32;
    let values = field(obj, "values")?
        .as_object()
        .ok_or_else(|| bad("values must be an object"))?;
    let layout = Layout::get(d, r);
    let mut out: Vec<Option<Rat>> = vec![None; layout.len()];
    for (key, val) in values {
        let idx = MultiIndex::parse_key(key)?;
        let rank = layout
            .rank_of(&idx)
            .filter(|_| idx.nvars() == d)
            .ok_or_else(|| bad(format!("index {key:?} is outside d = {d}, r = {r}")))?;
        if skip_zero && rank == 0 {
            return Err(bad("cumulants have no entry for the zero index"));
        }
        out[rank] = Some(rat_from_json(val)?);
    }
    let start = usize::from(skip_zero);
    let vals = out[start..]
        .iter()
        .enumerate()
        .map(|(k, x)| {
            x.clone().ok_or_else(|| {
                Error::MissingData(format!("no value for index {}", layout.index(k + start).key()))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((d, r, vals))
}

pub fn moments_to_json(m: &MomentVector<Rat>) -> Value {
    values_to_json(m.dim(), m.order(), m.iter())
}

pub fn moments_from_json(v: &Value) -> Result<MomentVector<Rat>> {
    let (d, r, vals) = values_from_json(v, false)?;
    MomentVector::from_values(d, r, vals)
}

pub fn cumulants_to_json(k: &CumulantVector<Rat>) -> Value {
    values_to_json(k.dim(), k.order(), k.iter())
}

pub fn cumulants_from_json(v: &Value) -> Result<CumulantVector<Rat>> {
    let (d, r, vals) = values_from_json(v, true)?;
    CumulantVector::from_values(d, r, vals)
}

pub fn spline_to_json(s: &SplineModel) -> Value {
    let nodes: Vec<Value> = s
        .nodes
        .iter()
        .map(|n| match n {
            RealRoot::Rational(r) => rat_to_json(r),
            RealRoot::Algebraic { poly, lo, hi, approx } => json!({
                "poly": poly.iter().map(rat_to_json).collect::<Vec<_>>(),
                "interval": [rat_to_json(lo), rat_to_json(hi)],
                "approx": approx,
            }),
        })
        .collect();
    json!({
        "d": s.d,
        "nodes": nodes,
        "numerator": s.numerator.iter().map(rat_to_json).collect::<Vec<_>>(),
    })
}

fn csv_rows<'a>(entries: impl Iterator<Item = (&'a MultiIndex, &'a Rat)>) -> String {
    let mut out = String::from("index,numerator,denominator,decimal\n");
    for (idx, v) in entries {
        let _ = writeln!(out, "\"{}\",{},{},{}", idx.key(), v.numer(), v.denom(), v.to_f64());
    }
    out
}

/// Columns `index, numerator, denominator, decimal`; the index is quoted
/// since it contains commas.
pub fn moments_to_csv(m: &MomentVector<Rat>) -> String {
    csv_rows(m.iter())
}

pub fn cumulants_to_csv(k: &CumulantVector<Rat>) -> String {
    csv_rows(k.iter())
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_array() && !x.is_object()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Array(a) if a.iter().all(is_flat) => {
            let parts: Vec<String> = a
                .iter()
                .map(|x| match x {
                    Value::Array(b) => format!(
                        "[{}]",
                        b.iter().map(|y| y.to_string()).collect::<Vec<_>>().join(", ")
                    ),
                    _ => x.to_string(),
                })
                .collect();
            let s = format!("[{}]", parts.join(", "));
            (s.len() <= 100).then_some(s)
        }
        Value::Array(_) | Value::Object(_) => None,
        _ => Some(v.to_string()),
    }
}

fn write_pretty(v: &Value, indent: usize, out: &mut String) {
    if let Some(s) = inline(v) {
        out.push_str(&s);
        return;
    }
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Array(a) => {
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                out.push_str(&pad);
                write_pretty(x, indent + 1, out);
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
        }
        Value::Object(o) if o.is_empty() => {
            out.push_str("{}");
            return;
        }
        Value::Object(o) => {
            out.push_str("{\n");
            for (i, (k, x)) in o.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_pretty(x, indent + 1, out);
                out.push_str(if i + 1 < o.len() { ",\n" } else { "\n" });
            }
        }
        _ => unreachable!("scalars are inline"),
    }
    out.push_str(&"  ".repeat(indent));
    out.push(if v.is_array() { ']' } else { '}' });
}

/// Indented JSON with short arrays of scalars (such as rationals) kept on
/// one line, plus a trailing newline. Output depends only on the value.
pub fn to_pretty(v: &Value) -> String {
    let mut s = String::new();
    write_pretty(v, 0, &mut s);
    s.push('\n');
    s
}

pub fn parse_json(src: &str) -> Result<Value> {
    serde_json::from_str(src).map_err(|e| bad(format!("invalid JSON: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{rat, rat_int};
    use crate::moments::generating::polytope_moments;
    use crate::geometry::triangulation::default_triangulation;

    fn square() -> Polytope<Rat> {
        let v = [(0, 0), (1, 0), (1, 1), (0, 1)]
            .iter()
            .map(|&(a, b)| vec![rat_int(a), rat_int(b)])
            .collect();
        Polytope::polygon(v).unwrap()
    }

    #[test]
    fn rationals() {
        let big = Rat::new(BigInt::from(10).pow(40), BigInt::from(3));
        assert_eq!(rat_from_json(&rat_to_json(&big)).unwrap(), big);
        assert_eq!(rat_to_json(&rat(-1, 2)).to_string(), "[-1,2]");
        assert_eq!(rat_from_json(&json!("3/6")).unwrap(), rat(1, 2));
        assert_eq!(rat_from_json(&json!(4)).unwrap(), rat_int(4));
        assert!(rat_from_json(&json!([1, 0])).is_err());
        assert!(rat_from_json(&json!(0.5)).is_err());
    }

    #[test]
    fn polytope_round_trip() {
        let p = square();
        let v = polytope_to_json(&p);
        assert_eq!(v["facets"][0], json!([1, 2]));
        let q = polytope_from_json(&v).unwrap();
        assert_eq!(q.vertices(), p.vertices());
        assert_eq!(q.facets(), p.facets());
        let short = json!({"d": 2, "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]});
        assert_eq!(polytope_from_json(&short).unwrap().facets(), p.facets());
        let out_of_range = json!({"d": 2, "vertices": [[0, 0], [1, 0], [0, 1]], "facets": [[1, 4]]});
        assert!(polytope_from_json(&out_of_range).is_err());
    }

    #[test]
    fn moments_of_the_square() {
        let p = square();
        let m = polytope_moments(&p, &default_triangulation(&p).unwrap(), 3).unwrap();
        let v = moments_to_json(&m);
        assert_eq!(v["values"]["1,0"], json!([1, 2]));
        assert_eq!(v["values"]["2,0"], json!([1, 3]));
        assert_eq!(moments_from_json(&v).unwrap(), m);
        let csv = moments_to_csv(&m);
        assert!(csv.starts_with("index,numerator,denominator,decimal\n\"0,0\",1,1,1\n"));
        assert!(csv.contains("\"1,0\",1,2,0.5\n"));
    }

    #[test]
    fn pretty_output_parses_back() {
        let v = json!({"a": [[1, 2], [3, 4]], "b": {"c": [1, 2], "e": {}}, "f": [{"g": null}], "h": []});
        let s = to_pretty(&v);
        assert!(s.contains("\"a\": [[1, 2], [3, 4]]"));
        assert_eq!(parse_json(&s).unwrap(), v);
    }

    #[test]
    fn incomplete_vectors_are_rejected() {
        let v = json!({"d": 1, "r": 2, "values": {"0": 1, "1": [1, 2]}});
        assert!(matches!(moments_from_json(&v), Err(Error::MissingData(_))));
        let v = json!({"d": 1, "r": 1, "values": {"0": 1, "1": 1, "2": 1}});
        assert!(moments_from_json(&v).is_err());
        let v = json!({"d": 1, "r": 1, "values": {"1": 1}});
        assert_eq!(cumulants_from_json(&v).unwrap().values(), &[rat_int(1)]);
    }
}
