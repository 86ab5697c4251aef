//! Plain-text polynomial data files.
//!
//! ```text
//! # id: h
//! # ambient: moments
//! # vars: m00 m10 m01 m20 m11 m02 m30 m21 m12 m03
//! # d: 2
//! # r: 3
//! # degree: 3 2 2
//! # description: Hessian at the last basis vector
//! # checksum: sha256:…
//! 1 0 0 1 0 1 0 0 0 0 1
//! …
//! ```
//!
//! Each body line is an exponent list followed by a rational coefficient
//! `p` or `p/q`. The checksum is the SHA-256 of the body lines joined by
//! newlines, in lowercase hex.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use sha2::{Digest, Sha256};

use crate::algebra::poly::SparsePoly;
use crate::algebra::scalar::Rat;
use crate::error::{Error, Result};

/// A parsed data file.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyFile {
    /// Header fields in file order, without `checksum`.
    pub header: Vec<(String, String)>,
    pub vars: Vec<String>,
    pub poly: SparsePoly<Rat>,
}

impl PolyFile {
    pub fn new(header: Vec<(String, String)>, vars: Vec<String>, poly: SparsePoly<Rat>) -> Self {
        PolyFile { header, vars, poly }
    }

    pub fn field(&self, key: &str) -> Option<&str> {
        self.header
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.field(key)
            .ok_or_else(|| Error::DataIntegrity(format!("missing header field {key}")))
    }

    /// Integer list field such as `degree: 4 2 3`.
    pub fn int_list(&self, key: &str) -> Result<Vec<i64>> {
        self.require(key)?
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::DataIntegrity(format!("bad integer {t:?} in {key}")))
            })
            .collect()
    }

    /// Serialize with a freshly computed checksum.
    pub fn render(&self) -> String {
        let body = body_lines(&self.poly, self.vars.len());
        let mut out = String::new();
        for (k, v) in &self.header {
            let _ = writeln!(out, "# {k}: {v}");
        }
        let _ = writeln!(out, "# vars: {}", self.vars.join(" "));
        let _ = writeln!(out, "# checksum: sha256:{}", checksum(&body));
        for line in body {
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

fn body_lines(poly: &SparsePoly<Rat>, nvars: usize) -> Vec<String> {
    // descending exponent order reads more naturally
    let mut terms: Vec<(Vec<u32>, &Rat)> = poly
        .terms()
        .map(|(mut e, c)| {
            e.resize(nvars, 0);
            (e, c)
        })
        .collect();
    terms.reverse();
    terms
        .into_iter()
        .map(|(e, c)| {
            let mut s: String = e.iter().map(|x| format!("{x} ")).collect();
            s.push_str(&c.to_string());
            s
        })
        .collect()
}

/// SHA-256 of the lines joined by newlines, lowercase hex.
pub fn checksum<S: AsRef<str>>(lines: &[S]) -> String {
    let mut h = Sha256::new();
    for (i, l) in lines.iter().enumerate() {
        if i > 0 {
            h.update(b"\n");
        }
        h.update(l.as_ref().as_bytes());
    }
    hex::encode(h.finalize())
}

/// Parse and verify a data file.
pub fn parse(src: &str) -> Result<PolyFile> {
    let mut header = Vec::new();
    let mut vars: Option<Vec<String>> = None;
    let mut expected: Option<String> = None;
    let mut body: Vec<&str> = Vec::new();
    for line in src.lines() {
        let line = line.trim_end();
        if let Some(rest) = line.strip_prefix('#') {
            if !body.is_empty() {
                return Err(Error::DataIntegrity("header line after body".into()));
            }
            let (k, v) = rest
                .split_once(':')
                .ok_or_else(|| Error::DataIntegrity(format!("malformed header line {line:?}")))?;
            let (k, v) = (k.trim().to_string(), v.trim().to_string());
            match k.as_str() {
                "vars" => vars = Some(v.split_whitespace().map(String::from).collect()),
                "checksum" => {
                    let hex = v
                        .strip_prefix("sha256:")
                        .ok_or_else(|| Error::DataIntegrity("checksum must be sha256".into()))?;
                    expected = Some(hex.to_string());
                }
                _ => header.push((k, v)),
            }
        } else if !line.trim().is_empty() {
            body.push(line);
        }
    }
    let vars = vars.ok_or_else(|| Error::DataIntegrity("missing vars header".into()))?;
    let expected = expected.ok_or_else(|| Error::DataIntegrity("missing checksum".into()))?;
    let actual = checksum(&body);
    if actual != expected {
        let id = header
            .iter()
            .find(|(k, _)| k == "id")
            .map_or("?", |(_, v)| v.as_str());
        return Err(Error::DataIntegrity(format!(
            "checksum mismatch in data file {id}: expected {expected}, found {actual}"
        )));
    }
    let n = vars.len();
    let mut terms: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
    for line in body {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != n + 1 {
            return Err(Error::DataIntegrity(format!(
                "expected {} fields, found {} in {line:?}",
                n + 1,
                toks.len()
            )));
        }
        let exps = toks[..n]
            .iter()
            .map(|t| t.parse::<u32>())
            .collect::<std::result::Result<Vec<u32>, _>>()
            .map_err(|_| Error::DataIntegrity(format!("bad exponent in {line:?}")))?;
        let c = parse_rat(toks[n])?;
        if terms.insert(exps, c).is_some() {
            return Err(Error::DataIntegrity(format!("repeated monomial in {line:?}")));
        }
    }
    let poly = SparsePoly::from_terms(n, terms);
    Ok(PolyFile { header, vars, poly })
}

fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::DataIntegrity(format!("bad coefficient {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p = BigInt::from_str(p).map_err(|_| bad())?;
    let q = BigInt::from_str(q).map_err(|_| bad())?;
    if q == BigInt::from(0) {
        return Err(bad());
    }
    let r = Rat::new(p, q);
    if r == Rat::from_integer(0.into()) {
        return Err(Error::DataIntegrity(format!("zero coefficient stored: {s:?}")));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;

    fn sample() -> PolyFile {
        let vars = ["m0", "m1", "m2", "m3"];
        let p = parse_poly("2*m1^3 - 3*m0*m1*m2 + m0^2*m3/2", &vars).unwrap();
        PolyFile::new(
            vec![("id".into(), "x".into()), ("degree".into(), "3 3".into())],
            vars.iter().map(|s| s.to_string()).collect(),
            p,
        )
    }

    #[test]
    fn round_trip() {
        let f = sample();
        let text = f.render();
        let back = parse(&text).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.int_list("degree").unwrap(), vec![3, 3]);
        assert!(text.contains("2 0 0 1 1/2"));
    }

    #[test]
    fn corruption_is_detected() {
        let text = sample().render().replace("-3", "-4");
        assert!(matches!(parse(&text), Err(Error::DataIntegrity(_))));
        let text = sample().render().replace("# checksum", "# chksum");
        assert!(matches!(parse(&text), Err(Error::DataIntegrity(_))));
    }
}
