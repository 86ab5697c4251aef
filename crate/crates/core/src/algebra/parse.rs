//! Parser for polynomial expressions in printed notation.
//!
//! Accepts both Macaulay2-style input (`k02=12*m02-9*m01^2;`) and the
//! TeX forms used in typeset formulas (`3 m_{02} m_{10}^2 m_{01}`).
//! Statements are separated by `;`; a statement `name = expr` binds
//! `name` for later statements.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::poly::SparsePoly;
use crate::algebra::scalar::Rat;
use crate::error::{Error, Result};

/// Strip TeX decoration: spacing commands, line breaks, braces and
/// subscript markers. `m_{02}^{3}` becomes `m02^3`.
pub fn normalize_tex(src: &str) -> Result<String> {
    let mut out = String::with_capacity(src.len());
    let mut chars = src.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '\\' => {
                let mut cmd = String::new();
                while let Some(&n) = chars.peek() {
                    if n.is_ascii_alphabetic() {
                        cmd.push(n);
                        chars.next();
                    } else {
                        break;
                    }
                }
                if cmd.is_empty() {
                    // `\\`, `\,`, `\!`, `\;`, `\ `
                    chars.next();
                    out.push(' ');
                    continue;
                }
                match cmd.as_str() {
                    "cdot" | "times" => out.push('*'),
                    "quad" | "qquad" | "left" | "right" | "bigl" | "bigr" | "Bigl" | "Bigr" => {
                        out.push(' ')
                    }
                    _ => return Err(Error::Parse(format!("unsupported command \\{cmd}"))),
                }
            }
            '{' | '}' | '_' | '&' => {}
            '\n' | '\r' | '\t' => out.push(' '),
            '%' => {
                for n in chars.by_ref() {
                    if n == '\n' {
                        break;
                    }
                }
                out.push(' ');
            }
            _ => out.push(c),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            toks.push(Tok::Num(s.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric()) {
                i += 1;
            }
            toks.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()=;.,".contains(c) {
            toks.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    vars: &'a HashMap<String, usize>,
    nvars: usize,
    bindings: &'a HashMap<String, SparsePoly<Rat>>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<SparsePoly<Rat>> {
        let mut acc = SparsePoly::zero(self.nvars);
        let mut first = true;
        loop {
            let neg = self.eat('-');
            if !neg && !self.eat('+') && !first {
                break;
            }
            first = false;
            let t = self.term()?;
            acc = if neg { acc - t } else { acc + t };
        }
        Ok(acc)
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('('))
        )
    }

    fn term(&mut self) -> Result<SparsePoly<Rat>> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                let f = self.factor()?;
                acc = &acc * &f;
            } else if self.eat('/') {
                let f = self.factor()?;
                if !f.is_constant() || f.constant_term().is_zero() {
                    return Err(Error::Parse("division by a non-constant or zero".into()));
                }
                acc = acc.scale(&f.constant_term().recip());
            } else if self.starts_factor() {
                let f = self.factor()?;
                acc = &acc * &f;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<SparsePoly<Rat>> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = match self.peek() {
                Some(Tok::Num(n)) => n
                    .to_u32()
                    .ok_or_else(|| Error::Parse("exponent too large".into()))?,
                other => return Err(Error::Parse(format!("expected exponent, found {other:?}"))),
            };
            self.pos += 1;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<SparsePoly<Rat>> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(SparsePoly::constant(self.nvars, Rat::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(p) = self.bindings.get(&name) {
                    Ok(p.clone())
                } else if let Some(&k) = self.vars.get(&name) {
                    Ok(SparsePoly::var(self.nvars, k))
                } else {
                    Err(Error::Parse(format!("unknown identifier {name}")))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing closing parenthesis".into()));
                }
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// One parsed statement: an optional binding name and its value.
pub type Statement = (Option<String>, SparsePoly<Rat>);

/// Parse a sequence of `;`-separated statements over the given variables.
pub fn parse_script(src: &str, vars: &[&str]) -> Result<Vec<Statement>> {
    let text = normalize_tex(src)?;
    let toks = tokenize(&text)?;
    let var_map: HashMap<String, usize> = vars
        .iter()
        .enumerate()
        .map(|(i, v)| (v.to_string(), i))
        .collect();
    let mut bindings: HashMap<String, SparsePoly<Rat>> = HashMap::new();
    let mut out = Vec::new();
    for stmt in toks.split(|t| *t == Tok::Op(';')) {
        // trailing punctuation of typeset formulas
        let mut stmt = stmt;
        while let Some(Tok::Op('.' | ',')) = stmt.last() {
            stmt = &stmt[..stmt.len() - 1];
        }
        if stmt.is_empty() {
            continue;
        }
        let (name, body) = match stmt {
            [Tok::Ident(n), Tok::Op('='), rest @ ..] => (Some(n.clone()), rest),
            _ => (None, stmt),
        };
        let mut p = Parser {
            toks: body,
            pos: 0,
            vars: &var_map,
            nvars: vars.len(),
            bindings: &bindings,
        };
        let value = p.expr()?;
        if p.pos != body.len() {
            return Err(Error::Parse(format!(
                "trailing input starting at {:?}",
                body[p.pos]
            )));
        }
        let value = value.with_nvars(vars.len());
        if let Some(n) = &name {
            bindings.insert(n.clone(), value.clone());
        }
        out.push((name, value));
    }
    Ok(out)
}

/// Parse a single expression.
pub fn parse_poly(src: &str, vars: &[&str]) -> Result<SparsePoly<Rat>> {
    let mut stmts = parse_script(src, vars)?;
    match stmts.len() {
        1 => Ok(stmts.pop().expect("one statement").1),
        n => Err(Error::Parse(format!("expected one expression, found {n}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::rat_int;

    #[test]
    fn macaulay_style() {
        let vars = ["m01", "m02"];
        let p = parse_poly("12*m02-9*m01^2", &vars).unwrap();
        assert_eq!(p.coeff(&[0, 1]), rat_int(12));
        assert_eq!(p.coeff(&[2, 0]), rat_int(-9));
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn tex_style_with_implicit_products() {
        let vars = ["m0", "m1", "m2", "m3"];
        let p = parse_poly("2 m_1^3 - 3 m_0 m_1 m_2 + m_0^2 m_3", &vars).unwrap();
        assert_eq!(p.num_terms(), 3);
        assert_eq!(p.coeff(&[1, 1, 1, 0]), rat_int(-3));
        assert_eq!(p.coeff(&[2, 0, 0, 1]), rat_int(1));
    }

    #[test]
    fn tex_braces_and_spacing() {
        let vars = ["m", "h"];
        let p = parse_poly(r"-\,4 m^{16} h^{2} \\ + 3 m {+} h .", &vars).unwrap();
        assert_eq!(p.coeff(&[16, 2]), rat_int(-4));
        assert_eq!(p.coeff(&[1, 0]), rat_int(3));
        assert_eq!(p.coeff(&[0, 1]), rat_int(1));
    }

    #[test]
    fn bindings_and_parentheses() {
        let vars = ["x", "y"];
        let stmts = parse_script("a = x + y; b = (a)^2 - 2*x*y; b/2", &vars).unwrap();
        assert_eq!(stmts.len(), 3);
        let last = &stmts[2].1;
        assert_eq!(last.coeff(&[2, 0]), Rat::new(1.into(), 2.into()));
        assert_eq!(last.coeff(&[1, 1]), Rat::zero());
        assert_eq!(stmts[1].0.as_deref(), Some("b"));
    }

    #[test]
    fn errors() {
        assert!(parse_poly("x + z", &["x"]).is_err());
        assert!(parse_poly("(x", &["x"]).is_err());
        assert!(parse_poly(r"\frac x", &["x"]).is_err());
        assert!(parse_poly("x / x", &["x"]).is_err());
    }
}
