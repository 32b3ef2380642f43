//! Text and JSON encodings of scalars and polynomials.
//!
//! Polynomials are accepted either as coefficient maps keyed by monomial
//! strings (`{"x^2*y": "1", "1": "-1"}`) or as expression strings
//! (`"(1-x)*(y^2-1)"`). Output always uses coefficient maps.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{Map, Value};

use super::field::{FieldSpec, Scalar};
use super::ring::Ring;
use super::sparse::{Exponents, MultiPoly, SparsePoly, VarExps};
use super::unipoly::UniPoly;
use super::{BiPoly, SpacePoly, XY, XYZ};
use crate::error::{Error, Result};

pub fn parse_scalar_str(field: FieldSpec, s: &str) -> Result<Scalar> {
    let t = s.trim();
    let bad = || Error::parse("scalar", format!("{s:?}"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    match den {
        None => Ok(field.from_bigint(&num)),
        Some(d) => {
            let den: BigInt = d.parse().map_err(|_| bad())?;
            if den == BigInt::from(0) {
                return Err(Error::DivisionByZero);
            }
            field.from_rational(&BigRational::new(num, den))
        }
    }
}

pub fn parse_scalar(field: FieldSpec, v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => parse_scalar_str(field, s),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(field.int(i)),
            None => Err(Error::parse("scalar", format!("{n} is not an integer"))),
        },
        other => Err(Error::parse("scalar", format!("unexpected {other}"))),
    }
}

/// Rationals as `"p/q"` strings, residues as integers.
pub fn scalar_to_json(c: &Scalar) -> Value {
    match c {
        Scalar::Rational(_) => Value::String(c.to_string()),
        Scalar::Residue { value, .. } => Value::from(*value),
    }
}

pub fn poly_to_json<E: Exponents>(p: &SparsePoly<E>, names: &[&str]) -> Value {
    let mut m = Map::new();
    for (k, c) in p.monomial_map(names) {
        m.insert(k, scalar_to_json(&c));
    }
    Value::Object(m)
}

pub fn unipoly_to_json(p: &UniPoly, var: &str) -> Value {
    let mut m = Map::new();
    for (i, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            m.insert(super::monomial_key(&[i as u32], &[var]), scalar_to_json(c));
        }
    }
    Value::Object(m)
}

/// Parses a polynomial in the named variables from a JSON value.
pub fn parse_poly(field: FieldSpec, v: &Value, names: &[&str]) -> Result<MultiPoly> {
    match v {
        Value::String(s) => parse_expr(field, s, names),
        Value::Number(_) => Ok(MultiPoly::constant(&parse_scalar(field, v)?)),
        Value::Object(m) => {
            let mut p = MultiPoly::zero(field);
            for (key, c) in m {
                let e = parse_monomial_key(key, names)?;
                p.add_term(e, parse_scalar(field, c)?);
            }
            Ok(p)
        }
        other => Err(Error::parse("polynomial", format!("unexpected {other}"))),
    }
}

pub fn parse_bipoly(field: FieldSpec, v: &Value) -> Result<BiPoly> {
    Ok(parse_poly(field, v, &XY)?.convert())
}

pub fn parse_spacepoly(field: FieldSpec, v: &Value) -> Result<SpacePoly> {
    Ok(parse_poly(field, v, &XYZ)?.convert())
}

pub fn parse_unipoly(field: FieldSpec, v: &Value, var: &str) -> Result<UniPoly> {
    let p = parse_poly(field, v, &[var])?;
    let mut c = Vec::new();
    for (e, s) in p.terms() {
        let k = e.as_slice().first().copied().unwrap_or(0) as usize;
        if c.len() <= k {
            c.resize(k + 1, field.zero());
        }
        c[k] = s.clone();
    }
    Ok(UniPoly::new(field, c))
}

fn parse_monomial_key(key: &str, names: &[&str]) -> Result<VarExps> {
    let mut e = vec![0u32; names.len()];
    let key = key.trim();
    if key == "1" {
        return Ok(VarExps::from_slice(&e));
    }
    for factor in key.split('*') {
        let factor = factor.trim();
        let (name, k) = match factor.rsplit_once('^') {
            Some((n, k)) => (
                n.trim(),
                k.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::parse("monomial", key))?,
            ),
            None => (factor, 1),
        };
        let i = names
            .iter()
            .position(|n| *n == name)
            .ok_or_else(|| Error::parse("monomial", format!("unknown variable {name:?} in {key:?}")))?;
        e[i] += k;
    }
    Ok(VarExps::from_slice(&e))
}

/// Parses an expression string with `+ - * / ^`, parentheses, integer
/// literals and the given variable names. Juxtaposition multiplies, and
/// division is only allowed by nonzero constants.
pub fn parse_expr(field: FieldSpec, s: &str, names: &[&str]) -> Result<MultiPoly> {
    let tokens = tokenize(s)?;
    let mut p = Parser {
        field,
        names,
        tokens,
        pos: 0,
        src: s,
    };
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
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
            let lit: String = chars[start..i].iter().collect();
            out.push(Tok::Num(lit.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if c == '*' && chars.get(i + 1) == Some(&'*') {
            out.push(Tok::Op('^'));
            i += 2;
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::parse("expression", format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    field: FieldSpec,
    names: &'a [&'a str],
    tokens: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::parse("expression", format!("{what} at token {} of {:?}", self.pos, self.src))
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add_ref(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub_ref(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul_ref(&self.unary()?);
            } else if self.eat('/') {
                let d = self.unary()?;
                let c = constant_of(&d).ok_or_else(|| self.err("division by a non-constant"))?;
                let inv = c.inv().ok_or(Error::DivisionByZero)?;
                acc = acc.scale(&inv);
            } else if matches!(self.peek(), Some(Tok::Num(_) | Tok::Ident(_) | Tok::Op('('))) {
                acc = acc.mul_ref(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        if self.eat('-') {
            return Ok(self.unary()?.neg_ref());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let k: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    return Ok(base.pow(k));
                }
                _ => return Err(self.err("expected a nonnegative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(MultiPoly::constant(&self.field.from_bigint(&n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let i = self
                    .names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or_else(|| self.err(&format!("unknown variable {name:?}")))?;
                Ok(MultiPoly::var(self.field, i))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}

fn constant_of(p: &MultiPoly) -> Option<Scalar> {
    match p.num_terms() {
        0 => Some(p.field().zero()),
        1 => {
            let (e, c) = p.terms().next()?;
            e.as_slice().is_empty().then(|| c.clone())
        }
        _ => None,
    }
}
