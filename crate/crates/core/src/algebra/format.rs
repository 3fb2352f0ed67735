//! Text and JSON forms of polynomials.
//!
//! Bivariate polynomials in `[P, x]` print grouped by descending `P`-degree,
//! for example `x^2*P^2 + (x-1)*P + 1`. The parser accepts `+ - * / ^`,
//! parentheses, integer literals and variable names; `*` may be omitted
//! between factors.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::mpoly::{MPoly, Monomial};
use super::{AlgebraError, Rat, BIVARIATE_NAMES, P_VAR, X_VAR};

/// Version tag carried by every JSON document.
pub const JSON_SCHEMA: &str = "motzkin-autocount/1";

fn power(name: &str, e: u32) -> String {
    if e == 1 {
        name.to_string()
    } else {
        format!("{name}^{e}")
    }
}

fn monomial_text(m: &[u32], names: &[&str]) -> String {
    m.iter()
        .zip(names)
        .filter(|(e, _)| **e > 0)
        .map(|(e, n)| power(n, *e))
        .collect::<Vec<_>>()
        .join("*")
}

/// `|c| * monomial` with unit coefficients elided.
fn abs_term(c: &Rat, mono: &str) -> String {
    let a = c.abs();
    match (a.is_one(), mono.is_empty()) {
        (_, true) => a.to_string(),
        (true, false) => mono.to_string(),
        (false, false) => format!("{a}*{mono}"),
    }
}

/// Joins signed pieces as `a + b - c`, with `sep` between them.
fn join_signed(pieces: &[(bool, String)], spaced: bool) -> String {
    let mut out = String::new();
    for (k, (negative, body)) in pieces.iter().enumerate() {
        match (k, negative, spaced) {
            (0, true, _) => out.push('-'),
            (0, false, _) => {}
            (_, true, true) => out.push_str(" - "),
            (_, false, true) => out.push_str(" + "),
            (_, true, false) => out.push('-'),
            (_, false, false) => out.push('+'),
        }
        out.push_str(body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Flat sum of terms in descending lexicographic order.
pub fn format_flat(p: &MPoly, names: &[&str]) -> String {
    let pieces: Vec<(bool, String)> = p
        .terms()
        .rev()
        .map(|(m, c)| (c.is_negative(), abs_term(c, &monomial_text(m, names))))
        .collect();
    join_signed(&pieces, true)
}

/// Text form of a polynomial in `[P, x]`, grouped by descending `P`-degree.
pub fn format_bivariate(p: &MPoly) -> String {
    assert_eq!(p.nvars(), 2, "bivariate polynomial expected");
    let mut groups: BTreeMap<u32, Vec<(u32, Rat)>> = BTreeMap::new();
    for (m, c) in p.terms() {
        groups.entry(m[P_VAR]).or_default().push((m[X_VAR], c.clone()));
    }
    let mut pieces: Vec<(bool, String)> = Vec::new();
    for (&i, xs) in groups.iter().rev() {
        let mut xs = xs.clone();
        xs.sort_by(|a, b| b.0.cmp(&a.0));
        let pw = power("P", i);
        if i == 0 {
            for (k, c) in &xs {
                let mono = if *k == 0 { String::new() } else { power("x", *k) };
                pieces.push((c.is_negative(), abs_term(c, &mono)));
            }
        } else if let [(k, c)] = xs.as_slice() {
            let mono = if *k == 0 { pw } else { format!("{}*{pw}", power("x", *k)) };
            pieces.push((c.is_negative(), abs_term(c, &mono)));
        } else {
            let inner: Vec<(bool, String)> = xs
                .iter()
                .map(|(k, c)| {
                    let mono = if *k == 0 { String::new() } else { power("x", *k) };
                    (c.is_negative(), abs_term(c, &mono))
                })
                .collect();
            pieces.push((false, format!("({})*{pw}", join_signed(&inner, false))));
        }
    }
    join_signed(&pieces, true)
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>, AlgebraError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = text.chars().collect();
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
            tokens.push(Token::Num(s.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            tokens.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            tokens.push(Token::Op(c));
            i += 1;
        } else if c == '\u{2212}' {
            tokens.push(Token::Op('-'));
            i += 1;
        } else {
            return Err(AlgebraError::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    names: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MPoly, AlgebraError> {
        let nvars = self.names.len();
        let mut acc = MPoly::zero(nvars);
        let mut negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            let t = self.term()?;
            acc = if negative { &acc - &t } else { &acc + &t };
            if self.eat('+') {
                negative = false;
            } else if self.eat('-') {
                negative = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MPoly, AlgebraError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if self.eat('/') {
                let d = self.factor()?;
                let c = d
                    .constant_value()
                    .filter(|c| !c.is_zero())
                    .ok_or_else(|| AlgebraError::Parse("division by a non-constant".into()))?;
                acc = acc.scale(&c.recip());
            } else if matches!(self.peek(), Some(Token::Num(_) | Token::Ident(_) | Token::Op('('))) {
                acc = &acc * &self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<MPoly, AlgebraError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.tokens.get(self.pos).cloned() {
                Some(Token::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| AlgebraError::Parse("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(AlgebraError::Parse("exponent must be a non-negative integer".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MPoly, AlgebraError> {
        let nvars = self.names.len();
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                Ok(MPoly::constant(nvars, Rat::from_integer(n)))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                let idx = self
                    .names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or_else(|| AlgebraError::Parse(format!("unknown variable {name}")))?;
                Ok(MPoly::var(nvars, idx))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(AlgebraError::Parse("missing ')'".into()));
                }
                Ok(inner)
            }
            Some(t) => Err(AlgebraError::Parse(format!("unexpected token {t:?}"))),
            None => Err(AlgebraError::Parse("unexpected end of input".into())),
        }
    }
}

/// Parses a polynomial over the variables `names`.
pub fn parse_poly(text: &str, names: &[&str]) -> Result<MPoly, AlgebraError> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        pos: 0,
        names,
    };
    if parser.tokens.is_empty() {
        return Err(AlgebraError::Parse("empty input".into()));
    }
    let p = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(AlgebraError::Parse(format!(
            "trailing input at token {}",
            parser.pos
        )));
    }
    Ok(p)
}

/// Parses a polynomial in `P` and `x`.
pub fn parse_bivariate(text: &str) -> Result<MPoly, AlgebraError> {
    parse_poly(text, &BIVARIATE_NAMES)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub coeff: String,
    pub exponents: BTreeMap<String, u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonPoly {
    pub schema: String,
    pub variables: Vec<String>,
    pub text: String,
    pub terms: Vec<JsonTerm>,
}

/// JSON document for a polynomial in `[P, x]`, terms in descending order.
pub fn to_json(p: &MPoly) -> JsonPoly {
    let terms = p
        .terms()
        .rev()
        .map(|(m, c)| JsonTerm {
            coeff: c.to_string(),
            exponents: BIVARIATE_NAMES
                .iter()
                .zip(m)
                .filter(|(_, e)| **e > 0)
                .map(|(n, e)| (n.to_string(), *e))
                .collect(),
        })
        .collect();
    JsonPoly {
        schema: JSON_SCHEMA.to_string(),
        variables: BIVARIATE_NAMES.iter().map(|s| s.to_string()).collect(),
        text: format_bivariate(p),
        terms,
    }
}

/// Reads back a polynomial in `[P, x]` from its JSON document.
pub fn from_json(doc: &JsonPoly) -> Result<MPoly, AlgebraError> {
    if doc.schema != JSON_SCHEMA {
        return Err(AlgebraError::Parse(format!("unknown schema {}", doc.schema)));
    }
    let mut p = MPoly::zero(2);
    for t in &doc.terms {
        let c: Rat = t
            .coeff
            .parse()
            .map_err(|_| AlgebraError::Parse(format!("bad coefficient {}", t.coeff)))?;
        let mut m: Monomial = vec![0; 2];
        for (name, e) in &t.exponents {
            let idx = BIVARIATE_NAMES
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| AlgebraError::Parse(format!("unknown variable {name}")))?;
            m[idx] = *e;
        }
        p.add_term(m, c);
    }
    Ok(p)
}
