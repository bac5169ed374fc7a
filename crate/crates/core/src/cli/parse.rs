//! Jet expressions: `+ - * / ^`, integer and `p/q` literals, parentheses and
//! `(expr, expr)` tuples over named variables.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::jetalg::{JetMap, Scalar, TruncPoly};

const MAX_EXPONENT: u32 = 64;

/// Ordered variable names; position is the variable index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vars {
    names: Vec<String>,
}

impl Vars {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Vars {
            names: names.into_iter().map(Into::into).collect(),
        }
    }

    /// `z1..zn, x, y`.
    pub fn standard(n: usize) -> Self {
        let mut names: Vec<String> = (1..=n).map(|i| format!("z{i}")).collect();
        names.push("x".into());
        names.push("y".into());
        Vars { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> Vec<&str> {
        self.names.iter().map(String::as_str).collect()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|v| v == name)
    }

    pub fn concat(&self, other: &Vars) -> Vars {
        Vars {
            names: self.names.iter().chain(other.names.iter()).cloned().collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    End,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((start, Tok::Num(digits.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^(),".contains(c) {
            out.push((start, Tok::Sym(c)));
            i += 1;
        } else if c == '−' {
            out.push((start, Tok::Sym('-')));
            i += 1;
        } else {
            return Err(parse_error(start, format!("unexpected character `{c}`")));
        }
    }
    out.push((chars.len(), Tok::End));
    Ok(out)
}

fn parse_error(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos: pos + 1,
        msg: msg.into(),
    }
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    vars: &'a Vars,
    order: u32,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(parse_error(self.pos(), format!("expected `{c}`")))
        }
    }

    fn top(&mut self) -> Result<Vec<TruncPoly>> {
        if *self.peek() == Tok::Sym('(') {
            let save = self.at;
            self.bump();
            let first = self.expr()?;
            if self.eat(',') {
                let mut parts = vec![first, self.expr()?];
                while self.eat(',') {
                    parts.push(self.expr()?);
                }
                self.expect(')')?;
                self.end()?;
                return Ok(parts);
            }
            self.at = save;
        }
        let single = self.expr()?;
        self.end()?;
        Ok(vec![single])
    }

    fn end(&self) -> Result<()> {
        match self.peek() {
            Tok::End => Ok(()),
            _ => Err(parse_error(self.pos(), "unexpected trailing input")),
        }
    }

    fn expr(&mut self) -> Result<TruncPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<TruncPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if *self.peek() == Tok::Sym('/') {
                let pos = self.pos();
                self.bump();
                let d = self.unary()?;
                let c = d.constant_term();
                if d.len() > 1 || (d.len() == 1 && c.is_zero()) {
                    return Err(parse_error(pos, "division by a non-constant"));
                }
                if c.is_zero() {
                    return Err(parse_error(pos, "division by zero"));
                }
                acc = acc.scale(&(Scalar::from_integer(1.into()) / c));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<TruncPoly> {
        if self.eat('-') {
            Ok(-&self.unary()?)
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<TruncPoly> {
        let base = self.atom()?;
        if *self.peek() != Tok::Sym('^') {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump() {
            Tok::Num(e) => match e.to_u32() {
                Some(e) if e <= MAX_EXPONENT => Ok(base.pow(e)),
                _ => Err(parse_error(pos, format!("exponent exceeds {MAX_EXPONENT}"))),
            },
            _ => Err(parse_error(pos, "expected a nonnegative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<TruncPoly> {
        let pos = self.pos();
        let n = self.vars.len();
        match self.bump() {
            Tok::Num(v) => Ok(TruncPoly::constant(n, self.order, Scalar::from_integer(v))),
            Tok::Ident(name) => match self.vars.index(&name) {
                Some(i) => Ok(TruncPoly::var(n, self.order, i)),
                None => Err(parse_error(pos, format!("unknown variable `{name}`"))),
            },
            Tok::Sym('(') => {
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Tok::End => Err(parse_error(pos, "unexpected end of input")),
            Tok::Sym(c) => Err(parse_error(pos, format!("unexpected `{c}`"))),
        }
    }
}

/// Parse a scalar expression or a tuple into its components.
pub fn parse_components(text: &str, vars: &Vars, order: u32) -> Result<Vec<TruncPoly>> {
    if order == 0 {
        return Err(Error::OrderTooSmall { min: 1, got: 0 });
    }
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
        vars,
        order,
    };
    p.top()
}

/// Parse a jet; every component must vanish at the origin.
pub fn parse_jet(text: &str, vars: &Vars, order: u32) -> Result<JetMap> {
    JetMap::new(parse_components(text, vars, order)?)
}

/// Identifiers occurring in `text`, or a parse error for stray characters.
pub fn identifiers(text: &str) -> Result<BTreeSet<String>> {
    Ok(tokenize(text)?
        .into_iter()
        .filter_map(|(_, t)| match t {
            Tok::Ident(s) => Some(s),
            _ => None,
        })
        .collect())
}

/// Largest `k` among identifiers `zk`.
pub fn infer_n<'a>(texts: impl IntoIterator<Item = &'a str>) -> Result<usize> {
    let mut n = 0;
    for t in texts {
        for id in identifiers(t)? {
            if let Some(k) = id.strip_prefix('z').and_then(|k| k.parse::<usize>().ok()) {
                n = n.max(k);
            }
        }
    }
    Ok(n)
}
