//! A small polynomial expression grammar for command-line input.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/')? unary)*      juxtaposition multiplies
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | variable | '(' expr ')'
//! ```
//!
//! Division is only allowed by constants.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::dfinite::{PRec, Poly};
use crate::exact_series::ExactRational;
use crate::guessing::TriPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unexpected '{ch}' at position {pos}")]
    UnexpectedChar { pos: usize, ch: char },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("division by a non-constant or zero expression")]
    BadDivision,
    #[error("exponent {0} is too large")]
    ExponentTooLarge(String),
    #[error("empty expression")]
    Empty,
    #[error("bad number '{0}'")]
    BadNumber(String),
}

const MAX_EXPONENT: u32 = 10_000;

type Mono = Vec<u32>;

/// Sparse polynomial in a fixed list of variables.
#[derive(Debug, Clone, PartialEq)]
struct MPoly {
    terms: BTreeMap<Mono, ExactRational>,
    nvars: usize,
}

impl MPoly {
    fn constant(c: ExactRational, nvars: usize) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nvars], c);
        }
        MPoly { terms, nvars }
    }

    fn var(k: usize, nvars: usize) -> Self {
        let mut m = vec![0; nvars];
        m[k] = 1;
        MPoly {
            terms: BTreeMap::from([(m, ExactRational::one())]),
            nvars,
        }
    }

    fn as_constant(&self) -> Option<ExactRational> {
        match self.terms.len() {
            0 => Some(ExactRational::zero()),
            1 => self.terms.get(&vec![0; self.nvars]).cloned(),
            _ => None,
        }
    }

    fn add(mut self, o: &MPoly, sign: bool) -> Self {
        for (m, c) in &o.terms {
            let e = self
                .terms
                .entry(m.clone())
                .or_insert_with(ExactRational::zero);
            if sign {
                *e += c;
            } else {
                *e -= c;
            }
            if e.is_zero() {
                self.terms.remove(m);
            }
        }
        self
    }

    fn mul(&self, o: &MPoly) -> Self {
        let mut out = MPoly {
            terms: BTreeMap::new(),
            nvars: self.nvars,
        };
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m: Mono = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                let e = out
                    .terms
                    .entry(m.clone())
                    .or_insert_with(ExactRational::zero);
                *e += ca * cb;
                if e.is_zero() {
                    out.terms.remove(&m);
                }
            }
        }
        out
    }

    fn neg(mut self) -> Self {
        for c in self.terms.values_mut() {
            *c = -&*c;
        }
        self
    }
}

struct Parser<'a> {
    src: Vec<char>,
    pos: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn unexpected(&self) -> ParseError {
        match self.src.get(self.pos) {
            Some(&ch) => ParseError::UnexpectedChar { pos: self.pos, ch },
            None => ParseError::UnexpectedEnd,
        }
    }

    fn expr(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = acc.add(&rhs, c == '+');
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some('/') => {
                    self.pos += 1;
                    let d = self
                        .unary()?
                        .as_constant()
                        .filter(|c| !c.is_zero())
                        .ok_or(ParseError::BadDivision)?;
                    acc = acc.mul(&MPoly::constant(d.recip(), acc.nvars));
                }
                Some(c) if c.is_ascii_alphanumeric() || c == '(' => acc = acc.mul(&self.power()?),
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MPoly, ParseError> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return Err(self.unexpected());
        }
        let e: u32 = digits
            .parse()
            .ok()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or(ParseError::ExponentTooLarge(digits))?;
        let mut acc = MPoly::constant(ExactRational::one(), base.nvars);
        for _ in 0..e {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> String {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|&c| f(c)) {
            self.pos += 1;
        }
        self.src[start..self.pos].iter().collect()
    }

    fn atom(&mut self) -> Result<MPoly, ParseError> {
        let nvars = self.vars.len();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.unexpected());
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.take_while(|c| c.is_ascii_digit());
                let v: BigInt = digits.parse().map_err(|_| ParseError::BadNumber(digits))?;
                Ok(MPoly::constant(ExactRational::from(v), nvars))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                self.pos += 1;
                let name: String = self.src[start..self.pos].iter().collect();
                match self.vars.iter().position(|v| *v == name) {
                    Some(k) => Ok(MPoly::var(k, nvars)),
                    None => Err(ParseError::UnknownVariable(name)),
                }
            }
            _ => Err(self.unexpected()),
        }
    }
}

fn parse_mpoly(src: &str, vars: &[&str]) -> Result<MPoly, ParseError> {
    if src.trim().is_empty() {
        return Err(ParseError::Empty);
    }
    let mut p = Parser {
        src: src.chars().collect(),
        pos: 0,
        vars,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.unexpected());
    }
    Ok(e)
}

/// Splits on commas that are not inside parentheses.
pub fn split_top_level(src: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, c) in src.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&src[start..k]);
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push(&src[start..]);
    out
}

/// A univariate polynomial in the single variable `var`.
pub fn parse_poly(src: &str, var: &str) -> Result<Poly, ParseError> {
    let m = parse_mpoly(src, &[var])?;
    let deg = m.terms.keys().map(|k| k[0] as usize).max().unwrap_or(0);
    let mut coeffs = vec![ExactRational::zero(); deg + 1];
    for (k, c) in m.terms {
        coeffs[k[0] as usize] = c;
    }
    Ok(Poly::new(coeffs))
}

/// A polynomial in `x`, `t` and `Y`.
pub fn parse_tripoly(src: &str) -> Result<TriPoly, ParseError> {
    let m = parse_mpoly(src, &["x", "t", "Y"])?;
    Ok(TriPoly::from_rational_terms(
        m.terms.into_iter().map(|(k, c)| ((k[0], k[1], k[2]), c)),
    ))
}

/// `q_0(n), ..., q_r(n)` as comma-separated expressions in `n`.
pub fn parse_rec(src: &str) -> Result<PRec, ParseError> {
    let coeffs = split_top_level(src)
        .into_iter()
        .map(|s| parse_poly(s, "n"))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PRec::new(coeffs))
}

/// Comma-separated rationals such as `1,0,-1/2`.
pub fn parse_rationals(src: &str) -> Result<Vec<ExactRational>, ParseError> {
    src.split(',')
        .map(|s| {
            let s = s.trim();
            s.parse().map_err(|_| ParseError::BadNumber(s.to_string()))
        })
        .collect()
}
