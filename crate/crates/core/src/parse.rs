//! Text syntax for monomials, ideals, polynomials and marked sets.
//!
//! ```text
//! monomial   := "1" | factor ("*" factor)*      factor := "x" INDEX ("^" EXP)?
//! ideal      := monomial ("," monomial)*
//! polynomial := term (("+" | "-") term)*        term := ["-"] [RATIONAL "*"] monomial | RATIONAL
//! marked set := one "head = polynomial" per line; "#" starts a comment
//! ```

use std::collections::HashSet;

use crate::borel::StronglyStableIdeal;
use crate::error::{Error, ParseError, Result};
use crate::monomial::{Exponent, Monomial};
use crate::polyparam::{MarkedPoly, MarkedSet, QPoly, SetKind};
use crate::rational::Rational;

#[derive(Clone, Copy)]
struct Factor {
    index: usize,
    exp: Exponent,
    line: usize,
    column: usize,
}

type Factors = Vec<Factor>;

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl Cursor {
    fn new(src: &str, line: usize) -> Self {
        Cursor { chars: src.chars().collect(), pos: 0, line, col: 1 }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.peek().is_none()
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse(ParseError { line: self.line, column: self.col, message: message.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<String> {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
        }
        (!s.is_empty()).then_some(s)
    }

    fn number<T: std::str::FromStr>(&mut self, what: &str) -> Result<T> {
        let (line, col) = (self.line, self.col);
        let s = self.digits().ok_or_else(|| self.error(format!("expected {what}")))?;
        s.parse().map_err(|_| Error::Parse(ParseError { line, column: col, message: format!("{what} out of range") }))
    }

    fn factor(&mut self, out: &mut Factors) -> Result<()> {
        self.skip_ws();
        if self.peek() != Some('x') {
            return Err(self.error("expected a variable like x0"));
        }
        let (line, column) = (self.line, self.col);
        self.bump();
        let idx: usize = self.number("variable index")?;
        let mut e: Exponent = 1;
        if self.eat('^') {
            self.skip_ws();
            e = self.number("exponent")?;
        }
        out.push(Factor { index: idx, exp: e, line, column });
        Ok(())
    }

    /// Monomial after an optional leading `1`.
    fn monomial(&mut self) -> Result<Factors> {
        let mut out = Vec::new();
        self.skip_ws();
        if self.peek() == Some('1') {
            self.bump();
            return Ok(out);
        }
        self.factor(&mut out)?;
        loop {
            self.skip_ws();
            if self.peek() == Some('*') {
                self.bump();
                self.factor(&mut out)?;
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn rational(&mut self) -> Result<Rational> {
        let (line, col) = (self.line, self.col);
        let n = self.digits().ok_or_else(|| self.error("expected a number"))?;
        let mut s = n;
        if self.peek() == Some('/') {
            self.bump();
            let d = self.digits().ok_or_else(|| self.error("expected a denominator"))?;
            s = format!("{s}/{d}");
        }
        s.parse().map_err(|_| {
            Error::Parse(ParseError { line, column: col, message: "invalid rational (zero denominator?)".into() })
        })
    }

    /// `(coefficient, factors)`; a bare number has empty factors.
    fn term(&mut self) -> Result<(Rational, Factors)> {
        self.skip_ws();
        let mut sign = Rational::one();
        if self.peek() == Some('-') {
            self.bump();
            sign = sign.neg_ref();
            self.skip_ws();
        }
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let c = self.rational()?;
            if self.eat('*') {
                let f = self.monomial()?;
                return Ok((sign.mul_ref(&c), f));
            }
            return Ok((sign.mul_ref(&c), Vec::new()));
        }
        let f = self.monomial()?;
        Ok((sign, f))
    }

    fn polynomial(&mut self) -> Result<Vec<(Rational, Factors)>> {
        let mut terms = vec![self.term()?];
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.bump();
                    terms.push(self.term()?);
                }
                Some('-') => {
                    let (c, f) = self.term()?;
                    terms.push((c, f));
                }
                _ => break,
            }
        }
        Ok(terms)
    }
}

fn max_index(fs: &Factors) -> Option<usize> {
    fs.iter().map(|f| f.index).max()
}

fn build(fs: &Factors, nvars: usize) -> Result<Monomial> {
    let mut e = vec![0; nvars];
    for f in fs {
        if f.index >= nvars {
            return Err(Error::Parse(ParseError {
                line: f.line,
                column: f.column,
                message: format!("variable x{} exceeds the {nvars} available variables", f.index),
            }));
        }
        e[f.index] += f.exp;
    }
    Ok(Monomial::from_exponents(&e))
}

fn resolve_nvars(inferred: usize, requested: Option<usize>) -> Result<usize> {
    match requested {
        Some(n) if n < inferred => Err(Error::Parse(ParseError {
            line: 1,
            column: 1,
            message: format!("--nvars {n} is smaller than the {inferred} variables used"),
        })),
        Some(n) => Ok(n),
        None => Ok(inferred.max(1)),
    }
}

fn finish(c: &mut Cursor) -> Result<()> {
    if c.at_end() {
        Ok(())
    } else {
        Err(c.error(format!("unexpected '{}'", c.peek().unwrap_or(' '))))
    }
}

pub fn parse_monomial(s: &str, nvars: Option<usize>) -> Result<Monomial> {
    let mut c = Cursor::new(s, 1);
    let f = c.monomial()?;
    finish(&mut c)?;
    let n = resolve_nvars(max_index(&f).map_or(0, |i| i + 1), nvars)?;
    build(&f, n)
}

/// Monomials of a comma-separated list; the variable count is inferred unless given.
pub fn parse_monomial_list(s: &str, nvars: Option<usize>) -> Result<Vec<Monomial>> {
    let mut c = Cursor::new(s, 1);
    let mut all = vec![c.monomial()?];
    while c.eat(',') {
        all.push(c.monomial()?);
    }
    finish(&mut c)?;
    let inferred = all.iter().filter_map(max_index).max().map_or(0, |i| i + 1);
    let n = resolve_nvars(inferred, nvars)?;
    all.iter().map(|f| build(f, n)).collect()
}

/// Minimalized ideal; strong stability is left to the caller.
pub fn parse_ideal(s: &str, nvars: Option<usize>) -> Result<StronglyStableIdeal> {
    let gens = parse_monomial_list(s, nvars)?;
    let n = gens[0].num_vars();
    StronglyStableIdeal::from_generators(&gens, n)
}

fn terms_to_poly(terms: Vec<(Rational, Factors)>, nvars: usize) -> Result<QPoly> {
    let mut p = QPoly::zero();
    for (c, f) in terms {
        p.add_term(build(&f, nvars)?, c);
    }
    Ok(p)
}

pub fn parse_poly(s: &str, nvars: Option<usize>) -> Result<QPoly> {
    let mut c = Cursor::new(s, 1);
    let terms = c.polynomial()?;
    finish(&mut c)?;
    let inferred = terms.iter().filter_map(|(_, f)| max_index(f)).max().map_or(0, |i| i + 1);
    terms_to_poly(terms, resolve_nvars(inferred, nvars)?)
}

/// `head = tail` lines over `ideal`; heads not listed get a zero tail.
pub fn parse_marked_set(text: &str, ideal: &StronglyStableIdeal) -> Result<MarkedSet<Rational>> {
    let n = ideal.num_vars();
    let mut polys = Vec::new();
    let mut seen = HashSet::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let mut c = Cursor::new(line, k + 1);
        let hf = c.monomial()?;
        let head = build(&hf, n)?;
        if !c.eat('=') {
            return Err(c.error("expected '='"));
        }
        let tail = if c.at_end() { Vec::new() } else { c.polynomial()? };
        finish(&mut c)?;
        let tail = terms_to_poly(tail, n)?;
        if !seen.insert(head.clone()) {
            return Err(Error::Parse(ParseError {
                line: k + 1,
                column: 1,
                message: format!("head {head} appears twice"),
            }));
        }
        polys.push(MarkedPoly::new(head, tail));
    }
    MarkedSet::new(ideal.clone(), SetKind::Full, polys)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perr(e: Error) -> ParseError {
        match e {
            Error::Parse(p) => p,
            other => panic!("expected a parse error, got {other}"),
        }
    }

    #[test]
    fn monomials() {
        let m = parse_monomial("x0^2*x1*x3", None).unwrap();
        assert_eq!(m.exponents(), &[2, 1, 0, 1]);
        assert_eq!(parse_monomial("x1*x1", None).unwrap().exponents(), &[0, 2]);
        assert_eq!(parse_monomial("1", Some(3)).unwrap(), Monomial::one(3));
        assert_eq!(parse_monomial("x12", None).unwrap().num_vars(), 13);
        assert!(parse_monomial("x3", Some(2)).is_err());
    }

    #[test]
    fn errors_have_positions() {
        let e = perr(parse_monomial("x1*y2", None).unwrap_err());
        assert_eq!((e.line, e.column), (1, 4));
        let e = perr(parse_ideal("x1, x2^", None).unwrap_err());
        assert_eq!((e.line, e.column), (1, 8));
        let j = parse_ideal("x2, x1^2", None).unwrap();
        let e = perr(parse_marked_set("# c\nx2 = x1\nx1^2 x0", &j).unwrap_err());
        assert_eq!((e.line, e.column), (3, 6));
    }

    #[test]
    fn polynomials() {
        let p = parse_poly("-3/2*x1*x0 + x0^2 - x2*x0 + 2", Some(3)).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.to_string(), "-x2*x0 - 3/2*x1*x0 + x0^2 + 2");
        assert!(parse_poly("x1 - x1", None).unwrap().is_zero());
        assert!(parse_poly("1/0*x1", None).is_err());
    }

    #[test]
    fn marked_sets() {
        let j = parse_ideal("x2, x1^2, x1*x0", None).unwrap();
        let g = parse_marked_set("x2 = -x1   # comment\n\n", &j).unwrap();
        assert_eq!(g.polys().len(), 3);
        assert!(g.polys().iter().filter(|p| p.head.degree() == 2).all(|p| p.tail.is_zero()));
        assert!(parse_marked_set("x2 = x1\nx2 = x0", &j).is_err());
        assert!(parse_marked_set("x2 =", &j).is_ok());
    }
}
