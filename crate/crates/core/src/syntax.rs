//! Term syntax shared by polynomials, ideals and parameter families.
//!
//! ```text
//! expr   := [sign] term (sign term)*
//! term   := factor ('*' factor)*
//! factor := int ['/' int] | name ['^' ['-'] int]
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::linalg::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("ParseError: {message} at byte {position} in {input:?}")]
pub struct ParseError {
    pub input: String,
    pub position: usize,
    pub message: String,
}

/// A parsed term list: exponent vector (possibly negative) ↦ nonzero coefficient.
pub type Terms = BTreeMap<Vec<i64>, Rational>;

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError { input: self.src.to_string(), position: self.pos, message: message.into() }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        Ok(self.src[start..self.pos].parse().expect("digits"))
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let first = rest.chars().next()?;
        if !(first.is_ascii_alphabetic() || first == '_') {
            return None;
        }
        let len = rest.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(rest.len());
        self.pos += len;
        Some(&rest[..len])
    }
}

/// Parses `text` over the variables `names`.
pub fn parse_terms(text: &str, names: &[String], allow_negative: bool) -> Result<Terms, ParseError> {
    let mut lx = Lexer { src: text, pos: 0 };
    let mut out = Terms::new();
    let mut first = true;
    loop {
        let mut sign = Rational::one();
        match lx.peek() {
            None if first => return Err(lx.err("empty expression")),
            None => break,
            Some('+') => {
                lx.bump();
            }
            Some('-') => {
                lx.bump();
                sign = -sign;
            }
            Some(_) if first => {}
            Some(c) => return Err(lx.err(format!("expected '+' or '-', found {c:?}"))),
        }
        first = false;
        let (coef, exps) = parse_term(&mut lx, names, allow_negative)?;
        let coef = coef * sign;
        let e = out.entry(exps).or_insert_with(Rational::zero);
        *e += coef;
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

fn parse_term(lx: &mut Lexer<'_>, names: &[String], allow_negative: bool) -> Result<(Rational, Vec<i64>), ParseError> {
    let mut coef = Rational::one();
    let mut exps = vec![0i64; names.len()];
    loop {
        match lx.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = lx.integer()?;
                let den = if lx.peek() == Some('/') {
                    lx.bump();
                    let d = lx.integer()?;
                    if d.is_zero() {
                        return Err(lx.err("zero denominator"));
                    }
                    d
                } else {
                    BigInt::one()
                };
                coef *= Rational::new(num, den);
            }
            Some(_) => {
                let start = lx.pos;
                let Some(name) = lx.ident() else { return Err(lx.err("expected a number or variable")) };
                let Some(idx) = names.iter().position(|n| n == name) else {
                    lx.pos = start;
                    return Err(lx.err(format!("unknown variable {name:?}")));
                };
                let mut e = 1i64;
                if lx.peek() == Some('^') {
                    lx.bump();
                    let neg = if lx.peek() == Some('-') {
                        lx.bump();
                        true
                    } else {
                        false
                    };
                    let v: i64 = lx.integer()?.try_into().map_err(|_| lx.err("exponent too large"))?;
                    e = if neg { -v } else { v };
                    if e < 0 && !allow_negative {
                        return Err(lx.err("negative exponent"));
                    }
                }
                exps[idx] += e;
            }
            None => return Err(lx.err("expected a factor")),
        }
        if lx.peek() == Some('*') {
            lx.bump();
        } else {
            break;
        }
    }
    Ok((coef, exps))
}

pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Renders one monomial (no coefficient); empty string for the constant.
pub fn format_monomial(exps: &[i64], names: &[String]) -> String {
    let mut s = String::new();
    for (e, name) in exps.iter().zip(names) {
        if *e == 0 {
            continue;
        }
        if !s.is_empty() {
            s.push('*');
        }
        s.push_str(name);
        if *e != 1 {
            let _ = write!(s, "^{e}");
        }
    }
    s
}

/// Renders terms in the given order; the inverse of [`parse_terms`].
pub fn format_terms<'a>(terms: impl IntoIterator<Item = (&'a [i64], &'a Rational)>, names: &[String]) -> String {
    let mut s = String::new();
    for (exps, c) in terms {
        let neg = c.is_negative();
        let a = c.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mono = format_monomial(exps, names);
        if mono.is_empty() {
            s.push_str(&format_rational(&a));
        } else if a.is_one() {
            s.push_str(&mono);
        } else {
            let _ = write!(s, "{}*{}", format_rational(&a), mono);
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}
