//! Text formats for polynomials and complex literals.
//!
//! Expression format: a sum of terms `c*z^k`, e.g. `z^3 - 1` or
//! `(2+3i)z^2 + z`. A coefficient is a decimal number, an imaginary number
//! (`3i`, `i`), or a parenthesized complex literal. The `*` is optional and
//! a missing coefficient means 1. Like powers are summed.
//!
//! Coefficients format: an ascending list of complex literals separated by
//! whitespace and/or commas, e.g. `-1, 0, 0, 1`.
//!
//! Complex literal: `[±]real[±imag i]`, `[±][imag]i`, optionally in
//! parentheses. `0.9i`, `1+i`, `-2.5e-3-4i` are all valid.

use num_complex::Complex64;
use thiserror::Error;

use crate::poly::Polynomial;

/// Exponents above this are rejected to keep allocation bounded.
pub const MAX_EXPONENT: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PolyFormat {
    #[default]
    Expression,
    Coefficients,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("negative exponent at position {position}")]
    NegativeExponent { position: usize },
    #[error("number at position {position} is not finite")]
    NonFinite { position: usize },
}

impl ParseError {
    fn syntax(position: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            position,
            message: message.into(),
        }
    }
}

pub fn parse_polynomial(text: &str, format: PolyFormat) -> Result<Polynomial, ParseError> {
    match format {
        PolyFormat::Expression => parse_expression(text),
        PolyFormat::Coefficients => parse_coefficients(text),
    }
}

/// Parses a standalone complex literal such as `0.9i` or `(1+i)`.
pub fn parse_complex(text: &str) -> Result<Complex64, ParseError> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    if cur.at_end() {
        return Err(ParseError::Empty);
    }
    let value = cur.complex_literal()?;
    cur.skip_ws();
    cur.expect_end()?;
    Ok(value)
}

fn parse_expression(text: &str) -> Result<Polynomial, ParseError> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    if cur.at_end() {
        return Err(ParseError::Empty);
    }
    let mut coeffs: Vec<Complex64> = Vec::new();
    let mut first = true;
    loop {
        cur.skip_ws();
        let sign = match cur.peek() {
            Some(b'+') => {
                cur.bump();
                1.0
            }
            Some(b'-') => {
                cur.bump();
                -1.0
            }
            _ if first => 1.0,
            Some(_) => return Err(ParseError::syntax(cur.pos, "expected '+' or '-'")),
            None => break,
        };
        cur.skip_ws();
        let (coef, power) = cur.term()?;
        if coeffs.len() <= power {
            coeffs.resize(power + 1, Complex64::new(0.0, 0.0));
        }
        coeffs[power] += coef * sign;
        first = false;
        cur.skip_ws();
        if cur.at_end() {
            break;
        }
    }
    Ok(Polynomial::new(coeffs).expect("parser only admits finite numbers"))
}

fn parse_coefficients(text: &str) -> Result<Polynomial, ParseError> {
    let mut coeffs = Vec::new();
    let bytes = text.as_bytes();
    let is_sep = |b: u8| b == b',' || b.is_ascii_whitespace();
    let mut i = 0;
    while i < bytes.len() {
        if is_sep(bytes[i]) {
            i += 1;
            continue;
        }
        let start = i;
        while i < bytes.len() && !is_sep(bytes[i]) {
            i += 1;
        }
        let mut cur = Cursor::with_offset(&text[start..i], start);
        let value = cur.complex_literal()?;
        cur.expect_end()?;
        coeffs.push(value);
    }
    if coeffs.is_empty() {
        return Err(ParseError::Empty);
    }
    Ok(Polynomial::new(coeffs).expect("parser only admits finite numbers"))
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
    offset: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Self::with_offset(text, 0)
    }

    fn with_offset(text: &'a str, offset: usize) -> Self {
        Self {
            bytes: text.as_bytes(),
            pos: 0,
            offset,
        }
    }

    fn position(&self) -> usize {
        self.offset + self.pos
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.bump();
        }
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(b) => Err(ParseError::syntax(
                self.position(),
                format!("unexpected character '{}'", b as char),
            )),
        }
    }

    fn expect(&mut self, byte: u8) -> Result<(), ParseError> {
        if self.peek() == Some(byte) {
            self.bump();
            Ok(())
        } else {
            Err(ParseError::syntax(self.position(), format!("expected '{}'", byte as char)))
        }
    }

    fn starts_number(&self) -> bool {
        matches!(self.peek(), Some(b'0'..=b'9' | b'.'))
    }

    /// Decimal number with optional fraction and exponent. No sign.
    fn number(&mut self) -> Result<f64, ParseError> {
        let start = self.pos;
        let digits = |cur: &mut Self| {
            let s = cur.pos;
            while cur.peek().is_some_and(|b| b.is_ascii_digit()) {
                cur.bump();
            }
            cur.pos - s
        };
        let mut mantissa = digits(self);
        if self.peek() == Some(b'.') {
            self.bump();
            mantissa += digits(self);
        }
        if mantissa == 0 {
            return Err(ParseError::syntax(self.offset + start, "expected a number"));
        }
        if matches!(self.peek(), Some(b'e' | b'E')) {
            self.bump();
            if matches!(self.peek(), Some(b'+' | b'-')) {
                self.bump();
            }
            if digits(self) == 0 {
                return Err(ParseError::syntax(self.position(), "malformed exponent"));
            }
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii slice");
        let value: f64 = text
            .parse()
            .map_err(|_| ParseError::syntax(self.offset + start, "malformed number"))?;
        if !value.is_finite() {
            return Err(ParseError::NonFinite {
                position: self.offset + start,
            });
        }
        Ok(value)
    }

    fn sign(&mut self) -> Option<f64> {
        match self.peek() {
            Some(b'+') => {
                self.bump();
                Some(1.0)
            }
            Some(b'-') => {
                self.bump();
                Some(-1.0)
            }
            _ => None,
        }
    }

    /// `[±]real[±[imag]i]` | `[±][imag]i`, optionally parenthesized.
    fn complex_literal(&mut self) -> Result<Complex64, ParseError> {
        if self.peek() == Some(b'(') {
            self.bump();
            self.skip_ws();
            let value = self.complex_literal()?;
            self.skip_ws();
            self.expect(b')')?;
            return Ok(value);
        }
        let first_sign = self.sign().unwrap_or(1.0);
        if self.peek() == Some(b'i') {
            self.bump();
            return Ok(Complex64::new(0.0, first_sign));
        }
        if !self.starts_number() {
            return Err(ParseError::syntax(self.position(), "expected a complex literal"));
        }
        let first = self.number()? * first_sign;
        if self.peek() == Some(b'i') {
            self.bump();
            return Ok(Complex64::new(0.0, first));
        }
        let Some(imag_sign) = self.sign() else {
            return Ok(Complex64::new(first, 0.0));
        };
        let imag = if self.starts_number() { self.number()? } else { 1.0 };
        self.expect(b'i')?;
        Ok(Complex64::new(first, imag_sign * imag))
    }

    /// One unsigned term of an expression: `[coef][*]z[^k]` or `coef`.
    fn term(&mut self) -> Result<(Complex64, usize), ParseError> {
        let coef = match self.peek() {
            Some(b'(') => Some(self.complex_literal()?),
            Some(b'i') => {
                self.bump();
                Some(Complex64::new(0.0, 1.0))
            }
            _ if self.starts_number() => {
                let v = self.number()?;
                if self.peek() == Some(b'i') {
                    self.bump();
                    Some(Complex64::new(0.0, v))
                } else {
                    Some(Complex64::new(v, 0.0))
                }
            }
            _ => None,
        };
        self.skip_ws();
        let explicit_mul = self.peek() == Some(b'*');
        if explicit_mul {
            self.bump();
            self.skip_ws();
        }
        if self.peek() != Some(b'z') {
            if explicit_mul || coef.is_none() {
                return Err(ParseError::syntax(self.position(), "expected 'z'"));
            }
            return Ok((coef.expect("checked above"), 0));
        }
        self.bump();
        self.skip_ws();
        let mut power = 1;
        if self.peek() == Some(b'^') {
            self.bump();
            self.skip_ws();
            if self.peek() == Some(b'-') {
                return Err(ParseError::NegativeExponent {
                    position: self.position(),
                });
            }
            if self.peek() == Some(b'+') {
                self.bump();
            }
            let start = self.pos;
            while self.peek().is_some_and(|b| b.is_ascii_digit()) {
                self.bump();
            }
            if start == self.pos {
                return Err(ParseError::syntax(self.position(), "expected an integer exponent"));
            }
            let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii");
            power = digits
                .parse::<usize>()
                .ok()
                .filter(|&k| k <= MAX_EXPONENT)
                .ok_or_else(|| ParseError::syntax(self.offset + start, "exponent too large"))?;
        }
        Ok((coef.unwrap_or(Complex64::new(1.0, 0.0)), power))
    }
}
