//! Command-line literals: parameter expressions and series.
//!
//! An expression is a polynomial in named parameters with rational
//! coefficients, e.g. `2*z^2 - y/3 + 1/2`. Division is only allowed by a
//! constant.

use opcalc_core::{ParamPoly, PowerSeries, Rational, Ring};

use crate::error::CliError;

pub fn parse_expr(src: &str) -> Result<ParamPoly, CliError> {
    let mut p = Parser { src, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(p.error("unexpected input"));
    }
    Ok(e)
}

/// Comma-separated expressions, optionally wrapped in brackets.
pub fn parse_list(src: &str) -> Result<Vec<ParamPoly>, CliError> {
    let s = src.trim();
    let s = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')).unwrap_or(s);
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_expr).collect()
}

/// A series given on the command line.
#[derive(Clone, Debug, PartialEq)]
pub enum SeriesLiteral {
    /// Plain coefficients; their convention depends on the flag.
    Coeffs(Vec<ParamPoly>),
    /// `exp`: the exponential series.
    Exp,
    /// `expm1`: `exp(t) - 1`.
    ExpM1,
    /// `exp_poly:c1,c2,...`: `exp(c₁t + c₂t² + …)`.
    ExpPoly(Vec<ParamPoly>),
}

impl SeriesLiteral {
    pub fn parse(src: &str) -> Result<Self, CliError> {
        let s = src.trim();
        match s {
            "exp" => return Ok(SeriesLiteral::Exp),
            "expm1" => return Ok(SeriesLiteral::ExpM1),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("exp_poly") {
            let rest = rest.trim_start().strip_prefix(':').ok_or_else(|| CliError::Usage(format!("bad series literal `{src}`")))?;
            return Ok(SeriesLiteral::ExpPoly(parse_list(rest)?));
        }
        Ok(SeriesLiteral::Coeffs(parse_list(s)?))
    }

    /// `Exp` and `ExpPoly` are already series; `Coeffs` go through `coeffs`.
    pub fn to_series<R: Ring>(
        &self,
        order: usize,
        lift: impl Fn(&ParamPoly) -> Result<R, CliError>,
        coeffs: impl FnOnce(Vec<R>) -> Result<PowerSeries<R>, CliError>,
    ) -> Result<PowerSeries<R>, CliError> {
        match self {
            SeriesLiteral::Exp => Ok(PowerSeries::exponential(order)),
            SeriesLiteral::ExpM1 => Ok(PowerSeries::exponential(order).sub(&PowerSeries::one(order))),
            SeriesLiteral::ExpPoly(cs) => {
                let cs = cs.iter().map(&lift).collect::<Result<Vec<_>, _>>()?;
                Ok(PowerSeries::exp_poly(&cs, order))
            }
            SeriesLiteral::Coeffs(cs) => {
                let mut v = cs.iter().map(&lift).collect::<Result<Vec<_>, _>>()?;
                v.resize(order.max(v.len()), R::zero());
                v.truncate(order);
                coeffs(v)
            }
        }
    }

    pub fn has_symbols(&self) -> bool {
        match self {
            SeriesLiteral::Exp | SeriesLiteral::ExpM1 => false,
            SeriesLiteral::ExpPoly(cs) | SeriesLiteral::Coeffs(cs) => cs.iter().any(|c| c.as_constant().is_none()),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> CliError {
        CliError::Usage(format!("{what} at position {} in `{}`", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<ParamPoly, CliError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.plus(&self.term()?);
            } else if self.eat('-') {
                acc = acc.minus(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ParamPoly, CliError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.times(&self.unary()?);
            } else if self.eat('/') {
                let at = self.pos;
                let d = self.unary()?;
                let inv = d
                    .as_constant()
                    .and_then(|q| q.recip())
                    .ok_or_else(|| CliError::Usage(format!("division by a non-constant or zero at position {at} in `{}`", self.src)))?;
                acc = acc.scaled(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<ParamPoly, CliError> {
        if self.eat('-') {
            return Ok(self.unary()?.negated());
        }
        if self.eat('+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let e: u32 = self.src[start..self.pos].parse().map_err(|_| self.error("expected a non-negative integer exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ParamPoly, CliError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                while self.peek().is_some_and(|c| c.is_ascii_digit() || c == '.') {
                    self.pos += 1;
                }
                let text = &self.src[start..self.pos];
                Ok(ParamPoly::constant(parse_decimal(text).ok_or_else(|| self.error("bad number"))?))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                Ok(ParamPoly::variable(&self.src[start..self.pos]))
            }
            _ => Err(self.error("expected a number, parameter or `(`")),
        }
    }
}

fn parse_decimal(text: &str) -> Option<Rational> {
    match text.split_once('.') {
        None => text.parse().ok(),
        Some((int, frac)) => {
            if frac.contains('.') || (int.is_empty() && frac.is_empty()) {
                return None;
            }
            let digits = format!("{int}{frac}");
            let num: Rational = digits.parse().ok()?;
            let den: Rational = format!("1{}", "0".repeat(frac.len())).parse().ok()?;
            Some(num * den.recip()?)
        }
    }
}
