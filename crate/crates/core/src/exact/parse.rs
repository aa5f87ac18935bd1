//! Text syntax for exact scalars.
//!
//! ```text
//! scalar  := term (('+' | '-') term)*
//! term    := ['+' | '-'] ( rat ['*' sqrt] | sqrt )
//! sqrt    := 'sqrt' '(' int ')'
//! rat     := int ['/' int]
//! int     := digit+
//! ```
//!
//! Whitespace is ignored everywhere. Rational terms are summed into the
//! rational part; all radical terms must reduce to the same squarefree
//! radicand (`sqrt(8)+sqrt(2)` is fine, `sqrt(2)+sqrt(3)` is not
//! representable). Columns in errors are 1-based character offsets into the
//! original text.

use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{CheckedAdd, Zero};
use thiserror::Error;

use super::ExactScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse scalar {input:?} at column {column}: {message}")]
pub struct ParseScalarError {
    pub input: String,
    pub column: usize,
    pub message: String,
}

struct Parser<'a> {
    input: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        let chars = input
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        Self { input, chars, pos: 0 }
    }

    fn column(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(i, _)| i + 1)
            .unwrap_or_else(|| self.input.chars().count() + 1)
    }

    fn error(&self, message: impl Into<String>) -> ParseScalarError {
        ParseScalarError {
            input: self.input.to_string(),
            column: self.column(),
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseScalarError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn int(&mut self) -> Result<i64, ParseScalarError> {
        let start = self.pos;
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.pos += 1;
        }
        if digits.is_empty() {
            return Err(self.error("expected an integer"));
        }
        digits.parse().map_err(|_| {
            self.pos = start;
            self.error("integer out of range")
        })
    }

    fn rat(&mut self) -> Result<Rational64, ParseScalarError> {
        let num = self.int()?;
        if self.eat('/') {
            let den_col = self.pos;
            let den = self.int()?;
            if den == 0 {
                self.pos = den_col;
                return Err(self.error("zero denominator"));
            }
            Ok(Rational64::new(num, den))
        } else {
            Ok(Rational64::from_integer(num))
        }
    }

    fn at_sqrt(&self) -> bool {
        let word: String = self.chars[self.pos..].iter().take(4).map(|&(_, c)| c).collect();
        word == "sqrt"
    }

    /// Parses `sqrt(int)` and returns the radicand with the column of its
    /// first character.
    fn sqrt(&mut self) -> Result<(i64, usize), ParseScalarError> {
        if !self.at_sqrt() {
            return Err(self.error("expected 'sqrt'"));
        }
        self.pos += 4;
        self.expect('(')?;
        let col = self.pos;
        let negative = self.eat('-');
        let n = self.int()?;
        self.expect(')')?;
        Ok((if negative { -n } else { n }, col))
    }

    fn add(&self, x: Rational64, y: Rational64) -> Result<Rational64, ParseScalarError> {
        x.checked_add(&y).ok_or_else(|| self.error("value overflows 64-bit rationals"))
    }

    fn parse(mut self) -> Result<ExactScalar, ParseScalarError> {
        let mut rational = Rational64::zero();
        let mut radical: Option<(Rational64, u64)> = None;
        if self.peek().is_none() {
            return Err(self.error("empty input"));
        }
        let mut first = true;
        while self.peek().is_some() {
            let mut sign = 1i64;
            if self.eat('-') {
                sign = -1;
            } else if !self.eat('+') && !first {
                return Err(self.error("expected '+' or '-'"));
            }
            first = false;

            let (coeff, root) = if self.at_sqrt() {
                (Rational64::from_integer(1), Some(self.sqrt()?))
            } else {
                let c = self.rat()?;
                let root = if self.eat('*') { Some(self.sqrt()?) } else { None };
                (c, root)
            };
            let coeff = coeff * Rational64::from_integer(sign);
            match root {
                None => rational = self.add(rational, coeff)?,
                Some((n, col)) => {
                    let term = ExactScalar::quadratic(Rational64::zero(), coeff, n).map_err(|e| {
                        ParseScalarError {
                            input: self.input.to_string(),
                            column: self.chars.get(col).map(|&(i, _)| i + 1).unwrap_or(0),
                            message: e.to_string(),
                        }
                    })?;
                    match term {
                        ExactScalar::Rational(v) => rational = self.add(rational, v)?,
                        ExactScalar::QuadIrr { q, d, .. } => match radical {
                            None => radical = Some((q, d)),
                            Some((acc, d0)) if d0 == d => radical = Some((self.add(acc, q)?, d)),
                            Some((_, d0)) => {
                                return Err(ParseScalarError {
                                    input: self.input.to_string(),
                                    column: self.chars.get(col).map(|&(i, _)| i + 1).unwrap_or(0),
                                    message: format!(
                                        "mixed radicals sqrt({d0}) and sqrt({d}) are not a quadratic irrational"
                                    ),
                                })
                            }
                        },
                    }
                }
            }
        }
        Ok(match radical {
            Some((q, d)) if !q.is_zero() => ExactScalar::QuadIrr { p: rational, q, d },
            _ => ExactScalar::Rational(rational),
        })
    }
}

impl FromStr for ExactScalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Parser::new(s).parse()
    }
}
