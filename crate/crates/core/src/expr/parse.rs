//! Recursive-descent parser for power expressions.
//!
//! ```text
//! expr     := sign? term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := number | axis ('^' exponent)?
//! exponent := sign? number | '(' sign? number ')'
//! ```

use thiserror::Error;

use super::axis::Axis;
use super::poly::{PolyExpr, PowerTerm};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("non-finite literal at byte {offset}")]
    NonFinite { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. } | ParseError::NonFinite { offset } => *offset,
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
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

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { offset: self.pos, message: message.into() })
    }

    fn number(&mut self) -> Result<f64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let digits = |p: &mut Self| {
            let s = p.pos;
            while p.peek().is_some_and(|c| c.is_ascii_digit()) {
                p.bump();
            }
            p.pos > s
        };
        let int = digits(self);
        let mut frac = false;
        if self.peek() == Some('.') {
            self.bump();
            frac = digits(self);
        }
        if !int && !frac {
            self.pos = start;
            return self.error("expected a number");
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            let mark = self.pos;
            self.bump();
            if matches!(self.peek(), Some('+' | '-')) {
                self.bump();
            }
            if !digits(self) {
                self.pos = mark;
                return self.error("malformed exponent in numeric literal");
            }
        }
        let v: f64 = self.src[start..self.pos]
            .parse()
            .map_err(|_| ParseError::Syntax { offset: start, message: "bad numeric literal".into() })?;
        if !v.is_finite() {
            return Err(ParseError::NonFinite { offset: start });
        }
        Ok(v)
    }

    fn signed_number(&mut self) -> Result<f64, ParseError> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let v = self.number()?;
        Ok(if neg { -v } else { v })
    }

    fn exponent(&mut self) -> Result<f64, ParseError> {
        if self.eat('(') {
            let v = self.signed_number()?;
            if !self.eat(')') {
                return self.error("expected `)`");
            }
            Ok(v)
        } else {
            self.signed_number()
        }
    }

    fn factor(&mut self, coeff: &mut f64, exps: &mut [f64; 4]) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if Axis::from_char(c).is_some() => {
                let axis = Axis::from_char(c).expect("checked");
                self.bump();
                let e = if self.eat('^') { self.exponent()? } else { 1.0 };
                exps[axis.index()] += e;
                Ok(())
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                *coeff *= self.number()?;
                Ok(())
            }
            Some(c) => self.error(format!("unexpected `{c}`")),
            None => self.error("unexpected end of input"),
        }
    }

    fn term(&mut self, sign: f64) -> Result<(f64, [f64; 4]), ParseError> {
        let mut coeff = sign;
        let mut exps = [0.0; 4];
        self.factor(&mut coeff, &mut exps)?;
        while self.eat('*') {
            self.factor(&mut coeff, &mut exps)?;
        }
        Ok((coeff, exps))
    }

    fn expr(&mut self) -> Result<Vec<(f64, [f64; 4])>, ParseError> {
        let mut terms = Vec::new();
        let mut sign = if self.eat('-') {
            -1.0
        } else {
            self.eat('+');
            1.0
        };
        loop {
            terms.push(self.term(sign)?);
            if self.eat('+') {
                sign = 1.0;
            } else if self.eat('-') {
                sign = -1.0;
            } else {
                break;
            }
        }
        self.skip_ws();
        if self.pos != self.src.len() {
            return self.error("expected `+`, `-` or `*`");
        }
        Ok(terms)
    }
}

/// Parses a signed sum of products such as `0.5*x^0.5*z^1.2 - 2*y`.
pub fn parse_expr<T: Scalar>(src: &str) -> Result<PolyExpr<T>, ParseError> {
    let terms = Parser { src, pos: 0 }.expr()?;
    Ok(PolyExpr::from_terms(terms.into_iter().map(|(c, e)| PowerTerm::new(T::lit(c), e.map(T::lit)))))
}
