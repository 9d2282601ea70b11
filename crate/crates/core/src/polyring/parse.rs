//! Text form of rational functions.
//!
//! ```text
//! sum  := ['-'] expr (('+' | '-') expr)*
//! expr := term (('*' | '/') term)*
//! term := atom ('^' int)?            int may carry a leading '-'
//! atom := coeff | var | '(' sum ')'
//! coeff := digits | '[' digits (',' digits)* ']'
//! ```
//!
//! Whitespace is ignored. Products and powers stay factored; sums are
//! expanded and refactored.

use super::{FactoredRationalFunction, FqPoly, PolyRing, RatFuncField};
use crate::error::{Error, Result};
use crate::ffield::{FieldCtx, Fe};
use crate::ring::Ring;

/// Parses an expression in the variable `v`.
pub fn parse_expr(field: &FieldCtx, text: &str) -> Result<FactoredRationalFunction> {
    parse_expr_in(field, text, 'v')
}

/// Parses an expression in the given variable.
pub fn parse_expr_in(field: &FieldCtx, text: &str, var: char) -> Result<FactoredRationalFunction> {
    let mut parser = Parser {
        field,
        chars: text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
        pos: 0,
        len: text.len(),
        var,
    };
    let value = parser.sum()?;
    if let Some(&(at, c)) = parser.chars.get(parser.pos) {
        return Err(Error::Parse { pos: at, msg: format!("unexpected '{c}'") });
    }
    value.ok_or_else(|| Error::InvalidArgument("expression evaluates to zero".into()))
}

/// `None` stands for zero, which has no factored form.
type Value = Option<FactoredRationalFunction>;

struct Parser<'a> {
    field: &'a FieldCtx,
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
    var: char,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(i, _)| i)
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.offset(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(format!("expected '{c}'"))
        }
    }

    fn sum(&mut self) -> Result<Value> {
        let negate = self.eat('-');
        let mut acc = self.expr()?;
        if negate {
            acc = acc.map(|f| f.scale(self.field.neg(&Fe::ONE)));
        }
        loop {
            let minus = match self.peek() {
                Some('+') => false,
                Some('-') => true,
                _ => return Ok(acc),
            };
            self.pos += 1;
            let mut rhs = self.expr()?;
            if minus {
                rhs = rhs.map(|f| f.scale(self.field.neg(&Fe::ONE)));
            }
            acc = self.add(acc, rhs)?;
        }
    }

    fn add(&self, a: Value, b: Value) -> Result<Value> {
        let (a, b) = match (a, b) {
            (None, x) | (x, None) => return Ok(x),
            (Some(a), Some(b)) => (a, b),
        };
        let rf = RatFuncField::new(self.field.clone());
        let s = rf.add(&a.expand(), &b.expand());
        if rf.is_zero(&s) {
            return Ok(None);
        }
        FactoredRationalFunction::from_ratfunc(self.field, &s).map(Some)
    }

    fn expr(&mut self) -> Result<Value> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = match (acc, rhs) {
                        (Some(a), Some(b)) => Some(a.mul(&b)),
                        _ => None,
                    };
                }
                Some('/') => {
                    self.pos += 1;
                    let Some(rhs) = self.term()? else {
                        return Err(Error::DivisionByZero);
                    };
                    acc = acc.map(|a| a.div(&rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Value> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let paren = self.eat('(');
        let negative = self.eat('-');
        let k = self.integer()?;
        if paren {
            self.expect(')')?;
        }
        let k = i64::try_from(k).map_err(|_| Error::Parse { pos: self.offset(), msg: "exponent too large".into() })?;
        let k = if negative { -k } else { k };
        match base {
            Some(f) => Ok(Some(f.pow(k))),
            None if k > 0 => Ok(None),
            None if k == 0 => Ok(Some(FactoredRationalFunction::one(self.field))),
            None => Err(Error::DivisionByZero),
        }
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(c as u64 - '0' as u64))
                .ok_or(Error::Parse { pos: self.offset(), msg: "integer too large".into() })?;
            self.pos += 1;
        }
        if self.pos == start {
            return self.error("expected an integer");
        }
        Ok(value)
    }

    fn atom(&mut self) -> Result<Value> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.sum()?;
                self.expect(')')?;
                Ok(v)
            }
            Some(c) if c == self.var => {
                self.pos += 1;
                let ring = PolyRing::new(self.field.clone());
                Ok(Some(FactoredRationalFunction::new(self.field, Fe::ONE, vec![(ring.var(), 1)])?))
            }
            Some('[') => {
                self.pos += 1;
                let mut digits = vec![self.integer()?];
                while self.eat(',') {
                    digits.push(self.integer()?);
                }
                self.expect(']')?;
                let c = self.field.from_digits(&digits).map_err(|_| Error::CoefficientOutOfField {
                    coeff: format!("{digits:?}"),
                    q: self.field.size(),
                })?;
                self.constant(c)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                if n >= self.field.p() {
                    return Err(Error::CoefficientOutOfField { coeff: n.to_string(), q: self.field.size() });
                }
                self.constant(self.field.from_int(n as i64))
            }
            Some(c) => self.error(format!("unexpected '{c}'")),
            None => self.error("unexpected end of input"),
        }
    }

    fn constant(&self, c: Fe) -> Result<Value> {
        if c == Fe::ZERO {
            Ok(None)
        } else {
            FactoredRationalFunction::constant(self.field, c).map(Some)
        }
    }
}

/// A prime-subfield element prints as an integer, anything else as its
/// coefficient list.
pub fn format_element(field: &FieldCtx, a: Fe) -> String {
    if field.is_prime_subfield(a) {
        a.index().to_string()
    } else {
        field.format_digits(a)
    }
}

/// Expanded form, highest degree first, e.g. `v^2+2*v+1`.
pub fn format_poly(field: &FieldCtx, p: &FqPoly, var: char) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if *c == Fe::ZERO {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        terms.push(match (k, *c == Fe::ONE) {
            (0, _) => format_element(field, *c),
            (_, true) => mono,
            (_, false) => format!("{}*{mono}", format_element(field, *c)),
        });
    }
    terms.join("+")
}

/// Canonical factored form in the variable `v`, e.g. `2*v^3*(v+4)/(v^2+2)`.
pub fn format_factored(f: &FactoredRationalFunction) -> String {
    let field = f.field();
    let ring = PolyRing::new(field.clone());
    let factor = |p: &FqPoly, e: i64| {
        let body = if *p == ring.var() {
            "v".to_string()
        } else {
            format!("({})", format_poly(field, p, 'v'))
        };
        if e.abs() == 1 {
            body
        } else {
            format!("{body}^{}", e.abs())
        }
    };
    let mut num: Vec<String> = Vec::new();
    if f.unit() != Fe::ONE {
        num.push(format_element(field, f.unit()));
    }
    let mut den = Vec::new();
    for (p, e) in f.factors() {
        if *e > 0 {
            num.push(factor(p, *e));
        } else {
            den.push(factor(p, *e));
        }
    }
    let mut out = if num.is_empty() { "1".to_string() } else { num.join("*") };
    for d in den {
        out.push('/');
        out.push_str(&d);
    }
    out
}
