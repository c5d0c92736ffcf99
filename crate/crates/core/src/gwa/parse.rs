//! Recursive-descent reader for GWA expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | 'x' | 'y' | 'h' | 'z' | '(' expr ')'
//! ```
//!
//! `z` denotes the generator of the coefficient field when one is supplied.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{GwaAlgebra, GwaElement, GwaGenerators};
use crate::arith::Field;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(char),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let chars: Vec<char> = src.chars().collect();
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
            toks.push(Tok::Int(s.parse().expect("digits")));
        } else if matches!(c, 'x' | 'y' | 'h' | 'z') {
            toks.push(Tok::Ident(c));
            i += 1;
        } else if "+-*/^()".contains(c) {
            toks.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(toks)
}

struct Parser<'a, K: Field> {
    toks: Vec<Tok>,
    pos: usize,
    alg: &'a Arc<GwaAlgebra<K>>,
    coef: &'a dyn Fn(&BigRational) -> Result<K>,
    generator: Option<&'a K>,
}

impl<K: Field> Parser<'_, K> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat_op(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<GwaElement<K>> {
        let mut acc = self.term()?;
        loop {
            if self.eat_op('+') {
                acc = acc.try_add(&self.term()?)?;
            } else if self.eat_op('-') {
                acc = acc.try_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<GwaElement<K>> {
        let mut acc = self.unary()?;
        while self.eat_op('*') {
            acc = acc.try_mul(&self.unary()?)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<GwaElement<K>> {
        if self.eat_op('-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<GwaElement<K>> {
        let base = self.atom()?;
        if self.eat_op('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Int(e)) => {
                    self.pos += 1;
                    let e: u32 = e
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(Error::Parse("expected integer exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<GwaElement<K>> {
        let tok = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        match tok {
            Tok::Int(num) => {
                let mut value = BigRational::from_integer(num);
                if self.eat_op('/') {
                    match self.toks.get(self.pos).cloned() {
                        Some(Tok::Int(den)) if den != BigInt::from(0) => {
                            self.pos += 1;
                            value /= BigRational::from_integer(den);
                        }
                        _ => return Err(Error::Parse("expected nonzero denominator".into())),
                    }
                }
                Ok(self.alg.constant((self.coef)(&value)?))
            }
            Tok::Ident('x') => Ok(self.alg.x()),
            Tok::Ident('y') => Ok(self.alg.y()),
            Tok::Ident('h') => Ok(self.alg.h()),
            Tok::Ident(_) => match self.generator {
                Some(g) => Ok(self.alg.constant(g.clone())),
                None => Err(Error::Parse("no field generator z in this field".into())),
            },
            Tok::Op('(') => {
                let inner = self.expr()?;
                if !self.eat_op(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(inner)
            }
            Tok::Op(c) => Err(Error::Parse(format!("unexpected {c:?}"))),
        }
    }
}

pub(super) fn parse<K: Field>(
    alg: &Arc<GwaAlgebra<K>>,
    src: &str,
    coef: &dyn Fn(&BigRational) -> Result<K>,
    generator: Option<&K>,
) -> Result<GwaElement<K>> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        alg,
        coef,
        generator,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(e)
}
