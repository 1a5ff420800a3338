//! Precedence-climbing parser for polynomial entry expressions.
//!
//! Grammar: integer literals, declared variables, `+ - * / ^`, unary minus
//! and parentheses.  `^` takes nonnegative integer exponents and binds
//! tighter than unary minus; `* /` bind tighter than binary `+ -`; all
//! binary operators are left-associative.  `/` requires a nonzero constant
//! divisor (it exists so printed rational coefficients round-trip).

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ring::{Ring, ScalarValue};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    toks: Vec<(Tok, usize)>,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let mut lx = Lexer {
        src: text.as_bytes(),
        pos: 0,
        toks: Vec::new(),
    };
    while lx.pos < lx.src.len() {
        let start = lx.pos;
        let c = lx.src[lx.pos];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                lx.pos += 1;
            }
            b'+' => lx.push1(Tok::Plus),
            b'-' => lx.push1(Tok::Minus),
            b'*' => lx.push1(Tok::Star),
            b'/' => lx.push1(Tok::Slash),
            b'^' => lx.push1(Tok::Caret),
            b'(' => lx.push1(Tok::LParen),
            b')' => lx.push1(Tok::RParen),
            b'0'..=b'9' => {
                let mut end = lx.pos;
                while end < lx.src.len() && lx.src[end].is_ascii_digit() {
                    end += 1;
                }
                let s = std::str::from_utf8(&lx.src[lx.pos..end]).unwrap();
                lx.toks.push((Tok::Int(s.parse::<BigInt>().unwrap()), start));
                lx.pos = end;
            }
            c if c.is_ascii_alphabetic() => {
                let mut end = lx.pos;
                while end < lx.src.len()
                    && (lx.src[end].is_ascii_alphanumeric()
                        || lx.src[end] == b'_'
                        || lx.src[end] == b'\'')
                {
                    end += 1;
                }
                let s = std::str::from_utf8(&lx.src[lx.pos..end]).unwrap().to_string();
                lx.toks.push((Tok::Ident(s), start));
                lx.pos = end;
            }
            _ => {
                return Err(Error::Syntax {
                    position: start,
                    message: format!("unexpected character `{}`", c as char),
                })
            }
        }
    }
    Ok(lx.toks)
}

impl<'a> Lexer<'a> {
    fn push1(&mut self, t: Tok) {
        self.toks.push((t, self.pos));
        self.pos += 1;
    }
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    idx: usize,
    ring: &'a Ring,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(t, _)| t.clone());
        self.idx += 1;
        t
    }

    fn err(&self, message: &str) -> Error {
        Error::Syntax {
            position: self.pos(),
            message: message.to_string(),
        }
    }

    // sum := term (('+' | '-') term)*
    fn sum(&mut self) -> Result<ScalarValue> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := unary (('*' | '/') unary)*
    fn term(&mut self) -> Result<ScalarValue> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = acc.mul(&rhs.inverse()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    // unary := '-' unary | power
    fn unary(&mut self) -> Result<ScalarValue> {
        if let Some(Tok::Minus) = self.peek() {
            self.bump();
            Ok(self.unary()?.neg())
        } else {
            self.power()
        }
    }

    // power := atom ('^' exponent)*
    fn power(&mut self) -> Result<ScalarValue> {
        let mut base = self.atom()?;
        while let Some(Tok::Caret) = self.peek() {
            self.bump();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| self.err("exponent too large"))?;
                    base = base.pow(e);
                }
                Some(Tok::Minus) => return Err(Error::NegativeExponent),
                _ => return Err(self.err("expected nonnegative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ScalarValue> {
        match self.bump() {
            Some(Tok::Int(n)) => Ok(ScalarValue::from_bigint(self.ring, n)),
            Some(Tok::Ident(name)) => ScalarValue::var(self.ring, &name),
            Some(Tok::LParen) => {
                let v = self.sum()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(v),
                    _ => Err(self.err("expected `)`")),
                }
            }
            _ => Err(self.err("expected integer, variable or `(`")),
        }
    }
}

/// Parses `text` to a canonical scalar over `ring`.
pub fn parse_scalar(text: &str, ring: &Ring) -> Result<ScalarValue> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks: &toks,
        idx: 0,
        ring,
        end: text.len(),
    };
    let v = p.sum()?;
    if p.idx != toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}
