//! Expression parser: integers, `n/d`, generator names, `+ - * / ^`, parentheses.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' exponent)?
//! atom   := integer | ident | '(' expr ')'
//! exponent := '-'? integer | '(' '-'? integer ')'
//! ```
//! Juxtaposition is rejected, so `2h` is a syntax error. Division is only by nonzero
//! scalars; negative exponents need a Laurent ring.

use num_bigint::BigInt;
use thiserror::Error;
use weylkit_core::{AlgebraError, Ring, RingElem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown variable '{name}' at {line}:{col}")]
    UnknownVariable { name: String, line: usize, col: usize },
    #[error("negative exponent at {line}:{col} outside a Laurent ring")]
    NegativeExponentOutsideLaurent { line: usize, col: usize },
    #[error("at {line}:{col}: {source}")]
    Algebra { line: usize, col: usize, source: AlgebraError },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token { tok: Tok::Int(s.parse().unwrap()), line: l0, col: c0 });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line: l0, col: c0 });
        } else if "+-*/^()".contains(c) {
            i += 1;
            col += 1;
            out.push(Token { tok: Tok::Op(c), line: l0, col: c0 });
        } else {
            return Err(ParseError::Syntax { line: l0, col: c0, msg: format!("unexpected character '{c}'") });
        }
    }
    out.push(Token { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax<T>(&self, t: &Token, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { line: t.line, col: t.col, msg: msg.into() })
    }

    fn algebra(t: &Token) -> impl Fn(AlgebraError) -> ParseError + '_ {
        move |source| ParseError::Algebra { line: t.line, col: t.col, source }
    }

    fn expect_op(&mut self, c: char) -> Result<(), ParseError> {
        let t = self.next();
        if t.tok == Tok::Op(c) {
            Ok(())
        } else {
            self.syntax(&t, format!("expected '{c}'"))
        }
    }

    fn expr(&mut self) -> Result<RingElem, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Op('+') => {
                    self.next();
                    acc = &acc + &self.term()?;
                }
                Tok::Op('-') => {
                    self.next();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RingElem, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Op('*') => {
                    self.next();
                    acc = &acc * &self.unary()?;
                }
                Tok::Op('/') => {
                    let t = self.next();
                    let d = self.unary()?;
                    let Some(c) = d.constant_value() else {
                        return self.syntax(&t, "division by a non-constant");
                    };
                    let inv = c.inv().ok_or(AlgebraError::DivisionByZero).map_err(Self::algebra(&t))?;
                    acc = acc.scale(&inv);
                }
                Tok::Int(_) | Tok::Ident(_) | Tok::Op('(') => {
                    let t = self.peek().clone();
                    return self.syntax(&t, "implicit multiplication is not allowed; use '*'");
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RingElem, ParseError> {
        if self.peek().tok == Tok::Op('-') {
            self.next();
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RingElem, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Op('^') {
            return Ok(base);
        }
        let caret = self.next();
        let paren = self.peek().tok == Tok::Op('(');
        if paren {
            self.next();
        }
        let neg = self.peek().tok == Tok::Op('-');
        if neg {
            self.next();
        }
        let t = self.next();
        let Tok::Int(n) = &t.tok else {
            return self.syntax(&t, "exponent must be an integer");
        };
        if paren {
            self.expect_op(')')?;
        }
        let n: i64 = match i64::try_from(n) {
            Ok(v) if v <= u32::MAX as i64 => v,
            _ => return self.syntax(&t, "exponent too large"),
        };
        if neg && n != 0 {
            if !self.ring.has_laurent() {
                return Err(ParseError::NegativeExponentOutsideLaurent { line: caret.line, col: caret.col });
            }
            return base.pow_i(-n).map_err(Self::algebra(&caret));
        }
        Ok(base.pow(n as u32))
    }

    fn atom(&mut self) -> Result<RingElem, ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Int(n) => Ok(self.ring.constant(self.ring.field().from_bigint(n))),
            Tok::Ident(name) => self.ring.generator(name).ok_or_else(|| ParseError::UnknownVariable {
                name: name.clone(),
                line: t.line,
                col: t.col,
            }),
            Tok::Op('(') => {
                let e = self.expr()?;
                self.expect_op(')')?;
                Ok(e)
            }
            Tok::End => self.syntax(&t, "unexpected end of input"),
            Tok::Op(c) => self.syntax(&t, format!("unexpected '{c}'")),
        }
    }
}

/// Parses `text` as an element of `ring`.
pub fn parse_expression(ring: &Ring, text: &str) -> Result<RingElem, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, ring };
    let e = p.expr()?;
    let t = p.peek().clone();
    match t.tok {
        Tok::End => Ok(e),
        Tok::Int(_) | Tok::Ident(_) | Tok::Op('(') => p.syntax(&t, "implicit multiplication is not allowed; use '*'"),
        _ => p.syntax(&t, "unexpected trailing input"),
    }
}
