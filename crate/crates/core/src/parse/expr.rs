//! Recursive descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' INTEGER)?
//! atom   := INTEGER | IDENT | '(' expr ')'
//! ```
//!
//! Division is only allowed by a nonzero constant, so `3/4*x` and `x/2`
//! parse while `1/x` is rejected.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Rational, Vars};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str, line0: usize, col0: usize) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (line0, col0);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l, cc) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '.' {
                return Err(Error::Syntax { line, col: col + (i - start), msg: "only integer and p/q literals are allowed".into() });
            }
            if i < chars.len() && (chars[i].is_ascii_alphabetic() || chars[i] == '_') {
                return Err(Error::Syntax {
                    line,
                    col: col + (i - start),
                    msg: "implicit multiplication is not allowed; write `*`".into(),
                });
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token { tok: Tok::Int(s.parse().expect("digits")), line: l, col: cc });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token { tok: Tok::Ident(s), line: l, col: cc });
            continue;
        }
        if "+-*/^()".contains(c) {
            out.push(Token { tok: Tok::Sym(c), line: l, col: cc });
            i += 1;
            col += 1;
            continue;
        }
        return Err(Error::Syntax { line, col, msg: format!("unexpected character `{c}`") });
    }
    out.push(Token { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    vars: &'a Vars,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let t = self.peek();
        Err(Error::Syntax { line: t.line, col: t.col, msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let at = self.pos;
                let d = self.unary()?;
                if !d.is_constant() || d.is_zero() {
                    self.pos = at;
                    return self.err("division is only allowed by a nonzero constant");
                }
                acc = acc.scale(&d.constant_term().recip());
            } else if matches!(self.peek().tok, Tok::Int(_) | Tok::Ident(_)) || self.peek().tok == Tok::Sym('(') {
                return self.err("implicit multiplication is not allowed; write `*`");
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat('^') {
            let Tok::Int(e) = self.peek().tok.clone() else {
                return self.err("exponent must be a non-negative integer");
            };
            let Some(e) = e.to_u32() else {
                return self.err("exponent too large");
            };
            self.pos += 1;
            if self.peek().tok == Tok::Sym('^') {
                return self.err("chained exponents are ambiguous; use parentheses");
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek().tok.clone() {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(Polynomial::constant(self.vars, Rational::from_integer(n)))
            }
            Tok::Ident(name) => {
                let Some(i) = self.vars.iter().position(|v| *v == name) else {
                    let t = self.peek();
                    return Err(Error::Syntax { line: t.line, col: t.col, msg: format!("unknown variable `{name}`") });
                };
                self.pos += 1;
                Ok(Polynomial::variable(self.vars, i))
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(inner)
            }
            Tok::End => self.err("unexpected end of expression"),
            Tok::Sym(c) => self.err(format!("unexpected `{c}`")),
        }
    }
}

/// Parses `text` as a polynomial over `vars`.
pub fn parse_polynomial(text: &str, vars: &Vars) -> Result<Polynomial> {
    parse_polynomial_at(text, vars, 1, 1)
}

/// Like [`parse_polynomial`], reporting positions relative to `line`/`col`.
pub fn parse_polynomial_at(text: &str, vars: &Vars, line: usize, col: usize) -> Result<Polynomial> {
    let toks = lex(text, line, col)?;
    let mut p = Parser { toks, pos: 0, vars };
    let f = p.expr()?;
    if p.peek().tok != Tok::End {
        return p.err("unexpected trailing input");
    }
    Ok(f)
}

/// Parses a rational literal such as `-3/4`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let empty: Vars = Vec::<String>::new().into();
    let p = parse_polynomial(text, &empty)?;
    if p.is_zero() {
        return Ok(Rational::zero());
    }
    Ok(p.constant_term())
}
