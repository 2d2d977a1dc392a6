//! Recursive-descent parser for the defining-function grammar:
//!
//! ```text
//! expr   := term (('+'|'-') term)* ;
//! term   := factor ('*' factor)* ;
//! factor := base ('^' INT)? ;
//! base   := RATIONAL | '(' expr ')' | '|' prod '|' | 'log' '|' prod '|' ;
//! prod   := COORD ('*' COORD)* ;   COORD := 'z' INT ;
//! ```
//!
//! A leading `-` is accepted in front of any base.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::ast::{Expr, ExprAst};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Coord(usize),
    Log,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Bar,
    End,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '|' => Some(Tok::Bar),
            _ => None,
        };
        if let Some(t) = single {
            out.push(Spanned { tok: t, line: l0, col: c0 });
            i += 1;
            col += 1;
            continue;
        }
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let s: String = chars[i..].iter().take_while(|c| c.is_ascii_digit()).collect();
            i += s.len();
            col += s.len();
            out.push(Spanned { tok: Tok::Int(s.parse().unwrap()), line: l0, col: c0 });
            continue;
        }
        if c == 'z' {
            let s: String = chars[i + 1..].iter().take_while(|c| c.is_ascii_digit()).collect();
            if s.is_empty() {
                return Err(Error::Syntax { line: l0, col: c0, msg: "expected coordinate index after 'z'".into() });
            }
            i += 1 + s.len();
            col += 1 + s.len();
            let idx: usize = s.parse().map_err(|_| Error::Syntax { line: l0, col: c0, msg: "coordinate index too large".into() })?;
            out.push(Spanned { tok: Tok::Coord(idx), line: l0, col: c0 });
            continue;
        }
        if chars[i..].starts_with(&['l', 'o', 'g']) {
            i += 3;
            col += 3;
            out.push(Spanned { tok: Tok::Log, line: l0, col: c0 });
            continue;
        }
        return Err(Error::Syntax { line: l0, col: c0, msg: format!("unexpected character {c:?}") });
    }
    out.push(Spanned { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    n: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let s = self.peek();
        Err(Error::Syntax { line: s.line, col: s.col, msg: msg.into() })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.peek().tok == t {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.base()?;
        if self.peek().tok == Tok::Caret {
            self.bump();
            match self.bump().tok {
                Tok::Int(k) => {
                    let k: u32 = k.try_into().map_err(|_| Error::Syntax {
                        line: self.peek().line,
                        col: self.peek().col,
                        msg: "exponent too large".into(),
                    })?;
                    return Ok(Expr::Pow(Box::new(base), k));
                }
                _ => {
                    self.pos -= 1;
                    return self.err("expected non-negative integer exponent");
                }
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr> {
        let s = self.peek().clone();
        match s.tok {
            Tok::Int(num) => {
                self.bump();
                if self.peek().tok == Tok::Slash {
                    self.bump();
                    match self.bump().tok {
                        Tok::Int(den) if den != BigInt::from(0) => Ok(Expr::Const(BigRational::new(num, den))),
                        _ => {
                            self.pos -= 1;
                            self.err("expected nonzero integer denominator")
                        }
                    }
                } else {
                    Ok(Expr::Const(BigRational::from_integer(num)))
                }
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Bar => {
                self.bump();
                let p = self.prod()?;
                self.expect(Tok::Bar, "closing '|'")?;
                Ok(Expr::Modulus(p))
            }
            Tok::Log => {
                self.bump();
                self.expect(Tok::Bar, "'|' after log")?;
                let p = self.prod()?;
                self.expect(Tok::Bar, "closing '|'")?;
                Ok(Expr::LogModulus(p))
            }
            Tok::Coord(index) => Err(Error::NonReinhardt { line: s.line, col: s.col, index }),
            Tok::End => self.err("unexpected end of input"),
            _ => self.err("expected a rational, '(', '|' or 'log'"),
        }
    }

    fn prod(&mut self) -> Result<Vec<usize>> {
        let mut out = vec![self.coord()?];
        while self.peek().tok == Tok::Star {
            self.bump();
            out.push(self.coord()?);
        }
        Ok(out)
    }

    fn coord(&mut self) -> Result<usize> {
        match self.peek().tok {
            Tok::Coord(i) => {
                if i == 0 || i > self.n {
                    return Err(Error::UnknownCoordinate { index: i, n: self.n });
                }
                self.bump();
                Ok(i - 1)
            }
            _ => self.err("expected coordinate z<k>"),
        }
    }
}

/// Parses a defining-function expression over `n` coordinates.
pub fn parse_expr(text: &str, n: usize) -> Result<ExprAst> {
    if text.trim().is_empty() {
        return Err(Error::Syntax { line: 1, col: 1, msg: "empty expression".into() });
    }
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, n };
    let root = p.expr()?;
    if p.peek().tok != Tok::End {
        return p.err("unexpected trailing input");
    }
    Ok(ExprAst { n, root })
}
