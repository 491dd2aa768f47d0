//! Text syntax for polynomials: `X1^2*X3 - X2^2`, `3/2*X1 + 1`, `(X1 + Y1)^2`.

use std::sync::Arc;

use super::field::Field;
use super::polynomial::Polynomial;
use super::ring::PolyRing;
use super::PolyError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>, PolyError> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let st = i;
                while i < cs.len() && cs[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Tok::Num(cs[st..i].iter().collect()));
            }
            a if a.is_alphabetic() => {
                let st = i;
                while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(cs[st..i].iter().collect()));
            }
            other => return Err(PolyError::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    ring: &'a Arc<PolyRing>,
    toks: Vec<Tok>,
    pos: usize,
    _f: std::marker::PhantomData<F>,
}

impl<F: Field> Parser<'_, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Polynomial<F>, PolyError> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                -&self.term()?
            }
            Some(Tok::Plus) => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<F>, PolyError> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial<F>, PolyError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            match self.bump() {
                Some(Tok::Num(n)) => {
                    let e: u32 = n.parse().map_err(|_| PolyError::Parse(format!("bad exponent {n}")))?;
                    Ok(base.pow(e))
                }
                t => Err(PolyError::Parse(format!("expected exponent, found {t:?}"))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial<F>, PolyError> {
        match self.bump() {
            Some(Tok::Num(n)) => {
                let lit = if let Some(Tok::Slash) = self.peek() {
                    self.bump();
                    match self.bump() {
                        Some(Tok::Num(d)) => format!("{n}/{d}"),
                        t => return Err(PolyError::Parse(format!("expected denominator, found {t:?}"))),
                    }
                } else {
                    n
                };
                let c = F::parse_literal(&lit).ok_or_else(|| PolyError::Parse(format!("bad number {lit}")))?;
                Ok(Polynomial::constant(self.ring, c))
            }
            Some(Tok::Ident(name)) => match self.ring.var_index(&name) {
                Some(v) => Ok(Polynomial::var(self.ring, v)),
                None => Err(PolyError::Parse(format!("unknown variable {name}"))),
            },
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(e),
                    t => Err(PolyError::Parse(format!("expected ')', found {t:?}"))),
                }
            }
            t => Err(PolyError::Parse(format!("unexpected token {t:?}"))),
        }
    }
}

pub fn parse_polynomial<F: Field>(ring: &Arc<PolyRing>, s: &str) -> Result<Polynomial<F>, PolyError> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(PolyError::Parse("empty input".into()));
    }
    let mut p = Parser { ring, toks, pos: 0, _f: std::marker::PhantomData };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(PolyError::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(e)
}
