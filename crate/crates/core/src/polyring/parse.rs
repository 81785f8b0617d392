//! Polynomial text format.
//!
//! ```text
//! poly  := ["+"|"-"] term (("+"|"-") term)*
//! term  := coeff ("*" monom)? | monom
//! monom := factor ("*" factor)*
//! factor:= ident ("^" uint)?
//! coeff := int | int "/" uint
//! ```
//! Whitespace between tokens is ignored; coefficients are reduced into
//! the ring's field.

use num_bigint::BigInt;

use super::field::Coeff;
use super::monomial::{Monomial, MAX_EXPONENT};
use super::poly::Polynomial;
use super::ring::Ring;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Int(String),
    Ident(String),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '^' => out.push((start, Tok::Caret)),
            '/' => out.push((start, Tok::Slash)),
            _ if c.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(text[start..i].to_string())));
                continue;
            }
            _ if c.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(Error::Syntax { pos: start, message: format!("unexpected character `{ch}`") });
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Ring,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.offset(), message: message.into() })
    }

    fn poly(&mut self) -> Result<Polynomial> {
        let field = self.ring.field().clone();
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let (m, mut c) = self.term()?;
            if negative {
                c = field.neg(&c);
            }
            terms.push((m, c));
            match self.peek() {
                None => break,
                Some(Tok::Plus) => negative = false,
                Some(Tok::Minus) => negative = true,
                Some(_) => return self.err("expected `+`, `-` or end of input"),
            }
            self.pos += 1;
        }
        Ok(Polynomial::from_terms(self.ring, terms))
    }

    fn term(&mut self) -> Result<(Monomial, Coeff)> {
        let field = self.ring.field();
        match self.peek() {
            Some(Tok::Int(_)) => {
                let c = self.coeff()?;
                if self.peek() == Some(&Tok::Star) {
                    self.pos += 1;
                    Ok((self.monom()?, c))
                } else {
                    Ok((Monomial::one(self.ring.nvars()), c))
                }
            }
            Some(Tok::Ident(_)) => Ok((self.monom()?, field.one())),
            _ => self.err("expected a coefficient or a variable"),
        }
    }

    fn coeff(&mut self) -> Result<Coeff> {
        let Some(Tok::Int(num)) = self.peek().cloned() else {
            return self.err("expected an integer");
        };
        self.pos += 1;
        let num: BigInt = num.parse().expect("digits");
        if self.peek() == Some(&Tok::Slash) {
            self.pos += 1;
            let Some(Tok::Int(den)) = self.peek().cloned() else {
                return self.err("expected a denominator");
            };
            self.pos += 1;
            let den: BigInt = den.parse().expect("digits");
            self.ring.field().from_ratio(&num, &den)
        } else {
            Ok(self.ring.field().from_bigint(&num))
        }
    }

    fn monom(&mut self) -> Result<Monomial> {
        let mut m = Monomial::one(self.ring.nvars());
        loop {
            let Some(Tok::Ident(name)) = self.peek().cloned() else {
                return self.err("expected a variable");
            };
            let var = self.ring.var_index(&name).ok_or(Error::UnknownVariable(name))?;
            self.pos += 1;
            let mut exp: u32 = 1;
            if self.peek() == Some(&Tok::Caret) {
                self.pos += 1;
                let Some(Tok::Int(digits)) = self.peek().cloned() else {
                    return self.err("expected an exponent");
                };
                exp = digits
                    .parse::<u64>()
                    .ok()
                    .filter(|&e| e <= MAX_EXPONENT as u64)
                    .ok_or(Error::ExponentOverflow)? as u32;
                self.pos += 1;
            }
            m = m.checked_mul(&Monomial::variable(self.ring.nvars(), var, exp)?)?;
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
            } else {
                return Ok(m);
            }
        }
    }
}

pub fn parse_polynomial(ring: &Ring, text: &str) -> Result<Polynomial> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(Error::Syntax { pos: 0, message: "empty input".into() });
    }
    let mut parser = Parser { ring, toks, pos: 0, end: text.len() };
    parser.poly()
}

/// Splits a generator list on `,` `;` or newlines and parses each piece.
pub fn parse_polynomial_list(ring: &Ring, text: &str) -> Result<Vec<Polynomial>> {
    text.split([',', ';', '\n'])
        .map(str::trim)
        .filter(|s| !s.is_empty() && !s.starts_with('#'))
        .map(|s| parse_polynomial(ring, s))
        .collect()
}
