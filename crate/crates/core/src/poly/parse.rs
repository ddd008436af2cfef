use num_bigint::BigInt;

use super::{PolyError, Polynomial, Ring, Q};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

struct Parser<'a> {
    src: &'a str,
    ring: &'a Ring,
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

pub(super) fn parse(ring: &Ring, src: &str) -> Result<Polynomial, PolyError> {
    let toks = lex(src)?;
    let mut p = Parser { src, ring, toks, pos: 0 };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
    let bytes: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = bytes[start..i].iter().collect();
            out.push((start, Tok::Num(s.parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_alphanumeric() || bytes[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(bytes[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(PolyError::Parse { input: src.to_string(), position: i, message: format!("unexpected character `{}`", c) });
        }
    }
    Ok(out)
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> PolyError {
        let position = self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.src.len());
        PolyError::Parse { input: self.src.to_string(), position, message: msg.to_string() }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn eat_op(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.term()?;
        loop {
            if self.eat_op('+') {
                acc = &acc + &self.term()?;
            } else if self.eat_op('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat_op('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat_op('/') {
                let rhs = self.unary()?;
                if !rhs.is_constant() || rhs.is_zero() {
                    return Err(self.err("division only by a nonzero constant"));
                }
                acc = acc.scale(&rhs.constant_term().recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, PolyError> {
        if self.eat_op('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat_op('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, PolyError> {
        let base = self.atom()?;
        if self.eat_op('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => Err(self.err("expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial, PolyError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Polynomial::constant(self.ring, Q::from_integer(n)))
            }
            Some(Tok::Ident(name)) => match self.ring.index_of(&name) {
                Some(i) => {
                    self.pos += 1;
                    Ok(Polynomial::var(self.ring, i))
                }
                None => Err(self.err(&format!("unknown variable `{}`", name))),
            },
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat_op(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(inner)
            }
            _ => Err(self.err("expected a number, variable or `(`")),
        }
    }
}
