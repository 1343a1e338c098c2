//! Text grammar for polynomials.
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := unary (('*'|'/') unary)*        // '/' only by a nonzero constant
//! unary   := '-' unary | power
//! power   := atom ['^' digits]
//! atom    := literal | 'i' | ident | '(' expr ')'
//! literal := digits ['/' digits] ['i']        // contiguous, e.g. 3/2i = (3/2)·i
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{GaussRat, Poly, PolyError};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Lit(GaussRat),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    fn ident_char(b: u8) -> bool {
        b.is_ascii_alphanumeric() || b == b'_'
    }

    fn next(&mut self) -> Result<(usize, Tok), PolyError> {
        self.skip_ws();
        let start = self.pos;
        let Some(&b) = self.src.get(self.pos) else {
            return Ok((start, Tok::End));
        };
        let single = match b {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            self.pos += 1;
            return Ok((start, t));
        }
        if b.is_ascii_digit() {
            let num = self.digits().expect("at least one digit");
            let mut value = BigRational::from_integer(num);
            if self.src.get(self.pos) == Some(&b'/')
                && self.src.get(self.pos + 1).is_some_and(|c| c.is_ascii_digit())
            {
                let save = self.pos;
                self.pos += 1;
                let den = self.digits().expect("at least one digit");
                if den.is_zero() {
                    return Err(PolyError::Syntax {
                        pos: save + 1,
                        msg: "zero denominator".into(),
                    });
                }
                value /= BigRational::from_integer(den);
            }
            let imag = self.src.get(self.pos) == Some(&b'i')
                && !self.src.get(self.pos + 1).is_some_and(|&c| Self::ident_char(c));
            if imag {
                self.pos += 1;
                return Ok((start, Tok::Lit(GaussRat::new(BigRational::zero(), value))));
            }
            if self.src.get(self.pos).is_some_and(|&c| Self::ident_char(c)) {
                return Err(PolyError::Syntax {
                    pos: self.pos,
                    msg: "expected operator after number".into(),
                });
            }
            return Ok((start, Tok::Lit(GaussRat::real(value))));
        }
        if b.is_ascii_alphabetic() || b == b'_' {
            while self.pos < self.src.len() && Self::ident_char(self.src[self.pos]) {
                self.pos += 1;
            }
            let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
            return Ok((start, Tok::Ident(name)));
        }
        Err(PolyError::Syntax {
            pos: start,
            msg: format!("unexpected character '{}'", b as char),
        })
    }
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.idx].1
    }

    fn pos(&self) -> usize {
        self.toks[self.idx].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.idx].1.clone();
        if self.idx + 1 < self.toks.len() {
            self.idx += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self) -> Result<Poly, PolyError> {
        let mut acc = match self.peek() {
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.pos();
                    let d = self.unary()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(PolyError::Syntax {
                            pos: at,
                            msg: "division only by a nonzero constant".into(),
                        });
                    }
                    acc = acc.scale(&d.constant_term().inv().expect("nonzero"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly, PolyError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly, PolyError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.bump() {
            Tok::Lit(c) if c.is_real() && c.re().is_integer() => {
                let e: u32 = c
                    .re()
                    .numer()
                    .try_into()
                    .or_else(|_| self.err("exponent too large"))?;
                Ok(base.pow(e))
            }
            _ => {
                self.idx -= 1;
                self.err("exponent must be a non-negative integer literal")
            }
        }
    }

    fn atom(&mut self) -> Result<Poly, PolyError> {
        let at = self.pos();
        match self.bump() {
            Tok::Lit(c) => Ok(Poly::constant(self.nvars(), c)),
            Tok::Ident(name) => {
                if let Some(v) = self.vars.iter().position(|x| *x == name) {
                    Ok(Poly::var(self.nvars(), v))
                } else if name == "i" {
                    Ok(Poly::constant(self.nvars(), GaussRat::i()))
                } else {
                    Err(PolyError::UnknownVariable { name, pos: at })
                }
            }
            Tok::LParen => {
                let inner = self.expr()?;
                if self.bump() != Tok::RParen {
                    self.idx -= 1;
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            Tok::End => self.err("unexpected end of input"),
            _ => {
                self.idx -= 1;
                self.err("expected a number, variable or '('")
            }
        }
    }
}

/// Parses `text` as a polynomial in the given variables (in order).
pub fn parse_poly(text: &str, variables: &[String]) -> Result<Poly, PolyError> {
    let mut lex = Lexer {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut toks = Vec::new();
    loop {
        let t = lex.next()?;
        let end = t.1 == Tok::End;
        toks.push(t);
        if end {
            break;
        }
    }
    let mut p = Parser {
        toks,
        idx: 0,
        vars: variables,
    };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}

/// Convenience wrapper for string-slice variable names.
pub fn parse_in(text: &str, variables: &[&str]) -> Result<Poly, PolyError> {
    let names: Vec<String> = variables.iter().map(|s| s.to_string()).collect();
    parse_poly(text, &names)
}
