//! Recursive-descent parser for the polynomial text format.
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom ['^' uint]
//! atom   := uint | ident | '(' expr ')'
//! ```
//!
//! Whitespace is ignored between tokens. Juxtaposition is not
//! multiplication: `2e1` is a syntax error.

use num_bigint::BigInt;

use super::{PolyError, Polynomial, Ring, ZPoly};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn next(&mut self) -> Result<(usize, Tok), PolyError> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&b) = bytes.get(self.pos) else {
            return Ok((start, Tok::End));
        };
        let simple = match b {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = simple {
            self.pos += 1;
            return Ok((start, t));
        }
        if b.is_ascii_digit() {
            while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let v: BigInt = self.src[start..self.pos].parse().expect("digits parse as integer");
            return Ok((start, Tok::Int(v)));
        }
        if b.is_ascii_alphabetic() {
            while self.pos < bytes.len()
                && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_' || bytes[self.pos] == b'\'')
            {
                self.pos += 1;
            }
            return Ok((start, Tok::Ident(self.src[start..self.pos].to_string())));
        }
        let ch = self.src[start..].chars().next().unwrap_or('?');
        Err(PolyError::Syntax { offset: start, message: format!("unexpected character {ch:?}") })
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    ring: &'a Ring,
    peeked: (usize, Tok),
}

impl<'a> Parser<'a> {
    fn bump(&mut self) -> Result<(usize, Tok), PolyError> {
        let next = self.lexer.next()?;
        Ok(std::mem::replace(&mut self.peeked, next))
    }

    fn expr(&mut self) -> Result<ZPoly, PolyError> {
        let mut acc = match self.peeked.1 {
            Tok::Plus => {
                self.bump()?;
                self.term()?
            }
            Tok::Minus => {
                self.bump()?;
                -self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peeked.1 {
                Tok::Plus => {
                    self.bump()?;
                    acc = acc.checked_add(&self.term()?)?;
                }
                Tok::Minus => {
                    self.bump()?;
                    acc = acc.checked_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ZPoly, PolyError> {
        let mut acc = self.factor()?;
        while self.peeked.1 == Tok::Star {
            self.bump()?;
            acc = acc.checked_mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<ZPoly, PolyError> {
        if self.peeked.1 == Tok::Minus {
            self.bump()?;
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.peeked.1 != Tok::Caret {
            return Ok(base);
        }
        self.bump()?;
        match self.bump()? {
            (off, Tok::Int(k)) => {
                let k: u32 = u32::try_from(&k).map_err(|_| PolyError::ExponentOverflowAt { offset: off })?;
                base.checked_pow(k).map_err(|e| match e {
                    PolyError::ExponentOverflow => PolyError::ExponentOverflowAt { offset: off },
                    other => other,
                })
            }
            (off, t) => Err(PolyError::Syntax { offset: off, message: format!("expected exponent, found {}", describe(&t)) }),
        }
    }

    fn atom(&mut self) -> Result<ZPoly, PolyError> {
        match self.bump()? {
            (_, Tok::Int(v)) => Ok(Polynomial::constant(self.ring, v)),
            (off, Tok::Ident(name)) => match self.ring.index_of(&name) {
                Some(i) => Ok(Polynomial::var(self.ring, i)),
                None => Err(PolyError::UnknownVariable { name, offset: Some(off) }),
            },
            (_, Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump()? {
                    (_, Tok::RParen) => Ok(inner),
                    (off, t) => Err(PolyError::Syntax { offset: off, message: format!("expected ')', found {}", describe(&t)) }),
                }
            }
            (off, t) => Err(PolyError::Syntax { offset: off, message: format!("expected a factor, found {}", describe(&t)) }),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(v) => format!("integer {v}"),
        Tok::Ident(s) => format!("identifier {s}"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Caret => "'^'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::End => "end of input".into(),
    }
}

pub(super) fn parse(text: &str, ring: &Ring) -> Result<ZPoly, PolyError> {
    let mut lexer = Lexer { src: text, pos: 0 };
    let first = lexer.next()?;
    let mut p = Parser { lexer, ring, peeked: first };
    if p.peeked.1 == Tok::End {
        return Err(PolyError::Syntax { offset: p.peeked.0, message: "empty input".into() });
    }
    let out = p.expr()?;
    match &p.peeked {
        (_, Tok::End) => Ok(out),
        (off, t) => Err(PolyError::Syntax { offset: *off, message: format!("unexpected {}", describe(t)) }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::RingSpec;

    fn ring() -> Ring {
        RingSpec::parse("e1:2,e2:2,e:4").unwrap()
    }

    #[test]
    fn euler_relation_parses() {
        let r = ring();
        let p = ZPoly::parse("e1*e2 - e", &r).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.homogeneity(), crate::polyring::Homogeneity::Degree(4));
    }

    #[test]
    fn zero_parses_to_empty() {
        assert!(ZPoly::parse("0", &ring()).unwrap().is_zero());
        assert!(ZPoly::parse("e1 - e1", &ring()).unwrap().is_zero());
    }

    #[test]
    fn square_expands() {
        let p = ZPoly::parse("(e1+e2)^2", &ring()).unwrap();
        assert_eq!(p.to_string(), "e1^2 + 2*e1*e2 + e2^2");
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        let r = ring();
        assert_eq!(ZPoly::parse("-e1^2", &r).unwrap().to_string(), "-e1^2");
        assert_eq!(ZPoly::parse("(-e1)^3 + e1^3", &r).unwrap().to_string(), "0");
    }

    #[test]
    fn errors_carry_offsets() {
        let r = ring();
        match ZPoly::parse("e1 + 2e2", &r) {
            Err(PolyError::Syntax { offset, .. }) => assert_eq!(offset, 6),
            other => panic!("unexpected {other:?}"),
        }
        match ZPoly::parse("e1 * x", &r) {
            Err(PolyError::UnknownVariable { name, offset }) => {
                assert_eq!(name, "x");
                assert_eq!(offset, Some(5));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(ZPoly::parse("e1^99999999999", &r), Err(PolyError::ExponentOverflowAt { offset: 3 })));
        assert!(matches!(ZPoly::parse("(e1", &r), Err(PolyError::Syntax { offset: 3, .. })));
        assert!(matches!(ZPoly::parse("", &r), Err(PolyError::Syntax { .. })));
        assert!(matches!(ZPoly::parse("e1 ^ e2", &r), Err(PolyError::Syntax { offset: 5, .. })));
    }
}
