//! Recursive-descent parser for polynomial expressions such as `3/2*X1^2 - (X2+1)*X1`.

use num_bigint::BigInt;

use super::order::MonomialOrder;
use super::poly::{MPoly, PolyRing, Ring};
use crate::coeff::{Field, GfElem, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(text: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
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
            out.push(Tok::Num(s.parse().unwrap()));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!(
                "unexpected character '{c}' in '{text}'"
            )));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    ring: &'a Ring,
    text: &'a str,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} in '{}'", self.text))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let d = self.unary()?;
                if !d.is_constant() {
                    return Err(self.err("division by a non-constant"));
                }
                if d.is_zero() {
                    return Err(Error::Arithmetic("division by zero".into()));
                }
                acc = acc.scale(&d.lc().inv()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MPoly> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => Err(self.err("expected integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MPoly> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(MPoly::constant(
                    self.ring,
                    self.ring.field().from_bigint(&n),
                ))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(i) = self.ring.var_index(&name) {
                    return Ok(MPoly::var(self.ring, i));
                }
                match self.ring.field() {
                    Field::Fn(f) => {
                        if let Some(i) = f.vars().iter().position(|v| *v == name) {
                            return Ok(MPoly::constant(self.ring, f.root_var(i)));
                        }
                    }
                    Field::Gf(g) if name == "a" => {
                        return Ok(MPoly::constant(
                            self.ring,
                            Scalar::Gf(GfElem::new(g, &[0, 1])),
                        ));
                    }
                    _ => {}
                }
                Err(self.err(&format!("unknown variable '{name}'")))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("missing ')'"));
                }
                Ok(e)
            }
            _ => Err(self.err("unexpected end or operator")),
        }
    }
}

/// Parses an expression in the variables of `ring`. Over function fields the parameter
/// names denote the root variables; over 𝔽_{p^k} the name `a` denotes the generator.
pub fn parse_poly(ring: &Ring, text: &str) -> Result<MPoly> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        ring,
        text,
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

/// Parses a constant expression as an element of `field`.
pub fn parse_scalar(field: &Field, text: &str) -> Result<Scalar> {
    let ring = PolyRing::new(field.clone(), Vec::new(), MonomialOrder::Grevlex);
    let p = parse_poly(&ring, text)?;
    Ok(p.constant_term())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let r = PolyRing::with_names(Field::Q, "X", 2);
        let f = parse_poly(&r, "3/2*X1^2 - (X2+1)*X1 + 7").unwrap();
        assert_eq!(f.to_string(), "3/2*X1^2 - X1*X2 - X1 + 7");
        assert_eq!(parse_poly(&r, &f.to_string()).unwrap(), f);
        assert!(parse_poly(&r, "X3").is_err());
        assert!(parse_poly(&r, "X1/X2").is_err());
        assert!(parse_poly(&r, "1/0").is_err());
    }

    #[test]
    fn fp_and_gf() {
        let r = PolyRing::with_names(Field::fp(5).unwrap(), "X", 1);
        let f = parse_poly(&r, "X1^2+1").unwrap();
        assert_eq!(
            f.eval(&[Field::fp(5).unwrap().from_i64(2)]).unwrap(),
            Field::fp(5).unwrap().zero()
        );
        let g = Field::gf(2, 3).unwrap();
        let a = parse_scalar(&g, "a^3+a+1").unwrap();
        assert!(a.is_zero());
    }
}
